import math

import numpy as np
import pytest

from blockshift.bounds import lower_bound
from blockshift.errors import NoChainError
from blockshift.fixtures import load_fixture
from blockshift.shifts import BlockShift, assemble, jordan_shift
from blockshift.witness import chain_is_nonzero, lower_witness, perturb_nonzero_chain
from generators import forced_zero_chain, random_blockshift

SQ2 = math.sqrt(2)


def chain(blocks):
    p = blocks[0]
    for b in blocks[1:]:
        p = p @ b
    return p


class TestWitness:
    def test_jordan3(self):
        w = lower_witness(jordan_shift(3))
        assert not w.perturbed
        np.testing.assert_allclose(w.perron_y, [0.5, SQ2 / 2, 0.5], atol=1e-14)
        for x in w.chain_x:
            np.testing.assert_allclose(x, [[1]], atol=1e-15)
        assert w.attained == pytest.approx(SQ2 / 2, abs=1e-14)

    def test_zero_chain_goes_through_perturbation(self):
        bs = load_fixture("zero_chain")
        w = lower_witness(bs, eps=1e-4)
        assert w.perturbed
        assert w.attained >= SQ2 / 2 - 2 * 1e-4 - 1e-12
        assert w.guaranteed == pytest.approx(SQ2 / 2 - 2e-4)

    def test_structure(self):
        rng = np.random.default_rng(0)
        bs = random_blockshift(rng, 4, 4)
        w = lower_witness(bs)
        assert np.linalg.norm(w.v) == pytest.approx(1.0, abs=1e-12)
        for seg, y, x in zip(bs.segments(w.v), w.perron_y, w.chain_x):
            np.testing.assert_allclose(seg, y * x, atol=1e-15)
            assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)
        assert np.all(w.perron_y >= 0)
        a = assemble(bs)
        assert w.attained == pytest.approx(np.vdot(w.v, a @ w.v).real, abs=1e-14)
        assert abs(np.vdot(w.v, a @ w.v).imag) < 1e-12

    def test_degenerate_zero_modulus(self):
        bs = BlockShift.from_blocks([np.zeros((1, 2)), np.ones((2, 1))])
        w = lower_witness(bs)
        assert w.perturbed and w.attained >= -1e-12

    def test_random_nonzero_chain(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            bs = random_blockshift(rng)
            w = lower_witness(bs)
            assert not w.perturbed
            assert w.attained >= lower_bound(bs) - 1e-8

    def test_random_zero_chain(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            bs = forced_zero_chain(rng)
            w = lower_witness(bs, eps=1e-5)
            assert w.perturbed
            assert w.attained >= lower_bound(bs) - (bs.k - 1) * 1e-5 - 1e-10

    def test_k1(self):
        with pytest.raises(NoChainError):
            lower_witness(BlockShift.from_blocks([], dims=(2,)))

    def test_seed_reproducible(self):
        bs = load_fixture("zero_chain")
        a, b = lower_witness(bs, seed=3), lower_witness(bs, seed=3)
        assert np.array_equal(a.v, b.v) and a.attained == b.attained


class TestPerturb:
    def test_zero_chain(self):
        bs = load_fixture("zero_chain")
        out = perturb_nonzero_chain(bs.blocks, 1e-3)
        assert np.linalg.norm(chain(out)) > 0
        for a, b in zip(bs.blocks, out):
            assert np.linalg.norm(a - b, 2) < 1e-3

    def test_nonzero_unchanged(self):
        blocks = [np.eye(2), np.ones((2, 1))]
        out = perturb_nonzero_chain(blocks, 0.1)
        for a, b in zip(blocks, out):
            np.testing.assert_array_equal(a, b)

    def test_all_zero_k3(self):
        out = perturb_nonzero_chain([np.zeros((2, 3)), np.zeros((3, 2))], 0.2)
        assert np.linalg.norm(chain(out), 2) == pytest.approx(0.01, abs=1e-15)

    def test_case_ii(self):
        out = perturb_nonzero_chain([np.array([[0, 3.0]]), np.zeros((2, 1))], 0.2)
        np.testing.assert_array_equal(out[0], [[0, 3.0]])
        assert chain(out)[0, 0] == pytest.approx(0.3)

    def test_case_iii_keeps_second(self):
        a2 = np.array([[0.0, 0.0], [0.0, 2.0]])
        out = perturb_nonzero_chain([np.zeros((1, 2)), a2], 0.2)
        np.testing.assert_array_equal(out[1], a2)
        assert np.linalg.norm(chain(out)) > 0

    def test_case_iv(self):
        a1 = np.array([[1.0, 1.0]])
        a2 = np.array([[1.0], [-1.0]])
        out = perturb_nonzero_chain([a1, a2], 0.2)
        np.testing.assert_array_equal(out[0], a1)
        assert abs(chain(out)[0, 0]) == pytest.approx(0.1)

    def test_long_all_zero(self):
        blocks = [np.zeros((2, 2))] * 4
        out = perturb_nonzero_chain(blocks, 1e-2)
        assert np.linalg.norm(chain(out), 2) == pytest.approx((0.5e-2) ** 4, rel=1e-12)

    @pytest.mark.parametrize("eps", [1e-2, 1e-4, 1e-6])
    def test_random_forced_zero(self, eps):
        rng = np.random.default_rng(int(-math.log10(eps)))
        for _ in range(40):
            bs = forced_zero_chain(rng)
            out = perturb_nonzero_chain(bs.blocks, eps)
            assert np.linalg.norm(chain(out)) > 0
            assert chain_is_nonzero(out)
            for a, b in zip(bs.blocks, out):
                assert np.linalg.norm(a - b, 2) < eps

    def test_invalid_eps(self):
        with pytest.raises(ValueError):
            perturb_nonzero_chain([np.zeros((1, 1))], 0.0)

    def test_empty(self):
        with pytest.raises(NoChainError):
            perturb_nonzero_chain([], 0.1)
