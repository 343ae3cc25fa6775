import math

import numpy as np
import pytest

from blockshift import linalg
from blockshift.errors import NoChainError, ValidationError
from blockshift.fixtures import load_fixture
from blockshift.shifts import (
    BlockShift,
    ScalarShift,
    assemble,
    assemble_scalar,
    gamma_compression,
    jordan_shift,
    min_modulus_compression,
    norm_compression,
    product_chain,
    rotate_equivalence_basis,
)
from generators import random_blockshift

SQ2 = math.sqrt(2)


@pytest.fixture
def ex23():
    return load_fixture("zero_block")


@pytest.fixture
def ex35():
    return load_fixture("zero_chain")


class TestConstruction:
    def test_dims_inferred(self, ex35):
        assert ex35.dims == (1, 2, 1)
        assert ex35.k == 3 and ex35.n == 4

    def test_k1_requires_dims(self):
        with pytest.raises(ValidationError):
            BlockShift.from_blocks([])
        assert BlockShift.from_blocks([], dims=(3,)).n == 3

    def test_shape_mismatch_names_block(self):
        with pytest.raises(ValidationError, match="block 2"):
            BlockShift.from_blocks([np.ones((1, 2)), np.ones((3, 1))])

    def test_empty_block_rejected(self):
        with pytest.raises(ValidationError):
            BlockShift.from_blocks([np.ones((0, 2))])

    def test_declared_dims_checked(self):
        with pytest.raises(ValidationError):
            BlockShift.from_blocks([np.ones((1, 2))], dims=(1, 3))

    def test_blocks_are_read_only(self, ex35):
        with pytest.raises(ValueError):
            ex35.blocks[0][0, 0] = 5

    def test_negative_weights_rejected(self):
        with pytest.raises(ValidationError):
            ScalarShift((1.0, -0.5))


class TestAssemble:
    def test_two_by_two(self):
        a = assemble(BlockShift.from_blocks([[[SQ2]]]))
        np.testing.assert_array_equal(a, [[0, SQ2], [0, 0]])

    def test_zero_chain_matrix(self, ex35):
        expected = [[0, 1, 1, 0], [0, 0, 0, 1], [0, 0, 0, -1], [0, 0, 0, 0]]
        np.testing.assert_array_equal(assemble(ex35), expected)

    def test_zero_block_matrix(self, ex23):
        expected = np.zeros((6, 6))
        expected[0, 1] = SQ2
        expected[2, 3] = 1
        expected[4, 5] = 1
        np.testing.assert_array_equal(assemble(ex23), expected)

    def test_k1_zero(self):
        np.testing.assert_array_equal(assemble(BlockShift.from_blocks([], dims=(3,))), np.zeros((3, 3)))

    def test_nilpotent(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            bs = random_blockshift(rng)
            a = assemble(bs)
            assert np.linalg.norm(np.linalg.matrix_power(a, bs.k)) <= 1e-10

    def test_scalar_assembly(self):
        np.testing.assert_array_equal(assemble_scalar(ScalarShift((1, 1, 1))), np.eye(4, k=1))
        expected = np.zeros((5, 5))
        expected[[0, 1, 2, 3], [1, 2, 3, 4]] = [SQ2, 0, 1, 1]
        np.testing.assert_array_equal(assemble_scalar(ScalarShift((SQ2, 0, 1, 1))), expected)
        np.testing.assert_array_equal(assemble_scalar(ScalarShift(())), [[0]])

    def test_scalar_embedding_agrees(self):
        ss = ScalarShift((0.3, 2.0, 1.5))
        np.testing.assert_array_equal(assemble(BlockShift.from_scalar(ss)), assemble_scalar(ss))


class TestCompressions:
    def test_norm_zero_block(self, ex23):
        np.testing.assert_allclose(norm_compression(ex23).weights, [SQ2, 0, 1, 1], rtol=1e-15)

    def test_norm_zero_chain(self, ex35):
        np.testing.assert_allclose(norm_compression(ex35).weights, [SQ2, SQ2], rtol=1e-15)

    def test_zero_blocks(self):
        bs = BlockShift.from_blocks([np.zeros((2, 3)), np.zeros((3, 1))])
        assert norm_compression(bs).weights == (0.0, 0.0)
        assert gamma_compression(bs).weights == (0.0, 0.0)

    def test_min_modulus_zero_chain(self, ex35):
        np.testing.assert_allclose(min_modulus_compression(ex35).weights, [0, SQ2], atol=1e-15)

    def test_min_modulus_diagonal(self):
        bs = BlockShift.from_blocks([np.diag([2.0, 5.0]), np.diag([4.0, 3.0])])
        np.testing.assert_allclose(min_modulus_compression(bs).weights, [2, 3], rtol=1e-14)
        np.testing.assert_allclose(gamma_compression(bs).weights, [2, 3], rtol=1e-14)

    def test_wide_block_contributes_zero(self):
        bs = BlockShift.from_blocks([np.ones((1, 3)), np.ones((3, 2))])
        assert min_modulus_compression(bs).weights[0] == 0.0

    def test_gamma_zero_chain(self, ex35):
        np.testing.assert_allclose(gamma_compression(ex35).weights, [SQ2, SQ2], rtol=1e-14)

    def test_entrywise_ordering(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            bs = random_blockshift(rng)
            for m, g, n in zip(min_modulus_compression(bs).weights, gamma_compression(bs).weights,
                               norm_compression(bs).weights):
                assert m <= g + 1e-12 and g <= n + 1e-12


class TestChainAndRotation:
    def test_product_chain(self, ex35, ex23):
        np.testing.assert_array_equal(product_chain(ex35), [[0]])
        assert not np.any(product_chain(ex23))
        bs = BlockShift.from_blocks([np.eye(2), np.eye(2), np.eye(2)])
        np.testing.assert_array_equal(product_chain(bs), np.eye(2))

    def test_product_chain_k1(self):
        with pytest.raises(NoChainError):
            product_chain(BlockShift.from_blocks([], dims=(2,)))

    def test_rotation_identity(self, ex35):
        np.testing.assert_array_equal(rotate_equivalence_basis(ex35, 0.0), np.eye(4))

    def test_rotation_pi_on_j2(self):
        bs = jordan_shift(2)
        d = rotate_equivalence_basis(bs, math.pi)
        np.testing.assert_allclose(d, np.diag([1, -1]), atol=1e-15)
        a = assemble(bs)
        np.testing.assert_allclose(d.conj().T @ a @ d, -a, atol=1e-15)

    def test_rotation_conjugation_grid(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            bs = random_blockshift(rng)
            a = assemble(bs)
            for theta in np.linspace(0, 2 * math.pi, 32, endpoint=False):
                d = rotate_equivalence_basis(bs, theta)
                resid = np.linalg.norm(d.conj().T @ a @ d - np.exp(1j * theta) * a)
                assert resid <= 1e-12 * max(1.0, np.linalg.norm(a))
                assert np.linalg.norm(d.conj().T @ d - np.eye(bs.n)) < 1e-14

    def test_jordan_shift(self):
        assert jordan_shift(1).n == 1
        np.testing.assert_array_equal(assemble(jordan_shift(4)), np.eye(4, k=1))


def test_minimum_modulus_of_zero_block_wide_block(ex23):
    assert linalg.minimum_modulus(ex23.blocks[2]) == 0.0
