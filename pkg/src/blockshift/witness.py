"""Constructive side of the lower bound w(A) >= w(A'').

`lower_witness` builds a unit vector v = (y_1 x_1, ..., y_k x_k) with
<Av, v> >= w(A''): y is a nonnegative maximizer for A'' and the x_j are the
normalized partial chain images A_j ... A_{k-1} u. When the full chain
product vanishes the blocks are first nudged by `perturb_nonzero_chain`,
and the bound is degraded by the size of the nudge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import NoChainError
from .radius import numerical_radius_scalar
from .shifts import BlockShift, ScalarShift, assemble, min_modulus_compression

__all__ = ["WitnessVector", "chain_is_nonzero", "perturb_nonzero_chain", "lower_witness"]


@dataclass(frozen=True)
class WitnessVector:
    v: np.ndarray
    attained: float
    perron_y: np.ndarray
    chain_x: tuple[np.ndarray, ...]
    u: np.ndarray
    perturbed: bool
    guaranteed: float
    eps: float | None = None
    perturbed_blocks: tuple[np.ndarray, ...] | None = None


def _product(blocks: Sequence[np.ndarray]) -> np.ndarray:
    p = blocks[0]
    for b in blocks[1:]:
        p = p @ b
    return p


def chain_is_nonzero(blocks: Sequence[np.ndarray], tol_rank: float = linalg.TOL_RANK) -> bool:
    """Whether A_1 ... A_{k-1} is nonzero relative to prod ||A_j||_F."""
    if not blocks:
        raise NoChainError("empty block list has no chain product")
    scale = float(np.prod([np.linalg.norm(b) for b in blocks]))
    if scale == 0.0:
        return False
    return float(np.linalg.norm(_product(blocks))) > tol_rank * scale


def _argmax_entry(a: np.ndarray) -> tuple[int, int]:
    i, j = np.unravel_index(int(np.argmax(np.abs(a))), a.shape)
    return int(i), int(j)


def _extend(p: np.ndarray, a: np.ndarray, eps: float) -> np.ndarray:
    """Return B near ``a`` with p @ B != 0, given p != 0 and p @ a = 0."""
    i, l = _argmax_entry(p)
    b = a.copy()
    if not np.any(a):
        # a = 0: one entry eps/2 in row l, column 0 gives (pB)[i, 0] = p[i, l] eps/2
        b[l, 0] += eps / 2
    else:
        # row i of p is orthogonal to every column of a; tilt the largest
        # column towards conj(p[i, l]) so the pairing becomes |p[i, l]| eps/2
        j = int(np.argmax(np.linalg.norm(a, axis=0)))
        b[l, j] += (eps / 2) * np.conj(p[i, l]) / abs(p[i, l])
    return b


def _perturb(blocks: list[np.ndarray], eps: float, tol_rank: float) -> list[np.ndarray]:
    if chain_is_nonzero(blocks, tol_rank):
        return list(blocks)
    if len(blocks) == 1:
        b = blocks[0].copy()
        b[0, 0] += eps / 2
        return [b]
    if len(blocks) == 2 and not np.any(blocks[0]) and np.any(blocks[1]):
        # first factor zero, second not: seed the first to pick a nonzero row
        i, _ = _argmax_entry(blocks[1])
        b1 = blocks[0].copy()
        b1[0, i] += eps / 2
        return [b1, blocks[1]]
    head = blocks[:-1]
    if not chain_is_nonzero(head, tol_rank):
        head = _perturb(head, eps, tol_rank)
    p = _product(head)
    last = blocks[-1]
    if chain_is_nonzero(head + [last], tol_rank):
        return head + [last]
    return head + [_extend(p, last, eps)]


def perturb_nonzero_chain(blocks: Sequence, eps: float, seed: int = 0,
                          tol_rank: float = linalg.TOL_RANK) -> list[np.ndarray]:
    """Blocks B_j with ||B_j - A_j|| < eps and B_1 ... B_{k-1} != 0.

    The construction is deterministic: each block is changed in at most one
    entry, by eps/2 in modulus. Blocks whose chain is already nonzero come
    back unchanged. ``seed`` is accepted for interface uniformity with the
    other stochastic entry points and does not influence the result.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    mats = [linalg.as_matrix(b, name=f"block {j + 1}") for j, b in enumerate(blocks)]
    if not mats:
        raise NoChainError("need at least one block")
    out = _perturb(mats, float(eps), tol_rank)
    if not np.any(_product(out)):
        raise ArithmeticError("perturbed chain product underflowed to zero")
    return out


def _default_eps(bs: BlockShift) -> float:
    return 1e-6 * (1.0 + max(linalg.operator_norm(b) for b in bs.blocks))


def lower_witness(bs: BlockShift, seed: int = 0, eps: float | None = None,
                  tol_rank: float = linalg.TOL_RANK) -> WitnessVector:
    """Unit vector v with <Av, v> >= w(A'') (minus (k-1) eps if perturbed)."""
    if bs.k < 2:
        raise NoChainError("a witness needs k >= 2")
    blocks = list(bs.blocks)
    perturbed = not chain_is_nonzero(blocks, tol_rank)
    used_eps = None
    if perturbed:
        used_eps = _default_eps(bs) if eps is None else float(eps)
        blocks = perturb_nonzero_chain(blocks, used_eps, seed, tol_rank)

    _, vecs = linalg.right_singular_pairs(_product(blocks))
    u = vecs[:, :1]
    xs = [u]
    for b in reversed(blocks):
        z = b @ xs[0]
        xs.insert(0, z / np.linalg.norm(z))

    weights = ScalarShift(tuple(linalg.minimum_modulus(b) for b in blocks))
    y = np.abs(numerical_radius_scalar(weights).maximizer[:, 0])
    y = y / np.linalg.norm(y)
    v = np.vstack([yj * xj for yj, xj in zip(y, xs)])

    a = assemble(bs)
    attained = float(np.vdot(v, a @ v).real)
    w_lower = numerical_radius_scalar(min_modulus_compression(bs)).value
    guaranteed = w_lower - (bs.k - 1) * used_eps if perturbed else w_lower
    return WitnessVector(
        v=v,
        attained=attained,
        perron_y=y,
        chain_x=tuple(xs),
        u=u,
        perturbed=perturbed,
        guaranteed=guaranteed,
        eps=used_eps,
        perturbed_blocks=tuple(blocks) if perturbed else None,
    )
