"""Upper and lower bounds for the numerical radius of a block shift.

    m * cos(pi/(k+1)) <= w(A'') <= w(A) <= w(A') <= M * cos(pi/(k+1))

with M = max ||A_j|| and m = min m(A_j). For k = 2, and for k = 3 under a
rank condition, w(A''') built from reduced minimum moduli is also a lower
bound.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from .errors import OrderingViolationError
from .radius import jordan_radius, numerical_radius_blockshift, numerical_radius_scalar
from .shifts import (
    BlockShift,
    gamma_compression,
    min_modulus_compression,
    norm_compression,
)

__all__ = [
    "BoundsReport",
    "GammaBound",
    "upper_bound",
    "lower_bound",
    "coarse_upper",
    "coarse_lower",
    "gamma_lower",
    "kernel_intersection_trivial",
    "bounds_report",
]


def upper_bound(bs: BlockShift) -> float:
    """w(A')."""
    return numerical_radius_scalar(norm_compression(bs)).value


def lower_bound(bs: BlockShift) -> float:
    """w(A'')."""
    return numerical_radius_scalar(min_modulus_compression(bs)).value


def _max_norm(bs: BlockShift) -> float:
    return max((linalg.operator_norm(b) for b in bs.blocks), default=0.0)


def _min_modulus(bs: BlockShift) -> float:
    return min((linalg.minimum_modulus(b) for b in bs.blocks), default=0.0)


def coarse_upper(bs: BlockShift) -> float:
    return _max_norm(bs) * jordan_radius(bs.k)


def coarse_lower(bs: BlockShift) -> float:
    return _min_modulus(bs) * jordan_radius(bs.k)


@dataclass(frozen=True)
class GammaBound:
    applicable: bool
    value: float | None
    reason: str
    # k = 2 only: all nonzero singular values of A_1 coincide, i.e. equality
    # w(A) = w(A''') and A ~ A''' + ... + A''' + 0
    uniform_singular_values: bool | None = None


def gamma_lower(bs: BlockShift, tol_rank: float = linalg.TOL_RANK) -> GammaBound:
    """w(A''') as a lower bound for w(A), where it is known to hold.

    Applicable for k = 2 unconditionally and for k = 3 when
    rank A_1 + rank A_2 > n_2 (numerical ranks at ``tol_rank``).
    """
    k = bs.k
    if k == 2:
        a1 = bs.blocks[0]
        sig = linalg.singular_values(a1)
        gamma = linalg.reduced_minimum_modulus(a1, tol_rank)
        nonzero = sig[sig > tol_rank * sig[0]] if sig[0] > 0 else sig[:0]
        uniform = bool(nonzero.size == 0 or nonzero[0] - nonzero[-1] <= tol_rank * nonzero[0])
        return GammaBound(True, gamma / 2.0, "k = 2: always applicable", uniform)
    if k == 3:
        r1 = linalg.numerical_rank(bs.blocks[0], tol_rank)
        r2 = linalg.numerical_rank(bs.blocks[1], tol_rank)
        n2 = bs.dims[1]
        if r1 + r2 > n2:
            w3 = numerical_radius_scalar(gamma_compression(bs, tol_rank)).value
            return GammaBound(True, w3, f"k = 3: rank A_1 + rank A_2 = {r1 + r2} > n_2 = {n2}")
        return GammaBound(False, None, f"k = 3: rank A_1 + rank A_2 = {r1 + r2} <= n_2 = {n2}")
    if k == 1:
        return GammaBound(False, None, "k = 1: no blocks")
    return GammaBound(False, None, f"k = {k}: the reduced-minimum-modulus bound is only available for k <= 3")


def kernel_intersection_trivial(m, tol_rank: float = linalg.TOL_RANK) -> bool:
    """True iff ker M and ker M* meet only in 0.

    When this holds, M has no 1 x 1 zero direct summand.
    """
    m = linalg.as_matrix(m)
    norm = linalg.operator_norm(m)
    if norm == 0.0:
        return False
    stacked = np.vstack([m, m.conj().T])
    return linalg.minimum_modulus(stacked) > tol_rank * norm


@dataclass(frozen=True)
class BoundsReport:
    k: int
    n: int
    w_A: float
    w_upper: float
    w_lower: float
    coarse_upper: float
    coarse_lower: float
    M: float
    m_min: float
    gamma_bound: float | None
    gamma_applicable: bool
    gamma_reason: str

    def as_dict(self) -> dict:
        return asdict(self)


def bounds_report(bs: BlockShift, tol_rank: float = linalg.TOL_RANK) -> BoundsReport:
    w_a = numerical_radius_blockshift(bs).value
    w_up = upper_bound(bs)
    w_lo = lower_bound(bs)
    big_m = _max_norm(bs)
    small_m = _min_modulus(bs)
    jr = jordan_radius(bs.k)
    gamma = gamma_lower(bs, tol_rank)
    values = dict(w_A=w_a, w_upper=w_up, w_lower=w_lo, coarse_upper=big_m * jr, coarse_lower=small_m * jr)
    slack = 1e-8 * max(1.0, big_m)
    chain = [values["coarse_lower"], w_lo, w_a, w_up, values["coarse_upper"]]
    if any(lo > hi + slack for lo, hi in zip(chain, chain[1:])):
        raise OrderingViolationError("bound chain violated", values)
    return BoundsReport(
        k=bs.k,
        n=bs.n,
        M=big_m,
        m_min=small_m,
        gamma_bound=gamma.value,
        gamma_applicable=gamma.applicable,
        gamma_reason=gamma.reason,
        **values,
    )
