"""Numerical radius w(M) = max |<Mx, x>| over unit x.

Two routes are provided. The general one maximizes
f(theta) = lambda_max(Re(e^{-i theta} M)) over theta by a uniform grid plus
golden-section refinement. For a block shift the numerical range is a disk
about the origin, so f is constant and theta = 0 suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ConvergenceError, DimensionError
from .shifts import BlockShift, ScalarShift, assemble, assemble_scalar

__all__ = [
    "RadiusResult",
    "numerical_radius_general",
    "numerical_radius_blockshift",
    "numerical_radius_scalar",
    "jordan_radius",
    "top_real_part",
    "GRID_POINTS",
    "TOL_RADIUS",
]

GRID_POINTS = 720
TOL_RADIUS = 1e-9
_GOLDEN_WIDTH = 1e-12
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RadiusResult:
    value: float
    maximizer: np.ndarray
    theta: float


def _rotated_real_parts(m: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    rot = np.exp(-1j * thetas)[:, None, None] * m[None, :, :]
    return (rot + np.conj(np.swapaxes(rot, 1, 2))) / 2


def _lam_max(m: np.ndarray, thetas) -> np.ndarray:
    # LAPACK for the many sweep evaluations; the reported value is redone by Jacobi
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    return np.linalg.eigvalsh(_rotated_real_parts(m, thetas))[:, -1]


def _golden_max(m: np.ndarray, lo: float, hi: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = _lam_max(m, [c, d])
    while b - a > _GOLDEN_WIDTH:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = _lam_max(m, c)[0]
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = _lam_max(m, d)[0]
    return (c, fc) if fc >= fd else (d, fd)


def top_real_part(m: np.ndarray, theta: float = 0.0) -> linalg.HermitianEigen:
    """Eigendecomposition of Re(e^{-i theta} M)."""
    return linalg.hermitian_eigen(linalg.real_part(np.exp(-1j * theta) * m))


def numerical_radius_general(m, tol_radius: float = TOL_RADIUS) -> RadiusResult:
    """Numerical radius of an arbitrary square matrix by a rotation sweep.

    The best of 720 grid angles is refined by golden section over its two
    neighbouring cells down to a bracket of 1e-12 rad. The value and the
    maximizer are then recomputed with the Jacobi solver at the chosen angle;
    if the two solvers disagree by more than ``tol_radius`` a
    ``ConvergenceError`` is raised.
    """
    m = linalg.as_matrix(m, name="M")
    if m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"M must be square and non-empty, got {m.shape}")
    thetas = 2.0 * math.pi * np.arange(GRID_POINTS) / GRID_POINTS
    values = _lam_max(m, thetas)
    best = int(np.argmax(values))
    h = 2.0 * math.pi / GRID_POINTS
    theta_g, f_g = _golden_max(m, thetas[best] - h, thetas[best] + h)
    if f_g > values[best]:
        theta_star, f_star = theta_g % (2.0 * math.pi), f_g
    else:
        theta_star, f_star = float(thetas[best]), float(values[best])
    eig = top_real_part(m, theta_star)
    if abs(eig.top - f_star) > tol_radius * max(1.0, abs(f_star)):
        raise ConvergenceError(
            f"eigensolvers disagree at theta={theta_star}: {eig.top} vs {f_star}",
            abs(eig.top - f_star),
        )
    return RadiusResult(max(eig.top, 0.0), eig.top_vector, float(theta_star))


def numerical_radius_blockshift(bs: BlockShift) -> RadiusResult:
    """w(A) = lambda_max(Re A) for a block shift (disk symmetry)."""
    eig = top_real_part(assemble(bs))
    return RadiusResult(max(eig.top, 0.0), eig.top_vector, 0.0)


def numerical_radius_scalar(ss: ScalarShift) -> RadiusResult:
    eig = top_real_part(assemble_scalar(ss))
    return RadiusResult(max(eig.top, 0.0), eig.top_vector, 0.0)


def jordan_radius(k: int) -> float:
    """w(J_k) = cos(pi / (k + 1))."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k == 1:
        return 0.0
    return math.cos(math.pi / (k + 1))
