"""Dense complex linear algebra for small matrices.

Everything here works on 2-D ``numpy.ndarray`` objects of dtype complex128;
column vectors are ``(n, 1)`` arrays. The Hermitian eigensolver is a cyclic
complex Jacobi method, and singular values are obtained from it through the
Gram matrix, so the whole module rests on one solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionError, HermitianViolationError, ValidationError

__all__ = [
    "HermitianEigen",
    "as_matrix",
    "as_vector",
    "hermitian_eigen",
    "real_part",
    "singular_values",
    "right_singular_pairs",
    "operator_norm",
    "minimum_modulus",
    "reduced_minimum_modulus",
    "numerical_rank",
    "left_invertible",
    "matmul",
    "adjoint",
    "scale",
    "vec_inner",
    "vec_norm",
    "TOL_EIG",
    "TOL_RANK",
]

TOL_EIG = 1e-10
TOL_RANK = 1e-10

# off-diagonal Frobenius mass at which a Jacobi sweep counts as converged
_JACOBI_OFF_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 100


def as_matrix(a, *, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array (a copy is never shared)."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} has non-finite entries")
    return m


def as_vector(x, *, name: str = "vector") -> np.ndarray:
    v = as_matrix(x, name=name)
    if v.shape[1] != 1:
        raise DimensionError(f"{name} must be a column, got shape {v.shape}")
    return v


def _frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a)) if a.size else 0.0


def real_part(m: np.ndarray) -> np.ndarray:
    """Hermitian part (M + M*)/2."""
    m = np.asarray(m, dtype=np.complex128)
    return (m + m.conj().T) / 2


@dataclass(frozen=True)
class HermitianEigen:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    @property
    def top(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def top_vector(self) -> np.ndarray:
        return self.eigenvectors[:, -1:].copy()


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate a[p, q] in place with one complex Jacobi rotation."""
    apq = a[p, q]
    g = abs(apq)
    phase_conj = (apq / g).conjugate()
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * g)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] acting on columns p, q
    gqp = -s * phase_conj
    gqq = c * phase_conj
    col_p = a[:, p].copy()
    col_q = a[:, q]
    new_p = c * col_p + gqp * col_q
    new_q = s * col_p + gqq * col_q
    a[:, p] = new_p
    a[:, q] = new_q
    a[p, :] = new_p.conj()
    a[q, :] = new_q.conj()
    a[p, p] = app - t * g
    a[q, q] = aqq + t * g
    a[p, q] = 0.0
    a[q, p] = 0.0
    vp = v[:, p].copy()
    vq = v[:, q]
    v[:, p] = c * vp + gqp * vq
    v[:, q] = s * vp + gqq * vq


def _normalize_phases(vecs: np.ndarray) -> np.ndarray:
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        i = int(np.argmax(np.abs(col)))
        if col[i] != 0:
            out[:, j] = col * (abs(col[i]) / col[i])
            out[i, j] = abs(col[i])
    return out


def hermitian_eigen(h, tol_eig: float = TOL_EIG, max_sweeps: int = _JACOBI_MAX_SWEEPS) -> HermitianEigen:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Eigenvalues come back ascending (ties keep their original column order)
    and each eigenvector is rotated so its largest-magnitude entry is real
    and positive, which makes the output deterministic.

    Raises
    ------
    HermitianViolationError
        If ``||H - H*||_F > tol_eig * ||H||_F``.
    ConvergenceError
        If the off-diagonal mass is still above threshold after
        ``max_sweeps`` sweeps.
    """
    h = as_matrix(h, name="H")
    n, m = h.shape
    if n != m or n == 0:
        raise DimensionError(f"H must be square and non-empty, got {h.shape}")
    scale_h = _frob(h)
    if _frob(h - h.conj().T) > tol_eig * scale_h:
        raise HermitianViolationError("matrix is not Hermitian within tolerance")
    a = real_part(h)
    v = np.eye(n, dtype=np.complex128)
    target = _JACOBI_OFF_TOL * scale_h
    skip = 1e-3 * target / max(n, 1)
    sweeps = 0
    while True:
        off = _frob(a - np.diag(np.diag(a)))
        if off <= target:
            break
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})", off
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _rotate(a, v, p, q)
    lam = np.diag(a).real.copy()
    order = np.argsort(lam, kind="stable")
    return HermitianEigen(lam[order], _normalize_phases(v[:, order]), sweeps)


def right_singular_pairs(a) -> tuple[np.ndarray, np.ndarray]:
    """Singular values (descending, one per column) and right singular vectors.

    The vectors are eigenvectors of A*A. Each singular value is measured as
    ``||A v||`` instead of the square root of the Gram eigenvalue, which keeps
    tiny singular values accurate to roughly ``eps * ||A||``.
    """
    a = as_matrix(a)
    if a.shape[1] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128)
    eig = hermitian_eigen(a.conj().T @ a)
    vecs = eig.eigenvectors[:, ::-1]
    sig = np.linalg.norm(a @ vecs, axis=0) if a.shape[0] else np.zeros(vecs.shape[1])
    order = np.argsort(-sig, kind="stable")
    return sig[order], vecs[:, order]


def singular_values(a) -> np.ndarray:
    """The min(rows, cols) singular values of ``a`` in descending order."""
    a = as_matrix(a)
    r, c = a.shape
    if min(r, c) == 0:
        return np.zeros(0)
    if c <= r:
        sig, _ = right_singular_pairs(a)
    else:
        sig, _ = right_singular_pairs(a.conj().T)
    return sig


def operator_norm(a) -> float:
    sig = singular_values(a)
    return float(sig[0]) if sig.size else 0.0


def minimum_modulus(a) -> float:
    """min ||Ax|| over unit x; exactly 0 for wide matrices."""
    a = as_matrix(a)
    r, c = a.shape
    if r < c:
        return 0.0
    return float(singular_values(a)[-1])


def numerical_rank(a, tol_rank: float = TOL_RANK) -> int:
    sig = singular_values(a)
    if not sig.size or sig[0] == 0.0:
        return 0
    return int(np.count_nonzero(sig > tol_rank * sig[0]))


def reduced_minimum_modulus(a, tol_rank: float = TOL_RANK) -> float:
    """Smallest nonzero singular value, or 0 for the zero matrix.

    "Nonzero" means above ``tol_rank`` times the largest singular value.
    """
    sig = singular_values(a)
    if not sig.size or sig[0] == 0.0:
        return 0.0
    return float(sig[sig > tol_rank * sig[0]][-1])


def left_invertible(a, tol_rank: float = TOL_RANK) -> bool:
    norm = operator_norm(a)
    if norm == 0.0:
        return False
    return minimum_modulus(a) > tol_rank * norm


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a, name="left operand")
    b = as_matrix(b, name="right operand")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T.copy()


def scale(c: complex, a) -> np.ndarray:
    return complex(c) * as_matrix(a)


def vec_inner(x, y) -> complex:
    """<x, y> = y* x, linear in the first slot."""
    x = as_vector(x, name="x")
    y = as_vector(y, name="y")
    if x.shape != y.shape:
        raise DimensionError(f"vector lengths differ: {x.shape[0]} vs {y.shape[0]}")
    return complex(np.vdot(y, x))


def vec_norm(x) -> float:
    return float(np.linalg.norm(as_vector(x)))
