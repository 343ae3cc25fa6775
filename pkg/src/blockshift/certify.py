"""Certify or refute w(A) = w(A') and w(A) = w(A'') by explicit decomposition.

Equality w(A) = w(A') with every A_j nonzero forces a k-dimensional subspace
K, spanned by the segments of any maximizing vector, that reduces A and on
which A acts as A'. Equality w(A) = w(A'') with a nonzero chain product does
the same with K spanned by the normalized chain images of a vector u. Both
certificates build K numerically, split A into A|K and A|K-perp, and check
every step as a residual.

All checks run on A scaled to operator norm 1; residuals are reported in
those units while the returned summand and complement are in the original
scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import linalg
from .errors import NoChainError
from .radius import numerical_radius_scalar, top_real_part
from .shifts import (
    BlockShift,
    assemble,
    assemble_scalar,
    min_modulus_compression,
    norm_compression,
    product_chain,
)

__all__ = [
    "EQUALITY",
    "HYPOTHESIS_VIOLATED",
    "NO_EQUALITY",
    "EqualityCertificate",
    "certify_upper_equality",
    "certify_lower_equality",
    "TOL_CERT",
    "MAX_RANDOM_ATTEMPTS",
]

EQUALITY = "equality-with-summand"
HYPOTHESIS_VIOLATED = "equality-hypothesis-violated"
NO_EQUALITY = "no-equality"

TOL_CERT = 1e-8
MAX_RANDOM_ATTEMPTS = 64


@dataclass(frozen=True)
class EqualityCertificate:
    status: str
    reason: str
    w_A: float
    w_bound: float
    K_basis: np.ndarray | None = None
    summand: np.ndarray | None = None
    complement: np.ndarray | None = None
    complement_basis: np.ndarray | None = None
    residuals: dict = field(default_factory=dict)
    attempts: tuple = ()

    @property
    def has_decomposition(self) -> bool:
        return self.K_basis is not None

    def reconstruct(self) -> np.ndarray:
        """K S K* + Kp C Kp*, which should reproduce A."""
        if not self.has_decomposition:
            raise ValueError("certificate carries no decomposition")
        out = self.K_basis @ self.summand @ self.K_basis.conj().T
        if self.complement.size:
            out = out + self.complement_basis @ self.complement @ self.complement_basis.conj().T
        return out


def _normalized(bs: BlockShift) -> tuple[float, BlockShift]:
    s = max(linalg.operator_norm(b) for b in bs.blocks)
    if s == 0.0:
        return 1.0, bs
    return s, bs.with_blocks([b / s for b in bs.blocks])


def _complement(q: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the complement of the unit column q (Householder)."""
    m = q.shape[0]
    q0 = q[0, 0]
    alpha = -q0 / abs(q0) if q0 != 0 else -1.0
    w = q.copy()
    w[0, 0] -= alpha
    h = np.eye(m, dtype=np.complex128) - 2.0 * (w @ w.conj().T) / np.vdot(w, w).real
    return h[:, 1:]


def _bases(bs: BlockShift, units: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """K basis (one column per segment) and a block-diagonal basis of K-perp."""
    off = bs.offsets
    q = np.zeros((bs.n, bs.k), dtype=np.complex128)
    qp = np.zeros((bs.n, bs.n - bs.k), dtype=np.complex128)
    col = 0
    for j, u in enumerate(units):
        q[off[j] : off[j + 1], j] = u[:, 0]
        c = _complement(u)
        qp[off[j] : off[j + 1], col : col + c.shape[1]] = c
        col += c.shape[1]
    return q, qp


def _radius_of_shiftlike(c: np.ndarray) -> float:
    # c is unitarily a direct sum of block shifts, so theta = 0 is optimal
    if c.size == 0:
        return 0.0
    return max(top_real_part(c).top, 0.0)


def _split(a: np.ndarray, q: np.ndarray, qp: np.ndarray, target: np.ndarray) -> dict:
    s = q.conj().T @ a @ q
    c = qp.conj().T @ a @ qp
    w = np.hstack([q, qp])
    k = q.shape[1]
    blk = np.zeros_like(a)
    blk[:k, :k] = s
    blk[k:, k:] = c
    return dict(
        summand=s,
        complement=c,
        invariance=float(np.linalg.norm(a @ q - q @ s)),
        adjoint_invariance=float(np.linalg.norm(a.conj().T @ q - q @ s.conj().T)),
        similarity=float(np.linalg.norm(s - target)),
        reconstruction=float(np.linalg.norm(w @ blk @ w.conj().T - a)),
        orthonormality=float(np.linalg.norm(w.conj().T @ w - np.eye(a.shape[0]))),
        w_summand=_radius_of_shiftlike(s),
        w_complement=_radius_of_shiftlike(c),
    )


_CHECKED = ("invariance", "adjoint_invariance", "similarity", "reconstruction", "orthonormality")


def _passes(parts: dict, tol: float) -> str | None:
    for key in _CHECKED + ("ratio", "eigen"):
        if parts.get(key, 0.0) > tol:
            return f"{key} residual {parts[key]:.3e} exceeds {tol:.1e}"
    if parts["w_complement"] > parts["w_summand"] + tol:
        return "complement has larger numerical radius than the summand"
    return None


def _finish(status, reason, scale, w_a, w_b, q, qp, parts, log) -> EqualityCertificate:
    residuals = {key: parts[key] for key in _CHECKED + ("ratio", "eigen") if key in parts}
    residuals["w_summand"] = parts["w_summand"] * scale
    residuals["w_complement"] = parts["w_complement"] * scale
    return EqualityCertificate(
        status=status,
        reason=reason,
        w_A=w_a * scale,
        w_bound=w_b * scale,
        K_basis=q,
        summand=parts["summand"] * scale,
        complement=parts["complement"] * scale,
        complement_basis=qp,
        residuals=residuals,
        attempts=tuple(log),
    )


def _search(candidates: Iterator[np.ndarray], attempt: Callable, tol: float, log: list):
    for x in candidates:
        entry, built = attempt(x)
        if built is not None:
            failure = _passes(built[2], tol)
            if failure:
                entry["failure"] = failure
                built = None
        log.append(entry)
        if built is not None:
            return built
    return None


def _extremal_vectors(eig: linalg.HermitianEigen, tol: float, seed: int) -> Iterator[np.ndarray]:
    lam = eig.eigenvalues
    top = eig.eigenvectors[:, lam >= lam[-1] - tol][:, ::-1]
    for i in range(top.shape[1]):
        yield top[:, i : i + 1]
    if top.shape[1] > 1:
        rng = np.random.default_rng(seed)
        for _ in range(MAX_RANDOM_ATTEMPTS):
            c = rng.standard_normal(top.shape[1]) + 1j * rng.standard_normal(top.shape[1])
            x = top @ c
            yield (x / np.linalg.norm(x)).reshape(-1, 1)


def certify_upper_equality(bs: BlockShift, tol_cert: float = TOL_CERT, seed: int = 0) -> EqualityCertificate:
    """Decide whether A' is a direct summand of A.

    Returns status ``equality-with-summand`` with K, A|K (unitarily A') and
    A|K-perp when w(A) = w(A') and the decomposition checks out;
    ``equality-hypothesis-violated`` when the radii agree but some block is
    zero (the decomposition is still tried and attached if found); and
    ``no-equality`` otherwise.
    """
    if bs.k < 2:
        raise NoChainError("certification needs k >= 2")
    scale, nb = _normalized(bs)
    a = assemble(nb)
    eig = top_real_part(a)
    w_a = max(eig.top, 0.0)
    weights = norm_compression(nb).weights
    target = assemble_scalar(norm_compression(nb))
    w_up = numerical_radius_scalar(norm_compression(nb)).value
    if abs(w_a - w_up) > tol_cert:
        return EqualityCertificate(
            NO_EQUALITY, f"w(A) = {w_a * scale:.12g} differs from w(A') = {w_up * scale:.12g}",
            w_a * scale, w_up * scale,
        )
    zero_blocks = [j + 1 for j, w in enumerate(weights) if w <= tol_cert]

    def attempt(x):
        segs = nb.segments(x)
        norms = [float(np.linalg.norm(s)) for s in segs]
        entry = {"segment_norms": norms}
        if min(norms) <= tol_cert:
            entry["failure"] = f"segment {int(np.argmin(norms)) + 1} of the extremal vector vanishes"
            return entry, None
        entry["a"] = [complex(np.vdot(segs[j], nb.blocks[j] @ segs[j + 1]) / norms[j] ** 2)
                      for j in range(nb.k - 1)]
        units = [s / n for s, n in zip(segs, norms)]
        # rotate segment phases so A|K has the nonnegative superdiagonal of A'
        for j in range(1, nb.k):
            s = complex(np.vdot(units[j - 1], nb.blocks[j - 1] @ units[j]))
            if abs(s) <= tol_cert:
                entry["failure"] = f"A maps segment {j + 1} of K to zero"
                return entry, None
            units[j] = units[j] * (abs(s) / s)
        q, qp = _bases(nb, units)
        return entry, (q, qp, _split(a, q, qp, target))

    log: list = []
    built = _search(_extremal_vectors(eig, tol_cert, seed), attempt, tol_cert, log)
    if zero_blocks:
        found = "a decomposition was still found" if built else "no decomposition exists numerically"
        reason = f"block(s) {zero_blocks} are zero; {found}"
        if built is None:
            return EqualityCertificate(HYPOTHESIS_VIOLATED, reason, w_a * scale, w_up * scale,
                                       attempts=tuple(log))
        return _finish(HYPOTHESIS_VIOLATED, reason, scale, w_a, w_up, *built, log)
    if built is None:
        return EqualityCertificate(NO_EQUALITY, "no extremal vector yielded an invariant K",
                                   w_a * scale, w_up * scale, attempts=tuple(log))
    return _finish(EQUALITY, "A is unitarily similar to A' + B", scale, w_a, w_up, *built, log)


def certify_lower_equality(bs: BlockShift, tol_cert: float = TOL_CERT, seed: int = 0) -> EqualityCertificate:
    """Decide whether A'' is a direct summand of A.

    Mirror of :func:`certify_upper_equality`; the hypothesis is a nonzero
    chain product and K is spanned by x_j = A_j ... A_{k-1} u normalized.
    """
    if bs.k < 2:
        raise NoChainError("certification needs k >= 2")
    scale, nb = _normalized(bs)
    a = assemble(nb)
    w_a = max(top_real_part(a).top, 0.0)
    mins = min_modulus_compression(nb)
    target = assemble_scalar(mins)
    w_lo = numerical_radius_scalar(mins).value
    if abs(w_a - w_lo) > tol_cert:
        return EqualityCertificate(
            NO_EQUALITY, f"w(A) = {w_a * scale:.12g} differs from w(A'') = {w_lo * scale:.12g}",
            w_a * scale, w_lo * scale,
        )
    chain = product_chain(nb)
    if np.linalg.norm(chain, 2) <= tol_cert:
        return EqualityCertificate(HYPOTHESIS_VIOLATED, "chain product A_1…A_{k−1} is zero",
                                   w_a * scale, w_lo * scale)

    def candidates():
        _, vecs = linalg.right_singular_pairs(chain)
        yield vecs[:, :1]
        rng = np.random.default_rng(seed)
        for _ in range(MAX_RANDOM_ATTEMPTS):
            u = rng.standard_normal(nb.dims[-1]) + 1j * rng.standard_normal(nb.dims[-1])
            yield (u / np.linalg.norm(u)).reshape(-1, 1)

    def attempt(u):
        xs = [u]
        ratios = []
        for b in reversed(nb.blocks):
            z = b @ xs[0]
            r = float(np.linalg.norm(z))
            if r <= tol_cert:
                return {"failure": "A_1…A_{k−1} u vanishes"}, None
            ratios.insert(0, r)
            xs.insert(0, z / r)
        m = mins.weights
        entry = {"ratios": ratios}
        eigen = max(
            float(np.linalg.norm(b.conj().T @ (b @ xs[j + 1]) - m[j] ** 2 * xs[j + 1]))
            for j, b in enumerate(nb.blocks)
        )
        q, qp = _bases(nb, xs)
        parts = _split(a, q, qp, target)
        parts["ratio"] = max(abs(r - mj) for r, mj in zip(ratios, m))
        parts["eigen"] = eigen
        return entry, (q, qp, parts)

    log: list = []
    built = _search(candidates(), attempt, tol_cert, log)
    if built is None:
        return EqualityCertificate(NO_EQUALITY, "no chain vector yielded an invariant K",
                                   w_a * scale, w_lo * scale, attempts=tuple(log))
    return _finish(EQUALITY, "A is unitarily similar to A'' + C", scale, w_a, w_lo, *built, log)
