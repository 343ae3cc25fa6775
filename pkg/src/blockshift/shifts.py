"""Block shift matrices and their scalar compressions.

A block shift on C^{n_1} + ... + C^{n_k} carries blocks A_1..A_{k-1} on its
first block superdiagonal, A_j of shape n_j x n_{j+1}. Replacing each block
by its norm, minimum modulus or reduced minimum modulus gives a k x k
weighted shift (`ScalarShift`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import NoChainError, ValidationError

__all__ = [
    "BlockShift",
    "ScalarShift",
    "assemble",
    "assemble_scalar",
    "norm_compression",
    "min_modulus_compression",
    "gamma_compression",
    "product_chain",
    "rotate_equivalence_basis",
    "jordan_shift",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BlockShift:
    """Validated, immutable block shift.

    Build it with :meth:`from_blocks`; ``dims`` only has to be given when
    there are no blocks (k = 1).
    """

    blocks: tuple[np.ndarray, ...]
    dims: tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks: Sequence, dims: Sequence[int] | None = None) -> "BlockShift":
        mats = [linalg.as_matrix(b, name=f"block {j + 1}") for j, b in enumerate(blocks)]
        if not mats:
            if dims is None or len(dims) != 1:
                raise ValidationError("a block shift without blocks needs dims = (n,)")
            inferred = (int(dims[0]),)
        else:
            for j, b in enumerate(mats):
                if 0 in b.shape:
                    raise ValidationError(f"block {j + 1} has an empty dimension {b.shape}")
            for j in range(len(mats) - 1):
                if mats[j].shape[1] != mats[j + 1].shape[0]:
                    raise ValidationError(
                        f"block {j + 2} has {mats[j + 1].shape[0]} rows but block {j + 1} "
                        f"has {mats[j].shape[1]} columns"
                    )
            inferred = tuple(b.shape[0] for b in mats) + (mats[-1].shape[1],)
            if dims is not None and tuple(int(d) for d in dims) != inferred:
                raise ValidationError(f"declared dims {tuple(dims)} do not match blocks {inferred}")
        if any(d < 1 for d in inferred):
            raise ValidationError(f"segment dimensions must be positive, got {inferred}")
        return cls(tuple(_frozen(m) for m in mats), inferred)

    @classmethod
    def from_scalar(cls, ss: "ScalarShift") -> "BlockShift":
        """Embed a weighted shift as a block shift with all n_j = 1."""
        return cls.from_blocks([[[w]] for w in ss.weights], dims=(1,) if not ss.weights else None)

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(int(o) for o in np.concatenate([[0], np.cumsum(self.dims)]))

    def segments(self, x: np.ndarray) -> list[np.ndarray]:
        """Split a length-n column into its k segment columns."""
        off = self.offsets
        return [x[off[j] : off[j + 1]] for j in range(self.k)]

    def with_blocks(self, blocks: Sequence) -> "BlockShift":
        return BlockShift.from_blocks(blocks, dims=self.dims)


@dataclass(frozen=True)
class ScalarShift:
    weights: tuple[float, ...]

    def __post_init__(self):
        ws = tuple(float(w) for w in self.weights)
        if any(not np.isfinite(w) for w in ws):
            raise ValidationError("weights must be finite")
        if any(w < 0 for w in ws):
            raise ValidationError(f"weights must be nonnegative, got {ws}")
        object.__setattr__(self, "weights", ws)

    @property
    def k(self) -> int:
        return len(self.weights) + 1


def assemble(bs: BlockShift) -> np.ndarray:
    a = np.zeros((bs.n, bs.n), dtype=np.complex128)
    off = bs.offsets
    for j, b in enumerate(bs.blocks):
        a[off[j] : off[j + 1], off[j + 1] : off[j + 2]] = b
    return a


def assemble_scalar(ss: ScalarShift) -> np.ndarray:
    k = ss.k
    a = np.zeros((k, k), dtype=np.complex128)
    if k > 1:
        a[np.arange(k - 1), np.arange(1, k)] = ss.weights
    return a


def norm_compression(bs: BlockShift) -> ScalarShift:
    """A': weights ||A_j||."""
    return ScalarShift(tuple(linalg.operator_norm(b) for b in bs.blocks))


def min_modulus_compression(bs: BlockShift) -> ScalarShift:
    """A'': weights m(A_j)."""
    return ScalarShift(tuple(linalg.minimum_modulus(b) for b in bs.blocks))


def gamma_compression(bs: BlockShift, tol_rank: float = linalg.TOL_RANK) -> ScalarShift:
    """A''': weights gamma(A_j), the reduced minimum moduli."""
    return ScalarShift(tuple(linalg.reduced_minimum_modulus(b, tol_rank) for b in bs.blocks))


def product_chain(bs: BlockShift) -> np.ndarray:
    """A_1 A_2 ... A_{k-1}, an n_1 x n_k matrix."""
    if not bs.blocks:
        raise NoChainError("a block shift with k = 1 has no chain product")
    p = bs.blocks[0].copy()
    for b in bs.blocks[1:]:
        p = p @ b
    return p


def rotate_equivalence_basis(bs: BlockShift, theta: float) -> np.ndarray:
    """Diagonal unitary D with D* A D = e^{i theta} A.

    Segment j (1-based) is multiplied by e^{i (j-1) theta}.
    """
    phases = np.repeat(np.exp(1j * theta * np.arange(bs.k)), bs.dims)
    return np.diag(phases)


def jordan_shift(k: int) -> BlockShift:
    """J_k as a block shift with unit 1 x 1 blocks."""
    if k < 1:
        raise ValidationError("k must be positive")
    return BlockShift.from_scalar(ScalarShift((1.0,) * (k - 1)))
