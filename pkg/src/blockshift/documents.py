"""JSON documents: block shift input files and machine-readable reports.

Input schema::

    {"name": "optional", "dims": [n],              # dims only needed if no blocks
     "blocks": [{"rows": r, "cols": c,
                 "entries": [[[re, im], ...], ...]}]}   # row-major
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .shifts import BlockShift

__all__ = [
    "parse_blockshift",
    "load_document",
    "loads_document",
    "blockshift_to_document",
    "dumps_blockshift",
    "encode_matrix",
    "decode_matrix",
    "ReportDocument",
]


def encode_matrix(a) -> list:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _entry(value, where: str) -> complex:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in value)):
        raise ValidationError(f"{where}: entry must be a [re, im] pair of numbers")
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ValidationError(f"{where}: entry is not finite")
    return complex(re, im)


def decode_matrix(entries, rows: int | None = None, cols: int | None = None, where: str = "matrix") -> np.ndarray:
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ValidationError(f"{where}: entries must be a list of rows")
    if rows is not None and len(entries) != rows:
        raise ValidationError(f"{where}: declared {rows} rows, found {len(entries)}")
    widths = {len(r) for r in entries}
    if len(widths) > 1:
        raise ValidationError(f"{where}: ragged rows")
    width = widths.pop() if widths else 0
    if cols is not None and entries and width != cols:
        raise ValidationError(f"{where}: declared {cols} columns, found {width}")
    out = np.zeros((len(entries), cols if cols is not None else width), dtype=np.complex128)
    for i, row in enumerate(entries):
        for j, value in enumerate(row):
            out[i, j] = _entry(value, f"{where}[{i}][{j}]")
    return out


def _positive_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValidationError(f"{where} must be a positive integer, got {value!r}")
    return value


def loads_document(text: str) -> tuple[BlockShift, str | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("blocks"), list):
        raise ValidationError("document must be an object with a 'blocks' list")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ValidationError("'name' must be a string")
    blocks = []
    for j, blk in enumerate(doc["blocks"], start=1):
        where = f"block {j}"
        if not isinstance(blk, dict):
            raise ValidationError(f"{where}: must be an object")
        rows = _positive_int(blk.get("rows"), f"{where} rows")
        cols = _positive_int(blk.get("cols"), f"{where} cols")
        blocks.append(decode_matrix(blk.get("entries"), rows, cols, where))
    for j in range(len(blocks) - 1):
        if blocks[j].shape[1] != blocks[j + 1].shape[0]:
            raise ValidationError(
                f"block {j + 2}: has {blocks[j + 1].shape[0]} rows but block {j + 1} has "
                f"{blocks[j].shape[1]} columns"
            )
    dims = doc.get("dims")
    if dims is not None:
        if not isinstance(dims, list):
            raise ValidationError("'dims' must be a list")
        dims = [_positive_int(d, "dims entry") for d in dims]
    elif not blocks:
        raise ValidationError("a document without blocks must declare 'dims': [n]")
    return BlockShift.from_blocks(blocks, dims), name


def load_document(path) -> tuple[BlockShift, str | None]:
    text = Path(path).read_text(encoding="utf-8")
    return loads_document(text)


def parse_blockshift(path) -> BlockShift:
    return load_document(path)[0]


def blockshift_to_document(bs: BlockShift, name: str | None = None) -> dict:
    doc: dict = {}
    if name is not None:
        doc["name"] = name
    if not bs.blocks:
        doc["dims"] = list(bs.dims)
    doc["blocks"] = [
        {"rows": b.shape[0], "cols": b.shape[1], "entries": encode_matrix(b)} for b in bs.blocks
    ]
    return doc


def dumps_blockshift(bs: BlockShift, name: str | None = None) -> str:
    return json.dumps(blockshift_to_document(bs, name), indent=2)


@dataclass
class ReportDocument:
    """Machine-readable output of every CLI subcommand.

    Sections not produced by a subcommand stay ``None``. Complex matrices
    inside sections are encoded with :func:`encode_matrix`.
    """

    version: str
    command: str
    seed: int
    tolerances: dict
    name: str | None = None
    bounds: dict | None = None
    certificate: dict | None = None
    witness: dict | None = None
    perturbation: dict | None = None
    jordan: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        return cls(**data)
