"""Command line front end.

    blockshift bounds FILE
    blockshift certify {upper,lower} FILE
    blockshift witness FILE
    blockshift perturb FILE [--eps E]
    blockshift jordan K

Every subcommand accepts --json, --tol, --tol-rank, --seed and --eps.
Exit codes: 0 success (or equality certified), 1 I/O or input error,
2 numerical failure, 3 no equality, 4 equality hypothesis violated.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import __version__, linalg
from .bounds import bounds_report
from .certify import EQUALITY, HYPOTHESIS_VIOLATED, TOL_CERT, certify_lower_equality, certify_upper_equality
from .documents import ReportDocument, blockshift_to_document, encode_matrix, load_document
from .errors import BlockShiftError, ConvergenceError, HermitianViolationError, OrderingViolationError
from .radius import jordan_radius, numerical_radius_blockshift
from .shifts import BlockShift, jordan_shift
from .witness import lower_witness, perturb_nonzero_chain

log = logging.getLogger("blockshift")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_NO_EQUALITY = 3
EXIT_HYPOTHESIS = 4

_LOG_LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}


def fmt(x) -> str:
    """12 significant digits; integral floats keep a trailing '.0'."""
    if x is None:
        return "n/a"
    if isinstance(x, (bool, int, np.integer)) or not isinstance(x, (float, np.floating)):
        return str(x)
    s = f"{float(x):.12g}"
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def _print_pairs(pairs: list[tuple[str, object]], out) -> None:
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        print(f"{key.ljust(width)} = {fmt(value)}", file=out)


def _tolerances(args) -> dict:
    return {"tol_cert": args.tol, "tol_rank": args.tol_rank, "eps": args.eps}


def _tolerance_pairs(args) -> list[tuple[str, object]]:
    return [("tol_cert", args.tol), ("tol_rank", args.tol_rank), ("eps", args.eps), ("seed", args.seed)]


def _report(args, command: str, name=None, **sections) -> ReportDocument:
    return ReportDocument(version=__version__, command=command, seed=args.seed,
                          tolerances=_tolerances(args), name=name, **sections)


def _load(args) -> tuple[BlockShift, str | None]:
    bs, name = load_document(args.path)
    log.info("loaded %s: k=%d dims=%s", args.path, bs.k, bs.dims)
    return bs, name


def cmd_bounds(args, out) -> int:
    bs, name = _load(args)
    rep = bounds_report(bs, args.tol_rank)
    if args.json:
        print(_report(args, "bounds", name, bounds=rep.as_dict()).to_json(), file=out)
        return EXIT_OK
    _print_pairs(
        [("name", name), ("k", rep.k), ("n", rep.n), ("w(A)", rep.w_A), ("w(A'')", rep.w_lower),
         ("w(A')", rep.w_upper), ("m*cos(pi/(k+1))", rep.coarse_lower),
         ("M*cos(pi/(k+1))", rep.coarse_upper), ("M", rep.M), ("m", rep.m_min),
         ("gamma bound", rep.gamma_bound), ("gamma applicable", rep.gamma_applicable),
         ("gamma reason", rep.gamma_reason)] + _tolerance_pairs(args),
        out,
    )
    return EXIT_OK


def _certificate_dict(cert) -> dict:
    d = {
        "status": cert.status,
        "reason": cert.reason,
        "w_A": cert.w_A,
        "w_bound": cert.w_bound,
        "residuals": dict(cert.residuals),
        "attempts": len(cert.attempts),
    }
    if cert.has_decomposition:
        d["K_basis"] = encode_matrix(cert.K_basis)
        d["summand"] = encode_matrix(cert.summand)
        d["complement"] = encode_matrix(cert.complement) if cert.complement.size else []
    return d


def cmd_certify(args, out) -> int:
    bs, name = _load(args)
    fn = certify_upper_equality if args.which == "upper" else certify_lower_equality
    cert = fn(bs, args.tol, args.seed)
    if args.json:
        print(_report(args, f"certify {args.which}", name, certificate=_certificate_dict(cert)).to_json(),
              file=out)
    else:
        label = "w(A')" if args.which == "upper" else "w(A'')"
        pairs = [("name", name), ("status", cert.status), ("reason", cert.reason),
                 ("w(A)", cert.w_A), (label, cert.w_bound)]
        pairs += [(f"residual {k}", v) for k, v in cert.residuals.items()]
        _print_pairs(pairs + _tolerance_pairs(args), out)
    if cert.status == EQUALITY:
        return EXIT_OK
    return EXIT_HYPOTHESIS if cert.status == HYPOTHESIS_VIOLATED else EXIT_NO_EQUALITY


def cmd_witness(args, out) -> int:
    bs, name = _load(args)
    wv = lower_witness(bs, seed=args.seed, eps=args.eps, tol_rank=args.tol_rank)
    if args.json:
        section = {
            "v": encode_matrix(wv.v),
            "attained": wv.attained,
            "guaranteed": wv.guaranteed,
            "perron_y": [float(t) for t in wv.perron_y],
            "u": encode_matrix(wv.u),
            "chain_x": [encode_matrix(x) for x in wv.chain_x],
            "perturbed": wv.perturbed,
            "eps": wv.eps,
        }
        print(_report(args, "witness", name, witness=section).to_json(), file=out)
        return EXIT_OK
    pairs = [("name", name), ("<Av,v>", wv.attained), ("guaranteed", wv.guaranteed),
             ("perturbed", wv.perturbed), ("eps used", wv.eps)]
    pairs += [(f"y_{j + 1}", t) for j, t in enumerate(wv.perron_y)]
    pairs += [(f"v_{i + 1}", f"{fmt(z.real)} {fmt(z.imag)}i") for i, z in enumerate(wv.v[:, 0])]
    _print_pairs(pairs + _tolerance_pairs(args), out)
    return EXIT_OK


def cmd_perturb(args, out) -> int:
    bs, name = _load(args)
    if bs.k < 2:
        raise ValueError("perturb needs at least one block")
    eps = args.eps if args.eps is not None else 1e-6 * (1.0 + max(linalg.operator_norm(b) for b in bs.blocks))
    new = perturb_nonzero_chain(bs.blocks, eps, args.seed, args.tol_rank)
    moved = [linalg.operator_norm(b - a) for a, b in zip(bs.blocks, new)]
    chain = new[0]
    for b in new[1:]:
        chain = chain @ b
    chain_norm = linalg.operator_norm(chain)
    section = {
        "eps": eps,
        "block_changes": moved,
        "chain_norm": chain_norm,
        "document": blockshift_to_document(bs.with_blocks(new), name),
    }
    if args.json:
        print(_report(args, "perturb", name, perturbation=section).to_json(), file=out)
        return EXIT_OK
    pairs = [("name", name), ("eps", eps), ("chain norm", chain_norm)]
    pairs += [(f"||B_{j + 1} - A_{j + 1}||", d) for j, d in enumerate(moved)]
    _print_pairs(pairs + _tolerance_pairs(args), out)
    return EXIT_OK


def cmd_jordan(args, out) -> int:
    k = args.k
    closed = jordan_radius(k)
    numeric = numerical_radius_blockshift(jordan_shift(k)).value
    if args.json:
        section = {"k": k, "closed_form": closed, "eigensolver": numeric}
        print(_report(args, "jordan", jordan=section).to_json(), file=out)
        return EXIT_OK
    _print_pairs([("k", k), ("w(J_k)", closed), ("eigensolver", numeric)] + _tolerance_pairs(args), out)
    return EXIT_OK


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")
    common.add_argument("--tol", type=_positive_float, default=TOL_CERT, help="certification tolerance")
    common.add_argument("--tol-rank", type=_positive_float, default=linalg.TOL_RANK,
                        help="relative threshold for numerical rank and zero tests")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--eps", type=_positive_float, default=None,
                        help="perturbation size for zero chain products")

    parser = argparse.ArgumentParser(prog="blockshift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="evaluate all radius bounds")
    p.add_argument("path")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", parents=[common], help="certify equality with a bound")
    p.add_argument("which", choices=["upper", "lower"])
    p.add_argument("path")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("witness", parents=[common], help="build the lower-bound witness vector")
    p.add_argument("path")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("perturb", parents=[common], help="nudge blocks to a nonzero chain product")
    p.add_argument("path")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("jordan", parents=[common], help="numerical radius of J_k")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_jordan)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    level = _LOG_LEVELS.get(os.environ.get("BLOCKSHIFT_LOG", "quiet").lower(), logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ConvergenceError, OrderingViolationError, HermitianViolationError, ArithmeticError) as exc:
        print(f"blockshift: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, BlockShiftError, ValueError) as exc:
        print(f"blockshift: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
