"""Command-line frontend: one subcommand per laboratory module.

Every invocation writes a single JSON document (or aligned text with
--output text) to standard output.  Exit code 0 means success, 1 means a
verification failure (something expected to vanish did not), 2 means a
usage error.  Seeded subcommands are bit-reproducible; --no-meta drops the
timestamped metadata block so outputs can be compared byte for byte.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from fractions import Fraction

from . import __version__, cartan, hessmap, identities, jets, miner, ricci3d, serialize
from .tensor import Sym3Tensor

SCHEMA = "hol/1"

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _emit(args, command: str, payload: dict, failures=None) -> int:
    doc = {"schema": SCHEMA, "command": command}
    if not args.no_meta:
        doc["meta"] = {
            "version": __version__,
            "generated": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        }
    doc.update(payload)
    if args.output == "text":
        print(_as_text(doc))
    else:
        print(json.dumps(doc, indent=2))
    return EXIT_VERIFY if failures else EXIT_OK


def _as_text(doc: dict, indent: str = "") -> str:
    lines = []
    for key, val in doc.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_as_text(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.append(f"{indent}  {item}")
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _cmd_rho(args) -> int:
    doc = _read_json(args.infile)
    try:
        t = serialize.tensor_from_json(doc)
    except ValueError as exc:
        raise UsageError(f"{args.infile}: {exc}") from exc
    if not isinstance(t, Sym3Tensor):
        raise UsageError("rho expects a packed symmetric 3-tensor "
                         '(packing "sym3")')
    if args.dim is not None and t.n != args.dim:
        raise UsageError(f"--dim {args.dim} does not match tensor dimension {t.n}")
    R = hessmap.rho(t)
    out = serialize.tensor_to_json(R.tensor)
    if args.outfile:
        with open(args.outfile, "w") as fh:
            json.dump(out, fh, indent=2)
    return _emit(args, "rho", {"n": t.n, "curvature": out})


def _cmd_rank_census(args) -> int:
    if args.dim is None:
        raise UsageError("rank-census requires --dim")
    report = hessmap.image_rank_census(args.dim, args.samples or 20,
                                       args.seed, bound=args.bound)
    return _emit(args, "rank-census", report.to_json())


_IDENTITIES = ("quad", "cubic", "pontryagin", "bianchi")


def _verify_one(name, n, seed, degree):
    A = Sym3Tensor.random(n, seed=seed, bound=6)
    R = hessmap.rho(A)
    if name == "quad":
        return identities.pontryagin_quadratic(R).is_zero()
    if name == "cubic":
        return identities.cubic_identity(R).is_zero()
    if name == "pontryagin":
        return identities.pontryagin_form(R, degree).is_zero()
    if name == "bianchi":
        return identities.bianchi_residual(R.tensor).is_zero()
    raise UsageError(f"unknown identity {name!r}")


def _cmd_verify(args) -> int:
    if args.identity not in _IDENTITIES:
        raise UsageError(f"--identity must be one of {_IDENTITIES}")
    if args.dim is None:
        raise UsageError("verify requires --dim")
    failures = []
    for i in range(args.seeds):
        seed = args.seed * 1_000_003 + i
        try:
            ok = _verify_one(args.identity, args.dim, seed, args.degree)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if not ok:
            failures.append({"seed": seed})
    payload = {"identity": args.identity, "n": args.dim,
               "seeds": args.seeds, "all_zero": not failures,
               "failures": failures}
    return _emit(args, "verify", payload, failures=failures)


def _cmd_mine(args) -> int:
    if args.dim is None:
        raise UsageError("mine requires --dim")
    try:
        basis = miner.mine(args.dim, args.degree,
                           rho_samples=args.max_samples,
                           generic_samples=args.max_samples,
                           seed=args.seed)
    except (ValueError, miner.PatternError) as exc:
        raise UsageError(str(exc)) from exc
    return _emit(args, "mine", basis.to_json())


def _parse_matrix(doc) -> list:
    rows = doc.get("rows") if isinstance(doc, dict) else None
    if (not isinstance(rows, list) or len(rows) != 3
            or any(not isinstance(r, list) or len(r) != 3 for r in rows)):
        raise UsageError('expected {"rows": [[...], [...], [...]]} with 3x3 entries')
    try:
        return [[serialize.parse_rational(x) if isinstance(x, str) else Fraction(x)
                 for x in row] for row in rows]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad matrix entry: {exc}") from exc


def _cmd_solve3d(args) -> int:
    if args.mode == "exact" and args.tol is not None:
        raise UsageError("--tol only applies to --mode float")
    doc = _read_json(args.ricci)
    rows = _parse_matrix(doc)
    tol = 1e-9 if args.tol is None else args.tol
    try:
        rotation, A = ricci3d.solve_from_ricci(rows, mode=args.mode, tol=tol)
    except ricci3d.VerificationError as exc:
        payload = {"verified": False, "error": str(exc)}
        return _emit(args, "solve3d", payload, failures=[str(exc)])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "rotation": [[float(x) for x in row] for row in rotation],
        "A": serialize.tensor_to_json(A),
        "verified": True,
        "residual": "0" if args.mode == "exact" else float(args.tol or 1e-9),
        "mode": args.mode,
    }
    return _emit(args, "solve3d", payload)


def _cmd_jets(args) -> int:
    if args.dim is None:
        raise UsageError("jets requires --dim")
    report = jets.crossover(args.dim, args.cap)
    if args.output == "text":
        print(report.to_text())
        return EXIT_OK
    return _emit(args, "jets", report.to_json())


def _cmd_cartan2d(args) -> int:
    if args.sweep:
        reports = cartan.parameter_sweep(args.sweep, args.seed)
        distinct = {r for r in reports}
        payload = {
            "sweep": args.sweep,
            "seed": args.seed,
            "all_identical": len(distinct) == 1,
            "report": reports[0].to_json(),
        }
        failures = [] if reports[0].involutive and len(distinct) == 1 else ["sweep"]
        return _emit(args, "cartan2d", payload, failures=failures)
    params = cartan.SymbolParameters(
        serialize.parse_rational(args.alpha),
        serialize.parse_rational(args.beta),
        serialize.parse_rational(args.gamma))
    report = cartan.cartan_test(params)
    failures = [] if report.involutive else ["not involutive"]
    return _emit(args, "cartan2d", report.to_json(), failures=failures)


def _cmd_validate(args) -> int:
    doc = _read_json(args.infile)
    try:
        t = serialize.tensor_from_json(doc)
    except ValueError as exc:
        print(json.dumps({"schema": SCHEMA, "command": "validate",
                          "valid": False, "error": str(exc)}))
        return EXIT_VERIFY
    info = {"valid": True, "n": t.n,
            "packing": "sym3" if isinstance(t, Sym3Tensor) else "dense",
            "order": 3 if isinstance(t, Sym3Tensor) else t.order}
    if info["packing"] == "dense" and t.order == 4:
        from .curvature import symmetry_failures
        bad = symmetry_failures(t, limit=4)
        info["curvature_symmetries"] = not bad
        info["symmetry_failures"] = [{"invariant": n, "index": list(i)}
                                     for n, i in bad]
    return _emit(args, "validate", info)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hesslab",
        description="exact tensor laboratory for obstructions to Hessian metrics")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--output", choices=("json", "text"), default="json")
        p.add_argument("--no-meta", action="store_true")
        p.add_argument("--dim", type=int)
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("rho", help="curvature tensor of a symmetric 3-tensor")
    common(p, seed=False)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile")
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("rank-census", help="generic rank of the map's Jacobian")
    common(p)
    p.add_argument("--samples", type=int)
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(func=_cmd_rank_census)

    p = sub.add_parser("verify", help="check an identity on random image points")
    common(p)
    p.add_argument("--identity", required=True)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--degree", type=int, default=2,
                   help="form degree parameter for --identity pontryagin")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("mine", help="search for identities on the image")
    common(p)
    p.add_argument("--degree", type=int, required=True, choices=(2, 3))
    p.add_argument("--max-samples", type=int)
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("solve3d", help="prescribe the Ricci image in dimension 3")
    common(p, seed=False)
    p.add_argument("--ricci", required=True, help="JSON file with 3x3 rows")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=_cmd_solve3d)

    p = sub.add_parser("jets", help="jet-dimension census and crossover order")
    common(p, seed=False)
    p.add_argument("--cap", type=int, default=50)
    p.set_defaults(func=_cmd_jets)

    p = sub.add_parser("cartan2d", help="planar symbol ranks and Cartan's test")
    common(p)
    p.add_argument("--alpha", default="0/1")
    p.add_argument("--beta", default="0/1")
    p.add_argument("--gamma", default="0/1")
    p.add_argument("--sweep", type=int)
    p.set_defaults(func=_cmd_cartan2d)

    p = sub.add_parser("validate", help="validate a tensor JSON file")
    common(p, seed=False)
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_validate)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except miner.StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())
