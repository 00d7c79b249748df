"""Command-line entry point: ``detlab check|compute|reproduce``.

Exit codes: 0 certified yes / success, 1 certified no / failed reproduction,
2 probable no or inconclusive, 3 input or parse error, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .constructions import basic_double_link, cone_family
from .detcheck import CERTIFIED_NO, CERTIFIED_YES, check_good, check_standard
from .formats import parse_ideal, parse_matrix
from .ideals import (Ideal, artinian_reduction, hyperplane_section_report, mu, mu_graded)
from .matrixlab import PolyMatrix, degree_matrix, is_one_generic, minors
from .reproduce import CATALOG, reproduce
from .resolutions import betti_table, free_resolution, is_acm
from .ring import Field, ParseError

SCHEMA_VERSION = 1
EXIT_YES, EXIT_NO, EXIT_MAYBE, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which collides with "inconclusive"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    env = os.environ.get("DETLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"DETLAB_SEED={env!r} is not an integer") from None


# -- input -----------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _with_field(obj, p):
    if p is None:
        return obj
    if isinstance(obj, PolyMatrix):
        return obj.change_ring(obj.ring.with_field(Field(p)))
    ring = obj.ring.with_field(Field(p))
    return Ideal(ring, [g.change_ring(ring) for g in obj.gens])


def load_matrix(path: str, p=None) -> PolyMatrix:
    try:
        M = parse_matrix(_read(path))
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None
    return _with_field(M, p)


def load_ideal(path: str, p=None) -> Ideal:
    """``.mat`` files are read as the ideal of maximal minors."""
    if path.endswith(".mat"):
        return load_matrix(path, p).ideal()
    try:
        I = parse_ideal(_read(path))
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None
    return _with_field(I, p)


def _poly_list(I: Ideal) -> list:
    return [str(g) for g in I.gens]


# -- commands --------------------------------------------------------------------------------


_VERDICT_EXIT = {CERTIFIED_YES: EXIT_YES, CERTIFIED_NO: EXIT_NO}


def cmd_check(args):
    kind = args.kind
    if kind == "acm":
        I = load_ideal(args.file, args.field)
        try:
            ok = is_acm(I)
        except ValueError as e:
            raise InputError(str(e)) from None
        res = {"check": "acm", "verdict": CERTIFIED_YES if ok else CERTIFIED_NO}
        return res, _VERDICT_EXIT[res["verdict"]], I.ring.p
    M = load_matrix(args.file, args.field)
    if M.nrows == 0 or M.ncols == 0:
        raise InputError(f"{args.file}: empty matrix")
    p = M.ring.p
    try:
        if kind == "standard":
            rep = check_standard(M)
        elif kind == "good":
            rep = check_good(M, trials=args.trials, seed=args.seed)
        else:
            v = is_one_generic(M, mode=args.mode, trials=args.trials, seed=args.seed)
            verdict = CERTIFIED_NO if not v.one_generic else (CERTIFIED_YES if v.certain else "probable_yes")
            res = {"check": "one-generic", "mode": v.mode, "verdict": verdict, "label": v.label,
                   "witness": _jsonable(v.witness), "trials": v.trials}
            return res, _VERDICT_EXIT.get(verdict, EXIT_MAYBE), p
    except ValueError as e:
        raise InputError(str(e)) from None
    res = _jsonable(rep.as_dict())
    return res, _VERDICT_EXIT.get(rep.verdict, EXIT_MAYBE), p


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


def _betti_payload(I: Ideal) -> dict:
    bt = betti_table(free_resolution(I))
    return {"betti": {f"{i},{j}": b for (i, j), b in bt.as_dict().items()},
            "ranks": list(bt.ranks()), "text": bt.to_text()}


def cmd_compute(args):
    kind = args.kind
    p = args.field
    if kind in ("minors", "degree-matrix"):
        M = load_matrix(args.file, p)
        if kind == "minors":
            size = args.size or min(M.shape)
            return {"size": size, "minors": [str(m) for m in minors(M, size)]}, EXIT_YES, M.ring.p
        try:
            D = degree_matrix(M)
        except ValueError as e:
            raise InputError(str(e)) from None
        return {"degree_matrix": [list(r) for r in D.u], "a": list(D.a), "b": list(D.b),
                "ambiguous": D.ambiguous}, EXIT_YES, M.ring.p
    if kind == "bdl":
        if not args.other or not args.F:
            raise UsageError("compute bdl needs FILE (I_C), --other FILE (I_S) and --F POLY")
        I_C = load_ideal(args.file, p)
        I_S = load_ideal(args.other, p)
        if I_S.ring != I_C.ring:
            raise InputError("I_C and I_S live in different rings")
        F = _parse_poly(I_C.ring, args.F)
        try:
            link = basic_double_link(I_C, I_S, F)
        except ValueError as e:
            raise InputError(str(e)) from None
        return {"ideal": _poly_list(link.ideal), "saturated": link.saturated}, EXIT_YES, I_C.ring.p
    I = load_ideal(args.file, p)
    R = I.ring
    if kind == "hilbert":
        hs = I.hilbert_series
        return {"numerator": list(hs.numerator), "nvars": hs.nvars, "krull_dim": hs.krull_dim,
                "degree": hs.degree, "polynomial": str(hs.polynomial())}, EXIT_YES, R.p
    if kind == "mu":
        if args.square:
            gens = I.gens
            I = Ideal(R, [gens[a] * gens[b] for a in range(len(gens)) for b in range(a, len(gens))])
        return {"mu": mu(I), "by_degree": {str(k): v for k, v in sorted(mu_graded(I).items())},
                "square": bool(args.square)}, EXIT_YES, R.p
    if kind == "betti":
        return _betti_payload(I), EXIT_YES, R.p
    if kind == "section":
        if args.random == bool(args.hyperplane):
            raise UsageError("compute section needs exactly one of --hyperplane or --random")
        if args.random:
            H = R.random_linear_form(random.Random(args.seed))
        else:
            H = _parse_poly(R, args.hyperplane)
        if not H.is_linear_form():
            raise InputError("hyperplane must be a nonzero linear form")
        rep = hyperplane_section_report(I, H)
        return {"hyperplane": str(H), "dropped_variable": R.varnames[rep.pivot],
                "ideal": _poly_list(rep.ideal), "saturated": rep.saturated}, EXIT_YES, R.p
    if kind == "artinian":
        ar = artinian_reduction(I, args.seed)
        return {"forms": [str(f) for f in ar.forms], "ideal": _poly_list(ar.ideal)}, EXIT_YES, R.p
    if kind == "cone-family":
        s = R.field(args.s if args.s is not None else 0)
        fm = cone_family(I, s)
        return {"s": str(fm.s), "ideal": _poly_list(fm.ideal), "provenance": fm.provenance}, EXIT_YES, R.p
    raise UsageError(f"unknown compute kind {kind}")


def _parse_poly(ring, text):
    try:
        return ring.parse(text)
    except ParseError as e:
        raise InputError(f"polynomial {text!r}: {e}") from None


def _run_one(job):
    ex, seed, p, params = job
    return reproduce(ex, seed=seed, fld=Field(p), **params).as_dict()


def cmd_reproduce(args):
    if args.all == bool(args.example):
        raise UsageError("give an example id or --all")
    ids = list(CATALOG) if args.all else [args.example]
    for ex in ids:
        if ex not in CATALOG:
            raise UsageError(f"unknown example {ex!r}; known: {', '.join(CATALOG)}")
    p = args.field if args.field is not None else Field().p
    params = {"n": args.n, "t": args.t}
    params = {k: v for k, v in params.items() if v is not None}
    jobs = [(ex, args.seed, p, params if not args.all else {}) for ex in ids]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            outs = list(pool.map(_run_one, jobs))
    else:
        outs = [_run_one(j) for j in jobs]
    passed = all(o["passed"] for o in outs)
    result = {"passed": passed, "examples": outs}
    return result, EXIT_YES if passed else EXIT_NO, p


# -- output -------------------------------------------------------------------------------------


def _human(command: str, result: dict) -> str:
    lines = []
    if command == "reproduce":
        for o in result["examples"]:
            status = "PASS" if o["passed"] else "FAIL"
            lines.append(f"{status} {o['example']}  [{o['anchor']}]")
            for c in o["claims"]:
                mark = "ok " if c["passed"] else "BAD"
                lines.append(f"  {mark} {c['statement']}")
                if not c["passed"]:
                    lines.append(f"      expected: {c['expected']}")
                    lines.append(f"      actual:   {c['actual']}")
        return "\n".join(lines)
    if "text" in result:
        lines.append(result["text"])
        return "\n".join(lines)
    for k, v in result.items():
        if k == "log":
            continue  # per-trial log is kept for --json
        if isinstance(v, list) and all(isinstance(x, (int, bool)) for x in v):
            lines.append(f"{k}: {' '.join(str(x) for x in v)}")
        elif isinstance(v, list) and v and isinstance(v[0], list):
            lines.append(f"{k}:")
            lines.extend("  " + " ".join(str(x) for x in row) for row in v)
        elif isinstance(v, list):
            lines.append(f"{k}:")
            lines.extend(f"  {x}" for x in v)
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="detlab", description="Determinantal ideal checks and computations.")
    ap.add_argument("--version", action="version", version=f"detlab {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None, help="random seed (default: $DETLAB_SEED or 0)")
        sp.add_argument("--field", type=int, default=None, metavar="P",
                        help="override the characteristic from the file header")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")

    c = sub.add_parser("check", help="decide standard/good/1-generic/aCM")
    c.add_argument("kind", choices=["standard", "good", "one-generic", "acm"])
    c.add_argument("file")
    c.add_argument("--trials", type=int, default=8)
    c.add_argument("--mode", choices=["rows_cols", "generalized"], default="rows_cols",
                   help="1-genericity variant")
    common(c)

    m = sub.add_parser("compute", help="minors, degree matrix, Hilbert series, mu, Betti table, ...")
    m.add_argument("kind", choices=["minors", "degree-matrix", "hilbert", "mu", "betti", "section",
                                    "artinian", "bdl", "cone-family"])
    m.add_argument("file")
    m.add_argument("--size", type=int, help="minor size (default: maximal)")
    m.add_argument("--square", action="store_true", help="mu of I^2 instead of I")
    m.add_argument("--hyperplane", help="linear form for compute section")
    m.add_argument("--random", action="store_true", help="random hyperplane (uses --seed)")
    m.add_argument("--other", help="second ideal file (I_S) for compute bdl")
    m.add_argument("--F", help="form F for compute bdl")
    m.add_argument("--s", type=int, help="family parameter for compute cone-family")
    common(m)

    r = sub.add_parser("reproduce", help="run a worked example by id")
    r.add_argument("example", nargs="?", help="one of: " + ", ".join(CATALOG))
    r.add_argument("--all", action="store_true")
    r.add_argument("--n", type=int)
    r.add_argument("--t", type=int)
    r.add_argument("--jobs", type=int, default=1, help="run --all entries in parallel processes")
    common(r)
    return ap


_COMMANDS = {"check": cmd_check, "compute": cmd_compute, "reproduce": cmd_reproduce}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    if not args.command:
        ap.print_help(sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.field is not None:
            Field(args.field)
        result, code, p = _COMMANDS[args.command](args)
    except UsageError as e:
        print(f"detlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, ValueError) as e:
        print(f"detlab: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    report = {"schema_version": SCHEMA_VERSION, "command": argv,
              "seed": args.seed, "field": p,
              "timings": {"total_s": round(time.perf_counter() - t0, 6)},
              "result": result}
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(_human(args.command, result))
    return code


if __name__ == "__main__":
    sys.exit(main())
