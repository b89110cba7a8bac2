"""Command-line interface: ``unitri {census,verify,orbits,pattern,reduce}``.

Exit codes: 0 success, 1 mismatch, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import census as cen
from .ffmat import FieldError, MatrixParseError, PrimeField, mat_mul, parse_matrix_text, unitri_inverse
from .pattern import closure, derived_pattern, minimal_pairs, pattern_by_kind
from .quasimonomial import (
    BRUTE_FORCE_LIMIT,
    UnsupportedShape,
    brute_orbits,
    count_representatives,
    enumerate_representatives,
    orbit_size_formula,
    reduce,
    standard_form,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_EVAL = (2, 3)


class UsageError(Exception):
    pass


# -- output helpers ------------------------------------------------------------

def _md_table(header: list[str], rows: list[list]) -> str:
    out = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    out += ["| " + " | ".join(str(c) for c in r) + " |" for r in rows]
    return "\n".join(out)


def _csv_table(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(fmt: str, header: list[str], rows: list[list], payload) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return _csv_table(header, rows)
    return _md_table(header, rows)


def _parse_n_range(text: str) -> list[int]:
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A:B, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return list(range(lo, hi + 1))


def _parse_e(text: str):
    if text == "all":
        return "all"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("e must be an integer or 'all'") from None


def _prime(text: str) -> int:
    try:
        return PrimeField(int(text)).p
    except (ValueError, FieldError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime") from None


def _poly_str(poly, basis: str) -> str:
    if basis == "q":
        return str(poly)
    shifted = poly.shift(1)
    shifted.var = "u"
    return str(shifted)


# -- census --------------------------------------------------------------------

def census_record(n: int, e: int, basis: str, qs) -> dict:
    poly = cen.count(n, e)
    coeffs = poly.int_coefficients() if basis == "q" else cen.to_qminus1_basis(poly).coefficients
    return {
        "n": n,
        "e": e,
        "basis": basis,
        "coefficients": coeffs,
        "evaluations": {str(q): poly.evaluate_int(q) for q in qs},
    }


def run_census(args) -> int:
    es = list(range(cen.MAX_E + 1)) if args.e == "all" else [args.e]
    for e in es:
        if e > cen.MAX_E or e < 0:
            raise UsageError(f"e={e} is out of scope: formulas are known only for 0 <= e <= {cen.MAX_E}")
    qs = args.q if args.q else list(DEFAULT_EVAL)
    records = [census_record(n, e, args.basis, qs) for n in args.n for e in es]
    if args.format == "json":
        print(json.dumps(records[0] if len(records) == 1 else records, indent=2))
    elif args.format == "csv":
        header = ["n", "e", "basis", "coefficients"] + [f"q={q}" for q in qs]
        rows = [[r["n"], r["e"], r["basis"], " ".join(map(str, r["coefficients"]))]
                + [r["evaluations"][str(q)] for q in qs] for r in records]
        print(_csv_table(header, rows))
    else:
        single = args.q is not None and len(args.q) == 1
        header = ["n"] + [f"e={e}" for e in es]
        rows = []
        for n in args.n:
            row = [n]
            for e in es:
                poly = cen.count(n, e)
                row.append(poly.evaluate_int(qs[0]) if single else _poly_str(poly, args.basis))
            rows.append(row)
        print(_md_table(header, rows))
    return EXIT_OK


# -- verify --------------------------------------------------------------------

def run_verify(args) -> int:
    from .oracle import ResourceError, check_histogram, clifford_first_row_census, pattern_degrees
    from .pattern import pattern_U

    n, p = args.n, args.p
    if n < 2:
        raise UsageError("verify needs n >= 2")
    pattern = pattern_U(n)
    t0 = time.perf_counter()
    try:
        hist, k = pattern_degrees(pattern, p, cache_dir=args.cache_dir, bound=args.bound)
    except ResourceError as err:
        _print_skip(args, n, p, str(err))
        return EXIT_RESOURCE
    elapsed = time.perf_counter() - t0
    exps = hist.exponents(p) if all(_is_pow(d, p) for d in hist.counts) else {}
    rows, ok = [], True
    for e in range(min(cen.MAX_E, cen.mu(n)) + 1):
        formula = cen.count(n, e).evaluate_int(p)
        oracle = exps.get(e, 0)
        rows.append([e, formula, oracle, "match" if formula == oracle else "MISMATCH"])
        ok &= formula == oracle
    checks = check_histogram(hist, p ** len(pattern.pairs), k, p, n_full=n)
    if args.clifford:
        cl = clifford_first_row_census(pattern, p, bound=args.bound)
        checks["first-row census agrees"] = cl == hist
    ok &= all(checks.values())
    if args.format == "json":
        print(json.dumps({
            "n": n, "p": p, "status": "ok" if ok else "mismatch",
            "histogram": {str(d): m for d, m in hist.counts.items()},
            "rows": [{"e": r[0], "formula": r[1], "oracle": r[2], "match": r[3] == "match"} for r in rows],
            "checks": checks, "seconds": round(elapsed, 3),
        }, indent=2))
    else:
        print(_emit(args.format, ["e", "formula", "oracle", "status"], rows, None))
        if args.format == "md":
            print()
            for name, val in checks.items():
                print(f"- {name}: {'pass' if val else 'FAIL'}")
            print(f"- histogram U_{n}({p}): {hist}")
    return EXIT_OK if ok else EXIT_MISMATCH


def _is_pow(d: int, p: int) -> bool:
    while d % p == 0:
        d //= p
    return d == 1


def _print_skip(args, n, p, why):
    if args.format == "json":
        print(json.dumps({"n": n, "p": p, "status": "skipped", "reason": why}))
    else:
        print(f"skipped: U_{n}({p}): {why}")


# -- orbits --------------------------------------------------------------------

def run_orbits(args) -> int:
    field = PrimeField(args.p)
    s, t = args.s, args.t
    reps = list(enumerate_representatives(s, t, field))
    expected = count_representatives(s, t).evaluate_int(args.p)
    bfs_sizes = None
    if args.p ** (s * t) <= args.limit:
        bfs_sizes = {}
        for orbit in brute_orbits(s, t, field, limit=args.limit):
            qs = [x for x in orbit if reduce(x).Q == x]
            bfs_sizes[qs[0].entries] = len(orbit)
    ok = len(reps) == expected and (bfs_sizes is None or len(bfs_sizes) == len(reps))
    rows = []
    for x in reps:
        form = standard_form(x)
        try:
            formula = orbit_size_formula(form, args.p)
        except UnsupportedShape:
            formula = "-"
        bfs = "skipped" if bfs_sizes is None else bfs_sizes.get(x.entries, "absent")
        if bfs_sizes is not None and formula != "-" and bfs != formula:
            ok = False
        rows.append([str(form), form.length, formula, bfs])
    payload = {
        "s": s, "t": t, "p": args.p, "count": len(reps), "count_formula": expected,
        "representatives": [{"form": r[0], "length": r[1], "formula_size": r[2], "bfs_size": r[3]} for r in rows],
    }
    print(_emit(args.format, ["representative", "length", "formula size", "BFS size"], rows, payload))
    if args.format == "md":
        print(f"\n{len(reps)} representatives (polynomial count: {expected})")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- pattern ---------------------------------------------------------------------

def _parse_pairs(text: str, n: int):
    pairs = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        a, b = tok.split("-")
        pairs.append((int(a), int(b)))
    return closure(n, pairs)


def run_pattern(args) -> int:
    try:
        if args.pairs is not None:
            pat = _parse_pairs(args.pairs, args.n)
        else:
            pat = pattern_by_kind(args.kind, args.n, args.i, args.j)
    except ValueError as err:
        raise UsageError(str(err)) from None
    mins = minimal_pairs(pat)
    derived = derived_pattern(pat)
    payload = {
        "n": pat.n,
        "pairs": [list(pr) for pr in pat.pairs],
        "minimal_pairs": [list(pr) for pr in mins],
        "derived_pairs": [list(pr) for pr in derived.pairs],
        "order_exponent": len(pat.pairs),
        "n1_exponent": len(mins),
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    fmt = lambda ps: " ".join(f"({i},{j})" for i, j in ps) or "-"
    rows = [
        ["pairs", fmt(pat.pairs)],
        ["minimal pairs", fmt(mins)],
        ["derived pattern", fmt(derived.pairs)],
        ["order", f"q^{len(pat.pairs)}"],
        ["N_1", f"q^{len(mins)}"],
    ]
    print(_emit(args.format, ["field", "value"], rows, None))
    return EXIT_OK


# -- reduce ----------------------------------------------------------------------

def run_reduce(args) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    x = parse_matrix_text(text)
    red = reduce(x)
    check = mat_mul(mat_mul(unitri_inverse(red.A), x), red.B)
    ok = check == red.Q
    form = standard_form(red.Q)
    if args.format == "json":
        print(json.dumps({
            "Q": red.Q.to_rows(), "A": red.A.to_rows(), "B": red.B.to_rows(),
            "standard_form": str(form), "length": form.length, "verified": ok,
        }, indent=2))
    else:
        for name, m in (("Q", red.Q), ("A", red.A), ("B", red.B), ("A^-1 X B", check)):
            print(f"{name} =\n{m}\n")
        print(f"standard form: {form}  (length {form.length})")
        print(f"verified: {ok}")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unitri", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="character counts N_{q^e}(U_n) from the formulas")
    c.add_argument("--n", type=_parse_n_range, required=True, help="N or inclusive range A:B")
    c.add_argument("--e", type=_parse_e, default="all", help="exponent 0..3 or 'all'")
    c.add_argument("--basis", choices=["q", "q-1"], default="q")
    c.add_argument("--q", type=int, nargs="+", help="values of q to evaluate at")
    c.add_argument("--format", choices=["json", "csv", "md"], default="json")
    c.set_defaults(func=run_census)

    v = sub.add_parser("verify", help="compare the formulas with the brute-force oracle")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p", type=_prime, required=True)
    v.add_argument("--bound", type=int, default=2 ** 21, help="largest group order to enumerate")
    v.add_argument("--cache-dir", type=Path, default=None, help="overrides $UNITRI_CACHE_DIR")
    v.add_argument("--clifford", action="store_true", help="also run the first-row census")
    v.add_argument("--format", choices=["json", "csv", "md"], default="md")
    v.set_defaults(func=run_verify)

    o = sub.add_parser("orbits", help="quasimonomial orbit representatives of U_s x U_t on F^{s x t}")
    o.add_argument("--s", type=int, required=True)
    o.add_argument("--t", type=int, required=True)
    o.add_argument("--p", type=_prime, required=True)
    o.add_argument("--limit", type=int, default=BRUTE_FORCE_LIMIT, help="largest p^(st) for BFS cross-check")
    o.add_argument("--format", choices=["json", "csv", "md"], default="md")
    o.set_defaults(func=run_orbits)

    pt = sub.add_parser("pattern", help="inspect a closed pattern")
    pt.add_argument("--kind", choices=["U", "P", "Q"], default="U")
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--i", type=int)
    pt.add_argument("--j", type=int)
    pt.add_argument("--pairs", help="custom pairs 'i-j,...' (closed automatically)")
    pt.add_argument("--format", choices=["json", "csv", "md"], default="md")
    pt.set_defaults(func=run_pattern)

    r = sub.add_parser("reduce", help="reduce a matrix file to its quasimonomial form")
    r.add_argument("file", help="matrix file ('s t p' header), or - for stdin")
    r.add_argument("--format", choices=["json", "text"], default="text")
    r.set_defaults(func=run_reduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "s", 1) < 1 or getattr(args, "t", 1) < 1:
        ap.error("dimensions must be positive")
    try:
        return args.func(args)
    except UsageError as err:
        print(f"unitri {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except MatrixParseError as err:
        print(f"unitri reduce: parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"unitri {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
