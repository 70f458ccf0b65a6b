"""Command-line front end (``padichyper`` / ``python3 -m padichyper``).

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 value undefined.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .congruence import STATEMENTS, default_corpus, run_suite
from .curve import (
    CurveEigenData,
    endpoint_vanishing_crosscheck,
    epsilon_from_E,
    g_tau_bracket,
    hg_ode_residual,
    solve_E_tau,
    solve_G_tau,
)
from .hyperseries import HGParams, InvariantViolation, ValueUndefined, special_value
from .padic import BudgetExceeded, PAdicError, dwork_orbit, format_rational, parse_rational, psi_tilde
from .reference_values import PUBLISHED_VALUES

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDEFINED = 0, 1, 2, 3
CSV_HEADER = ("p", "N", "i", "j", "k", "modulus", "value")


class UsageError(Exception):
    pass


def _validate_ijk(p: int, N: int, i: int, j: int, k: int) -> None:
    if N < 1 or (p - 1) % N:
        raise UsageError(f"N={N} must divide p-1={p - 1}")
    for name, x in (("i", i), ("j", j), ("k", k)):
        if not 1 <= x <= N:
            raise UsageError(f"{name}={x} must lie in 1..N={N}")
    if i + j > k:
        raise UsageError(f"need i+j <= k, got {i}+{j} > {k}")


def row_value(key: tuple[int, int, int, int, int], prec: int = 4) -> dict:
    """One table record; raises on invalid input or undefined values."""
    p, N, i, j, k = key
    res = special_value(HGParams.from_ijk(p, N, i, j, k), 1, prec)
    return {"p": p, "N": N, "i": i, "j": j, "k": k, "modulus": res.modulus, "value": res.value}


def enumerate_rows(p: int, N: int, primitive: bool = False) -> list[tuple[int, int, int, int, int]]:
    """All ``(p, N, i, j, k)`` with ``i <= j`` and ``i + j <= k <= N``."""
    if (p - 1) % N:
        raise UsageError(f"N={N} must divide p-1={p - 1}")
    rows = []
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            if primitive and math.gcd(i, j, N) != 1:
                continue
            rows.extend((p, N, i, j, k) for k in range(i + j, N + 1))
    return rows


def compute_rows(keys, prec: int = 4, threads: int = 1) -> list[dict]:
    keys = sorted(keys)
    if threads > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row_value, keys, [prec] * len(keys)))
    return [row_value(key, prec) for key in keys]


def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([r[c] for c in CSV_HEADER])
        return buf.getvalue()
    return "".join(json.dumps({c: r[c] for c in CSV_HEADER}) + "\n" for r in rows)


# subcommands -----------------------------------------------------------------


def cmd_special_value(args) -> int:
    _validate_ijk(args.p, args.N, args.i, args.j, args.k)
    alpha = parse_rational(args.alpha)
    params = HGParams.from_ijk(args.p, args.N, args.i, args.j, args.k)
    res = special_value(params, alpha, args.prec)
    if args.json:
        record = {
            "p": args.p,
            "N": args.N,
            "i": args.i,
            "j": args.j,
            "k": args.k,
            "modulus": res.modulus,
            "value": res.value,
            "stable": res.stable,
            "h_unit_ok": res.h_unit_ok,
        }
        print(json.dumps(record))
    else:
        print(f"{res.value} mod {args.p}^{args.prec} = {res.modulus}")
    return EXIT_OK


def cmd_table(args) -> int:
    if args.paper:
        if args.p is not None or args.N is not None:
            raise UsageError("--paper takes no --p/--N")
        keys = list(PUBLISHED_VALUES)
    else:
        if args.p is None or args.N is None:
            raise UsageError("give --paper or both --p and --N")
        keys = enumerate_rows(args.p, args.N, args.primitive)
    prec = 4 if args.prec is None else args.prec
    rows = compute_rows(keys, prec, args.threads)
    sys.stdout.write(format_rows(rows, args.format))
    if not args.check:
        return EXIT_OK
    bad = 0
    for r in rows:
        key = (r["p"], r["N"], r["i"], r["j"], r["k"])
        if key not in PUBLISHED_VALUES:
            continue
        want = PUBLISHED_VALUES[key] % r["modulus"]
        if want != r["value"]:
            bad += 1
            print(f"mismatch {key}: published {want}, computed {r['value']}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def parse_params_line(line: str, p: int) -> HGParams:
    """``a1,a2;b1`` with an optional trailing ``c=u/v``."""
    parts = line.split()
    body, extra = parts[0], parts[1:]
    if ";" not in body:
        raise UsageError(f"expected 'a1,...;b1,...', got {line!r}")
    upper, lower = body.strip("()").split(";")
    a = tuple(parse_rational(x) for x in upper.split(",") if x)
    b = tuple(parse_rational(x) for x in lower.split(",") if x)
    c = Fraction(1)
    for item in extra:
        if item.startswith("c="):
            c = parse_rational(item[2:])
        else:
            raise UsageError(f"unexpected token {item!r}")
    return HGParams(a, b, p, c)


def load_corpus(spec: str, p: int) -> list[HGParams]:
    if spec == "default":
        return default_corpus(p)
    out = []
    with open(spec, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                out.append(parse_params_line(line, p))
    return out


def cmd_verify(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    corpus = load_corpus(args.corpus, args.p)
    sink = open(args.jsonl, "w", encoding="utf-8") if args.jsonl else None
    failed = 0
    try:
        for params in corpus:
            for rep in run_suite(args.suite, params, args.n, args.max_m, args.l):
                print(rep.summary())
                for f in rep.failures[:10]:
                    print(f"    failure {f}")
                if sink:
                    sink.write(json.dumps(rep.to_record()) + "\n")
                failed += not rep.passes
    finally:
        if sink:
            sink.close()
    print(f"{failed} failing checks" if failed else "all checks pass")
    return EXIT_FAIL if failed else EXIT_OK


def _show_series(name: str, series, count: int) -> None:
    body = ", ".join(format_rational(c) for c in series.coeffs[:count])
    print(f"{name}: [{body}{', ...' if series.order > count else ''}]")


def cmd_curve(args) -> int:
    data = CurveEigenData(args.N, args.i, args.p)
    M = 3 * args.p if args.terms is None else args.terms
    print(f"N={data.N} i={data.i} p={data.p} j={data.j} sign={data.sign:+d} a_i={format_rational(data.a_i)} terms={M}")
    ok = True
    if args.check in ("ode", "all"):
        res = [hg_ode_residual(a, M, data.p) for a in {data.a_i, data.a_j}]
        good = all(c == 0 for r in res for c in r)
        print(f"ode residual zero to order {M - 2}: {'pass' if good else 'FAIL'}")
        ok &= good
    G = solve_G_tau(data, M, args.prec)
    E1, E2 = solve_E_tau(data, M, args.prec, G)
    eps1, eps2 = epsilon_from_E(data, E1, E2)
    show = min(M, args.show)
    for name, s in (("G", G), ("E1", E1), ("E2", E2), ("eps1", eps1), ("eps2", eps2)):
        _show_series(name, s, show)
    if args.check in ("ode", "all"):
        good = g_tau_bracket(data, M)[0] == 0 and eps1[0] == 0 and eps2[0] == 0
        print(f"bracket constant, eps1(0), eps2(0) all zero: {'pass' if good else 'FAIL'}")
        ok &= good
    if args.check in ("endpoint", "all"):
        if (data.p - 1) % data.N:
            print(f"endpoint check skipped: N={data.N} does not divide p-1")
        else:
            rep = endpoint_vanishing_crosscheck(data, args.prec, M)
            print(
                f"special value of ({format_rational(data.a_i)},{format_rational(1 - data.a_i)};1) at t=1: "
                f"{rep.value} mod {rep.modulus}, eps1(0)={rep.eps1_at_zero}: {'pass' if rep.ok else 'FAIL'}"
            )
            ok &= rep.ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_psi(args) -> int:
    print(psi_tilde(parse_rational(args.z), args.p, args.prec))
    return EXIT_OK


def cmd_dwork_prime(args) -> int:
    orb = dwork_orbit(parse_rational(args.a), args.p)
    print(", ".join(format_rational(orb[i]) for i in range(args.iters)))
    print(f"preperiod {orb.preperiod}, period {orb.period}")
    return EXIT_OK


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padichyper", description="p-adic hypergeometric functions of logarithmic type")
    sub = ap.add_subparsers(dest="command", required=True)

    sv = sub.add_parser("special-value", help="value of (i/N, j/N; k/N) at alpha mod p^prec")
    for flag in ("--p", "--N", "--i", "--j", "--k"):
        sv.add_argument(flag, type=int, required=True)
    sv.add_argument("--prec", type=int, default=4)
    sv.add_argument("--alpha", default="1")
    sv.add_argument("--json", action="store_true")
    sv.set_defaults(func=cmd_special_value)

    tb = sub.add_parser("table", help="table of special values at t=1")
    tb.add_argument("--paper", action="store_true", help="the 69 published tuples")
    tb.add_argument("--p", type=int)
    tb.add_argument("--N", type=int)
    tb.add_argument("--prec", type=int)
    tb.add_argument("--primitive", action="store_true", help="only tuples with gcd(i, j, N) = 1")
    tb.add_argument("--format", choices=("csv", "json"), default="csv")
    tb.add_argument("--check", action="store_true", help="compare with the published values")
    tb.add_argument("--threads", type=int, default=1)
    tb.set_defaults(func=cmd_table)

    vf = sub.add_parser("verify", help="run congruence suites")
    vf.add_argument("--suite", choices=STATEMENTS + ("all",), default="all")
    vf.add_argument("--p", type=int, required=True)
    vf.add_argument("--n", type=int, default=1)
    vf.add_argument("--l", type=int, help="level for the dwork and keylemma suites")
    vf.add_argument("--corpus", default="default")
    vf.add_argument("--max-m", type=int, dest="max_m")
    vf.add_argument("--jsonl", help="write one JSON record per check to this file")
    vf.set_defaults(func=cmd_verify)

    cv = sub.add_parser("curve", help="lambda-series for the hypergeometric curve")
    cv.add_argument("--N", type=int, required=True)
    cv.add_argument("--i", type=int, required=True)
    cv.add_argument("--p", type=int, required=True)
    cv.add_argument("--terms", type=int)
    cv.add_argument("--prec", type=int, default=4)
    cv.add_argument("--check", choices=("endpoint", "ode", "all"), default="all")
    cv.add_argument("--show", type=int, default=6, help="coefficients to print per series")
    cv.set_defaults(func=cmd_curve)

    ps = sub.add_parser("psi", help="p-adic digamma residue")
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--z", required=True)
    ps.add_argument("--prec", type=int, default=4)
    ps.set_defaults(func=cmd_psi)

    dp = sub.add_parser("dwork-prime", help="Dwork-prime orbit of a rational")
    dp.add_argument("--p", type=int, required=True)
    dp.add_argument("--a", required=True)
    dp.add_argument("--iters", type=int, default=4)
    dp.set_defaults(func=cmd_dwork_prime)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueUndefined as exc:
        print(f"error: value undefined: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, PAdicError, BudgetExceeded, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
