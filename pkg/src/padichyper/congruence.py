"""Brute-force checks of the congruences behind the logarithmic-type functions.

Every check expands the relevant quantities as exact fractions (through
:class:`~padichyper.hyperseries.ExactSeries`) and reduces once at the end, so
the modular kernel in :mod:`padichyper.hyperseries` is never used to validate
itself.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .hyperseries import ExactSeries, HGParams, check_dwork_conditions, constant_D0
from .padic import residue

STATEMENTS = ("dwork", "log", "ratio", "unitroot", "keylemma", "coeff")


@dataclass(frozen=True)
class CongruenceReport:
    statement: str
    params: str
    p: int
    n: int
    l: int | None
    index_range: tuple[int, int]
    modulus: int
    failures: tuple[tuple, ...] = ()
    note: str = ""
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passes(self) -> bool:
        return not self.failures

    def to_record(self) -> dict:
        return {
            "statement": self.statement,
            "params": self.params,
            "p": self.p,
            "n": self.n,
            "l": self.l,
            "index_range": list(self.index_range),
            "modulus": self.modulus,
            "passes": self.passes,
            "failures": [list(f) for f in self.failures],
            "note": self.note,
            "elapsed": round(self.elapsed, 6),
        }

    def summary(self) -> str:
        status = "pass" if self.passes else f"FAIL ({len(self.failures)})"
        lvl = f" l={self.l}" if self.l is not None else ""
        lo, hi = self.index_range
        line = f"{self.statement:9s} {self.params:28s} p={self.p} n={self.n}{lvl} [{lo}..{hi}] mod {self.modulus}: {status}"
        if self.note:
            line += f" ({self.note})"
        return line


@lru_cache(maxsize=256)
def _oracle(params: HGParams) -> ExactSeries:
    return ExactSeries(params)


def default_corpus(p: int) -> list[HGParams]:
    """Admissible ``(i/N, j/N; k/N)`` for every ``N | p - 1`` plus two degenerate families."""
    seen: dict[HGParams, None] = {}
    for N in range(2, p):
        if (p - 1) % N:
            continue
        for i in range(1, N + 1):
            for j in range(i, N + 1):
                for k in range(i + j, N + 1):
                    seen.setdefault(HGParams.from_ijk(p, N, i, j, k))
    seen.setdefault(HGParams((Fraction(1),), (), p))
    seen.setdefault(HGParams((Fraction(1), Fraction(1)), (Fraction(1),), p))
    return list(seen)


def _check_admissible(params: HGParams) -> None:
    report = check_dwork_conditions(params)
    if not report.ok:
        raise ValueError(f"{params.label()} violates Dwork's conditions: {report.failures[0]}")


def _finish(statement, params, n, l, rng, modulus, failures, t0, note="") -> CongruenceReport:
    return CongruenceReport(
        statement, params.label(), params.p, n, l, rng, modulus, tuple(failures), note, time.perf_counter() - t0
    )


def verify_dwork_congruence(params: HGParams, n: int, l: int | None = None, max_deg: int | None = None) -> CongruenceReport:
    """``F(t) [F1(t^p)]_<p^n  ==  F1(t^p) [F(t)]_<p^n``  mod ``p^l``, coefficientwise."""
    t0 = time.perf_counter()
    _check_admissible(params)
    p = params.p
    l = n if l is None else l
    if not 0 <= l <= n:
        raise ValueError("need 0 <= l <= n")
    max_deg = 2 * p**n if max_deg is None else max_deg
    ex = _oracle(params)
    c0 = ex.coefficients(max_deg + 1)
    c1 = ex.coefficients(max_deg // p + 1, level=1)
    top = p**n
    mod = p**l
    failures = []
    for d in range(max_deg + 1):
        lhs = sum((c0[d - p * k] * c1[k] for k in range(min(d // p, (top - 1) // p) + 1)), Fraction(0))
        rhs = sum((c0[e] * c1[(d - e) // p] for e in range(d % p, min(d, top - 1) + 1, p)), Fraction(0))
        lr, rr = residue(lhs, mod), residue(rhs, mod)
        if lr != rr:
            failures.append((d, lr, rr))
    return _finish("dwork", params, n, l, (0, max_deg), mod, failures, t0)


def verify_log_congruence(params: HGParams, n: int, max_m: int | None = None) -> CongruenceReport:
    """``S_m = sum_{i+j=m} C_{i+p^n} D_j - C_i D_{j+p^n} == 0`` mod ``p^n``.

    For ``p = 2`` only ``p^(n-1)`` is asserted.
    """
    t0 = time.perf_counter()
    _check_admissible(params)
    if params.c != 1:
        raise ValueError("the log congruence is checked for c = 1")
    p = params.p
    max_m = 2 * p**n if max_m is None else max_m
    e = n - 1 if p == 2 else n
    mod = p**e
    note = f"modulus reduced to {p}^{e} for p = 2" if p == 2 else ""
    top = p**n
    ex = _oracle(params)
    C = ex.coefficients(max_m + top + 1)
    D = [None] + [ex.D(k) for k in range(1, max_m + top + 1)]
    d0 = constant_D0(params, max(e, 1))
    failures = []
    for m in range(max_m + 1):
        exact = Fraction(0)
        for j in range(1, m + 1):
            exact += C[m - j + top] * D[j]
        for i in range(m + 1):
            exact -= C[i] * D[m - i + top]
        s = (residue(exact, mod) + residue(C[m + top], mod) * d0) % mod
        if s:
            failures.append((m, s, 0))
    return _finish("log", params, n, None, (0, max_m), mod, failures, t0, note)


def _ratio_residue(ex: ExactSeries, k: int, mod: int, d0: int) -> int | None:
    if k == 0:
        return d0 % mod
    ck = ex.C(k)
    if ck == 0:
        return None
    return residue(ex.D(k) / ck, mod)


def default_pairs(p: int, n: int, max_m: int) -> list[tuple[int, int]]:
    return [(m, m + p**n) for m in range(max_m + 1)]


def verify_ratio_continuity(
    params: HGParams, n: int, pairs: Sequence[tuple[int, int]] | None = None
) -> CongruenceReport:
    """``D_m / C_m == D_m' / C_m'`` mod ``p^n`` whenever ``m == m'`` mod ``p^n``."""
    t0 = time.perf_counter()
    _check_admissible(params)
    p = params.p
    mod = p**n
    pairs = default_pairs(p, n, 2 * p**n) if pairs is None else list(pairs)
    for m, mp in pairs:
        if (m - mp) % mod:
            raise ValueError(f"pair ({m}, {mp}) is not congruent mod {p}^{n}")
    ex = _oracle(params)
    d0 = constant_D0(params, n)
    failures = []
    skipped = 0
    for m, mp in pairs:
        x, y = _ratio_residue(ex, m, mod, d0), _ratio_residue(ex, mp, mod, d0)
        if x is None or y is None:
            skipped += 1
        elif x != y:
            failures.append((m, mp, x, y))
    note = f"{skipped} pairs with vanishing C skipped" if skipped else ""
    return _finish("ratio", params, n, None, _span(pairs), mod, failures, t0, note)


def verify_unitroot_expansion(params: HGParams, n: int, max_m: int | None = None) -> CongruenceReport:
    """For ``p`` not dividing ``m``:
    ``C1_{mp^(n-1)} / C_{mp^n} == 1 - m p^n D_0`` mod ``p^(2n)`` and
    ``D_{mp^n} / C_{mp^n} == D_0`` mod ``p^n``.
    """
    t0 = time.perf_counter()
    _check_admissible(params)
    if params.c != 1:
        raise ValueError("the unit-root expansion is checked for c = 1")
    p = params.p
    max_m = 2 * p**n if max_m is None else max_m
    mod2, mod1 = p ** (2 * n), p**n
    ex = _oracle(params)
    d0 = constant_D0(params, 2 * n)
    failures = []
    for m in range(1, max_m + 1):
        if m % p == 0:
            continue
        big = m * p**n
        c_big = ex.C(big)
        lhs = residue(ex.C(big // p, 1) / c_big, mod2)
        rhs = (1 - big * d0) % mod2
        if lhs != rhs:
            failures.append(("expansion", m, lhs, rhs))
        lhs = residue(ex.D(big) / c_big, mod1)
        if lhs != d0 % mod1:
            failures.append(("ratio", m, lhs, d0 % mod1))
    return _finish("unitroot", params, n, None, (1, max_m), mod2, failures, t0)


def verify_key_lemma(params: HGParams, n: int, l: int, max_m: int | None = None) -> CongruenceReport:
    """``sum_{i+j=m, i == k mod p^(n-l)} C_i C_{j+p^n} - C_j C_{i+p^n} == 0`` mod ``p^(l+1)``
    for every class ``k``."""
    t0 = time.perf_counter()
    _check_admissible(params)
    if not 0 <= l <= n:
        raise ValueError("need 0 <= l <= n")
    p = params.p
    max_m = 2 * p**n if max_m is None else max_m
    top = p**n
    step = p ** (n - l)
    mod = p ** (l + 1)
    C = _oracle(params).coefficients(max_m + top + 1)
    failures = []
    for m in range(max_m + 1):
        for k in range(step):
            total = Fraction(0)
            for i in range(k, m + 1, step):
                j = m - i
                total += C[i] * C[j + top] - C[j] * C[i + top]
            if l == n:
                ok = total == 0
                r = 0 if ok else residue(total, mod)
            else:
                r = residue(total, mod)
                ok = r == 0
            if not ok:
                failures.append((m, k, r, 0))
    return _finish("keylemma", params, n, l, (0, max_m), mod, failures, t0)


def verify_dwork_coefficient_congruence(
    params: HGParams, n: int, pairs: Sequence[tuple[int, int]] | None = None
) -> CongruenceReport:
    """``C_m C1_{floor(m'/p)} == C_m' C1_{floor(m/p)}`` mod ``p^n`` for ``m == m'`` mod ``p^n``."""
    t0 = time.perf_counter()
    _check_admissible(params)
    p = params.p
    mod = p**n
    pairs = default_pairs(p, n, 2 * p**n) if pairs is None else list(pairs)
    ex = _oracle(params)
    failures = []
    for m, mp in pairs:
        if (m - mp) % mod:
            raise ValueError(f"pair ({m}, {mp}) is not congruent mod {p}^{n}")
        lhs = residue(ex.C(m) * ex.C(mp // p, 1), mod)
        rhs = residue(ex.C(mp) * ex.C(m // p, 1), mod)
        if lhs != rhs:
            failures.append((m, mp, lhs, rhs))
    return _finish("coeff", params, n, None, _span(pairs), mod, failures, t0)


def _span(pairs: Iterable[tuple[int, int]]) -> tuple[int, int]:
    flat = [x for pair in pairs for x in pair]
    return (min(flat), max(flat)) if flat else (0, 0)


def run_suite(
    suite: str, params: HGParams, n: int, max_m: int | None = None, l: int | None = None
) -> list[CongruenceReport]:
    """Run one named statement (or ``"all"``) on a single parameter set."""
    p = params.p
    names = STATEMENTS if suite == "all" else (suite,)
    out = []
    for name in names:
        mm = 2 * p**n if max_m is None else max_m
        if name == "dwork":
            out.append(verify_dwork_congruence(params, n, n if l is None else l, mm))
        elif name == "log":
            out.append(verify_log_congruence(params, n, mm))
        elif name == "ratio":
            out.append(verify_ratio_continuity(params, n, default_pairs(p, n, mm)))
        elif name == "unitroot":
            out.append(verify_unitroot_expansion(params, n, mm))
        elif name == "keylemma":
            levels = range(n + 1) if l is None else (l,)
            out.extend(verify_key_lemma(params, n, lv, mm) for lv in levels)
        elif name == "coeff":
            out.append(verify_dwork_coefficient_congruence(params, n, default_pairs(p, n, mm)))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out

