"""Hypergeometric coefficient streams and p-adic functions of logarithmic type.

For parameters ``a = (a_1..a_s)``, ``b = (b_1..b_{s-1})`` the series
``F(t) = sum C_n t^n`` has ``C_n = prod (a_i)_n / (prod (b_j)_n * n!)``.
``F^(i)`` uses the i-th Dwork iterates of every parameter.  The companion
series ``G(t) = sum D_n t^n`` has ``D_n = C_n / n`` for ``p`` not dividing ``n``
and ``D_n = (C_n - c^(n/p) C^(1)_(n/p)) / n`` otherwise; its constant term is
a sum of p-adic digamma values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .padic import (
    INF,
    BudgetExceeded,
    PAdicError,
    PAdicNumber,
    PrecisionError,
    as_fraction,
    dwork_prime,
    format_rational,
    iwasawa_log_oneunit,
    multiplicative_order,
    psi_tilde,
    require_p_integral,
    residue,
    split_unit,
)


class IntegralityError(ArithmeticError):
    """A coefficient that must be p-integral is not; the parameters are inadmissible."""


class InvariantViolation(AssertionError):
    """An identity guaranteed by theory failed numerically."""


class ValueUndefined(ArithmeticError):
    """The special value does not exist at the requested point."""

    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class HGParams:
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    p: int
    c: Fraction = Fraction(1)

    def __post_init__(self):
        a = tuple(as_fraction(x) for x in self.a)
        b = tuple(as_fraction(x) for x in self.b)
        c = as_fraction(self.c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if not _is_prime(self.p):
            raise PAdicError(f"{self.p} is not prime")
        if len(a) < 1 or len(b) != len(a) - 1:
            raise PAdicError("need s >= 1 upper parameters and s-1 lower parameters")
        for x in a:
            require_p_integral(x, self.p, "parameter")
        for x in b:
            require_p_integral(x, self.p, "parameter")
            if _is_nonpositive_integer(x):
                raise PAdicError(f"lower parameter {format_rational(x)} is a non-positive integer")
        if c.denominator % self.p == 0 or (c - 1).numerator % self.p:
            raise PAdicError(f"Frobenius constant {format_rational(c)} is not a 1-unit")

    @classmethod
    def from_ijk(cls, p: int, N: int, i: int, j: int, k: int) -> HGParams:
        """Parameters ``(i/N, j/N; k/N)``."""
        return cls((Fraction(i, N), Fraction(j, N)), (Fraction(k, N),), p)

    @property
    def s(self) -> int:
        return len(self.a)

    @property
    def logarithmic_ok(self) -> bool:
        return not any(_is_nonpositive_integer(x) for x in self.a)

    def level(self, i: int) -> HGParams:
        """Parameters of ``F^(i)``."""
        a, b = self.a, self.b
        for _ in range(i):
            a = tuple(dwork_prime(x, self.p) for x in a)
            b = tuple(dwork_prime(x, self.p) for x in b)
        return HGParams(a, b, self.p, self.c)

    def orbit(self, max_steps: int | None = None) -> tuple[list[HGParams], int]:
        """Distinct Dwork levels in order and the index where the cycle starts."""
        if max_steps is None:
            dens = [x.denominator for x in self.a + self.b]
            order = math.lcm(*(multiplicative_order(self.p, d) for d in dens))
            max_steps = 4 * order + 8
        seen: dict[tuple, int] = {}
        levels: list[HGParams] = []
        cur = self
        for step in range(max_steps + 1):
            key = (cur.a, cur.b)
            if key in seen:
                return levels, seen[key]
            seen[key] = step
            levels.append(cur)
            cur = cur.level(1)
        raise BudgetExceeded(f"Dwork orbit of {self.label()} not periodic within {max_steps} steps")

    def label(self) -> str:
        a = ",".join(format_rational(x) for x in self.a)
        b = ",".join(format_rational(x) for x in self.b)
        out = f"({a};{b}) p={self.p}"
        if self.c != 1:
            out += f" c={format_rational(self.c)}"
        return out


# admissibility ---------------------------------------------------------------


@dataclass
class DworkConditionReport:
    ok: bool
    failures: list[tuple[str, int, str]] = field(default_factory=list)


def check_dwork_conditions(params: HGParams, depth: int | None = None) -> DworkConditionReport:
    """Check the unit condition on lower parameters and the sorted digit inequality."""
    p = params.p
    levels, _ = params.orbit()
    if depth is not None:
        levels = levels[: max(depth, 1)]
    failures: list[tuple[str, int, str]] = []
    q = sum(1 for x in params.b if x != 1)
    for n, lv in enumerate(levels):
        for x0, x in zip(params.b, lv.b):
            if x0 != 1 and x.numerator % p == 0:
                failures.append(("i", n, f"b-iterate {format_rational(x)} is not a unit"))
        da = sorted(residue(-x, p) for x in lv.a)
        db = sorted(residue(-x, p) for x in lv.b)
        for j in range(q):
            if not da[j + 1] < db[j]:
                failures.append(("ii", n, f"a-digits {tuple(da)} vs b-digits {tuple(db)}"))
                break
    return DworkConditionReport(not failures, failures)


# coefficient streams -----------------------------------------------------------


def batch_inverse(xs: Sequence[int], mod: int) -> list[int]:
    """Inverses of units modulo ``mod`` using a single modular inversion."""
    n = len(xs)
    if n == 0:
        return []
    prefix = [1] * (n + 1)
    acc = 1
    for idx, x in enumerate(xs):
        acc = acc * x % mod
        prefix[idx + 1] = acc
    inv = pow(acc, -1, mod)
    out = [0] * n
    for idx in range(n - 1, -1, -1):
        out[idx] = inv * prefix[idx] % mod
        inv = inv * xs[idx] % mod
    return out


def working_precision(m: int, n: int) -> int:
    """Digits carried internally to deliver ``m`` digits from truncation ``p**n``."""
    return m + max(m, n - 1) + 2


class CoefficientTable:
    """Lazily extended ``C_n^(level)`` and ``D_n`` at a fixed working precision.

    Coefficients are stored as residues modulo ``p**working_prec`` together
    with their exact valuations.  ``D_n`` with ``p**k || n`` is stored modulo
    ``p**(working_prec - k)``.
    """

    CHUNK = 1 << 15

    def __init__(self, params: HGParams, level: int = 0, working_prec: int = 10):
        self.params = params
        self.level = level
        self.working_prec = working_prec
        self.p = params.p
        self.modulus = params.p**working_prec
        self._lp = params.level(level)
        self._vals: list[int | float] = [0]
        self._res: list[int] = [1]
        self._dres: list[int | None] = [None]
        self._v = 0
        self._U = 1
        self._invV = 1
        self._next: CoefficientTable | None = None
        self._d_done = 1
        self._c_res = residue(params.c, self.modulus)
        # C_n vanishes from n = 1 - a_i on when some a_i is a non-positive integer
        ends = [1 - int(x) for x in self._lp.a if _is_nonpositive_integer(x)]
        self._end = min(ends) if ends else None

    # level bookkeeping

    def next_level(self) -> CoefficientTable:
        if self._next is None:
            nxt = self.params.level(self.level + 1)
            if (nxt.a, nxt.b) == (self._lp.a, self._lp.b):
                self._next = self
            else:
                self._next = CoefficientTable(self.params, self.level + 1, self.working_prec)
        return self._next

    def __len__(self) -> int:
        return len(self._res)

    # extension

    def extend(self, count: int) -> None:
        """Make ``C_n`` available for ``n < count``."""
        while len(self._res) < count:
            self._extend_chunk(min(count, len(self._res) + self.CHUNK))

    def _step_factors(self, start: int, stop: int) -> tuple[list[int], list[int], list[int], list[int]]:
        """Per-step unit factors for ``n`` in ``[start, stop)``.

        Returns the numerator units, the lower-parameter units, the unit parts
        of ``n`` (all reduced modulo ``p**W``) and the running valuations.
        """
        p, mod = self.p, self.modulus
        lp = self._lp
        an = [(x.numerator, x.denominator) for x in lp.a]
        bn = [(x.numerator, x.denominator) for x in lp.b]
        const = 1
        for _, d in an:
            const = const * pow(d, -1, mod) % mod
        for _, d in bn:
            const = const * d % mod
        biggest = max([abs(u) + stop * d for u, d in an + bn] + [stop])
        if biggest * mod < 2**62:
            return self._step_factors_np(start, stop, an, bn, const)
        nums, betas, nus, vals = [], [], [], []
        v = self._v
        for n in range(start, stop):
            t = const
            for u, d in an:
                x = u + (n - 1) * d
                while x % p == 0:
                    x //= p
                    v += 1
                t = t * x % mod
            beta = 1
            for u, d in bn:
                x = u + (n - 1) * d
                while x % p == 0:
                    x //= p
                    v -= 1
                beta = beta * x % mod
            nu = n
            while nu % p == 0:
                nu //= p
                v -= 1
            nums.append(t)
            betas.append(beta)
            nus.append(nu % mod)
            vals.append(v)
        return nums, betas, nus, vals

    def _step_factors_np(self, start, stop, an, bn, const):
        p, mod = self.p, self.modulus
        ns = np.arange(start, stop, dtype=np.int64)
        dv = np.zeros(len(ns), dtype=np.int64)

        def strip(x, sign):
            x = x.copy()
            while True:
                hit = x % p == 0
                if not hit.any():
                    return x
                x[hit] //= p
                dv[hit] += sign

        t = np.full(len(ns), const, dtype=np.int64)
        for u, d in an:
            t = t * (strip(u + (ns - 1) * d, 1) % mod) % mod
        beta = np.ones(len(ns), dtype=np.int64)
        for u, d in bn:
            beta = beta * (strip(u + (ns - 1) * d, -1) % mod) % mod
        nu = strip(ns, -1) % mod
        vals = self._v + np.cumsum(dv)
        return t.tolist(), beta.tolist(), nu.tolist(), vals.tolist()

    def _extend_chunk(self, stop: int) -> None:
        p, mod, W = self.p, self.modulus, self.working_prec
        start = len(self._res)
        live_stop = stop if self._end is None else min(stop, max(self._end, start))
        if live_stop > start:
            nums, betas, nus, vals = self._step_factors(start, live_stop)
            low = min(vals)
            if low < 0:
                n = start + vals.index(low)
                raise IntegralityError(
                    f"C_{n} of {self._lp.label()} has valuation {low}; "
                    "the parameters violate Dwork's conditions"
                )
            self._v = vals[-1]
            # prefix products of the step denominators, then one inversion
            steps = [beta * nu % mod for beta, nu in zip(betas, nus)]
            prefix = []
            V = 1
            for x in steps:
                V = V * x % mod
                prefix.append(V)
            inv = pow(V, -1, mod)
            invs = [0] * len(prefix)
            for idx in range(len(prefix) - 1, 0, -1):
                invs[idx] = inv
                inv = inv * steps[idx] % mod
            invs[0] = inv
            pw = [p**k for k in range(W)]
            res, dres = self._res, self._dres
            U, base = self._U, self._invV
            prev_V = 1
            n = start
            for t, vv, iv, beta, V in zip(nums, vals, invs, betas, prefix):
                U = U * t % mod
                r = U * base * iv * pw[vv] % mod if vv < W else 0
                res.append(r)
                if n % p:
                    # unit part of 1/n is (1/V_n) * V_{n-1} * beta_n, all chunk-local
                    dres.append(r * iv * prev_V * beta % mod)
                else:
                    dres.append(None)
                prev_V = V
                n += 1
            self._U = U
            self._invV = base * invs[-1] % mod
            self._vals.extend(vals)
        zeros = stop - live_stop
        if zeros > 0:
            self._vals.extend([INF] * zeros)
            self._res.extend([0] * zeros)
            self._dres.extend([0] * zeros)

    def extend_d(self, count: int) -> None:
        """Make ``D_n`` available for ``n < count`` (multiples of ``p`` need level + 1)."""
        self.extend(count)
        start = self._d_done
        if start >= count:
            return
        p, mod, W = self.p, self.modulus, self.working_prec
        nxt = self.next_level()
        nxt.extend((count - 1) // p + 1)
        res, nres, out = self._res, nxt._res, self._dres
        c_res = self._c_res
        first = -(-max(start, 1) // p) * p
        for n in range(first, count, p):
            k, m = split_unit(n, p)
            if k >= W:
                out[n] = None
                continue
            q = n // p
            cp = 1 if c_res == 1 else pow(c_res, q, mod)
            diff = (res[n] - cp * nres[q]) % mod
            pk = p**k
            if diff % pk:
                raise IntegralityError(f"D_{n} of {self.params.label()} is not {p}-integral")
            out[n] = (diff // pk) * pow(m, -1, mod) % (mod // pk)
        self._d_done = count

    # access

    def residue(self, n: int) -> int:
        self.extend(n + 1)
        return self._res[n]

    def valuation(self, n: int) -> int | float:
        self.extend(n + 1)
        return self._vals[n]

    def c_residues(self, count: int) -> list[int]:
        self.extend(count)
        return self._res[:count]

    def d_residues(self, count: int) -> list[int | None]:
        self.extend_d(count)
        return self._dres[:count]

    def d_precision(self, n: int) -> int:
        k, _ = split_unit(n, self.p)
        return self.working_prec - k


def coeff_C(table: CoefficientTable, n: int) -> PAdicNumber:
    """``C_n`` at the table's level as a p-adic number."""
    v = table.valuation(n)
    if v == INF:
        return PAdicNumber.zero(table.p)
    W = table.working_prec
    if v >= W:
        raise PrecisionError(f"C_{n} has valuation {v} beyond the working precision {W}")
    unit = table.residue(n) // table.p**v
    return PAdicNumber(table.p, v, unit, W - v)


def coeff_D(table: CoefficientTable, n: int) -> PAdicNumber:
    """``D_n`` for ``n >= 1`` (level-0 tables only)."""
    if n < 1:
        raise ValueError("D_0 is not a stream coefficient; use constant_D0")
    if table.level != 0:
        raise ValueError("D_n is defined from the level-0 table")
    table.extend_d(n + 1)
    r = table._dres[n]
    prec = table.d_precision(n)
    if r is None or prec < 1:
        raise PrecisionError(f"working precision {table.working_prec} cannot absorb the division in D_{n}")
    if r == 0:
        raise PrecisionError(f"D_{n} vanishes modulo {table.p}^{prec}; its valuation is not determined")
    v, u = split_unit(r, table.p)
    return PAdicNumber(table.p, v, u, prec - v)


def constant_D0(params: HGParams, prec: int) -> int:
    """Constant term of ``G`` modulo ``p**prec``; the Euler constants cancel."""
    p = params.p
    for x in params.a + params.b:
        if _is_nonpositive_integer(x):
            raise PAdicError(f"parameter {format_rational(x)} is a non-positive integer")
    total = sum(psi_tilde(x, p, prec) for x in params.a) - sum(psi_tilde(x, p, prec) for x in params.b)
    if params.c != 1:
        lg = iwasawa_log_oneunit(params.c, p, prec + 1)
        if lg % p:
            raise InvariantViolation("log of a 1-unit must be divisible by p")
        total -= lg // p
    return total % p**prec


# exact oracle -------------------------------------------------------------------


class ExactSeries:
    """``C_n``, ``C_n^(1)`` and ``D_n`` as exact fractions (test oracle)."""

    def __init__(self, params: HGParams):
        self.params = params
        self._levels: dict[int, list[Fraction]] = {}

    def C(self, n: int, level: int = 0) -> Fraction:
        seq = self._levels.get(level)
        if seq is None:
            seq = self._levels[level] = [Fraction(1)]
        if len(seq) <= n:
            lp = self.params.level(level)
            c = seq[-1]
            for k in range(len(seq), n + 1):
                num = Fraction(1)
                for x in lp.a:
                    num *= x + k - 1
                den = Fraction(k)
                for x in lp.b:
                    den *= x + k - 1
                c = c * num / den
                seq.append(c)
        return seq[n]

    def coefficients(self, count: int, level: int = 0) -> list[Fraction]:
        if count > 0:
            self.C(count - 1, level)
        return list(self._levels.get(level, [Fraction(1)])[:count])

    def D(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("D_0 is not rational in general")
        p = self.params.p
        if n % p:
            return self.C(n) / n
        q = n // p
        return (self.C(n) - self.params.c**q * self.C(q, 1)) / n


# evaluation ---------------------------------------------------------------------


def _power_sum(values: Iterable[int], alpha_res: int, mod: int, step: int = 1) -> int:
    """``sum values[k] * alpha**(step*k)`` modulo ``mod``."""
    if alpha_res == 1:
        return sum(values) % mod
    x = pow(alpha_res, step, mod)
    acc, power = 0, 1
    for val in values:
        acc = (acc + val * power) % mod
        power = power * x % mod
    return acc


def truncated_eval(
    which: str,
    params: HGParams,
    n: int,
    alpha=1,
    prec: int | None = None,
    level: int = 0,
    table: CoefficientTable | None = None,
) -> int:
    """``[F^(level)]_{<p^n}(alpha)`` or ``[G]_{<p^n}(alpha)`` modulo ``p**prec``."""
    p = params.p
    if prec is None:
        prec = max(n, 1)
    alpha = require_p_integral(alpha, p, "alpha")
    mod = p**prec
    count = p**n
    if table is None:
        table = CoefficientTable(params, level if which == "F" else 0, working_precision(prec, n))
    a_res = residue(alpha, mod)
    if which == "F":
        if table.level != level:
            raise ValueError("table level does not match the requested level")
        return _power_sum(table.c_residues(count), a_res, mod)
    if which != "G":
        raise ValueError("which must be 'F' or 'G'")
    if not params.logarithmic_ok:
        raise PAdicError("G needs upper parameters outside the non-positive integers")
    if table.working_prec - (n - 1) < prec:
        raise PrecisionError(
            f"working precision {table.working_prec} too small for {prec} digits at truncation {p}^{n}"
        )
    d = table.d_residues(count)
    head = constant_D0(params, prec)
    return (head + _power_sum(d[1:], a_res, mod) * a_res) % mod


def dwork_ratio(params: HGParams, n: int, alpha=1, prec: int | None = None) -> int:
    """``[F]_{<p^n}(alpha) / [F^(1)(t^p)]_{<p^n}(alpha)`` modulo ``p**prec``."""
    p = params.p
    if prec is None:
        prec = n
    alpha = require_p_integral(alpha, p, "alpha")
    mod = p**prec
    table = CoefficientTable(params, 0, prec)
    a_res = residue(alpha, mod)
    num = _power_sum(table.c_residues(p**n), a_res, mod)
    low = table.next_level()
    den = _power_sum(low.c_residues(p ** (n - 1) if n >= 1 else 1), a_res, mod, step=p)
    if den % p == 0:
        raise ValueUndefined("denominator of the Dwork ratio is not a unit at this point")
    return num * pow(den, -1, mod) % mod


@dataclass(frozen=True)
class SpecialValueResult:
    value: int
    modulus: int
    truncation_level: int
    h_unit_evidence: tuple[int, ...]
    stable: bool
    prime: int
    levels: dict = field(default_factory=dict, compare=False)

    @property
    def h_unit_ok(self) -> bool:
        return all(r % self.prime for r in self.h_unit_evidence)


def h_unit_evidence(params: HGParams, alpha=1) -> tuple[int, ...]:
    """``[F^(i)]_{<p}(alpha)`` modulo ``p`` for every distinct Dwork level."""
    p = params.p
    levels, _ = params.orbit()
    a_res = residue(require_p_integral(alpha, p, "alpha"), p)
    out = []
    for lv in levels:
        table = CoefficientTable(lv, 0, 1)
        out.append(_power_sum(table.c_residues(p), a_res, p))
    return tuple(out)


def truncated_ratios(params: HGParams, alpha, m: int, levels: Sequence[int]) -> dict[int, int]:
    """``[G]_{<p^n}(alpha) / [F]_{<p^n}(alpha)`` modulo ``p**m`` for each ``n`` in ``levels``.

    One coefficient pass serves every level.
    """
    p = params.p
    alpha = require_p_integral(alpha, p, "alpha")
    top = max(levels)
    table = CoefficientTable(params, 0, working_precision(m, top))
    mod = p**m
    a_res = residue(alpha, mod)
    count = p**top
    cs = table.c_residues(count)
    ds = table.d_residues(count)
    head = constant_D0(params, m)
    out: dict[int, int] = {}
    if a_res == 1:
        bounds = sorted(set(levels))
        f_acc = g_acc = 0
        prev = 0
        for n in bounds:
            stop = p**n
            f_acc += sum(cs[prev:stop])
            g_acc += sum(ds[max(prev, 1):stop])
            prev = stop
            out[n] = _ratio(head + g_acc, f_acc, mod, p, n)
        return out
    f_acc = g_acc = 0
    power = 1
    marks = {p**n: n for n in levels}
    for k in range(count):
        f_acc = (f_acc + cs[k] * power) % mod
        if k:
            g_acc = (g_acc + ds[k] * power) % mod
        power = power * a_res % mod
        if k + 1 in marks:
            n = marks[k + 1]
            out[n] = _ratio(head + g_acc, f_acc, mod, p, n)
    return out


def _ratio(g: int, f: int, mod: int, p: int, n: int) -> int:
    if f % p == 0:
        raise ValueUndefined(f"[F]_<p^{n} is not a unit at this point")
    return g % mod * pow(f % mod, -1, mod) % mod


def special_value(params: HGParams, alpha=1, m: int = 4) -> SpecialValueResult:
    """Value of ``G/F`` at ``alpha`` modulo ``p**m``, confirmed at two truncation levels."""
    p = params.p
    if p == 2:
        raise PAdicError("special values are computed for odd primes only")
    if not params.logarithmic_ok:
        raise PAdicError("upper parameters must avoid the non-positive integers")
    report = check_dwork_conditions(params)
    if not report.ok:
        cond, idx, witness = report.failures[0]
        raise PAdicError(f"condition ({cond}) fails at digit {idx}: {witness}")
    evidence = h_unit_evidence(params, alpha)
    for idx, r in enumerate(evidence):
        if r % p == 0:
            raise ValueUndefined(f"[F^({idx})]_<p vanishes mod {p} at alpha", level=idx)
    vals = truncated_ratios(params, alpha, m, (m, m + 1))
    stable = vals[m] == vals[m + 1]
    if not stable:
        raise InvariantViolation(
            f"truncations p^{m} and p^{m + 1} disagree: {vals[m]} vs {vals[m + 1]} mod {p}^{m}"
        )
    return SpecialValueResult(vals[m], p**m, m, evidence, stable, p, vals)


def gauss_unit_check(N: int, i: int, j: int, k: int, p: int) -> int:
    """``[F]_{<p}(1)`` mod ``p`` for ``(i/N, j/N; k/N)``, cross-checked against Gauss's sum."""
    if (p - 1) % N:
        raise PAdicError(f"N={N} does not divide p-1={p - 1}")
    if not (1 <= i <= N and 1 <= j <= N and 1 <= k <= N and i + j <= k):
        raise PAdicError("need 1 <= i, j, k <= N and i + j <= k")
    params = HGParams.from_ijk(p, N, i, j, k)
    direct = sum(CoefficientTable(params, 0, 1).c_residues(p)) % p
    i0, j0, k0 = (residue(Fraction(-x, N), p) for x in (i, j, k))
    f = math.factorial
    closed = residue(
        Fraction(f(p - k0 - 1) * f(p - k0 + i0 + j0 - 1), f(p - k0 + i0 - 1) * f(p - k0 + j0 - 1)), p
    )
    if direct != closed:
        raise InvariantViolation(f"direct sum {direct} and closed form {closed} differ mod {p}")
    if direct == 0:
        raise InvariantViolation("[F]_<p(1) vanishes mod p")
    return direct
