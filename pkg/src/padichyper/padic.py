"""Exact p-adic arithmetic on rationals.

Numbers are carried as ``p**valuation * unit`` with the unit known modulo
``p**prec``.  Rational inputs are plain :class:`fractions.Fraction` values; a
rational is a p-adic integer when its reduced denominator is prime to ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

INF = math.inf


class PAdicError(ValueError):
    """Invalid input for a p-adic operation."""


class PrecisionError(ArithmeticError):
    """A computation would need more p-adic digits than are available."""


class BudgetExceeded(RuntimeError):
    """An iterative search ran out of steps."""


def valuation(x: int, p: int) -> int | float:
    """Exponent of ``p`` in the integer ``x``; ``inf`` for zero."""
    if x == 0:
        return INF
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def split_unit(x: int, p: int) -> tuple[int, int]:
    """Return ``(v, u)`` with ``x == p**v * u`` and ``p`` not dividing ``u``."""
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def rational_valuation(q: Fraction, p: int) -> int | float:
    if q == 0:
        return INF
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"u/v"`` (``v`` optional, sign on ``u``)."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        d = int(den)
        if d <= 0 or den.strip().startswith(("+", "-")):
            raise PAdicError(f"denominator must be a positive integer: {text!r}")
        return Fraction(int(num), d)
    except ValueError as exc:
        if isinstance(exc, PAdicError):
            raise
        raise PAdicError(f"not a rational number: {text!r}") from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_p_integral(q: Fraction, p: int) -> bool:
    return Fraction(q).denominator % p != 0


def require_p_integral(q: Fraction, p: int, what: str = "value") -> Fraction:
    q = as_fraction(q)
    if q.denominator % p == 0:
        raise PAdicError(f"{what} {format_rational(q)} is not a {p}-adic integer")
    return q


def residue(q: Fraction, modulus: int) -> int:
    """Least non-negative residue of a rational whose denominator is prime to the modulus."""
    q = as_fraction(q)
    return q.numerator * pow(q.denominator, -1, modulus) % modulus


@dataclass(frozen=True)
class PAdicNumber:
    """``p**valuation * unit`` with ``unit`` known modulo ``p**prec``.

    ``valuation == inf`` marks the exact zero.  Multiplication and division keep
    the smaller relative precision; addition keeps the smaller absolute
    precision and raises :class:`PrecisionError` rather than returning a
    zero that is only known to vanish modulo some power of ``p``.
    """

    prime: int
    valuation: int | float
    unit: int
    prec: int

    def __post_init__(self):
        if self.prime < 2:
            raise PAdicError("prime must be >= 2")
        if self.valuation == INF:
            object.__setattr__(self, "unit", 0)
            return
        if self.prec < 1:
            raise PrecisionError("relative precision must be positive")
        u = self.unit % self.prime**self.prec
        if u % self.prime == 0:
            raise PAdicError("unit part must be prime to p")
        object.__setattr__(self, "unit", u)

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> PAdicNumber:
        return cls(p, INF, 0, 1)

    @classmethod
    def from_rational(cls, q, p: int, prec: int) -> PAdicNumber:
        """Embed any nonzero rational (negative valuation allowed)."""
        q = as_fraction(q)
        if q == 0:
            return cls.zero(p)
        vn, un = split_unit(q.numerator, p)
        vd, ud = split_unit(q.denominator, p)
        mod = p**prec
        return cls(p, vn - vd, un * pow(ud, -1, mod) % mod, prec)

    # queries ----------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def absolute_prec(self) -> int | float:
        return INF if self.is_zero else self.valuation + self.prec

    def residue(self, m: int) -> int:
        """Least non-negative representative modulo ``p**m``."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise PAdicError("number is not a p-adic integer")
        if self.absolute_prec < m:
            raise PrecisionError(
                f"known only modulo {self.prime}^{self.absolute_prec}, asked for {self.prime}^{m}"
            )
        mod = self.prime**m
        if self.valuation >= m:
            return 0
        return self.unit * self.prime**self.valuation % mod

    def __int__(self) -> int:
        return self.residue(self.absolute_prec) if not self.is_zero else 0

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other, prec_hint: int | float) -> PAdicNumber:
        if isinstance(other, PAdicNumber):
            if other.prime != self.prime:
                raise PAdicError("mixing different primes")
            return other
        q = as_fraction(other)
        if q == 0:
            return PAdicNumber.zero(self.prime)
        v = rational_valuation(q, self.prime)
        # exact rationals are converted with enough digits not to be the bottleneck
        prec = self.prec if prec_hint == INF else max(int(prec_hint - v), self.prec, 1)
        return PAdicNumber.from_rational(q, self.prime, prec)

    def __neg__(self) -> PAdicNumber:
        if self.is_zero:
            return self
        return PAdicNumber(self.prime, self.valuation, -self.unit, self.prec)

    def __mul__(self, other) -> PAdicNumber:
        o = self._coerce(other, self.absolute_prec)
        if self.is_zero or o.is_zero:
            return PAdicNumber.zero(self.prime)
        prec = min(self.prec, o.prec)
        return PAdicNumber(self.prime, self.valuation + o.valuation, self.unit * o.unit, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> PAdicNumber:
        o = self._coerce(other, self.absolute_prec)
        if o.is_zero:
            raise ZeroDivisionError("p-adic division by zero")
        if self.is_zero:
            return self
        prec = min(self.prec, o.prec)
        mod = self.prime**prec
        return PAdicNumber(
            self.prime, self.valuation - o.valuation, self.unit * pow(o.unit, -1, mod), prec
        )

    def __rtruediv__(self, other) -> PAdicNumber:
        return self._coerce(other, self.absolute_prec) / self

    def __add__(self, other) -> PAdicNumber:
        o = self._coerce(other, self.absolute_prec)
        if o.is_zero:
            return self
        if self.is_zero:
            return o
        p = self.prime
        absprec = min(self.absolute_prec, o.absolute_prec)
        vmin = min(self.valuation, o.valuation)
        span = absprec - vmin
        s = (self.unit * p ** (self.valuation - vmin) + o.unit * p ** (o.valuation - vmin)) % p**span
        if s == 0:
            raise PrecisionError("sum cancels to zero within the known precision")
        dv, u = split_unit(s, p)
        return PAdicNumber(p, vmin + dv, u, span - dv)

    __radd__ = __add__

    def __sub__(self, other) -> PAdicNumber:
        return self + (-self._coerce(other, self.absolute_prec))

    def __rsub__(self, other) -> PAdicNumber:
        return self._coerce(other, self.absolute_prec) - self

    def __pow__(self, k: int) -> PAdicNumber:
        if k < 0:
            return 1 / (self**-k)
        if self.is_zero:
            return self if k else PAdicNumber.from_rational(1, self.prime, self.prec)
        return PAdicNumber(self.prime, self.valuation * k, pow(self.unit, k, self.prime**self.prec), self.prec)

    def agrees_with(self, q, digits: int | None = None) -> bool:
        """True when the rational ``q`` matches this number to its absolute precision."""
        q = as_fraction(q)
        if self.is_zero:
            return q == 0
        if q == 0:
            return False
        if rational_valuation(q, self.prime) != self.valuation:
            return False
        other = PAdicNumber.from_rational(q, self.prime, self.prec)
        d = self.prec if digits is None else min(digits, self.prec)
        return (other.unit - self.unit) % self.prime**d == 0

    def __repr__(self) -> str:
        if self.is_zero:
            return f"PAdicNumber(p={self.prime}, 0)"
        return (
            f"PAdicNumber(p={self.prime}, v={self.valuation}, "
            f"unit={self.unit} mod {self.prime}^{self.prec})"
        )


def reduce_rational(q, p: int, prec: int) -> PAdicNumber:
    """Embed a rational with denominator prime to ``p``."""
    q = as_fraction(q)
    if q.denominator % p == 0:
        raise PAdicError(f"denominator of {format_rational(q)} is divisible by {p}")
    return PAdicNumber.from_rational(q, p, prec)


# digits and Dwork primes --------------------------------------------------


def padic_digit(a, p: int, index: int) -> int:
    """Digit ``[a]_index`` of the expansion ``a = -sum [a]_n p^n``."""
    a = require_p_integral(a, p, "a")
    mod = p ** (index + 1)
    return residue(-a, mod) // p**index


def dwork_prime(a, p: int) -> Fraction:
    """``(a + l)/p`` for the unique ``l`` in ``0..p-1`` with ``p | a + l``."""
    a = require_p_integral(a, p, "a")
    return (a + residue(-a, p)) / p


@dataclass(frozen=True)
class DworkOrbit:
    base: Fraction
    orbit: tuple[Fraction, ...]
    preperiod: int
    period: int

    def __getitem__(self, i: int) -> Fraction:
        if i < self.preperiod:
            return self.orbit[i]
        return self.orbit[self.preperiod + (i - self.preperiod) % self.period]

    @property
    def distinct(self) -> tuple[Fraction, ...]:
        return self.orbit


def multiplicative_order(p: int, n: int) -> int:
    """Order of ``p`` modulo ``n`` (``n`` prime to ``p``); 1 for ``n == 1``."""
    if n == 1:
        return 1
    k, x = 1, p % n
    while x != 1:
        x = x * p % n
        k += 1
    return k


def default_orbit_budget(a: Fraction, p: int) -> int:
    return 4 * multiplicative_order(p, Fraction(a).denominator) + 8


def dwork_orbit(a, p: int, max_steps: int | None = None) -> DworkOrbit:
    """Iterate the Dwork prime until a value repeats."""
    a = require_p_integral(a, p, "a")
    if max_steps is None:
        max_steps = default_orbit_budget(a, p)
    seen: dict[Fraction, int] = {}
    seq: list[Fraction] = []
    x = a
    for step in range(max_steps + 1):
        if x in seen:
            start = seen[x]
            return DworkOrbit(a, tuple(seq), start, step - start)
        seen[x] = step
        seq.append(x)
        x = dwork_prime(x, p)
    raise BudgetExceeded(f"no cycle in the Dwork orbit of {format_rational(a)} within {max_steps} steps")


# Pochhammer products -----------------------------------------------------


def _linear_factors(a: Fraction, n: int):
    """Integer numerators of a, a+1, ..., a+n-1 over the common denominator."""
    u, d = a.numerator, a.denominator
    return (u + k * d for k in range(n))


def pochhammer(a, n: int, p: int, prec: int, exact: bool = False):
    """Rising factorial ``(a)_n``; ``exact=True`` returns the Fraction."""
    a = require_p_integral(a, p, "a")
    if exact:
        out = Fraction(1)
        for k in range(n):
            out *= a + k
        return out
    mod = p**prec
    v, u = 0, 1
    for x in _linear_factors(a, n):
        if x == 0:
            return PAdicNumber.zero(p)
        dv, xu = split_unit(x, p)
        v += dv
        u = u * xu % mod
    u = u * pow(pow(a.denominator, n, mod), -1, mod) % mod
    return PAdicNumber(p, v, u, prec)


def braces_pochhammer(a, n: int, p: int, prec: int, exact: bool = False):
    """Product of the factors ``a + i - 1`` (``1 <= i <= n``) that are p-adic units."""
    a = require_p_integral(a, p, "a")
    if exact:
        out = Fraction(1)
        for k in range(n):
            if (a + k).numerator % p:
                out *= a + k
        return out
    mod = p**prec
    u, count = 1, 0
    for x in _linear_factors(a, n):
        if x % p:
            u = u * x % mod
            count += 1
    u = u * pow(pow(a.denominator, count, mod), -1, mod) % mod
    return PAdicNumber(p, 0, u, prec)


# digamma and logarithm ---------------------------------------------------


def psi_tilde(z, p: int, prec: int) -> int:
    """``sum 1/k`` over ``1 <= k < n``, ``p`` not dividing ``k``, where ``n = z mod p^prec``.

    For ``p = 2`` only ``prec - 1`` digits of the result are meaningful.
    """
    z = require_p_integral(z, p, "z")
    mod = p**prec
    n = residue(z, mod) or mod
    # batch inversion: one modular inverse for the whole range
    units = [k for k in range(1, n) if k % p]
    if not units:
        return 0
    prefix = [1] * (len(units) + 1)
    for idx, k in enumerate(units):
        prefix[idx + 1] = prefix[idx] * k % mod
    inv = pow(prefix[-1], -1, mod)
    total = 0
    for idx in range(len(units) - 1, -1, -1):
        total += inv * prefix[idx]
        inv = inv * units[idx] % mod
    return total % mod


def iwasawa_log_oneunit(c, p: int, prec: int) -> int:
    """``log(c)`` modulo ``p**prec`` for a rational 1-unit ``c``."""
    c = as_fraction(c)
    if c.denominator % p == 0 or rational_valuation(c - 1, p) < 1:
        raise PAdicError(f"{format_rational(c)} is not a {p}-adic 1-unit")
    x = 1 - c
    if x == 0:
        return 0
    v = rational_valuation(x, p)
    total = Fraction(0)
    n = 1
    # n*v - floor(log_p n) is nondecreasing in n, so the first n past the
    # bound ends the series
    while n * v - _floor_log(n, p) < prec:
        total -= x**n / n
        n += 1
    return residue(total, p**prec)


def _floor_log(n: int, p: int) -> int:
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k
