"""Formal lambda-adic series for the Frobenius structure on hypergeometric curves.

Everything here lives in ``Q[[lambda]]`` truncated at a fixed order; p-adic
reduction happens only on output.  The one non-rational input, the constant
term of ``G`` (a sum of two p-adic digamma values), enters as its integer
residue modulo ``p**prec``, so any series that depends on it is meaningful
modulo ``p**prec`` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hyperseries import HGParams, InvariantViolation, _is_prime, special_value
from .padic import PAdicError, PAdicNumber, psi_tilde, rational_valuation, reduce_rational


class LambdaSeries:
    """Truncated power series ``sum c_n lambda^n``, exact for ``n < order``."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Sequence, p: int):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.p = p

    @classmethod
    def constant(cls, value, order: int, p: int) -> LambdaSeries:
        return cls([value] + [0] * (order - 1), p)

    @classmethod
    def monomial(cls, power: int, order: int, p: int, scale=1) -> LambdaSeries:
        return cls([scale if k == power else 0 for k in range(order)], p)

    @classmethod
    def geometric(cls, order: int, p: int) -> LambdaSeries:
        """``1 / (1 - lambda)``."""
        return cls([1] * order, p)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LambdaSeries) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        head = " + ".join(f"({c})*L^{k}" for k, c in enumerate(self.coeffs[:6]) if c)
        return f"LambdaSeries({head or '0'} + O(L^{self.order}), p={self.p})"

    def truncate(self, order: int) -> LambdaSeries:
        return LambdaSeries(self.coeffs[:order], self.p)

    def _lift(self, other) -> LambdaSeries:
        if isinstance(other, LambdaSeries):
            if other.p != self.p:
                raise ValueError("series over different primes")
            return other
        return LambdaSeries.constant(other, self.order, self.p)

    def __add__(self, other) -> LambdaSeries:
        other = self._lift(other)
        n = min(self.order, other.order)
        return LambdaSeries([x + y for x, y in zip(self.coeffs[:n], other.coeffs[:n])], self.p)

    __radd__ = __add__

    def __neg__(self) -> LambdaSeries:
        return LambdaSeries([-x for x in self.coeffs], self.p)

    def __sub__(self, other) -> LambdaSeries:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> LambdaSeries:
        return self._lift(other) - self

    def __mul__(self, other) -> LambdaSeries:
        if not isinstance(other, LambdaSeries):
            q = Fraction(other)
            return LambdaSeries([q * x for x in self.coeffs], self.p)
        other = self._lift(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            out.append(sum((a[i] * b[k - i] for i in range(k + 1) if a[i] and b[k - i]), Fraction(0)))
        return LambdaSeries(out, self.p)

    __rmul__ = __mul__

    def reciprocal(self) -> LambdaSeries:
        """``1 / self``; the constant term must be a p-adic unit."""
        c0 = self.coeffs[0]
        if c0 == 0 or rational_valuation(c0, self.p) != 0:
            raise PAdicError("reciprocal needs a unit constant term")
        inv0 = 1 / c0
        out = [inv0]
        a = self.coeffs
        for k in range(1, self.order):
            out.append(-inv0 * sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0)))
        return LambdaSeries(out, self.p)

    def derivative(self) -> LambdaSeries:
        return LambdaSeries([k * c for k, c in enumerate(self.coeffs)][1:], self.p)

    def integrate(self, constant=0) -> LambdaSeries:
        """Antiderivative with the given constant term (one more exact coefficient)."""
        return LambdaSeries([Fraction(constant)] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.p)

    def frobenius(self) -> LambdaSeries:
        """Substitute ``lambda -> lambda**p``; exactness extends to ``p * order``."""
        p = self.p
        out = [Fraction(0)] * (p * (self.order - 1) + 1)
        for k, c in enumerate(self.coeffs):
            out[p * k] = c
        return LambdaSeries(out, p)

    def shift_up(self, k: int = 1) -> LambdaSeries:
        """Multiply by ``lambda**k``."""
        return LambdaSeries([0] * k + list(self.coeffs), self.p)

    def shift_down(self) -> LambdaSeries:
        """Divide by ``lambda``; the constant term must vanish."""
        if self.coeffs and self.coeffs[0] != 0:
            raise InvariantViolation(f"division by lambda with nonzero constant term {self.coeffs[0]}")
        return LambdaSeries(self.coeffs[1:], self.p)

    def padic_coeffs(self, prec: int) -> list[PAdicNumber]:
        return [reduce_rational(c, self.p, prec) for c in self.coeffs]

    def valuations(self) -> list[int | float]:
        return [rational_valuation(c, self.p) for c in self.coeffs]


@dataclass(frozen=True)
class CurveEigenData:
    """Eigen-index data ``(N, i, p)`` with the partner index ``j`` and the sign."""

    N: int
    i: int
    p: int

    def __post_init__(self):
        if self.N < 2:
            raise PAdicError("N must be at least 2")
        if not 1 <= self.i <= self.N - 1:
            raise PAdicError(f"i must lie in 1..{self.N - 1}")
        if not _is_prime(self.p) or self.p <= self.N:
            raise PAdicError(f"p must be a prime larger than N={self.N}")

    @property
    def j(self) -> int:
        return self.i * pow(self.p, -1, self.N) % self.N

    @property
    def sign(self) -> int:
        return -1 if ((self.p * self.j - self.i) // self.N) % 2 else 1

    @property
    def a_i(self) -> Fraction:
        return 1 - Fraction(self.i, self.N)

    @property
    def a_j(self) -> Fraction:
        return 1 - Fraction(self.j, self.N)


def hg_series_lambda(a, M: int, p: int) -> LambdaSeries:
    """``F_{a,1-a}(lambda) = sum (a)_n (1-a)_n / n!^2 lambda^n`` to order ``M``."""
    a = Fraction(a)
    out = [Fraction(1)]
    for n in range(1, M):
        out.append(out[-1] * (a + n - 1) * (n - a) / (n * n))
    return LambdaSeries(out, p)


def hg_ode_residual(a, M: int, p: int) -> LambdaSeries:
    """``L(1-L) F'' + (1-2L) F' - a(1-a) F`` for ``F = F_{a,1-a}``; exact to order ``M - 2``."""
    a = Fraction(a)
    F = hg_series_lambda(a, M, p)
    d1 = F.derivative()
    d2 = d1.derivative()
    lam = LambdaSeries.monomial(1, M, p)
    one_minus = 1 - lam
    res = (lam * one_minus).truncate(M - 2) * d2 + (1 - 2 * lam).truncate(M - 2) * d1.truncate(M - 2)
    return res - F.truncate(M - 2) * (a * (1 - a))


def _normaliser(a: Fraction, M: int, p: int) -> LambdaSeries:
    """``1 / ((1 - lambda) F_{a,1-a}(lambda)^2)``."""
    F = hg_series_lambda(a, M, p)
    return (F * F * (1 - LambdaSeries.monomial(1, M, p))).reciprocal()


def g_tau_bracket(data: CurveEigenData, M: int) -> LambdaSeries:
    """The difference whose quotient by ``lambda`` is ``dG/dlambda``."""
    p = data.p
    return _normaliser(data.a_i, M, p) - _normaliser(data.a_j, M, p).frobenius().truncate(M)


def g_tau_constant(data: CurveEigenData, prec: int) -> int:
    p = data.p
    return (psi_tilde(data.a_i, p, prec) + psi_tilde(1 - data.a_i, p, prec)) % p**prec


def solve_G_tau(data: CurveEigenData, M: int, prec: int) -> LambdaSeries:
    """``G`` to order ``M`` with ``G(0)`` replaced by its residue mod ``p**prec``."""
    bracket = g_tau_bracket(data, M)
    if bracket[0] != 0:
        raise InvariantViolation(f"bracket constant term is {bracket[0]}, expected 0")
    return bracket.shift_down().integrate(g_tau_constant(data, prec))


def _frobenius_term(data: CurveEigenData, M: int) -> LambdaSeries:
    """``sign * F_{a_j}(lambda^p) / (1 - lambda^p) * lambda^(p-1)``.

    The factor ``p^{-1}`` in front cancels the ``p`` in ``d(lambda^p)/d lambda``.
    """
    p = data.p
    Fj = hg_series_lambda(data.a_j, M, p)
    inner = (Fj * LambdaSeries.geometric(M, p)).frobenius().shift_up(p - 1).truncate(M)
    return inner * data.sign


def solve_E_tau(
    data: CurveEigenData, M: int, prec: int, G: LambdaSeries | None = None
) -> tuple[LambdaSeries, LambdaSeries]:
    """``(E1, E2)`` to order ``M`` with ``E1(0) = 0`` and the convention ``E2(0) = 0``."""
    p = data.p
    if M < p:
        raise PAdicError(f"truncation order {M} must be at least p={p}")
    if G is None:
        G = solve_G_tau(data, M, prec)
    Fi = hg_series_lambda(data.a_i, M, p)
    frob = _frobenius_term(data, M)
    dE1 = Fi * LambdaSeries.geometric(M, p) - frob
    E1 = dE1.integrate(0).truncate(M)
    norm = _normaliser(data.a_i, M, p)
    # E1 / (lambda (1-lambda) F^2) has no pole exactly when E1(0) = 0
    pole = E1[0] * norm[0]
    if pole != 0:
        raise InvariantViolation(f"dE2/dlambda has residue {pole}")
    dE2 = E1.shift_down() * norm.truncate(M - 1) - (frob * G).truncate(M - 1)
    E2 = dE2.integrate(0)
    return E1, E2


def epsilon_from_E(
    data: CurveEigenData, E1: LambdaSeries, E2: LambdaSeries, M: int | None = None
) -> tuple[LambdaSeries, LambdaSeries]:
    """``eps1 = E1/F + (L - L^2) F' E2`` and ``eps2 = -(1 - a_i)(L - L^2) F E2``."""
    p = data.p
    M = min(E1.order, E2.order) if M is None else M
    F = hg_series_lambda(data.a_i, M + 1, p)
    lam = LambdaSeries.monomial(1, M, p)
    w = lam - lam * lam
    E1, E2 = E1.truncate(M), E2.truncate(M)
    eps1 = E1 * F.truncate(M).reciprocal() + w * F.derivative() * E2
    eps2 = w * F.truncate(M) * E2 * (-(1 - data.a_i))
    return eps1, eps2


@dataclass(frozen=True)
class EndpointReport:
    value: int
    modulus: int
    eps1_at_zero: Fraction
    eps2_at_zero: Fraction

    @property
    def ok(self) -> bool:
        return self.value == 0 and self.eps1_at_zero == 0 and self.eps2_at_zero == 0


def endpoint_params(data: CurveEigenData) -> HGParams:
    return HGParams((data.a_i, 1 - data.a_i), (Fraction(1),), data.p)


def endpoint_vanishing_crosscheck(data: CurveEigenData, m: int = 4, M: int | None = None) -> EndpointReport:
    """Special value of ``(a_i, 1 - a_i; 1)`` at ``t = 1`` next to ``eps1(0)`` and ``eps2(0)``."""
    if (data.p - 1) % data.N:
        raise PAdicError(f"N={data.N} must divide p-1={data.p - 1}")
    M = 3 * data.p if M is None else M
    sv = special_value(endpoint_params(data), 1, m)
    E1, E2 = solve_E_tau(data, M, m)
    eps1, eps2 = epsilon_from_E(data, E1, E2)
    return EndpointReport(sv.value, sv.modulus, eps1[0], eps2[0])
