"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SpecError, ValidationError


class TruncationWarning(UserWarning):
    """Operands with different truncation orders were combined."""


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(x)


@dataclass(frozen=True)
class RationalSeries:
    """c_0 + c_1 t + ... + c_N t^N  (mod t^(N+1))."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Iterable, N: int | None = None) -> "RationalSeries":
        cs = [_frac(c) for c in coeffs]
        if N is not None:
            cs = (cs + [Fraction(0)] * (N + 1))[:N + 1]
        return cls(tuple(cs))

    @classmethod
    def one(cls, N: int) -> "RationalSeries":
        return cls.of([1], N)

    @classmethod
    def monomial(cls, coeff, power: int, N: int) -> "RationalSeries":
        cs = [Fraction(0)] * (N + 1)
        if power <= N:
            cs[power] = _frac(coeff)
        return cls(tuple(cs))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"RationalSeries([{', '.join(str(c) for c in self.coeffs)}])"

    def truncate(self, N: int) -> "RationalSeries":
        return RationalSeries.of(self.coeffs, N)

    def _align(self, other: "RationalSeries") -> tuple[int, "RationalSeries"]:
        if isinstance(other, (int, Fraction)):
            other = RationalSeries.of([other], self.N)
        if other.N != self.N:
            warnings.warn(f"combining series truncated at {self.N} and {other.N}; using {min(self.N, other.N)}",
                          TruncationWarning, stacklevel=3)
        return min(self.N, other.N), other

    def __add__(self, other):
        N, other = self._align(other)
        return RationalSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(N + 1)))

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalSeries) else -Fraction(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalSeries(tuple(c * other for c in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e):
        return pow_rational(self, e)

    def inverse(self) -> "RationalSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / c0]
        for n in range(1, self.N + 1):
            s = sum(self.coeffs[j] * out[n - j] for j in range(1, n + 1))
            out.append(-s / c0)
        return RationalSeries(tuple(out))

    def to_json(self) -> dict:
        return {"N": self.N, "coefficients": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "RationalSeries":
        coeffs = data["coefficients"] if isinstance(data, dict) else data
        try:
            series = cls.of(Fraction(c) for c in coeffs)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise SpecError(f"bad series coefficient: {exc}") from None
        if isinstance(data, dict) and "N" in data and int(data["N"]) != series.N:
            raise SpecError("N does not match the number of coefficients")
        return series


def mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """Cauchy product truncated at the smaller order."""
    N, b = a._align(b)
    ac, bc = a.coeffs, b.coeffs
    return RationalSeries(tuple(sum(ac[i] * bc[n - i] for i in range(n + 1)) for n in range(N + 1)))


def pow_int(a: RationalSeries, e: int) -> RationalSeries:
    """Integer power by repeated squaring (negative powers go through the inverse)."""
    if e < 0:
        a, e = a.inverse(), -e
    out, base = RationalSeries.one(a.N), a
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def pow_rational(a: RationalSeries, e) -> RationalSeries:
    """(1 + u)^e = sum_j binom(e, j) u^j with exact falling factorials; needs c_0 = 1."""
    e = _frac(e)
    if a.coeffs[0] != 1:
        raise ValidationError("rational powers need constant term exactly 1")
    N = a.N
    u = RationalSeries((Fraction(0),) + a.coeffs[1:])
    out = [Fraction(0)] * (N + 1)
    out[0] = Fraction(1)
    term = RationalSeries.one(N)
    binom = Fraction(1)
    for j in range(1, N + 1):
        binom = binom * (e - (j - 1)) / j
        if binom == 0:
            break
        term = mul(term, u)
        for i in range(j, N + 1):       # u^j starts at t^j
            out[i] += binom * term.coeffs[i]
    return RationalSeries(tuple(out))


def one_minus_t_power(power: int, exponent, N: int) -> RationalSeries:
    """(1 - t^power)^exponent, truncated at N."""
    return pow_rational(RationalSeries.one(N) - RationalSeries.monomial(1, power, N), exponent)


def bounded_product_tuples(k: int, N: int) -> Iterable[tuple[int, ...]]:
    """All (r_1..r_k) of positive integers with r_1 * ... * r_k <= N (depth first)."""
    def rec(prefix: list[int], prod: int):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        r = 1
        while prod * r <= N:
            prefix.append(r)
            yield from rec(prefix, prod * r)
            prefix.pop()
            r += 1

    if N >= 1:
        yield from rec([], 1)


def tamanoi_product(k: int, N: int, max_k: int = 4) -> RationalSeries:
    """prod over r_1..r_k >= 1 of (1 - t^(r_1...r_k))^(r_2 r_3^2 ... r_k^(k-1)), mod t^(N+1).

    For k = 0 the single empty tuple gives 1 - t.
    """
    if k < 0 or k > max_k:
        raise ValidationError(f"k must lie in 0..{max_k}")
    exponents: dict[int, int] = {}
    for rs in bounded_product_tuples(k, N):
        p, e = 1, 1
        for i, r in enumerate(rs):
            p *= r
            e *= r ** i
        exponents[p] = exponents.get(p, 0) + e
    out = RationalSeries.one(N)
    for p in sorted(exponents):
        out = mul(out, pow_int(one_minus_t_power(p, 1, N), exponents[p]))
    return out


def first_difference(a: Sequence, b: Sequence) -> int | None:
    """Index of the first differing coefficient, or None if equal up to min length."""
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None
