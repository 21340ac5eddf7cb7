"""Formal power series truncated at a fixed order, with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


def _exact(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, (int, Rational)):
        return c
    raise TypeError(f"series coefficients must be exact rationals, got {type(c).__name__}")


class TruncatedSeries:
    """``c_0 + c_1 x + ... + c_N x^N`` with arithmetic carried out mod ``x^(N+1)``.

    Coefficients are ints or Fractions; Fractions with denominator 1 are kept
    as ints so integer-valued computations stay cheap.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_exact(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be >= 0")
            cs = (cs + [0] * (order + 1))[:order + 1]
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        self.coeffs = cs

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * (order + 1))

    @classmethod
    def monomial(cls, coeff, degree: int, order: int) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        if degree <= order:
            cs[degree] = coeff
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient {n} outside truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs!r})"

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        return next((i for i, c in enumerate(self.coeffs) if c), None)

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise ValueError(f"mixing truncation orders {self.order} and {other.order}")
            return other
        return TruncatedSeries.monomial(_exact(other), 0, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            k = _exact(other)
            return TruncatedSeries([k * a for a in self.coeffs])
        o = self._coerce(other)
        n = self.order
        a, b = self.coeffs, o.coeffs
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def shift(self, d: int) -> "TruncatedSeries":
        """Multiply by ``x^d`` (d >= 0), dropping terms past the order."""
        if d < 0:
            raise ValueError("shift degree must be nonnegative")
        n = self.order
        return TruncatedSeries(([0] * d + self.coeffs)[:n + 1]) if d <= n else TruncatedSeries.zero(n)

    def reciprocal(self) -> "TruncatedSeries":
        c = self.coeffs
        if c[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        c0 = c[0]
        out = [Fraction(1, 1) / c0]
        for n in range(1, len(c)):
            s = sum(c[i] * out[n - i] for i in range(1, n + 1))
            out.append(-Fraction(s) / c0)
        return TruncatedSeries(out)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        k = _exact(other)
        return TruncatedSeries([Fraction(a) / k for a in self.coeffs])

    def stretch(self, J: int, order: int | None = None) -> "TruncatedSeries":
        """Substitute ``x -> x^J``; the result is truncated at ``order`` (default J * N)."""
        if J < 1:
            raise ValueError("stretch factor must be >= 1")
        if order is None:
            order = J * self.order
        out = [0] * (order + 1)
        for i, c in enumerate(self.coeffs):
            if i * J > order:
                break
            out[i * J] = c
        return TruncatedSeries(out)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, order)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)
                   for c in self.coeffs)


def series_sum(items: Sequence[TruncatedSeries], order: int) -> TruncatedSeries:
    out = [0] * (order + 1)
    for s in items:
        for i, c in enumerate(s.coeffs):
            out[i] += c
    return TruncatedSeries(out)
