"""Truncated power series in z with cyclotomic coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclo import CycloElem


class TruncSeries:
    """Coefficients of z^0 .. z^order; everything beyond ``order`` is unknown."""

    __slots__ = ("base", "terms", "order")

    def __init__(self, base: int, terms: Sequence, order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        ts = [t if isinstance(t, CycloElem) else CycloElem.from_rational(base, t) for t in terms]
        for t in ts:
            if t.order != base:
                raise ValueError(f"coefficient of order {t.order} in a series over order {base}")
        ts = ts[: order + 1]
        ts += [CycloElem.zero(base)] * (order + 1 - len(ts))
        self.base = base
        self.terms = tuple(ts)
        self.order = order

    @classmethod
    def one(cls, base: int, order: int) -> TruncSeries:
        return cls(base, [CycloElem.one(base)], order)

    def __getitem__(self, i: int) -> CycloElem:
        return self.terms[i]

    def __len__(self):
        return len(self.terms)

    def _check(self, other: TruncSeries):
        if other.base != self.base:
            raise ValueError(f"base mismatch: {self.base} vs {other.base}")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        order = min(self.order, other.order)
        return TruncSeries(self.base, [a + b for a, b in zip(self.terms, other.terms)][: order + 1], order)

    def __neg__(self):
        return TruncSeries(self.base, [-a for a in self.terms], self.order)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        return self + (-other)

    def __mul__(self, other) -> TruncSeries:
        if isinstance(other, (int, Fraction, CycloElem)):
            return TruncSeries(self.base, [a * other for a in self.terms], self.order)
        self._check(other)
        order = min(self.order, other.order)
        zero = CycloElem.zero(self.base)
        out = [zero] * (order + 1)
        nz = [(j, b) for j, b in enumerate(other.terms[: order + 1]) if not b.is_zero()]
        for i, a in enumerate(self.terms[: order + 1]):
            if a.is_zero():
                continue
            for j, b in nz:
                if i + j > order:
                    break
                out[i + j] = out[i + j] + a * b
        return TruncSeries(self.base, out, order)

    __rmul__ = __mul__

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all known terms vanish."""
        for i, t in enumerate(self.terms):
            if not t.is_zero():
                return i
        return None

    def shift_down(self, m: int) -> TruncSeries:
        """Divide by z^m; the caller guarantees the first m terms are zero."""
        if any(not t.is_zero() for t in self.terms[:m]):
            raise ValueError(f"series not divisible by z^{m}")
        return TruncSeries(self.base, self.terms[m:], self.order - m)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.base == other.base and self.terms[: order + 1] == other.terms[: order + 1]

    def __repr__(self):
        return f"TruncSeries(base={self.base}, order={self.order}, terms={list(self.terms)})"


def series_inv(u: TruncSeries) -> TruncSeries:
    """Multiplicative inverse through the truncation order."""
    c0 = u.terms[0]
    if c0.is_zero():
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = c0.inverse()
    out = [inv0]
    for n in range(1, u.order + 1):
        acc = CycloElem.zero(u.base)
        for j in range(1, n + 1):
            uj = u.terms[j]
            if not uj.is_zero():
                acc = acc + uj * out[n - j]
        out.append(-(acc * inv0))
    return TruncSeries(u.base, out, u.order)
