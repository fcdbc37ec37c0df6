"""Exact arithmetic in the cyclotomic field Q(zeta_k), zeta_k = exp(2*pi*i/k).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(k)-1), i.e.
reduced modulo the k-th cyclotomic polynomial, so equal field elements have
equal coordinates.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd

import gmpy2

from .poly import RatPoly, cyclotomic_poly
from .rational import format_rational, parse_rational


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _reduction_table(k: int) -> tuple:
    """Coordinates of x^j mod Phi_k for 0 <= j < 2*phi(k) - 1."""
    phi_k = cyclotomic_poly(k)
    d = phi_k.degree
    rows = []
    for j in range(max(2 * d - 1, 1)):
        r = RatPoly.monomial(j) % phi_k
        rows.append(tuple(r.coeff(i) for i in range(d)))
    return tuple(rows)


class CycloElem:
    __slots__ = ("order", "coords", "_hash")

    def __init__(self, order: int, coords):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        cs = tuple(Fraction(c) for c in coords)
        d = euler_phi(order)
        if len(cs) > d:
            cs = _reduce(order, cs)
        elif len(cs) < d:
            cs = cs + (Fraction(0),) * (d - len(cs))
        self.order = order
        self.coords = cs
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rational(cls, order: int, q) -> CycloElem:
        return cls(order, (q,))

    @classmethod
    def zero(cls, order: int) -> CycloElem:
        return cls(order, ())

    @classmethod
    def one(cls, order: int) -> CycloElem:
        return cls(order, (1,))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> CycloElem:
        """zeta_order ** power, reduced."""
        power %= order
        return cls(order, _reduce(order, (0,) * power + (1,)))

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coords[0]

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> CycloElem:
        if isinstance(other, CycloElem):
            if other.order != self.order:
                raise ValueError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElem(self.order, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.order, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElem(self.order, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.order, [a * other for a in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coords, other.coords
        raw = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return CycloElem(self.order, _reduce(self.order, raw))

    __rmul__ = __mul__

    def inverse(self) -> CycloElem:
        """Inverse via the extended Euclidean algorithm against Phi_k."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if len(self.coords) == 1:
            return CycloElem(self.order, (1 / self.coords[0],))
        # Invariant: s_i * a = r_i (mod Phi_k)
        r0, r1 = cyclotomic_poly(self.order), RatPoly(self.coords)
        s0, s1 = RatPoly(), RatPoly((1,))
        while r1.degree > 0:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # Phi_k irreducible, so the last nonzero remainder is a constant.
        inv = s1 * (1 / r1.lead)
        return CycloElem(self.order, (inv % cyclotomic_poly(self.order)).coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycloElem(self.order, [a / other for a in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = CycloElem.one(self.order), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, t: int) -> CycloElem:
        """Image under the automorphism zeta -> zeta**t (gcd(t, order) = 1)."""
        if gcd(t, self.order) != 1:
            raise ValueError(f"{t} is not a unit mod {self.order}")
        raw = [Fraction(0)] * self.order
        for j, c in enumerate(self.coords):
            raw[(j * t) % self.order] += c
        return CycloElem(self.order, _reduce(self.order, raw))

    def conjugate(self) -> CycloElem:
        return self.galois(-1)

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.order == other.order and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coords))
        return self._hash

    def __repr__(self):
        return f"CycloElem({self.order}, [{', '.join(format_rational(c) for c in self.coords)}])"

    # -- text form ----------------------------------------------------------
    def to_json(self) -> dict:
        return {"order": self.order, "coords": [format_rational(c) for c in self.coords]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj) -> CycloElem:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["order"]), [parse_rational(c) for c in obj["coords"]])


def _reduce(k: int, raw) -> tuple:
    """Reduce a coefficient vector (powers of x) modulo Phi_k."""
    d = euler_phi(k)
    raw = list(raw)
    table = _reduction_table(k)
    if len(raw) > len(table):
        # long vectors arrive only from galois(); fold x^k = 1 first
        folded = [Fraction(0)] * k
        for j, c in enumerate(raw):
            folded[j % k] += c
        raw = folded
        if len(raw) > len(table):
            p = RatPoly(raw) % cyclotomic_poly(k)
            return tuple(p.coeff(i) for i in range(d))
    out = list(raw[:d]) + [Fraction(0)] * max(0, d - len(raw))
    for j in range(d, len(raw)):
        c = raw[j]
        if c:
            for i, t in enumerate(table[j]):
                if t:
                    out[i] += c * t
    return tuple(Fraction(c) for c in out)


def cyclo_mul(a: CycloElem, b: CycloElem) -> CycloElem:
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")
    return a * b


def cyclo_inv(a: CycloElem) -> CycloElem:
    return a.inverse()


def root_of_unity(k: int, j: int, precision_bits: int):
    """exp(2*pi*i*j/k) as an mpc; exact on the four axis points."""
    j %= k
    if (4 * j) % k == 0:
        quarter = (4 * j) // k
        re, im = ((1, 0), (0, 1), (-1, 0), (0, -1))[quarter]
        return gmpy2.mpc(re, im, precision=precision_bits)
    with gmpy2.context(precision=precision_bits + 16):
        theta = 2 * gmpy2.const_pi() * j / k
        c, s = gmpy2.cos(theta), gmpy2.sin(theta)
    return gmpy2.mpc(c, s, precision=precision_bits)


def embed_complex(a, precision_bits: int = 128):
    """Numeric value of a CycloElem (or rational) as a gmpy2 ``mpc``."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    if isinstance(a, (int, Fraction)):
        q = Fraction(a)
        with gmpy2.context(precision=precision_bits):
            return gmpy2.mpc(gmpy2.mpfr(gmpy2.mpq(q.numerator, q.denominator)), 0)
    with gmpy2.context(precision=precision_bits):
        acc = gmpy2.mpc(0)
        for j, c in enumerate(a.coords):
            if c:
                acc += gmpy2.mpfr(gmpy2.mpq(c.numerator, c.denominator)) * root_of_unity(
                    a.order, j, precision_bits
                )
        return acc
