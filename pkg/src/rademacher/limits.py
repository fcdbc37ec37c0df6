"""Rademacher's conjectured limits R_{h,k,l} and the Dedekind sum."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

import gmpy2
from gmpy2 import mpfr

DEFAULT_DIGITS = 50
DEFAULT_PRECISION = math.ceil(DEFAULT_DIGITS * math.log2(10))  # 167 bits


def _sawtooth(x: Fraction) -> Fraction:
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h,k) = sum_{mu=1}^{k-1} (mu/k - floor(mu/k) - 1/2)(h mu/k - floor(h mu/k) - 1/2)."""
    if k < 1 or math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")
    return sum(
        (_sawtooth(Fraction(mu, k)) * _sawtooth(Fraction(h * mu, k)) for mu in range(1, k)),
        Fraction(0),
    )


def l_three_halves(y):
    """L_{3/2}(-y^2) = -(2 cos 2y - sin(2y)/y) / (2 sqrt(pi) y^2), at the current precision."""
    y = mpfr(y)
    if y <= 0:
        raise ValueError("L_{3/2}(-y^2) needs y > 0")
    two_y = 2 * y
    return -(2 * gmpy2.cos(two_y) - gmpy2.sin(two_y) / y) / (2 * gmpy2.sqrt(gmpy2.const_pi()) * y * y)


def forward_difference(f: Callable, j: int, alpha) -> object:
    """Unit-step forward difference: sum_{i=0}^{j} (-1)^i C(j,i) f(alpha + j - i)."""
    if j < 0:
        raise ValueError("difference order must be nonnegative")
    total = 0
    for i in range(j + 1):
        term = comb(j, i) * f(alpha + j - i)
        total = total - term if i % 2 else total + term
    return total


def exp_pi_i(q: Fraction, precision_bits: int):
    """exp(pi i q) for rational q, reduced mod 2 exactly before rounding."""
    q = Fraction(q) % 2
    if (2 * q).denominator == 1:
        re, im = ((1, 0), (0, 1), (-1, 0), (0, -1))[int(2 * q)]
        return gmpy2.mpc(re, im, precision=precision_bits)
    with gmpy2.context(precision=precision_bits + 16):
        theta = gmpy2.const_pi() * gmpy2.mpq(q.numerator, q.denominator)
        c, s = gmpy2.cos(theta), gmpy2.sin(theta)
    return gmpy2.mpc(c, s, precision=precision_bits)


@dataclass(frozen=True)
class LimitValue:
    h: int
    k: int
    l: int
    value: object  # gmpy2 mpc
    precision_bits: int
    closed_form: Optional[str] = None

    @property
    def digits(self) -> int:
        return int(self.precision_bits * math.log10(2)) - 2

    @property
    def real(self):
        return self.value.real


CLOSED_FORM_TAGS = {
    (0, 1, 1): "-6/25*(1 + 2*sqrt(3)/(5*pi))",
    (0, 1, 2): "144/1225 + 5616*sqrt(3)/(42875*pi)",
    (1, 2, 1): "-2*sqrt(6)/25*(cos(5*pi/12) - 12/(5*pi)*sin(5*pi/12))",
}


def rademacher_limit(h: int, k: int, l: int, precision_bits: int = DEFAULT_PRECISION) -> LimitValue:
    """R_{h,k,l} = -2 pi (pi/12)^(3/2) e^{pi i (s(h,k) + 2hl/k)} / k^(5/2) * D^(l-1) g(1/24),
    g(alpha) = L_{3/2}(-pi^2 (alpha+1) / (6 k^2))."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    if k < 1 or not 0 <= h < k or math.gcd(h, k) != 1:
        raise ValueError(f"need 0 <= h < k coprime, got ({h}, {k})")
    if l < 1:
        raise ValueError("l must be positive")
    guard = l + 32  # the alternating difference cancels about l bits
    work = precision_bits + guard
    with gmpy2.context(precision=work):
        pi = gmpy2.const_pi()

        def g(alpha: Fraction):
            y = pi * gmpy2.sqrt(mpfr(gmpy2.mpq(alpha.numerator + alpha.denominator, alpha.denominator)) / 6) / k
            return l_three_halves(y)

        delta = forward_difference(g, l - 1, Fraction(1, 24))
        amplitude = -2 * pi * (pi / 12) ** mpfr(1.5) / mpfr(k) ** mpfr(2.5) * delta
        phase = exp_pi_i(dedekind_sum(h, k) + Fraction(2 * h * l, k), work)
        value = phase * amplitude
    with gmpy2.context(precision=precision_bits):
        value = gmpy2.mpc(value)
    return LimitValue(h, k, l, value, precision_bits, CLOSED_FORM_TAGS.get((h, k, l)))


def closed_form_limits(precision_bits: int = DEFAULT_PRECISION) -> dict:
    """The exact expressions for R_{0,1,1}, R_{0,1,2}, R_{1,2,1} at working precision."""
    with gmpy2.context(precision=precision_bits + 16):
        pi = gmpy2.const_pi()
        r011 = -mpfr(6) / 25 * (1 + 2 * gmpy2.sqrt(3) / (5 * pi))
        # the sqrt(3) comes from sin(2y)/y at y = 5pi/12 and 7pi/12
        r012 = mpfr(144) / 1225 + 5616 * gmpy2.sqrt(3) / (42875 * pi)
        a = 5 * pi / 12
        r121 = -2 * gmpy2.sqrt(6) / 25 * (gmpy2.cos(a) - 12 / (5 * pi) * gmpy2.sin(a))
    with gmpy2.context(precision=precision_bits):
        return {key: mpfr(v) for key, v in {(0, 1, 1): r011, (0, 1, 2): r012, (1, 2, 1): r121}.items()}
