"""Local extrema of coefficient sequences, their ratios and residue classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2

from ..engine import EXACT, ParameterError, coeff_sequence
from ..exact.cyclo import CycloElem, embed_complex


@dataclass
class ExtremaReport:
    h: int
    k: int
    l: int
    stride: int
    n_range: tuple
    mode: str
    precision_bits: Optional[int]
    maxima: list = field(default_factory=list)  # [(N, value)]
    minima: list = field(default_factory=list)

    @property
    def max_positions(self) -> list:
        return [n for n, _ in self.maxima]

    @property
    def min_positions(self) -> list:
        return [n for n, _ in self.minima]


def _key(v):
    """Ordering key: exact rationals compare exactly, cyclotomic values by real part."""
    if isinstance(v, CycloElem):
        if v.is_rational():
            return v.to_rational()
        return embed_complex(v, 256).real
    if isinstance(v, gmpy2.mpc):
        return v.real
    return v


def extrema_of(values: dict, stride: int = 1) -> tuple[list, list]:
    """Non-strict local maxima and minima within each residue class mod ``stride``.

    ``values`` maps N to a value; N is interior iff N - stride and N + stride are
    both present.  Plateau members are each reported.
    """
    if stride < 1:
        raise ParameterError("stride must be positive")
    maxima, minima = [], []
    for n in sorted(values):
        lo, hi = n - stride, n + stride
        if lo not in values or hi not in values:
            continue
        c, a, b = _key(values[n]), _key(values[lo]), _key(values[hi])
        if c >= a and c >= b:
            maxima.append((n, values[n]))
        if c <= a and c <= b:
            minima.append((n, values[n]))
    return maxima, minima


def find_extrema(
    h: int,
    k: int,
    l: int,
    n_max: int,
    stride: int = 1,
    mode: Optional[str] = None,
    precision_bits: Optional[int] = None,
    cache_dir=None,
) -> ExtremaReport:
    n_from = k * l
    if n_max < n_from + 2 * stride:
        raise ParameterError(f"n_max={n_max} too small: need at least k*l + 2*stride = {n_from + 2 * stride}")
    seq = coeff_sequence(h, k, l, n_from, n_max, mode, precision_bits, cache_dir=cache_dir)
    values = {v.N: v.exact if v.backend == EXACT else v.numeric.real for v in seq}
    maxima, minima = extrema_of(values, stride)
    return ExtremaReport(
        h, k, l, stride, (n_from, n_max), seq[0].backend,
        None if seq[0].backend == EXACT else seq[0].precision_bits, maxima, minima,
    )


def extrema_ratios(report: ExtremaReport, precision_bits: int = 128) -> list:
    """value(max_{i+1}) / value(max_i); None where the denominator vanishes."""
    out = []
    values = [v for _, v in report.maxima]
    with gmpy2.context(precision=precision_bits):
        for a, b in zip(values, values[1:]):
            a, b = _key(a), _key(b)
            if a == 0:
                out.append(None)
            elif isinstance(a, Fraction) and isinstance(b, Fraction):
                q = b / a
                out.append(gmpy2.mpfr(gmpy2.mpq(q.numerator, q.denominator)))
            else:
                out.append(gmpy2.mpfr(b) / gmpy2.mpfr(a))
    return out


@dataclass(frozen=True)
class WindowResidues:
    window: tuple  # inclusive (a, b)
    modulus: int
    max_residues: tuple
    min_residues: tuple

    @property
    def max_unique(self) -> bool:
        return len(self.max_residues) == 1

    @property
    def min_unique(self) -> bool:
        return len(self.min_residues) == 1


def congruence_scan(report: ExtremaReport, modulus: int, windows: Sequence[tuple]) -> list[WindowResidues]:
    """Residues mod ``modulus`` of the extremum positions inside each inclusive window."""
    out = []
    for a, b in windows:
        mx = sorted({n % modulus for n in report.max_positions if a <= n <= b})
        mn = sorted({n % modulus for n in report.min_positions if a <= n <= b})
        out.append(WindowResidues((a, b), modulus, tuple(mx), tuple(mn)))
    return out
