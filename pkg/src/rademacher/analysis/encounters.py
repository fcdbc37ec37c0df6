"""Close encounters: where C_{h,k,l}(N) comes nearest to R_{h,k,l}."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import gmpy2

from ..engine import EXACT, EXACT_DEFAULT_LIMIT, FLOAT, coeff_sequence, default_mode, get_triangle
from ..exact.cyclo import embed_complex
from ..limits import DEFAULT_PRECISION, rademacher_limit


@dataclass(frozen=True)
class EncounterRow:
    h: int
    k: int
    l: int
    B: int
    distance: object  # mpfr, |C - R|
    ratio: object  # mpfr, |C / R|
    n_range: tuple
    mode: str
    precision_bits: int
    confirmed_exact: bool = False


def _distance_ratio(c, R, precision_bits: int):
    with gmpy2.context(precision=precision_bits):
        c = gmpy2.mpc(c)
        return abs(c - R), abs(c / R)


def close_encounter(
    h: int,
    k: int,
    l: int,
    n_max: int = 1000,
    precision_bits: int = DEFAULT_PRECISION,
    mode: Optional[str] = None,
    engine_precision: Optional[int] = None,
    cache_dir=None,
) -> EncounterRow:
    """argmin_{k l <= N <= n_max} |C_{h,k,l}(N) - R_{h,k,l}|, ties to the smallest N.

    In float mode the winning N is re-evaluated exactly when that is cheap
    (N within the exact default range).
    """
    mode = mode or default_mode(n_max)
    R = rademacher_limit(h, k, l, precision_bits).value
    seq = coeff_sequence(h, k, l, k * l, n_max, mode, engine_precision, cache_dir=cache_dir,
                         numeric_bits=precision_bits + 64)
    best = None
    for v in seq:
        d, _ = _distance_ratio(v.numeric, R, precision_bits)
        if best is None or d < best[0]:
            best = (d, v)
    d, v = best
    confirmed = False
    value = v.numeric
    if mode == FLOAT and v.N <= EXACT_DEFAULT_LIMIT:
        tri = get_triangle(h, k, v.N, EXACT, l_need=l, cache_dir=cache_dir)
        value = embed_complex(tri.coeff(l, v.N), precision_bits + 64)
        confirmed = True
    d, ratio = _distance_ratio(value, R, precision_bits)
    return EncounterRow(h, k, l, v.N, d, ratio, (k * l, n_max), mode, precision_bits, confirmed)


@dataclass(frozen=True)
class Table24Row:
    l: int
    N: int
    distance: object
    ratio: object
    precision_bits: int


def table_24l(l_max: int, precision_bits: int = DEFAULT_PRECISION, cache_dir=None) -> list[Table24Row]:
    """|C_{0,1,l}(24 l) - R_{0,1,l}| and |C/R| for l = 1..l_max, from exact coefficients."""
    if l_max < 1:
        raise ValueError("l_max must be at least 1")
    tri = get_triangle(0, 1, 24 * l_max, EXACT, l_need=l_max, cache_dir=cache_dir)
    rows = []
    for l in range(1, l_max + 1):
        R = rademacher_limit(0, 1, l, precision_bits).value
        c = embed_complex(tri.coeff(l, 24 * l), precision_bits + 64)
        d, ratio = _distance_ratio(c, R, precision_bits)
        rows.append(Table24Row(l, 24 * l, d, ratio, precision_bits))
    return rows
