"""Recurrence-free reference computations used to certify the engine."""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import gmpy2

from .exact.cyclo import CycloElem, embed_complex, root_of_unity
from .exact.series import TruncSeries, series_inv


class OracleError(ArithmeticError):
    """The product expansion did not vanish to the expected order."""


def taylor_expand(h: int, k: int, N: int, r_max: int) -> list[CycloElem]:
    """D_0..D_{r_max} of (x - zeta)^m F_N(x) about x = zeta, m = floor(N/k).

    Q(z) = prod_{j<=N} (1 - (z + zeta)^j) is expanded exactly to order
    m + r_max; it must equal z^m U(z) with U(0) != 0, and the Taylor
    coefficients are those of 1/U.
    """
    if math.gcd(h, k) != 1 or not 0 <= h < k:
        raise ValueError(f"need 0 <= h < k coprime, got ({h}, {k})")
    if k > N:
        raise ValueError(f"need k <= N, got k={k}, N={N}")
    m = N // k
    order = m + r_max
    zeta_pows = [CycloElem.zeta(k, h * j) for j in range(k)]
    one = CycloElem.one(k)
    q = TruncSeries.one(k, order)
    for j in range(1, N + 1):
        # 1 - (z + zeta)^j = 1 - sum_i C(j,i) zeta^(j-i) z^i
        terms = [one - zeta_pows[j % k]]
        terms += [zeta_pows[(j - i) % k] * (-comb(j, i)) for i in range(1, min(j, order) + 1)]
        q = q * TruncSeries(k, terms, order)
    v = q.valuation()
    if v != m:
        raise OracleError(f"Q(z) vanishes to order {v}, expected exactly {m} (h={h}, k={k}, N={N})")
    u = q.shift_down(m)
    return list(series_inv(u).terms)


@dataclass(frozen=True)
class PartitionTable:
    """p_N(n): partitions of n into at most N parts, for 0 <= N <= n_max_parts, 0 <= n <= m."""

    n_max_parts: int
    m: int
    values: tuple  # values[N][n]

    def p(self, N: int, n: int) -> int:
        return self.values[N][n]


def partition_counts(n_max_parts: int, m: int) -> PartitionTable:
    if m < 0 or n_max_parts < 0:
        raise ValueError("table sizes must be nonnegative")
    rows = [[1] + [0] * m]
    for N in range(1, n_max_parts + 1):
        prev = rows[-1]
        row = list(prev)
        # p_N(n) = p_{N-1}(n) + p_N(n-N)
        for n in range(N, m + 1):
            row[n] = prev[n] + row[n - N]
        rows.append(row)
    return PartitionTable(n_max_parts, m, tuple(tuple(r) for r in rows))


def reconstruct_check(N: int, m: int, precision_bits: int = 256):
    """max_{n<=m} |sum over all partial fraction terms of [x^n] - p_N(n)|.

    Each term C/(x - zeta)^l contributes (-1)^l C(n+l-1, l-1) zeta^(-l-n) C
    to the coefficient of x^n.  Coefficients come from the exact engine and
    are embedded at ``precision_bits``.
    """
    from .engine import build_triangle

    if N < 1:
        raise ValueError("N must be positive")
    table = partition_counts(N, m)
    with gmpy2.context(precision=precision_bits):
        sums = [gmpy2.mpc(0)] * (m + 1)
        for k in range(1, N + 1):
            units = [h for h in range(k) if math.gcd(h, k) == 1]
            for h in units:
                tri = build_triangle(h, k, N, mode="exact")
                for l in range(1, N // k + 1):
                    c = embed_complex(tri.coeff(l, N), precision_bits)
                    for n in range(m + 1):
                        z = root_of_unity(k, -h * (l + n), precision_bits)
                        term = c * z * comb(n + l - 1, l - 1)
                        sums[n] = sums[n] - term if l % 2 else sums[n] + term
        err = gmpy2.mpfr(0)
        for n in range(m + 1):
            err = max(err, abs(sums[n] - table.p(N, n)))
    return err


def oracle_equivalence(h: int, k: int, n_max: int) -> list[tuple[int, int]]:
    """(N, r) entries where the engine's exact D-triangle differs from ``taylor_expand``.

    Every row k <= N <= n_max is compared over its full band.
    """
    from .engine import EXACT, iter_rows

    bad = []
    for N, row in iter_rows(h, k, n_max, EXACT):
        if N < k:
            continue
        ref = taylor_expand(h, k, N, len(row) - 1)
        bad += [(N, r) for r, (a, b) in enumerate(zip(row, ref)) if a != b]
    return bad
