"""Rademacher coefficients C_{h,k,l}(N) from the D-triangle recurrence.

With zeta = exp(2*pi*i*h/k), z = x - zeta and m(N) = floor(N/k), D_r(N) is the
coefficient of z^r in (x - zeta)^m(N) * prod_{j<=N} 1/(1 - x^j).  Dividing
consecutive products gives, for each row N, one of two linear recurrences:

* k does not divide N:
  D_r(N) = [D_r(N-1) + sum_{a=1}^{r} C(N,a) zeta^(N-a) D_{r-a}(N)] / (1 - zeta^N)
* k divides N:
  D_r(N) = -[D_r(N-1) + sum_{a=1}^{r} C(N,a+1) zeta^(N-1-a) D_{r-a}(N)] / (N zeta^(N-1))

and the coefficients are read off as C_{h,k,l}(N) = D_{m(N)-l}(N).

Three row backends share that recurrence:

* rational rows (k in {1, 2}): integer numerators over one common row
  denominator, reduced once per row;
* cyclotomic rows (k >= 3): exact :class:`CycloElem` arithmetic;
* float rows: gmpy2 ``mpfr`` (k <= 2) or ``mpc`` at a fixed binary precision.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Iterator, Optional

import gmpy2
from gmpy2 import mpz

from .exact.cyclo import CycloElem, embed_complex, root_of_unity

EXACT = "exact"
FLOAT = "float"
EXACT_DEFAULT_LIMIT = 400
MIN_PRECISION = 64


class ParameterError(ValueError):
    """Invalid (h, k, l, N) or mode parameters."""


def check_hk(h: int, k: int) -> None:
    if k < 1 or not 0 <= h < k or math.gcd(h, k) != 1:
        raise ParameterError(f"need 0 <= h < k with gcd(h, k) = 1, got h={h}, k={k}")


def default_mode(n_max: int) -> str:
    return EXACT if n_max <= EXACT_DEFAULT_LIMIT else FLOAT


def default_precision(n_max: int) -> int:
    # binomials reach ~n_max bits and the recurrence cancels heavily
    return max(256, 4 * n_max)


def guaranteed_digits(precision_bits: int) -> int:
    """Decimal digits the float backend is audited to (relative error 2^-(prec/2))."""
    return int(precision_bits // 2 * math.log10(2))


def band_width(n_cap: int, k: int) -> int:
    """Largest r kept in every row: floor(n_cap/k) - 1 (at least 0)."""
    return max(n_cap // k - 1, 0)


# -- row backends -------------------------------------------------------------


def _row_coefficients(N: int, k: int, R: int):
    """Integer binomials of the row recurrence and which case applies.

    Returns (divisible, binoms) where binoms[a] (a = 1..R) is C(N,a+1) when k | N
    and C(N,a) otherwise; binoms[0] is unused.
    """
    divisible = N % k == 0
    out = [0] * (R + 1)
    b = 1
    if divisible:
        b = N  # C(N, 1)
        for a in range(1, min(R, N - 1) + 1):
            b = b * (N - a) // (a + 1)  # C(N, a+1)
            out[a] = b
    else:
        for a in range(1, min(R, N) + 1):
            b = b * (N - a + 1) // a  # C(N, a)
            out[a] = b
    return divisible, out


class _RationalRows:
    """Exact rows for zeta = +-1: D_r(N) = A[r] / den with integer A."""

    def __init__(self, h: int, k: int, R: int):
        self.k = k
        self.sign = 1 if k == 1 else -1  # zeta
        self.R = R
        self.A = [mpz(0)] * (R + 1)
        self.A[0] = mpz(1)
        self.den = mpz(1)

    def advance(self, N: int) -> None:
        R, zeta = self.R, self.sign
        divisible, binoms = _row_coefficients(N, self.k, R)
        # D_r = (prev_r + sum_a c_a D_{r-a}) / q
        if divisible:
            q = -N * zeta ** (N - 1)
            c = [mpz(binoms[a] * zeta ** (N - 1 - a)) for a in range(R + 1)]
            lim = min(R, N - 1)
        else:
            q = 1 - zeta**N
            c = [mpz(binoms[a] * zeta ** (N - a)) for a in range(R + 1)]
            lim = min(R, N)
        q = mpz(q)
        # With D_r = X_r / (den q^(r+1)):  X_r = q^r A_r + sum_a c_a q^(a-1) X_{r-a}
        qpow = [mpz(1)] * (R + 2)
        for i in range(1, R + 2):
            qpow[i] = qpow[i - 1] * q
        e = [mpz(0)] + [c[a] * qpow[a - 1] for a in range(1, lim + 1)]
        A = self.A
        X = []
        for r in range(R + 1):
            s = qpow[r] * A[r]
            ub = min(r, lim)
            if ub:
                s += sum(map(mul, e[1 : ub + 1], reversed(X[r - ub : r])))
            X.append(s)
        D = self.den * qpow[R + 1]
        Y = [X[r] * qpow[R - r] for r in range(R + 1)]
        g = D
        for y in Y:
            if g == 1:
                break
            g = gmpy2.gcd(g, y)
        if D < 0:
            g = -g
        self.A = [y // g for y in Y]
        self.den = D // g

    def value(self, r: int) -> Fraction:
        return Fraction(int(self.A[r]), int(self.den))

    def state(self):
        return [self.value(r) for r in range(self.R + 1)]

    def load_state(self, values) -> None:
        den = 1
        for v in values:
            den = den * v.denominator // math.gcd(den, v.denominator)
        self.den = mpz(den)
        self.A = [mpz(v.numerator * (den // v.denominator)) for v in values]


class _CycloRows:
    """Exact rows in Q(zeta_k) for k >= 3."""

    def __init__(self, h: int, k: int, R: int):
        self.h, self.k, self.R = h, k, R
        self.zeta_pows = [CycloElem.zeta(k, h * j) for j in range(k)]
        self.row = [CycloElem.one(k)] + [CycloElem.zero(k)] * R

    def advance(self, N: int) -> None:
        k, R, zp = self.k, self.R, self.zeta_pows
        divisible, binoms = _row_coefficients(N, k, R)
        if divisible:
            q = zp[(N - 1) % k] * (-N)
            c = [None] + [zp[(N - 1 - a) % k] * binoms[a] for a in range(1, R + 1)]
            lim = min(R, N - 1)
        else:
            q = 1 - zp[N % k]
            c = [None] + [zp[(N - a) % k] * binoms[a] for a in range(1, R + 1)]
            lim = min(R, N)
        qinv = q.inverse()
        prev, new = self.row, []
        for r in range(R + 1):
            s = prev[r]
            for a in range(1, min(r, lim) + 1):
                s = s + c[a] * new[r - a]
            new.append(s * qinv)
        self.row = new

    def value(self, r: int) -> CycloElem:
        return self.row[r]

    def state(self):
        return list(self.row)

    def load_state(self, values) -> None:
        self.row = list(values)


class _FloatRows:
    """Binary floating-point rows at a fixed precision (round-to-nearest)."""

    def __init__(self, h: int, k: int, R: int, precision_bits: int):
        self.h, self.k, self.R, self.prec = h, k, R, precision_bits
        self.complex = k > 2
        with gmpy2.context(precision=precision_bits):
            if self.complex:
                self.zeta_pows = [root_of_unity(k, h * j, precision_bits) for j in range(k)]
                self.zero = gmpy2.mpc(0)
                self.row = [gmpy2.mpc(1)] + [self.zero] * R
            else:
                s = 1 if k == 1 else -1
                self.zeta_pows = [gmpy2.mpfr(s**j) for j in range(k)]
                self.zero = gmpy2.mpfr(0)
                self.row = [gmpy2.mpfr(1)] + [self.zero] * R

    def advance(self, N: int) -> None:
        k, R, zp = self.k, self.R, self.zeta_pows
        divisible, binoms = _row_coefficients(N, k, R)
        with gmpy2.context(precision=self.prec):
            if divisible:
                q = zp[(N - 1) % k] * (-N)
                c = [self.zero] + [zp[(N - 1 - a) % k] * mpz(binoms[a]) for a in range(1, R + 1)]
                lim = min(R, N - 1)
            else:
                q = 1 - zp[N % k]
                c = [self.zero] + [zp[(N - a) % k] * mpz(binoms[a]) for a in range(1, R + 1)]
                lim = min(R, N)
            prev, new = self.row, []
            zero = self.zero
            for r in range(R + 1):
                ub = min(r, lim)
                s = prev[r]
                if ub:
                    s = s + sum(map(mul, c[1 : ub + 1], reversed(new[r - ub : r])), zero)
                new.append(s / q)
            self.row = new

    def value(self, r: int):
        return self.row[r]

    def state(self):
        return list(self.row)

    def load_state(self, values) -> None:
        self.row = list(values)


# -- triangle -----------------------------------------------------------------


class CoeffTriangle:
    """The D-table for fixed (h, k), filled row by row up to ``n_max``.

    ``n_cap`` fixes the band width r_cap = floor(n_cap/k) - 1, which every row
    needs in full; the triangle can be extended in N up to ``n_cap`` without
    recomputation.  Retained values:

    * the Rademacher coefficients C_{h,k,l}(N) for l <= ``l_keep`` (all l when
      ``l_keep`` is None);
    * whole rows D_0..D_{r_cap} only when ``keep_rows`` is set.

    A narrower ``r_cap`` may be forced; D_r for r <= r_cap stays exact because
    the recurrence never reads entries above r, but only the top coefficients
    (l >= floor(N/k) - r_cap) are then available.
    """

    def __init__(
        self,
        h: int,
        k: int,
        n_cap: int,
        mode: str = EXACT,
        precision_bits: Optional[int] = None,
        l_keep: Optional[int] = None,
        keep_rows: bool = False,
        r_cap: Optional[int] = None,
    ):
        check_hk(h, k)
        if n_cap < 1:
            raise ParameterError(f"n_cap must be at least 1, got {n_cap}")
        if mode not in (EXACT, FLOAT):
            raise ParameterError(f"unknown mode {mode!r}")
        if mode == FLOAT:
            if precision_bits is None:
                precision_bits = default_precision(n_cap)
            if precision_bits < MIN_PRECISION:
                raise ParameterError(f"float mode needs at least {MIN_PRECISION} bits, got {precision_bits}")
        else:
            precision_bits = None
        self.h, self.k, self.n_cap = h, k, n_cap
        self.mode, self.precision_bits = mode, precision_bits
        self.l_keep, self.keep_rows = l_keep, keep_rows
        self.r_cap = band_width(n_cap, k) if r_cap is None else r_cap
        if self.r_cap < 0:
            raise ParameterError(f"r_cap must be nonnegative, got {r_cap}")
        self.n_max = 0
        self._coeffs: dict[int, tuple] = {}
        self._rows: dict[int, tuple] = {}
        self._lock = threading.Lock()
        if mode == FLOAT:
            self._backend = _FloatRows(h, k, self.r_cap, precision_bits)
        elif k <= 2:
            self._backend = _RationalRows(h, k, self.r_cap)
        else:
            self._backend = _CycloRows(h, k, self.r_cap)
        if keep_rows:
            self._rows[0] = tuple(self._backend.state())

    def __repr__(self):
        prec = f", precision_bits={self.precision_bits}" if self.mode == FLOAT else ""
        return f"CoeffTriangle(h={self.h}, k={self.k}, n_max={self.n_max}, r_cap={self.r_cap}, mode={self.mode!r}{prec})"

    @property
    def key(self) -> tuple:
        return (self.h, self.k, self.mode, self.precision_bits)

    def extend(self, n_to: int, progress=None) -> CoeffTriangle:
        if n_to > self.n_cap:
            raise ParameterError(f"triangle built for N <= {self.n_cap}, asked for {n_to}")
        with self._lock:
            for N in range(self.n_max + 1, n_to + 1):
                self._backend.advance(N)
                self._record(N)
                self.n_max = N
                if progress is not None:
                    progress(N)
        return self

    def _record(self, N: int) -> None:
        lo, hi = self.l_range(N)
        m = N // self.k
        self._coeffs[N] = tuple(self._backend.value(m - l) for l in range(lo, hi + 1))
        if self.keep_rows:
            self._rows[N] = tuple(self._backend.state())

    def l_range(self, N: int) -> tuple[int, int]:
        """Retained l at row N, as an inclusive range (empty when lo > hi)."""
        m = N // self.k
        lo = max(1, m - self.r_cap)
        hi = m if self.l_keep is None else min(m, self.l_keep)
        return lo, hi

    def coeff(self, l: int, N: int):
        m = N // self.k
        if N < 1 or self.k > N:
            raise ParameterError(f"need k <= N, got k={self.k}, N={N}")
        if not 1 <= l <= m:
            raise ParameterError(f"need 1 <= l <= floor(N/k) = {m}, got l={l}")
        if N > self.n_max:
            raise ParameterError(f"row {N} not computed (n_max={self.n_max})")
        lo, hi = self.l_range(N)
        if not lo <= l <= hi:
            raise ParameterError(f"l={l} not retained at N={N} (l_keep={self.l_keep}, r_cap={self.r_cap})")
        return self._coeffs[N][l - lo]

    def row(self, N: int) -> tuple:
        if N not in self._rows:
            raise ParameterError(f"row {N} not retained (keep_rows={self.keep_rows})")
        return self._rows[N]

    def entry(self, N: int, r: int):
        return self.row(N)[r]

    def last_row(self) -> list:
        return self._backend.state()

    def _restore(self, n_max: int, coeffs: dict, rows: dict, state: list) -> None:
        """Install previously computed contents (used by the cache loader)."""
        self._coeffs = dict(coeffs)
        if self.keep_rows:
            self._rows = dict(rows)
        self._backend.load_state(state)
        self.n_max = n_max


def build_triangle(
    h: int,
    k: int,
    n_max: int,
    mode: Optional[str] = None,
    precision_bits: Optional[int] = None,
    l_keep: Optional[int] = None,
    keep_rows: bool = False,
    n_cap: Optional[int] = None,
    r_cap: Optional[int] = None,
) -> CoeffTriangle:
    mode = mode or default_mode(n_max)
    tri = CoeffTriangle(h, k, n_cap or n_max, mode, precision_bits, l_keep, keep_rows, r_cap)
    return tri.extend(n_max)


# -- values -------------------------------------------------------------------


@dataclass(frozen=True)
class CoeffValue:
    h: int
    k: int
    l: int
    N: int
    exact: object  # Fraction, CycloElem or None
    numeric: object  # gmpy2 mpc
    backend: str
    precision_bits: int

    @property
    def digits(self) -> int:
        if self.backend == EXACT:
            return int(self.precision_bits * math.log10(2)) - 1
        return guaranteed_digits(self.precision_bits)

    @property
    def real(self):
        return self.numeric.real


def make_value(h: int, k: int, l: int, N: int, raw, mode: str, precision_bits: Optional[int]) -> CoeffValue:
    if mode == EXACT:
        bits = precision_bits or 256
        return CoeffValue(h, k, l, N, raw, embed_complex(raw, bits), EXACT, bits)
    with gmpy2.context(precision=precision_bits):
        numeric = gmpy2.mpc(raw)
    return CoeffValue(h, k, l, N, None, numeric, FLOAT, precision_bits)


# process-wide registry of triangles, extended on demand
_REGISTRY: dict[tuple, CoeffTriangle] = {}
_REGISTRY_LOCK = threading.Lock()


def _round_cap(n: int) -> int:
    return max(50, -(-n // 50) * 50)


def get_triangle(
    h: int,
    k: int,
    n_max: int,
    mode: Optional[str] = None,
    precision_bits: Optional[int] = None,
    l_need: Optional[int] = None,
    cache_dir=None,
) -> CoeffTriangle:
    """A triangle covering rows <= n_max with C_{h,k,l} retained for l <= l_need.

    Reuses (and extends) a registered triangle when its band is wide enough,
    consulting the on-disk cache when ``cache_dir`` is given.
    """
    check_hk(h, k)
    mode = mode or default_mode(n_max)
    if mode == FLOAT and precision_bits is None:
        precision_bits = default_precision(_round_cap(n_max))
    if mode == EXACT:
        precision_bits = None
    key = (h, k, mode, precision_bits)
    with _REGISTRY_LOCK:
        tri = _REGISTRY.get(key)
        if tri is None or tri.n_cap < n_max or not _keeps(tri, l_need):
            tri = None
            if cache_dir is not None:
                from .cache import load_triangle

                tri = load_triangle(cache_dir, h, k, mode, precision_bits)
                if tri is not None and (tri.n_cap < n_max or not _keeps(tri, l_need)):
                    tri = None
            if tri is None:
                l_keep = None if l_need is None else max(l_need, 40)
                tri = CoeffTriangle(h, k, _round_cap(n_max), mode, precision_bits, l_keep)
            _REGISTRY[key] = tri
    if tri.n_max < n_max:
        before = tri.n_max
        tri.extend(n_max)
        if cache_dir is not None and tri.n_max > before:
            from .cache import save_triangle

            save_triangle(cache_dir, tri)
    return tri


def _keeps(tri: CoeffTriangle, l_need: Optional[int]) -> bool:
    if tri.l_keep is None:
        return True
    return l_need is not None and l_need <= tri.l_keep


def clear_registry() -> None:
    with _REGISTRY_LOCK:
        _REGISTRY.clear()


def coeff(
    h: int,
    k: int,
    l: int,
    N: int,
    mode: Optional[str] = None,
    precision_bits: Optional[int] = None,
    cache_dir=None,
) -> CoeffValue:
    check_hk(h, k)
    if k > N:
        raise ParameterError(f"need k <= N, got k={k}, N={N}")
    if not 1 <= l <= N // k:
        raise ParameterError(f"need 1 <= l <= floor(N/k) = {N // k}, got l={l}")
    mode = mode or default_mode(N)
    tri = get_triangle(h, k, N, mode, precision_bits, l_need=l, cache_dir=cache_dir)
    # in exact mode precision_bits only sets the numeric embedding
    bits = precision_bits if mode == EXACT else tri.precision_bits
    return make_value(h, k, l, N, tri.coeff(l, N), mode, bits)


def coeff_sequence(
    h: int,
    k: int,
    l: int,
    n_from: int,
    n_to: int,
    mode: Optional[str] = None,
    precision_bits: Optional[int] = None,
    cache_dir=None,
    numeric_bits: Optional[int] = None,
) -> list[CoeffValue]:
    """C_{h,k,l}(N) for n_from <= N <= n_to, from one incremental triangle pass."""
    check_hk(h, k)
    if l < 1:
        raise ParameterError(f"need l >= 1, got {l}")
    n_from = max(n_from, 1)
    if n_from < k * l:
        n_from = k * l
    if n_to < n_from:
        raise ParameterError(f"empty range: no N in [{n_from}, {n_to}] has l={l} <= floor(N/{k})")
    mode = mode or default_mode(n_to)
    tri = get_triangle(h, k, n_to, mode, precision_bits, l_need=l, cache_dir=cache_dir)
    bits = numeric_bits if mode == EXACT else tri.precision_bits
    return [make_value(h, k, l, N, tri.coeff(l, N), mode, bits) for N in range(n_from, n_to + 1)]


def iter_rows(
    h: int, k: int, n_max: int, mode: str = EXACT, precision_bits: Optional[int] = None
) -> Iterator[tuple[int, list]]:
    """Yield (N, [D_0(N), ..., D_rcap(N)]) for N = 0..n_max without storing rows."""
    tri = CoeffTriangle(h, k, n_max, mode, precision_bits, l_keep=0)
    yield 0, tri.last_row()
    for N in range(1, n_max + 1):
        tri.extend(N)
        yield N, tri.last_row()


# -- float audit --------------------------------------------------------------


@dataclass(frozen=True)
class FloatAudit:
    h: int
    k: int
    n_max: int
    precision_bits: int
    max_rel_error: object  # mpfr
    worst: tuple  # (N, r)
    first_failure: Optional[int]
    threshold: object

    @property
    def ok(self) -> bool:
        return self.first_failure is None

    @property
    def digits(self) -> float:
        if self.max_rel_error == 0:
            return float("inf")
        return -float(gmpy2.log10(self.max_rel_error))


def validate_float_backend(h: int, k: int, n_max: int, precision_bits: Optional[int] = None) -> FloatAudit:
    """Entrywise comparison of the float triangle against the exact one."""
    check_hk(h, k)
    if precision_bits is None:
        precision_bits = default_precision(n_max)
    ref_bits = 2 * precision_bits + 64
    exact_rows = iter_rows(h, k, n_max, EXACT)
    float_rows = iter_rows(h, k, n_max, FLOAT, precision_bits)
    with gmpy2.context(precision=ref_bits):
        threshold = gmpy2.mpfr(2) ** (-(precision_bits // 2))
        worst, where, first_fail = gmpy2.mpfr(0), (0, 0), None
        for (N, erow), (_, frow) in zip(exact_rows, float_rows):
            for r, (e, f) in enumerate(zip(erow, frow)):
                ev = embed_complex(e, ref_bits)
                diff = abs(gmpy2.mpc(f) - ev)
                scale = abs(ev)
                rel = diff / scale if scale != 0 else diff
                if rel > worst:
                    worst, where = rel, (N, r)
                if first_fail is None and rel > threshold:
                    first_fail = N
    return FloatAudit(h, k, n_max, precision_bits, worst, where, first_fail, threshold)


def coefficient_index(N: int) -> list[tuple[int, int, int]]:
    """All (h, k, l) with a term C_{h,k,l}(N) in the partial fraction decomposition."""
    return [
        (h, k, l)
        for k in range(1, N + 1)
        for h in range(k)
        if math.gcd(h, k) == 1
        for l in range(1, N // k + 1)
    ]
