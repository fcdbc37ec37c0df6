"""Closed forms for the coefficients nearest the top pole order.

For fixed depth r, C_{h,k,floor(N/k)-r}(N) = D_r(N) is multiplied by a
hypothesised prefactor; if the result is a polynomial in N (or in n for a
residue class N = k n + residue) it is recovered by interpolation and then
checked on further points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..engine import EXACT, build_triangle, check_hk
from ..exact.poly import RatPoly, interpolate


@dataclass(frozen=True)
class Prefactor:
    """Maps (N, r) to the factor turning D_r(N) into a polynomial value.

    ``variable`` gives the polynomial's argument as a function of N.
    """

    name: str
    description: str
    scale: Callable[[int, int], Fraction]
    variable: Callable[[int], int]
    variable_name: str = "N"


def _scale_01(N: int, r: int) -> Fraction:
    sign = -1 if (N + r) % 2 else 1
    return Fraction(sign * 4**r * math.factorial(N) * math.factorial(r))


def _scale_12(N: int, r: int) -> Fraction:
    return Fraction(2**N * math.factorial(N // 2))


PREFACTOR_01 = Prefactor(
    "zeta=1",
    "C_{0,1,N-r}(N) = (-1)^(N+r) / (4^r N! r!) * P(N)",
    _scale_01,
    lambda N: N,
    "N",
)
PREFACTOR_12 = Prefactor(
    "zeta=-1",
    "C_{1,2,n-r}(N) = P(n) / (2^N n!),  n = floor(N/2)",
    _scale_12,
    lambda N: N // 2,
    "n",
)
BUILTIN_PREFACTORS = {(0, 1): PREFACTOR_01, (1, 2): PREFACTOR_12}


@dataclass
class TopDownFormula:
    h: int
    k: int
    r: int
    residue: int
    prefactor: Optional[Prefactor]
    poly: Optional[RatPoly]
    interpolation_window: tuple = ()
    verification_window: tuple = ()
    ok: bool = False
    failure: Optional[str] = None

    @property
    def degree(self) -> int:
        return self.poly.degree if self.poly is not None else -1

    def predict(self, N: int) -> Fraction:
        """C_{h,k,floor(N/k)-r}(N) from the formula."""
        if self.poly is None:
            raise ValueError("no formula")
        return Fraction(self.poly(self.prefactor.variable(N))) / self.prefactor.scale(N, self.r)

    def expression(self) -> str:
        if self.poly is None:
            return f"no formula ({self.failure})"
        return f"{self.prefactor.description} with P({self.prefactor.variable_name}) = " + self.poly.pretty(
            self.prefactor.variable_name
        )


def topdown_values(h: int, k: int, r: int, ns: Sequence[int]) -> dict:
    """Exact D_r(N) for each N in ``ns`` (a narrow band r_cap = r suffices)."""
    tri = build_triangle(h, k, max(ns), mode=EXACT, r_cap=r)
    out = {}
    for N in ns:
        l = N // k - r
        out[N] = tri.coeff(l, N) if l >= 1 else None
    return out


def fit_topdown(
    h: int,
    k: int,
    r: int,
    residue: Optional[int] = None,
    mode: str = EXACT,
    prefactor: Optional[Prefactor] = None,
    slack: int = 2,
    extra_checks: int = 0,
) -> TopDownFormula:
    """Fit and verify P for C_{h,k,floor(N/k)-r}(N), N = residue (mod k).

    Uses 2r + slack + 1 interpolation points starting past the prefactor's
    small-N range (floor(N/k) >= r + 2) and verifies on 2r + 4 + extra_checks
    further points of the same residue class.
    """
    check_hk(h, k)
    if r < 0:
        raise ValueError("depth r must be nonnegative")
    if mode != EXACT:
        raise ValueError("top-down fitting needs exact coefficients")
    residue = 0 if residue is None else residue
    if not 0 <= residue < k:
        raise ValueError(f"residue must lie in [0, {k}), got {residue}")
    prefactor = prefactor or BUILTIN_PREFACTORS.get((h, k))
    if prefactor is None:
        return TopDownFormula(h, k, r, residue, None, None, failure="no hypothesis")
    n_interp = 2 * r + slack + 1
    n_verify = 2 * r + 4 + extra_checks
    start = k * (r + 2) + residue
    ns = [start + k * i for i in range(n_interp + n_verify)]
    values = topdown_values(h, k, r, ns)
    interp_ns, verify_ns = ns[:n_interp], ns[n_interp:]

    def normalized(N):
        v = values[N]
        if v is None:
            raise ValueError(f"no coefficient at N={N}")
        return prefactor.scale(N, r) * (v.to_rational() if hasattr(v, "to_rational") else v)

    xs = [prefactor.variable(N) for N in interp_ns]
    poly = interpolate(xs, [normalized(N) for N in interp_ns])
    formula = TopDownFormula(h, k, r, residue, prefactor, poly, tuple(interp_ns), tuple(verify_ns))
    bad = [N for N in verify_ns if poly(prefactor.variable(N)) != normalized(N)]
    if bad:
        formula.failure = f"normalized values are not a polynomial of degree <= {n_interp - 1} (first mismatch N={bad[0]})"
    else:
        formula.ok = True
    return formula


@dataclass
class CoeffInRFit:
    s: int
    poly: Optional[RatPoly]
    fit_rs: tuple
    verify_rs: tuple
    ok: bool
    failure: Optional[str] = None


def coeff_in_r_scan(s: int, r_range: Optional[Sequence[int]] = None, verify: int = 2) -> CoeffInRFit:
    """Coefficient of N^(2r-s) in P_{0,1,N-r}(N), fitted as a polynomial of degree 2s in r.

    ``r_range`` supplies the fitting depths (default: 2s + 1 consecutive depths
    from ceil(s/2)); ``verify`` further depths are checked.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if r_range is None:
        r0 = max(1, -(-s // 2))
        r_range = range(r0, r0 + 2 * s + 1)
    fit_rs = tuple(r_range)
    if len(fit_rs) < 2 * s + 1:
        raise ValueError(f"need at least {2 * s + 1} depths to fix a degree-{2 * s} polynomial")
    verify_rs = tuple(range(max(fit_rs) + 1, max(fit_rs) + 1 + verify))
    coeffs = {}
    for r in fit_rs + verify_rs:
        f = fit_topdown(0, 1, r)
        if not f.ok:
            return CoeffInRFit(s, None, fit_rs, verify_rs, False, f"P at depth {r}: {f.failure}")
        coeffs[r] = f.poly.coeff(2 * r - s) if 2 * r - s >= 0 else Fraction(0)
    poly = interpolate(list(fit_rs), [coeffs[r] for r in fit_rs])
    bad = [r for r in verify_rs if poly(r) != coeffs[r]]
    if poly.degree > 2 * s:
        return CoeffInRFit(s, poly, fit_rs, verify_rs, False, f"degree {poly.degree} exceeds {2 * s}")
    if bad:
        return CoeffInRFit(s, poly, fit_rs, verify_rs, False, f"mismatch at r={bad[0]}")
    return CoeffInRFit(s, poly, fit_rs, verify_rs, True)


@dataclass
class Conjecture2Entry:
    r: int
    poly: Optional[RatPoly]
    skipped: bool = False
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.skipped or all(self.checks.values())


def _alternating(p: RatPoly) -> bool:
    # descending coefficients, skipping the vanishing constant term
    cs = [c for c in reversed(p.coeffs) if c != 0]
    return all((a > 0) != (b > 0) for a, b in zip(cs, cs[1:]))


def _screen_roots(p: RatPoly, n_max: int, step: Fraction) -> bool:
    """No sign change of P / (N(N-1)) on a rational grid over [-n_max, n_max]."""
    q, rem = divmod(p, RatPoly((0, -1, 1)))
    if not rem.is_zero():
        return False
    sign = None
    x = Fraction(-n_max)
    while x <= n_max:
        v = q(x)
        if v == 0:
            return False
        s = v > 0
        if sign is None:
            sign = s
        elif s != sign:
            return False
        x += step
    return True


def conjecture2_check(r_max: int, n_max: int = 50, grid_step: Fraction = Fraction(1, 8)) -> list[Conjecture2Entry]:
    """Evidence for: P_{0,1,N-r} is monic of degree 2r, alternating, convex, real roots {0, 1}.

    Convexity is second-difference nonnegativity on the integers in
    [-n_max, n_max]; the root screen samples a rational grid.  Neither is a proof.
    """
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    out = []
    for r in range(0, r_max + 1):
        f = fit_topdown(0, 1, r)
        p = f.poly
        if r == 0:
            out.append(Conjecture2Entry(r, p, skipped=True))
            continue
        checks = {
            "fit_verified": f.ok,
            "monic": p.is_monic(),
            "degree_2r": p.degree == 2 * r,
            "alternating": _alternating(p),
            "root_0": p(0) == 0,
            "root_1": p(1) == 0,
            "convex_grid": all(
                p(x + 1) - 2 * p(x) + p(x - 1) >= 0 for x in range(-n_max, n_max + 1)
            ),
            "no_other_real_roots_grid": _screen_roots(p, n_max, grid_step),
        }
        out.append(Conjecture2Entry(r, p, checks=checks))
    return out
