"""
Formulas from the top
=====================

Coefficients a fixed distance r below the top pole order are simple:
after multiplying by (-1)^(N+r) 4^r N! r! they are polynomials in N.  We
recover those polynomials by interpolation, check them on fresh points,
and look at how their coefficients depend on r.
"""

from rademacher.analysis import coeff_in_r_scan, conjecture2_check, fit_topdown

for r in range(5):
    f = fit_topdown(0, 1, r)
    print(f"r={r}", "verified" if f.ok else "failed", f.poly.pretty("N"))

# the same at the root -1, one family per parity of N
for residue in (0, 1):
    for r in range(3):
        print(fit_topdown(1, 2, r, residue=residue).expression())

# coefficient of N^(2r-s), as a polynomial in r
for s in (1, 2):
    fit = coeff_in_r_scan(s)
    print(f"s={s}:", fit.poly.pretty("r"))

# monic, alternating, convex, real roots only at 0 and 1 (grid evidence)
for entry in conjecture2_check(4)[1:]:
    print(entry.r, "all checks pass" if entry.ok else entry.checks)
