"""
The first coefficient does not settle down
==========================================

C_{0,1,1}(N) should tend to R_{0,1,1} if the limit existed.  Instead it
swings around the line y = R with growing amplitude and a recurring
spacing of 32 in N.
"""

from rademacher import EXACT, coeff_sequence, rademacher_limit
from rademacher.analysis import congruence_scan, extrema_ratios, find_extrema
from rademacher.cli import main

R = rademacher_limit(0, 1, 1).real
print("R_{0,1,1} =", R)

# exact rationals for N <= 200; the values cross y = R near N = 25
seq = coeff_sequence(0, 1, 1, 1, 200, EXACT)
for v in seq[20:30]:
    print(v.N, float(v.real), "distance", float(abs(v.real - R)))

# local extrema and their residues mod 32
rep = find_extrema(0, 1, 1, 200, mode=EXACT)
print("maxima:", rep.max_positions)
print("minima:", rep.min_positions)
print("ratios:", [None if q is None else float(q) for q in extrema_ratios(rep)])
for w in congruence_scan(rep, 32, [(99, 200)]):
    print("window", w.window, "maxima mod 32:", w.max_residues, "minima mod 32:", w.min_residues)

# the same picture as an SVG file
main(["plot", "--h", "0", "--k", "1", "--l", "1", "--range", "1..100", "--out", "oscillation.svg"])
print("wrote oscillation.svg")
