"""
Close encounters with the conjectured limit
===========================================

Although C_{0,1,l}(N) oscillates, it passes very near R_{0,1,l} at some N.
The nearest approach B_{0,1,l} lands close to 24 l, so C_{0,1,l}(24 l) is
also compared with the limit.
"""

from rademacher import EXACT
from rademacher.analysis import close_encounter, table_24l
from rademacher.reports import format_sig

print(" l    B      |C-R|        |C/R|")
for l in range(1, 5):
    row = close_encounter(0, 1, l, n_max=300, mode=EXACT)
    print(f"{l:>2} {row.B:>4}  {format_sig(row.distance, 6):>12}  {format_sig(row.ratio, 8)}")

# at N = 24 l the ratio tends to 1 as l grows
print()
print(" l    N      |C-R|           |C/R|")
for row in table_24l(12):
    print(f"{row.l:>2} {row.N:>4}  {format_sig(row.distance, 8):>14}  {format_sig(row.ratio, 11)}")
