"""
Putting the decomposition back together
=======================================

Every coefficient C_{h,k,l}(N) for one N, summed over all poles, must give
back the power series of prod 1/(1 - x^j): the number of partitions of n
into at most N parts.  This checks the whole set of coefficients at once.
"""

from rademacher import coefficient_index, partition_counts, reconstruct_check, taylor_expand
from rademacher.engine import EXACT, build_triangle

N = 10
print("terms in the decomposition:", len(coefficient_index(N)))
print("p_10(n), n <= 12:", [partition_counts(N, 12).p(N, n) for n in range(13)])

# working precision controls the residual, not the exact coefficients
for bits in (128, 256, 512):
    print(bits, "bits: max error", reconstruct_check(N, 30, bits))

# the recurrence agrees with a direct Taylor expansion at a root of order 5
tri = build_triangle(2, 5, 20, EXACT)
direct = taylor_expand(2, 5, 20, 3)
print([tri.coeff(4 - r, 20) == direct[r] for r in range(4)])
