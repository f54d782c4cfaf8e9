"""
Multiplicative averages over the family
=======================================

As n varies, the normalized coefficients a_n(m) equidistribute: their
family averages delta(m), delta(l, m) have closed forms supported on
squares and on balanced prime patterns.  Shifted Euler factors built
from these averages drive the moment predictions.
"""

from hecke7 import moments
from hecke7.specfun import PrecisionContext

ctx = PrecisionContext(30)

# <a_n(m)>: nonzero only at squares, where it is a Legendre symbol.
print(" m   delta(m)   empirical at N = 4000")
for m in (1, 2, 4, 9, 16, 25, 30):
    emp = moments.empirical_delta_oracle(m, 1, 4000)
    print(f"{m:3d}  {moments.delta_one(m):+d}         {emp:+.4f}")

# <a_n(l) a_n(m)>: the diagonal carries min(a,b)+1 at split primes.
print("\npairs (l, m) and delta(l, m):")
for l, m in ((2, 2), (4, 4), (2, 8), (3, 3), (9, 9), (7, 7), (6, 6)):
    emp = moments.empirical_delta_oracle(m, l, 4000)
    print(f"  ({l:2d},{m:2d}): closed {moments.delta_two(l, m):+d}, empirical {emp:+.4f}")

# Local Euler factors of sum delta(l,m) l^(-1/2-a) m^(-1/2-b): closed
# forms vs brute-force truncated double sums.
print("\nlocal factors at zero shifts:")
for p in (2, 3, 5, 7):
    v = moments.local_factor(p, 0, 0, mode="brute", cutoff=120, ctx=ctx)
    print(f"  p = {p}: closed {complex(v.closed).real:.10f}, "
          f"|closed - brute| = {float(abs(v.closed - v.brute)):.2e}")

# With shifts the product over primes converges (slowly, at the edge of
# the critical strip) to F(alpha, beta) zeta(1 + alpha + beta).
a, b = 0.1, 0.05
target = moments.F_shift(a, b, ctx)
import mpmath
with mpmath.mp.workdps(30):
    target = target * mpmath.zeta(1 + a + b)
    for P in (1000, 10000, 100000):
        prod = moments.delta_series_product(a, b, P, ctx)
        print(f"P = {P:6d}: |product - F zeta| = {float(abs(prod - target)):.4f}")
