"""
Staying at home on a complete graph
===================================

A walker started on a vertex of K_n barely moves: every off-diagonal entry of
U(t) is at most 2/n in modulus, for all time.
"""

import numpy as np

import stayhome as sh

# The spectrum of K_n is n-1 (once) and -1 (n-1 times), so U(t) is a
# combination of J/n and I - J/n with unimodular coefficients.
for n in (5, 10, 100):
    g = sh.complete(n)
    rep = sh.stay_at_home_report(g, np.linspace(0, 2 * np.pi, 512))
    print(f"K_{n}: min M(t)[a,a] = {rep.min_diagonal:.6f}, "
          f"max |U(t)[a,b]| = {rep.max_off_diagonal:.6f} (2/n = {2 / n:.6f})")

# %%
# The average mixing matrix gives a time-independent floor, 2 Mhat[a,a] - 1.
# For K_100 it is already above 0.96.
g = sh.complete(100)
print("average-mixing floor:", sh.diag_lower_from_average(g, 0))

# %%
# Complements of regular graphs inherit the same behaviour up to a rank-one
# correction of size 2/n. The Petersen graph and its complement:
p = sh.petersen()
grid = np.linspace(0, 2 * np.pi, 256)
print("complement residual:", sh.complement_residual(p, grid), "<=", 2 / p.n)
