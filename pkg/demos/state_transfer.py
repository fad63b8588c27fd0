"""
Perfect state transfer
======================

U(t) e_a = gamma e_b moves a walker from a to b with certainty. The 4-cycle
does this between antipodal vertices at pi/2, and K2 between its two ends.
"""

import numpy as np

import stayhome as sh

c4 = sh.cycle(4)
res = sh.pst_detect(c4, 0, 2, np.linspace(0, np.pi, 200))
print("C4:", res.time, res.phase, "symmetry residual", res.symmetry_residual)

res = sh.pst_detect(sh.complete(2), 0, 1, np.linspace(0, np.pi, 200))
print("K2:", res.time, res.phase)

# %%
# The Petersen graph has no state transfer; the best amplitude seen is low.
res = sh.pst_detect(sh.petersen(), 0, 1, np.linspace(0, 20, 2048))
print("Petersen found:", res.found, "best |U[b,a]|:", round(res.best_amplitude, 4))

# %%
# The ratio condition explains why: a vertex can only be periodic when the
# differences of its support eigenvalues have rational ratios.
print(sh.ratio_condition([3, 1, -2]))
print(sh.ratio_condition([2, (-1 + 5 ** 0.5) / 2, (-1 - 5 ** 0.5) / 2]))
