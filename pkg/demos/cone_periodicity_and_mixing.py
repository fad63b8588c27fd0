"""
The apex of a cone
==================

Adding a vertex joined to every vertex of an ell-regular graph Y gives a cone.
The apex only sees two eigenvalues, (ell +- sqrt(ell^2 + 4n))/2, so it is
periodic, and for small ell it also mixes uniformly at one instant.
"""

import numpy as np

import stayhome as sh

# Cone over the 4-cycle: Delta = 4 + 16 = 20, period 2 pi / sqrt(20).
c4 = sh.cycle(4)
info = sh.cone_analysis(2, 4)
print("period", info.period, "phase angle / pi", info.phase_angle / np.pi,
      "root of unity:", info.root_of_unity)

res = sh.periodicity_check(sh.cone(c4), 0, np.linspace(0, 2, 400))
print("scan found return at", res.time, "with |U_aa| =", abs(res.phase))

# %%
# Uniform mixing from the apex happens when ell <= 2. Check a few bases and
# print the largest deviation from 1/(n+1).
for y in (sh.empty(3), sh.disjoint_copies(2, 2), sh.cycle(4), sh.cycle(5)):
    cert = sh.verify_apex_uniform_mixing(y)
    print(f"{y!r}: t* = {cert.time:.10f}, deviation {cert.max_deviation:.2e}")

# %%
# For the Petersen base (ell = 3) the existence test returns nothing, and the
# apex never drops below ell^2 / (ell^2 + 4n) = 9/49.
pet = sh.cone_analysis(3, 10)
print("uniform mixing time:", pet.uniform_mixing_time, " return bound:", pet.return_bound)
rep = sh.stay_at_home_report(sh.cone(sh.petersen()))
print("apex minimum over the default grid:", rep.diag_min_by_vertex[0])
