"""
Strongly regular families
=========================

For a strongly regular graph the average mixing diagonal is
(1 + m_theta^2 + m_tau^2) / n^2. Orthogonal-array graphs with few columns
have one dominant multiplicity and stay at home; conference graphs do not.
"""

import numpy as np

import stayhome as sh
from stayhome.families import conference_sweep, oa_sweep, steiner_spectrum
from stayhome.io import FAMILY_HEADER, csv_text

rook = sh.oa_graph(sh.oa_cyclic(2, 3))
p = sh.srg_recognize(rook)
print("rook graph parameters:", p.as_tuple(), "spectrum:", sh.srg_spectrum(p))
print("identity residual (exact):", p.multiplicity_identity_residual())

# %%
# OA(2, n): the diagnostic crosses the stay-at-home threshold as n grows.
print(csv_text(FAMILY_HEADER, oa_sweep(2, range(3, 17, 2)), digits=6))

# %%
# Conference graphs sit just below 1/2, where the floor 2 Mhat - 1 says nothing.
print(csv_text(FAMILY_HEADER, conference_sweep(range(5, 42)), digits=6))

# %%
# Block graph of the affine plane of order 3.
g = sh.steiner_block_graph(sh.affine_plane_ag23())
print("AG(2,3) block graph:", sh.srg_recognize(g).as_tuple(), steiner_spectrum(9, 3))

# %%
# Open experiment: do conference graphs keep M(t)[a,a] away from zero? The
# pentagon and the 3x3 rook graph are the two small conference graphs at hand.
for name, g in (("C5", sh.cycle(5)), ("rook 3x3", rook)):
    rep = sh.stay_at_home_report(g, np.linspace(0, 200, 20001))
    print(f"{name}: min over t in [0, 200] of M(t)[a,a] = {rep.min_diagonal:.6f}")
