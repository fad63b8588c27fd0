"""
Average mixing and the PSD sandwich
===================================

The average mixing matrix Mhat is the sum of the entrywise squares of the
spectral idempotents. For every t, I - M(t) and M(t) - (2 Mhat - I) are
positive semidefinite, so M(t)[a,a] >= 2 Mhat[a,a] - 1.
"""

import numpy as np

import stayhome as sh

p = sh.petersen()
d = sh.decompose(p)
Mhat = sh.average_mixing(d)
print("Mhat diagonal:", np.round(np.diag(Mhat), 6))

margins = np.array([sh.psd_sandwich(d, t) for t in np.linspace(0, 2 * np.pi, 100)])
print("smallest eigenvalues over 100 times:", margins.min(axis=0))

# %%
# The Cesaro average really is Mhat: a trapezoid average over a long window.
T = 200 * np.pi
grid, dt = np.linspace(0, T, 40001, retstep=True)
M = np.abs(sh.transition_matrices(d, grid)) ** 2
avg = (M[1:] + M[:-1]).sum(axis=0) * dt / 2 / T
print("time average vs Mhat:", np.abs(avg - Mhat).max())

# %%
# K3 meets the lower end of the sandwich exactly at t = pi/3.
k3 = sh.complete(3)
print(np.round(sh.mixing_matrix(k3, np.pi / 3), 6))
print(np.round(2 * sh.average_mixing(k3) - np.eye(3), 6))

# %%
# Entries of U(t) never exceed sum_r |E_r[a,b]|.
print("Petersen adjacent-pair bound:", sh.abs_entry_bound(d, 0, int(np.flatnonzero(p.adj[0])[0])))
