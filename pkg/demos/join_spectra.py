"""
Spectral decomposition of a join
================================

The join of a k-regular graph on m vertices with an ell-regular graph on n
vertices keeps every non-principal eigenvalue of both sides and replaces the
two valencies with the eigenvalues of the 2x2 quotient [[k, n], [m, ell]].
"""

import numpy as np

import stayhome as sh

x, y = sh.cycle(5), sh.complete(3)
data = sh.join_decomposition(x, y)
print("quotient eigenvalues:", data.mu1, data.mu2, "discriminant", data.delta)
for term in data.terms():
    print(f"  {term.eigenvalue:+.6f}  rank {np.trace(term.idempotent):.0f}  from {term.source}")

# %%
# Compare with a plain numerical eigendecomposition of the joined graph.
closed = data.as_decomposition()
numeric = sh.decompose(sh.join(x, y))
print("max idempotent difference:", np.abs(closed.idempotents - numeric.idempotents).max())

# %%
# The closed forms give U(t) entries directly. Between the two sides the
# entry only depends on the quotient eigenvalues.
t = np.linspace(0, 3, 7)
U = sh.transition_matrices(sh.join(x, y), t)
formula = sh.join_apex_entry(2, 2, 5, 3, t)
print("cross entries agree:", np.allclose(U[:, 0, 5], formula))

# %%
# A disconnected side (here two edges) has a repeated valency eigenvalue. One
# copy is absorbed by the quotient and the rest is kept as a split idempotent.
star_like = sh.join_decomposition(sh.complete(1), sh.disjoint_copies(2, 2))
print("terms:", len(star_like.terms()), "split:", [t.split for t in star_like.inherited])
