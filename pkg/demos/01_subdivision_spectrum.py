"""
Spectrum of a q-subdivision
===========================

Subdividing every edge of a graph q times doubles the walk's period and
folds the old spectrum onto a new one: each eigenvalue ``lam`` of the
normalized adjacency matrix of G becomes the pair ``+-sqrt((1 + lam)/2)``,
and everything else piles up at zero.
"""

# %%
# Start from the Petersen graph and its 2-subdivision.
import numpy as np

from subdivlab import graph_spectrum, kernel_basis, q_subdivide, transfer_spectrum, zero_multiplicity
from subdivlab.corpus import petersen

g = petersen()
h, smap = q_subdivide(g, 2)
print(g, "->", h)
print("new node", smap.node_index(2, 0), "sits on edge", smap.parent(smap.node_index(2, 0))[:2])

# %%
# The base spectrum has three distinct values: 1, 1/3 (five times) and -2/3 (four times).
spec_g = graph_spectrum(g)
print(np.round(spec_g.eigenvalues, 6))

# %%
# Build the spectrum of S_2(G) from it, without touching S_2(G)'s matrix.
built = transfer_spectrum(spec_g, g, 2, kernel_basis(g, 2))
direct = graph_spectrum(h)
print("largest eigenvalue gap:", np.max(np.abs(built.eigenvalues - direct.eigenvalues)))

# %%
# The zero eigenvalue has multiplicity mq - n (the Petersen graph is not
# bipartite, so there is no +2).
print("zeros:", zero_multiplicity(direct), "expected", g.m * 2 - g.n)

# %%
# Distinct non-zero eigenvalues of the subdivision, next to their predicted values.
for lam in (1.0, 1 / 3, -2 / 3):
    mu = np.sqrt((1 + lam) / 2)
    hits = int(np.sum(np.abs(direct.eigenvalues - mu) < 1e-9))
    print(f"lam = {lam:+.4f} -> +-{mu:.6f}  (found {hits} copies of +{mu:.6f})")
