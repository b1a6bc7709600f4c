"""
Resistances and Kirchhoff indices
=================================

Treat every edge as a unit resistor. The effective resistance between two
nodes of S_q(G) again comes from G alone, and so do the Kirchhoff index and
its two degree-weighted variants.
"""

# %%
import numpy as np

from subdivlab import (
    additive_dk_transfer,
    foster_sum,
    hitting_matrix_spectral,
    indices_from_resistance,
    kirchhoff_transfer,
    multiplicative_dk_transfer,
    q_subdivide,
    resistance_matrix_transfer,
    resistance_metrics,
    resistance_pinv_oracle,
)
from subdivlab.corpus import complete

g = complete(4)
res = resistance_metrics(g)
print("K4 resistances are all", res.resistance[0, 1])
print("K4 indices:", res.indices)

# %%
# Resistances on S_3(K4), predicted versus the Laplacian pseudoinverse.
q = 3
h, smap = q_subdivide(g, q)
R = resistance_matrix_transfer(res, smap, q)
print("max deviation from pseudoinverse:", np.max(np.abs(R - resistance_pinv_oracle(h))))

# %%
# Foster's theorem: edge resistances add up to n - 1.
print("Foster sum", foster_sum(h, R), "vs n - 1 =", h.n - 1)

# %%
# Commute times are 2m times resistances.
T = hitting_matrix_spectral(h)
print("commute identity error:", np.max(np.abs(2 * h.m * R - (T + T.T))))

# %%
# The three indices of S_3(K4), predicted and brute-force.
brute = indices_from_resistance(h, R)
K, Ka, Kt = res.indices
print("Kirchhoff     ", kirchhoff_transfer(K, Ka, Kt, g.m, g.n, q), brute.kirchhoff)
print("additive      ", additive_dk_transfer(Ka, Kt, g.m, g.n, q), brute.additive_dk)
print("multiplicative", multiplicative_dk_transfer(Kt, g.m, g.n, q), brute.multiplicative_dk)
