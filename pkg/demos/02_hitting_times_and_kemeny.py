"""
Hitting times on a subdivided cycle
===================================

Every hitting time of S_q(G) is a short expression in hitting times of G.
Here G is the 5-cycle; the subdivided graph's times come out of the transfer
formulas and are checked against the absorbing-chain linear system.
"""

# %%
import numpy as np

from subdivlab import (
    graph_spectrum,
    hitting_matrix_oracle,
    hitting_matrix_transfer,
    kemeny_spectral,
    kemeny_transfer,
    q_subdivide,
    walk_metrics,
)
from subdivlab.corpus import cycle

g = cycle(5)
wm = walk_metrics(g)
print("hitting times on C5 from node 0:", wm.hitting[0])
print("Kemeny constant of C5:", wm.kemeny)

# %%
# Old-to-old times are simply multiplied by four; the rest mix in 2mq.
for q in (1, 2, 3):
    h, smap = q_subdivide(g, q)
    T = hitting_matrix_transfer(wm, smap, g, q)
    err = np.max(np.abs(T - hitting_matrix_oracle(h)))
    x = smap.node_index(q, 0)
    print(f"q={q}: T(0,2)={T[0, 2]:.3f}  T(new {x} -> 2)={T[x, 2]:.3f}  T(2 -> new {x})={T[2, x]:.3f}  "
          f"max error vs linear solve {err:.1e}")

# %%
# The Kemeny constant grows as 4 K(G) plus a term linear in q.
for q in range(1, 6):
    h, _ = q_subdivide(g, q)
    predicted = kemeny_transfer(wm.kemeny, g.m, g.n, q)
    print(f"q={q}: predicted {predicted:.6f}   from spectrum {kemeny_spectral(graph_spectrum(h)):.6f}")
