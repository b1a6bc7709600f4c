"""
Simulated walks
===============

A Monte Carlo estimate of a hitting time is a blunt but independent check
on the formulas. Each walk draws its steps from a counter-based hash of
(seed, walk, step), so runs are reproducible and any subset of walks can be
re-simulated on its own.
"""

# %%
import numpy as np

from subdivlab import build_lattice, hitting_oracle, mc_hitting
from subdivlab.corpus import complete, cycle
from subdivlab.oracles import walk_lengths

cases = [("K3", complete(3), 0, 2), ("C6", cycle(6), 0, 3), ("H_2,2 hubs", build_lattice(2, 2), 0, 1)]
for name, g, i, j in cases:
    exact = hitting_oracle(g, j)[i]
    est = mc_hitting(g, i, j, walks=100_000, seed=7)
    z = (est.estimate - exact) / est.stderr
    print(f"{name:12s} exact {exact:8.4f}  estimate {est.estimate:8.4f} +- {est.stderr:.4f}  z = {z:+.2f}")

# %%
# Walk 41 takes the same path whether it runs alone or among thousands.
g = cycle(6)
alone = walk_lengths(g, 0, 3, np.array([41]), seed=7)
crowd = walk_lengths(g, 0, 3, np.arange(5000), seed=7)
print(alone[0], crowd[41])
