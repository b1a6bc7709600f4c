"""
Hierarchical lattices
=====================

Start from a single edge and q-subdivide it k times. The result H_{q,k} is a
scale-free fractal network; its Kemeny constant and Kirchhoff indices have
exact closed forms. Here we print them as rationals and check one generation
against brute-force numerics.
"""

# %%
import time

from subdivlab import (
    LatticeSpec,
    build_lattice,
    graph_spectrum,
    indices_from_resistance,
    iterated_values,
    kemeny_spectral,
    lattice_closed_forms,
    resistance_pinv_oracle,
)
from subdivlab.lattice import format_fraction, iterated_counts

for q in (2, 3):
    print(f"q = {q}")
    for k in range(5):
        n, m = iterated_counts(LatticeSpec.hierarchical(q, k))
        vals = lattice_closed_forms(q, k)
        print(f"  k={k}  n={n:5d}  m={m:5d}  " + "  ".join(format_fraction(v) for v in vals))

# %%
# The closed forms agree exactly with the general iterated formulas.
spec = LatticeSpec.hierarchical(2, 8)
print(lattice_closed_forms(2, 8) == iterated_values(spec))

# %%
# Numerics on H_{2,4}: 172 nodes, eigensolver plus pseudoinverse.
g = build_lattice(2, 4)
t0 = time.perf_counter()
kem = kemeny_spectral(graph_spectrum(g))
idx = indices_from_resistance(g, resistance_pinv_oracle(g))
exact = lattice_closed_forms(2, 4)
print(f"{g}: {time.perf_counter() - t0:.2f} s")
print("Kemeny   ", kem, float(exact.kemeny))
print("Kirchhoff", idx.kirchhoff, float(exact.kirchhoff))
