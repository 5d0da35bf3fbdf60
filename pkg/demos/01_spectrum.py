"""
Spectrum of a Schrodinger operator on a graph
=============================================

Build ``H = L + diag(W)`` on a 4 x 4 grid with a seeded random potential,
diagonalise it with the in-house Jacobi solver and compare with LAPACK.
"""

import numpy as np

from agmon import Problem, gen_family, solve
from agmon.graph import uniform_potential
from agmon.spectral import assemble_operator, partition_regions

g = gen_family({"family": "grid", "rows": 4, "cols": 4})
p = Problem(g, uniform_potential(g.n, 0.0, 5.0, seed=11), name="grid4x4")
pairs = solve(p)

# energies agree with numpy's symmetric solver to rounding
lam = np.array([e.energy for e in pairs])
print("energies:", np.round(lam, 6))
print("max |lam - eigvalsh|:", np.abs(lam - np.linalg.eigvalsh(assemble_operator(p))).max())
print("max residual:", max(e.residual for e in pairs))

# the ground state sees a small allowed region; the top state sees all of V
for k in (0, g.n - 1):
    part = partition_regions(p, pairs[k].energy)
    print(f"state {k}: E={pairs[k].energy:.4f} allowed={part.allowed}")
