"""
When both endpoints are forbidden
=================================

The bound can fail when ``u`` and ``v`` both lie in the forbidden region.
On the path with ``W = [3, 0, 0]`` the diagonal distance ``rho(0, 0)`` pays
the weight of vertex 0 twice along the walk ``0 -> 1 -> 0``, which demands
more decay at vertex 0 than the eigenvectors actually have. Pairs with an allowed endpoint are never violated.
"""

import math

import numpy as np

from agmon import Problem, agmon_field, gen_family, rho, solve
from agmon.verify import check_bound

p = Problem(gen_family({"family": "path", "n": 3}), [3.0, 0.0, 0.0])
for k, e in enumerate(solve(p)):
    f = agmon_field(p, e.energy)
    phi = np.abs(e.vector)
    print(f"state {k}: E={e.energy:.6f} |phi|={np.round(phi, 6)} forbidden={f.partition.forbidden}")
    if 0 in f.partition.forbidden:
        c = check_bound(p, e, 0, 0, eigen_index=k)
        print(f"  rho(0,0)={c.rho_value:.6f} (= {c.rho_value / math.log(3):.3f} log 3) "
              f"walk={rho(f, 0, 0).witness}")
        print(f"  |phi(0)|={c.lhs:.6f} > ||phi|| e^-rho={c.rhs:.6f}: holds={c.holds}")
