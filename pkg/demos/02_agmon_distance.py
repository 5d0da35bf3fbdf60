"""
The two-point Agmon distance
============================

On the path 0 - 1 - 2 with ``W = [3, 0, 0]`` and ``E = 1`` only vertex 0 is
forbidden. Its excess is ``q(0) = 2``, so each visit costs ``log 3``.
"""

import math

from agmon import Problem, agmon_field, gen_family, rho, rho_matrix
from agmon.metric import rho1_oracle

p = Problem(gen_family({"family": "path", "n": 3}), [3.0, 0.0, 0.0])
f = agmon_field(p, 1.0)
print("q =", [float(x) for x in f.excess])
print("w =", [float(x) for x in f.weight])

for u, v in [(0, 2), (0, 1), (0, 0), (1, 2)]:
    d = rho(f, u, v)
    print(f"rho({u},{v}) = {d.value:.15f}  walk {d.witness}  ({d.value / math.log(3):.0f} log 3)")

# the diagonal pair needs a walk that leaves 0 and comes back: 0 -> 1 -> 0
print("oracle rho1(0,0) =", rho1_oracle(f, 0, 0))

# strict mode keeps walk interiors in the forbidden region
print("literal matrix:\n", rho_matrix(f, "literal"))
print("strict matrix:\n", rho_matrix(f, "strict"))
