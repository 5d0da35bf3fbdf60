"""
Checking the decay bound on a random graph
==========================================

``verify_problem`` compares ``min(|phi(u)|, |phi(v)|)`` with
``||phi||_inf exp(-rho(u, v))`` for every eigenpair and ordered pair, and
reports the tightness ratio ``lhs / rhs`` over pairs with ``rho > 0``.
"""

from agmon import Problem, gen_family, verify_problem
from agmon.graph import spike_potential
from agmon.verify import region_pair
from agmon.metric import agmon_field

g = gen_family({"family": "erdos_renyi", "n": 20, "p": 0.3, "seed": 4})
p = Problem(g, spike_potential(g.n, 10.0), name="er20-spike")
report = verify_problem(p)

print("eigenpairs:", len(report.eigenpairs))
print("max principle holds for all:", all(s.max_principle_holds for s in report.eigenpairs))
print("tightness:", report.tightness)
print("violations:", len(report.violations))
for c in report.violations[:5]:
    e = report.eigenpairs[c.eigen_index].energy
    part = agmon_field(p, e).partition
    print(f"  k={c.eigen_index} u={c.u} v={c.v} {region_pair(part, c.u, c.v)} "
          f"ratio={c.ratio:.3f} walk={c.witness}")
