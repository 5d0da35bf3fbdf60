"""The standard verification ensemble of graphs and potentials."""

from .graph import Problem, gen_family, spike_potential, uniform_potential
from .rng import derive_seed

POTENTIALS = ("zero", "uniform", "spike")


def family_specs():
    """Graph descriptors of the standard ensemble, in a fixed order."""
    specs = []
    for n in range(2, 13):
        specs.append({"family": "path", "n": n})
        if n >= 3:
            specs.append({"family": "cycle", "n": n})
        specs.append({"family": "complete", "n": n})
    for r in range(2, 6):
        for c in range(2, 6):
            specs.append({"family": "grid", "rows": r, "cols": c})
    for n in (10, 20, 40):
        for p in (0.1, 0.3, 0.6):
            for seed in range(50):
                specs.append({"family": "erdos_renyi", "n": n, "p": p, "seed": seed})
    return specs


def label(spec):
    return "-".join(f"{k}={v}" if k != "family" else str(v) for k, v in spec.items())


def potential_for(kind, spec, n):
    if kind == "zero":
        return (0.0,) * n
    if kind == "uniform":
        key = [ord(ch) for ch in label(spec)]
        return uniform_potential(n, 0.0, 5.0, derive_seed(*key))
    if kind == "spike":
        return spike_potential(n, 10.0, at=0)
    raise ValueError(f"unknown potential kind {kind!r}")


def standard_corpus():
    """Yield every problem of the ensemble: each graph with each potential model."""
    for spec in family_specs():
        g = gen_family(spec)
        for kind in POTENTIALS:
            yield Problem(g, potential_for(kind, spec, g.n), f"{label(spec)}/{kind}")
