import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from agmon.graph import Problem, build_graph, gen_family, uniform_potential
from agmon.metric import (
    agmon_field,
    node_weighted_distance,
    rho,
    rho1,
    rho1_oracle,
    rho_matrix,
    walk_cost,
)
from agmon.rng import SplitMix64

LOG3 = math.log(3.0)


@pytest.fixture
def f3(p3):
    return agmon_field(p3, 1.0)


def test_field_examples(p3):
    f = agmon_field(p3, 1.0)
    assert list(f.excess) == [2.0, 0.0, 0.0]
    assert f.weight == pytest.approx([LOG3, 0.0, 0.0], abs=1e-15)
    assert f.partition.allowed == (1, 2)
    f = agmon_field(p3, 3.0)
    assert not f.excess.any() and not f.weight.any()
    k3 = Problem(gen_family({"family": "complete", "n": 3}), [4.0, 0.0, 0.0])
    f = agmon_field(k3, 1.0)
    assert list(f.excess) == [1.5, 0.0, 0.0]
    assert f.weight[0] == pytest.approx(math.log(2.5), abs=1e-15)


def test_field_zero_exactly_on_allowed_region():
    g = gen_family({"family": "grid", "rows": 3, "cols": 3})
    p = Problem(g, uniform_potential(9, 0.0, 5.0, 11))
    for e in (0.5, 2.5, p.potential[4]):
        f = agmon_field(p, e)
        allowed = np.zeros(9, dtype=bool)
        allowed[list(f.partition.allowed)] = True
        assert np.array_equal(f.excess == 0, allowed)
        assert np.array_equal(f.weight == 0, allowed)


def test_node_weighted_distance_examples(f3):
    assert node_weighted_distance(f3, 0) == pytest.approx([0.0, LOG3, LOG3], abs=1e-15)
    c4 = Problem(gen_family({"family": "cycle", "n": 4}), [6.0, 0.0, 0.0, 0.0])
    f = agmon_field(c4, 0.0)
    a = math.log1p(3.0)
    assert node_weighted_distance(f, 0) == pytest.approx([0.0, a, a, a], abs=1e-15)
    flat = agmon_field(c4, 10.0)
    assert not node_weighted_distance(flat, 2).any()


def test_rho1_examples(f3):
    r = rho1(f3, 0, 2)
    assert r.value == pytest.approx(LOG3, abs=1e-12)
    assert r.witness == (0, 1)
    r = rho1(f3, 2, 0)
    assert r.value == pytest.approx(LOG3, abs=1e-12)
    assert r.witness == (2, 1, 0)
    r = rho1(f3, 0, 0)
    assert r.value == pytest.approx(2 * LOG3, abs=1e-12)
    assert r.witness == (0, 1, 0)


def test_rho1_zero_field(p3):
    f = agmon_field(p3, 5.0)
    assert all(rho1(f, u, v).value == 0.0 for u in range(3) for v in range(3))


def test_rho_examples(f3):
    assert rho(f3, 1, 2).value == 0.0 and rho(f3, 1, 2).witness == ()
    assert rho(f3, 0, 2).value == pytest.approx(LOG3, abs=1e-12)
    assert rho(f3, 0, 1).value == pytest.approx(LOG3, abs=1e-12)


def test_strict_mode_examples(f3):
    # only vertex 0 is forbidden, so no walk can return to it through F
    assert rho1(f3, 0, 0, "strict").value == math.inf
    assert rho(f3, 0, 0, "strict").value == math.inf
    assert rho(f3, 0, 2, "strict").value == pytest.approx(LOG3, abs=1e-12)
    assert rho1(f3, 1, 0, "strict").value == math.inf


def test_rho_matrix_examples(f3, p3):
    m = rho_matrix(f3)
    expected = [[2 * LOG3, LOG3, LOG3], [LOG3, 0, 0], [LOG3, 0, 0]]
    assert np.allclose(m, expected, atol=1e-12, rtol=0)
    assert np.array_equal(m, m.T)
    assert not rho_matrix(agmon_field(p3, 7.0)).any()


def test_oracle_examples(f3, p3):
    assert rho1_oracle(f3, 0, 2) == pytest.approx(LOG3, abs=1e-12)
    assert rho1_oracle(f3, 0, 0) == pytest.approx(2 * LOG3, abs=1e-12)
    assert rho1_oracle(agmon_field(p3, 9.0), 2, 0) == 0.0
    star = Problem(build_graph(4, [(0, 1), (0, 2), (0, 3)]), [0.0, 0.0, 0.0, 5.0])
    f = agmon_field(star, 1.0)
    for mode in ("literal", "strict"):
        for u in range(4):
            for v in range(4):
                assert rho1(f, u, v, mode).value == rho1_oracle(f, u, v, mode)


def test_bad_mode(f3):
    with pytest.raises(ValueError):
        rho(f3, 0, 1, "loose")


# -- properties ------------------------------------------------------------

def _random_problem(n, p, seed, lo=0.0, hi=5.0):
    g = gen_family({"family": "erdos_renyi", "n": n, "p": p, "seed": seed, "max_retries": 10**5})
    return Problem(g, uniform_potential(n, lo, hi, seed + 1))


problems = st.builds(
    _random_problem,
    n=st.integers(2, 12),
    p=st.floats(0.15, 1.0),
    seed=st.integers(0, 10**6),
)
energies = st.floats(-1.0, 6.0)


@settings(max_examples=60, deadline=None)
@given(p=problems, e=energies)
def test_metric_properties(p, e):
    f = agmon_field(p, e)
    forb = f.forbidden_mask
    lit = rho_matrix(f, "literal")
    strict = rho_matrix(f, "strict")
    for m in (lit, strict):
        assert np.array_equal(m, m.T)
        assert np.all(m >= 0)
        assert not m[np.ix_(~forb, ~forb)].any()
    assert np.all(lit <= strict)
    assert np.all(np.isfinite(lit))
    for mode, m in (("literal", lit), ("strict", strict)):
        for u in range(p.n):
            for v in range(p.n):
                a, b = rho(f, u, v, mode).value, rho(f, v, u, mode).value
                assert a == b
                if math.isinf(a):
                    assert math.isinf(m[u, v])
                else:
                    assert abs(a - m[u, v]) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(p=problems, e=energies, mode=st.sampled_from(["literal", "strict"]))
def test_witness_validity(p, e, mode):
    f = agmon_field(p, e)
    adj = p.graph.adjacency
    for u in range(p.n):
        for v in range(p.n):
            r = rho1(f, u, v, mode)
            if math.isinf(r.value):
                assert r.witness == ()
                continue
            walk = r.witness
            assert walk[0] == u and len(walk) >= 2
            assert all(b in adj[a] for a, b in zip(walk, walk[1:]))
            assert f.excess[walk[-1]] >= f.excess[v]
            if mode == "strict":
                assert all(f.forbidden_mask[x] for x in walk[:-1])
            assert abs(walk_cost(f, walk, v) - r.value) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(p=problems, e=energies, c=st.sampled_from([-3.0, 1.5, 10.0]))
def test_shift_invariance(p, e, c):
    assume(min(abs(w - e) for w in p.potential) > 1e-9)
    f = agmon_field(p, e)
    g = agmon_field(Problem(p.graph, [w + c for w in p.potential]), e + c)
    assert np.allclose(f.excess, g.excess, atol=1e-12, rtol=0)
    assert np.allclose(f.weight, g.weight, atol=1e-12, rtol=0)
    for mode in ("literal", "strict"):
        a, b = rho_matrix(f, mode), rho_matrix(g, mode)
        assert np.array_equal(np.isinf(a), np.isinf(b))
        fin = np.isfinite(a)
        assert np.abs(a[fin] - b[fin]).max(initial=0.0) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(p=problems, e=energies, data=st.data())
def test_monotone_under_potential_increase(p, e, data):
    x = data.draw(st.integers(0, p.n - 1))
    bump = data.draw(st.floats(0.01, 5.0))
    f = agmon_field(p, e)
    w2 = list(p.potential)
    w2[x] += bump
    g = agmon_field(Problem(p.graph, w2), e)
    for mode in ("literal", "strict"):
        for u in range(p.n):
            for v in range(p.n):
                if x in (u, v):
                    continue
                thresholds = (f.excess[u], f.excess[v])
                # x must not enter or leave either terminal set
                if any((f.excess[x] >= t) != (g.excess[x] >= t) for t in thresholds):
                    continue
                # strict mode also depends on x's region
                if mode == "strict" and f.forbidden_mask[x] != g.forbidden_mask[x]:
                    continue
                assert rho(g, u, v, mode).value >= rho(f, u, v, mode).value - 1e-12


def _atlas_problems(seed):
    rng = SplitMix64(seed)
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if n < 2 or n > 5 or not nx.is_connected(nxg):
            continue
        g = build_graph(n, list(nxg.edges()))
        w = [rng.uniform(0.0, 5.0) for _ in range(n)]
        yield Problem(g, w), (rng.uniform(0.0, 5.0), w[int(rng.random() * n)])


def test_oracle_agreement_small_atlas():
    for p, es in _atlas_problems(7):
        for e in es:
            f = agmon_field(p, e)
            for mode in ("literal", "strict"):
                for u in range(p.n):
                    for v in range(p.n):
                        a = rho1(f, u, v, mode).value
                        b = rho1_oracle(f, u, v, mode)
                        assert a == b or abs(a - b) <= 1e-12


def test_oracle_needs_revisits(f3):
    # the 0 ~ 1 ~ 0 walk has 2 edges; forbidding revisits would give inf
    assert rho1_oracle(f3, 0, 0, max_edges=1) == math.inf
    assert rho1_oracle(f3, 0, 0, max_edges=2) == pytest.approx(2 * LOG3, abs=1e-12)
