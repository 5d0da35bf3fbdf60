"""Two-point Agmon distance on a graph at a fixed energy.

For a vertex ``x`` write ``q(x) = (W(x) - E)_+ / deg(x)`` and
``w(x) = log(1 + q(x))``. The one-sided distance ``rho1(u, v)`` is ``w(v)``
plus the cheapest node-weighted walk ``u = v_1 ~ ... ~ v_{l+1}`` (``l >= 1``,
weights of ``v_1..v_l`` summed) whose last vertex satisfies
``q(v_{l+1}) >= q(v)``. The symmetric distance is ``min(rho1(u, v),
rho1(v, u))``, forced to zero when both endpoints lie in the allowed region.

Two modes are supported. ``"literal"`` places no constraint on the interior
of the walk; ``"strict"`` requires ``v_1..v_l`` to lie in the forbidden
region, so infeasible pairs get ``inf``.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .spectral import partition_regions

__all__ = [
    "MODES",
    "AgmonField",
    "DistanceResult",
    "agmon_field",
    "node_weighted_distance",
    "rho1",
    "rho",
    "rho_matrix",
    "rho1_oracle",
    "walk_cost",
]

MODES = ("literal", "strict")
INF = math.inf


@dataclass(frozen=True, eq=False)
class AgmonField:
    energy: float
    excess: np.ndarray
    weight: np.ndarray
    partition: object
    graph: object

    @property
    def forbidden_mask(self):
        mask = np.zeros(self.graph.n, dtype=bool)
        mask[list(self.partition.forbidden)] = True
        return mask


@dataclass(frozen=True)
class DistanceResult:
    value: float
    witness: tuple
    mode: str


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def agmon_field(p, energy):
    """Normalised excess ``q`` and node weight ``w`` at ``energy``."""
    w_pot = p.potential_array()
    deg = np.asarray(p.graph.degrees, dtype=float)
    q = np.maximum(w_pot - energy, 0.0) / deg
    return AgmonField(
        energy=float(energy),
        excess=q,
        weight=np.log1p(q),
        partition=partition_regions(p, energy),
        graph=p.graph,
    )


def _search(f, source, mode):
    """Label-setting search; leaving vertex ``x`` costs ``w(x)``.

    Returns distances, predecessors and edge counts of the recorded walks.
    In strict mode only forbidden vertices may be entered or left.
    """
    n = f.graph.n
    adj = f.graph.adjacency
    w = f.weight
    dist = [INF] * n
    pred = [-1] * n
    hops = [0] * n
    if mode == "strict":
        usable = f.forbidden_mask
        if not usable[source]:
            return dist, pred, hops
    else:
        usable = None
    dist[source] = 0.0
    done = [False] * n
    heap = [(0.0, source)]
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        step = d + w[x]
        for y in adj[x]:
            if usable is not None and not usable[y]:
                continue
            if step < dist[y]:
                dist[y] = step
                pred[y] = x
                hops[y] = hops[x] + 1
                heapq.heappush(heap, (step, y))
    return dist, pred, hops


def node_weighted_distance(f, source, mode="literal"):
    """Cheapest walk cost from ``source`` to every vertex.

    The cost of a walk ``x_1 ~ ... ~ x_k`` is ``w(x_1) + ... + w(x_{k-1})``.
    """
    _check_mode(mode)
    dist, _, _ = _search(f, source, mode)
    return np.array(dist)


def _path_to(pred, source, target):
    path = [target]
    while path[-1] != source:
        path.append(pred[path[-1]])
    return path[::-1]


def rho1(f, u, v, mode="literal"):
    """One-sided distance from ``u`` with stopping threshold ``q(v)``.

    Equal-cost candidates are ordered by walk length, then terminal index,
    then index of the vertex before the terminal.
    """
    _check_mode(mode)
    dist, pred, hops = _search(f, u, mode)
    q, w = f.excess, f.weight
    adj = f.graph.adjacency
    strict = mode == "strict"
    if strict:
        forb = f.forbidden_mask
    best, best_key, best_tp = INF, None, None
    threshold = q[v]
    for t in range(f.graph.n):
        if q[t] < threshold:
            continue
        for p in adj[t]:
            if strict and not forb[p]:
                continue
            c = dist[p] + w[p]
            if c == INF:
                continue
            key = (c, hops[p], t, p)
            if best_key is None or key < best_key:
                best, best_key, best_tp = c, key, (t, p)
    if best_tp is None:
        return DistanceResult(INF, (), mode)
    t, p = best_tp
    walk = tuple(_path_to(pred, u, p)) + (t,)
    return DistanceResult(float(w[v] + best), walk, mode)


def rho(f, u, v, mode="literal"):
    """Symmetric two-point distance; zero on allowed x allowed pairs."""
    _check_mode(mode)
    forb = f.forbidden_mask
    if not forb[u] and not forb[v]:
        return DistanceResult(0.0, (), mode)
    a = rho1(f, u, v, mode)
    b = rho1(f, v, u, mode)
    return a if a.value <= b.value else b


def walk_cost(f, walk, target):
    """Recompute ``w(target) + sum of w over all but the last walk vertex``."""
    return float(f.weight[target] + sum(f.weight[x] for x in walk[:-1]))


def rho_matrix(f, mode="literal"):
    """All pairwise distances at once.

    Uses Floyd-Warshall on node weights instead of one search per pair, so
    entries agree with :func:`rho` up to floating-point association
    (well below 1e-12 for moderate graphs). The result is exactly symmetric.
    """
    _check_mode(mode)
    n = f.graph.n
    q, w = f.excess, f.weight
    adj = f.graph.adjacency_matrix()
    forb = f.forbidden_mask
    step_ok = adj.copy()
    if mode == "strict":
        step_ok &= forb[:, None] & forb[None, :]
    dist = np.where(step_ok, w[:, None], INF)
    diag = np.zeros(n) if mode == "literal" else np.where(forb, 0.0, INF)
    dist[np.diag_indices(n)] = np.minimum(dist.diagonal(), diag)
    for k in range(n):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    # arrive[u, t]: cheapest walk u ~ ... ~ p ~ t with at least one edge
    leave = dist + w[None, :]
    last_ok = adj if mode == "literal" else adj & forb[:, None]
    arrive = np.where(last_ok[None, :, :], leave[:, :, None], INF).min(axis=1)
    term = q[:, None] >= q[None, :]
    r1 = w[None, :] + np.where(term[None, :, :], arrive[:, :, None], INF).min(axis=1)
    out = np.minimum(r1, r1.T)
    out[np.ix_(~forb, ~forb)] = 0.0
    return out


def rho1_oracle(f, u, v, mode="literal", max_edges=None):
    """Brute-force ``rho1`` by depth-first enumeration of walks from ``u``.

    Every walk of at most ``max_edges`` edges (default ``n + 3``) is
    considered; branches whose partial cost already reaches the best value
    found are pruned, which is exact because all weights are nonnegative.
    """
    _check_mode(mode)
    n = f.graph.n
    if max_edges is None:
        max_edges = n + 3
    q = [float(x) for x in f.excess]
    w = [float(x) for x in f.weight]
    adj = f.graph.adjacency
    forb = [bool(x) for x in f.forbidden_mask]
    strict = mode == "strict"
    wv, qv = w[v], q[v]
    best = INF

    def dfs(x, cost, edges):
        nonlocal best
        if strict and not forb[x]:
            return
        step = cost + w[x]
        if step + wv >= best:
            return
        for y in adj[x]:
            if q[y] >= qv and step + wv < best:
                best = step + wv
            if edges + 1 < max_edges:
                dfs(y, step, edges + 1)

    dfs(u, 0.0, 0)
    return best
