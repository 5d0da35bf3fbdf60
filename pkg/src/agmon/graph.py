"""Graphs, Schrodinger problems, deterministic generators and problem files."""

import json
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .rng import SplitMix64

__all__ = [
    "Graph",
    "Problem",
    "GraphError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "IndexOutOfRangeError",
    "DisconnectedError",
    "TooSmallError",
    "GenerationFailed",
    "InvalidSpec",
    "ProblemFileError",
    "MalformedInput",
    "ValidationFailed",
    "LengthMismatch",
    "build_graph",
    "is_connected",
    "gen_family",
    "constant_potential",
    "uniform_potential",
    "spike_potential",
    "parse_problem",
    "serialize_problem",
]


class GraphError(ValueError):
    """Edge list does not describe a simple connected graph."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class IndexOutOfRangeError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class TooSmallError(GraphError):
    pass


class GenerationFailed(RuntimeError):
    pass


class InvalidSpec(ValueError):
    pass


class ProblemFileError(ValueError):
    pass


class MalformedInput(ProblemFileError):
    pass


class ValidationFailed(ProblemFileError):
    pass


class LengthMismatch(ProblemFileError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple connected graph on vertices ``0..n-1``.

    Build instances with :func:`build_graph`, which validates the invariants.
    """

    n: int
    adjacency: tuple
    degrees: tuple

    @property
    def edges(self):
        """Sorted edge list with ``i < j``."""
        return [(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j]

    def adjacency_matrix(self):
        a = np.zeros((self.n, self.n), dtype=bool)
        for i, nbrs in enumerate(self.adjacency):
            a[i, list(nbrs)] = True
        return a


@dataclass(frozen=True)
class Problem:
    graph: Graph
    potential: tuple
    name: str = None

    def __post_init__(self):
        pot = tuple(float(x) for x in self.potential)
        if len(pot) != self.graph.n:
            raise LengthMismatch(
                f"potential has {len(pot)} entries for n={self.graph.n}"
            )
        if not all(math.isfinite(x) for x in pot):
            raise ValueError("potential entries must be finite")
        object.__setattr__(self, "potential", pot)

    @property
    def n(self):
        return self.graph.n

    def potential_array(self):
        return np.array(self.potential, dtype=float)


def _bfs_reach(n, adjacency):
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        x = queue.popleft()
        for y in adjacency[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count


def is_connected(g):
    """True iff breadth-first search from vertex 0 reaches every vertex.

    Accepts a :class:`Graph` or anything with ``n`` and ``adjacency``.
    """
    if g.n == 0:
        return False
    return _bfs_reach(g.n, g.adjacency) == g.n


def build_graph(n, edges):
    """Validate an edge list and return a :class:`Graph`.

    Raises
    ------
    TooSmallError, IndexOutOfRangeError, SelfLoopError,
    DuplicateEdgeError, DisconnectedError
    """
    n = int(n)
    if n < 2:
        raise TooSmallError(f"need at least 2 vertices, got n={n}")
    nbrs = [set() for _ in range(n)]
    for e in edges:
        i, j = (int(x) for x in e)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRangeError(f"edge ({i}, {j}) outside 0..{n - 1}")
        if i == j:
            raise SelfLoopError(f"self-loop at vertex {i}")
        if j in nbrs[i]:
            raise DuplicateEdgeError(f"duplicate edge ({i}, {j})")
        nbrs[i].add(j)
        nbrs[j].add(i)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    if _bfs_reach(n, adjacency) != n:
        raise DisconnectedError("graph is not connected")
    return Graph(n=n, adjacency=adjacency, degrees=tuple(len(a) for a in adjacency))


# -- generators ------------------------------------------------------------

def _need_int(spec, key, lo):
    val = spec.get(key)
    if isinstance(val, bool) or not isinstance(val, int) or val < lo:
        raise InvalidSpec(f"{spec.get('family')}: '{key}' must be an integer >= {lo}")
    return val


def gen_family(spec):
    """Generate a graph from a family descriptor.

    Parameters
    ----------
    spec : dict
        ``{"family": "path", "n": 5}``, ``{"family": "cycle", "n": 5}``,
        ``{"family": "complete", "n": 5}``, ``{"family": "grid", "rows": 3,
        "cols": 4}`` or ``{"family": "erdos_renyi", "n": 10, "p": 0.3,
        "seed": 7, "max_retries": 1000}`` (``"er"`` is an alias).

    Erdos-Renyi edges are drawn in lexicographic order from a SplitMix64
    stream seeded with ``seed``; disconnected samples are rejected and the
    same stream continues until a connected sample appears.
    """
    fam = spec.get("family")
    if fam == "path":
        n = _need_int(spec, "n", 2)
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    if fam == "cycle":
        n = _need_int(spec, "n", 3)
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if fam == "complete":
        n = _need_int(spec, "n", 2)
        return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if fam == "grid":
        rows = _need_int(spec, "rows", 1)
        cols = _need_int(spec, "cols", 1)
        if rows * cols < 2:
            raise InvalidSpec("grid needs rows*cols >= 2")
        edges = []
        for r in range(rows):
            for c in range(cols):
                k = r * cols + c
                if c + 1 < cols:
                    edges.append((k, k + 1))
                if r + 1 < rows:
                    edges.append((k, k + cols))
        return build_graph(rows * cols, edges)
    if fam in ("erdos_renyi", "er"):
        n = _need_int(spec, "n", 2)
        p = spec.get("p")
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not 0 < p <= 1:
            raise InvalidSpec("erdos_renyi: 'p' must lie in (0, 1]")
        seed = _need_int(spec, "seed", 0)
        retries = spec.get("max_retries", 1000)
        if isinstance(retries, bool) or not isinstance(retries, int) or retries < 1:
            raise InvalidSpec("erdos_renyi: 'max_retries' must be a positive integer")
        rng = SplitMix64(seed)
        for _ in range(retries):
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < p
            ]
            try:
                return build_graph(n, edges)
            except DisconnectedError:
                continue
        raise GenerationFailed(
            f"erdos_renyi(n={n}, p={p}, seed={seed}) not connected after {retries} tries"
        )
    raise InvalidSpec(f"unknown family {fam!r}")


def constant_potential(n, c):
    return (float(c),) * n


def uniform_potential(n, lo, hi, seed):
    """``n`` values uniform on ``[lo, hi)`` from a SplitMix64 stream."""
    if lo > hi:
        raise InvalidSpec("uniform potential needs lo <= hi")
    rng = SplitMix64(seed)
    return tuple(rng.uniform(lo, hi) for _ in range(n))


def spike_potential(n, height, at=0):
    w = [0.0] * n
    w[at] = float(height)
    return tuple(w)


# -- problem files ---------------------------------------------------------

_KEYS = ("name", "n", "edges", "potential")


def _reject_constant(token):
    raise MalformedInput(f"non-finite number {token} not allowed")


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _is_real(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def parse_problem(text):
    """Parse a problem document (bytes or str) into a :class:`Problem`.

    Raises
    ------
    MalformedInput
        Not a JSON object of the expected shape, or unknown keys.
    ValidationFailed
        The edge list fails :func:`build_graph`.
    LengthMismatch
        ``len(potential) != n``.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedInput("problem document must be an object")
    unknown = sorted(set(doc) - set(_KEYS))
    if unknown:
        raise MalformedInput(f"unknown keys: {unknown}")
    for key in ("n", "edges", "potential"):
        if key not in doc:
            raise MalformedInput(f"missing key {key!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise MalformedInput("'name' must be a string")
    n = doc["n"]
    if not _is_int(n):
        raise MalformedInput("'n' must be an integer")
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise MalformedInput("'edges' must be a list")
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(_is_int(x) for x in e)):
            raise MalformedInput(f"edge {e!r} is not a pair of integers")
        if e[0] > e[1]:
            raise MalformedInput(f"edge {e!r} must be written with i < j")
        pairs.append((e[0], e[1]))
    pot = doc["potential"]
    if not (isinstance(pot, list) and all(_is_real(x) for x in pot)):
        raise MalformedInput("'potential' must be a list of numbers")
    pot = [float(x) for x in pot]
    if not all(math.isfinite(x) for x in pot):
        raise MalformedInput("potential entries must be finite")
    try:
        graph = build_graph(n, pairs)
    except GraphError as exc:
        raise ValidationFailed(f"{type(exc).__name__}: {exc}") from exc
    if len(pot) != graph.n:
        raise LengthMismatch(f"potential has {len(pot)} entries for n={graph.n}")
    return Problem(graph=graph, potential=pot, name=name)


def serialize_problem(p):
    """Canonical problem document; floats use the shortest exact repr."""
    parts = []
    if p.name is not None:
        parts.append(f'  "name": {json.dumps(p.name)}')
    parts.append(f'  "n": {p.graph.n}')
    edges = ", ".join(f"[{i}, {j}]" for i, j in p.graph.edges)
    parts.append(f'  "edges": [{edges}]')
    pot = ", ".join(repr(x) for x in p.potential)
    parts.append(f'  "potential": [{pot}]')
    return "{\n" + ",\n".join(parts) + "\n}\n"
