"""Schrodinger operator assembly, Jacobi eigensolver and region partitions."""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceFailure",
    "Eigenpair",
    "RegionPartition",
    "MaxPrincipleCheck",
    "assemble_operator",
    "jacobi_eigh",
    "eigendecompose",
    "solve",
    "residual",
    "partition_regions",
    "max_principle_check",
    "spectrum_document",
]

SIGN_EPS = 1e-12


class ConvergenceFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class Eigenpair:
    energy: float
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class RegionPartition:
    energy: float
    allowed: tuple
    forbidden: tuple


@dataclass(frozen=True)
class MaxPrincipleCheck:
    holds: bool
    argmax: int
    sup_all: float
    sup_allowed: float
    diagnostic: str = ""


def assemble_operator(p):
    """Dense ``H = L + diag(W)`` with ``L = D - A``."""
    g = p.graph
    h = -g.adjacency_matrix().astype(float)
    h[np.diag_indices(g.n)] = np.asarray(g.degrees, dtype=float) + p.potential_array()
    return h


def _round_robin(m):
    """Pairings for ``m`` (even) players: ``m - 1`` rounds of ``m/2`` pairs."""
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        half = m // 2
        top, bot = players[:half], players[half:][::-1]
        rounds.append((np.array(top), np.array(bot)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(h, tol=1e-10, max_sweeps=100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the ``n/2`` rotations of a round act on disjoint index pairs and can
    be applied together. Sweeping stops once the off-diagonal Frobenius norm
    is at most ``tol * ||h||_F`` and every column satisfies
    ``|h v - lam v|_inf <= tol * (1 + max row sum of |h|)``.

    Returns
    -------
    lam : ndarray (n,)
        Unsorted eigenvalues.
    v : ndarray (n, n)
        Eigenvectors as columns.
    sweeps : int
    """
    h = np.array(h, dtype=float)
    n = h.shape[0]
    if h.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.array_equal(h, h.T):
        raise ValueError("matrix is not exactly symmetric")
    m = n + (n % 2)
    a = np.zeros((m, m))
    a[:n, :n] = h
    v = np.eye(m)
    scale = np.linalg.norm(h)
    row_sum = np.abs(h).sum(axis=1).max() if n else 0.0
    rounds = _round_robin(m)
    offdiag = ~np.eye(m, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a[offdiag])
        if off <= tol * scale:
            lam = np.diag(a)[:n].copy()
            vec = v[:n, :n]
            res = np.abs(h @ vec - vec * lam).max() if n else 0.0
            if res <= tol * (1.0 + row_sum) or off == 0.0:
                return lam, vec, sweep
        if sweep == max_sweeps:
            break
        for top, bot in rounds:
            p = np.minimum(top, bot)
            q = np.maximum(top, bot)
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            cc, ss = c[:, None], s[:, None]
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = ap * c - aq * s
            a[:, q] = ap * s + aq * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = cc * rp - ss * rq
            a[q, :] = ss * rp + cc * rq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")


def _fix_sign(vec):
    idx = np.flatnonzero(np.abs(vec) > SIGN_EPS)
    if idx.size and vec[idx[0]] < 0:
        return -vec
    return vec


def eigendecompose(h, tol=1e-10, max_sweeps=100):
    """All eigenpairs of symmetric ``h``, ascending by energy.

    Vectors are unit length and sign-normalised so that the first component
    larger than 1e-12 in magnitude is positive.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    h = np.asarray(h, dtype=float)
    lam, vec, _ = jacobi_eigh(h, tol=tol, max_sweeps=max_sweeps)
    order = np.argsort(lam, kind="stable")
    pairs = []
    for k in order:
        x = _fix_sign(vec[:, k].copy())
        r = float(np.abs(h @ x - lam[k] * x).max())
        pairs.append(Eigenpair(energy=float(lam[k]), vector=x, residual=r))
    return pairs


def solve(p, tol=1e-10, max_sweeps=100):
    """Eigenpairs of ``L + diag(W)`` for a problem.

    ``L`` is positive semidefinite, so every eigenvalue is at least
    ``min(W)``. Computed energies that round below that bound are raised to
    it; otherwise a ground state of a constant potential could come out a
    few ulps under ``W`` and leave the allowed region empty.
    """
    h = assemble_operator(p)
    floor = min(p.potential)
    pairs = []
    for e in eigendecompose(h, tol=tol, max_sweeps=max_sweeps):
        if e.energy < floor:
            r = float(np.abs(h @ e.vector - floor * e.vector).max())
            e = Eigenpair(energy=floor, vector=e.vector, residual=r)
        pairs.append(e)
    return pairs


def residual(p, e):
    """``max_v |(H phi)(v) - E phi(v)|``."""
    from .graph import LengthMismatch

    phi = np.asarray(e.vector, dtype=float)
    if phi.shape != (p.n,):
        raise LengthMismatch(f"vector length {phi.shape} does not match n={p.n}")
    h = assemble_operator(p)
    return float(np.abs(h @ phi - e.energy * phi).max())


def partition_regions(p, energy):
    """Allowed region ``W <= E`` and its complement."""
    w = p.potential_array()
    allowed = np.flatnonzero(w <= energy)
    forbidden = np.flatnonzero(w > energy)
    return RegionPartition(
        energy=float(energy),
        allowed=tuple(int(i) for i in allowed),
        forbidden=tuple(int(i) for i in forbidden),
    )


def max_principle_check(p, e, float_tol=1e-9):
    """Check that ``sup |phi|`` over all vertices is reached on the allowed region."""
    mag = np.abs(np.asarray(e.vector, dtype=float))
    part = partition_regions(p, e.energy)
    argmax = int(np.argmax(mag))
    sup_all = float(mag[argmax])
    if not part.allowed:
        return MaxPrincipleCheck(
            holds=False,
            argmax=argmax,
            sup_all=sup_all,
            sup_allowed=float("nan"),
            diagnostic="EmptyAllowedRegion",
        )
    sup_allowed = float(mag[list(part.allowed)].max())
    return MaxPrincipleCheck(
        holds=bool(sup_all - sup_allowed <= float_tol),
        argmax=argmax,
        sup_all=sup_all,
        sup_allowed=sup_allowed,
    )


def spectrum_document(pairs):
    """Spectrum report as a plain dict (see :mod:`agmon.fmt` for emission)."""
    return {
        "energies": [e.energy for e in pairs],
        "residuals": [e.residual for e in pairs],
        "vectors": [[float(x) for x in e.vector] for e in pairs],
    }
