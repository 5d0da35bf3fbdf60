"""Check the two-point decay bound ``min(|phi(u)|, |phi(v)|) <= ||phi||_inf exp(-rho(u, v))``."""

import math
from dataclasses import dataclass, field

import numpy as np

from .metric import agmon_field, rho, rho_matrix
from .spectral import max_principle_check, solve

__all__ = [
    "REL_TOL",
    "ABS_TOL",
    "BoundCheck",
    "EigenSummary",
    "BoundReport",
    "ReductionRecord",
    "bound_holds",
    "check_bound",
    "verify_problem",
    "reduction_check",
    "tightness_stats",
    "quantile_summary",
    "report_document",
    "region_pair",
]

REL_TOL = 1e-9
ABS_TOL = 1e-12


@dataclass(frozen=True)
class BoundCheck:
    eigen_index: int
    u: int
    v: int
    lhs: float
    rho_value: float
    rhs: float
    ratio: float
    holds: bool
    witness: tuple = ()


@dataclass(frozen=True)
class EigenSummary:
    energy: float
    violations: int
    max_ratio: float
    min_ratio: float
    max_principle_holds: bool


@dataclass
class BoundReport:
    problem: str
    mode: str
    eigenpairs: list
    violations: list
    tightness: dict
    max_principle: list = field(default_factory=list)
    decaying_ratios: np.ndarray = None

    @property
    def ok(self):
        return not self.violations and all(s.max_principle_holds for s in self.eigenpairs)


@dataclass(frozen=True)
class ReductionRecord:
    u: int
    v_star: int
    lhs: float
    rho_value: float
    rhs: float
    holds: bool


def bound_holds(lhs, rhs):
    return lhs <= rhs * (1.0 + REL_TOL) + ABS_TOL


def _ratio(lhs, rhs):
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(rhs > 0, lhs / np.where(rhs > 0, rhs, 1.0), 0.0)
    return np.where((rhs <= 0) & (lhs > ABS_TOL), np.inf, r)


def _sides(phi, rho_values):
    mag = np.abs(phi)
    lhs = np.minimum(mag[:, None], mag[None, :])
    rhs = mag.max() * np.exp(-rho_values)
    return lhs, rhs


def region_pair(partition, u, v):
    """Two-letter region label of a pair, e.g. ``"FA"``."""
    forb = set(partition.forbidden)
    return ("F" if u in forb else "A") + ("F" if v in forb else "A")


def check_bound(p, e, u, v, mode="literal", eigen_index=0):
    """Evaluate both sides of the bound for one eigenpair and vertex pair."""
    f = agmon_field(p, e.energy)
    d = rho(f, u, v, mode)
    mag = np.abs(np.asarray(e.vector, dtype=float))
    lhs = float(min(mag[u], mag[v]))
    rhs = float(mag.max() * math.exp(-d.value))
    return BoundCheck(
        eigen_index=eigen_index,
        u=u,
        v=v,
        lhs=lhs,
        rho_value=d.value,
        rhs=rhs,
        ratio=float(_ratio(np.array(lhs), np.array(rhs))),
        holds=bool(bound_holds(lhs, rhs)),
        witness=d.witness,
    )


def _tightness(lhs, rhs, ratio, rho_values):
    lhs, rhs, ratio, rho_values = (np.ravel(a) for a in (lhs, rhs, ratio, rho_values))
    if lhs.size == 0:
        raise ValueError("tightness statistics need at least one check")
    out = {
        "checks": int(lhs.size),
        "exact_equalities": int(np.count_nonzero(np.abs(lhs - rhs) <= ABS_TOL)),
    }
    out.update(quantile_summary(ratio[np.isfinite(rho_values) & (rho_values > 0)]))
    return out


def quantile_summary(ratios):
    """Median, 90th percentile and max of already-filtered ratios."""
    r = np.asarray(ratios, dtype=float)
    if r.size == 0:
        return {"decaying_pairs": 0, "no_decaying_pairs": True, "median": None, "p90": None, "max": None}
    return {
        "decaying_pairs": int(r.size),
        "no_decaying_pairs": False,
        "median": float(np.median(r)),
        "p90": float(np.percentile(r, 90)),
        "max": float(r.max()),
    }


def tightness_stats(checks):
    """Median, 90th percentile and max of the ratio over pairs with finite ``rho > 0``."""
    checks = list(checks)
    if not checks:
        raise ValueError("tightness statistics need at least one check")
    cols = np.array([(c.lhs, c.rhs, c.ratio, c.rho_value) for c in checks], dtype=float)
    return _tightness(cols[:, 0], cols[:, 1], cols[:, 2], cols[:, 3])


def verify_problem(p, tol=1e-10, mode="literal", max_principle_tol=1e-9):
    """Check the bound for every eigenpair and every ordered vertex pair.

    Raises
    ------
    ConvergenceFailure
        From the eigensolver.
    """
    pairs = solve(p, tol=tol)
    summaries, violations, mp_checks = [], [], []
    pooled = [], [], [], []
    for k, e in enumerate(pairs):
        f = agmon_field(p, e.energy)
        rv = rho_matrix(f, mode)
        lhs, rhs = _sides(e.vector, rv)
        ratio = _ratio(lhs, rhs)
        ok = bound_holds(lhs, rhs)
        for u, v in zip(*np.nonzero(~ok)):
            u, v = int(u), int(v)
            violations.append(
                BoundCheck(
                    eigen_index=k,
                    u=u,
                    v=v,
                    lhs=float(lhs[u, v]),
                    rho_value=float(rv[u, v]),
                    rhs=float(rhs[u, v]),
                    ratio=float(ratio[u, v]),
                    holds=False,
                    witness=rho(f, u, v, mode).witness,
                )
            )
        mp = max_principle_check(p, e, max_principle_tol)
        mp_checks.append(mp)
        positive = np.isfinite(rv) & (rv > 0)
        summaries.append(
            EigenSummary(
                energy=e.energy,
                violations=int(np.count_nonzero(~ok)),
                max_ratio=float(ratio.max()),
                min_ratio=float(ratio[positive].min()) if positive.any() else None,
                max_principle_holds=mp.holds,
            )
        )
        for acc, arr in zip(pooled, (lhs, rhs, ratio, rv)):
            acc.append(np.ravel(arr))
    lhs, rhs, ratio, rv = (np.concatenate(a) for a in pooled)
    tight = _tightness(lhs, rhs, ratio, rv)
    return BoundReport(
        problem=p.name or "",
        mode=mode,
        eigenpairs=summaries,
        violations=violations,
        tightness=tight,
        max_principle=mp_checks,
        decaying_ratios=ratio[np.isfinite(rv) & (rv > 0)],
    )


def reduction_check(p, e, mode="literal", dist=None):
    """One-point decay check for each forbidden vertex against the allowed maximiser.

    Returns an empty list when the forbidden region is empty. ``dist`` may
    carry a precomputed ``rho_matrix`` at ``e.energy`` in the same mode.
    """
    f = agmon_field(p, e.energy)
    part = f.partition
    if not part.forbidden:
        return []
    if not part.allowed:
        raise ValueError("allowed region is empty")
    mag = np.abs(np.asarray(e.vector, dtype=float))
    allowed = list(part.allowed)
    v_star = allowed[int(np.argmax(mag[allowed]))]
    top = mag.max()
    if dist is None:
        dist = rho_matrix(f, mode)
    out = []
    for u in part.forbidden:
        d = float(dist[u, v_star])
        lhs = float(mag[u])
        rhs = float(top * math.exp(-d))
        out.append(ReductionRecord(u, v_star, lhs, d, rhs, bool(bound_holds(lhs, rhs))))
    return out


def report_document(report):
    """Plain-dict form of a :class:`BoundReport` for JSON emission."""
    viol = []
    for c in report.violations:
        viol.append(
            {
                "eigen_index": c.eigen_index,
                "u": c.u,
                "v": c.v,
                "lhs": c.lhs,
                "rhs": c.rhs,
                "rho": c.rho_value,
                "ratio": c.ratio,
                "witness": list(c.witness),
            }
        )
    return {
        "problem": report.problem,
        "mode": report.mode,
        "eigenpairs": [
            {
                "energy": s.energy,
                "violations": s.violations,
                "max_ratio": s.max_ratio,
                "min_ratio": s.min_ratio,
                "max_principle_holds": s.max_principle_holds,
            }
            for s in report.eigenpairs
        ],
        "violations": viol,
        "tightness": report.tightness,
    }
