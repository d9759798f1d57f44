"""Sampled realization of the RO-LSIO transformations.

For uncertainty polytopes U, V the transformation sigma_{U;V} maps an index
point t to (t, b) if t is in U, to (proj_U(t), b) if t is in V but not U, and
to the trivial row (0, -rho) otherwise.  The distance identity says the sup of
||sigma_{U;V}(t) - sigma_{V;U}(t)|| over t equals d_H(U, V); because the sup
is attained at vertices of U and V, including those deterministically in
every sample plan turns the check into an equality test.
"""

import numpy as np
from dataclasses import dataclass, field

from .errors import DimensionMismatchError, IndexMismatchError
from .geometry import Polytope, hausdorff, project_onto_polytope
from .model import RobustProblem, constraintwise_distance
from .report import CertificateReport

_MEMBERSHIP_TOL = 1e-9
_AMBIGUITY_BAND = 1e-9


@dataclass(frozen=True)
class SamplePlan:
    """Seeded sampling counts for the four index regions.

    counts order: (U and V, U minus V, V minus U, outside both).
    """

    seed: int = 0
    counts: tuple = (50, 50, 50, 50)
    box_margin: float = 1.0


@dataclass(frozen=True)
class IndexedEval:
    index_point: np.ndarray
    left: np.ndarray
    right: np.ndarray
    gap: float


def _membership(t, P: Polytope):
    """(inside, projection, dist) with the ambiguity band surfaced by dist."""
    q, d = project_onto_polytope(t, P)
    return d <= _MEMBERSHIP_TOL, q, d


def eval_sigma_uv(t, U: Polytope, V: Polytope, b: float, rho: float) -> np.ndarray:
    """sigma_{U;V}(t) as a stacked (a, b) vector in R^(n+1)."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    t = np.asarray(t, dtype=float)
    in_u, proj_u, _ = _membership(t, U)
    if in_u:
        return np.append(t, float(b))
    in_v, _, _ = _membership(t, V)
    if in_v:
        return np.append(proj_u, float(b))
    n = t.shape[0]
    return np.append(np.zeros(n), -float(rho))


def _classify(t, U, V):
    """Cached membership data: (in_u, in_v, proj_u, proj_v) or None if the
    point falls inside the membership ambiguity band."""
    proj_u, du = project_onto_polytope(t, U)
    proj_v, dv = project_onto_polytope(t, V)
    for d in (du, dv):
        if _MEMBERSHIP_TOL < d <= _MEMBERSHIP_TOL + _AMBIGUITY_BAND:
            return None
    return du <= _MEMBERSHIP_TOL, dv <= _MEMBERSHIP_TOL, proj_u, proj_v


def _sample_index_points(U: Polytope, V: Polytope, plan: SamplePlan):
    """Deterministic vertices of both sets plus seeded samples per region.

    Region targets are best-effort: rejection sampling with a stall cutoff,
    so empty regions (e.g. disjoint sets have no U-and-V points) are skipped
    rather than spun on.  Returns (t, in_u, in_v, proj_u, proj_v) tuples.
    """
    rng = np.random.default_rng(plan.seed)
    out = []
    for v in list(U.vertices) + list(V.vertices):
        cls = _classify(v, U, V)
        if cls is not None:
            out.append((v, *cls))
    all_v = np.vstack([U.vertices, V.vertices])
    lo = all_v.min(axis=0) - plan.box_margin
    hi = all_v.max(axis=0) + plan.box_margin
    want = list(plan.counts)
    got = [0, 0, 0, 0]
    stall = 0
    while any(g < w for g, w in zip(got, want)) and stall < 200:
        mode = rng.integers(0, 3)
        if mode == 0:  # convex combination of U vertices
            w = rng.dirichlet(np.ones(U.vertices.shape[0]))
            t = U.vertices.T @ w
        elif mode == 1:
            w = rng.dirichlet(np.ones(V.vertices.shape[0]))
            t = V.vertices.T @ w
        else:
            t = rng.uniform(lo, hi)
        cls = _classify(t, U, V)
        if cls is None:
            stall += 1
            continue
        in_u, in_v = cls[0], cls[1]
        region = 0 if (in_u and in_v) else 1 if in_u else 2 if in_v else 3
        if got[region] < want[region]:
            got[region] += 1
            stall = 0
            out.append((t, *cls))
        else:
            stall += 1
    return out


def _sigma_from_cache(t, in_self, in_other, proj_self, b, rho):
    """sigma_{U;V}(t) using precomputed memberships (fixed-b form)."""
    if in_self:
        return np.append(t, float(b))
    if in_other:
        return np.append(proj_self, float(b))
    return np.append(np.zeros(t.shape[0]), -float(rho))


def _evaluate_pair(U, V, b, rho, plan):
    evals = []
    for t, in_u, in_v, proj_u, proj_v in _sample_index_points(U, V, plan):
        t = np.asarray(t, dtype=float)
        left = _sigma_from_cache(t, in_u, in_v, proj_u, b, rho)
        right = _sigma_from_cache(t, in_v, in_u, proj_v, b, rho)
        gap = float(np.linalg.norm(left - right))
        evals.append(IndexedEval(index_point=t, left=left, right=right, gap=gap))
    return evals


def verify_transform_distance(
    U: Polytope,
    V: Polytope,
    b: float,
    rho: float,
    plan: SamplePlan = SamplePlan(),
    tol: float = 1e-6,
) -> CertificateReport:
    """Check sup_t ||sigma_{U;V}(t) - sigma_{V;U}(t)|| = d_H(U, V) two-sided."""
    if U.dim != V.dim:
        raise DimensionMismatchError("U and V have different dimensions")
    evals = _evaluate_pair(U, V, b, rho, plan)
    measured = max(e.gap for e in evals)
    bound = hausdorff(U, V)
    passed = abs(measured - bound) <= tol
    return CertificateReport(
        bound=bound,
        measured=measured,
        slack=bound - measured,
        passed=passed,
        context={
            "check": "transform-distance",
            "seed": plan.seed,
            "samples": len(evals),
            "b": float(b),
            "rho": float(rho),
        },
    )


def verify_transform_distance_multi(
    rpU: RobustProblem,
    rpV: RobustProblem,
    rho: float,
    plan: SamplePlan = SamplePlan(),
    tol: float = 1e-6,
) -> CertificateReport:
    """Constraint-wise version over (t, s) index points in R^(n+1).

    Per-alpha sups against per-alpha Hausdorff distances; the overall
    measured sup must equal d_nat two-sided.
    """
    if set(rpU.constraint_sets) != set(rpV.constraint_sets):
        raise IndexMismatchError("constraint label sets differ")
    per_alpha = {}
    for alpha in sorted(rpU.constraint_sets):
        U = rpU.constraint_sets[alpha]
        V = rpV.constraint_sets[alpha]
        evals = []
        for ts, in_u, in_v, proj_u, proj_v in _sample_index_points(U, V, plan):
            ts = np.asarray(ts, dtype=float)
            left = _sigma_multi_cached(ts, in_u, in_v, proj_u, rho)
            right = _sigma_multi_cached(ts, in_v, in_u, proj_v, rho)
            evals.append(float(np.linalg.norm(left - right)))
        per_alpha[alpha] = max(evals)
    measured = max(per_alpha.values())
    bound = constraintwise_distance(rpU, rpV).value
    passed = abs(measured - bound) <= tol
    return CertificateReport(
        bound=bound,
        measured=measured,
        slack=bound - measured,
        passed=passed,
        context={
            "check": "transform-distance-multi",
            "seed": plan.seed,
            "rho": float(rho),
            "perConstraint": {k: float(v) for k, v in per_alpha.items()},
        },
    )


def _sigma_multi_cached(ts, in_self, in_other, proj_self, rho):
    if in_self:
        return ts
    if in_other:
        return proj_self
    out = np.zeros(ts.shape[0])
    out[-1] = -float(rho)
    return out


def _sigma_multi(ts, U: Polytope, V: Polytope, rho: float):
    """sigma for uncertain (a, b): index points are already (t, s) rows."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    ts = np.asarray(ts, dtype=float)
    in_u, proj_u, _ = _membership(ts, U)
    if in_u:
        return ts
    in_v, _, _ = _membership(ts, V)
    if in_v:
        return proj_u
    out = np.zeros(ts.shape[0])
    out[-1] = -float(rho)
    return out
