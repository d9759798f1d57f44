"""Convex-polytope primitives.

Everything here operates on V-representation polytopes (finite vertex lists).
The workhorse is Wolfe's minimum-norm-point algorithm, an active-set scheme
whose stopping test is the Frank-Wolfe dual gap; it gives certified, exact
projections at desk scale.
"""

import itertools

import numpy as np
from dataclasses import dataclass
from typing import NamedTuple

from . import lp as lpmod
from .config import default_tolerances
from .errors import (
    DimensionMismatchError,
    OriginNotInteriorError,
    UnboundedPolarError,
)

_MNP_GAP_TOL = 1e-9
_MNP_MAX_ITER = 100_000


@dataclass(frozen=True)
class Polytope:
    """Convex hull of a finite, non-empty vertex list in R^dim.

    Duplicate or redundant vertices are tolerated everywhere; normalize()
    deduplicates but is never applied implicitly.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim == 1:
            v = v[None, :]
        if v.ndim != 2 or v.shape[0] == 0 or v.shape[1] == 0:
            raise ValueError("vertices must be a non-empty 2-D array")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def normalize(self, tol: float = 1e-12) -> "Polytope":
        """Deduplicate vertices within tol (explicit pass, never implicit)."""
        out = []
        for v in self.vertices:
            if not any(np.linalg.norm(v - w) <= tol for w in out):
                out.append(v)
        return Polytope(np.array(out))

    def translated(self, w) -> "Polytope":
        return Polytope(self.vertices + np.asarray(w, dtype=float))

    def scaled(self, s: float) -> "Polytope":
        return Polytope(self.vertices * float(s))


@dataclass(frozen=True)
class HSet:
    """conv(generators) + {(0,..,0,-mu) : mu >= 0} in R^(n+1).

    Generators are the stacked (a_t, b_t) rows of a constraint system; the
    recession ray points down the last coordinate.
    """

    generators: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.generators, dtype=float)
        if g.ndim != 2 or g.shape[0] == 0:
            raise ValueError("generators must be a non-empty 2-D array")
        if not np.all(np.isfinite(g)):
            raise ValueError("generators must be finite")
        object.__setattr__(self, "generators", g)

    @property
    def dim(self) -> int:
        return self.generators.shape[1]


def _affine_minimizer(B):
    """Min-norm point of the affine hull of the rows of B.

    Returns weights a with sum(a) = 1 minimizing ||B' a||.
    """
    k = B.shape[0]
    K = np.zeros((k + 1, k + 1))
    K[:k, :k] = B @ B.T
    K[:k, k] = 1.0
    K[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError:
        sol, *_ = np.linalg.lstsq(K, rhs, rcond=None)
    if not np.all(np.isfinite(sol)):
        sol, *_ = np.linalg.lstsq(K, rhs, rcond=None)
    return sol[:k]


def min_norm_point(points: np.ndarray, gap_tol: float = _MNP_GAP_TOL):
    """Wolfe's algorithm: argmin ||x|| over conv(points).

    Returns (x, weights) with weights a full-length convex combination.
    Termination: <x, x> - min_j <x, p_j> <= gap_tol * scale (the Frank-Wolfe
    dual gap certificate).
    """
    P = np.asarray(points, dtype=float)
    k = P.shape[0]
    scale = max(1.0, float(np.max(np.sum(P * P, axis=1))))
    start = int(np.argmin(np.sum(P * P, axis=1)))
    S = [start]
    lam = np.array([1.0])
    x = P[start].copy()
    for _ in range(_MNP_MAX_ITER):
        dots = P @ x
        j = int(np.argmin(dots))
        if x @ x - dots[j] <= gap_tol * scale:
            break
        if j in S:
            break  # numerically stalled; gap is already tiny
        f_prev = x @ x
        S.append(j)
        lam = np.append(lam, 0.0)
        # minor cycles: move to the affine minimizer, dropping vertices that
        # would go negative, until the minimizer is a convex combination
        while True:
            B = P[S]
            a = _affine_minimizer(B)
            if a.min() > 1e-12:
                lam = a
                break
            neg = a <= 1e-12
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(neg, lam / (lam - a), np.inf)
            theta = float(np.min(ratios))
            theta = min(max(theta, 0.0), 1.0)
            lam = (1.0 - theta) * lam + theta * a
            keep = lam > 1e-12
            if keep.all():  # safeguard against cycling on ties
                keep[int(np.argmin(lam))] = False
            S = [s for s, kp in zip(S, keep) if kp]
            lam = lam[keep]
            lam = lam / lam.sum()
        x = P[S].T @ lam
        if x @ x >= f_prev - 1e-18 * scale:
            break  # no progress possible at this precision
    weights = np.zeros(k)
    for s, l in zip(S, lam):
        weights[s] += l
    return x, weights


def project_onto_polytope(p, P: Polytope):
    """Euclidean projection of p onto conv(P); returns (q, dist).

    Unique by strict convexity; optimality is certified by the Frank-Wolfe
    gap inside min_norm_point.
    """
    p = np.asarray(p, dtype=float)
    if p.shape[0] != P.dim:
        raise DimensionMismatchError(
            f"point dimension {p.shape[0]} != polytope dimension {P.dim}"
        )
    x, _ = min_norm_point(P.vertices - p)
    q = x + p
    return q, float(np.linalg.norm(x))


def directed_hausdorff(U: Polytope, V: Polytope) -> float:
    """sup_{u in U} inf_{v in V} ||u - v||; attained at a vertex of U."""
    if U.dim != V.dim:
        raise DimensionMismatchError("polytopes have different dimensions")
    return max(project_onto_polytope(u, V)[1] for u in U.vertices)


def hausdorff(U: Polytope, V: Polytope) -> float:
    """Symmetric Hausdorff distance between conv(U) and conv(V)."""
    return max(directed_hausdorff(U, V), directed_hausdorff(V, U))


def dist_origin_to_hset(H: HSet) -> float:
    """min over lambda in the simplex, mu >= 0 of ||sum lam_i g_i - mu e_last||.

    The ray contributes only mu <= max ||g|| at the optimum, so the set equals
    conv(G union (G - mu_max e_last)) with mu_max = 2 (max ||g|| + 1), and one
    min-norm-point solve is exact.
    """
    G = H.generators
    mu_max = 2.0 * (float(np.max(np.linalg.norm(G, axis=1))) + 1.0)
    shifted = G.copy()
    shifted[:, -1] -= mu_max
    x, _ = min_norm_point(np.vstack([G, shifted]))
    return float(np.linalg.norm(x))


def contains_origin_interior(P: Polytope, tol: float = None):
    """(inside, margin): is there r > 0 with ball(0, r) inside conv(P)?

    margin is the probe-LP relaxation value: the smallest, over directions
    +/- e_i, of the largest r with r*d in conv(P).  Positive iff the origin is
    interior (a full cross-polytope neighborhood exists iff the origin is
    interior to a full-dimensional hull).
    """
    if tol is None:
        tol = default_tolerances().feasibility
    W = P.vertices
    k, d = W.shape
    r_cap = float(np.max(np.linalg.norm(W, axis=1))) + 1.0
    margin = np.inf
    for i in range(d):
        for s in (1.0, -1.0):
            direction = np.zeros(d)
            direction[i] = s
            # variables (lam_1..k, r): max r s.t. W' lam = r*direction,
            # sum lam = 1, lam >= 0, r <= cap
            rows = []
            for j in range(d):
                row = np.append(W[:, j], -direction[j])
                rows.append((row, 0.0))
                rows.append((-row, 0.0))
            ones = np.append(np.ones(k), 0.0)
            rows.append((ones, 1.0))
            rows.append((-ones, -1.0))
            for idx in range(k):
                e = np.zeros(k + 1)
                e[idx] = 1.0
                rows.append((e, 0.0))
            cap_row = np.zeros(k + 1)
            cap_row[-1] = -1.0
            rows.append((cap_row, -r_cap))
            cost = np.zeros(k + 1)
            cost[-1] = -1.0
            res = lpmod.solve(lpmod.LinearProgram.from_rows(cost, rows))
            if res.status != lpmod.OPTIMAL:
                return False, 0.0
            r_star = -res.value
            if r_star <= tol:
                return False, 0.0
            margin = min(margin, r_star)
    return True, float(margin)


class Inradius(NamedTuple):
    value: float
    estimated: bool


def inradius_at_origin(P: Polytope, tol: float = None) -> Inradius:
    """Distance from the (interior) origin to the boundary of conv(P).

    Polar-circumradius identity: r* = 1 / max{||y|| : <v_i, y> <= 1 for all
    vertices}; the inner maximum is attained at a vertex of the polar
    H-polytope and found by enumerating dim-subsets of active constraints.
    A seeded direction-sweep fallback (flagged estimated) covers inputs past
    desk scale (dim > 4 or > 64 vertices).
    """
    if tol is None:
        tol = default_tolerances().feasibility
    inside, margin = contains_origin_interior(P, tol=tol)
    if not inside:
        raise OriginNotInteriorError("origin is not strictly inside conv(P)")
    if margin <= 1e-9:
        raise UnboundedPolarError("origin within tolerance of the boundary")
    V = P.vertices
    k, d = V.shape
    if d <= 4 and k <= 64:
        ones = np.ones(d)
        best = 0.0
        for S in itertools.combinations(range(k), d):
            A = V[list(S)]
            try:
                y = np.linalg.solve(A, ones)
            except np.linalg.LinAlgError:
                continue
            if np.all(V @ y <= 1.0 + 1e-9):
                best = max(best, float(np.linalg.norm(y)))
        if best <= tol:
            raise UnboundedPolarError("polar polytope has no vertices (degenerate)")
        return Inradius(value=1.0 / best, estimated=False)
    # fallback: minimize the support function h(u) = max_i <v_i, u> over unit
    # directions by seeded sweep plus shrinking local refinement
    rng = np.random.default_rng(0)
    dirs = rng.standard_normal((2000 * d, d))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    support = np.max(V @ dirs.T, axis=0)
    best_dir = dirs[int(np.argmin(support))]
    best_val = float(np.min(support))
    width = 1.0
    for _ in range(60):
        cand = best_dir[None, :] + width * rng.standard_normal((40, d))
        cand /= np.linalg.norm(cand, axis=1)[:, None]
        vals = np.max(V @ cand.T, axis=0)
        j = int(np.argmin(vals))
        if vals[j] < best_val:
            best_val = float(vals[j])
            best_dir = cand[j]
        width *= 0.85
    return Inradius(value=best_val, estimated=True)


def project_onto_halfspaces(p, rows, tol: float = 1e-11, max_sweeps: int = 20000):
    """Dykstra projection of p onto {x : <a_i, x> >= b_i for all i}.

    Returns (q, dist).  Converges to the exact Euclidean projection for any
    non-empty intersection of halfspaces; desk-scale inputs settle quickly.
    """
    p = np.asarray(p, dtype=float)
    A = np.array([np.asarray(a, dtype=float) for a, _ in rows])
    b = np.array([float(bb) for _, bb in rows])
    norms2 = np.sum(A * A, axis=1)
    m = A.shape[0]
    x = p.copy()
    corrections = np.zeros((m, p.shape[0]))
    for _ in range(max_sweeps):
        max_move = 0.0
        for i in range(m):
            if norms2[i] == 0.0:
                continue
            y = x - corrections[i]
            viol = b[i] - A[i] @ y
            if viol > 0.0:
                x_new = y + (viol / norms2[i]) * A[i]
            else:
                x_new = y
            corrections[i] = x_new - y
            max_move = max(max_move, float(np.max(np.abs(x_new - x))))
            x = x_new
        resid = float(np.max(b - A @ x, initial=0.0))
        if max_move <= tol and resid <= 1e-9:
            break
    return x, float(np.linalg.norm(p - x))


def enumerate_hrep_vertices(rows, dim: int, tol: float = 1e-8):
    """Vertices of {x : <a_i, x> >= b_i}, dim <= 4, by basis enumeration.

    Every vertex is the unique solution of dim active rows; candidates are
    filtered by feasibility against all rows and deduplicated.
    """
    A = np.array([np.asarray(a, dtype=float) for a, _ in rows])
    b = np.array([float(bb) for _, bb in rows])
    m = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(b))), float(np.max(np.abs(A))))
    verts = []
    for S in itertools.combinations(range(m), dim):
        sub = A[list(S)]
        try:
            x = np.linalg.solve(sub, b[list(S)])
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)):
            continue
        if np.all(A @ x >= b - tol * scale):
            if not any(np.linalg.norm(x - w) <= 1e-7 for w in verts):
                verts.append(x)
    return verts
