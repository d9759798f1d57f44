"""Problem data model.

Robust problems carry constraint-wise uncertainty polytopes in R^(n+1)
(vertices are stacked (a, b) rows); finite LSIO problems are indexed row
lists.  The robust counterpart instantiates every uncertainty vertex, which
is exact for polytopal sets by convexity of each U_alpha and linearity of the
constraint in (a, b).
"""

import numpy as np
from dataclasses import dataclass
from typing import Optional

from . import lp as lpmod
from .errors import (
    DimensionMismatchError,
    EmptyUncertaintySetError,
    IndexMismatchError,
)
from .geometry import Polytope, hausdorff


@dataclass(frozen=True)
class IndexedRow:
    """One constraint <a, x> >= b with an opaque index label."""

    label: str
    a: np.ndarray
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "b", float(self.b))

    @property
    def stacked(self) -> np.ndarray:
        return np.append(self.a, self.b)


@dataclass(frozen=True)
class LsioProblem:
    cost: np.ndarray
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "cost", np.asarray(self.cost, dtype=float))
        rows = tuple(self.rows)
        labels = [r.label for r in rows]
        if len(set(labels)) != len(labels):
            raise ValueError("row labels must be unique within a system")
        for r in rows:
            if r.a.shape[0] != self.cost.shape[0]:
                raise DimensionMismatchError(
                    f"row {r.label!r} has dimension {r.a.shape[0]}, "
                    f"cost has {self.cost.shape[0]}"
                )
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return self.cost.shape[0]

    def to_lp(self) -> lpmod.LinearProgram:
        return lpmod.LinearProgram.from_rows(
            self.cost, [(r.a, r.b) for r in self.rows]
        )


@dataclass(frozen=True)
class RobustProblem:
    """Constraint-wise uncertain LP: min over x of <c, x> (or worst-case over
    a cost polytope) subject to <a, x> >= b for every (a, b) in U_alpha.

    constraint_sets maps labels to polytopes in R^(n+1); exactly one of cost
    and cost_set must be present.
    """

    constraint_sets: dict
    cost: Optional[np.ndarray] = None
    cost_set: Optional[Polytope] = None

    def __post_init__(self):
        if (self.cost is None) == (self.cost_set is None):
            raise ValueError("exactly one of cost / cost_set must be given")
        if self.cost is not None:
            object.__setattr__(self, "cost", np.asarray(self.cost, dtype=float))
        if not self.constraint_sets:
            raise EmptyUncertaintySetError("no constraint sets")
        dims = {U.dim for U in self.constraint_sets.values()}
        if len(dims) != 1:
            raise DimensionMismatchError("constraint sets have mixed dimensions")
        d = dims.pop()
        n = self.cost.shape[0] if self.cost is not None else self.cost_set.dim
        if d != n + 1:
            raise DimensionMismatchError(
                f"constraint sets live in R^{d}, expected R^{n + 1}"
            )

    @property
    def dim(self) -> int:
        return self.cost.shape[0] if self.cost is not None else self.cost_set.dim


def robust_counterpart(rp: RobustProblem) -> LsioProblem:
    """Finite LSIO with one row per (constraint label, uncertainty vertex).

    Requires the fixed-cost form; row labels are "<alpha>#<vertexIndex>".
    """
    if rp.cost is None:
        raise ValueError("robust_counterpart needs the fixed-cost form")
    rows = []
    for alpha, U in rp.constraint_sets.items():
        if U.vertices.shape[0] == 0:
            raise EmptyUncertaintySetError(f"constraint {alpha!r} has no vertices")
        for i, v in enumerate(U.vertices):
            rows.append(IndexedRow(label=f"{alpha}#{i}", a=v[:-1], b=v[-1]))
    return LsioProblem(cost=rp.cost, rows=tuple(rows))


def epigraph_reform(rp: RobustProblem) -> RobustProblem:
    """Lift cost uncertainty into an epigraph constraint.

    min tau s.t. <(-c, 1), (x, tau)> >= 0 for every c in C, original rows
    lifted with 0 coefficient on tau.  Slater slack of the original rows is
    preserved (the new variable does not enter them).
    """
    if rp.cost_set is None:
        raise ValueError("epigraph_reform needs a cost_set")
    n = rp.dim
    sets = {}
    for alpha, U in rp.constraint_sets.items():
        V = U.vertices
        lifted = np.hstack([V[:, :n], np.zeros((V.shape[0], 1)), V[:, n:]])
        sets[alpha] = Polytope(lifted)
    C = rp.cost_set.vertices
    epi = np.hstack([-C, np.ones((C.shape[0], 1)), np.zeros((C.shape[0], 1))])
    sets["_epigraph"] = Polytope(epi)
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    return RobustProblem(constraint_sets=sets, cost=cost)


def _row_map(system):
    if isinstance(system, LsioProblem):
        rows = system.rows
    else:
        rows = tuple(system)
    return {r.label: r.stacked for r in rows}


def delta_sigma(s1, s2) -> float:
    """sup over shared labels of ||(a1, b1) - (a2, b2)||.

    Defined only on a common index set; differing label sets are an error,
    not a large distance.
    """
    m1, m2 = _row_map(s1), _row_map(s2)
    if set(m1) != set(m2):
        raise IndexMismatchError(
            f"label sets differ: {sorted(set(m1) ^ set(m2))}"
        )
    return max(float(np.linalg.norm(m1[k] - m2[k])) for k in m1)


def delta_pi(p1: LsioProblem, p2: LsioProblem) -> float:
    """max(||c1 - c2||, delta_sigma of the systems)."""
    if p1.dim != p2.dim:
        raise DimensionMismatchError("problems have different dimensions")
    return max(float(np.linalg.norm(p1.cost - p2.cost)), delta_sigma(p1, p2))


@dataclass(frozen=True)
class ConstraintwiseDistance:
    per_constraint: dict
    value: float


def constraintwise_distance(rpU: RobustProblem, rpV: RobustProblem) -> ConstraintwiseDistance:
    """d_nat: sup over alpha of d_H(U_alpha, V_alpha)."""
    if set(rpU.constraint_sets) != set(rpV.constraint_sets):
        raise IndexMismatchError(
            f"constraint labels differ: "
            f"{sorted(set(rpU.constraint_sets) ^ set(rpV.constraint_sets))}"
        )
    per = {
        alpha: hausdorff(rpU.constraint_sets[alpha], rpV.constraint_sets[alpha])
        for alpha in rpU.constraint_sets
    }
    return ConstraintwiseDistance(per_constraint=per, value=max(per.values()))


def _collapse(rows, tol):
    out = []
    for r in rows:
        v = r.stacked
        if not any(np.linalg.norm(v - w) <= tol for w in out):
            out.append(v)
    return out


def pi_equivalent(p1: LsioProblem, p2: LsioProblem, tol: float = 1e-12) -> bool:
    """Equal costs and equal constraint sets as unordered (a, b) sets.

    Stronger than equal feasible sets: an extra trivial row breaks it.
    """
    if p1.dim != p2.dim:
        raise DimensionMismatchError("problems have different dimensions")
    if np.linalg.norm(p1.cost - p2.cost) > tol:
        return False
    c1, c2 = _collapse(p1.rows, tol), _collapse(p2.rows, tol)
    def covered(xs, ys):
        return all(any(np.linalg.norm(x - y) <= tol for y in ys) for x in xs)
    return covered(c1, c2) and covered(c2, c1)
