"""Exact-arithmetic simplex used only as a status oracle in tests.

Same two-phase Bland scheme as the production solver but over Fractions, so
status classification (optimal / infeasible / unbounded) on integer-data LPs
is exact.  Intentionally slow and minimal: statuses and optimal values only.
"""

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _pivot(T, basis, row, col):
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            T[i] = [a - f * b for a, b in zip(T[i], T[row])]
    basis[row] = col


def _run(T, basis, ncols):
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), -1)
        if enter < 0:
            return "optimal"
        best = None
        leave = -1
        for i in range(len(T) - 1):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def solve_status(cost, rows):
    """Status and (when optimal) exact value of min <c,x> s.t. <a,x> >= b."""
    c = [Fraction(v) for v in cost]
    n = len(c)
    m = len(rows)
    if m == 0:
        return (OPTIMAL, Fraction(0)) if all(v == 0 for v in c) else (UNBOUNDED, None)
    A = [[Fraction(v) for v in a] for a, _ in rows]
    b = [Fraction(v) for _, v in rows]
    N = 2 * n + m
    T = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [sign * A[i][j] for j in range(n)]
        row += [-sign * A[i][j] for j in range(n)]
        row += [Fraction(int(i == j)) * (-sign) for j in range(m)]
        row += [Fraction(int(i == j)) for j in range(m)]
        row.append(sign * b[i])
        T.append(row)
    basis = [N + i for i in range(m)]
    obj = [Fraction(0)] * (N + m + 1)
    for i in range(m):
        obj = [o - v for o, v in zip(obj, T[i])]
    for j in range(N, N + m):
        obj[j] = Fraction(0)
    T.append(obj)
    _run(T, basis, N)
    if T[-1][-1] < 0:
        return INFEASIBLE, None
    # drive artificials out / drop redundant rows
    drop = []
    for i in range(m):
        if basis[i] >= N:
            col = next((j for j in range(N) if T[i][j] != 0), -1)
            if col >= 0:
                _pivot(T, basis, i, col)
            else:
                drop.append(i)
    for i in reversed(drop):
        del T[i]
        del basis[i]
    cost_full = [Fraction(0)] * (N + m + 1)
    for j in range(n):
        cost_full[j] = c[j]
        cost_full[n + j] = -c[j]
    obj = list(cost_full)
    for i, bi in enumerate(basis):
        if cost_full[bi] != 0:
            obj = [o - cost_full[bi] * v for o, v in zip(obj, T[i])]
    T[-1] = obj
    status = _run(T, basis, N)
    if status == "unbounded":
        return UNBOUNDED, None
    return OPTIMAL, -T[-1][-1]
