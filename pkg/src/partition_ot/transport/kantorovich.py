"""Kantorovich problem on finitely supported measures.

Solved with the transportation simplex (MODI potentials, Bland's pivoting
rule).  Masses stay :class:`~fractions.Fraction` throughout, so couplings are
exact; for rational cost kinds the potentials and the cost are exact too.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError
from ..measures import DiscreteMeasure
from .costs import CostFunction
from .monge import COST_ATOL, TransportPlan

MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class DualPotentials:
    """Potentials with ``h_minus[i] + h_plus[j] <= c(x_i, y_j)``."""

    h_minus: tuple
    h_plus: tuple
    objective: object

    def max_violation(self, C) -> float:
        """Largest ``h_minus[i] + h_plus[j] - C[i][j]`` (nonpositive when feasible)."""
        return max(
            float(u + v - C[i][j]) for i, u in enumerate(self.h_minus) for j, v in enumerate(self.h_plus)
        )


def _northwest_corner(a, b):
    a, b = list(a), list(b)
    m, n = len(a), len(b)
    i = j = 0
    basis = {}
    while True:
        x = min(a[i], b[j])
        basis[(i, j)] = x
        a[i] -= x
        b[j] -= x
        if i == m - 1 and j == n - 1:
            return basis
        if a[i] == 0 and i < m - 1:
            i += 1
        else:
            j += 1


def _potentials(basis, C, m, n):
    rows = [[] for _ in range(m)]
    cols = [[] for _ in range(n)]
    for i, j in basis:
        rows[i].append(j)
        cols[j].append(i)
    u = [None] * m
    v = [None] * n
    u[0] = 0
    queue = deque([("r", 0)])
    while queue:
        side, k = queue.popleft()
        if side == "r":
            for j in rows[k]:
                if v[j] is None:
                    v[j] = C[k][j] - u[k]
                    queue.append(("c", j))
        else:
            for i in cols[k]:
                if u[i] is None:
                    u[i] = C[i][k] - v[k]
                    queue.append(("r", i))
    return u, v, rows, cols


def _tree_path(rows, cols, start_row, end_col):
    """Cells on the basis-tree path from row ``start_row`` to column ``end_col``."""
    parent = {("r", start_row): None}
    queue = deque([("r", start_row)])
    while queue:
        node = queue.popleft()
        if node == ("c", end_col):
            break
        side, k = node
        nbrs = [("c", j) for j in rows[k]] if side == "r" else [("r", i) for i in cols[k]]
        for nb in nbrs:
            if nb not in parent:
                parent[nb] = node
                queue.append(nb)
    cells = []
    node = ("c", end_col)
    while parent[node] is not None:
        prev = parent[node]
        cells.append((prev[1], node[1]) if prev[0] == "r" else (node[1], prev[1]))
        node = prev
    cells.reverse()
    return cells


def transportation_simplex(a, b, C, tol=0):
    """Optimal basic flow ``{(i, j): mass}`` and potentials ``(u, v)``.

    ``a`` and ``b`` are exact masses with equal totals; ``C`` is a cost
    matrix (ints, Fractions or floats).
    """
    m, n = len(a), len(b)
    basis = _northwest_corner(a, b)
    for _ in range(MAX_PIVOTS):
        u, v, rows, cols = _potentials(basis, C, m, n)
        entering = None
        for i in range(m):
            for j in range(n):
                if (i, j) not in basis and C[i][j] - u[i] - v[j] < -tol:
                    entering = (i, j)
                    break
            if entering:
                break
        if entering is None:
            return basis, u, v
        i0, j0 = entering
        path = _tree_path(rows, cols, i0, j0)
        minus = path[0::2]
        plus = path[1::2]
        theta = min(basis[cell] for cell in minus)
        leaving = min(cell for cell in minus if basis[cell] == theta)
        for cell in minus:
            basis[cell] -= theta
        for cell in plus:
            basis[cell] += theta
        del basis[leaving]
        basis[entering] = theta
    raise RuntimeError("transportation simplex did not converge")


def solve_kantorovich(mu_minus: DiscreteMeasure, mu_plus: DiscreteMeasure, c: CostFunction):
    """Optimal coupling and dual potentials; returns ``(plan, duals)``."""
    if mu_minus.dim != mu_plus.dim:
        raise DomainError("measures live in different dimensions")
    if mu_minus.total != mu_plus.total:
        raise DomainError(f"total masses differ: {mu_minus.total} != {mu_plus.total}")
    xs, ys = mu_minus.points, mu_plus.points
    a, b = mu_minus.masses, mu_plus.masses
    if c.is_exact:
        C = c.scaled_matrix(xs, ys).tolist()
        tol = 0
    else:
        C = c.matrix(xs, ys).tolist()
        tol = COST_ATOL * 1e-3
    basis, u, v = transportation_simplex(a, b, C, tol)
    coupling = [[Fraction(0)] * len(ys) for _ in xs]
    for (i, j), mass in basis.items():
        coupling[i][j] = mass
    if c.is_exact:
        s = c.scale
        exact = sum((mass * C[i][j] for (i, j), mass in basis.items()), Fraction(0)) / s
        h_minus = tuple(Fraction(x, s) for x in u)
        h_plus = tuple(Fraction(x, s) for x in v)
        objective = sum((ai * hi for ai, hi in zip(a, h_minus)), Fraction(0)) + sum(
            (bj * hj for bj, hj in zip(b, h_plus)), Fraction(0)
        )
        cost = float(exact)
    else:
        exact = None
        cost = sum(float(mass) * C[i][j] for (i, j), mass in basis.items())
        h_minus, h_plus = tuple(u), tuple(v)
        objective = sum(float(ai) * hi for ai, hi in zip(a, h_minus)) + sum(float(bj) * hj for bj, hj in zip(b, h_plus))
    plan = TransportPlan("coupling", tuple(xs), tuple(ys), cost, exact, coupling=tuple(map(tuple, coupling)))
    return plan, DualPotentials(h_minus, h_plus, objective)
