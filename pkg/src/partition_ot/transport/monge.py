"""Monge problem between unit-mass measures: exact assignment and brute force."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import DomainError, NoTransportMapError, SearchLimitError
from ..measures import DiscreteMeasure, LatticePoint
from .costs import CostFunction

# absolute tolerance on floating point costs
COST_ATOL = 1e-9
# relative tolerance when comparing two optimal values
OPT_RTOL = 1e-7
BRUTE_FORCE_MAX_N = 8


def costs_equal(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=OPT_RTOL, abs_tol=COST_ATOL)


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class TransportPlan:
    """A matching (Monge) or a coupling (Kantorovich) with its total cost.

    ``matching[i]`` is the target index of source atom ``i``; ``coupling[i][j]``
    is the mass sent from source atom ``i`` to target atom ``j``.
    """

    mode: str
    sources: tuple[LatticePoint, ...]
    targets: tuple[LatticePoint, ...]
    cost: float
    cost_exact: Fraction | None = None
    matching: tuple[int, ...] | None = None
    coupling: tuple[tuple[Fraction, ...], ...] | None = None

    @property
    def value(self):
        """Exact cost when available, float otherwise."""
        return self.cost_exact if self.cost_exact is not None else self.cost

    @property
    def pairs(self) -> list[tuple[LatticePoint, LatticePoint]]:
        if self.mode != "matching":
            raise DomainError("pairs are defined for matchings only")
        return [(self.sources[i], self.targets[j]) for i, j in enumerate(self.matching)]

    def as_map(self) -> dict[LatticePoint, LatticePoint]:
        return dict(self.pairs)

    def coupling_matrix(self) -> list[list[Fraction]]:
        if self.mode == "coupling":
            return [list(row) for row in self.coupling]
        n = len(self.sources)
        return [[Fraction(int(self.matching[i] == j)) for j in range(n)] for i in range(n)]

    def marginals_ok(self, mu_minus: DiscreteMeasure, mu_plus: DiscreteMeasure) -> bool:
        """Exact check that rows sum to source masses and columns to target masses."""
        if list(self.sources) != mu_minus.points or list(self.targets) != mu_plus.points:
            return False
        gamma = self.coupling_matrix()
        rows = [sum(r, Fraction(0)) for r in gamma]
        cols = [sum(col, Fraction(0)) for col in zip(*gamma)]
        return rows == mu_minus.masses and cols == mu_plus.masses

    def to_json(self) -> dict:
        out = {"mode": self.mode, "sources": [list(p) for p in self.sources], "targets": [list(p) for p in self.targets]}
        if self.mode == "matching":
            out["pairs"] = [[i, j] for i, j in enumerate(self.matching)]
        else:
            out["coupling"] = [[_frac_str(v) for v in row] for row in self.coupling]
        out["cost"] = self.cost
        if self.cost_exact is not None:
            out["cost_exact"] = _frac_str(self.cost_exact)
        return out


def _require_unit_pair(mu_minus: DiscreteMeasure, mu_plus: DiscreteMeasure) -> None:
    if mu_minus.dim != mu_plus.dim:
        raise DomainError("measures live in different dimensions")
    if not (mu_minus.is_unit and mu_plus.is_unit) or len(mu_minus.atoms) != len(mu_plus.atoms):
        raise NoTransportMapError(
            "a transport map needs unit masses on equally many points; otherwise there does not "
            "necessarily exist a transport map, use solve_kantorovich"
        )


def matching_plan(mu_minus: DiscreteMeasure, mu_plus: DiscreteMeasure, matching: Sequence[int], c: CostFunction) -> TransportPlan:
    """Wrap a given bijection (source index -> target index) as a plan with its cost."""
    matching = tuple(int(j) for j in matching)
    n = len(mu_minus.atoms)
    if sorted(matching) != list(range(n)) or len(mu_plus.atoms) != n:
        raise DomainError("matching is not a bijection between the supports")
    xs, ys = mu_minus.points, mu_plus.points
    rows = np.arange(n)
    if c.is_exact:
        exact = Fraction(int(c.scaled_matrix(xs, ys)[rows, list(matching)].sum()), c.scale)
        cost = float(exact)
    else:
        exact = None
        cost = float(c.matrix(xs, ys)[rows, list(matching)].sum())
    return TransportPlan("matching", tuple(xs), tuple(ys), cost, exact, matching=matching)


def plan_from_map(mu_minus: DiscreteMeasure, mu_plus: DiscreteMeasure, f: Mapping, c: CostFunction) -> TransportPlan:
    """Plan for a point map ``f`` from the source support onto the target support."""
    index = {p: j for j, p in enumerate(mu_plus.points)}
    try:
        matching = [index[tuple(f[p])] for p in mu_minus.points]
    except KeyError as exc:
        raise DomainError(f"map does not send the source support into the target support: {exc}") from None
    return matching_plan(mu_minus, mu_plus, matching, c)


def solve_monge(mu_minus: DiscreteMeasure, mu_plus: DiscreteMeasure, c: CostFunction) -> TransportPlan:
    """Minimum-cost bijection between the supports of two unit-mass measures."""
    _require_unit_pair(mu_minus, mu_plus)
    xs, ys = mu_minus.points, mu_plus.points
    C = c.scaled_matrix(xs, ys) if c.is_exact else c.matrix(xs, ys)
    _, cols = linear_sum_assignment(C)
    return matching_plan(mu_minus, mu_plus, cols, c)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> np.ndarray:
    perms = np.array(list(permutations(range(n))), dtype=np.intp)
    return perms.reshape(-1, n)


def matching_costs(mu_minus: DiscreteMeasure, mu_plus: DiscreteMeasure, c: CostFunction, max_n: int = BRUTE_FORCE_MAX_N):
    """Every bijection with its cost, as ``(perms, costs)`` arrays.

    Costs are scaled integers for exact kinds and floats otherwise.
    """
    _require_unit_pair(mu_minus, mu_plus)
    n = len(mu_minus.atoms)
    if n > max_n:
        raise SearchLimitError(f"brute force over {n}! bijections refused (bound {max_n})")
    xs, ys = mu_minus.points, mu_plus.points
    C = c.scaled_matrix(xs, ys) if c.is_exact else c.matrix(xs, ys)
    perms = all_permutations(n)
    return perms, C[np.arange(n), perms].sum(axis=1)


def _optimal_rows(costs: np.ndarray, exact: bool) -> np.ndarray:
    best = costs.min()
    if exact:
        return np.flatnonzero(costs == best)
    return np.flatnonzero(costs <= best + max(COST_ATOL, OPT_RTOL * abs(best)))


def optimal_matchings(mu_minus, mu_plus, c: CostFunction, max_n: int = BRUTE_FORCE_MAX_N) -> list[tuple[int, ...]]:
    """All minimizing bijections found by exhaustive enumeration."""
    perms, costs = matching_costs(mu_minus, mu_plus, c, max_n)
    return [tuple(int(j) for j in perms[r]) for r in _optimal_rows(costs, c.is_exact)]


def brute_force_monge(mu_minus, mu_plus, c: CostFunction, max_n: int = BRUTE_FORCE_MAX_N) -> TransportPlan:
    """A minimizer over all ``n!`` bijections."""
    perms, costs = matching_costs(mu_minus, mu_plus, c, max_n)
    best = int(np.argmin(costs))
    return matching_plan(mu_minus, mu_plus, perms[best], c)
