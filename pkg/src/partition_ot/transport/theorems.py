"""Partition-level transport: the partition metric and constructed optimal maps."""
from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from typing import Callable, Iterable, Sequence

from ..errors import DomainError, UnsupportedDimensionError
from ..measures import DiscreteMeasure, LatticePoint, delta_center
from ..partitions import (
    AnyPartition,
    Partition,
    all_permutations,
    as_mpartition,
    conjugate,
    enumerate_m_partitions,
    permute_coordinates,
    sigma_symmetric,
)
from .costs import EUCLIDEAN, L1, CostFunction, require_metric_like
from .cyclic import DEFAULT_MAX_CYCLE, check_c_cyclic_monotone
from .monge import COST_ATOL, costs_equal, plan_from_map, solve_monge

# full cyclic exhaustion is only affordable up to this many points
FULL_CYCLIC_MAX_N = 6


def _same_shape(p_minus: AnyPartition, p_plus: AnyPartition) -> None:
    a, b = as_mpartition(p_minus), as_mpartition(p_plus)
    if a.dim != b.dim:
        raise DomainError(f"partitions have different dimensions {a.dim} and {b.dim}")
    if a.n != b.n:
        raise DomainError(f"partitions of different integers {a.n} and {b.n} carry different total mass")


def is_zero(value) -> bool:
    return value == 0 if not isinstance(value, float) else abs(value) <= COST_ATOL


def partition_distance(p_minus: AnyPartition, p_plus: AnyPartition, c: CostFunction = EUCLIDEAN):
    """Optimal matching cost between the cell-center measures."""
    require_metric_like(c)
    _same_shape(p_minus, p_plus)
    return solve_monge(delta_center(p_minus), delta_center(p_plus), c).value


def first_return_map(source: DiscreteMeasure, target: DiscreteMeasure, T: Callable) -> dict[LatticePoint, LatticePoint]:
    """Identity on the common support, ``T`` iterated past it elsewhere.

    ``T`` must map the source support bijectively onto the target support.
    A point outside the common support follows ``z, T(z), T(T(z)), ...``
    until the orbit leaves the common support; this is the exchange argument
    that lets an optimal map fix common points.
    """
    src, dst = source.support, target.support
    if {T(z) for z in src} != dst:
        raise DomainError("T does not map the source support onto the target support")
    common = src & dst
    f = {}
    for z in source.points:
        if z in common:
            f[z] = z
            continue
        w = T(z)
        while w in common:
            w = T(w)
        f[z] = w
    if set(f.values()) != dst:
        raise DomainError("constructed map is not a bijection")
    return f


@dataclass(frozen=True)
class IdentityReport:
    common: int
    constrained_cost: object
    optimal_cost: object
    ok: bool


def verify_identity_on_intersection(p_minus: AnyPartition, p_plus: AnyPartition, c: CostFunction = EUCLIDEAN) -> IdentityReport:
    """Compare the optimum with the optimum among maps fixing the common support."""
    require_metric_like(c)
    _same_shape(p_minus, p_plus)
    mu, nu = delta_center(p_minus), delta_center(p_plus)
    optimal = solve_monge(mu, nu, c).value
    common = mu.support & nu.support
    fixed = sum(c.exact(z, z) if c.is_exact else c(z, z) for z in common)
    rest_mu = [z for z in mu.points if z not in common]
    rest_nu = [z for z in nu.points if z not in common]
    if rest_mu:
        moved = solve_monge(DiscreteMeasure.unit(mu.dim, rest_mu), DiscreteMeasure.unit(nu.dim, rest_nu), c).value
    else:
        moved = 0
    constrained = fixed + moved
    return IdentityReport(len(common), constrained, optimal, costs_equal(constrained, optimal))


@dataclass(frozen=True)
class ReflectionReport:
    partition: str
    constructed_cost: float
    optimal_cost: float
    optimal: bool
    certified: bool
    self_symmetric: bool
    supports_equal: bool
    zero_cost: bool

    @property
    def ok(self) -> bool:
        return self.optimal and self.certified and self.self_symmetric == self.supports_equal == self.zero_cost


def reflect_diagonal(z: LatticePoint) -> LatticePoint:
    return (z[1], z[0])


def verify_reflection_optimal(p: Partition, max_cycle: int | None = None) -> ReflectionReport:
    """Check that identity-plus-reflection is an optimal map onto the conjugate.

    The cost is Euclidean.  The constructed map is also certified cyclically
    monotone, exhaustively up to ``FULL_CYCLIC_MAX_N`` points and with
    ``DEFAULT_MAX_CYCLE`` above that unless ``max_cycle`` is given.
    """
    c = EUCLIDEAN
    mu, nu = delta_center(p), delta_center(conjugate(p))
    f = first_return_map(mu, nu, reflect_diagonal)
    constructed = plan_from_map(mu, nu, f, c)
    optimal = solve_monge(mu, nu, c)
    if max_cycle is None:
        max_cycle = p.n if p.n <= FULL_CYCLIC_MAX_N else DEFAULT_MAX_CYCLE
    cert = check_c_cyclic_monotone(constructed, c, max_cycle)
    return ReflectionReport(
        str(p),
        constructed.cost,
        optimal.cost,
        costs_equal(constructed.cost, optimal.cost),
        cert.certified,
        conjugate(p) == p,
        mu.support == nu.support,
        is_zero(optimal.cost),
    )


@dataclass(frozen=True)
class ScanRow:
    n: int
    m: int
    partition: str
    sigma: str
    cost: str
    rejected: bool
    image: str
    self_symmetric: bool | None
    constructed_cost: float | None
    optimal_cost: float | None
    map_optimal: bool | None
    zero_cost: bool | None
    biconditional: bool | None

    @property
    def passed(self) -> bool:
        return not self.rejected and bool(self.map_optimal) and bool(self.biconditional)


SCAN_COLUMNS = tuple(f.name for f in fields(ScanRow))
SCAN_MAX_N = {1: 12, 2: 8}


def _sigma_str(sigma: Sequence[int]) -> str:
    return "(" + " ".join(map(str, sigma)) + ")"


def scan_sigma_conjecture(n: int, m: int, costs: Iterable[CostFunction] = (EUCLIDEAN, L1), max_n: int | None = None) -> list[ScanRow]:
    """Evidence table for the sigma-symmetry conjecture over P_m(n).

    For every partition and every permutation of the m+1 coordinates the
    identity-plus-T_sigma map (see :func:`first_return_map`) is compared with
    the optimum, and sigma-selfsymmetry is compared with zero optimal cost.
    Rows are sorted by (partition order, sigma, cost).
    """
    if m not in SCAN_MAX_N:
        raise UnsupportedDimensionError(f"the conjecture scan supports m in {sorted(SCAN_MAX_N)}, got {m}")
    cap = SCAN_MAX_N[m] if max_n is None else max_n
    if not 1 <= n <= cap:
        raise DomainError(f"n={n} outside the scan range 1..{cap}")
    costs = list(costs)
    for c in costs:
        require_metric_like(c)
    rows = []
    for p in enumerate_m_partitions(n, m):
        shown = str(p.to_partition()) if m == 1 else str(p)
        mu = delta_center(p)
        for sigma in all_permutations(m + 1):
            image = sigma_symmetric(p, sigma)
            if image is None:
                for c in costs:
                    rows.append(ScanRow(n, m, shown, _sigma_str(sigma), c.name, True, "", None, None, None, None, None, None))
                continue
            nu = delta_center(image)
            f = first_return_map(mu, nu, lambda z, s=sigma: permute_coordinates(z, s))
            selfsym = image == p
            for c in costs:
                constructed = plan_from_map(mu, nu, f, c)
                optimal = solve_monge(mu, nu, c)
                zero = is_zero(optimal.value)
                rows.append(
                    ScanRow(
                        n, m, shown, _sigma_str(sigma), c.name, False,
                        str(image.to_partition()) if m == 1 else str(image),
                        selfsym, constructed.cost, optimal.cost,
                        costs_equal(constructed.value, optimal.value), zero, selfsym == zero,
                    )
                )
    return rows


def scan_summary(rows: Sequence[ScanRow]) -> dict[str, int]:
    return {
        "cells": len(rows),
        "pass": sum(r.passed for r in rows),
        "fail": sum(not r.rejected and not r.passed for r in rows),
        "rejected": sum(r.rejected for r in rows),
    }


def rows_to_csv(rows: Sequence, columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        values = astuple(r) if hasattr(r, "__dataclass_fields__") else tuple(r[c] for c in columns)
        writer.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in values])
    return buf.getvalue()
