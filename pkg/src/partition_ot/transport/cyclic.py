"""c-cyclic monotonicity of matchings.

A matching ``x_i -> y_i`` is c-cyclically monotone when no re-pairing of
finitely many of its pairs lowers the cost:
``sum c(x_i, y_i) <= sum c(x_sigma(i), y_i)``.  Any permutation of a subset
splits into disjoint cycles and the cost change is additive over them, so
testing cyclic permutations of every subset of size ``<= K`` is already
complete for size ``K``; the ``"permutations"`` mode tests every permutation
literally.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from ..errors import DomainError
from .costs import CostFunction
from .monge import COST_ATOL, TransportPlan

DEFAULT_MAX_CYCLE = 3
MODES = ("cycles", "permutations")


@dataclass(frozen=True)
class CyclicReport:
    certified: bool
    checked: int
    # (subset of pair indices, images of sigma on that subset), or None
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    gain: float = 0.0


@lru_cache(maxsize=None)
def _rearrangements(n: int, k: int, mode: str) -> tuple[np.ndarray, np.ndarray]:
    """Arrays ``(subsets, images)`` of shape ``(count, k)`` for subsets of size k."""
    subs, imgs = [], []
    for subset in combinations(range(n), k):
        if mode == "cycles":
            head, rest = subset[0], subset[1:]
            for order in permutations(rest):
                cycle = (head,) + order
                image = dict(zip(cycle, cycle[1:] + cycle[:1]))
                subs.append(subset)
                imgs.append(tuple(image[s] for s in subset))
        else:
            for image in permutations(subset):
                if image != subset:
                    subs.append(subset)
                    imgs.append(image)
    shape = (len(subs), k)
    return np.array(subs, dtype=np.intp).reshape(shape), np.array(imgs, dtype=np.intp).reshape(shape)


def _plan_matrix(plan: TransportPlan, c: CostFunction):
    if c.is_exact:
        return c.scaled_matrix(plan.sources, plan.targets), True
    return c.matrix(plan.sources, plan.targets), False


def rearrangement_gains(C: np.ndarray, matchings: np.ndarray, max_cycle: int, mode: str = "cycles"):
    """Yield ``(k, subsets, images, gains)`` with gains of shape ``(len(matchings), count)``.

    ``gain = sum c(x_i, y_i) - sum c(x_sigma(i), y_i)``; a positive gain is a
    violation.
    """
    matchings = np.atleast_2d(np.asarray(matchings, dtype=np.intp))
    n = matchings.shape[1]
    # G[r, a, b] = c(x_a, y_{f_r(b)}): source a sent to the target of pair b
    G = C[:, matchings].transpose(1, 0, 2)
    rows = np.arange(len(matchings))[:, None, None]
    for k in range(2, min(max_cycle, n) + 1):
        subsets, images = _rearrangements(n, k, mode)
        if not len(subsets):
            continue
        own = G[rows, subsets[None], subsets[None]].sum(-1)
        swapped = G[rows, images[None], subsets[None]].sum(-1)
        yield k, subsets, images, own - swapped


def check_c_cyclic_monotone(plan: TransportPlan, c: CostFunction, max_cycle: int = DEFAULT_MAX_CYCLE, mode: str = "cycles") -> CyclicReport:
    """Search the graph of a matching for a cost-lowering re-pairing.

    Subsets of up to ``max_cycle`` pairs are tested; ``max_cycle >= n`` makes
    the check exhaustive.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if plan.mode != "matching":
        raise DomainError("cyclic monotonicity is checked on matchings")
    C, exact = _plan_matrix(plan, c)
    tol = 0 if exact else COST_ATOL
    checked = 0
    for _, subsets, images, gains in rearrangement_gains(C, [plan.matching], max_cycle, mode):
        gains = gains[0]
        checked += len(gains)
        bad = np.flatnonzero(gains > tol)
        if len(bad):
            r = bad[np.argmax(gains[bad])]
            witness = (tuple(int(s) for s in subsets[r]), tuple(int(s) for s in images[r]))
            gain = float(gains[r]) / (c.scale if exact else 1)
            return CyclicReport(False, checked, witness, gain)
    return CyclicReport(True, checked)


def cyclic_monotone_mask(plan_sources, plan_targets, matchings, c: CostFunction, max_cycle: int, mode: str = "cycles") -> np.ndarray:
    """Vectorized certification of many matchings between the same supports."""
    matchings = np.atleast_2d(np.asarray(matchings, dtype=np.intp))
    if c.is_exact:
        C, tol = c.scaled_matrix(plan_sources, plan_targets), 0
    else:
        C, tol = c.matrix(plan_sources, plan_targets), COST_ATOL
    ok = np.ones(len(matchings), dtype=bool)
    for _, _, _, gains in rearrangement_gains(C, matchings, max_cycle, mode):
        ok &= ~(gains > tol).any(axis=1)
    return ok
