"""Euler's odd/distinct identity seen through optimal transport.

``phi`` replaces each distinct part ``n_i = g * u`` (``g`` a power of two,
``u`` odd) by ``g`` copies of ``u``; sorting gives the bijection ``phi_bar``
from distinct-part to odd-part partitions, inverted by merging equal odd
parts along the binary expansion of their multiplicity.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from more_itertools import distinct_permutations

from .errors import DomainError, FormatError, SearchLimitError
from .measures import DiscreteMeasure, columns_measure, delta_centered, delta_lattice, delta_permuted
from .partitions import ALL_DISTINCT, ALL_ODD, GeneralizedPartition, Partition, all_permutations, classify
from .transport import EUCLIDEAN, CostFunction, solve_monge
from .transport.costs import require_metric_like
from .transport.theorems import is_zero

DISTINCT_SWEEP_MAX_K = 8
# injective placements tried per block before refusing
PLACEMENT_LIMIT = 200_000


@dataclass(frozen=True)
class PrimeSplit:
    m: int
    g: int
    u: int


def prime_split(m: int) -> PrimeSplit:
    """Split ``m = g * u`` into its largest power-of-two factor and odd part."""
    if m < 1:
        raise DomainError(f"prime_split needs a positive integer, got {m}")
    g = m & -m
    return PrimeSplit(m, g, m // g)


@dataclass(frozen=True)
class BlockImage:
    source: int  # 1-based column of the distinct partition
    value: int
    multiplicity: int
    positions: tuple[int, ...]  # 1-based columns inside phi(p)


@dataclass(frozen=True)
class PhiImage:
    partition: GeneralizedPartition
    blocks: tuple[BlockImage, ...]


def _require_distinct(p: Partition) -> None:
    if ALL_DISTINCT not in classify(p):
        raise DomainError(f"{p} does not have distinct parts")


def phi_blocks(p: Partition) -> PhiImage:
    _require_distinct(p)
    parts, blocks = [], []
    for i, ni in enumerate(p.parts, 1):
        s = prime_split(ni)
        start = len(parts) + 1
        parts.extend([s.u] * s.g)
        blocks.append(BlockImage(i, s.u, s.g, tuple(range(start, start + s.g))))
    return PhiImage(GeneralizedPartition(tuple(parts)), tuple(blocks))


def phi(p: Partition) -> GeneralizedPartition:
    return phi_blocks(p).partition


def phi_bar(p: Partition) -> Partition:
    return phi(p).sorted()


def phi_bar_inverse(q: Partition) -> Partition:
    if ALL_ODD not in classify(q):
        raise DomainError(f"{q} has an even part")
    parts = []
    for u in set(q.parts):
        mult, power = q.parts.count(u), 1
        while mult:
            if mult & 1:
                parts.append(u * power)
            mult >>= 1
            power <<= 1
    return Partition(tuple(sorted(parts, reverse=True)))


# -- characterizations -----------------------------------------------------------------


def reflect_x_axis(z):
    return (z[0], -z[1])


@dataclass(frozen=True)
class OddReport:
    partition: str
    all_odd: bool
    invariant: bool
    cost: object
    zero_cost: bool

    @property
    def consistent(self) -> bool:
        return self.all_odd == self.invariant == self.zero_cost


def characterize_odd(p: Partition, c: CostFunction = EUCLIDEAN) -> OddReport:
    """All parts odd vs. reflection invariance of the centered measure vs. zero cost."""
    require_metric_like(c)
    mu = delta_centered(p)
    reflected = mu.map_points(reflect_x_axis)
    cost = solve_monge(mu, reflected, c).value
    return OddReport(str(p), ALL_ODD in classify(p), reflected == mu, cost, is_zero(cost))


@dataclass(frozen=True)
class DistinctReport:
    partition: str
    all_distinct: bool
    permutations_checked: int
    equal_measure: bool  # some sigma != Id has delta^sigma == delta
    zero_cost: bool  # some sigma != Id has C(delta, delta^sigma) == 0
    min_cost: object

    @property
    def consistent(self) -> bool:
        return self.all_distinct == (not self.equal_measure) == (not self.zero_cost)


def characterize_distinct(p: Partition, c: CostFunction = EUCLIDEAN, max_k: int = DISTINCT_SWEEP_MAX_K) -> DistinctReport:
    """Sweep every non-identity column permutation of ``p``.

    Measures built from the same column arrangement coincide, so each
    arrangement is solved once.
    """
    require_metric_like(c)
    if p.k > max_k:
        raise SearchLimitError(f"k={p.k} exceeds the permutation sweep bound {max_k}")
    base = delta_lattice(p)
    arrangement_cost = {}
    equal = zero = False
    checked = 0
    best = None
    perms = all_permutations(p.k)
    next(perms)  # identity
    for sigma in perms:
        checked += 1
        arrangement = [0] * p.k
        for i, s in enumerate(sigma):
            arrangement[s - 1] = p.parts[i]
        arrangement = tuple(arrangement)
        if arrangement not in arrangement_cost:
            moved = delta_permuted(p, sigma)
            arrangement_cost[arrangement] = (moved == base, solve_monge(base, moved, c).value)
        same, cost = arrangement_cost[arrangement]
        equal |= same
        zero |= is_zero(cost)
        best = cost if best is None or cost < best else best
    return DistinctReport(str(p), ALL_DISTINCT in classify(p), checked, equal, zero, best)


# -- the constructed cost --------------------------------------------------------------------


@dataclass(frozen=True)
class PsiBlock:
    source: int
    parts: tuple[int, ...]
    positions: tuple[int, ...]


@dataclass(frozen=True)
class PsiImage:
    """A generalized odd partition together with the column block attributed to each source column."""

    blocks: tuple[PsiBlock, ...]

    @property
    def partition(self) -> GeneralizedPartition:
        cols = {}
        for b in self.blocks:
            for pos, part in zip(b.positions, b.parts):
                cols[pos] = part
        return GeneralizedPartition(tuple(cols[k] for k in sorted(cols)))

    @classmethod
    def from_json(cls, source) -> "PsiImage":
        if isinstance(source, str):
            try:
                source = json.loads(source)
            except json.JSONDecodeError as exc:
                raise FormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
        try:
            raw = source["blocks"]
            blocks = tuple(
                PsiBlock(int(b["source"]), tuple(map(int, b["parts"])), tuple(map(int, b["positions"]))) for b in raw
            )
        except (KeyError, TypeError, ValueError):
            raise FormatError('expected {"blocks": [{"source", "parts", "positions"}]}', "blocks") from None
        return cls(blocks)

    def to_json(self) -> dict:
        return {"blocks": [{"source": b.source, "parts": list(b.parts), "positions": list(b.positions)} for b in self.blocks]}


def psi_from_phi(p: Partition) -> PsiImage:
    image = phi_blocks(p)
    return PsiImage(tuple(PsiBlock(b.source, (b.value,) * b.multiplicity, b.positions) for b in image.blocks))


def psi_from_blocks(p: Partition, blocks: Sequence[Sequence[int]]) -> PsiImage:
    """Lay the given per-column blocks out consecutively, in source order."""
    out, pos = [], 1
    for i, parts in enumerate(blocks, 1):
        out.append(PsiBlock(i, tuple(parts), tuple(range(pos, pos + len(parts)))))
        pos += len(parts)
    return PsiImage(tuple(out))


def _validate_psi(p: Partition, psi: PsiImage) -> int:
    if sorted(b.source for b in psi.blocks) != list(range(1, p.k + 1)):
        raise DomainError("psi needs exactly one block per source column")
    positions = [x for b in psi.blocks for x in b.positions]
    if any(len(b.parts) != len(b.positions) for b in psi.blocks):
        raise DomainError("each block needs one position per part")
    if sorted(positions) != list(range(1, len(positions) + 1)):
        raise DomainError("block positions must tile 1..k(psi(p))")
    for b in psi.blocks:
        if any(x < 1 or x % 2 == 0 for x in b.parts):
            raise DomainError(f"block for column {b.source} has a non-odd part: {b.parts}")
        if sum(b.parts) != p.parts[b.source - 1]:
            raise DomainError(f"block for column {b.source} sums to {sum(b.parts)}, expected {p.parts[b.source - 1]}")
    return len(positions)


def _placements(block: PsiBlock, width: int):
    # the declared placement first, then every injective one
    order = sorted(range(len(block.parts)), key=lambda t: block.positions[t])
    yield tuple(block.positions[t] for t in order), tuple(block.parts[t] for t in order)
    for chosen in combinations(range(1, width + 1), len(block.parts)):
        for arrangement in distinct_permutations(block.parts):
            yield chosen, tuple(arrangement)


def block_distance(target: DiscreteMeasure, block: PsiBlock, width: int, c: CostFunction, limit: int = PLACEMENT_LIMIT):
    """Minimum matching cost from ``target`` to ``block`` placed anywhere in ``width`` columns.

    A zero cost is a global minimum, so the search stops there.
    """
    best = None
    for count, (positions, arrangement) in enumerate(_placements(block, width)):
        if count >= limit:
            raise SearchLimitError(f"more than {limit} placements for block {block.parts}")
        cost = solve_monge(target, columns_measure(arrangement, positions), c).value
        if best is None or cost < best:
            best = cost
            if is_zero(best):
                break
    return best


def euler_cost(p: Partition, psi: PsiImage, c: CostFunction = EUCLIDEAN):
    """The constructed cost between ``p`` and its image ``psi(p)``.

    Per source column, the measure of phi's block is matched against psi's
    block placed in every injective way among the columns of psi(p); the
    minima are summed over columns.
    """
    require_metric_like(c)
    _require_distinct(p)
    width = _validate_psi(p, psi)
    image = phi_blocks(p)
    by_source = {b.source: b for b in psi.blocks}
    total = Fraction(0) if c.is_exact else 0.0
    for block in image.blocks:
        target = columns_measure([block.value] * block.multiplicity, block.positions)
        total += block_distance(target, by_source[block.source], width, c)
    return total
