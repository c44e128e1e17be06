"""Finitely supported measures attached to partitions.

Coordinates are half-integers stored doubled, so the cell center ``(1/2, 3/2)``
is the point ``(1, 3)`` and the lattice point ``(1, 2)`` is ``(2, 4)``.
Masses are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError, FormatError
from .partitions import (
    AnyPartition,
    Index,
    MPartition,
    Partition,
    as_mpartition,
    enumerate_m_partitions,
)

# doubled coordinates of a point in R^d
LatticePoint = tuple[int, ...]


def halves(point: LatticePoint) -> tuple[Fraction, ...]:
    """Actual coordinates of a doubled point."""
    return tuple(Fraction(x, 2) for x in point)


def doubled(coords: Sequence) -> LatticePoint:
    out = []
    for x in coords:
        d = Fraction(x) * 2
        if d.denominator != 1:
            raise DomainError(f"coordinate {x} is not a half-integer")
        out.append(int(d))
    return tuple(out)


def _parse_mass(value) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise FormatError(f"bad mass {value!r}") from None


@dataclass(frozen=True)
class DiscreteMeasure:
    """A finite sum of weighted point masses in ``R^dim``.

    Atoms are kept sorted by point; coinciding points are merged by adding
    their masses.
    """

    dim: int
    atoms: tuple[tuple[LatticePoint, Fraction], ...]

    def __init__(self, dim: int, atoms: Union[Mapping[LatticePoint, object], Iterable[tuple[LatticePoint, object]]]):
        items = atoms.items() if isinstance(atoms, Mapping) else atoms
        merged: dict[LatticePoint, Fraction] = {}
        for point, mass in items:
            point = tuple(int(x) for x in point)
            if len(point) != dim:
                raise DomainError(f"point {point} does not have dimension {dim}")
            mass = Fraction(mass)
            if mass <= 0:
                raise DomainError(f"masses must be positive, got {mass} at {point}")
            merged[point] = merged.get(point, Fraction(0)) + mass
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "atoms", tuple(sorted(merged.items())))

    @classmethod
    def unit(cls, dim: int, points: Iterable[LatticePoint]) -> "DiscreteMeasure":
        return cls(dim, [(p, 1) for p in points])

    @property
    def total(self) -> Fraction:
        return sum((m for _, m in self.atoms), Fraction(0))

    @property
    def points(self) -> list[LatticePoint]:
        return [p for p, _ in self.atoms]

    @property
    def masses(self) -> list[Fraction]:
        return [m for _, m in self.atoms]

    @property
    def support(self) -> frozenset[LatticePoint]:
        return frozenset(self.points)

    @property
    def is_unit(self) -> bool:
        return all(m == 1 for _, m in self.atoms)

    def mass_at(self, point: LatticePoint) -> Fraction:
        return dict(self.atoms).get(tuple(point), Fraction(0))

    def map_points(self, f) -> "DiscreteMeasure":
        """Pushforward under an arbitrary point map ``f``."""
        return DiscreteMeasure(self.dim, [(f(p), m) for p, m in self.atoms])

    def translate(self, shift: Sequence[int]) -> "DiscreteMeasure":
        """Translate by a doubled shift vector."""
        return self.map_points(lambda p: tuple(a + b for a, b in zip(p, shift)))

    def __add__(self, other: "DiscreteMeasure") -> "DiscreteMeasure":
        if other.dim != self.dim:
            raise DomainError("cannot add measures of different dimension")
        return DiscreteMeasure(self.dim, list(self.atoms) + list(other.atoms))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "atoms": [{"xy2": list(p), "mass": f"{m.numerator}/{m.denominator}"} for p, m in self.atoms],
        }

    @classmethod
    def from_json(cls, source: Union[str, Mapping]) -> "DiscreteMeasure":
        if isinstance(source, str):
            try:
                source = json.loads(source)
            except json.JSONDecodeError as exc:
                raise FormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
        try:
            dim = source["dim"]
            raw = source["atoms"]
        except (KeyError, TypeError):
            raise FormatError('expected an object with "dim" and "atoms"', "top level") from None
        atoms = []
        for i, atom in enumerate(raw):
            try:
                atoms.append((tuple(atom["xy2"]), _parse_mass(atom["mass"])))
            except (KeyError, TypeError):
                raise FormatError("atom needs xy2 and mass", f"atoms[{i}]") from None
        return cls(dim, atoms)


# -- partition measures ------------------------------------------------------------


def delta_center(p: AnyPartition) -> DiscreteMeasure:
    """Unit atoms at the centers of the Young cells."""
    mp = as_mpartition(p)
    return DiscreteMeasure.unit(mp.dim + 1, (tuple(2 * c - 1 for c in cell) for cell in mp.cells()))


def delta_lattice(p: AnyPartition) -> DiscreteMeasure:
    """Unit atoms at the integer points ``(i_1, ..., i_m, alpha)``."""
    mp = as_mpartition(p)
    return DiscreteMeasure.unit(mp.dim + 1, (tuple(2 * c for c in cell) for cell in mp.cells()))


def centered_column(height: int) -> range:
    """Heights ``floor(-h/2) + alpha`` for ``alpha = 1..h``."""
    low = -height // 2
    return range(low + 1, low + height + 1)


def delta_centered(p: Partition) -> DiscreteMeasure:
    """Columns centered on the x-axis: column i spans ``floor(-n_i/2)+1 .. floor(-n_i/2)+n_i``."""
    return DiscreteMeasure.unit(2, ((2 * i, 2 * y) for i, ni in enumerate(p.parts, 1) for y in centered_column(ni)))


def columns_measure(heights: Sequence[int], positions: Sequence[int] | None = None) -> DiscreteMeasure:
    """Lattice measure of columns ``heights[t]`` standing at x = ``positions[t]``.

    Positions default to ``1, 2, ...``; this also serves generalized partitions.
    """
    if positions is None:
        positions = range(1, len(heights) + 1)
    if len(positions) != len(heights):
        raise DomainError("one position per column is required")
    return DiscreteMeasure.unit(2, ((2 * x, 2 * a) for x, h in zip(positions, heights) for a in range(1, h + 1)))


def delta_permuted(p: Partition, sigma: Sequence[int]) -> DiscreteMeasure:
    """Column i of ``p`` relocated to x = ``sigma(i)``."""
    sigma = tuple(sigma)
    if len(sigma) != p.k or sorted(sigma) != list(range(1, p.k + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{p.k}")
    return columns_measure(p.parts, sigma)


def column_measure(p: Partition, i: int) -> DiscreteMeasure:
    if not 1 <= i <= p.k:
        raise DomainError(f"column index {i} outside 1..{p.k}")
    return columns_measure([p.parts[i - 1]], [i])


def gu_measure(p: Partition, i: int) -> DiscreteMeasure:
    """A ``g(n_i) x u(n_i)`` rectangle of unit atoms at ``(j1, j2)``."""
    from .euler import prime_split

    if not 1 <= i <= p.k:
        raise DomainError(f"column index {i} outside 1..{p.k}")
    split = prime_split(p.parts[i - 1])
    return DiscreteMeasure.unit(2, ((2 * a, 2 * b) for a in range(1, split.g + 1) for b in range(1, split.u + 1)))


# -- stair densities -----------------------------------------------------------------------


@dataclass(frozen=True)
class StairDensity:
    """Piecewise constant density equal to ``pieces[idx]`` on the cell ``]idx-1, idx]``."""

    dim: int
    pieces: tuple[tuple[Index, int], ...]

    @property
    def integral(self) -> int:
        return sum(v for _, v in self.pieces)

    def __call__(self, *x) -> int:
        # ]i-1, i] contains x iff ceil(x) == i
        idx = tuple(-((-Fraction(c)).__floor__()) for c in x)
        return dict(self.pieces).get(idx, 0)

    def is_monotone(self) -> bool:
        table = dict(self.pieces)
        for idx, v in table.items():
            for j in range(self.dim):
                nxt = idx[:j] + (idx[j] + 1,) + idx[j + 1:]
                if table.get(nxt, 0) > v:
                    return False
                prev = idx[:j] + (idx[j] - 1,) + idx[j + 1:]
                if idx[j] > 1 and table.get(prev, 0) < v:
                    return False
        return True


def stair_density(p: AnyPartition) -> StairDensity:
    mp = as_mpartition(p)
    return StairDensity(mp.dim, mp.entries)


# -- projections -------------------------------------------------------------------------


def pushforward(mu: DiscreteMeasure, axes: Sequence[int]) -> DiscreteMeasure:
    """Project onto the coordinates ``axes`` (0-based, kept in the given order)."""
    axes = tuple(axes)
    if not axes:
        raise DomainError("pushforward needs at least one axis to keep")
    if any(not 0 <= a < mu.dim for a in axes):
        raise DomainError(f"axes {axes} outside 0..{mu.dim - 1}")
    return DiscreteMeasure(len(axes), [(tuple(p[a] for a in axes), m) for p, m in mu.atoms])


def coordinate_projections(p: MPartition) -> list[DiscreteMeasure]:
    """The m pushforwards of the stair density that each forget one index coordinate.

    Entry ``j`` forgets coordinate ``j`` (and the height), so for m = 2 the two
    measures carry the row sums and the column sums of the array.
    """
    if p.dim < 2:
        raise DomainError("forgetting a coordinate needs m >= 2")
    lattice = delta_lattice(p)
    return [pushforward(lattice, [a for a in range(p.dim) if a != j]) for j in range(p.dim)]


def reconstruct_from_projections(
    projs: Union[Sequence[DiscreteMeasure], Mapping[int, DiscreteMeasure]], n: int, m: int
) -> list[MPartition]:
    """All partitions in P_m(n) whose coordinate projections match ``projs``.

    ``projs`` maps a forgotten axis to its projection; a plain sequence covers
    axes ``0, 1, ...``.  The search is exhaustive over P_m(n).
    """
    given = dict(projs) if isinstance(projs, Mapping) else dict(enumerate(projs))
    if not given:
        raise DomainError("at least one projection is required")
    if m < 2:
        raise DomainError("forgetting a coordinate needs m >= 2")
    for axis, mu in given.items():
        if not 0 <= axis < m:
            raise DomainError(f"forgotten axis {axis} outside 0..{m - 1}")
        if mu.total != n:
            raise DomainError(f"projection for axis {axis} has total {mu.total}, expected {n}")
    matches = []
    for p in enumerate_m_partitions(n, m):
        own = coordinate_projections(p)
        if all(own[a] == mu for a, mu in given.items()):
            matches.append(p)
    return matches
