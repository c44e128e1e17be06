"""Integer partitions of any dimension.

A one dimensional partition is a decreasing tuple of positive parts.  An
m-dimensional partition is an array of positive integers indexed by positive
m-tuples, decreasing along every axis; its index support is a staircase
(every componentwise-smaller tuple is present).  Both are identified with
their Young diagram, the set of unit cells ``(i_1, ..., i_m, alpha)`` with
``1 <= alpha <= n_{i_1...i_m}``.

Enumeration order
-----------------
``enumerate_partitions`` lists part sequences in lexicographically
decreasing order: ``(4), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)``.

``enumerate_m_partitions`` views an m-dimensional partition as the chain of
its (m-1)-dimensional slices along the first index and orders chains by slice
size, decreasing, then recursively by slice.  For m = 1 this coincides with
the order above.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, FormatError, UnsupportedDimensionError

ALL_ODD = "all_odd"
ALL_DISTINCT = "all_distinct"
SELF_SYMMETRIC = "self_symmetric"
CLASS_TAGS = (ALL_ODD, ALL_DISTINCT, SELF_SYMMETRIC)

Index = tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """A one dimensional partition ``n_1 >= ... >= n_k >= 1``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise DomainError("a partition needs at least one part")
        if parts[-1] < 1:
            raise DomainError(f"parts must be positive: {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise DomainError(f"parts must be decreasing: {parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def entry(self, i: int) -> int:
        """The entry function: ``n_i`` for ``1 <= i <= k`` and 0 otherwise."""
        return self.parts[i - 1] if 1 <= i <= self.k else 0

    def cells(self) -> list[Index]:
        return [(i, a) for i, ni in enumerate(self.parts, 1) for a in range(1, ni + 1)]

    def to_mpartition(self) -> "MPartition":
        return MPartition(1, {(i,): v for i, v in enumerate(self.parts, 1)})

    def __str__(self):
        return "+".join(map(str, self.parts))


@dataclass(frozen=True)
class GeneralizedPartition:
    """Positive parts summing to ``n`` in arbitrary order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or min(parts) < 1:
            raise DomainError(f"generalized partition parts must be positive: {parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def sorted(self) -> Partition:
        return Partition(tuple(sorted(self.parts, reverse=True)))


@dataclass(frozen=True)
class MPartition:
    """An m-dimensional partition stored as ``((index, value), ...)`` sorted by index.

    Indices are 1-based m-tuples.  Construct from a mapping or with
    :meth:`from_nested`.
    """

    dim: int
    entries: tuple[tuple[Index, int], ...]

    def __init__(self, dim: int, entries: Union[Mapping[Index, int], Iterable[tuple[Index, int]]]):
        items = entries.items() if isinstance(entries, Mapping) else entries
        table = {}
        for idx, v in items:
            idx = tuple(int(x) for x in idx)
            if idx in table:
                raise DomainError(f"duplicate index {idx}")
            table[idx] = int(v)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "entries", tuple(sorted(table.items())))
        problem = _mpartition_problem(self.dim, table)
        if problem:
            raise DomainError(problem)

    @classmethod
    def from_nested(cls, nested, dim: int | None = None) -> "MPartition":
        """Build from row-major nested lists, e.g. ``[[2, 1], [1]]`` for m = 2."""
        if dim is None:
            dim, probe = 0, nested
            while isinstance(probe, (list, tuple)):
                dim += 1
                probe = probe[0] if probe else None
        table = {}
        _flatten_nested(nested, dim, (), table, "entries")
        return cls(dim, table)

    @property
    def n(self) -> int:
        return sum(v for _, v in self.entries)

    @property
    def table(self) -> dict[Index, int]:
        return dict(self.entries)

    @property
    def shape(self) -> tuple[int, ...]:
        """Bounds ``k_1, ..., k_m`` of the index support."""
        return tuple(max(idx[j] for idx, _ in self.entries) for j in range(self.dim))

    @property
    def is_full_box(self) -> bool:
        """True when the support is the whole box ``k_1 x ... x k_m``."""
        size = 1
        for kj in self.shape:
            size *= kj
        return size == len(self.entries)

    def value(self, idx: Index) -> int:
        return self.table.get(tuple(idx), 0)

    def cells(self) -> list[Index]:
        return [idx + (a,) for idx, v in self.entries for a in range(1, v + 1)]

    def to_nested(self):
        return _nest(self.table, self.dim, ())

    def to_partition(self) -> Partition:
        if self.dim != 1:
            raise UnsupportedDimensionError(f"dim {self.dim} partition is not one dimensional")
        return Partition(tuple(v for _, v in self.entries))

    def to_json(self) -> dict:
        return {"dim": self.dim, "entries": self.to_nested()}

    def __str__(self):
        return json.dumps(self.to_nested(), separators=(",", ":"))


AnyPartition = Union[Partition, MPartition]


def as_mpartition(p: AnyPartition) -> MPartition:
    return p.to_mpartition() if isinstance(p, Partition) else p


def _mpartition_problem(dim: int, table: Mapping[Index, int]) -> str | None:
    if dim < 1:
        return f"dimension must be positive, got {dim}"
    if not table:
        return "a partition needs at least one entry"
    for idx, v in table.items():
        if len(idx) != dim:
            return f"index {idx} has arity {len(idx)}, expected {dim}"
        if min(idx) < 1:
            return f"index {idx} is not positive"
        if v < 1:
            return f"entry at {idx} is {v}; entries must be positive"
        for j in range(dim):
            if idx[j] > 1:
                pred = idx[:j] + (idx[j] - 1,) + idx[j + 1:]
                if pred not in table:
                    return f"index support is not a staircase: {idx} present but {pred} missing"
                if table[pred] < v:
                    return f"entries not decreasing along axis {j + 1}: {pred}={table[pred]} < {idx}={v}"
    return None


def is_valid_mpartition(dim: int, table: Mapping[Index, int]) -> bool:
    return _mpartition_problem(dim, table) is None


def _flatten_nested(node, depth, prefix, out, path):
    if depth == 0:
        if isinstance(node, bool) or not isinstance(node, int):
            raise FormatError(f"expected an integer entry, got {node!r}", path)
        if node < 1:
            raise FormatError(f"entries must be positive, got {node}", path)
        out[prefix] = node
        return
    if not isinstance(node, (list, tuple)) or not node:
        raise FormatError(f"expected a nonempty array at depth {depth}", path)
    for i, child in enumerate(node):
        _flatten_nested(child, depth - 1, prefix + (i + 1,), out, f"{path}[{i}]")


def _nest(table, depth, prefix):
    if depth == 0:
        return table[prefix]
    out = []
    i = 1
    while any(idx[: len(prefix) + 1] == prefix + (i,) for idx in table):
        out.append(_nest(table, depth - 1, prefix + (i,)))
        i += 1
    return out


# -- Young cells -------------------------------------------------------------


def young_cells(p: AnyPartition) -> list[Index]:
    """Cells ``(i_1, ..., i_m, alpha)`` of the Young diagram, 1-based."""
    return p.cells()


def from_cells(cells: Iterable[Index], dim: int) -> MPartition | None:
    """Read a cell set back as an MPartition, or None if it is not a Young diagram."""
    cells = set(map(tuple, cells))
    heights: dict[Index, int] = {}
    for c in cells:
        if len(c) != dim + 1 or min(c) < 1:
            return None
        heights[c[:-1]] = max(heights.get(c[:-1], 0), c[-1])
    for idx, h in heights.items():
        if any(idx + (a,) not in cells for a in range(1, h)):
            return None
    if not is_valid_mpartition(dim, heights):
        return None
    return MPartition(dim, heights)


# -- enumeration ---------------------------------------------------------------


def _partitions(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def iter_partitions(n: int) -> Iterator[Partition]:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    for parts in _partitions(n, n):
        yield Partition(parts)


def enumerate_partitions(n: int, filter: Callable[[Partition], bool] | str | None = None) -> list[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order.

    ``filter`` is a predicate or one of the class tags in :data:`CLASS_TAGS`.
    """
    if isinstance(filter, str):
        tag = filter
        if tag not in CLASS_TAGS:
            raise DomainError(f"unknown class tag {tag!r}")
        filter = lambda p: tag in classify(p)  # noqa: E731
    out = iter_partitions(n)
    if filter is not None:
        return [p for p in out if filter(p)]
    return list(out)


def _size(obj, depth):
    return obj if depth == 0 else sum(_size(x, depth - 1) for x in obj)


def _meet(a, b, depth):
    if a is None:
        return b
    if b is None:
        return a
    if depth == 0:
        return min(a, b)
    return tuple(_meet(x, y, depth - 1) for x, y in zip(a, b))


def _bounded(m, n, cap):
    # nested m-dim partitions of n contained in cap (None = unbounded)
    if m == 0:
        if cap is None or n <= cap:
            yield n
        return
    yield from _chains(m, n, cap, 0, None)


def _chains(m, n, caps, j, prev):
    if n == 0:
        yield ()
        return
    if caps is not None and j >= len(caps):
        return
    eff = _meet(None if caps is None else caps[j], prev, m - 1)
    limit = n if eff is None else min(n, _size(eff, m - 1))
    for s in range(limit, 0, -1):
        for first in _bounded(m - 1, s, eff):
            for rest in _chains(m, n - s, caps, j + 1, first):
                yield (first,) + rest


def _nested_to_table(obj, depth, prefix, out):
    if depth == 0:
        out[prefix] = obj
        return
    for i, child in enumerate(obj, 1):
        _nested_to_table(child, depth - 1, prefix + (i,), out)


def iter_m_partitions(n: int, m: int) -> Iterator[MPartition]:
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be positive, got n={n}, m={m}")
    for nested in _bounded(m, n, None):
        table = {}
        _nested_to_table(nested, m, (), table)
        yield MPartition(m, table)


def enumerate_m_partitions(n: int, m: int) -> list[MPartition]:
    """All m-dimensional partitions of ``n`` (see module docstring for the order)."""
    return list(iter_m_partitions(n, m))


def count_by_generating_function(n: int, m: int = 1) -> int:
    """Coefficient of ``x^n`` in Euler's (m=1) or MacMahon's (m=2) product."""
    if m not in (1, 2):
        raise UnsupportedDimensionError(f"no generating function for m={m}; only m=1 and m=2")
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    coeffs = [1] + [0] * n
    for i in range(1, n + 1):
        # multiply by 1/(1 - x^i), once for m=1 and i times for m=2
        for _ in range(1 if m == 1 else i):
            for d in range(i, n + 1):
                coeffs[d] += coeffs[d - i]
    return coeffs[n]


# -- structure -----------------------------------------------------------------


def conjugate(p: Partition) -> Partition:
    """Reflect the Young diagram in the line x = y."""
    return Partition(tuple(sum(1 for ni in p.parts if ni >= a) for a in range(1, p.parts[0] + 1)))


def is_self_symmetric(p: Partition) -> bool:
    return conjugate(p) == p


def _check_permutation(sigma: Sequence[int], arity: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != arity or sorted(sigma) != list(range(1, arity + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{arity}")
    return sigma


def permute_coordinates(point: Sequence, sigma: Sequence[int]) -> tuple:
    """Apply the linear map with matrix columns ``e_sigma(1), ..., e_sigma(d)``.

    Coordinate ``j`` of the input becomes coordinate ``sigma(j)`` of the output.
    """
    out = [None] * len(point)
    for j, s in enumerate(sigma):
        out[s - 1] = point[j]
    return tuple(out)


def sigma_symmetric(p: AnyPartition, sigma: Sequence[int]) -> AnyPartition | None:
    """The sigma-symmetric partition, or None if the permuted cells are not a Young diagram.

    ``sigma`` is a permutation of ``1..m+1`` in one-line notation.  For a
    one dimensional input the result is a :class:`Partition`.
    """
    mp = as_mpartition(p)
    sigma = _check_permutation(sigma, mp.dim + 1)
    image = from_cells((permute_coordinates(c, sigma) for c in mp.cells()), mp.dim)
    if image is None:
        return None
    return image.to_partition() if isinstance(p, Partition) else image


def classify(p: Partition) -> frozenset[str]:
    tags = set()
    if all(x % 2 == 1 for x in p.parts):
        tags.add(ALL_ODD)
    if len(set(p.parts)) == p.k:
        tags.add(ALL_DISTINCT)
    if is_self_symmetric(p):
        tags.add(SELF_SYMMETRIC)
    return frozenset(tags)


# -- text and JSON formats ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+)\s*")


def parse_partition(text: str) -> Partition:
    """Parse ``"5+4+3+1"``.  Errors carry a 1-based column position."""
    pos, parts = 0, []
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormatError(f"expected a positive integer in {text!r}", f"column {pos + 1}")
        value = int(m.group(1))
        col = m.start(1) + 1
        if value < 1:
            raise FormatError("parts must be positive", f"column {col}")
        if parts and value > parts[-1]:
            raise FormatError(f"part {value} exceeds preceding part {parts[-1]}; parts must be decreasing", f"column {col}")
        parts.append(value)
        pos = m.end()
        if pos == len(text):
            return Partition(tuple(parts))
        if text[pos] != "+":
            raise FormatError(f"unexpected character {text[pos]!r}", f"column {pos + 1}")
        pos += 1


def parse_mpartition_json(source: str | Mapping) -> MPartition:
    """Parse ``{"dim": m, "entries": nested}``; diagnostics name the line or array path."""
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(source, Mapping) or "dim" not in source or "entries" not in source:
        raise FormatError('expected an object with "dim" and "entries"', "top level")
    dim = source["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FormatError(f"dim must be a positive integer, got {dim!r}", "dim")
    table = {}
    _flatten_nested(source["entries"], dim, (), table, "entries")
    problem = _mpartition_problem(dim, table)
    if problem:
        bad = re.search(r"\(([\d, ]+)\)", problem)
        where = "entries"
        if bad:
            where += "".join(f"[{int(x) - 1}]" for x in bad.group(1).split(",") if x.strip())
        raise FormatError(problem, where)
    return MPartition(dim, table)


def render_ferrer(p: AnyPartition, mark: str = "●") -> str:
    """ASCII Ferrer board of a one dimensional partition, origin bottom-left.

    Column ``i`` holds ``n_i`` marks stacked upward from the bottom row.
    """
    if isinstance(p, MPartition):
        p = p.to_partition()
    rows = []
    for a in range(p.parts[0], 0, -1):
        rows.append(" ".join(mark if ni >= a else " " for ni in p.parts).rstrip())
    return "\n".join(rows)


def all_permutations(k: int) -> Iterator[tuple[int, ...]]:
    """Permutations of ``1..k`` in one-line notation, identity first."""
    return permutations(range(1, k + 1))
