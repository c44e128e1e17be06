"""Cost functions evaluated on doubled lattice points."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from ..errors import DomainError, NotMetricLikeError

KINDS = ("euclidean", "l1", "linf", "sqeuclidean", "power", "table")

# triples checked when deciding whether a table cost is metric-like
TABLE_SAMPLE_TRIPLES = 5000


@dataclass(frozen=True)
class CostFunction:
    """A cost ``c(x, y)`` between points given in doubled coordinates.

    ``l1``, ``linf``, ``sqeuclidean`` and ``table`` costs are rational and are
    evaluated exactly; ``euclidean`` and ``power`` are floating point.
    """

    kind: str
    exponent: float | None = None
    table: Mapping | None = field(default=None, compare=False, repr=False)
    metric_like: bool = field(init=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown cost kind {self.kind!r}")
        if self.kind == "power" and not (self.exponent and self.exponent > 0):
            raise DomainError("power cost needs an exponent p > 0")
        if self.kind == "table":
            if not self.table:
                raise DomainError("table cost needs a nonempty table")
            frozen = {(tuple(x), tuple(y)): Fraction(v) for (x, y), v in self.table.items()}
            object.__setattr__(self, "table", frozen)
        object.__setattr__(self, "metric_like", self._decide_metric_like())

    @classmethod
    def parse(cls, spec: str) -> "CostFunction":
        """Parse ``euclidean``, ``l1``, ``linf``, ``sqeuclidean`` or ``power:P``."""
        if spec.startswith("power:"):
            try:
                return cls("power", float(spec.split(":", 1)[1]))
            except ValueError:
                raise DomainError(f"bad power exponent in {spec!r}") from None
        if spec == "table":
            raise DomainError("table costs are built from a mapping, not a flag")
        return cls(spec)

    @classmethod
    def from_table(cls, table: Mapping) -> "CostFunction":
        return cls("table", table=table)

    @property
    def name(self) -> str:
        return f"power:{self.exponent:g}" if self.kind == "power" else self.kind

    @property
    def is_exact(self) -> bool:
        return self.kind in ("l1", "linf", "sqeuclidean", "table")

    @property
    def scale(self) -> int | None:
        """Integer factor turning exact costs into integers, or None."""
        if self.kind in ("l1", "linf"):
            return 2
        if self.kind == "sqeuclidean":
            return 4
        if self.kind == "table":
            return math.lcm(*(v.denominator for v in self.table.values()))
        return None

    def _decide_metric_like(self) -> bool:
        if self.kind in ("euclidean", "l1", "linf"):
            return True
        if self.kind == "sqeuclidean":
            return False
        if self.kind == "power":
            return self.exponent <= 1
        return _table_is_metric(self)

    def exact(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        if self.kind == "table":
            try:
                return self.table[(tuple(x), tuple(y))]
            except KeyError:
                raise DomainError(f"table cost has no entry for {tuple(x)} -> {tuple(y)}") from None
        d = [abs(a - b) for a, b in zip(x, y)]
        if self.kind == "l1":
            return Fraction(sum(d), 2)
        if self.kind == "linf":
            return Fraction(max(d, default=0), 2)
        if self.kind == "sqeuclidean":
            return Fraction(sum(v * v for v in d), 4)
        raise DomainError(f"{self.kind} cost has no exact value")

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> float:
        if self.is_exact:
            return float(self.exact(x, y))
        r = math.sqrt(sum((a - b) ** 2 for a, b in zip(x, y))) / 2
        return r if self.kind == "euclidean" else r ** self.exponent

    def matrix(self, xs: Sequence[Sequence[int]], ys: Sequence[Sequence[int]]) -> np.ndarray:
        """Float cost matrix ``C[i, j] = c(xs[i], ys[j])``."""
        if self.kind == "table":
            return self.scaled_matrix(xs, ys) / self.scale
        X = np.asarray(xs, dtype=np.int64).reshape(len(xs), -1)
        Y = np.asarray(ys, dtype=np.int64).reshape(len(ys), -1)
        diff = np.abs(X[:, None, :] - Y[None, :, :])
        if self.kind == "l1":
            return diff.sum(-1) / 2
        if self.kind == "linf":
            return diff.max(-1, initial=0) / 2
        sq = (diff ** 2).sum(-1)
        if self.kind == "sqeuclidean":
            return sq / 4
        r = np.sqrt(sq) / 2
        return r if self.kind == "euclidean" else r ** self.exponent

    def scaled_matrix(self, xs, ys) -> np.ndarray:
        """Exact integer matrix equal to ``scale * C``."""
        if not self.is_exact:
            raise DomainError(f"{self.kind} cost has no exact matrix")
        if self.kind == "table":
            s = self.scale
            return np.array([[int(self.exact(x, y) * s) for y in ys] for x in xs], dtype=np.int64).reshape(len(xs), len(ys))
        X = np.asarray(xs, dtype=np.int64).reshape(len(xs), -1)
        Y = np.asarray(ys, dtype=np.int64).reshape(len(ys), -1)
        diff = np.abs(X[:, None, :] - Y[None, :, :])
        if self.kind == "l1":
            return diff.sum(-1)
        if self.kind == "linf":
            return diff.max(-1, initial=0)
        return (diff ** 2).sum(-1)


def _table_is_metric(c: CostFunction, seed: int = 0) -> bool:
    points = sorted({p for pair in c.table for p in pair})
    value = c.table.get
    for x, y in product(points, repeat=2):
        cxy, cyx = value((x, y)), value((y, x))
        if cxy is None or cyx is None:
            return False
        if cxy < 0 or cxy != cyx or (cxy == 0) != (x == y):
            return False
    if len(points) ** 3 <= TABLE_SAMPLE_TRIPLES:
        triples = product(points, repeat=3)
    else:
        rng = random.Random(seed)
        triples = (tuple(rng.choice(points) for _ in range(3)) for _ in range(TABLE_SAMPLE_TRIPLES))
    return all(value((x, z)) <= value((x, y)) + value((y, z)) for x, y, z in triples)


def require_metric_like(c: CostFunction) -> None:
    if not c.metric_like:
        raise NotMetricLikeError(
            f"{c.name} cost is not metric-like (needs c(x,y)=0 iff x=y, symmetry and the triangle inequality)"
        )


EUCLIDEAN = CostFunction("euclidean")
L1 = CostFunction("l1")
