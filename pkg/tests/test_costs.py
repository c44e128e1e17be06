import math
from fractions import Fraction

import numpy as np
import pytest

from partition_ot.errors import DomainError, NotMetricLikeError
from partition_ot.transport.costs import EUCLIDEAN, L1, CostFunction, require_metric_like


def test_parse_kinds():
    assert CostFunction.parse("l1") == L1
    assert CostFunction.parse("power:0.5").exponent == 0.5
    assert CostFunction.parse("power:0.5").name == "power:0.5"
    for bad in ("power:x", "power:-1", "manhattan", "table"):
        with pytest.raises(DomainError):
            CostFunction.parse(bad)


def test_metric_like_flags():
    assert EUCLIDEAN.metric_like and L1.metric_like and CostFunction("linf").metric_like
    assert not CostFunction("sqeuclidean").metric_like
    assert CostFunction("power", 0.5).metric_like
    assert CostFunction("power", 1).metric_like
    assert not CostFunction("power", 2).metric_like
    with pytest.raises(NotMetricLikeError):
        require_metric_like(CostFunction("sqeuclidean"))


def test_values_on_doubled_points():
    x, y = (1, 1), (5, 3)  # (0.5, 0.5) and (2.5, 1.5)
    assert L1.exact(x, y) == 3
    assert CostFunction("linf").exact(x, y) == 2
    assert CostFunction("sqeuclidean").exact(x, y) == 5
    assert math.isclose(EUCLIDEAN(x, y), math.sqrt(5))
    assert math.isclose(CostFunction("power", 0.5)(x, y), 5 ** 0.25)
    with pytest.raises(DomainError):
        EUCLIDEAN.exact(x, y)


def test_half_integer_exact_costs():
    assert L1.exact((0,), (1,)) == Fraction(1, 2)


def test_matrices_agree_with_pointwise_values():
    xs = [(1, 1), (3, 1), (1, 5)]
    ys = [(1, 3), (5, 5), (7, 1)]
    for c in (EUCLIDEAN, L1, CostFunction("linf"), CostFunction("sqeuclidean"), CostFunction("power", 0.7)):
        M = c.matrix(xs, ys)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                assert math.isclose(M[i, j], c(x, y))
        if c.is_exact:
            assert np.array_equal(c.scaled_matrix(xs, ys), (M * c.scale).round().astype(int))


def test_table_costs():
    pts = [(0,), (2,), (4,)]
    table = {(x, y): Fraction(abs(x[0] - y[0]), 2) for x in pts for y in pts}
    c = CostFunction.from_table(table)
    assert c.metric_like and c.is_exact and c.scale == 1
    assert c.exact((0,), (4,)) == 2
    bad = dict(table)
    bad[((0,), (4,))] = bad[((4,), (0,))] = Fraction(5)
    assert not CostFunction.from_table(bad).metric_like
    with pytest.raises(DomainError):
        c.exact((0,), (6,))
