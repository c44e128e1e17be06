import pytest

from partition_ot.errors import DomainError
from partition_ot.euler import psi_from_blocks
from partition_ot.partitions import Partition
from partition_ot.suites import SUITES, altered_blocks, run_suite
from partition_ot.transport import L1


@pytest.mark.parametrize("name,n_max", [
    ("idonspt", 4), ("ccyclic", 4), ("metric", 4), ("allodd", 6), ("alldistinct", 6),
    ("euler_bijection", 20), ("euler_cost", 8),
])
def test_small_suites_pass(name, n_max):
    result = run_suite(name, n_max)
    assert result.rows
    assert result.passed, result.failures[:3]
    assert all(set(result.columns) == set(row) for row in result.rows)


def test_reflection_suite_passes_below_eight():
    assert run_suite("reflection", 7).passed
    failing = run_suite("reflection", 8).failures
    assert [r["partition"] for r in failing] == ["4+2+2", "3+3+1+1"]


def test_projection_suite_reports_collisions():
    result = run_suite("projections", 6)
    failing = {r["partition"] for r in result.failures}
    assert failing == {"[[2,2],[2]]", "[[3,1],[1,1]]"}
    witness = result.rows[-1]
    assert witness["check"] == "single_projection_witness" and witness["pass"]


def test_altered_blocks():
    assert altered_blocks(Partition((5, 4, 3, 1))) == [(3, 1, 1), (1, 1, 1, 1), (3,), (1,)]
    assert altered_blocks(Partition((4,))) == [(3, 1)]
    assert altered_blocks(Partition((2, 1))) is None
    p = Partition((4,))
    assert psi_from_blocks(p, altered_blocks(p)).partition.n == 4


def test_run_suite_validation():
    with pytest.raises(DomainError):
        run_suite("nope")
    with pytest.raises(DomainError):
        run_suite("metric", 99)
    assert set(SUITES) == {"idonspt", "reflection", "ccyclic", "metric", "allodd", "alldistinct",
                           "euler_bijection", "euler_cost", "projections"}


def test_cost_override():
    result = run_suite("idonspt", 3, [L1])
    assert {r["cost"] for r in result.rows} == {"l1"}
