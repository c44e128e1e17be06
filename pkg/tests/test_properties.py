"""Randomized properties checked with hypothesis against small exhaustive oracles."""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from partition_ot.euler import euler_cost, phi_bar, phi_bar_inverse, psi_from_phi
from partition_ot.measures import DiscreteMeasure, delta_center
from partition_ot.partitions import ALL_DISTINCT, Partition, classify, conjugate, parse_partition
from partition_ot.transport import L1, brute_force_monge, costs_equal, solve_kantorovich, solve_monge


@st.composite
def partitions(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    parts, left = [], n
    while left:
        cap = min(left, parts[-1] if parts else left)
        x = draw(st.integers(1, cap))
        parts.append(x)
        left -= x
    return Partition(tuple(parts))


@st.composite
def partition_pairs(draw, max_n=7):
    a = draw(partitions(max_n))
    parts, left = [], a.n
    while left:
        cap = min(left, parts[-1] if parts else left)
        x = draw(st.integers(1, cap))
        parts.append(x)
        left -= x
    return a, Partition(tuple(parts))


@given(partitions(20))
def test_string_round_trip(p):
    assert parse_partition(str(p)) == p


@given(partitions(20))
def test_conjugation_is_an_involution(p):
    q = conjugate(p)
    assert q.n == p.n and conjugate(q) == p


@settings(max_examples=60, deadline=None)
@given(partition_pairs())
def test_solver_agrees_with_brute_force(pair):
    mu, nu = delta_center(pair[0]), delta_center(pair[1])
    assert solve_monge(mu, nu, L1).value == brute_force_monge(mu, nu, L1).value


@settings(max_examples=60, deadline=None)
@given(partition_pairs())
def test_distance_symmetry(pair):
    mu, nu = delta_center(pair[0]), delta_center(pair[1])
    assert costs_equal(solve_monge(mu, nu, L1).value, solve_monge(nu, mu, L1).value)


@given(partitions(30))
def test_glaisher_round_trip(p):
    if ALL_DISTINCT in classify(p):
        assert phi_bar_inverse(phi_bar(p)) == p


@settings(max_examples=30, deadline=None)
@given(partitions(14))
def test_phi_is_free(p):
    if ALL_DISTINCT in classify(p):
        assert euler_cost(p, psi_from_phi(p), L1) == 0


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 5)), min_size=1, max_size=5, unique_by=lambda t: t[0]),
    st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 5)), min_size=1, max_size=5, unique_by=lambda t: t[0]),
)
def test_kantorovich_strong_duality(src, dst):
    sa, sb = sum(w for _, w in src), sum(w for _, w in dst)
    mu = DiscreteMeasure(1, [((x,), Fraction(w, sa)) for x, w in src])
    nu = DiscreteMeasure(1, [((x,), Fraction(w, sb)) for x, w in dst])
    plan, duals = solve_kantorovich(mu, nu, L1)
    assert plan.marginals_ok(mu, nu)
    assert duals.objective == plan.cost_exact
    assert duals.max_violation(L1.matrix(mu.points, nu.points)) <= 0
