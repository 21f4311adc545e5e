import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domset import oracle
from domset.errors import InfeasibleError, InputError, ResourceError
from domset.generate import connected_gnp
from domset.graph import Graph, check_feasible, is_dominating
from domset.solvers import (
    ProblemSpec,
    greedy_ds,
    max_independent_set,
    max_leaf_spanning_tree,
    solve,
    solve_min_cds,
    solve_min_ds,
    solve_min_kmcds,
    solve_min_weighted,
    two_phase_cds,
)
from domset.weights import WeightTable

from conftest import connected_graphs, graphs

EXACT = ["exact", "bb"]


@pytest.mark.parametrize("method", EXACT)
def test_min_ds_examples(method, p6, c5):
    assert solve_min_ds(Graph.star(5), method).best_set == (1,)
    res = solve_min_ds(p6, method)
    assert res.objective == 2 == oracle.brute_min(p6)[0]
    assert res.best_set == (2, 5) == oracle.brute_min(p6)[1]
    assert solve_min_ds(c5, method).objective == 2 == oracle.brute_min(c5)[0]


@pytest.mark.parametrize("method", EXACT)
def test_min_cds_examples(method, k4, p6, c5):
    assert solve_min_cds(k4, method).best_set == (1,)
    res = solve_min_cds(p6, method)
    assert res.best_set == (2, 3, 4, 5)
    assert oracle.brute_min(p6, k=1) == (4, (2, 3, 4, 5))
    assert solve_min_cds(c5, method).objective == 3 == oracle.brute_min(c5, k=1)[0]
    assert res.certificate.feasible


def test_min_cds_disconnected_is_structured():
    g = Graph(4, [(1, 2), (3, 4)])
    res = solve_min_cds(g)
    assert not res.feasible
    assert "1" in res.reason and "3" in res.reason


@pytest.mark.parametrize("method", EXACT)
def test_weighted_examples(method, p6):
    unit = solve_min_weighted(p6, WeightTable.unit(6), "DS", method)
    assert unit.objective == 2
    p3 = Graph.path(3)
    res = solve_min_weighted(p3, WeightTable.from_values([10, 1, 10]), "DS", method)
    assert (res.best_set, res.objective) == ((2,), 1)
    res = solve_min_weighted(p3, WeightTable.from_values([1, 5, 1]), "DS", method)
    assert (res.best_set, res.objective) == ((1, 3), 2)
    assert oracle.brute_min(p3, weights=[1, 5, 1]) == (2, (1, 3))


def test_weights_must_be_positive():
    with pytest.raises(InputError):
        WeightTable.from_values([1, 0, 2])
    with pytest.raises(InputError):
        WeightTable.from_values([1, -3])


def test_decimal_weights_are_exact():
    w = WeightTable.from_values(["0.1", "0.2", "0.3"])
    assert w.scale == 10 and w.values == (1, 2, 3)
    res = solve_min_weighted(Graph.path(3), w, "DS")
    assert res.objective == pytest.approx(0.2)
    assert res.best_set == (2,)


def test_fine_decimals_fall_back_to_floats():
    w = WeightTable.from_values(["0.0000001", "1", "0.0000001"])
    assert w.scale == 1 and isinstance(w.values[0], float)
    res = solve_min_weighted(Graph.path(3), w, "DS")
    assert res.best_set == (1, 3)


@pytest.mark.parametrize("method", EXACT)
def test_kmcds_examples(method, k4, c5):
    res = solve_min_kmcds(k4, 2, 2, method=method)
    assert res.objective == 3 and res.certificate.feasible
    assert solve_min_kmcds(c5, 2, 1, method=method).best_set == (1, 2, 3, 4, 5)
    bad = solve_min_kmcds(c5, 3, 1, method=method)
    assert not bad.feasible and bad.info["kappa"] == 2
    for k, m, want in ((2, 2, 3), (2, 1, 5)):
        g = k4 if want == 3 else c5
        assert oracle.brute_min(g, k, m)[0] == want


def test_problem_spec_validation():
    with pytest.raises(InputError):
        ProblemSpec("DS", k=2)
    with pytest.raises(InputError):
        ProblemSpec("XYZ")
    with pytest.raises(InputError):
        ProblemSpec("CDS", m=0)
    with pytest.raises(InputError):
        ProblemSpec("CDS", method="annealing")


def test_exact_cap():
    g = Graph.path(27)
    with pytest.raises(ResourceError):
        solve_min_ds(g, "exact")


def test_node_budget_env(monkeypatch):
    monkeypatch.setenv("DOMSET_NODE_BUDGET", "3")
    with pytest.raises(ResourceError):
        solve_min_cds(Graph.path(10), "bb")
    monkeypatch.setenv("DOMSET_NODE_BUDGET", "many")
    with pytest.raises(InputError):
        solve_min_cds(Graph.path(10), "bb")


def test_greedy_examples(k4, p6):
    assert greedy_ds(k4).objective == 1
    res = greedy_ds(p6)
    assert res.certificate.feasible and res.objective <= 3
    assert res.objective >= oracle.brute_min(p6)[0]


def test_independent_set_examples(k4, c5, p6):
    assert len(max_independent_set(k4)) == 1
    assert len(max_independent_set(c5)) == 2
    assert max_independent_set(p6) == (1, 3, 5)


def test_two_phase_examples(k4, p6, c5):
    assert two_phase_cds(k4).certificate.feasible
    res = two_phase_cds(p6)
    assert res.certificate.connected and res.certificate.feasible
    res = two_phase_cds(c5)
    assert res.certificate.feasible and res.objective <= 5
    assert not two_phase_cds(Graph(3, [(1, 2)])).feasible


def test_max_leaf_examples(p6, c5):
    assert max_leaf_spanning_tree(Graph.star(5))[1] == 5
    assert max_leaf_spanning_tree(p6)[1] == 2
    edges, leaves = max_leaf_spanning_tree(c5)
    assert leaves == 2 and len(edges) == 4


def test_max_leaf_errors():
    with pytest.raises(InfeasibleError):
        max_leaf_spanning_tree(Graph(4, [(1, 2), (3, 4)]))
    with pytest.raises(ResourceError):
        max_leaf_spanning_tree(Graph.path(15))


def _is_spanning_tree(g, edges):
    if len(edges) != g.n - 1 or not all(g.has_edge(u, v) for u, v in edges):
        return False
    return Graph(g.n, edges).is_connected()


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=3, max_n=9))
def test_max_leaf_tree_is_valid_and_dual(g):
    edges, leaves = max_leaf_spanning_tree(g)
    assert _is_spanning_tree(g, edges)
    deg = {v: 0 for v in g.vertices}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    assert leaves == sum(1 for d in deg.values() if d == 1)
    assert solve_min_cds(g).objective == g.n - leaves


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=1, max_n=9), st.sampled_from(EXACT))
def test_exact_ds_matches_brute_force(g, method):
    res = solve_min_ds(g, method)
    assert (res.objective, res.best_set) == oracle.brute_min(g)


@settings(max_examples=80, deadline=None)
@given(
    connected_graphs(min_n=1, max_n=9),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.sampled_from(EXACT),
)
def test_exact_kmcds_matches_brute_force(g, k, m, method):
    res = solve_min_kmcds(g, k, m, method=method)
    value, best = oracle.brute_min(g, k, m)
    if best is None:
        assert not res.feasible
    else:
        assert (res.objective, res.best_set) == (value, best)
        assert res.certificate.feasible


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=1, max_n=8), st.data())
def test_weighted_matches_brute_force(g, data):
    w = data.draw(st.lists(st.integers(1, 9), min_size=g.n, max_size=g.n))
    variant = data.draw(st.sampled_from(["DS", "CDS"]))
    k = 0 if variant == "DS" else 1
    ref = oracle.brute_min(g, k, 1, w)
    for method in EXACT:
        res = solve(g, ProblemSpec(variant, weights=WeightTable.from_values(w), method=method))
        assert (res.objective, res.best_set) == ref


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=1, max_n=10))
def test_unit_weights_reproduce_cardinality(g):
    unit = WeightTable.unit(g.n)
    assert solve_min_weighted(g, unit, "DS").objective == solve_min_ds(g).objective
    assert solve_min_weighted(g, unit, "CDS", "bb").objective == solve_min_cds(g).objective


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=1, max_n=12), st.integers(min_value=1, max_value=3))
def test_heuristics_sound(g, m):
    res = greedy_ds(g, m)
    assert res.certificate.feasible
    assert res.objective >= solve(g, ProblemSpec("DS", m=m, method="bb")).objective
    tp = two_phase_cds(g)
    assert tp.certificate.feasible and tp.certificate.connected
    assert tp.objective >= solve_min_cds(g, "bb").objective
    mis = max_independent_set(g, "greedy")
    assert is_dominating(g, mis)
    assert all(not g.has_edge(u, v) for u in mis for v in mis)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=1, max_n=10))
def test_exact_independent_set_matches_enumeration(g):
    from itertools import combinations

    best = max(
        len(c)
        for size in range(1, g.n + 1)
        for c in combinations(g.vertices, size)
        if all(not g.has_edge(u, v) for u, v in combinations(c, 2))
    )
    assert len(max_independent_set(g)) == best


def test_greedy_cds_method(p6):
    res = solve(p6, ProblemSpec("CDS", method="greedy"))
    assert res.certificate.feasible and res.certificate.connected


def test_heuristic_method_restrictions(p6):
    with pytest.raises(InputError):
        solve(p6, ProblemSpec("CDS", k=2, method="greedy"))
    with pytest.raises(InputError):
        solve(p6, ProblemSpec("DS", method="two-phase"))


def test_canonical_tie_break_is_method_independent():
    for seed in range(30):
        g = connected_gnp(9, 0.35, seed)
        for spec in (ProblemSpec("DS"), ProblemSpec("CDS"), ProblemSpec("CDS", k=2, m=2)):
            a = solve(g, spec)
            b = solve(g, ProblemSpec(spec.variant, k=spec.k, m=spec.m, method="bb"))
            assert (a.best_set, a.objective) == (b.best_set, b.objective)
