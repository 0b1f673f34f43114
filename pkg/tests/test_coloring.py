import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grundykit.coloring import (
    Coloring,
    ColoringKind,
    LimitExceeded,
    MalformedColoringError,
    binomial_tree,
    first_fit,
    m_degree,
    mex,
    parameter_bounds,
    verify,
)
from grundykit.graph import (
    GraphError,
    complete_graph,
    cycle_graph,
    empty_graph,
    family,
    path_graph,
    random_graph,
)


def test_mex():
    assert mex([]) == 1
    assert mex([2, 3]) == 1
    assert mex([1, 2, 4]) == 3


def test_first_fit_examples():
    p4 = path_graph(4)
    assert first_fit(p4, [0, 1, 2, 3]).colors == (1, 2, 1, 2)
    c = first_fit(p4, [0, 3, 1, 2])
    assert c.colors == (1, 2, 3, 1) and c.k == 3
    for order in itertools.permutations(range(3)):
        c = first_fit(complete_graph(3), order)
        assert sorted(c.colors) == [1, 2, 3]
        assert [c.colors[v] for v in order] == [1, 2, 3]


def test_first_fit_rejects_non_permutation():
    with pytest.raises(GraphError):
        first_fit(path_graph(3), [0, 1, 1])
    with pytest.raises(GraphError):
        first_fit(path_graph(3), [0, 1])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9), st.floats(0, 1), st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_first_fit_prefix_property(n, p, seed, rnd):
    g = random_graph(n, p, seed)
    order = list(range(n))
    rnd.shuffle(order)
    c = first_fit(g, order).colors
    pos = {v: i for i, v in enumerate(order)}
    for v in range(n):
        earlier = [u for u in g.adjacency[v] if pos[u] < pos[v]]
        assert c[v] <= 1 + len(earlier)
        assert set(range(1, c[v])) <= {c[u] for u in earlier}
        assert c[v] not in {c[u] for u in g.adjacency[v]}
    assert verify(g, c, "grundy").valid


# -- verify -----------------------------------------------------------------

def test_verify_c4_grundy_self_witness():
    r = verify(cycle_graph(4), [1, 2, 1, 2], "grundy")
    assert r.valid and r.k == 2 and r.counterexample is None
    assert r.witnesses == {1: [0, 2], 2: [1, 3]}


def test_verify_monochromatic_edge():
    r = verify(complete_graph(2), [1, 1], "proper")
    assert not r.valid
    assert r.counterexample.edge == (0, 1)


def test_verify_c5_grundy():
    r = verify(cycle_graph(5), [1, 2, 1, 2, 3], "grundy")
    assert r.valid and r.k == 3


def test_verify_p4_b_coloring_fails_on_class_1():
    r = verify(path_graph(4), [1, 2, 3, 1], "b_coloring")
    assert not r.valid
    assert r.counterexample.color_class == 1
    # the same coloring is Grundy and partial Grundy
    assert verify(path_graph(4), [1, 2, 3, 1], "grundy").valid
    assert verify(path_graph(4), [1, 2, 3, 1], "partial_grundy").valid


def test_verify_grundy_counterexample_names_vertex():
    r = verify(path_graph(3), [1, 3, 2], "grundy")
    assert not r.valid
    assert r.counterexample.vertex == 2 and r.counterexample.missing_color == 1


def test_partial_grundy_needs_one_witness_per_class():
    g = path_graph(4)
    assert not verify(g, [1, 2, 2, 1], "partial_grundy").valid  # improper
    # vertex 0 witnesses class 2; vertex 3 (also 2) has no neighbor colored 1
    r = verify(g, [2, 1, 3, 2], "partial_grundy")
    assert r.valid and r.witnesses == {1: [1], 2: [0], 3: [2]}
    r = verify(g, [2, 1, 3, 2], "grundy")
    assert not r.valid and r.counterexample.vertex == 3


def test_gap_rejected_except_for_proper():
    g = path_graph(2)
    assert verify(g, [1, 3], "proper").valid
    for kind in ("grundy", "partial_grundy", "b_coloring"):
        r = verify(g, [1, 3], kind)
        assert not r.valid and r.counterexample.missing_color == 2


def test_verify_malformed_input():
    with pytest.raises(MalformedColoringError):
        verify(path_graph(3), [1, 2], "proper")
    with pytest.raises(MalformedColoringError):
        verify(path_graph(2), [0, 1], "proper")
    with pytest.raises(MalformedColoringError):
        Coloring((1, -1))
    with pytest.raises(ValueError):
        verify(path_graph(2), [1, 2], "harmonious")


def test_report_serializes():
    d = verify(cycle_graph(4), [1, 2, 1, 2], ColoringKind.GRUNDY).as_dict()
    assert d == {"valid": True, "kind": "grundy", "k": 2,
                 "witnesses": {"1": [0, 2], "2": [1, 3]}, "counterexample": None}


def brute_verify(g, colors, kind):
    """Definition-level check, written separately from verify()."""
    n = g.vertex_count
    if any(colors[u] == colors[v] for u in range(n) for v in g.adjacency[u]):
        return False
    if kind == "proper":
        return True
    k = max(colors)
    if set(colors) != set(range(1, k + 1)):
        return False
    seen = [{colors[u] for u in g.adjacency[v]} for v in range(n)]
    if kind == "grundy":
        return all(all(j in seen[v] for j in range(1, colors[v])) for v in range(n))
    if kind == "partial_grundy":
        return all(any(colors[v] == i and all(j in seen[v] for j in range(1, i)) for v in range(n))
                   for i in range(1, k + 1))
    return all(any(colors[v] == i and all(j in seen[v] for j in range(1, k + 1) if j != i)
                   for v in range(n)) for i in range(1, k + 1))


def test_verify_agrees_with_definitions_exhaustively():
    for seed in range(40):
        g = random_graph(1 + seed % 5, 0.5, seed)
        cap = g.max_degree + 2
        for colors in itertools.product(range(1, cap + 1), repeat=g.vertex_count):
            for kind in ("proper", "grundy", "partial_grundy", "b_coloring"):
                assert verify(g, colors, kind).valid == brute_verify(g, colors, kind), (seed, colors, kind)


# -- bounds -----------------------------------------------------------------

def test_bounds_examples():
    assert parameter_bounds(complete_graph(5)).as_dict() == {
        "max_degree_plus_one": 5, "clique_lower": 5, "m_degree": 5}
    b = parameter_bounds(path_graph(4))
    assert (b.max_degree_plus_one, b.clique_lower, b.m_degree) == (3, 2, 2)
    b = parameter_bounds(family("star", 5))
    assert (b.max_degree_plus_one, b.clique_lower, b.m_degree) == (6, 2, 2)
    assert parameter_bounds(empty_graph(3)).clique_lower == 1
    with pytest.raises(GraphError):
        parameter_bounds(empty_graph(0))


def test_bounds_invariants():
    for seed in range(100):
        g = random_graph(1 + seed % 12, (seed % 9) / 8, seed)
        b = parameter_bounds(g)
        assert b.clique_lower <= b.max_degree_plus_one
        assert b.m_degree <= b.max_degree_plus_one


def test_m_degree_definition():
    for seed in range(50):
        g = random_graph(1 + seed % 10, 0.4, seed)
        degs = g.degrees()
        expected = max(i for i in range(0, g.vertex_count + 1)
                       if sum(d >= i - 1 for d in degs) >= i)
        assert m_degree(g) == expected


# -- binomial trees ---------------------------------------------------------

def test_binomial_tree_small():
    g, c = binomial_tree(1)
    assert g.vertex_count == 1 and c.colors == (1,)
    g, c = binomial_tree(3)
    assert set(g.edges()) == {(0, 1), (0, 2), (2, 3)}  # leaf 1 - root 0 - root 2 - leaf 3
    assert c.colors == (3, 1, 2, 1)
    assert verify(g, c, "grundy").valid


@pytest.mark.parametrize("k", range(1, 11))
def test_binomial_tree_shape_and_coloring(k):
    g, c = binomial_tree(k)
    assert g.vertex_count == 2 ** (k - 1)
    assert g.edge_count == g.vertex_count - 1
    assert c.colors[0] == k
    r = verify(g, c, "grundy")
    assert r.valid and r.k == k


def test_binomial_tree_limits():
    with pytest.raises(GraphError):
        binomial_tree(0)
    with pytest.raises(LimitExceeded):
        binomial_tree(17)
    g, _ = binomial_tree(17, limit=17)
    assert g.vertex_count == 2**16
