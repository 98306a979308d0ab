"""Coloring primitives vs exhaustive assignment enumeration."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from p6color.graph_core import Graph, VertexSet
from p6color.list_coloring import (
    Coloring,
    ListAssignment,
    check_proper,
    colors_of,
    exact_list_color,
    format_coloring_lines,
    mask_of,
    parse_list_file,
    precoloring_from_lists,
    two_list_color,
)

PROPERTY_SETTINGS = settings(
    max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


def _brute_feasible(g: Graph, lists: ListAssignment) -> bool:
    """Independent referee: enumerate every assignment from the lists."""
    pools = [colors_of(lists.mask(v)) for v in range(g.n)]
    if any(not p for p in pools):
        return False
    for combo in itertools.product(*pools):
        if all(combo[u] != combo[v] for u, v in g.edges()):
            return True
    return False


@st.composite
def graphs_with_lists(draw, max_n: int = 6, max_list: int = 4):
    n = draw(st.integers(1, max_n))
    nbits = n * (n - 1) // 2
    mask = draw(st.integers(0, (1 << nbits) - 1))
    edges = []
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            if mask >> idx & 1:
                edges.append((u, v))
            idx += 1
    masks = []
    for _ in range(n):
        m = draw(st.integers(0, 15))
        while m.bit_count() > max_list:
            m &= m - 1
        masks.append(m)
    return Graph.from_edges(n, edges), ListAssignment(tuple(masks))


# ---------------------------------------------------------------------------
# check_proper
# ---------------------------------------------------------------------------


def test_check_proper_k2() -> None:
    g = Graph.complete(2)
    ok, witness = check_proper(g, Coloring((1, 2)))
    assert ok and witness is None
    ok, witness = check_proper(g, Coloring((1, 1)))
    assert not ok and witness == ("edge", 0, 1)


def test_check_proper_list_violation() -> None:
    g = Graph.complete(2)
    lists = ListAssignment.from_dict(2, {0: [2]})
    ok, witness = check_proper(g, Coloring((1, 2)), lists=lists)
    assert not ok and witness == ("vertex", 0)


def test_check_proper_requires_totality() -> None:
    g = Graph.complete(2)
    with pytest.raises(ValueError):
        check_proper(g, Coloring((1, 0)))
    # but a domain restriction makes the same coloring checkable
    ok, _ = check_proper(g, Coloring((1, 0)), domain=VertexSet.single(0))
    assert ok


def test_check_proper_domain_ignores_outside_edges() -> None:
    g = Graph.path(3)
    c = Coloring((1, 1, 0))
    ok, witness = check_proper(g, c, domain=VertexSet.of([0, 1]))
    assert not ok and witness == ("edge", 0, 1)
    ok, _ = check_proper(g, c, domain=VertexSet.single(0))
    assert ok


# ---------------------------------------------------------------------------
# two_list_color
# ---------------------------------------------------------------------------


def test_two_list_triangle_infeasible() -> None:
    g = Graph.complete(3)
    assert two_list_color(g, ListAssignment.uniform(3, [1, 2])) is None


def test_two_list_even_cycle() -> None:
    g = Graph.cycle(6)
    got = two_list_color(g, ListAssignment.uniform(6, [1, 2]))
    assert got is not None
    ok, _ = check_proper(g, got, lists=ListAssignment.uniform(6, [1, 2]))
    assert ok


def test_two_list_rejects_big_lists() -> None:
    with pytest.raises(ValueError):
        two_list_color(Graph.empty(1), ListAssignment.uniform(1, [1, 2, 3]))


def test_two_list_empty_list_fails() -> None:
    assert two_list_color(Graph.empty(1), ListAssignment((0,))) is None


def test_two_list_singletons_propagate() -> None:
    g = Graph.path(3)
    lists = ListAssignment.from_dict(3, {0: [1], 1: [1, 2], 2: [2, 3]})
    got = two_list_color(g, lists)
    assert got is not None
    assert got.colors[0] == 1 and got.colors[1] == 2 and got.colors[2] == 3


@given(graphs_with_lists(max_n=6, max_list=2))
@PROPERTY_SETTINGS
def test_two_list_matches_bruteforce(case) -> None:
    g, lists = case
    got = two_list_color(g, lists)
    assert (got is not None) == _brute_feasible(g, lists)
    if got is not None:
        ok, _ = check_proper(g, got, lists=lists)
        assert ok


def test_two_list_exhaustive_n4_seeded_lists() -> None:
    rng = random.Random(1)
    pairs = list(itertools.combinations(range(4), 2))
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(4, [pairs[i] for i in range(6) if mask >> i & 1])
        for _ in range(8):
            lists = ListAssignment(
                tuple(mask_of(rng.sample([1, 2, 3, 4], rng.randint(1, 2))) for _ in range(4))
            )
            got = two_list_color(g, lists)
            assert (got is not None) == _brute_feasible(g, lists)
            if got is not None:
                assert check_proper(g, got, lists=lists)[0]


def test_two_list_long_chain_smoke() -> None:
    # quasi-linear behavior contract: a 100000-vertex chain completes
    n = 100_000
    g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    got = two_list_color(g, ListAssignment.uniform(n, [1, 2]))
    assert got is not None
    assert all(got.colors[i] != got.colors[i + 1] for i in range(n - 1))


# ---------------------------------------------------------------------------
# exact_list_color
# ---------------------------------------------------------------------------


def test_exact_empty_list_infeasible() -> None:
    g = Graph.path(2)
    assert exact_list_color(g, ListAssignment((0, 15))) is None


def test_exact_edgeless_picks_minimum() -> None:
    g = Graph.empty(3)
    lists = ListAssignment.from_dict(3, {0: [3, 4], 1: [2], 2: [1, 4]})
    got = exact_list_color(g, lists)
    assert got is not None and got.colors == (3, 2, 1)


def test_exact_is_deterministic() -> None:
    g = Graph.cycle(5)
    lists = ListAssignment.uniform(5, [1, 2, 3])
    assert exact_list_color(g, lists) == exact_list_color(g, lists)


@given(graphs_with_lists(max_n=6))
@PROPERTY_SETTINGS
def test_exact_matches_bruteforce(case) -> None:
    g, lists = case
    got = exact_list_color(g, lists)
    assert (got is not None) == _brute_feasible(g, lists)
    if got is not None:
        ok, _ = check_proper(g, got, lists=lists)
        assert ok


@given(graphs_with_lists(max_n=5), st.integers(0, 4), st.integers(0, 15))
@PROPERTY_SETTINGS
def test_exact_monotone_under_shrinking(case, vertex: int, shrink: int) -> None:
    # shrinking one list never turns infeasible into feasible
    g, lists = case
    v = vertex % g.n
    smaller = lists.restricted(v, shrink)
    if exact_list_color(g, smaller) is not None:
        assert exact_list_color(g, lists) is not None


# ---------------------------------------------------------------------------
# list file format
# ---------------------------------------------------------------------------


def test_parse_list_file() -> None:
    lists = parse_list_file("0 1,2\n2 4\n# comment\n\n", 3)
    assert lists.colors(0) == (1, 2)
    assert lists.colors(1) == (1, 2, 3, 4)
    assert lists.colors(2) == (4,)


def test_parse_list_file_rejects_duplicates() -> None:
    with pytest.raises(ValueError):
        parse_list_file("0 1\n0 2\n", 2)


def test_precoloring_from_lists() -> None:
    lists = parse_list_file("1 3\n", 3)
    x0, f = precoloring_from_lists(lists)
    assert x0 == VertexSet.single(1)
    assert f.get(1) == 3 and not f.has(0)
    with pytest.raises(ValueError):
        precoloring_from_lists(parse_list_file("1 3,4\n", 3))


def test_format_coloring_lines() -> None:
    assert format_coloring_lines(Coloring((0, 2, 4))) == "1 2\n2 4\n"
