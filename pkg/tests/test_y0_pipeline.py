"""Pipeline stages vs a brute-force referee, plus lift-chain replay checks."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from p6color.graph_core import (
    EMPTY,
    Graph,
    VertexSet,
    find_induced_p6,
    induced_subgraph,
    is_connected,
)
from p6color.list_coloring import (
    Coloring,
    ListAssignment,
    check_proper,
    color_bit,
    exact_list_color,
)
from p6color.precoloring_model import (
    CollectionMode,
    DeletionStep,
    RelabelStep,
    SeededPrecoloring,
    check_seeded_axiom,
    lift,
    list_of,
    unique_seed_color,
)
from p6color.y0_pipeline import (
    BudgetExceeded,
    PipelineError,
    run_y0,
    stage_123star,
    stage_complete,
    stage_components,
    stage_lists,
    stage_mixedy0,
    stage_mixedyl,
    stage_restore_conn,
    stage_seed,
    unmix_core,
)

PROPERTY_SETTINGS = settings(
    max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


def _vs(*vertices):
    return VertexSet.of(vertices)


def _seeded(graph, s=(), x0=(), x=(), y0=(), y=(), f=None):
    return SeededPrecoloring(
        graph, _vs(*s), _vs(*x0), _vs(*x), _vs(*y0), _vs(*y),
        Coloring.from_dict(graph.n, f or {}),
    )


# ---------------------------------------------------------------------------
# independent referees


def _brute_extensions(g: Graph, fixed: dict) -> int:
    """Count proper total 4-colorings of g agreeing with ``fixed``."""
    free = [v for v in range(g.n) if v not in fixed]
    count = 0

    def rec(i, col):
        nonlocal count
        if i == len(free):
            count += 1
            return
        v = free[i]
        for c in (1, 2, 3, 4):
            if all(col.get(u) != c for u in g.neighbors(v)):
                col[v] = c
                rec(i + 1, col)
                del col[v]

    rec(0, dict(fixed))
    return count


def _brute_extendable(g: Graph, fixed: dict) -> bool:
    free = [v for v in range(g.n) if v not in fixed]

    def rec(i, col):
        if i == len(free):
            return True
        v = free[i]
        for c in (1, 2, 3, 4):
            if all(col.get(u) != c for u in g.neighbors(v)):
                col[v] = c
                if rec(i + 1, col):
                    return True
                del col[v]
        return False

    return rec(0, dict(fixed))


def _brute_pre(pre: SeededPrecoloring) -> bool:
    return _brute_extendable(pre.graph, pre.f.to_dict())


def _member_ext(pre: SeededPrecoloring):
    """Exactly extend a member: solve its free part against derived lists
    narrowed by every precolored neighbor.  None when stuck."""
    g = pre.graph
    if not pre.free:
        return Coloring.from_dict(g.n, {})
    sub = induced_subgraph(g, pre.free)
    masks = []
    for i in range(sub.graph.n):
        v = sub.to_parent[i]
        m = list_of(pre, v)
        for u in g.neighbors(v) & pre.precolored:
            m &= ~color_bit(pre.f.get(u))
        masks.append(m)
    got = exact_list_color(sub.graph, ListAssignment(tuple(masks)))
    if got is None:
        return None
    return Coloring.from_dict(g.n, {sub.to_parent[i]: got.get(i) for i in range(sub.graph.n)})


def _verdict(coll) -> bool:
    """ANY/ALL combination of member extendability."""
    if coll.mode is CollectionMode.ANY:
        return any(_member_ext(m.pre) is not None for m in coll)
    groups = {}
    for m in coll:
        groups.setdefault(m.group, []).append(m)
    return all(
        any(_member_ext(m.pre) is not None for m in mems) for mems in groups.values()
    )


def _rand_p6free(rng: random.Random, n: int) -> Graph:
    while True:
        p = rng.uniform(0.15, 0.75)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if find_induced_p6(g) is None:
            return g


def _rand_instance(rng: random.Random, max_n=10, max_colored=3):
    """A random no-induced-6-path graph with a small proper precoloring."""
    while True:
        n = rng.randint(1, max_n)
        g = _rand_p6free(rng, n)
        k = rng.randint(0, min(max_colored, n))
        verts = rng.sample(range(n), k)
        fixed = {v: rng.randint(1, 4) for v in verts}
        ok, _ = check_proper(g, Coloring.from_dict(n, fixed), domain=_vs(*verts))
        if ok:
            return g, fixed


def _rand_seeded(rng: random.Random, max_n=9):
    """A random mid-ladder state: clique seed, optional precolored leftovers,
    free vertices bucketed by derived list size.  Returns None when the draw
    violates the structural conditions the stages expect."""
    n = rng.randint(4, max_n)
    g = _rand_p6free(rng, n)
    cliques = [c for c in itertools.combinations(range(n), rng.randint(2, 3))
               if all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))]
    if not cliques:
        return None
    s = list(rng.choice(cliques))
    colors = rng.sample((1, 2, 3, 4), len(s))
    f = dict(zip(s, colors))
    rest = [v for v in range(n) if v not in f]
    x0 = []
    for v in rng.sample(rest, min(len(rest), rng.randint(0, 2))):
        opts = [c for c in (1, 2, 3, 4) if all(f.get(u) != c for u in g.neighbors(v))]
        if opts:
            f[v] = rng.choice(opts)
            x0.append(v)
    svs = _vs(*s)
    x, y0, y = [], [], []
    for v in range(n):
        if v in f:
            continue
        seen = 0
        for u in g.neighbors(v) & svs:
            seen |= color_bit(f[u])
        size = 4 - bin(seen).count("1")
        if not g.neighbors(v) & svs:
            y0.append(v)
        elif size == 2:
            x.append(v)
        elif size == 3:
            y.append(v)
        else:
            return None  # forced or dead list: not a lists-normalized state
    try:
        pre = _seeded(g, s, x0, x, y0, y, f)
    except ValueError:
        return None
    for ax in ("i", "ii", "iii"):
        if not check_seeded_axiom(pre, ax):
            return None
    return pre


def _assert_axioms(pre: SeededPrecoloring, upto: str) -> None:
    ids = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")
    for ax in ids[: ids.index(upto) + 1]:
        rep = check_seeded_axiom(pre, ax)
        assert rep, (ax, rep.witness)


# ---------------------------------------------------------------------------
# stage_components


def test_components_splits_and_carries_precolored():
    # two free components around one precolored cut vertex
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    p = _seeded(g, x0=(2,), y0=(0, 1, 3, 4), f={2: 1})
    coll = stage_components(p)
    assert coll.mode is CollectionMode.ALL
    members = list(coll)
    assert len(members) == 2
    assert sorted(m.group for m in members) == [0, 1]
    for m in members:
        assert m.pre.graph.n == 3  # component of size 2 plus the cut vertex
        assert len(m.pre.x0) == 1
        assert m.pre.f.get(m.pre.x0.min()) == 1
        assert isinstance(m.chain[0], RelabelStep)


def test_components_rejects_shaped_input():
    g = Graph.path(3)
    with pytest.raises(ValueError):
        stage_components(_seeded(g, s=(0,), y0=(1, 2), f={0: 1}))


def test_components_empty_when_fully_precolored():
    g = Graph.path(2)
    p = _seeded(g, x0=(0, 1), f={0: 1, 1: 2})
    assert list(stage_components(p)) == []


# ---------------------------------------------------------------------------
# stage_seed


def test_seed_single_free_vertex_one_member_per_color():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    p = _seeded(g, x0=(0, 1), y0=(2,), f={0: 1, 1: 2})
    members = list(stage_seed(p))
    assert sorted(m.pre.f.get(2) for m in members) == [3, 4]
    for m in members:
        assert not m.pre.free


def test_seed_small_branch_counts_match_brute_force():
    g = Graph.cycle(5)
    fixed = {0: 1}
    p = _seeded(g, x0=(0,), y0=(1, 2, 3, 4), f=fixed)
    members = list(stage_seed(p))
    assert len(members) == _brute_extensions(g, fixed)
    for m in members:
        _assert_axioms(m.pre, "iii")


def test_seed_greedy_branch_bounds_and_axioms():
    # 7 free vertices forces the greedy branch; seed is a maximal clique
    g = Graph.from_edges(
        7, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (3, 5), (5, 6), (2, 6)]
    )
    p = _seeded(g, y0=tuple(range(7)))
    members = list(stage_seed(p))
    assert members
    for m in members:
        assert len(m.pre.s) <= 4
        _assert_axioms(m.pre, "iii")
    # equivalence against the referee
    got = any(_member_ext(m.pre) is not None for m in members)
    assert got == _brute_extendable(g, {})


def test_seed_kills_a_k5():
    edges = list(itertools.combinations(range(5), 2)) + [(4, 5), (5, 6)]
    g = Graph.from_edges(7, edges)
    p = _seeded(g, y0=tuple(range(7)))
    assert list(stage_seed(p)) == []


def test_seed_absorbs_precolored_clique_neighbors():
    # the maximal clique grown from vertex 1 pulls in precolored vertex 0
    g = Graph.from_edges(8, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4),
                             (4, 5), (5, 6), (6, 7), (5, 7)])
    p = _seeded(g, x0=(0,), y0=tuple(range(1, 8)), f={0: 4})
    members = list(stage_seed(p))
    assert members
    for m in members:
        assert 0 in m.pre.s
        assert m.pre.f.get(0) == 4  # absorbed but color kept
        assert 0 not in m.pre.x0


# ---------------------------------------------------------------------------
# stage_restore_conn


def test_restore_identity_when_connected():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    p = _seeded(g, s=(0, 1), x=(2,), y0=(3,), f={0: 1, 1: 2})
    members = list(stage_restore_conn(p, p))
    assert len(members) == 1
    assert members[0].pre == p
    assert members[0].chain == ()


def test_restore_deletes_recolorable_cutoff_component():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    parent = _seeded(g, s=(0, 1), x=(2,), y0=(3,), f={0: 1, 1: 2})
    child = _seeded(g, s=(0, 1), x0=(2,), y0=(3,), f={0: 1, 1: 2, 2: 3})
    members = list(stage_restore_conn(parent, child))
    assert len(members) == 1
    m = members[0]
    assert m.pre.graph.n == 3
    step = m.chain[0]
    assert isinstance(step, DeletionStep)
    assert step.deleted == _vs(3)
    # replay: the lifted total coloring must recolor vertex 3 properly
    lifted = lift(m.chain, m.pre.f)
    ok, why = check_proper(g, lifted)
    assert ok and lifted.is_total(), why
    assert lifted.get(3) != 3  # avoids the fresh boundary color


def test_restore_kills_unrecolorable_component():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6)])
    parent = _seeded(g, s=(0, 1), x0=(4, 5, 6), x=(2,), y0=(3,),
                     f={0: 1, 1: 2, 4: 1, 5: 2, 6: 3})
    # the cut-off vertex 3 sees colors 1,2,3 on old precolored neighbors and
    # loses color 4 to the fresh boundary: nothing is left
    child = _seeded(g, s=(0, 1), x0=(2, 4, 5, 6), y0=(3,),
                    f={0: 1, 1: 2, 2: 4, 4: 1, 5: 2, 6: 3})
    assert list(stage_restore_conn(parent, child)) == []


def test_restore_rejects_mismatched_graphs():
    parent = _seeded(Graph.path(3), s=(0, 1), x=(2,), f={0: 1, 1: 2})
    child = _seeded(Graph.path(2), s=(0, 1), f={0: 1, 1: 2})
    with pytest.raises(PipelineError):
        stage_restore_conn(parent, child)


# ---------------------------------------------------------------------------
# stage_lists


def test_lists_identity_when_aligned():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 4)])
    p = _seeded(g, s=(0, 1, 2), x=(3,), y0=(4,), f={0: 1, 1: 2, 2: 3})
    members = list(stage_lists(p, p))
    assert len(members) == 1
    assert members[0].pre == p and members[0].chain == ()


def test_lists_pins_forced_vertex_and_deletes_cutoff():
    # vertex 4 sees three seed colors: forced to 4, which cuts off vertex 5
    edges = list(itertools.combinations(range(4), 2))
    edges += [(4, 0), (4, 1), (4, 2), (4, 5)]
    g = Graph.from_edges(6, edges)
    p = _seeded(g, s=(0, 1, 2, 3), y=(4,), y0=(5,), f={0: 1, 1: 2, 2: 3, 3: 4})
    members = list(stage_lists(p, p))
    assert len(members) == 1
    m = members[0]
    assert m.pre.graph.n == 5
    assert m.pre.f.get(4) == 4
    assert 4 in m.pre.x0
    assert isinstance(m.chain[0], DeletionStep)
    lifted = lift(m.chain, m.pre.f)
    ok, _ = check_proper(g, lifted)
    assert ok and lifted.is_total()
    _assert_axioms(m.pre, "v")


def test_lists_dead_on_empty_list():
    # vertex 4 sees all four seed colors
    edges = list(itertools.combinations(range(4), 2)) + [(4, v) for v in range(4)]
    g = Graph.from_edges(5, edges)
    p = _seeded(g, s=(0, 1, 2, 3), y=(4,), f={0: 1, 1: 2, 2: 3, 3: 4})
    assert list(stage_lists(p, p)) == []


def test_lists_dead_on_pin_clashing_with_precolored():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (4, 0), (4, 1),
                             (4, 2), (4, 3)])
    p = _seeded(g, s=(0, 1, 2), x0=(3,), y=(4,), f={0: 1, 1: 2, 2: 3, 3: 4})
    assert list(stage_lists(p, p)) == []


def test_lists_dead_on_adjacent_equal_pins():
    edges = list(itertools.combinations(range(4), 2))
    edges += [(4, 0), (4, 1), (4, 2), (5, 0), (5, 1), (5, 2), (4, 5)]
    g = Graph.from_edges(6, edges)
    p = _seeded(g, s=(0, 1, 2, 3), y=(4, 5), f={0: 1, 1: 2, 2: 3, 3: 4})
    assert list(stage_lists(p, p)) == []


# ---------------------------------------------------------------------------
# unmix_core


def _mixed_on_pool_instance():
    # seed triangle 0,1,2; vertex 3 (2-list) mixed on the pool edge 4-5
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 4), (4, 5)])
    return _seeded(g, s=(0, 1, 2), x=(3,), y0=(4, 5), f={0: 1, 1: 2, 2: 3})


def test_unmix_rejects_bad_region():
    p = _mixed_on_pool_instance()
    with pytest.raises(PipelineError):
        unmix_core(p, _vs(4), 0b1110)  # region must contain the whole pool


def test_unmix_rejects_shared_list_across_border():
    # 3 and 4 share a 3-list; only 3 joins the region, leaving 4 adjacent
    # to it with an equal list
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 0), (4, 0), (3, 4),
                             (3, 5), (4, 5)])
    p = _seeded(g, s=(0, 1, 2), y=(3, 4), y0=(5,), f={0: 1, 1: 2, 2: 3})
    with pytest.raises(PipelineError):
        unmix_core(p, _vs(5, 3), 0b1110)


def test_unmix_rejects_escape_path():
    # induced path 3-4-5-6 with 4,5,6 in the region
    g = Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 4),
                             (4, 5), (5, 6)])
    p = _seeded(g, s=(0, 1, 2), x=(3,), y0=(4, 5, 6), f={0: 1, 1: 2, 2: 3})
    with pytest.raises(PipelineError):
        unmix_core(p, p.y0, 0b1110)


def test_unmix_collapses_to_identity_without_mixing():
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 4),
                             (3, 5), (4, 5)])
    p = _seeded(g, s=(0, 1, 2), x=(3,), y0=(4, 5), f={0: 1, 1: 2, 2: 3})
    members = list(unmix_core(p, p.y0, 0b1110))
    assert len(members) == 1 and members[0].pre == p


def test_unmix_seeds_the_mixed_vertex():
    p = _mixed_on_pool_instance()
    members = list(unmix_core(p, p.y0, 0b1110))
    assert members
    for m in members:
        assert 3 in m.pre.s
        assert 4 in m.pre.y  # pool vertex adjacent to the new seed moves out
        assert 5 in m.pre.y0
        _assert_axioms(m.pre, "iii")
        assert len(m.pre.s) <= len(p.s) + 12 * 2 ** len(p.s)
    assert any(_brute_pre(m.pre) for m in members) == _brute_pre(p)


def test_unmix_dead_on_k5():
    edges = list(itertools.combinations(range(5), 2)) + [(0, 5), (5, 6)]
    g = Graph.from_edges(7, edges)
    p = _seeded(g, s=(0, 1), x=(2, 3, 4), y=(5,), y0=(6,), f={0: 1, 1: 2})
    assert list(unmix_core(p, p.y0, 0b1110)) == []


# ---------------------------------------------------------------------------
# stage_mixedy0


def test_mixedy0_fast_path_identity():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    p = _seeded(g, s=(0, 1), x=(2,), y0=(3,), f={0: 1, 1: 2})
    members = list(stage_mixedy0(p))
    assert len(members) == 1 and members[0].pre == p and members[0].chain == ()


def test_mixedy0_establishes_the_condition():
    p = _mixed_on_pool_instance()
    assert not check_seeded_axiom(p, "iv")
    members = list(stage_mixedy0(p))
    assert members
    for m in members:
        _assert_axioms(m.pre, "iv")
    assert any(_brute_pre(m.pre) for m in members) == _brute_pre(p)


def test_mixedy0_seeds_path_starters_first():
    # vertex 3 starts an induced path 3-4-5-6 into the pool
    g = Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 4),
                             (4, 5), (5, 6)])
    p = _seeded(g, s=(0, 1, 2), x=(3,), y0=(4, 5, 6), f={0: 1, 1: 2, 2: 3})
    assert not check_seeded_axiom(p, "iv")
    members = list(stage_mixedy0(p))
    assert members
    assert all(3 in m.pre.s for m in members)
    for m in members:
        _assert_axioms(m.pre, "iv")
    assert any(_brute_pre(m.pre) for m in members) == _brute_pre(p)


# ---------------------------------------------------------------------------
# stage_123star


def _two_color_boundary_instance():
    # boundary vertices 3 (sees color 1) and 4 (sees color 2) share pool
    # neighbor 5: two distinct seed colors show up on the boundary
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 0), (4, 1), (3, 5), (4, 5)])
    return _seeded(g, s=(0, 1, 2), y0=(5,), y=(3, 4), f={0: 1, 1: 2, 2: 3})


def test_123star_fast_path_identity():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 4)])
    p = _seeded(g, s=(0, 1, 2), y=(3,), y0=(4,), f={0: 1, 1: 2, 2: 3})
    members = list(stage_123star(p))
    assert len(members) == 1 and members[0].pre == p


def test_123star_establishes_the_condition():
    p = _two_color_boundary_instance()
    assert not unique_seed_color(p)
    members = list(stage_123star(p))
    assert members
    for m in members:
        _assert_axioms(m.pre, "vi")
    assert any(_brute_pre(m.pre) for m in members) == _brute_pre(p)


# ---------------------------------------------------------------------------
# stage_mixedyl


def _mixed_on_star_instance():
    # x-vertex 3 is mixed on the edge 4-5 of the distinguished component
    # {4,5,6} without violating the pool condition (4 is complete to {5,6})
    g = Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (4, 0),
                             (4, 5), (4, 6), (5, 6), (3, 4)])
    return _seeded(g, s=(0, 1, 2), x=(3,), y=(4,), y0=(5, 6), f={0: 1, 1: 2, 2: 3})


def test_mixedyl_fast_path_identity():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 4)])
    p = _seeded(g, s=(0, 1, 2), y=(3,), y0=(4,), f={0: 1, 1: 2, 2: 3})
    members = list(stage_mixedyl(p))
    assert len(members) == 1 and members[0].pre == p


def test_mixedyl_establishes_the_condition():
    p = _mixed_on_star_instance()
    _assert_axioms(p, "vi")
    assert not check_seeded_axiom(p, "vii")
    members = list(stage_mixedyl(p))
    assert members
    for m in members:
        _assert_axioms(m.pre, "vii")
    assert any(_brute_pre(m.pre) for m in members) == _brute_pre(p)


# ---------------------------------------------------------------------------
# stage_complete


def test_complete_fast_path_identity():
    # the lone pool component has a complete 2-listed neighbor: nothing to do
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 4)])
    p = _seeded(g, s=(0, 1, 2), x=(3,), y0=(4,), f={0: 1, 1: 2, 2: 3})
    members = list(stage_complete(p))
    assert len(members) == 1 and members[0].pre == p and members[0].chain == ()


def test_complete_deletes_solved_component():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 4)])
    p = _seeded(g, s=(0, 1, 2), y=(3,), y0=(4,), f={0: 1, 1: 2, 2: 3})
    assert not check_seeded_axiom(p, "viii")
    members = list(stage_complete(p))
    assert len(members) == 1
    m = members[0]
    assert m.pre.graph.n == 3
    assert isinstance(m.chain[0], DeletionStep)
    lifted = lift(m.chain, m.pre.f)
    ok, _ = check_proper(g, lifted)
    assert ok and lifted.is_total()
    _assert_axioms(m.pre, "viii")


def test_complete_dead_on_uncolorable_component():
    # the pool holds a 4-clique: no palette of three or fewer colors works
    edges = [(0, 1), (0, 2), (1, 2), (3, 0)]
    edges += [(3, v) for v in (4, 5, 6, 7)]
    edges += list(itertools.combinations((4, 5, 6, 7), 2))
    g = Graph.from_edges(8, edges)
    p = _seeded(g, s=(0, 1, 2), y=(3,), y0=(4, 5, 6, 7), f={0: 1, 1: 2, 2: 3})
    assert not _brute_pre(p)
    assert list(stage_complete(p)) == []


def test_complete_matches_brute_force_on_random_states():
    rng = random.Random(31)
    checked = 0
    while checked < 25:
        pre = _rand_seeded(rng)
        if pre is None:
            continue
        if not all(check_seeded_axiom(pre, ax) for ax in ("iv", "vi", "vii")):
            continue
        if check_seeded_axiom(pre, "viii"):
            continue
        try:
            members = list(stage_complete(pre))
        except PipelineError:
            continue  # off-ladder draw outside the stage's guarantees
        checked += 1
        if not members:
            assert not _brute_pre(pre)
        else:
            assert any(_brute_pre(m.pre) for m in members) == _brute_pre(pre)
            for m in members:
                _assert_axioms(m.pre, "viii")


# ---------------------------------------------------------------------------
# run_y0 end to end


def test_run_rejects_bad_inputs():
    with pytest.raises(ValueError):
        run_y0(Graph.path(6), EMPTY, Coloring.from_dict(6, {}))
    g = Graph.path(3)
    with pytest.raises(ValueError):
        run_y0(g, _vs(0), Coloring.from_dict(3, {}))  # domain mismatch
    with pytest.raises(ValueError):
        run_y0(g, _vs(0, 1), Coloring.from_dict(3, {0: 1, 1: 1}))  # improper


def test_run_small_cycle_member_count_matches_brute():
    g = Graph.cycle(5)
    coll = run_y0(g, _vs(0), Coloring.from_dict(5, {0: 1}))
    assert coll.mode is CollectionMode.ALL
    assert len(list(coll)) == _brute_extensions(g, {0: 1})


def test_run_reports_dead_component_as_empty_any():
    # K6 minus an edge still holds a K5: not 4-colorable
    edges = [e for e in itertools.combinations(range(6), 2) if e != (0, 2)]
    g = Graph.from_edges(6, edges)
    coll = run_y0(g, _vs(0), Coloring.from_dict(6, {0: 4}))
    assert coll.mode is CollectionMode.ANY
    assert list(coll) == []
    assert _verdict(coll) is False


def test_run_budget_cap_trips():
    g = Graph.cycle(5)
    with pytest.raises(BudgetExceeded):
        run_y0(g, _vs(0), Coloring.from_dict(5, {0: 1}), cap=3)


def test_run_vacuous_when_everything_precolored():
    g = Graph.path(2)
    coll = run_y0(g, _vs(0, 1), Coloring.from_dict(2, {0: 1, 1: 2}))
    assert coll.mode is CollectionMode.ALL
    assert list(coll) == []
    assert _verdict(coll) is True


def test_run_members_are_good_and_grouped_by_component():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)])
    fixed = {3: 1, 4: 2}
    coll = run_y0(g, _vs(3, 4), Coloring.from_dict(6, fixed))
    members = list(coll)
    assert {m.group for m in members} == {0, 1}
    for m in members:
        for ax in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii"):
            assert check_seeded_axiom(m.pre, ax), ax
    assert _verdict(coll) == _brute_extendable(g, fixed)


def test_run_verdicts_match_brute_force_fuzz():
    rng = random.Random(20240815)
    for _ in range(150):
        g, fixed = _rand_instance(rng, max_n=9)
        coll = run_y0(g, _vs(*fixed), Coloring.from_dict(g.n, fixed))
        assert _verdict(coll) == _brute_extendable(g, fixed), (list(g.edges()), fixed)


def test_run_lifted_witnesses_recolor_the_root():
    rng = random.Random(5150)
    verified = 0
    for _ in range(120):
        g, fixed = _rand_instance(rng, max_n=9)
        coll = run_y0(g, _vs(*fixed), Coloring.from_dict(g.n, fixed))
        if coll.mode is CollectionMode.ANY:
            assert not _brute_extendable(g, fixed)
            continue
        groups = {}
        for m in coll:
            groups.setdefault(m.group, []).append(m)
        picks = []
        for mems in groups.values():
            found = next(
                ((m, e) for m in mems if (e := _member_ext(m.pre)) is not None), None
            )
            if found is None:
                break
            picks.append(found)
        if len(picks) < len(groups):
            assert not _brute_extendable(g, fixed)
            continue
        full = dict(fixed)
        for m, ext in picks:
            lifted = lift(m.chain, m.pre.f.merge(ext))
            for v, c in lifted.items():
                assert full.setdefault(v, c) == c
        got = Coloring.from_dict(g.n, full)
        ok, why = check_proper(g, got)
        assert ok and got.is_total(), why
        assert all(got.get(v) == c for v, c in fixed.items())
        verified += 1
    assert verified > 30


def test_run_four_colors_every_small_connected_graph():
    total = 0
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = Graph.from_edges(n, edges)
            if not is_connected(g, g.vertex_set()):
                continue
            total += 1
            coll = run_y0(g, EMPTY, Coloring.from_dict(n, {}))
            assert _verdict(coll) == _brute_extendable(g, {})
    assert total == 1 + 1 + 4 + 38 + 728  # labelled connected graphs, n <= 5


# ---------------------------------------------------------------------------
# randomized per-stage audits


def test_stage_audits_on_random_seeded_states():
    rng = random.Random(777)
    audited = {"mixedy0": 0, "123star": 0, "mixedyl": 0, "complete": 0}
    rounds = 0
    while rounds < 500:
        pre = _rand_seeded(rng)
        if pre is None:
            continue
        rounds += 1
        if not check_seeded_axiom(pre, "iv"):
            stage, upto = stage_mixedy0, "iv"
        elif not unique_seed_color(pre):
            stage, upto = stage_123star, "vi"
        elif not check_seeded_axiom(pre, "vii"):
            stage, upto = stage_mixedyl, "vii"
        elif not check_seeded_axiom(pre, "viii"):
            stage, upto = stage_complete, "viii"
        else:
            continue
        try:
            members = list(stage(pre))
        except PipelineError:
            continue  # off-ladder draw outside the stage's guarantees
        audited[stage.__name__.removeprefix("stage_")] += 1
        assert any(_brute_pre(m.pre) for m in members) == _brute_pre(pre)
        for m in members:
            _assert_axioms(m.pre, upto)
    assert min(audited.values()) >= 10  # every deep stage gets real work


@given(st.integers(0, 10 ** 9))
@PROPERTY_SETTINGS
def test_run_verdict_property(seed):
    rng = random.Random(seed)
    g, fixed = _rand_instance(rng, max_n=8)
    coll = run_y0(g, _vs(*fixed), Coloring.from_dict(g.n, fixed))
    assert _verdict(coll) == _brute_extendable(g, fixed)
