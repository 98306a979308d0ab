"""Second pipeline: from *good* seeded precolorings to excellent starred ones.

``to_starred`` repackages a good seeded precoloring as a starred precoloring
``(G, S, X0, X, Y, Y*, f)``: the distinguished-list vertices anchored to the
full-list pool join the protected set ``Y*`` together with the full-list pool
itself, and everything else keeps its bucket.  The stages then sweep away
small patterns among the 3-listed vertices (``Y``) until none are left.
Each stage returns an equivalent collection — the input has a proper
extension iff the collection has one (ANY: some member; ALL: every group).

The stages, by what they do:

    stage_pairoflists   for one 3-list L: no vertex with another list may
                        start a path into an edge of the L class
    stage_122           condition (II): no Y-path a-b-c whose lists realize
                        exactly two distinct 3-lists
    stage_triple        for one ordered triple of 3-lists: no Y-path a-b-c
                        realizing those lists in order
    stage_123           condition (III): no Y-path a-b-c with three
                        pairwise-distinct 3-lists
    stage_x11           condition (IV): no path a-b-c with a in X and b, c
                        in Y sharing one 3-list
    stage_x12_triple    for 3-lists L1, L2 and a 2-list L3 other than
                        L1 ∩ L2: no path a-b-c with a in X listed L3 and
                        b, c in Y listed L1, L2
    stage_x12           condition (V): the above for every valid triple
    stage_orthogonal    condition (VII): every X-vertex near a two-list
                        mixed Y-component carries the intersection list
    stage_y_empty       condition (VIII): Y = ∅, by per-component tests,
                        deletions that are recolored at lift time, and a
                        bounded set of colorings of the interface vertices

``run_y`` composes the ladder.  Its output is grouped by (branch, part): the
input is extendable iff for some branch every one of its part groups has an
extendable member (see the docstring of ``run_y``).

Everything is deterministic: vertices ascend by id, colors ascend 1..4,
sweeps walk list tuples in a fixed order, and stage outputs are materialized
tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .graph_core import (
    EMPTY,
    Graph,
    Relation,
    VertexSet,
    components,
    find_induced_p6,
    find_k5,
    induced_subgraph,
    neighborhood,
    relation,
)
from .list_coloring import (
    FULL_MASK,
    Coloring,
    ListAssignment,
    color_bit,
    colors_of,
    exact_list_color,
    two_list_color,
)
from .precoloring_model import (
    CollectionMode,
    DeletionStep,
    EquivalentCollection,
    ExcellentStarredPrecoloring,
    Member,
    RelabelStep,
    SEEDED_AXIOM_IDS,
    STARRED_AXIOM_IDS,
    SeededPrecoloring,
    StarredPrecoloring,
    THREE_LISTS,
    check_seeded_axiom,
    check_starred_axiom,
    dedup_members,
    list_of,
    restrict_starred,
    unique_seed_color,
    vertices_with_list,
    y_l_star,
)
from .y0_pipeline import (
    BudgetExceeded,
    PipelineError,
    _any_of,
    _cap_hit,
    _compose,
    _is_proper,
    _proper_completions,
)

# 2-lists in the same order THREE_LISTS uses: descending complement.
TWO_LISTS: Tuple[int, ...] = tuple(
    FULL_MASK & ~(color_bit(a) | color_bit(b))
    for a, b in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
)

_BASE_AXIOMS = STARRED_AXIOM_IDS[:8]  # the starred analogues of goodness


def _only_color(mask: int) -> int:
    cs = colors_of(mask)
    if len(cs) != 1:
        raise PipelineError(f"expected a single color, got mask {mask:04b}")
    return cs[0]


def _debug_axioms(p: StarredPrecoloring, axioms: Sequence[str], op: str) -> None:
    for ax in axioms:
        rep = check_starred_axiom(p, ax)
        if not rep:
            raise PipelineError(f"{op}: input violates ({ax}): {rep.witness}")


def _put(d: Dict[int, int], v: int, c: int) -> bool:
    """Record a forced color; False means the combination contradicts itself."""
    old = d.get(v)
    if old is None:
        d[v] = c
        return True
    return old == c


# ---------------------------------------------------------------------------
# settling: apply picks and pins, then re-bucket by derived list size

def _settle(
    p: StarredPrecoloring,
    seeds: Dict[int, int],
    pins: Dict[int, int],
) -> Optional[StarredPrecoloring]:
    """One member of a stage output, or None when the choice is contradictory.

    ``seeds`` join the seed set with the given colors, ``pins`` join ``X0``.
    Afterwards every undecided vertex is re-bucketed by the size of its
    derived list against the grown seed: 3 stays in Y, 2 goes to X, 1 is
    pinned, 0 kills the member.  ``Y*`` never moves.  Seeds win over pins on
    the same vertex; a vertex colored two different ways, an improper result,
    or an emptied list all return None (the caller drops the combination).
    """
    g = p.graph
    new_s = p.s
    forced: Dict[int, int] = {}
    for v, c in seeds.items():
        if v in p.ystar:
            raise PipelineError("a stage tried to seed a protected vertex")
        if v in p.precolored:
            if p.f.get(v) != c:
                return None
            continue
        forced[v] = c
        new_s = new_s.add(v)
    pinned = EMPTY
    for v, c in pins.items():
        if v in new_s or v in p.precolored:
            if v in seeds or p.f.get(v) == c:
                continue
            return None
        if v in p.ystar:
            raise PipelineError("a stage tried to pin a protected vertex")
        forced[v] = c
        pinned = pinned.add(v)

    colors = p.f.to_dict()
    colors.update(forced)
    new_x0 = p.x0 | pinned
    new_x = EMPTY
    new_y = EMPTY
    for v in g.vertex_set() - (new_s | new_x0 | p.ystar):
        used = 0
        for u in g.neighbors(v) & new_s:
            used |= color_bit(colors[u])
        lmask = FULL_MASK & ~used
        size = len(colors_of(lmask))
        if size == 0:
            return None
        if size == 1:
            colors[v] = _only_color(lmask)
            new_x0 = new_x0.add(v)
        elif size == 2:
            new_x = new_x.add(v)
        elif size == 3:
            new_y = new_y.add(v)
        else:
            raise PipelineError("vertex with no seed neighbor survived settling")
    f2 = Coloring.from_dict(g.n, colors)
    if not _is_proper(g, f2, new_s | new_x0):
        return None
    return StarredPrecoloring(g, new_s, new_x0, new_x, new_y, p.ystar, f2)


def _dedup_pre(pres: Iterable[StarredPrecoloring]) -> List[StarredPrecoloring]:
    seen = set()
    out = []
    for q in pres:
        k = q.key()
        if k in seen:
            continue
        seen.add(k)
        out.append(q)
    return out


# ---------------------------------------------------------------------------
# path witnesses and type partitions

def _iter_path3(
    g: Graph,
    aset: VertexSet,
    bset: VertexSet,
    cset: VertexSet,
    *,
    induced: bool,
) -> Iterator[Tuple[int, int, int]]:
    """Paths a-b-c with ends in the given pools (a != c; induced means a !~ c)."""
    for b in bset:
        nb = g.neighbors(b)
        for a in nb & aset:
            cpool = (nb & cset).discard(a)
            if induced:
                cpool -= g.neighbors(a)
            for c in cpool:
                yield a, b, c


def _iter_path4(
    g: Graph,
    aset: VertexSet,
    bset: VertexSet,
    cset: VertexSet,
    dset: VertexSet,
    *,
    induced: bool,
) -> Iterator[Tuple[int, int, int, int]]:
    """Paths a-b-c-d, vertices distinct; induced means ac, ad, bd are non-edges."""
    for b in bset:
        nb = g.neighbors(b)
        for c in nb & cset:
            nc = g.neighbors(c)
            apool = (nb & aset).discard(c)
            if induced:
                apool -= nc
            for a in apool:
                dpool = (nc & dset).discard(a).discard(b)
                if induced:
                    dpool -= nb | g.neighbors(a)
                for d in dpool:
                    yield a, b, c, d


def _has_path3(g, aset, bset, cset, *, induced) -> bool:
    return next(_iter_path3(g, aset, bset, cset, induced=induced), None) is not None


def _has_path4(g, aset, bset, cset, dset, *, induced) -> bool:
    return next(_iter_path4(g, aset, bset, cset, dset, induced=induced), None) is not None


def _types_over(p: StarredPrecoloring, pool: VertexSet) -> List[Tuple[int, VertexSet]]:
    """Partition ``pool`` by seed neighborhood, ascending by type mask."""
    buckets: Dict[int, VertexSet] = {}
    for v in pool:
        t = (p.graph.neighbors(v) & p.s).mask
        buckets[t] = buckets.get(t, EMPTY).add(v)
    return sorted(buckets.items())


def _seed_colors(p: StarredPrecoloring, tmask: int) -> int:
    used = 0
    for u in VertexSet(tmask):
        used |= color_bit(p.f.get(u))
    return used


def _mixed_on(g: Graph, v: int, comp: VertexSet) -> bool:
    hit = g.adj[v] & comp.mask
    return hit != 0 and hit != comp.mask


# ---------------------------------------------------------------------------
# entry: good seeded precoloring -> starred precoloring

def to_starred(p: SeededPrecoloring) -> StarredPrecoloring:
    """Repackage a good seeded precoloring for the second pipeline.

    The distinguished-list vertices whose component in the full-list pool
    touches that pool are protected (they join ``Y*`` along with the pool
    itself); the remaining 3-listed vertices form the new ``Y``.  Raises
    PipelineError when the input fails any of the eight goodness checks.
    """
    for ax in SEEDED_AXIOM_IDS:
        rep = check_seeded_axiom(p, ax)
        if not rep:
            raise PipelineError(f"to_starred: input violates ({ax}): {rep.witness}")
    _, lmask = unique_seed_color(p).extra
    star = y_l_star(p, lmask)
    return StarredPrecoloring(
        p.graph, p.s, p.x0, p.x, p.y - star, star | p.y0, p.f
    )


# ---------------------------------------------------------------------------
# chain decompositions around a non-edge

@dataclass(frozen=True)
class ChainDecomposition:
    """Nested split of N(u) and N(v) for a non-edge u, v with no common
    neighbor: ``a[0]`` is complete to every ``b[j]`` except none, and for
    i, j >= 1 the level sets ``a[i]`` and ``b[j]`` are complete exactly when
    i != j.  Index 0 holds the core on each side."""

    a: Tuple[VertexSet, ...]
    b: Tuple[VertexSet, ...]

    @property
    def k(self) -> int:
        return len(self.a) - 1


def chain_decompose(g: Graph, u: int, v: int) -> ChainDecomposition:
    """Split the neighborhoods of a dominating non-edge into matched chains.

    Requires: uv not an edge, N(u) and N(v) disjoint and each stable,
    every vertex lies in {u, v} ∪ N(u) ∪ N(v), and G has no induced
    six-vertex path.  Greedy and deterministic; raises ValueError when a
    precondition fails (including the structural failures that only a
    six-vertex path could explain).
    """
    nu, nv = g.neighbors(u), g.neighbors(v)
    if v in nu:
        raise ValueError("chain_decompose: uv is an edge")
    if nu & nv:
        raise ValueError("chain_decompose: u and v share a neighbor")
    for a in nu:
        if g.neighbors(a) & nu:
            raise ValueError("chain_decompose: N(u) is not stable")
    for b in nv:
        if g.neighbors(b) & nv:
            raise ValueError("chain_decompose: N(v) is not stable")
    if (VertexSet.of((u, v)) | nu | nv) != g.vertex_set():
        raise ValueError("chain_decompose: {u,v} with their neighborhoods must cover G")
    if find_induced_p6(g) is not None:
        raise ValueError("chain_decompose: graph has an induced six-vertex path")

    if not nu or not nv:
        return ChainDecomposition((nu,), (nv,))

    a0, b0 = nu.min(), nv.min()
    if b0 in g.neighbors(a0):
        aa: List[VertexSet] = [VertexSet.single(a0)]
        bb: List[VertexSet] = [VertexSet.single(b0)]
    else:
        aa = [EMPTY, VertexSet.single(a0)]
        bb = [EMPTY, VertexSet.single(b0)]

    def place(x: int, same: List[VertexSet], other: List[VertexSet]) -> None:
        # x extends the `same` side; compare it against the covered `other` side
        nx = g.neighbors(x)
        covered = EMPTY
        for part in other:
            covered |= part
        if covered <= nx:
            same[0] = same[0] | VertexSet.single(x)
            return
        if (covered - other[0]) <= nx:
            split = other[0] - nx
            other[0] = other[0] & nx
            other.append(split)
            same.append(VertexSet.single(x))
            return
        for j in range(1, len(other)):
            if other[j].isdisjoint(nx) and (covered - other[j]) <= nx:
                same[j] = same[j] | VertexSet.single(x)
                return
        raise ValueError("chain_decompose: neighborhood pattern impossible without "
                         "an induced six-vertex path")

    while True:
        covered = VertexSet.of((u, v))
        for part in aa:
            covered |= part
        for part in bb:
            covered |= part
        rest = g.vertex_set() - covered
        if not rest:
            break
        x = rest.min()
        if x in nu:
            place(x, aa, bb)
        else:
            place(x, bb, aa)

    return ChainDecomposition(tuple(aa), tuple(bb))


# ---------------------------------------------------------------------------
# stage: one 3-list against everything else

def stage_pairoflists(
    p: StarredPrecoloring,
    l1: int,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Clear paths a-b-c inside X ∪ Y where b, c carry the 3-list ``l1`` and
    a carries any other list.

    On a graph with a 5-clique the output is empty (no 4-coloring exists at
    all).  Otherwise: when no such path exists the input passes through;
    else every admissible seed type contributes a choice of zero, one or two
    adjacent picks with colors from ``l1``, the unpicked parts of each type
    are pinned, and three more rounds of the same shape follow, each refining
    every member of the previous one.
    """
    if l1 not in THREE_LISTS:
        raise ValueError("stage_pairoflists: l1 must be a 3-color list")
    if debug:
        _debug_axioms(p, _BASE_AXIOMS + ("I",), "stage_pairoflists")
    g = p.graph
    if find_k5(g) is not None:
        return _any_of((), "stage_pairoflists")
    pool = p.x | p.y
    target = vertices_with_list(p, p.y, l1)
    if not _has_path3(g, pool - target, target, target, induced=False):
        return _any_of((Member(p),), "stage_pairoflists")
    alpha = _only_color(FULL_MASK & ~l1)

    members = _pair_pass(p, l1, alpha, cap, first=True)
    for _ in range(3):
        nxt: List[StarredPrecoloring] = []
        for q in members:
            nxt.extend(_pair_pass(q, l1, alpha, cap, first=False))
            if _cap_hit(len(nxt), cap):
                raise BudgetExceeded("stage_pairoflists: member cap exceeded")
        members = _dedup_pre(nxt)
    out = [Member(q) for q in members]
    if _cap_hit(len(out), cap):
        raise BudgetExceeded("stage_pairoflists: member cap exceeded")
    return _any_of(out, "stage_pairoflists")


def _pair_admissible(p: StarredPrecoloring, alpha: int) -> List[Tuple[int, VertexSet]]:
    """Types eligible for picking: both-colored types always; singly-colored
    ones (other than the target class itself) only while the two-3-list
    condition (II) still fails."""
    pool = p.x | p.y
    two_ok = bool(check_starred_axiom(p, "II"))
    out = []
    for tmask, tv in _types_over(p, pool):
        fcol = _seed_colors(p, tmask)
        ncol = len(colors_of(fcol))
        if ncol == 2:
            out.append((tmask, tv))
        elif ncol == 1 and not two_ok and fcol != color_bit(alpha):
            out.append((tmask, tv))
    return out


def _pair_options(
    p: StarredPrecoloring, l1: int, tv: VertexSet
) -> List[Tuple[Optional[int], Optional[int], int, int]]:
    """(q, r, cq, dr) pick tuples for one type: none, a single, or an edge."""
    g = p.graph
    opts: List[Tuple[Optional[int], Optional[int], int, int]] = [(None, None, 0, 0)]
    for q in tv:
        for cq in colors_of(l1 & list_of(p, q)):
            opts.append((q, None, cq, 0))
            for r in g.neighbors(q) & tv:
                for dr in colors_of(l1 & list_of(p, r)):
                    opts.append((q, r, cq, dr))
    return opts


def _pair_pass(
    p: StarredPrecoloring,
    l1: int,
    alpha: int,
    cap: Optional[int],
    *,
    first: bool,
) -> List[StarredPrecoloring]:
    """One pass of picking and pinning; the first pass and the three rounds
    share the pick shapes but force different leftovers."""
    g = p.graph
    admissible = _pair_admissible(p, alpha)
    if not admissible:
        return [p]
    y1 = vertices_with_list(p, p.y, l1)
    slot_opts = [_pair_options(p, l1, tv) for _, tv in admissible]
    out: List[StarredPrecoloring] = []
    for combo in itertools.product(*slot_opts):
        seeds: Dict[int, int] = {}
        pins: Dict[int, int] = {}
        ok = True
        for (tmask, tv), (q, r, cq, dr) in zip(admissible, combo):
            if q is None:
                for z in tv:
                    ok = ok and _put(pins, z, alpha)
                continue
            ok = ok and _put(seeds, q, cq)
            if r is not None:
                ok = ok and _put(seeds, r, dr)
            if not ok:
                break
            nq = g.neighbors(q)
            if first:
                if r is None:
                    for z in tv & nq:
                        ok = ok and _put(pins, z, alpha)
                fcol = _seed_colors(p, tmask)
                if len(colors_of(fcol)) == 2:
                    unique = FULL_MASK & ~(fcol | color_bit(cq))
                    for z in tv & nq:
                        ok = ok and _put(pins, z, _only_color(unique))
            else:
                anchor = g.neighbors(r) & y1 if r is not None else nq & y1
                zpool = (tv & nq) if r is not None else tv
                for z in zpool:
                    nz = g.neighbors(z) & y1
                    if anchor.mask != nz.mask and anchor <= nz:
                        ok = ok and _put(pins, z, alpha)
                if r is None:
                    for z in tv & nq:
                        ok = ok and _put(pins, z, alpha)
            if not ok:
                break
        if not ok:
            continue
        for v in seeds:
            pins.pop(v, None)
        q2 = _settle(p, seeds, pins)
        if q2 is not None:
            out.append(q2)
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("stage_pairoflists: member cap exceeded")
    return _dedup_pre(out)


# ---------------------------------------------------------------------------
# sweep drivers

def _sweep(work: List[Member], fn, cap: Optional[int], op: str) -> List[Member]:
    nxt: List[Member] = []
    for mem in work:
        nxt.extend(_compose(mem, fn(mem.pre)))
        if _cap_hit(len(nxt), cap):
            raise BudgetExceeded(f"{op}: member cap exceeded")
    return list(dedup_members(nxt))


def stage_122(
    p: StarredPrecoloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Establish (II): sweep every ordered pair of distinct 3-lists through
    ``stage_pairoflists`` with the second list as the target."""
    if debug:
        _debug_axioms(p, _BASE_AXIOMS + ("I",), "stage_122")
    work = [Member(p)]
    for la in THREE_LISTS:
        for lb in THREE_LISTS:
            if la == lb:
                continue
            work = _sweep(
                work,
                lambda q, lb=lb: stage_pairoflists(q, lb, cap=cap),
                cap,
                "stage_122",
            )
    return _any_of(work, "stage_122")


# ---------------------------------------------------------------------------
# stage: one ordered triple of 3-lists

def stage_triple(
    p: StarredPrecoloring,
    l1: int,
    l2: int,
    l3: int,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Clear Y-paths a-b-c with lists ``l1``, ``l2``, ``l3`` in order.

    Picks come from the vertices of the ``l1`` class that both see the
    ``l2`` class and start a witness path; each pick pattern pins the
    leftovers of its type so that settling shortens every remaining list on
    the relevant vertices.
    """
    if len({l1, l2, l3}) != 3 or any(l not in THREE_LISTS for l in (l1, l2, l3)):
        raise ValueError("stage_triple: need three distinct 3-color lists")
    if debug:
        _debug_axioms(p, _BASE_AXIOMS + ("I", "II"), "stage_triple")
    g = p.graph
    c1 = _only_color(l1 & l2 & l3)
    c2 = _only_color(FULL_MASK & ~l3)
    c3 = _only_color(FULL_MASK & ~l2)
    y1 = vertices_with_list(p, p.y, l1)
    y2 = vertices_with_list(p, p.y, l2)
    y3 = vertices_with_list(p, p.y, l3)
    if not (y1 and y2 and y3):
        return _any_of((Member(p),), "stage_triple")
    shortcut = not _has_path4(g, y1, y2, y3, y2, induced=True) and not _has_path4(
        g, y3, y2, y1, y2, induced=True
    )

    def witness(tv: VertexSet) -> bool:
        if _has_path4(g, tv, y2, y3, y2, induced=True):
            return True
        return shortcut and _has_path3(g, tv, y2, y3, induced=True)

    types = [(tm, tv) for tm, tv in _types_over(p, y1)]
    if not any(witness(tv) for _, tv in types):
        return _any_of((Member(p),), "stage_triple")

    slot_opts: List[List[tuple]] = []
    for _, tv in types:
        if not witness(tv):
            slot_opts.append([("skip",)])
            continue
        star = VertexSet.of(v for v in tv if g.neighbors(v) & y2)
        opts: List[tuple] = []
        for s in star:
            for ca in colors_of(l1):
                opts.append(("one", s, ca))
        for u in star:
            for v in star - g.neighbors(u):
                if u == v:
                    continue
                a_pool = (g.neighbors(u) - g.neighbors(v)) & y2
                b_pool = (g.neighbors(v) - g.neighbors(u)) & y3
                opts.append(("two", u, v, None, 0, None, 0, a_pool, b_pool))
                for x in a_pool:
                    for cx in (c1, _only_color(FULL_MASK & ~l1)):
                        opts.append(("two", u, v, x, cx, None, 0, a_pool, b_pool))
                        for w in b_pool - g.neighbors(x):
                            for cw in (c1, _only_color(FULL_MASK & ~l1)):
                                opts.append(
                                    ("two", u, v, x, cx, w, cw, a_pool, b_pool)
                                )
        if not opts:
            # witnesses start at vertices with a neighbor in the middle class,
            # so a witnessed type always offers at least its single picks
            raise PipelineError("stage_triple: witnessed type offers no picks")
        slot_opts.append(opts)

    out: List[StarredPrecoloring] = []
    for combo in itertools.product(*slot_opts):
        seeds: Dict[int, int] = {}
        pins: Dict[int, int] = {}
        ok = True
        for (tmask, tv), opt in zip(types, combo):
            if opt[0] == "skip":
                continue
            if opt[0] == "one":
                _, s, ca = opt
                ok = ok and _put(seeds, s, ca)
                if ok and ca in (c2, c3):
                    star = VertexSet.of(w for w in tv if g.neighbors(w) & y2)
                    wt = star.discard(s)
                    other = _only_color(l1 & ~(color_bit(ca) | (l2 & l3)))
                    for z in wt - g.neighbors(s):
                        ok = ok and _put(pins, z, ca)
                    for z in wt & g.neighbors(s):
                        ok = ok and _put(pins, z, other)
                continue
            _, u, v, x, cx, w, cw, a_pool, b_pool = opt
            ok = ok and _put(seeds, u, c3) and _put(seeds, v, c2)
            if x is None:
                for z in a_pool:
                    ok = ok and _put(pins, z, c2)
            else:
                ok = ok and _put(seeds, x, cx)
                if w is None:
                    for z in b_pool - g.neighbors(x):
                        ok = ok and _put(pins, z, c3)
                else:
                    ok = ok and _put(seeds, w, cw)
            if not ok:
                break
        if not ok:
            continue
        for v in seeds:
            pins.pop(v, None)
        q2 = _settle(p, seeds, pins)
        if q2 is not None:
            out.append(q2)
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("stage_triple: member cap exceeded")
    return _any_of([Member(q) for q in _dedup_pre(out)], "stage_triple")


def stage_123(
    p: StarredPrecoloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Establish (III): two full sweeps of ``stage_triple`` over all ordered
    triples of distinct 3-lists."""
    if debug:
        _debug_axioms(p, _BASE_AXIOMS + ("I", "II"), "stage_123")
    work = [Member(p)]
    for _ in range(2):
        for l1, l2, l3 in itertools.permutations(THREE_LISTS, 3):
            work = _sweep(
                work,
                lambda q, a=l1, b=l2, c=l3: stage_triple(q, a, b, c, cap=cap),
                cap,
                "stage_123",
            )
    return _any_of(work, "stage_123")


def stage_x11(
    p: StarredPrecoloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Establish (IV): one sweep of ``stage_pairoflists`` per 3-list.  The
    pass-through criterion of that stage already covers X-vertices, so after
    the sweep no X-vertex neighbors an edge of a single 3-list class."""
    if debug:
        _debug_axioms(p, _BASE_AXIOMS + ("I", "II", "III"), "stage_x11")
    work = [Member(p)]
    for l in THREE_LISTS:
        work = _sweep(
            work,
            lambda q, l=l: stage_pairoflists(q, l, cap=cap),
            cap,
            "stage_x11",
        )
    return _any_of(work, "stage_x11")


# ---------------------------------------------------------------------------
# stage: a 2-listed X vertex against two 3-list classes

class CaseTag(Enum):
    """Shape of the optional secondary picks in ``stage_x12_triple``."""

    NONE = "none"
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    E = "e"
    F = "f"


def _star_condition(p: StarredPrecoloring) -> bool:
    """No induced path x-b-c-d with x in X on a 2-list other than the
    intersection of the two distinct 3-lists carried by b, d and by c."""
    g = p.graph
    ycls = {l: vertices_with_list(p, p.y, l) for l in THREE_LISTS}
    xcls = {l: vertices_with_list(p, p.x, l) for l in TWO_LISTS}
    for l1, l2 in itertools.permutations(THREE_LISTS, 2):
        for l3 in TWO_LISTS:
            if l3 == l1 & l2:
                continue
            if not xcls[l3]:
                continue
            if _has_path4(g, xcls[l3], ycls[l1], ycls[l2], ycls[l1], induced=True):
                return False
    return True


def stage_x12_triple(
    p: StarredPrecoloring,
    l1: int,
    l2: int,
    l3: int,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Clear paths from X-vertices listed ``l3`` into the ``l1``/``l2``
    Y-classes, for 3-lists ``l1`` != ``l2`` and a 2-list ``l3`` other than
    their intersection.

    Every type of the offending X-vertices picks one or two of them with
    colors from ``l3``; picks mixed on a component of Y meeting three or
    more classes drag in two secondary picks inside that component; and the
    interplay between the picks' private neighborhoods in the two Y-classes
    is resolved by one of seven secondary pick shapes (``CaseTag``).
    """
    if l1 == l2 or l1 not in THREE_LISTS or l2 not in THREE_LISTS:
        raise ValueError("stage_x12_triple: need two distinct 3-color lists")
    if l3 not in TWO_LISTS or l3 == l1 & l2:
        raise ValueError("stage_x12_triple: l3 must be a 2-list other than l1 ∩ l2")
    if debug:
        _debug_axioms(p, _BASE_AXIOMS + ("I", "II", "III", "IV"), "stage_x12_triple")
    g = p.graph
    alpha = _only_color(l1 & ~l2)
    beta = _only_color(l2 & ~l1)
    shared = l1 & l2
    y1 = vertices_with_list(p, p.y, l1)
    y2 = vertices_with_list(p, p.y, l2)
    rest_lists = [l for l in THREE_LISTS if l not in (l1, l2)]
    y45 = vertices_with_list(p, p.y, rest_lists[0]) | vertices_with_list(
        p, p.y, rest_lists[1]
    )
    xl3 = vertices_with_list(p, p.x, l3)
    star_ok = _star_condition(p)
    x3 = EMPTY
    for v in xl3:
        single = VertexSet.single(v)
        if _has_path4(g, single, y1, y2, y1, induced=True):
            x3 = x3.add(v)
        elif star_ok and _has_path3(g, single, y1, y2, induced=True):
            x3 = x3.add(v)
    if not x3:
        return _any_of((Member(p),), "stage_x12_triple")

    bad_comps = [
        c for c in components(g, p.y) if (c & y1) and (c & y2) and (c & y45)
    ]
    class_lists = (l1, l2, rest_lists[0], rest_lists[1])

    def comp_options(s: int) -> List[tuple]:
        """(component, (x, color, class), (x, color, class)) or the empty pick."""
        mixed = [c for c in bad_comps if _mixed_on(g, s, c)]
        if not mixed:
            return [None]
        opts: List[tuple] = []
        for c in mixed:
            cls = [(l, c & vertices_with_list(p, p.y, l)) for l in class_lists]
            cls = [(l, cv) for l, cv in cls if cv]
            for (la, va), (lb, vb) in itertools.permutations(cls, 2):
                for xa in va:
                    for ha in colors_of(list_of(p, xa)):
                        for xb in vb:
                            for hb in colors_of(list_of(p, xb)):
                                opts.append((c, (xa, ha, va), (xb, hb, vb)))
        return opts

    pair_allowed = (l3 & shared) == 0
    types = _types_over(p, x3)
    slot_opts: List[List[tuple]] = []
    for _, tv in types:
        opts: List[tuple] = []
        for u in tv:
            for cu in colors_of(l3):
                for copt in comp_options(u):
                    opts.append(("one", u, cu, copt))
        if pair_allowed:
            for u in tv:
                for v in (tv - g.neighbors(u)).discard(u):
                    for cu, cv in ((alpha, beta), (beta, alpha)):
                        ua, vb = (u, v) if cu == alpha else (v, u)
                        a_pool = (g.neighbors(ua) & y2) - g.neighbors(vb)
                        b_pool = (g.neighbors(vb) & y1) - g.neighbors(ua)
                        for copt1 in comp_options(u):
                            for copt2 in comp_options(v):
                                for ropt in _x12_r_options(g, shared, a_pool, b_pool):
                                    opts.append(
                                        ("two", u, cu, v, cv, copt1, copt2,
                                         a_pool, b_pool, ropt)
                                    )
        slot_opts.append(opts)

    out: List[StarredPrecoloring] = []
    for combo in itertools.product(*slot_opts):
        member = _x12_apply(
            p, types, combo, l1, l2, l3, alpha, beta, shared, debug
        )
        if member is not None:
            out.append(member)
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("stage_x12_triple: member cap exceeded")
    return _any_of([Member(q) for q in _dedup_pre(out)], "stage_x12_triple")


def _x12_r_options(
    g: Graph, shared: int, a_pool: VertexSet, b_pool: VertexSet
) -> List[tuple]:
    """Secondary pick shapes between the private neighborhoods of a pair."""
    opts: List[tuple] = [(CaseTag.NONE,), (CaseTag.A,), (CaseTag.B,)]
    cc = colors_of(shared)
    for x in a_pool:
        nx = g.neighbors(x)
        for y in b_pool:
            if y in nx:
                for cx in cc:
                    for cy in cc:
                        if cx == cy:
                            continue
                        opts.append((CaseTag.D, x, cx, y, cy))
                        opts.append((CaseTag.E, x, cx, y, cy))
            else:
                opts.append((CaseTag.C, x, y))
    for x in a_pool:
        nx = g.neighbors(x)
        for y in (b_pool & nx):
            for x2 in (a_pool - nx).discard(x):
                nx2 = g.neighbors(x2)
                if y in nx2:
                    continue
                for y2 in ((b_pool & nx2) - nx).discard(y):
                    if y2 in g.neighbors(y):
                        continue
                    for cx in cc:
                        for cy in cc:
                            if cx == cy:
                                continue
                            for cx2 in cc:
                                for cy2 in cc:
                                    if cx2 == cy2:
                                        continue
                                    opts.append(
                                        (CaseTag.F, x, cx, y, cy, x2, cx2, y2, cy2)
                                    )
    return opts


def _x12_apply(
    p: StarredPrecoloring,
    types: List[Tuple[int, VertexSet]],
    combo: Sequence[tuple],
    l1: int,
    l2: int,
    l3: int,
    alpha: int,
    beta: int,
    shared: int,
    debug: bool,
) -> Optional[StarredPrecoloring]:
    g = p.graph
    y1 = vertices_with_list(p, p.y, l1)
    seeds: Dict[int, int] = {}
    pins: Dict[int, int] = {}
    ok = True

    def comp_pins(copt) -> bool:
        if copt is None:
            return True
        _, (xa, ha, va), (xb, hb, vb) = copt
        good = _put(seeds, xa, ha) and _put(seeds, xb, hb)
        for z in va.discard(xa):
            good = good and _put(pins, z, ha)
        for z in vb.discard(xb):
            good = good and _put(pins, z, hb)
        return good

    for (tmask, tv), opt in zip(types, combo):
        if opt[0] == "one":
            _, u, cu, copt = opt
            ok = ok and _put(seeds, u, cu) and comp_pins(copt)
            if not ok:
                break
            nu = g.neighbors(u)
            if color_bit(cu) & shared:
                forced = _only_color(l3 & ~shared)
                anchor = nu & y1
                for x in tv:
                    nx = g.neighbors(x) & y1
                    if anchor.mask != nx.mask and anchor <= nx:
                        ok = ok and _put(pins, x, forced)
            else:
                other = _only_color(l3 & ~color_bit(cu))
                wt = tv.discard(u)
                for z in wt - nu:
                    ok = ok and _put(pins, z, cu)
                for z in wt & nu:
                    ok = ok and _put(pins, z, other)
            if not ok:
                break
            continue
        (_, u, cu, v, cv, copt1, copt2, a_pool, b_pool, ropt) = opt
        ok = (
            ok
            and _put(seeds, u, cu)
            and _put(seeds, v, cv)
            and comp_pins(copt1)
            and comp_pins(copt2)
        )
        if not ok:
            break
        # second-field pick pulls the leftovers that outgrow it sideways
        anchor = g.neighbors(v) & y1
        for x in (tv - g.neighbors(u)).discard(u).discard(v):
            nx = g.neighbors(x) & y1
            if anchor.mask != nx.mask and anchor <= nx:
                ok = ok and _put(pins, x, cu)
        if not ok:
            break
        tag = ropt[0]
        if tag is CaseTag.A:
            for z in a_pool:
                ok = ok and _put(pins, z, beta)
        elif tag is CaseTag.B:
            for z in b_pool:
                ok = ok and _put(pins, z, alpha)
        elif tag is CaseTag.C:
            _, x, y = ropt
            for z in a_pool & g.neighbors(y):
                ok = ok and _put(pins, z, beta)
            for z in b_pool & g.neighbors(x):
                ok = ok and _put(pins, z, alpha)
        elif tag is CaseTag.D:
            _, x, cx, y, cy = ropt
            ok = ok and _put(seeds, x, cx) and _put(seeds, y, cy)
            for z in b_pool - g.neighbors(x):
                ok = ok and _put(pins, z, alpha)
        elif tag is CaseTag.E:
            _, x, cx, y, cy = ropt
            ok = ok and _put(seeds, x, cx) and _put(seeds, y, cy)
            for z in a_pool - g.neighbors(y):
                ok = ok and _put(pins, z, beta)
        elif tag is CaseTag.F:
            _, x, cx, y, cy, x2, cx2, y2, cy2 = ropt
            ok = (
                ok
                and _put(seeds, x, cx)
                and _put(seeds, y, cy)
                and _put(seeds, x2, cx2)
                and _put(seeds, y2, cy2)
            )
            if debug and ok:
                ua, vb = (u, v) if cu == alpha else (v, u)
                ring = (ua, x, y, vb, y2, x2)
                for i in range(6):
                    for j in range(i + 1, 6):
                        expect = (j - i) in (1, 5)
                        got = ring[j] in g.neighbors(ring[i])
                        if expect != got:
                            raise PipelineError(
                                "stage_x12_triple: six-cycle pattern broken"
                            )
        if not ok:
            break
    if not ok:
        return None
    for v in seeds:
        pins.pop(v, None)
    return _settle(p, seeds, pins)


def stage_x12(
    p: StarredPrecoloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Establish (V): two full sweeps of ``stage_x12_triple`` over every
    ordered pair of distinct 3-lists and every admissible 2-list.  The first
    sweep rules out the long witness paths everywhere, the second finishes
    the short ones."""
    if debug:
        _debug_axioms(p, _BASE_AXIOMS + ("I", "II", "III", "IV"), "stage_x12")
    work = [Member(p)]
    for _ in range(2):
        for l1, l2 in itertools.permutations(THREE_LISTS, 2):
            for l3 in TWO_LISTS:
                if l3 == l1 & l2:
                    continue
                work = _sweep(
                    work,
                    lambda q, a=l1, b=l2, c=l3: stage_x12_triple(q, a, b, c, cap=cap),
                    cap,
                    "stage_x12",
                )
    return _any_of(work, "stage_x12")


# ---------------------------------------------------------------------------
# stage: orthogonal picks

def stage_orthogonal(
    p: StarredPrecoloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Establish (VII): for every X type, seed vertex and pair of 3-lists,
    pick the type vertex meeting the most mixed two-list Y-components that
    the seed vertex also touches; the picks are seeded with every proper
    color combination and settling demotes their neighborhoods."""
    if debug:
        _debug_axioms(
            p, _BASE_AXIOMS + ("I", "II", "III", "IV", "V", "VI"), "stage_orthogonal"
        )
    g = p.graph
    ycomps = components(g, p.y)
    mixed_comps = [
        c for c in ycomps if any(_mixed_on(g, x, c) for x in p.x)
    ]
    cls = {l: vertices_with_list(p, p.y, l) for l in THREE_LISTS}
    pairs = list(itertools.combinations(THREE_LISTS, 2))

    slot_opts: List[List[Optional[int]]] = []
    for tmask, tv in _types_over(p, p.x):
        fcol = _seed_colors(p, tmask)
        for sj in p.s:
            sj_n = g.neighbors(sj)
            for la, lb in pairs:
                if (FULL_MASK & ~fcol) == (la & lb) or (
                    color_bit(p.f.get(sj)) & fcol
                ):
                    slot_opts.append([None])
                    continue
                witnesses = [
                    c
                    for c in mixed_comps
                    if (c & cls[la]) and (c & cls[lb]) and (sj_n & c)
                ]
                counts = {
                    x: sum(1 for c in witnesses if g.neighbors(x) & c) for x in tv
                }
                best = max(counts.values(), default=0)
                if best == 0:
                    slot_opts.append([None])
                else:
                    slot_opts.append([x for x, k in counts.items() if k == best])

    picks = sorted({
        frozenset(x for x in combo if x is not None)
        for combo in itertools.product(*slot_opts)
    }, key=lambda s: sorted(s))
    out: List[StarredPrecoloring] = []
    for q_set in picks:
        todo = sorted(q_set)
        if not todo:
            out.append(p)
            continue
        for f2 in _proper_completions(g, p.f, todo):
            q2 = _settle(p, {x: f2.get(x) for x in todo}, {})
            if q2 is not None:
                out.append(q2)
            if _cap_hit(len(out), cap):
                raise BudgetExceeded("stage_orthogonal: member cap exceeded")
    return _any_of([Member(q) for q in _dedup_pre(out)], "stage_orthogonal")


# ---------------------------------------------------------------------------
# stage: empty out Y

def stage_y_empty(
    p: StarredPrecoloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Establish (VIII): empty out Y, part by part.

    The free vertices split into components, each an independent obligation
    (ALL mode, one group per part).  Inside a part, Y-components are tested
    and deleted one batch at a time — each deletion restarts the analysis of
    the part, re-splitting it if it fell apart — until only protected
    components and two-list components with mixed X-neighbors remain.  The
    latter are resolved globally per pair of 3-lists: the mixed X-vertices
    admit at most two colorings each, everything they dominate is deleted,
    and each surviving coloring yields one member of the part's group.  An
    unextendable part empties the whole collection (ANY of nothing).

    Deleted vertices are recolored at lift time from their recorded lists;
    members carry the relabel/deletion chain that makes this replay exact.
    """
    if debug:
        _debug_axioms(p, STARRED_AXIOM_IDS[:15], "stage_y_empty")
    leaves: List[Member] = []
    if not _y_empty_rec(p, (), (), leaves, cap):
        return _any_of((), "stage_y_empty")
    return EquivalentCollection(CollectionMode.ALL, tuple(leaves), "stage_y_empty")


def _y_empty_rec(
    q: StarredPrecoloring,
    chain: tuple,
    gid: tuple,
    out: List[Member],
    cap: Optional[int],
) -> bool:
    """Process one instance, splitting and restarting as needed.

    Appends the finished members (group ``gid`` extended per part) and
    returns False as soon as some part turns out unextendable.
    """
    free_pool = q.x | q.y | q.ystar
    parts = components(q.graph, free_pool)
    if len(parts) > 1:
        for i, part in enumerate(parts):
            sub_pre, sub = restrict_starred(q, q.s | q.x0 | part)
            step = RelabelStep(q.graph, sub.graph, sub.to_parent)
            if not _y_empty_rec(sub_pre, chain + (step,), gid + (i,), out, cap):
                return False
        return True
    return _y_empty_part(q, chain, gid, out, cap)


def _y_masks(q: StarredPrecoloring) -> Dict[int, int]:
    """Remaining colors for each Y vertex once all precolored neighbors count."""
    out = {}
    for v in q.y:
        m = list_of(q, v)
        for u in q.graph.neighbors(v) & q.x0:
            m &= ~color_bit(q.f.get(u))
        out[v] = m
    return out


def _delete_and_recurse(
    q: StarredPrecoloring,
    batch: VertexSet,
    masks: Dict[int, int],
    chain: tuple,
    gid: tuple,
    out: List[Member],
    cap: Optional[int],
) -> bool:
    keep = q.graph.vertex_set() - batch
    sub_pre, sub = restrict_starred(q, keep)
    step = DeletionStep(
        q.graph, sub.graph, sub.to_parent, tuple((v, masks[v]) for v in batch)
    )
    return _y_empty_rec(sub_pre, chain + (step,), gid, out, cap)


def _two_list_on(g: Graph, vs: VertexSet, masks: Dict[int, int]) -> bool:
    sub = induced_subgraph(g, vs)
    lists = ListAssignment(tuple(masks[sub.to_parent[i]] for i in range(sub.graph.n)))
    return two_list_color(sub.graph, lists) is not None


def _y_empty_part(
    q: StarredPrecoloring,
    chain: tuple,
    gid: tuple,
    out: List[Member],
    cap: Optional[int],
) -> bool:
    g = q.graph
    masks = _y_masks(q)
    cls = {l: vertices_with_list(q, q.y, l) for l in THREE_LISTS}
    comps = sorted(components(g, q.y), key=lambda c: c.min())
    protected = EMPTY
    deferred: List[VertexSet] = []

    for comp in comps:
        mixers = VertexSet.of(x for x in q.x if _mixed_on(g, x, comp))
        if not mixers and any(
            comp <= g.neighbors(w) for w in (q.s | q.x0 | q.x)
        ):
            protected |= comp
            continue
        here = [l for l in THREE_LISTS if comp & cls[l]]
        outside = neighborhood(g, comp) - (q.s | q.x0)
        if len(here) == 1:
            if outside:
                raise PipelineError("stage_y_empty: one-list component leaks")
            sub = induced_subgraph(g, comp)
            lists = ListAssignment(
                tuple(masks[sub.to_parent[i]] for i in range(sub.graph.n))
            )
            if exact_list_color(sub.graph, lists) is None:
                return False
            return _delete_and_recurse(q, comp, masks, chain, gid, out, cap)
        if len(here) >= 3:
            if outside:
                raise PipelineError("stage_y_empty: multi-list component leaks")
            classes = [comp & cls[l] for l in here]
            for ca, cb in itertools.combinations(classes, 2):
                if relation(g, ca, cb) is not Relation.COMPLETE:
                    raise PipelineError(
                        "stage_y_empty: class pair of a component not complete"
                    )
            if _palette_split(g, classes, masks):
                return _delete_and_recurse(q, comp, masks, chain, gid, out, cap)
            return False
        # exactly two lists
        la, lb = here
        priv = {la: _only_color(la & ~lb), lb: _only_color(lb & ~la)}
        shared = la & lb
        blocks = [
            (l, b) for l in (la, lb) for b in components(g, comp & cls[l])
        ]
        for _, b in blocks:
            if any(_mixed_on(g, x, b) for x in q.x):
                raise PipelineError("stage_y_empty: X vertex mixed on a block")
        for (lx, bx), (ly, by) in itertools.combinations(blocks, 2):
            if lx != ly and relation(g, bx, by) is Relation.MIXED:
                raise PipelineError("stage_y_empty: cross-class blocks mixed")
        for x in q.x:
            if (g.neighbors(x) & comp) and list_of(q, x) != shared:
                raise PipelineError(
                    "stage_y_empty: X neighbor of a two-list component "
                    "carries the wrong list"
                )
        works = {
            i: _works_sets(g, b, masks, priv[l], shared)
            for i, (l, b) in enumerate(blocks)
        }
        # blocks that can live on their private color alone impose nothing on
        # the rest: delete them (replay recolors within the recorded masks)
        hollow = VertexSet.of(
            v
            for i, (_, b) in enumerate(blocks)
            if 0 in works[i]
            for v in b
        )
        if hollow:
            return _delete_and_recurse(q, hollow, masks, chain, gid, out, cap)
        if any(comp <= g.neighbors(x) for x in q.x):
            return False
        if not mixers:
            h, tlists = _interface_graph(g, [(comp, blocks, works)], EMPTY, masks)
            if not _two_colorings(h, tlists, shared):
                return False
            return _delete_and_recurse(q, comp, masks, chain, gid, out, cap)
        deferred.append(comp)

    return _y_empty_finish(
        q, chain, gid, out, cap, masks, cls, protected, deferred
    )


def _works_sets(
    g: Graph, block: VertexSet, masks: Dict[int, int], priv: int, shared: int
) -> List[int]:
    """Shared-color masks (0 or a single bit) the block can live with."""
    sets = []
    for sigma in (0,) + tuple(color_bit(c) for c in colors_of(shared)):
        pal = sigma | color_bit(priv)
        local = {v: masks[v] & pal for v in block}
        if _two_list_on(g, block, local):
            sets.append(sigma)
    return sets


def _palette_split(
    g: Graph, classes: List[VertexSet], masks: Dict[int, int]
) -> bool:
    """Can the classes take pairwise-disjoint palettes of at most two colors?"""
    k = len(classes)
    for assign in itertools.product(range(k + 1), repeat=4):
        palettes = [0] * k
        for color, slot in zip((1, 2, 3, 4), assign):
            if slot:
                palettes[slot - 1] |= color_bit(color)
        if any(len(colors_of(pm)) > 2 for pm in palettes):
            continue
        good = True
        for cvs, pm in zip(classes, palettes):
            local = {v: masks[v] & pm for v in cvs}
            if not _two_list_on(g, cvs, local):
                good = False
                break
        if good:
            return True
    return False


def _interface_graph(
    g: Graph,
    comp_data: List[tuple],
    xpart: VertexSet,
    masks: Dict[int, int],
):
    """Auxiliary graph over blocks and mixed X-vertices.

    Nodes are (``"b"``, comp index, block index) or (``"x"``, vertex).
    Blocks link when complete; an X node links to the blocks it is complete
    to and to its G-neighbors among the X nodes.  Each node carries the mask
    of shared colors it may take.
    """
    nodes: List[tuple] = []
    lists: Dict[tuple, int] = {}
    adj: Dict[tuple, set] = {}
    for ci, (comp, blocks, works) in enumerate(comp_data):
        for bi in range(len(blocks)):
            node = ("b", ci, bi)
            nodes.append(node)
            lists[node] = 0
            for sigma in works[bi]:
                lists[node] |= sigma
            adj[node] = set()
    for x in xpart:
        node = ("x", x)
        nodes.append(node)
        lists[node] = masks[x]
        adj[node] = set()
    for ci, (comp, blocks, works) in enumerate(comp_data):
        for bi, bj in itertools.combinations(range(len(blocks)), 2):
            if relation(g, blocks[bi][1], blocks[bj][1]) is Relation.COMPLETE:
                adj[("b", ci, bi)].add(("b", ci, bj))
                adj[("b", ci, bj)].add(("b", ci, bi))
        for x in xpart:
            for bi, (_, b) in enumerate(blocks):
                if (g.neighbors(x) & comp) and b <= g.neighbors(x):
                    adj[("x", x)].add(("b", ci, bi))
                    adj[("b", ci, bi)].add(("x", x))
    for x, y in itertools.combinations(sorted(xpart), 2):
        if y in g.neighbors(x):
            adj[("x", x)].add(("x", y))
            adj[("x", y)].add(("x", x))
    return (nodes, adj), lists


def _two_colorings(h, lists: Dict[tuple, int], shared: int):
    """All proper colorings of the auxiliary graph within the shared pair.

    Colorable and connected means at most two; disconnected after passing
    the per-component test is a broken guarantee, not a dead instance.
    """
    nodes, adj = h
    if not nodes:
        return [dict()]
    ca, cb = colors_of(shared)
    seen: set = set()
    comps: List[List[tuple]] = []
    for start in nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            cur = queue.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    comp.append(nxt)
                    queue.append(nxt)
        comps.append(comp)
    per_comp: List[List[Dict[tuple, int]]] = []
    for comp in comps:
        options = []
        for first, second in ((ca, cb), (cb, ca)):
            coloring: Dict[tuple, int] = {comp[0]: first}
            queue = [comp[0]]
            good = True
            while queue and good:
                cur = queue.pop()
                want = second if coloring[cur] == first else first
                for nxt in adj[cur]:
                    got = coloring.get(nxt)
                    if got is None:
                        coloring[nxt] = want
                        queue.append(nxt)
                    elif got == coloring[cur]:
                        good = False
                        break
            if good and all(
                color_bit(c) & lists[node] for node, c in coloring.items()
            ):
                options.append(coloring)
        if not options:
            return None
        per_comp.append(options)
    if len(comps) > 1:
        raise PipelineError("stage_y_empty: interface graph is disconnected")
    return per_comp[0]


def _y_empty_finish(
    q: StarredPrecoloring,
    chain: tuple,
    gid: tuple,
    out: List[Member],
    cap: Optional[int],
    masks: Dict[int, int],
    cls: Dict[int, VertexSet],
    protected: VertexSet,
    deferred: List[VertexSet],
) -> bool:
    """Resolve the deferred two-list components per pair of lists and emit
    one member per surviving interface coloring."""
    g = q.graph
    fan: List[List[Dict[int, int]]] = []
    delete = EMPTY
    for la, lb in itertools.combinations(THREE_LISTS, 2):
        shared = la & lb
        group = [c for c in deferred if (c & cls[la]) and (c & cls[lb])]
        if not group:
            continue
        comp_data = []
        xpart = EMPTY
        for comp in group:
            priv = {la: _only_color(la & ~lb), lb: _only_color(lb & ~la)}
            blocks = [
                (l, b) for l in (la, lb) for b in components(g, comp & cls[l])
            ]
            works = {
                i: _works_sets(g, b, masks, priv[l], shared)
                for i, (l, b) in enumerate(blocks)
            }
            comp_data.append((comp, blocks, works))
            xpart |= VertexSet.of(x for x in q.x if _mixed_on(g, x, comp))
        h, tlists = _interface_graph(g, comp_data, xpart, _x_masks(q, xpart, masks))
        options = _two_colorings(h, tlists, shared)
        if options is None:
            return False
        projections = []
        seen = set()
        for coloring in options:
            proj = {
                node[1]: c for node, c in coloring.items() if node[0] == "x"
            }
            key = tuple(sorted(proj.items()))
            if key not in seen:
                seen.add(key)
                projections.append(proj)
        fan.append(projections)
        for comp in group:
            delete |= comp
    if len(fan) > 6:
        raise PipelineError("stage_y_empty: more list pairs than exist")

    keep = g.vertex_set() - delete
    combos = list(itertools.product(*fan)) if fan else [()]
    if len(combos) > 2 ** 6:
        raise PipelineError("stage_y_empty: interface coloring bound broken")
    emitted = 0
    for parts in combos:
        extra: Dict[int, int] = {}
        good = True
        for proj in parts:
            for v, c in proj.items():
                good = good and _put(extra, v, c)
        if not good:
            continue
        colors = q.f.to_dict()
        colors.update(extra)
        xt = VertexSet.of(extra)
        f2 = Coloring.from_dict(g.n, colors)
        if not _is_proper(g, f2, q.s | q.x0 | xt):
            continue
        staged = StarredPrecoloring(
            g, q.s, q.x0 | xt, q.x - xt, q.y - protected,
            q.ystar | protected, f2,
        )
        if delete:
            sub_pre, sub = restrict_starred(staged, keep)
            step = DeletionStep(
                g, sub.graph, sub.to_parent,
                tuple((v, masks[v]) for v in delete),
            )
            member = Member(
                ExcellentStarredPrecoloring.from_starred(sub_pre),
                chain + (step,),
                group=gid,
            )
        else:
            member = Member(
                ExcellentStarredPrecoloring.from_starred(staged), chain, group=gid
            )
        out.append(member)
        emitted += 1
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("stage_y_empty: member cap exceeded")
    return emitted > 0


def _x_masks(
    q: StarredPrecoloring, xpart: VertexSet, masks: Dict[int, int]
) -> Dict[int, int]:
    merged = dict(masks)
    for x in xpart:
        m = list_of(q, x)
        for u in q.graph.neighbors(x) & q.x0:
            m &= ~color_bit(q.f.get(u))
        merged[x] = m
    return merged


# ---------------------------------------------------------------------------
# structural predicates used by the later stages' guarantees

def y_classes_pairwise_complete(p: StarredPrecoloring) -> bool:
    """Every Y-component meeting three or more 3-lists has its list classes
    pairwise complete.  Holds once (I)-(III) do."""
    g = p.graph
    cls = {l: vertices_with_list(p, p.y, l) for l in THREE_LISTS}
    for comp in components(g, p.y):
        classes = [comp & cls[l] for l in THREE_LISTS if comp & cls[l]]
        if len(classes) < 3:
            continue
        for ca, cb in itertools.combinations(classes, 2):
            if relation(g, ca, cb) is not Relation.COMPLETE:
                return False
    return True


# ---------------------------------------------------------------------------
# full ladder

def run_y(
    p: SeededPrecoloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Run the whole second pipeline on one good seeded precoloring.

    Output: an ALL-mode collection of excellent starred precolorings whose
    groups are pairs ``(branch, part)``.  The decision rule is nested — the
    input has a proper extension iff for SOME branch index every part group
    of that branch contains an extendable member.  (Branches are the
    pre-split alternatives of the earlier stages; parts are the independent
    components the final stage works on.  A branch with no groups at all
    was found unextendable and is dropped entirely.)

    Every member carries a lift chain back to the input graph.  Raises
    PipelineError when the input is not good or an internal guarantee
    breaks; BudgetExceeded when ``cap`` is hit.
    """
    st = to_starred(p)
    work: List[Member] = [Member(st)]
    stages = (
        ("stage_122", lambda q: stage_122(q, cap=cap, debug=debug)),
        ("stage_123", lambda q: stage_123(q, cap=cap, debug=debug)),
        ("stage_x11", lambda q: stage_x11(q, cap=cap, debug=debug)),
        ("stage_x12", lambda q: stage_x12(q, cap=cap, debug=debug)),
        ("stage_orthogonal", lambda q: stage_orthogonal(q, cap=cap, debug=debug)),
    )
    for name, fn in stages:
        work = _sweep(work, fn, cap, name)
        if not work:
            return _any_of((), "run_y")
    final: List[Member] = []
    seen = set()
    for bi, mem in enumerate(work):
        sub = stage_y_empty(mem.pre, cap=cap, debug=debug)
        leaves = tuple(sub)
        if not leaves:
            continue
        for m in leaves:
            key = (bi, m.group, m.pre.key())
            if key in seen:
                continue
            seen.add(key)
            final.append(Member(m.pre, mem.chain + m.chain, group=(bi, m.group)))
        if _cap_hit(len(final), cap):
            raise BudgetExceeded("run_y: member cap exceeded")
    for m in final:
        for ax in _BASE_AXIOMS:
            rep = check_starred_axiom(m.pre, ax)
            if not rep:
                raise PipelineError(f"run_y: output violates ({ax}): {rep.witness}")
        if m.pre.y:
            raise PipelineError("run_y: output member still has 3-listed vertices")
    return EquivalentCollection(CollectionMode.ALL, tuple(final), "run_y")
