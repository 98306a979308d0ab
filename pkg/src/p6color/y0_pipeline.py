"""Reduction pipeline: from a plain precoloring to *good* seeded precolorings.

Each stage consumes a seeded precoloring satisfying some prefix of the eight
structural conditions (see ``check_seeded_axiom``) and emits an equivalent
collection of members satisfying one more.  ``run_y0`` composes the whole
ladder and ends with members passing all eight checks, with every member
carrying a lift chain that maps any proper extension of it back to a proper
extension of the original input.

The stages, by what they do:

    stage_components    one member per component of G minus the precolored set
    stage_seed          grow a maximal clique seed and enumerate its colorings
    stage_restore_conn  delete seedless precolored-boundary components
                        (recolored at lift time), restoring connectivity
    stage_lists         re-bucket free vertices by derived list size, pinning
                        forced singletons
    unmix_core          seed clique-anchored guesses until no remaining vertex
                        is mixed on an edge of a protected region R
    stage_mixedy0       condition (iv): no vertex mixed on an edge of the
                        full-list pool
    stage_123star       condition (vi): one seed color across all 3-listed
                        vertices touching the full-list pool
    stage_mixedyl       condition (vii): isolate the distinguished-list
                        vertices that mingle with the full-list pool
    stage_complete      condition (viii): every surviving mixed component is
                        dominated by a 2-listed vertex

Everything is deterministic: vertices ascend by id, colors ascend 1..4, and
stage outputs are materialized tuples.
"""

from __future__ import annotations

import itertools
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
    check_proper,
    color_bit,
    colors_of,
    exact_list_color,
)
from .precoloring_model import (
    CollectionMode,
    DeletionStep,
    EquivalentCollection,
    Member,
    RelabelStep,
    SeededPrecoloring,
    THREE_LISTS,
    check_seeded_axiom,
    dedup_members,
    list_of,
    restrict_seeded,
    unique_seed_color,
    vertices_with_list,
    y_l_star,
)


class PipelineError(RuntimeError):
    """An internal guarantee of a stage failed.

    This signals a bug in the pipeline (or a caller handing a stage an input
    that violates its preconditions), never a property of a well-formed
    problem instance.
    """


class BudgetExceeded(RuntimeError):
    """A stage produced more members than the configured cap allows."""


# ---------------------------------------------------------------------------
# small shared helpers


def _any_of(members: Iterable[Member], op: str) -> EquivalentCollection:
    return EquivalentCollection(CollectionMode.ANY, tuple(members), op)


def _is_proper(g: Graph, f: Coloring, domain: VertexSet) -> bool:
    ok, _ = check_proper(g, f, domain=domain)
    return ok


def _proper_completions(
    g: Graph,
    base: Coloring,
    todo: Sequence[int],
    allowed: Optional[Dict[int, int]] = None,
) -> Iterator[Coloring]:
    """All proper extensions of ``base`` onto ``todo``, colors ascending.

    Properness is enforced between every newly colored vertex and all of its
    already-colored neighbors (base included), i.e. on the induced subgraph
    of everything colored.  ``allowed`` optionally restricts the color mask
    per vertex.
    """
    order = sorted(todo)
    cur = base.to_dict()

    def rec(i: int) -> Iterator[Coloring]:
        if i == len(order):
            yield Coloring.from_dict(g.n, cur)
            return
        v = order[i]
        mask = FULL_MASK if allowed is None else allowed.get(v, FULL_MASK)
        for u in g.neighbors(v):
            c = cur.get(u)
            if c is not None:
                mask &= ~color_bit(c)
        for c in colors_of(mask):
            cur[v] = c
            yield from rec(i + 1)
            del cur[v]

    yield from rec(0)


def _grow_clique(g: Graph, v0: int) -> VertexSet:
    """Maximal clique containing v0, grown by repeatedly adding the least
    vertex complete to everything picked so far."""
    s = VertexSet.single(v0)
    while True:
        m = (1 << g.n) - 1
        for u in s:
            m &= g.adj[u]
        m &= ~s.mask
        if not m:
            return s
        s = s.add((m & -m).bit_length() - 1)


def _has_clique(g: Graph, pool: int, k: int) -> bool:
    """Is there a k-clique inside the vertex mask ``pool``?"""
    if k <= 0:
        return True
    while pool.bit_count() >= k:
        b = pool & -pool
        pool ^= b
        v = b.bit_length() - 1
        if _has_clique(g, pool & g.adj[v], k - 1):
            return True
    return False


def _mixed_anchor(g: Graph, z: int, pool: VertexSet, j: int) -> bool:
    """Does z see exactly one vertex of some j-clique inside ``pool``?

    Looks for a clique a1..aj in the pool with z ~ a1 and z anticomplete to
    a2..aj.  For j = 2 this is exactly "z is mixed on an edge of the pool".
    """
    for a1 in g.neighbors(z) & pool:
        rest = pool.mask & g.adj[a1] & ~g.adj[z]
        if _has_clique(g, rest, j - 1):
            return True
    return False


def _cap_hit(count: int, cap: Optional[int]) -> bool:
    return cap is not None and count > cap


# ---------------------------------------------------------------------------
# stage: split into components


def stage_components(p: SeededPrecoloring) -> EquivalentCollection:
    """One member per component of G minus the precolored set.

    Expects a bare instance (everything uncolored sits in the full-list
    pool).  The output is ALL-mode: the input is extendable iff every
    component member is.  Precolored vertices are carried into every member;
    each member lives on its own induced subgraph.
    """
    if p.s or p.x or p.y:
        raise ValueError("stage_components expects a bare precoloring (S = X = Y = empty)")
    out: List[Member] = []
    for i, comp in enumerate(components(p.graph, p.graph.vertex_set() - p.x0)):
        q, sub = restrict_seeded(p, comp | p.x0)
        step = RelabelStep(p.graph, sub.graph, sub.to_parent)
        out.append(Member(q, (step,), group=i))
    return EquivalentCollection(CollectionMode.ALL, tuple(out), "components")


# ---------------------------------------------------------------------------
# stage: grow a seed


def stage_seed(p: SeededPrecoloring) -> EquivalentCollection:
    """Grow a maximal clique seed from the least free vertex and branch over
    its proper colorings.

    Tiny instances (at most five free vertices) are settled outright: one
    fully precolored member per proper total completion.  Otherwise the seed
    is a maximal clique of the *whole* graph — it may absorb precolored
    vertices, whose colors the enumerated seed colorings must respect — and
    each member re-buckets the rest of the graph around it.  Five or more
    seed vertices mean a 5-clique, hence no members at all.
    """
    if p.s or p.x or p.y:
        raise ValueError("stage_seed expects a bare precoloring (S = X = Y = empty)")
    g = p.graph
    free = g.vertex_set() - p.x0
    if not free:
        raise ValueError("stage_seed needs at least one uncolored vertex")

    if len(free) <= 5:
        out = []
        for d in _proper_completions(g, p.f, free.to_tuple()):
            s = _grow_clique(g, free.min())
            pre = SeededPrecoloring(g, s, g.vertex_set() - s, EMPTY, EMPTY, EMPTY, d)
            out.append(Member(pre))
        return _any_of(out, "seed")

    s = _grow_clique(g, free.min())
    if len(s) >= 5:
        return _any_of([], "seed")
    nb = neighborhood(g, s)
    out = []
    for fc in _proper_completions(g, p.f, (s - p.x0).to_tuple()):
        pre = SeededPrecoloring(
            g,
            s,
            p.x0 - s,
            nb - p.x0,
            g.vertex_set() - p.x0 - s - nb,
            EMPTY,
            fc,
        )
        out.append(Member(pre))
    return _any_of(out, "seed")


# ---------------------------------------------------------------------------
# stage: restore connectivity of G minus the precolored set


def _restore_members(parent: SeededPrecoloring, child: SeededPrecoloring) -> List[Member]:
    """Delete every seedless component of (child graph) minus X0', after
    checking each can be recolored no matter what; at most one member.

    Any such component hugs a freshly precolored boundary: all its neighbors
    lie in X0', at least one of them new relative to the parent and complete
    to the component.  The component survives deletion exactly when it can be
    list-colored avoiding that vertex's color; the lift chain replays the
    same list coloring against whatever the boundary actually received.
    """
    if parent.graph != child.graph:
        raise PipelineError("restore expects parent and child on the same graph")
    g = child.graph
    doomed: List[Tuple[VertexSet, int]] = []
    for comp in components(g, g.vertex_set() - child.x0):
        if comp & child.s:
            continue
        if not comp <= child.y0:
            raise PipelineError(("seedless component outside the full-list pool", comp))
        fresh = neighborhood(g, comp) & (child.x0 - parent.x0)
        if not fresh:
            raise PipelineError(("seedless component with no fresh boundary", comp))
        x = fresh.min()
        if relation(g, VertexSet.single(x), comp) is not Relation.COMPLETE:
            raise PipelineError(("fresh boundary vertex not complete to component", x, comp))
        c = child.f.get(x)
        sub = induced_subgraph(g, comp)
        masks = []
        for i in range(sub.graph.n):
            v = sub.to_parent[i]
            m = FULL_MASK & ~color_bit(c)
            for u in g.neighbors(v) - comp:
                m &= ~color_bit(child.f.get(u))
            masks.append(m)
        if exact_list_color(sub.graph, ListAssignment(tuple(masks))) is None:
            return []
        doomed.append((comp, c))
    if not doomed:
        return [Member(child)]
    dead = EMPTY
    for comp, _ in doomed:
        dead = dead | comp
    q, sub = restrict_seeded(child, g.vertex_set() - dead)
    allowed = tuple(
        sorted((v, FULL_MASK & ~color_bit(c)) for comp, c in doomed for v in comp)
    )
    step = DeletionStep(g, sub.graph, sub.to_parent, allowed)
    return [Member(q, (step,))]


def stage_restore_conn(parent: SeededPrecoloring, child: SeededPrecoloring) -> EquivalentCollection:
    """Public wrapper around the connectivity repair; see _restore_members."""
    return _any_of(_restore_members(parent, child), "restore_conn")


# ---------------------------------------------------------------------------
# stage: re-bucket by list size


def stage_lists(parent: SeededPrecoloring, child: SeededPrecoloring) -> EquivalentCollection:
    """Re-bucket the free vertices of ``child`` by derived list size.

    Empty lists kill the instance; singleton lists get pinned and join the
    precolored set; 2-, 3- and 4-lists land in their canonical buckets.  The
    result then goes through the connectivity repair against ``parent``.
    At most one member.
    """
    g = child.graph
    z1 = z2 = z3 = z4 = EMPTY
    pins: Dict[int, int] = {}
    for v in child.free:
        lm = list_of(child, v)
        size = lm.bit_count()
        if size == 0:
            return _any_of([], "lists")
        if size == 1:
            z1 = z1.add(v)
            pins[v] = colors_of(lm)[0]
        elif size == 2:
            z2 = z2.add(v)
        elif size == 3:
            z3 = z3.add(v)
        else:
            z4 = z4.add(v)
    f2 = child.f.merge(Coloring.from_dict(g.n, pins))
    if not _is_proper(g, f2, child.precolored | z1):
        # a forced color clashes with another forced or precolored vertex
        return _any_of([], "lists")
    pre = SeededPrecoloring(g, child.s, child.x0 | z1, z2, z4, z3, f2)
    return _any_of(_restore_members(parent, pre), "lists")


# ---------------------------------------------------------------------------
# core guessing loop shared by the two "mixed" stages


def _check_unmix_hypotheses(p: SeededPrecoloring, r: VertexSet, lmask: int) -> None:
    yl = vertices_with_list(p, p.y, lmask)
    if not (p.y0 <= r and r <= p.y0 | yl):
        raise PipelineError(("protected region must sit between Y0 and Y0 + 3-listed", r))
    g = p.graph
    outside = (p.x | p.y) - r
    r_lists = {list_of(p, z) for z in r}
    for t in outside:
        if not (g.neighbors(t) & r):
            continue
        if list_of(p, t) in r_lists:
            raise PipelineError(("outside vertex shares a list with the region", t))
    for t in outside:
        for z1 in g.neighbors(t) & r:
            for z2 in (g.neighbors(z1) & r) - g.neighbors(t):
                tail = (g.neighbors(z2) & r) - g.neighbors(t) - g.neighbors(z1)
                if tail.discard(z1):
                    raise PipelineError(("induced 3-step path from outside into the region", t, z1, z2))


def _type_runs(
    g: Graph,
    members_of_type: Tuple[int, ...],
    y0cur: VertexSet,
    r: VertexSet,
    j: int,
    restrict_max: bool,
    collect_pins: bool,
) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Every outcome of one type's greedy guessing loop at level ``j``.

    A vertex is eligible when it is complete to the seeds picked so far and
    sees exactly one vertex of some j-clique inside the current full-list
    pool.  ``restrict_max`` narrows each pick to those whose trace on the
    protected region is inclusion-maximal.  Returns (seed set, pinned set)
    pairs, canonically sorted and deduplicated; pins are the leftover
    eligible-shaped vertices whose region trace strictly dominates a chosen
    seed's.
    """
    out: Dict[frozenset, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}

    def eligible(seed_mask: int) -> List[int]:
        cand = [
            z
            for z in members_of_type
            if not seed_mask >> z & 1
            and (g.adj[z] & seed_mask) == seed_mask
            and _mixed_anchor(g, z, y0cur, j)
        ]
        if restrict_max and cand:
            traces = {z: g.adj[z] & r.mask for z in cand}
            cand = [
                z
                for z in cand
                if not any(
                    traces[z] != traces[w] and (traces[z] & traces[w]) == traces[z]
                    for w in traces
                )
            ]
        return cand

    def finish(seed: Tuple[int, ...]) -> None:
        key = frozenset(seed)
        if key in out:
            return
        pins: List[int] = []
        if collect_pins:
            smask = 0
            for v in seed:
                smask |= 1 << v
            for z in seed:
                need = smask & ~(1 << z)
                ztrace = g.adj[z] & r.mask
                for w in members_of_type:
                    if smask >> w & 1:
                        continue
                    wtrace = g.adj[w] & r.mask
                    if (
                        (g.adj[w] & need) == need
                        and wtrace != ztrace
                        and (wtrace & ztrace) == ztrace
                        and _mixed_anchor(g, w, y0cur, j)
                    ):
                        pins.append(w)
        out[key] = (tuple(sorted(seed)), tuple(sorted(set(pins))))

    def rec(seed: Tuple[int, ...], seed_mask: int) -> None:
        cand = eligible(seed_mask)
        if not cand:
            finish(seed)
            return
        for z in cand:
            rec(seed + (z,), seed_mask | 1 << z)

    rec((), 0)
    return sorted(out.values())


def unmix_core(
    p: SeededPrecoloring,
    r: VertexSet,
    lmask: int,
    *,
    cap: Optional[int] = None,
) -> EquivalentCollection:
    """Seed clique-anchored guesses until nothing outside ``r`` is mixed on
    an edge of ``r``.

    ``r`` must sit between the full-list pool and its union with the
    ``lmask``-listed vertices; two structural hypotheses about ``r`` (no
    shared lists across the border with a neighbor inside, no induced
    3-step escape path) are re-checked and raise PipelineError when violated.
    Members pin some dominated vertices to the color missing from ``lmask``
    and re-bucket around the grown seed; the empty guess reproduces the
    input, so the construction collapses to the identity when nothing is
    mixed on the region to begin with.
    """
    _check_unmix_hypotheses(p, r, lmask)
    g = p.graph
    if find_k5(g) is not None:
        return _any_of([], "unmix")
    c4 = colors_of(FULL_MASK & ~lmask)[0]
    region_is_pool = r == p.y0

    guesses: List[Tuple[VertexSet, VertexSet]] = []

    def level(j: int, zpool: VertexSet, y0cur: VertexSet, acc_s: VertexSet, acc_pins: VertexSet) -> None:
        groups: Dict[int, List[int]] = {}
        for z in zpool:
            groups.setdefault(g.adj[z] & p.s.mask, []).append(z)
        per_type = []
        for tmask in sorted(groups):
            image = 0
            for u in VertexSet(tmask):
                image |= color_bit(p.f.get(u))
            branch1 = region_is_pool or bool(image & color_bit(c4))
            per_type.append(
                _type_runs(
                    g,
                    tuple(groups[tmask]),
                    y0cur,
                    r,
                    j,
                    restrict_max=branch1,
                    collect_pins=not branch1,
                )
            )
        for combo in itertools.product(*per_type):
            s_j = EMPTY
            pins_j = EMPTY
            for seed, pins in combo:
                s_j = s_j | VertexSet.of(seed)
                pins_j = pins_j | VertexSet.of(pins)
            y0next = y0cur - neighborhood(g, s_j) if s_j else y0cur
            znext = (zpool - pins_j - s_j) | (y0cur - y0next)
            if j == 2:
                guesses.append((acc_s | s_j, acc_pins | pins_j))
                if _cap_hit(len(guesses), cap):
                    raise BudgetExceeded("unmix guess count exceeded the member cap")
            else:
                level(j - 1, znext, y0next, acc_s | s_j, acc_pins | pins_j)

    level(4, (p.x | p.y) - r, r, EMPTY, EMPTY)

    bound = len(p.s) + 12 * 2 ** len(p.s)
    out: List[Member] = []
    for s_new, pins in guesses:
        if len(p.s | s_new) > bound:
            raise PipelineError(("guessed seed outgrew its clique bound", s_new))
        pin_color = Coloring.from_dict(g.n, {v: c4 for v in pins})
        try:
            base = p.f.merge(pin_color)
        except ValueError:
            continue
        if not _is_proper(g, base, p.precolored | pins):
            continue
        nb = neighborhood(g, s_new) if s_new else EMPTY
        y0slot = p.y0 - nb - s_new
        xslot = p.x - pins - s_new
        for f2 in _proper_completions(g, base, s_new.to_tuple()):
            pre = SeededPrecoloring(
                g,
                p.s | s_new,
                p.x0 | pins,
                xslot,
                y0slot,
                (p.y - pins - s_new) | (p.y0 & nb),
                f2,
            )
            out.append(Member(pre))
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("unmix member count exceeded the cap")
    return _any_of(dedup_members(out), "unmix")


# ---------------------------------------------------------------------------
# stage: no vertex mixed on an edge of the full-list pool


def _path_start(g: Graph, v: int, pool: VertexSet) -> bool:
    """Is there an induced path v-a-b-c with a, b, c inside ``pool``?"""
    for a in g.neighbors(v) & pool:
        for b in (g.neighbors(a) & pool) - g.neighbors(v):
            tail = (g.neighbors(b) & pool) - g.neighbors(v) - g.neighbors(a)
            if tail.discard(a):
                return True
    return False


def stage_mixedy0(p: SeededPrecoloring, *, cap: Optional[int] = None) -> EquivalentCollection:
    """Establish condition (iv): guess the path-starters into the seed, then
    run the unmixing loop on the full-list pool.

    Vertices complete to the growing extra seed that start an induced
    three-step path into the pool get seeded one by one (least id first);
    five of them would form a 5-clique, killing the instance.  Each proper
    coloring of the extra seed spawns an unmixing run, and every member it
    returns goes through the connectivity repair against the stage input.
    """
    if check_seeded_axiom(p, "iv"):
        return _any_of([Member(p)], "mixedy0")
    g = p.graph
    z = p.x | p.y
    s5 = EMPTY
    while True:
        pick = None
        for v in z - s5:
            if s5.mask & ~g.adj[v]:
                continue
            if _path_start(g, v, p.y0):
                pick = v
                break
        if pick is None:
            break
        s5 = s5.add(pick)
        if len(s5) >= 5:
            return _any_of([], "mixedy0")
    y05 = p.y0 - neighborhood(g, s5)
    xslot = (z | (p.y0 - y05)) - s5
    out: List[Member] = []
    for f5 in _proper_completions(g, p.f, s5.to_tuple()):
        q = SeededPrecoloring(g, p.s | s5, p.x0, xslot, y05, EMPTY, f5)
        for m in unmix_core(q, y05, THREE_LISTS[0], cap=cap):
            for m2 in _restore_members(p, m.pre):
                out.append(Member(m2.pre, m.chain + m2.chain))
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("mixedy0 member count exceeded the cap")
    return _any_of(dedup_members(out), "mixedy0")


# ---------------------------------------------------------------------------
# stage: one seed color across 3-listed vertices touching the pool


def stage_123star(p: SeededPrecoloring, *, cap: Optional[int] = None) -> EquivalentCollection:
    """Establish condition (vi) by branching over colored witness triples,
    then splitting every survivor on how its 3-listed boundary gets colored.

    Phase A guesses, for every ordered pair of realized one-color seed types,
    either nothing, a boundary witness on the second type, or a non-adjacent
    witness pair with a common full-list neighbor; each guess pins the
    boundary vertices whose colors the guess forces.  Phase B takes each
    intermediate member and branches between "every 3-listed boundary vertex
    drops to a 2-list" (one pinned color per list class) and "two boundary
    vertices of the same list get seeded with distinct colors", pinning the
    cross-list consequences.  All members are re-bucketed against the stage
    input or the intermediate member, as appropriate.
    """
    if unique_seed_color(p):
        return _any_of([Member(p)], "123star")
    g = p.graph
    ny0 = p.y & neighborhood(g, p.y0)

    # realized seed types on the boundary; every such type shows one color
    types: List[Tuple[int, int]] = []
    seen = set()
    for v in ny0:
        tmask = g.adj[v] & p.s.mask
        if tmask in seen:
            continue
        seen.add(tmask)
        image = 0
        for u in VertexSet(tmask):
            image |= color_bit(p.f.get(u))
        if image.bit_count() != 1:
            raise PipelineError(("boundary vertex sees two seed colors", v))
        types.append((tmask, colors_of(image)[0]))
    types.sort()

    pairs = [
        (t1, c1, t2, c2)
        for (t1, c1) in types
        for (t2, c2) in types
        if t1 != t2 and c1 != c2
    ]

    def side(tmask: int) -> List[int]:
        return [v for v in ny0 if (g.adj[v] & p.s.mask) == tmask]

    # triple options per ordered pair: (pattern, payload)
    pair_options: List[List[tuple]] = []
    for (t1, c1, t2, c2) in pairs:
        opts: List[tuple] = [("none", None)]
        first = side(t1)
        second = side(t2)
        for nn in second:
            opts.append(("witness", nn))
        for pp in first:
            for nn in second:
                if nn in g.neighbors(pp):
                    continue
                for mm in p.y0 & g.neighbors(pp) & g.neighbors(nn):
                    opts.append(("triple", (pp, mm, nn)))
        pair_options.append(opts)

    phase_a: List[Member] = []
    for combo in itertools.product(*pair_options):
        seeds: Dict[int, int] = {}  # vertex -> allowed color mask
        zpins: Dict[int, int] = {}  # vertex -> forced color
        ok = True
        for (t1, c1, t2, c2), (pattern, payload) in zip(pairs, combo):
            open_mask = FULL_MASK & ~(color_bit(c1) | color_bit(c2))
            if pattern == "none":
                for v in side(t2):
                    if zpins.get(v, c1) != c1:
                        ok = False
                        break
                    zpins[v] = c1
            elif pattern == "witness":
                nn = payload
                seeds[nn] = seeds.get(nn, FULL_MASK) & open_mask
                for v in side(t1):
                    if nn in g.neighbors(v):
                        continue
                    if zpins.get(v, c2) != c2:
                        ok = False
                        break
                    zpins[v] = c2
            else:
                pp, mm, nn = payload
                seeds[pp] = seeds.get(pp, FULL_MASK) & open_mask
                seeds[nn] = seeds.get(nn, FULL_MASK) & open_mask
                seeds.setdefault(mm, FULL_MASK)
            if not ok:
                break
        if not ok:
            continue
        # a vertex both guessed and pinned keeps the seed slot but must take
        # the pinned color; an impossible combination cannot arise from any
        # actual extension, so it is skipped
        for v, c in list(zpins.items()):
            if v in seeds:
                if not seeds[v] & color_bit(c):
                    ok = False
                    break
                seeds[v] &= color_bit(c)
                del zpins[v]
        if not ok:
            continue
        svs = VertexSet.of(seeds)
        zvs = VertexSet.of(zpins)
        base = p.f.merge(Coloring.from_dict(g.n, zpins))
        if not _is_proper(g, base, p.precolored | zvs):
            continue
        nb = neighborhood(g, svs) if svs else EMPTY
        for f2 in _proper_completions(g, base, sorted(seeds), allowed=seeds):
            pre = SeededPrecoloring(
                g,
                p.s | svs,
                p.x0 | zvs,
                p.x,
                p.y0 - svs - nb,
                (p.y - svs - zvs) | (p.y0 & nb),
                f2,
            )
            for m in stage_lists(p, pre):
                phase_a.append(m)
        if _cap_hit(len(phase_a), cap):
            raise BudgetExceeded("123star intermediate member count exceeded the cap")

    out: List[Member] = []
    for mem in dedup_members(phase_a):
        p1 = mem.pre
        g1 = p1.graph  # list repair may have shrunk the graph
        boundary = p1.y & neighborhood(g1, p1.y0)

        # first family: one chosen color per realized list class pins the
        # whole boundary into the precolored set
        classes = sorted({list_of(p1, v) for v in boundary})
        for choice in itertools.product(*[colors_of(lm) for lm in classes]):
            by_class = dict(zip(classes, choice))
            gmap = {v: by_class[list_of(p1, v)] for v in boundary}
            base = p1.f.merge(Coloring.from_dict(g1.n, gmap))
            if not _is_proper(g1, base, p1.precolored | boundary):
                continue
            pre = SeededPrecoloring(
                g1, p1.s, p1.x0 | boundary, p1.x, p1.y0, p1.y - boundary, base
            )
            for m2 in stage_lists(p1, pre):
                out.append(Member(m2.pre, mem.chain + m2.chain))

        # second family: two same-list boundary vertices get distinct seeded
        # colors; other list classes inherit forced colors from non-neighbors
        for lm in THREE_LISTS:
            pool = [v for v in boundary if list_of(p1, v) == lm]
            for y1, y2 in itertools.permutations(pool, 2):
                for c1, c2 in itertools.permutations(colors_of(lm), 2):
                    gmap = {y1: c1, y2: c2}
                    zp: Dict[int, int] = {}
                    for lm2 in THREE_LISTS:
                        if lm2 == lm:
                            continue
                        cpin = colors_of(lm2 & ~lm)[0]
                        for v in vertices_with_list(p1, p1.y, lm2):
                            for n, cn in ((y1, c1), (y2, c2)):
                                if v != n and n not in g1.neighbors(v) and lm2 & color_bit(cn):
                                    zp[v] = cpin
                                    break
                    base = p1.f.merge(Coloring.from_dict(g1.n, {**gmap, **zp}))
                    pair = VertexSet.of((y1, y2))
                    zvs = VertexSet.of(zp)
                    if not _is_proper(g1, base, p1.precolored | pair | zvs):
                        continue
                    nb = neighborhood(g1, pair)
                    pre = SeededPrecoloring(
                        g1,
                        p1.s | pair,
                        p1.x0 | zvs,
                        p1.x,
                        p1.y0 - nb,
                        (p1.y - zvs - pair) | (p1.y0 & nb),
                        base,
                    )
                    for m2 in stage_lists(p1, pre):
                        out.append(Member(m2.pre, mem.chain + m2.chain))
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("123star member count exceeded the cap")
    return _any_of(dedup_members(out), "123star")


# ---------------------------------------------------------------------------
# stage: isolate distinguished-list vertices mingling with the pool


def stage_mixedyl(p: SeededPrecoloring, *, cap: Optional[int] = None) -> EquivalentCollection:
    """Establish condition (vii): guess, per seed type, up to two adjacent
    neighbors of the pool-touching region, pin the rest to the missing
    color, and unmix what remains.

    The 3-list and its missing color come from condition (vi) of the input.
    Every guessed vertex takes a color from its own list inside that 3-list;
    unguessed region neighbors that the guess dominates get the missing
    color and join the precolored set.  Survivors are re-bucketed, unmixed
    on (pool + distinguished-list core), and re-bucketed again.
    """
    if check_seeded_axiom(p, "vii"):
        return _any_of([Member(p)], "mixedyl")
    g = p.graph
    if find_k5(g) is not None:
        return _any_of([], "mixedyl")
    rep = unique_seed_color(p)
    if not rep:
        raise PipelineError("stage_mixedyl needs a single boundary seed color")
    c4, lmask = rep.extra
    star = y_l_star(p, lmask)
    core = p.y0 | star
    ystar = (p.x | (p.y - star)) & neighborhood(g, core)

    groups: Dict[int, List[int]] = {}
    for v in ystar:
        groups.setdefault(g.adj[v] & p.s.mask, []).append(v)
    per_type: List[List[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = []
    for tmask in sorted(groups):
        vs = groups[tmask]
        opts: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = [((), ())]
        for s_v in vs:
            opts.append(((s_v,), ()))
            for r_v in vs:
                if r_v != s_v and r_v in g.neighbors(s_v):
                    opts.append(((s_v,), (r_v,)))
        per_type.append(opts)

    mids: List[Member] = []
    for combo in itertools.product(*per_type):
        vq: List[int] = []
        pinned = EMPTY
        for (tmask, _vs), (s_t, r_t) in zip(sorted(groups.items()), combo):
            vq.extend(s_t)
            vq.extend(r_t)
            for v in groups[tmask]:
                if v in s_t or v in r_t:
                    continue
                if not s_t:
                    pinned = pinned.add(v)
                elif not r_t and s_t[0] in g.neighbors(v):
                    pinned = pinned.add(v)
        if len(vq) > 2 ** (len(p.s) + 1):
            raise PipelineError(("guessed vertex set outgrew its type bound", vq))
        allowed = {v: list_of(p, v) & lmask for v in vq}
        base_pins = Coloring.from_dict(g.n, {v: c4 for v in pinned})
        try:
            base = p.f.merge(base_pins)
        except ValueError:
            continue
        if not _is_proper(g, base, p.precolored | pinned):
            continue
        vqs = VertexSet.of(vq)
        for f2 in _proper_completions(g, base, sorted(vq), allowed=allowed):
            pre = SeededPrecoloring(
                g,
                p.s | vqs,
                p.x0 | pinned,
                p.x - pinned - vqs,
                p.y0,
                p.y - pinned - vqs,
                f2,
            )
            for m in stage_lists(p, pre):
                mids.append(m)
        if _cap_hit(len(mids), cap):
            raise BudgetExceeded("mixedyl intermediate member count exceeded the cap")

    out: List[Member] = []
    for mem in dedup_members(mids):
        p1 = mem.pre
        region = p1.y0 | y_l_star(p1, lmask)
        for m2 in unmix_core(p1, region, lmask, cap=cap):
            for m3 in stage_lists(p1, m2.pre):
                out.append(Member(m3.pre, mem.chain + m2.chain + m3.chain))
        if _cap_hit(len(out), cap):
            raise BudgetExceeded("mixedyl member count exceeded the cap")
    return _any_of(dedup_members(out), "mixedyl")


# ---------------------------------------------------------------------------
# stage: dominate or delete the surviving mixed components


def stage_complete(p: SeededPrecoloring, *, debug: bool = False) -> EquivalentCollection:
    """Establish condition (viii): every component of (pool + distinguished
    core) lacking a complete 2-listed neighbor is solved outright and
    deleted, or shown unsolvable.

    For each such component the pool side decomposes into palette gadgets:
    a sub-component's maximal infeasible palettes become replacement
    vertices, complete to the sub-component's boundary, carrying the
    complementary lists.  The reduced gadget graph is list-colored exactly;
    failure kills the instance, success lets the whole component be deleted
    and recolored at lift time.  At most one member.
    """
    if check_seeded_axiom(p, "viii"):
        return _any_of([Member(p)], "complete")
    g = p.graph
    rep = unique_seed_color(p)
    if not rep:
        raise PipelineError("stage_complete needs a single boundary seed color")
    c4, lmask = rep.extra
    star = y_l_star(p, lmask)

    def derived_list(v: int) -> int:
        m = FULL_MASK
        for u in g.neighbors(v) & p.precolored:
            m &= ~color_bit(p.f.get(u))
        return m

    doomed: List[VertexSet] = []
    for comp in components(g, p.y0 | star):
        if any(relation(g, VertexSet.single(x), comp) is Relation.COMPLETE for x in p.x):
            continue
        for x in p.x:
            if g.adj[x] & comp.mask:
                raise PipelineError(("2-listed vertex mixed on an undominated component", x, comp))
        pool_side = comp & p.y0
        rest = comp - pool_side
        if not rest:
            raise PipelineError(("undominated component with no 3-listed part", comp))
        for v in rest:
            if derived_list(v) & ~lmask:
                raise PipelineError(("3-listed part leaks outside its list", v))

        copies: List[Tuple[VertexSet, int]] = []  # (boundary in rest, color mask)
        for d_comp in components(g, pool_side):
            boundary = neighborhood(g, d_comp) & rest
            if not any(
                relation(g, VertexSet.single(b), d_comp) is Relation.COMPLETE for b in boundary
            ):
                raise PipelineError(("pool sub-component without a complete neighbor", d_comp))
            sub = induced_subgraph(g, d_comp)
            feasible = []
            for pal in range(1, FULL_MASK + 1):
                if pal.bit_count() > 3:
                    continue
                masks = tuple(derived_list(sub.to_parent[i]) & pal for i in range(sub.graph.n))
                if exact_list_color(sub.graph, ListAssignment(masks)) is not None:
                    feasible.append(pal)
            if not feasible or all((pal & lmask) == lmask for pal in feasible):
                return _any_of([], "complete")
            maximal_bad = []
            for pal in range(1, FULL_MASK + 1):
                if pal.bit_count() > 3 or pal in feasible:
                    continue
                if all(
                    sup in feasible
                    for sup in range(1, FULL_MASK + 1)
                    if sup.bit_count() <= 3 and sup != pal and (sup & pal) == pal
                ):
                    maximal_bad.append(pal)
            for pal in maximal_bad:
                if pal & color_bit(c4):
                    copies.append((boundary, FULL_MASK & ~pal))

        rest_sub = induced_subgraph(g, rest)
        k = rest_sub.graph.n
        total = k + len(copies)
        adj = [0] * total
        for i in range(k):
            adj[i] = rest_sub.graph.adj[i]
        for ci, (boundary, _m) in enumerate(copies):
            cid = k + ci
            for b in boundary:
                bi = rest_sub.to_sub[b]
                adj[bi] |= 1 << cid
                adj[cid] |= 1 << bi
        gadget = Graph(total, tuple(adj))
        if debug and find_induced_p6(gadget) is not None:
            raise PipelineError(("gadget graph grew an induced 6-path", comp))
        masks = tuple(
            derived_list(rest_sub.to_parent[i]) if i < k else copies[i - k][1]
            for i in range(total)
        )
        if exact_list_color(gadget, ListAssignment(masks)) is None:
            return _any_of([], "complete")
        doomed.append(comp)

    dead = EMPTY
    for comp in doomed:
        dead = dead | comp
    q, sub = restrict_seeded(p, g.vertex_set() - dead)
    step = DeletionStep(
        g, sub.graph, sub.to_parent, tuple((v, FULL_MASK) for v in dead)
    )
    return _any_of([Member(q, (step,))], "complete")


# ---------------------------------------------------------------------------
# the full ladder


_GOOD_AXIOMS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


def _compose(mem: Member, coll: Iterable[Member]) -> Iterator[Member]:
    for m in coll:
        yield Member(m.pre, mem.chain + m.chain, group=mem.group)


def run_y0(
    g: Graph,
    x0: VertexSet,
    f: Coloring,
    *,
    cap: Optional[int] = None,
    debug: bool = False,
) -> EquivalentCollection:
    """Reduce (G, X0, f) to an ALL-mode collection of good seeded members.

    The input graph must have no induced 6-path and f must properly color
    exactly X0 (ValueError otherwise).  Members are grouped by component of
    G minus X0: the input is extendable iff every group owns an extendable
    member.  Each member passes all eight structural checks and carries a
    lift chain back to its component's graph.

    A component whose member list empties out proves the whole input is not
    extendable; that is reported as an *empty ANY-mode* collection so the
    dead component cannot silently vanish from the ALL-mode group logic.
    """
    if find_induced_p6(g) is not None:
        raise ValueError("input graph contains an induced 6-path")
    if f.domain() != x0:
        raise ValueError("precoloring domain must equal the precolored set")
    ok, why = check_proper(g, f, domain=x0)
    if not ok:
        raise ValueError(f"precoloring is not proper: {why}")

    root = SeededPrecoloring(g, EMPTY, x0, EMPTY, g.vertex_set() - x0, EMPTY, f)
    final: List[Member] = []
    for comp_mem in stage_components(root):
        work = [comp_mem]
        for stage in (
            stage_seed,
            stage_mixedy0,
            lambda q: stage_lists(q, q),
            stage_123star,
            stage_mixedyl,
            lambda q: stage_complete(q, debug=debug),
        ):
            nxt: List[Member] = []
            for mem in work:
                nxt.extend(_compose(mem, stage(mem.pre)))
            work = list(dedup_members(nxt))
            if _cap_hit(len(work), cap):
                raise BudgetExceeded("pipeline member count exceeded the cap")
            if not work:
                return _any_of([], "run_y0")
        for mem in work:
            for ax in _GOOD_AXIOMS:
                rep = check_seeded_axiom(mem.pre, ax)
                if not rep:
                    raise PipelineError(("member failed a structural check", ax, rep.witness))
        final.extend(work)
    return EquivalentCollection(CollectionMode.ALL, tuple(final), "run_y0")
