"""Precoloring state objects shared by every pipeline stage.

Two closely related states travel through the solver:

* a *seeded* precoloring ``(G, S, X0, X, Y0, Y, f)`` — the working object of
  the first pipeline, where ``Y0`` holds vertices with no colored constraint
  yet (full lists) and ``Y`` holds vertices with exactly one seed color
  excluded;
* a *starred* precoloring ``(G, S, X0, X, Y, Ystar, f)`` — the second
  pipeline's object, where ``Ystar`` collects parts of the graph that are
  already "settled" (anticomplete to ``Y``, unmixed, dominated) and ``Y``
  shrinks stage by stage until it is empty ("excellent").

In both, ``f`` properly colors ``G|(S ∪ X0)`` and the five/six sets
partition ``V(G)``.  The derived list of a vertex is ``{f(v)}`` on
``S ∪ X0`` and ``{1..4} minus f(N(v) ∩ S)`` elsewhere.

The structural conditions each pipeline establishes are exposed as named,
individually checkable axioms: ``"i"``–``"viii"`` for seeded states and
``"A"``–``"H"`` / ``"I"``–``"VIII"`` for starred states.  Checkers always
return a witness on failure; fuzz harnesses lean on this heavily.

Stages communicate through :class:`EquivalentCollection` — a stream of
:class:`Member` values, each a precoloring plus a chain of lift records
sufficient to map any proper extension of the member back to one of the
original instance.  "Path" in all axiom statements means induced path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

from .graph_core import (
    EMPTY,
    Graph,
    Relation,
    Subgraph,
    VertexSet,
    components,
    format_edge_list,
    induced_subgraph,
    is_connected,
    neighborhood,
    parse_edge_list,
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

# The four size-3 color lists, ordered by their missing color.
THREE_LISTS: tuple[int, ...] = tuple(FULL_MASK & ~color_bit(c) for c in (1, 2, 3, 4))


def _validate_common(graph: Graph, parts: tuple[VertexSet, ...], f: Coloring) -> None:
    union = 0
    for p in parts:
        if union & p.mask:
            raise ValueError("precoloring classes overlap")
        union |= p.mask
    if union != graph.vertex_set().mask:
        raise ValueError("precoloring classes do not cover V(G)")
    precolored = parts[0] | parts[1]  # S ∪ X0 by convention
    if f.domain() != precolored:
        raise ValueError("f must be defined on exactly S ∪ X0")
    ok, why = check_proper(graph, f, domain=precolored)
    if not ok:
        raise ValueError(f"f is not proper on S ∪ X0: {why}")


@dataclass(frozen=True)
class SeededPrecoloring:
    """State of the first pipeline: ``(G, S, X0, X, Y0, Y, f)``."""

    graph: Graph
    s: VertexSet
    x0: VertexSet
    x: VertexSet
    y0: VertexSet
    y: VertexSet
    f: Coloring

    def __post_init__(self) -> None:
        _validate_common(self.graph, (self.s, self.x0, self.x, self.y0, self.y), self.f)

    @property
    def precolored(self) -> VertexSet:
        return self.s | self.x0

    @property
    def free(self) -> VertexSet:
        """Vertices an extension must color."""
        return self.graph.vertex_set() - self.precolored

    def key(self):
        return (
            "seeded",
            self.graph.key(),
            self.s.mask,
            self.x0.mask,
            self.x.mask,
            self.y0.mask,
            self.y.mask,
            tuple(sorted(self.f.items())),
        )


@dataclass(frozen=True)
class StarredPrecoloring:
    """State of the second pipeline: ``(G, S, X0, X, Y, Ystar, f)``."""

    graph: Graph
    s: VertexSet
    x0: VertexSet
    x: VertexSet
    y: VertexSet
    ystar: VertexSet
    f: Coloring

    def __post_init__(self) -> None:
        _validate_common(self.graph, (self.s, self.x0, self.x, self.y, self.ystar), self.f)

    @property
    def precolored(self) -> VertexSet:
        return self.s | self.x0

    @property
    def free(self) -> VertexSet:
        return self.graph.vertex_set() - self.precolored

    def key(self):
        return (
            "starred",
            self.graph.key(),
            self.s.mask,
            self.x0.mask,
            self.x.mask,
            self.y.mask,
            self.ystar.mask,
            tuple(sorted(self.f.items())),
        )


class ExcellentStarredPrecoloring(StarredPrecoloring):
    """A starred precoloring with ``Y = ∅`` — directly solvable."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.y:
            raise ValueError("excellent starred precoloring requires Y to be empty")

    @classmethod
    def from_starred(cls, p: StarredPrecoloring) -> "ExcellentStarredPrecoloring":
        return cls(p.graph, p.s, p.x0, p.x, p.y, p.ystar, p.f)


Precoloring = Union[SeededPrecoloring, StarredPrecoloring]


# ---------------------------------------------------------------------------
# lists and types


def list_of(p: Precoloring, v: int) -> int:
    """Color list of ``v`` as a 4-bit mask.

    ``{f(v)}`` for precolored vertices, otherwise everything not used by
    ``f`` on ``N(v) ∩ S``.
    """
    if v in p.precolored:
        return color_bit(p.f.get(v))
    used = 0
    for u in p.graph.neighbors(v) & p.s:
        used |= color_bit(p.f.get(u))
    return FULL_MASK & ~used


def lists_for(p: Precoloring) -> ListAssignment:
    """Derived lists for all vertices, as a :class:`ListAssignment`."""
    return ListAssignment(tuple(list_of(p, v) for v in range(p.graph.n)))


def type_of(p: Precoloring, v: int) -> VertexSet:
    """``N(v) ∩ S`` — the seed neighborhood characterizing ``v``."""
    if v in p.precolored:
        raise ValueError(f"vertex {v} is precolored and has no type")
    return p.graph.neighbors(v) & p.s


def of_type(p: Precoloring, pool: VertexSet, t: VertexSet) -> VertexSet:
    """Vertices of ``pool`` whose type is exactly ``t``."""
    out = EMPTY
    for v in pool:
        if p.graph.neighbors(v) & p.s == t:
            out = out.add(v)
    return out


def vertices_with_list(p: Precoloring, pool: VertexSet, lmask: int) -> VertexSet:
    out = EMPTY
    for v in pool:
        if list_of(p, v) == lmask:
            out = out.add(v)
    return out


def y_l_star(p: SeededPrecoloring, lmask: int) -> VertexSet:
    """Vertices of ``Y`` with list ``lmask`` lying in a component of
    ``G|(Y0 ∪ Y_L)`` that contains a ``Y0`` vertex."""
    yl = vertices_with_list(p, p.y, lmask)
    out = EMPTY
    for comp in components(p.graph, p.y0 | yl):
        if comp & p.y0:
            out = out | (comp & yl)
    return out


# ---------------------------------------------------------------------------
# axiom checkers


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one structural check.

    ``witness`` pins down the offending vertex / edge / component on
    failure; ``extra`` carries axiom-specific data on success (the unique
    seed color for seeded "vi", the list pairs for starred "VI").
    """

    ok: bool
    witness: object = None
    extra: object = None

    def __bool__(self) -> bool:
        return self.ok


SEEDED_AXIOM_IDS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")
STARRED_AXIOM_IDS = (
    "A", "B", "C", "D", "E", "F", "G", "H",
    "I", "II", "III", "IV", "V", "VI", "VII", "VIII",
)

_LIST_SIZE_CLASS = {1: "x0", 2: "x", 3: "y", 4: "y0"}


def _connected_seed(p: Precoloring) -> AxiomReport:
    g = p.graph
    if not is_connected(g, p.s):
        comps = components(g, p.s)
        return AxiomReport(False, ("seed-disconnected", comps[1]))
    rest = g.vertex_set() - p.s
    if not p.s:
        if rest:
            return AxiomReport(False, ("complete-to-seed", rest.min()))
        return AxiomReport(True)
    for v in rest:
        if p.s <= g.neighbors(v):
            return AxiomReport(False, ("complete-to-seed", v))
    return AxiomReport(True)


def unique_seed_color(p: SeededPrecoloring) -> AxiomReport:
    """Seeded axiom (vi): one color ``c`` such that every ``Y`` vertex with a
    ``Y0`` neighbor sees exactly ``{c}`` on its seed neighbors.

    On success ``extra = (c, L)`` with ``L`` the complementary 3-list; the
    vacuous case settles on ``c = 1``.
    """
    g = p.graph
    c_found = 0
    for yv in p.y:
        if not (g.neighbors(yv) & p.y0):
            continue
        seen = 0
        for u in g.neighbors(yv) & p.s:
            seen |= color_bit(p.f.get(u))
        if bin(seen).count("1") != 1:
            return AxiomReport(False, ("seed-colors-not-unique", yv))
        c = colors_of(seen)[0]
        if c_found and c != c_found:
            return AxiomReport(False, ("two-distinct-seed-colors", yv))
        c_found = c
    c = c_found or 1
    return AxiomReport(True, None, (c, FULL_MASK & ~color_bit(c)))


def check_seeded_axiom(p: SeededPrecoloring, axiom: str) -> AxiomReport:
    """Check one of the eight structural conditions "i"–"viii"."""
    g = p.graph
    if axiom == "i":
        rest = g.vertex_set() - p.x0
        if is_connected(g, rest):
            return AxiomReport(True)
        return AxiomReport(False, components(g, rest)[1])
    if axiom == "ii":
        return _connected_seed(p)
    if axiom == "iii":
        expected = g.vertex_set() - (neighborhood(g, p.s) | p.x0 | p.s)
        if p.y0 == expected:
            return AxiomReport(True)
        bad = (p.y0.mask ^ expected.mask)
        return AxiomReport(False, VertexSet(bad).min())
    if axiom == "iv":
        outside = g.vertex_set() - (p.y0 | p.x0)
        for u in p.y0:
            for v in g.neighbors(u) & p.y0:
                if v <= u:
                    continue
                for w in outside:
                    if (w in g.neighbors(u)) != (w in g.neighbors(v)):
                        return AxiomReport(False, (w, u, v))
        return AxiomReport(True)
    if axiom == "v":
        for v in g.vertex_set() - p.s:
            size = bin(list_of(p, v)).count("1")
            want = _LIST_SIZE_CLASS.get(size)
            if want is None:
                continue
            if v not in getattr(p, want):
                return AxiomReport(False, (v, size))
        return AxiomReport(True)
    if axiom == "vi":
        return unique_seed_color(p)
    if axiom in ("vii", "viii"):
        base = unique_seed_color(p)
        if not base:
            return base
        _, lmask = base.extra
        yls = y_l_star(p, lmask)
        core = p.y0 | yls
        if axiom == "vii":
            for v in p.y - yls:
                if g.neighbors(v) & core:
                    return AxiomReport(False, ("outside-neighbor", v), base.extra)
            for u in core:
                for v in g.neighbors(u) & core:
                    if v <= u:
                        continue
                    for x in p.x:
                        if (x in g.neighbors(u)) != (x in g.neighbors(v)):
                            return AxiomReport(False, ("mixed-on-edge", x, u, v), base.extra)
            return AxiomReport(True, None, base.extra)
        for comp in components(g, core):
            if not any(comp <= g.neighbors(x) for x in p.x):
                return AxiomReport(False, ("undominated-component", comp), base.extra)
        return AxiomReport(True, None, base.extra)
    raise ValueError(f"unknown seeded axiom {axiom!r}")


def _scan_list_paths(p: StarredPrecoloring, a_pool: VertexSet, want) -> AxiomReport:
    """Find an induced path a-b-c with b, c ∈ Y and ``want(La, Lb, Lc)``."""
    g = p.graph
    for b in p.y:
        lb = list_of(p, b)
        for c in g.neighbors(b) & p.y:
            lc = list_of(p, c)
            for a in (g.neighbors(b) & a_pool) - g.neighbors(c):
                if a == c:
                    continue
                if want(list_of(p, a), lb, lc):
                    return AxiomReport(False, (a, b, c))
    return AxiomReport(True)


def _mixed_component_pairs(p: StarredPrecoloring):
    """Components of G|Y having a mixed X vertex, with their list sets."""
    g = p.graph
    for comp in components(g, p.y):
        mixed = [x for x in p.x if relation(g, VertexSet.single(x), comp) is Relation.MIXED]
        if not mixed:
            continue
        lists = sorted({list_of(p, v) for v in comp})
        yield comp, mixed, lists


def check_starred_axiom(p: StarredPrecoloring, axiom: str) -> AxiomReport:
    """Check one of "A"–"H" (structure) or "I"–"VIII" (list shape)."""
    g = p.graph
    if axiom == "A":
        ok, why = check_proper(g, p.f, domain=p.precolored)
        return AxiomReport(ok, why)
    if axiom == "B":
        # enforced at construction; re-derive for symmetry
        union = p.s | p.x0 | p.x | p.y | p.ystar
        return AxiomReport(union == g.vertex_set(), None)
    if axiom == "C":
        return _connected_seed(p)
    if axiom == "D":
        for v in p.y:
            if not (g.neighbors(v) & p.s):
                return AxiomReport(False, v)
        return AxiomReport(True)
    if axiom == "E":
        for v in p.x:
            seen = 0
            for u in g.neighbors(v) & p.s:
                seen |= color_bit(p.f.get(u))
            if bin(seen).count("1") < 2:
                return AxiomReport(False, v)
        return AxiomReport(True)
    if axiom == "F":
        for v in p.y:
            hit = g.neighbors(v) & p.ystar
            if hit:
                return AxiomReport(False, (v, hit.min()))
        return AxiomReport(True)
    if axiom == "G":
        for comp in components(g, p.ystar):
            for x in p.x:
                if relation(g, VertexSet.single(x), comp) is Relation.MIXED:
                    return AxiomReport(False, (x, comp))
        return AxiomReport(True)
    if axiom == "H":
        dominators = p.s | p.x0 | p.x
        for comp in components(g, p.ystar):
            if not any(comp <= g.neighbors(v) for v in dominators):
                return AxiomReport(False, comp)
        return AxiomReport(True)
    if axiom == "I":
        for v in p.y:
            if bin(list_of(p, v)).count("1") != 3:
                return AxiomReport(False, v)
        return AxiomReport(True)
    if axiom == "II":
        return _scan_list_paths(
            p, p.y,
            lambda la, lb, lc: lb == lc and la != lb
            and bin(la).count("1") == 3 and bin(lb).count("1") == 3,
        )
    if axiom == "III":
        return _scan_list_paths(
            p, p.y,
            lambda la, lb, lc: len({la, lb, lc}) == 3
            and all(bin(m).count("1") == 3 for m in (la, lb, lc)),
        )
    if axiom == "IV":
        return _scan_list_paths(
            p, p.x,
            lambda la, lb, lc: lb == lc and bin(lb).count("1") == 3,
        )
    if axiom == "V":
        return _scan_list_paths(
            p, p.x,
            lambda la, lb, lc: bin(lb).count("1") == 3
            and bin(lc).count("1") == 3 and la != lb & lc,
        )
    if axiom in ("VI", "VII"):
        found = []
        for comp, mixed, lists in _mixed_component_pairs(p):
            if len(lists) > 2:
                return AxiomReport(False, ("too-many-lists", comp))
            l1, l2 = (lists[0], lists[-1])
            if axiom == "VI":
                for x in mixed:
                    if list_of(p, x) != l1 & l2:
                        return AxiomReport(False, ("mixed-list", x, comp))
            else:
                if len(lists) != 2:
                    continue
                for x in p.x:
                    if g.neighbors(x) & comp and list_of(p, x) != l1 & l2:
                        return AxiomReport(False, ("neighbor-list", x, comp))
            found.append((comp, l1, l2))
        return AxiomReport(True, None, tuple(found))
    if axiom == "VIII":
        if p.y:
            return AxiomReport(False, p.y.min())
        return AxiomReport(True)
    raise ValueError(f"unknown starred axiom {axiom!r}")


def check_all_axioms(p: Precoloring, ids: Iterable[str] | None = None) -> dict[str, AxiomReport]:
    if isinstance(p, StarredPrecoloring):
        ids = tuple(ids) if ids is not None else STARRED_AXIOM_IDS
        return {a: check_starred_axiom(p, a) for a in ids}
    ids = tuple(ids) if ids is not None else SEEDED_AXIOM_IDS
    return {a: check_seeded_axiom(p, a) for a in ids}


# ---------------------------------------------------------------------------
# normal subcases


NORMAL_SUBCASE_CLAUSES = (
    "deleted-inside-y0",
    "seed-connected-and-grown",
    "new-x0-dominated",
    "seed-growth-range",
    "x0-growth-range",
    "f-extends",
)


def is_normal_subcase(
    parent: SeededPrecoloring,
    child: SeededPrecoloring,
    to_parent: tuple[int, ...] | None = None,
) -> AxiomReport:
    """Check the six defining clauses of a normal subcase.

    ``to_parent`` maps child vertex ids into the parent graph; identity when
    omitted (graphs of equal order).  Witness names the violated clause.
    """
    if to_parent is None:
        if child.graph.n != parent.graph.n:
            raise ValueError("child graph differs in order; pass to_parent")
        to_parent = tuple(range(child.graph.n))

    def up(vs: VertexSet) -> VertexSet:
        return VertexSet.of(to_parent[v] for v in vs)

    kept = up(child.graph.vertex_set())
    deleted = parent.graph.vertex_set() - kept
    if not deleted <= parent.y0:
        return AxiomReport(False, NORMAL_SUBCASE_CLAUSES[0])
    s2, x02 = up(child.s), up(child.x0)
    if not (is_connected(child.graph, child.s) and parent.s <= s2):
        return AxiomReport(False, NORMAL_SUBCASE_CLAUSES[1])
    for v in child.x0:
        if to_parent[v] in parent.y0 and not (child.graph.neighbors(v) & child.s):
            return AxiomReport(False, NORMAL_SUBCASE_CLAUSES[2])
    if not s2 <= parent.s | parent.x | parent.y0 | parent.y:
        return AxiomReport(False, NORMAL_SUBCASE_CLAUSES[3])
    if not (parent.x0 <= x02 and x02 <= parent.x0 | parent.x | parent.y0 | parent.y):
        return AxiomReport(False, NORMAL_SUBCASE_CLAUSES[4])
    for v in child.s | child.x0:
        pv = to_parent[v]
        if pv in parent.precolored and child.f.get(v) != parent.f.get(pv):
            return AxiomReport(False, NORMAL_SUBCASE_CLAUSES[5])
    return AxiomReport(True)


# ---------------------------------------------------------------------------
# lift records


class LiftError(RuntimeError):
    """A recorded recoloring failed at lift time — a pipeline soundness bug."""


@dataclass(frozen=True)
class RelabelStep:
    """Member lives on an induced subgraph of the parent; ids remapped."""

    parent_graph: Graph
    child_graph: Graph
    to_parent: tuple[int, ...]


@dataclass(frozen=True)
class DeletionStep:
    """Vertices removed from the parent, to be recolored at lift time.

    ``allowed`` freezes, per deleted parent vertex, the color mask it was
    entitled to when deleted.  Replay colors the deleted set by exact list
    coloring against whatever its parent-graph neighbors received.
    """

    parent_graph: Graph
    child_graph: Graph
    to_parent: tuple[int, ...]
    allowed: tuple[tuple[int, int], ...]

    @property
    def deleted(self) -> VertexSet:
        return VertexSet.of(v for v, _ in self.allowed)


@dataclass(frozen=True)
class ForcedStep:
    """Colors pinned by a stage (same graph); replay only sanity-checks."""

    assignments: tuple[tuple[int, int], ...]


LiftStep = Union[RelabelStep, DeletionStep, ForcedStep]


def _replay_deletion(step: DeletionStep, colors: dict[int, int]) -> None:
    g = step.parent_graph
    dead = step.deleted
    masks = {}
    for v, mask in step.allowed:
        for u in g.neighbors(v) - dead:
            c = colors.get(u)
            if c is not None:
                mask &= ~color_bit(c)
        masks[v] = mask
    sub = induced_subgraph(g, dead)
    lists = ListAssignment(tuple(masks[sub.to_parent[i]] for i in range(sub.graph.n)))
    got = exact_list_color(sub.graph, lists)
    if got is None:
        raise LiftError(f"deleted set {dead} not recolorable at lift time")
    for i in range(sub.graph.n):
        colors[sub.to_parent[i]] = got.get(i)


def lift(chain: tuple[LiftStep, ...] | list[LiftStep], ext: Coloring) -> Coloring:
    """Map a proper extension of a member back through ``chain``.

    ``ext`` must totally color the member graph (the last step's child);
    the result colors every vertex the chain reaches in the root graph,
    properly, recoloring deleted sets as it unwinds.
    """
    steps = tuple(chain)
    graph_steps = [s for s in steps if not isinstance(s, ForcedStep)]
    if graph_steps:
        _require_total_proper(graph_steps[-1].child_graph, ext)
    root_n = graph_steps[0].parent_graph.n if graph_steps else ext.n
    colors = dict(ext.items())
    for step in reversed(steps):
        if isinstance(step, ForcedStep):
            for v, c in step.assignments:
                got = colors.get(v)
                if got is not None and got != c:
                    raise LiftError(f"forced color of {v} was {c}, extension used {got}")
            continue
        colors = {step.to_parent[child_v]: c for child_v, c in colors.items()}
        if isinstance(step, DeletionStep):
            _replay_deletion(step, colors)
    return Coloring.from_dict(root_n, colors)


def _require_total_proper(g: Graph, ext: Coloring) -> None:
    if ext.domain() != VertexSet.full(g.n):
        raise LiftError("extension does not totally color the member graph")
    ok, why = check_proper(g, ext)
    if not ok:
        raise LiftError(f"extension of member is not proper: {why}")


# ---------------------------------------------------------------------------
# equivalent collections


class CollectionMode(Enum):
    ANY = "any"
    ALL = "all"


@dataclass(frozen=True)
class Member:
    """One precoloring of a collection plus its lift chain.

    ``group`` partitions ALL-mode collections into obligations: the parent
    is extendable iff every group has an extendable member.  ``None`` means
    the member is its own group.
    """

    pre: Precoloring
    chain: tuple[LiftStep, ...] = ()
    group: object = None


@dataclass
class EquivalentCollection:
    """A stage output: ordered (possibly lazy) members plus the mode that
    relates their extendability to the parent's."""

    mode: CollectionMode
    members: Iterable[Member]
    op: str = ""

    def __iter__(self) -> Iterator[Member]:
        return iter(self.members)

    def materialize(self) -> "EquivalentCollection":
        return EquivalentCollection(self.mode, tuple(self.members), self.op)


def dedup_members(members: Iterable[Member]) -> Iterator[Member]:
    """Drop members whose precoloring was already seen (first wins)."""
    seen = set()
    for m in members:
        k = m.pre.key()
        if k in seen:
            continue
        seen.add(k)
        yield m


# ---------------------------------------------------------------------------
# restriction helpers


def restrict_seeded(p: SeededPrecoloring, keep: VertexSet) -> tuple[SeededPrecoloring, Subgraph]:
    sub = induced_subgraph(p.graph, keep)
    f = Coloring.from_dict(
        sub.graph.n,
        {sub.to_sub[v]: p.f.get(v) for v in p.precolored & keep},
    )
    q = SeededPrecoloring(
        sub.graph,
        sub.map_set_to_sub(p.s & keep),
        sub.map_set_to_sub(p.x0 & keep),
        sub.map_set_to_sub(p.x & keep),
        sub.map_set_to_sub(p.y0 & keep),
        sub.map_set_to_sub(p.y & keep),
        f,
    )
    return q, sub


def restrict_starred(p: StarredPrecoloring, keep: VertexSet) -> tuple[StarredPrecoloring, Subgraph]:
    sub = induced_subgraph(p.graph, keep)
    f = Coloring.from_dict(
        sub.graph.n,
        {sub.to_sub[v]: p.f.get(v) for v in p.precolored & keep},
    )
    q = StarredPrecoloring(
        sub.graph,
        sub.map_set_to_sub(p.s & keep),
        sub.map_set_to_sub(p.x0 & keep),
        sub.map_set_to_sub(p.x & keep),
        sub.map_set_to_sub(p.y & keep),
        sub.map_set_to_sub(p.ystar & keep),
        f,
    )
    return q, sub


# ---------------------------------------------------------------------------
# stage-dump text format


def _set_line(label: str, vs: VertexSet) -> str:
    body = " ".join(str(v) for v in vs)
    return f"{label}:" + (f" {body}" if body else "")


def format_member(p: Precoloring) -> str:
    """Serialize one precoloring: edge list, labeled set lines, f lines."""
    lines = [format_edge_list(p.graph).rstrip("\n")]
    lines.append(_set_line("S", p.s))
    lines.append(_set_line("X0", p.x0))
    lines.append(_set_line("X", p.x))
    if isinstance(p, StarredPrecoloring):
        lines.append(_set_line("Y", p.y))
        lines.append(_set_line("Ystar", p.ystar))
    else:
        lines.append(_set_line("Y0", p.y0))
        lines.append(_set_line("Y", p.y))
    for v in p.precolored:
        lines.append(f"f: {v} {p.f.get(v)}")
    return "\n".join(lines) + "\n"


def parse_member(text: str) -> Precoloring:
    """Inverse of :func:`format_member`."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    n, m = (int(t) for t in lines[0].split())
    graph = parse_edge_list("\n".join(lines[: 1 + m]))
    rest = lines[1 + m:]
    sets: dict[str, VertexSet] = {}
    order: list[str] = []
    fmap: dict[int, int] = {}
    for ln in rest:
        label, _, body = ln.partition(":")
        label = label.strip()
        if label == "f":
            v, c = (int(t) for t in body.split())
            fmap[v] = c
            continue
        sets[label] = VertexSet.of(int(t) for t in body.split())
        order.append(label)
    f = Coloring.from_dict(n, fmap)
    if order == ["S", "X0", "X", "Y", "Ystar"]:
        return StarredPrecoloring(graph, sets["S"], sets["X0"], sets["X"], sets["Y"], sets["Ystar"], f)
    if order == ["S", "X0", "X", "Y0", "Y"]:
        return SeededPrecoloring(graph, sets["S"], sets["X0"], sets["X"], sets["Y0"], sets["Y"], f)
    raise ValueError(f"unrecognized set labels {order}")
