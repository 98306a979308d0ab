"""Coloring primitives over the color set {1,2,3,4}.

Three layers:

* properness checking with violation witnesses,
* a polynomial two-list colorer (reduction to 2-clause satisfiability over an
  implication graph, strongly connected components found iteratively),
* an exact backtracking list colorer used as the endgame search and as the
  referee for everything else.  It is deterministic: smallest-list-first
  vertex selection, ascending color order, singleton propagation up front.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .graph_core import Graph, VertexSet, _bits

FULL_MASK = 0b1111  # colors 1..4 <-> bits 0..3
ALL_COLORS = (1, 2, 3, 4)


def color_bit(c: int) -> int:
    return 1 << (c - 1)


def mask_of(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        if not 1 <= c <= 4:
            raise ValueError("color %r outside 1..4" % (c,))
        m |= 1 << (c - 1)
    return m


def colors_of(mask: int) -> Tuple[int, ...]:
    return tuple(c for c in ALL_COLORS if mask >> (c - 1) & 1)


@dataclass(frozen=True, slots=True)
class ListAssignment:
    """Per-vertex allowed-color subsets of {1,2,3,4}, stored as 4-bit masks."""

    masks: Tuple[int, ...]

    def __post_init__(self) -> None:
        for m in self.masks:
            if m & ~FULL_MASK:
                raise ValueError("list mask %r outside {1,2,3,4}" % (m,))

    @staticmethod
    def uniform(n: int, colors: Iterable[int] = ALL_COLORS) -> "ListAssignment":
        return ListAssignment((mask_of(colors),) * n)

    @staticmethod
    def from_dict(n: int, lists: Dict[int, Iterable[int]]) -> "ListAssignment":
        masks = [FULL_MASK] * n
        for v, colors in lists.items():
            masks[v] = mask_of(colors)
        return ListAssignment(tuple(masks))

    @property
    def n(self) -> int:
        return len(self.masks)

    def mask(self, v: int) -> int:
        return self.masks[v]

    def colors(self, v: int) -> Tuple[int, ...]:
        return colors_of(self.masks[v])

    def size(self, v: int) -> int:
        return self.masks[v].bit_count()

    def with_mask(self, v: int, mask: int) -> "ListAssignment":
        masks = list(self.masks)
        masks[v] = mask
        return ListAssignment(tuple(masks))

    def restricted(self, v: int, mask: int) -> "ListAssignment":
        return self.with_mask(v, self.masks[v] & mask)

    def max_size(self) -> int:
        return max((m.bit_count() for m in self.masks), default=0)


@dataclass(frozen=True, slots=True)
class Coloring:
    """Color map over vertex ids; 0 marks "not in the domain" (partial)."""

    colors: Tuple[int, ...]

    def __post_init__(self) -> None:
        for c in self.colors:
            if not 0 <= c <= 4:
                raise ValueError("color %r outside 0..4" % (c,))

    @staticmethod
    def empty(n: int) -> "Coloring":
        return Coloring((0,) * n)

    @staticmethod
    def from_dict(n: int, assignment: Dict[int, int]) -> "Coloring":
        colors = [0] * n
        for v, c in assignment.items():
            colors[v] = c
        return Coloring(tuple(colors))

    @property
    def n(self) -> int:
        return len(self.colors)

    def get(self, v: int) -> Optional[int]:
        c = self.colors[v]
        return c if c else None

    def has(self, v: int) -> bool:
        return self.colors[v] != 0

    def domain(self) -> VertexSet:
        return VertexSet.of(v for v, c in enumerate(self.colors) if c)

    def is_total(self) -> bool:
        return all(self.colors)

    def assign(self, v: int, c: int) -> "Coloring":
        colors = list(self.colors)
        colors[v] = c
        return Coloring(tuple(colors))

    def merge(self, other: "Coloring") -> "Coloring":
        """Union of two partial colorings; overlapping entries must agree."""
        if other.n != self.n:
            raise ValueError("merging colorings of different sizes")
        colors = list(self.colors)
        for v, c in enumerate(other.colors):
            if c:
                if colors[v] and colors[v] != c:
                    raise ValueError("merge conflict at vertex %d" % v)
                colors[v] = c
        return Coloring(tuple(colors))

    def items(self) -> Iterator[Tuple[int, int]]:
        for v, c in enumerate(self.colors):
            if c:
                yield (v, c)

    def to_dict(self) -> Dict[int, int]:
        return dict(self.items())


def check_proper(
    g: Graph,
    coloring: Coloring,
    lists: Optional[ListAssignment] = None,
    domain: Optional[VertexSet] = None,
) -> Tuple[bool, Optional[tuple]]:
    """Is the coloring proper (and within its lists) on G|domain?

    domain defaults to all of V(G).  The coloring must cover the whole domain
    (ValueError otherwise).  Returns (ok, witness) where a failing witness is
    ("edge", u, v) for the first monochromatic edge or ("vertex", v) for the
    first list violation.
    """
    dom = domain if domain is not None else g.vertex_set()
    for v in dom:
        if not coloring.has(v):
            raise ValueError("coloring does not cover vertex %d of the domain" % v)
    for v in dom:
        if lists is not None and not lists.mask(v) >> (coloring.colors[v] - 1) & 1:
            return (False, ("vertex", v))
        for u in _bits(g.adj[v] & dom.mask >> (v + 1) << (v + 1)):
            if coloring.colors[u] == coloring.colors[v]:
                return (False, ("edge", v, u))
    return (True, None)


# ---------------------------------------------------------------------------
# two-list coloring via 2-SAT
# ---------------------------------------------------------------------------


def _scc_iterative(nnodes: int, adj: List[List[int]]) -> List[int]:
    """Tarjan without recursion; component ids increase from sinks to sources."""
    index = [-1] * nnodes
    low = [0] * nnodes
    comp = [-1] * nnodes
    onstack = bytearray(nnodes)
    stack: List[int] = []
    counter = 0
    ncomp = 0
    for root in range(nnodes):
        if index[root] != -1:
            continue
        work: List[List[int]] = [[root, 0]]
        while work:
            frame = work[-1]
            v, pi = frame
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack[v] = 1
            descended = False
            neighbors = adj[v]
            while pi < len(neighbors):
                w = neighbors[pi]
                pi += 1
                if index[w] == -1:
                    frame[1] = pi
                    work.append([w, 0])
                    descended = True
                    break
                if onstack[w] and low[v] > index[w]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = 0
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                if low[parent] > low[v]:
                    low[parent] = low[v]
    return comp


def two_list_color(g: Graph, lists: ListAssignment) -> Optional[Coloring]:
    """L-color G where every list has at most two entries, or report None.

    One boolean per vertex choosing between its (at most) two colors;
    singleton lists become unit clauses, each edge sharing a color emits the
    corresponding binary clause.  Runs in time linear-ish in n + m.
    """
    n = g.n
    lo = [0] * n
    hi = [0] * n
    for v in range(n):
        cs = lists.colors(v)
        if len(cs) > 2:
            raise ValueError("vertex %d has a list of size %d > 2" % (v, len(cs)))
        if not cs:
            return None
        lo[v] = cs[0]
        hi[v] = cs[-1]

    # literal ids: 2v = "v takes hi[v]", 2v+1 = "v takes lo[v]" (its negation)
    adj: List[List[int]] = [[] for _ in range(2 * n)]

    def add_clause(a: int, b: int) -> None:
        # (a or b): not-a -> b, not-b -> a
        adj[a ^ 1].append(b)
        adj[b ^ 1].append(a)

    def literal(v: int, c: int) -> Optional[int]:
        # literal asserting "v takes color c", None if v cannot take c
        if c == hi[v]:
            return 2 * v
        if c == lo[v]:
            return 2 * v + 1
        return None

    for v in range(n):
        if lo[v] == hi[v]:
            add_clause(2 * v, 2 * v)  # forced
    for u, v in g.edges():
        for c in (1, 2, 3, 4):
            a = literal(u, c)
            b = literal(v, c)
            if a is not None and b is not None:
                add_clause(a ^ 1, b ^ 1)  # not both take c

    comp = _scc_iterative(2 * n, adj)
    out = [0] * n
    for v in range(n):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        # smaller component id = closer to a sink = safe to satisfy
        out[v] = hi[v] if comp[2 * v] < comp[2 * v + 1] else lo[v]
    return Coloring(tuple(out))


# ---------------------------------------------------------------------------
# exact list coloring (backtracking referee)
# ---------------------------------------------------------------------------


def exact_list_color(g: Graph, lists: ListAssignment) -> Optional[Coloring]:
    """Exact deterministic search for an L-coloring; None if infeasible.

    Singleton lists are propagated before any branching; branching picks an
    uncolored vertex with the smallest list (ties to the smallest id) and
    tries its colors in ascending order.
    """
    n = g.n
    adj = g.adj
    masks = list(lists.masks)
    color = [0] * n

    def propagate(pending: List[int]) -> bool:
        while pending:
            v = pending.pop()
            cbit = 1 << (color[v] - 1)
            for u in _bits(adj[v]):
                if color[u]:
                    if color[u] == color[v]:
                        return False
                    continue
                if masks[u] & cbit:
                    masks[u] &= ~cbit
                    if not masks[u]:
                        return False
                    if masks[u].bit_count() == 1:
                        color[u] = masks[u].bit_length()
                        pending.append(u)
        return True

    pending = []
    for v in range(n):
        if not masks[v]:
            return None
        if masks[v].bit_count() == 1:
            color[v] = masks[v].bit_length()
            pending.append(v)
    if not propagate(pending):
        return None

    def search() -> bool:
        best = -1
        best_size = 5
        for v in range(n):
            if not color[v]:
                sz = masks[v].bit_count()
                if sz < best_size:
                    best, best_size = v, sz
        if best == -1:
            return True
        saved_masks = masks[:]
        saved_color = color[:]
        for c in colors_of(saved_masks[best]):
            color[best] = c
            if propagate([best]) and search():
                return True
            masks[:] = saved_masks
            color[:] = saved_color
        color[best] = 0
        return False

    if not search():
        return None
    return Coloring(tuple(color))


# ---------------------------------------------------------------------------
# list / precoloring text format
# ---------------------------------------------------------------------------


def parse_list_file(text: str, n: int) -> ListAssignment:
    """Lines `v c1[,c2[,c3[,c4]]]`; vertices not mentioned get {1,2,3,4}."""
    masks = [FULL_MASK] * n
    seen = set()
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError("bad list line: %r" % ln)
        v = int(parts[0])
        if not 0 <= v < n:
            raise ValueError("vertex %d out of range" % v)
        if v in seen:
            raise ValueError("vertex %d listed twice" % v)
        seen.add(v)
        masks[v] = mask_of(int(tok) for tok in parts[1].split(","))
    return ListAssignment(tuple(masks))


def format_coloring_lines(coloring: Coloring) -> str:
    """Assigned vertices as `v c` lines (the singleton case of the list format)."""
    return "".join("%d %d\n" % (v, c) for v, c in coloring.items())


def precoloring_from_lists(lists: ListAssignment) -> Tuple[VertexSet, Coloring]:
    """Split a list file into (precolored set, coloring); every explicit list
    must be a singleton — used by the solve/oracle CLI entry points."""
    pins = {}
    for v in range(lists.n):
        m = lists.mask(v)
        if m == FULL_MASK:
            continue
        if m.bit_count() != 1:
            raise ValueError("vertex %d has a non-singleton list; solve expects precolored vertices only" % v)
        pins[v] = m.bit_length()
    return VertexSet.of(pins), Coloring.from_dict(lists.n, pins)
