"""Small dense graphs with bitset vertex sets.

Everything downstream (precoloring pipelines, solvers, fuzzers) works on
simple undirected graphs over dense vertex ids 0..n-1, kept small enough that
an int bitmask per vertex beats any fancier structure.  All iteration is in
ascending vertex id so that pipeline output is reproducible.

Convention used throughout the package: the *length* of a path is its number
of vertices (a P6 has six vertices and five edges).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Tuple


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


@dataclass(frozen=True, slots=True)
class VertexSet:
    """Immutable set of vertex ids backed by an int bitmask.

    Supports the usual set algebra via operators; iteration is ascending.
    Construct with VertexSet.of(...) or from a raw mask.
    """

    mask: int = 0

    @staticmethod
    def of(vertices: Iterable[int]) -> "VertexSet":
        m = 0
        for v in vertices:
            m |= 1 << v
        return VertexSet(m)

    @staticmethod
    def single(v: int) -> "VertexSet":
        return VertexSet(1 << v)

    @staticmethod
    def full(n: int) -> "VertexSet":
        return VertexSet((1 << n) - 1)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & ~other.mask)

    def __le__(self, other: "VertexSet") -> bool:
        return self.mask & ~other.mask == 0

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.mask & other.mask == 0

    def add(self, v: int) -> "VertexSet":
        return VertexSet(self.mask | 1 << v)

    def discard(self, v: int) -> "VertexSet":
        return VertexSet(self.mask & ~(1 << v))

    def min(self) -> int:
        if not self.mask:
            raise ValueError("min() of empty VertexSet")
        return (self.mask & -self.mask).bit_length() - 1

    def to_tuple(self) -> Tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return "{%s}" % ",".join(str(v) for v in self)


EMPTY = VertexSet(0)


class Relation(Enum):
    """How one vertex set sits against another: all edges, none, or some."""

    COMPLETE = "complete"
    ANTICOMPLETE = "anticomplete"
    MIXED = "mixed"


class Graph:
    """Simple undirected graph; adjacency stored as one bitmask per vertex.

    Immutable after construction.  No self-loops, no parallel edges.
    """

    __slots__ = ("n", "adj", "_key")

    def __init__(self, n: int, adj: Tuple[int, ...]):
        if len(adj) != n:
            raise ValueError("adjacency length != n")
        for v in range(n):
            if adj[v] >> n:
                raise ValueError("neighbor id out of range")
            if adj[v] >> v & 1:
                raise ValueError("self-loop at %d" % v)
        for v in range(n):
            for u in _bits(adj[v]):
                if not adj[u] >> v & 1:
                    raise ValueError("asymmetric adjacency %d-%d" % (u, v))
        self.n = n
        self.adj = adj
        self._key: Optional[Tuple[int, Tuple[int, ...]]] = None

    @staticmethod
    def from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge (%d,%d) out of range" % (u, v))
            if u == v:
                raise ValueError("self-loop at %d" % u)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full & ~(1 << v) for v in range(n)))

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def cycle(n: int) -> "Graph":
        edges = [(i, i + 1) for i in range(n - 1)] + ([(0, n - 1)] if n > 2 else [])
        return Graph.from_edges(n, edges)

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        # cheap hashable identity for dedup maps
        if self._key is None:
            self._key = (self.n, self.adj)
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.key())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def vertex_set(self) -> VertexSet:
        return VertexSet.full(self.n)

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in _bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    @property
    def m(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def __repr__(self) -> str:
        return "Graph(n=%d, m=%d)" % (self.n, self.m)


def relation(g: Graph, a: VertexSet, b: VertexSet) -> Relation:
    """Classify the A-B edge pattern: Complete / Anticomplete / Mixed.

    A and B must be nonempty and disjoint.
    """
    if not a or not b:
        raise ValueError("relation() needs nonempty sets")
    if not a.isdisjoint(b):
        raise ValueError("relation() needs disjoint sets")
    any_edge = False
    all_edges = True
    for u in a:
        hit = g.adj[u] & b.mask
        if hit:
            any_edge = True
        if hit != b.mask:
            all_edges = False
        if any_edge and not all_edges:
            return Relation.MIXED
    return Relation.COMPLETE if all_edges else Relation.ANTICOMPLETE


def neighborhood(g: Graph, x: VertexSet) -> VertexSet:
    """N(X): every vertex outside X with a neighbor inside X."""
    m = 0
    for v in x:
        m |= g.adj[v]
    return VertexSet(m & ~x.mask)


def components(g: Graph, x: VertexSet) -> List[VertexSet]:
    """Connected components of G|X, ordered by minimum vertex id."""
    out: List[VertexSet] = []
    remaining = x.mask
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= g.adj[v]
            frontier = grow & x.mask & ~comp
            comp |= frontier
        out.append(VertexSet(comp))
        remaining &= ~comp
    return out


def is_connected(g: Graph, x: VertexSet) -> bool:
    """Is G|X connected?  The empty set counts as connected."""
    if not x:
        return True
    return len(components(g, x)) == 1


def find_mixed_edge(g: Graph, v: int, x: VertexSet) -> Tuple[int, int]:
    """For v mixed on a connected set X, find an edge ab of G|X with v~a, v!~b.

    Such an edge always exists: the X-neighbors and X-non-neighbors of v both
    being nonempty, connectivity of G|X forces a crossing edge.  Raises
    ValueError when the preconditions fail.
    """
    if v in x:
        raise ValueError("v must lie outside X")
    hit = g.adj[v] & x.mask
    if hit == 0 or hit == x.mask:
        raise ValueError("v is not mixed on X")
    if not is_connected(g, x):
        raise ValueError("G|X is not connected")
    miss = x.mask & ~g.adj[v]
    for a in _bits(hit):
        lo = g.adj[a] & miss
        if lo:
            return (a, (lo & -lo).bit_length() - 1)
    raise AssertionError("unreachable: connected + mixed guarantees a crossing edge")


def find_induced_p6(g: Graph) -> Optional[Tuple[int, ...]]:
    """Find an induced six-vertex path, or None if the graph has none.

    DFS over ordered partial induced paths: each extension must be adjacent
    to the current endpoint and non-adjacent to everything earlier.  Returns
    the lexicographically-first hit with endpoints oriented ascending.
    """
    adj = g.adj

    def extend(path: Tuple[int, ...], used: int, blocked: int) -> Optional[Tuple[int, ...]]:
        if len(path) == 6:
            return path if path[0] < path[-1] else None
        last = path[-1]
        cand = adj[last] & ~used & ~blocked
        nxt_blocked = blocked | adj[last]
        for v in _bits(cand):
            res = extend(path + (v,), used | 1 << v, nxt_blocked)
            if res is not None:
                return res
        return None

    for s in range(g.n):
        res = extend((s,), 1 << s, 0)
        if res is not None:
            return res
    return None


def is_p6_free(g: Graph) -> bool:
    return find_induced_p6(g) is None


def find_k5(g: Graph) -> Optional[VertexSet]:
    """Find a 5-clique, or None.  Ascending-id branch and bound."""
    adj = g.adj

    def grow(clique: Tuple[int, ...], cand: int) -> Optional[Tuple[int, ...]]:
        if len(clique) == 5:
            return clique
        while cand:
            if len(clique) + cand.bit_count() < 5:
                return None
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            res = grow(clique + (v,), cand & adj[v])
            if res is not None:
                return res
        return None

    res = grow((), (1 << g.n) - 1)
    return VertexSet.of(res) if res is not None else None


@dataclass(frozen=True)
class Subgraph:
    """An induced subgraph together with its id maps.

    to_parent[i] is the parent id of subgraph vertex i; to_sub inverts it.
    """

    graph: Graph
    to_parent: Tuple[int, ...]
    to_sub: Dict[int, int] = field(hash=False, compare=False, default_factory=dict)

    def map_set_to_sub(self, x: VertexSet) -> VertexSet:
        return VertexSet.of(self.to_sub[v] for v in x if v in self.to_sub)

    def map_set_to_parent(self, x: VertexSet) -> VertexSet:
        return VertexSet.of(self.to_parent[v] for v in x)


def induced_subgraph(g: Graph, x: VertexSet) -> Subgraph:
    """G|X with a recorded bidirectional id map (sub ids ascend with parent ids)."""
    if x.mask >> g.n:
        raise ValueError("X is not a subset of V(G)")
    to_parent = x.to_tuple()
    to_sub = {p: i for i, p in enumerate(to_parent)}
    adj = []
    for p in to_parent:
        m = 0
        for q in _bits(g.adj[p] & x.mask):
            m |= 1 << to_sub[q]
        adj.append(m)
    return Subgraph(Graph(len(to_parent), tuple(adj)), to_parent, to_sub)


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Read the `n m` / `u v` edge-list format (0 <= u < v < n).

    Blank lines and lines starting with '#' are ignored.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError("expected %d edge lines, got %d" % (m, len(lines) - 1))
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError("bad edge line: %r" % ln)
        u, v = int(parts[0]), int(parts[1])
        if not 0 <= u < v < n:
            raise ValueError("edge (%d,%d) violates 0 <= u < v < n" % (u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = ["%d %d" % (g.n, g.m)]
    lines.extend("%d %d" % (u, v) for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 line (optional '>>graph6<<' header tolerated)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ValueError("empty graph6 line")
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise ValueError("invalid graph6 character")
    if data[0] <= 62:
        n = data[0]
        body = data[1:]
    elif len(data) >= 4 and data[1] <= 62:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        if len(data) < 8:
            raise ValueError("truncated graph6 header")
        n = 0
        for d in data[2:8]:
            n = n << 6 | d
        body = data[8:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ValueError("graph6 body length mismatch for n=%d" % n)
    bits = []
    for d in body:
        for k in range(5, -1, -1):
            bits.append(d >> k & 1)
    edges = []
    idx = 0
    for col in range(1, n):
        for row in range(col):
            if bits[idx]:
                edges.append((row, col))
            idx += 1
    return Graph.from_edges(n, edges)
