"""Small labeled graphs: canonical forms, isomorphism, enumeration, catalogs.

Graphs are stored as bit-matrices, one integer row per vertex (bit j of
``rows[i]`` is the i-j adjacency).  Everything downstream (subgraph density
counting, flag algebras, the odd-triple calculus) reduces to exact counting
over these objects, so the operations here are deliberately simple and
deterministic.

Canonical forms use iterated color refinement to fix an ordered partition of
the vertices and then minimize the adjacency encoding over the remaining
permutations with branch-and-bound.  Two graphs are isomorphic iff their
canonical encodings coincide; this is cross-checked against brute-force
permutation search in the test suite for all graphs on up to 6 vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

MAX_VERTICES = 64        # storage limit (heuristic search witnesses)
MAX_CANONICAL = 12       # canonicalization limit
MAX_ENUMERATION = 8


@dataclass(frozen=True)
class SmallGraph:
    """Undirected labeled graph on vertices 0..n-1 with bit-matrix rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} out of range 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError("adjacency bits outside vertex range")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
        for i in range(self.n):
            for j in range(i):
                if (self.rows[i] >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError("adjacency matrix not symmetric")

    # -- basic accessors ----------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for v in range(self.n) for u in range(v) if self.has_edge(u, v))

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int):
        row = self.rows[v]
        return [u for u in range(self.n) if row >> u & 1]

    # -- constructions ------------------------------------------------------

    def complement(self) -> "SmallGraph":
        full = (1 << self.n) - 1
        return SmallGraph(self.n, tuple((full & ~row) & ~(1 << i) for i, row in enumerate(self.rows)))

    def relabel(self, perm) -> "SmallGraph":
        """Image under the map old vertex i -> new vertex perm[i]."""
        rows = [0] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.rows[i] >> j & 1:
                    rows[perm[i]] |= 1 << perm[j]
        return SmallGraph(self.n, tuple(rows))

    def induced(self, vertices) -> "SmallGraph":
        """Induced subgraph on the given vertices, relabeled 0..k-1 in order."""
        vs = list(vertices)
        rows = [0] * len(vs)
        for a, u in enumerate(vs):
            for b, v in enumerate(vs):
                if a != b and self.rows[u] >> v & 1:
                    rows[a] |= 1 << b
        return SmallGraph(len(vs), tuple(rows))

    def add_vertex(self, neighborhood: int) -> "SmallGraph":
        """Append vertex n adjacent to the bitmask ``neighborhood``."""
        rows = [row | ((neighborhood >> i & 1) << self.n) for i, row in enumerate(self.rows)]
        rows.append(neighborhood)
        return SmallGraph(self.n + 1, tuple(rows))

    # -- canonical form -----------------------------------------------------

    @property
    def canonical_key(self) -> tuple[int, int]:
        return canonicalize(self).key

    def __str__(self):
        return format_graph(self)


def from_edges(n: int, edges) -> SmallGraph:
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError("self-loop")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return SmallGraph(n, tuple(rows))


def empty_graph(n: int) -> SmallGraph:
    return SmallGraph(n, (0,) * n)


def complete_graph(n: int) -> SmallGraph:
    full = (1 << n) - 1
    return SmallGraph(n, tuple(full & ~(1 << i) for i in range(n)))


def path_graph(n: int) -> SmallGraph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SmallGraph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> SmallGraph:
    """Star with center 0 and n-1 leaves."""
    return from_edges(n, [(0, i) for i in range(1, n)])


def paw_graph() -> SmallGraph:
    """Triangle with a pendant vertex (4 vertices, 4 edges)."""
    return from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


# ---------------------------------------------------------------------------
# Canonical labeling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant encoding: pair (n, minimal adjacency code).

    The code packs the bits adj(order[k], order[j]) for k = 1..n-1, j < k,
    most significant first, minimized over all vertex orders compatible with
    the refinement partition.
    """

    n: int
    code: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.code)

    def graph(self) -> SmallGraph:
        """Reconstruct the canonically labeled representative."""
        n = self.n
        rows = [0] * n
        pos = n * (n - 1) // 2
        for k in range(1, n):
            for j in range(k):
                pos -= 1
                if self.code >> pos & 1:
                    rows[k] |= 1 << j
                    rows[j] |= 1 << k
        return SmallGraph(n, tuple(rows))


def _refine_colors(g: SmallGraph) -> list[int]:
    """Iterated neighbor-color refinement; color ids are label-independent."""
    colors = [g.degree(v) for v in range(g.n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in g.neighbors(v))))
            for v in range(g.n)
        ]
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[sigs[v]] for v in range(g.n)]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _encode(g: SmallGraph, order) -> int:
    code = 0
    for k in range(1, g.n):
        v = order[k]
        for j in range(k):
            code = code << 1 | (g.rows[v] >> order[j] & 1)
    return code


def canonicalize(g: SmallGraph) -> CanonicalForm:
    """Canonical form: minimal adjacency code over refinement-compatible orders."""
    if g.n > MAX_CANONICAL:
        raise ValueError(f"canonicalization limited to n <= {MAX_CANONICAL}")
    n = g.n
    if n == 1:
        return CanonicalForm(1, 0)
    colors = _refine_colors(g)
    # positions grouped by color; vertices may only occupy positions of their color
    pool: dict[int, list[int]] = {}
    for v in range(n):
        pool.setdefault(colors[v], []).append(v)
    slot_colors = sorted(colors)

    best: list[int] | None = None
    order: list[int] = []
    bits: list[int] = []
    used = [False] * n

    def search(pos: int):
        nonlocal best
        if pos == n:
            if best is None or bits < best:
                best = bits.copy()
            return
        scored = sorted(
            (_partial_bits(g, v, order), v)
            for v in pool[slot_colors[pos]]
            if not used[v]
        )
        for b, v in scored:
            if best is not None and bits + [b] > best[: pos + 1]:
                break  # candidates are ascending; the rest are worse too
            used[v] = True
            order.append(v)
            bits.append(b)
            search(pos + 1)
            bits.pop()
            order.pop()
            used[v] = False

    search(0)
    assert best is not None
    code = 0
    for pos, b in enumerate(best):
        code = code << pos | b
    return CanonicalForm(n, code)


def _partial_bits(g: SmallGraph, v: int, placed) -> int:
    b = 0
    row = g.rows[v]
    for u in placed:
        b = b << 1 | (row >> u & 1)
    return b


def are_isomorphic(g: SmallGraph, h: SmallGraph) -> bool:
    return g.n == h.n and canonicalize(g).key == canonicalize(h).key


# ---------------------------------------------------------------------------
# Enumeration and catalogs
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def enumerate_graphs(n: int) -> tuple[SmallGraph, ...]:
    """All non-isomorphic graphs on n vertices, sorted by (edge count, code).

    Built by one-vertex augmentation from the (n-1)-vertex catalog, which is
    complete because deleting any vertex of an n-vertex graph lands in the
    smaller catalog.  Counts for n = 1..8: 1, 2, 4, 11, 34, 156, 1044, 12346.
    """
    if not 1 <= n <= MAX_ENUMERATION:
        raise ValueError(f"enumeration limited to 1 <= n <= {MAX_ENUMERATION}")
    if n == 1:
        return (SmallGraph(1, (0,)),)
    seen: dict[tuple[int, int], CanonicalForm] = {}
    for parent in enumerate_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            cf = canonicalize(parent.add_vertex(mask))
            seen.setdefault(cf.key, cf)
    forms = sorted(seen.values(), key=lambda cf: (cf.graph().edge_count, cf.code))
    return tuple(cf.graph() for cf in forms)


@lru_cache(maxsize=None)
def catalog_F4() -> tuple[SmallGraph, ...]:
    """The eleven 4-vertex graphs in the fixed certificate order F1..F11.

    Edge lists are transcribed from the reference drawings (vertices a0..a3
    mapped to 0..3).  Edge counts in order: 0,1,2,2,3,3,3,4,4,5,6.
    """
    edge_lists = [
        [],
        [(0, 3)],
        [(0, 3), (1, 2)],
        [(0, 3), (3, 2)],
        [(0, 3), (0, 1), (1, 3)],
        [(0, 3), (3, 2), (2, 1)],
        [(0, 3), (3, 2), (1, 3)],
        [(0, 3), (3, 2), (1, 2), (1, 0)],
        [(0, 3), (3, 1), (1, 0), (1, 2)],
        [(0, 3), (3, 2), (3, 1), (1, 2), (1, 0)],
        [(0, 3), (3, 2), (3, 1), (1, 2), (1, 0), (2, 0)],
    ]
    graphs = tuple(from_edges(4, e) for e in edge_lists)
    counts = tuple(g.edge_count for g in graphs)
    assert counts == (0, 1, 2, 2, 3, 3, 3, 4, 4, 5, 6)
    return graphs


@lru_cache(maxsize=None)
def basis(level: int) -> tuple[SmallGraph, ...]:
    """Ordered basis of ``level``-vertex graphs used for density vectors.

    Level 4 is pinned to the F1..F11 catalog order; other levels use the
    (edge count, canonical code) order of ``enumerate_graphs``.
    """
    if level == 4:
        return catalog_F4()
    return enumerate_graphs(level)


# ---------------------------------------------------------------------------
# Induced-subgraph counting
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _induced_profile(g: SmallGraph, k: int) -> dict[tuple[int, int], int]:
    """Counts of induced k-vertex subgraphs of g, keyed by canonical key."""
    counts: dict[tuple[int, int], int] = {}
    for vs in itertools.combinations(range(g.n), k):
        key = g.induced(vs).canonical_key
        counts[key] = counts.get(key, 0) + 1
    return counts


def count_induced(h: SmallGraph, g: SmallGraph) -> int:
    """Number of |V(h)|-subsets of V(g) that induce a copy of h."""
    if h.n > g.n:
        raise ValueError("pattern larger than host")
    return _induced_profile(g, h.n).get(h.canonical_key, 0)


def induced_subgraph_total(g: SmallGraph, k: int) -> int:
    return comb(g.n, k)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

def format_graph(g: SmallGraph) -> str:
    """Render as ``n:edge-list`` (``4:01,12,23``; dashes once labels exceed 9)."""
    if g.n > 10:
        tokens = [f"{u}-{v}" for u, v in g.edges()]
    else:
        tokens = [f"{u}{v}" for u, v in g.edges()]
    return f"{g.n}:" + ",".join(tokens)


def parse_graph(text: str) -> SmallGraph:
    head, _, rest = text.partition(":")
    n = int(head.strip())
    edges = []
    rest = rest.strip()
    if rest:
        for token in rest.split(","):
            token = token.strip()
            if "-" in token:
                a, b = token.split("-")
                edges.append((int(a), int(b)))
            elif len(token) == 2:
                edges.append((int(token[0]), int(token[1])))
            else:
                raise ValueError(f"bad edge token {token!r}")
    return from_edges(n, edges)


def to_graph6(g: SmallGraph) -> str:
    """graph6 encoding (n <= 62): size byte plus column-major upper triangle."""
    if g.n > 62:
        raise ValueError("graph6 support limited to n <= 62")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        word = 0
        for b in bits[i : i + 6]:
            word = word << 1 | b
        chars.append(chr(word + 63))
    return "".join(chars)


def from_graph6(text: str) -> SmallGraph:
    data = [ord(c) - 63 for c in text.strip()]
    n = data[0]
    bits = []
    for word in data[1:]:
        for k in range(5, -1, -1):
            bits.append(word >> k & 1)
    rows = [0] * n
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            idx += 1
    return SmallGraph(n, tuple(rows))
