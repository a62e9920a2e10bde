"""The d-system calculus: density, coboundary, minimality, odd triples.

A d-system is a family of d-element subsets of a ground set {0..n-1}.  Its
coboundary is the (d+1)-system of sets containing an odd number of members;
the operator is linear over symmetric difference and squares to zero.  A
system is minimal when no symmetric difference with a coboundary of a
(d-1)-system lowers its density.  For d = 2 minimality coincides with the
graph-side notion: no cut crosses more edges than non-edges
(Seidel minimality), and the coboundary density of an edge set equals the
density of odd triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .graphs import SmallGraph, from_edges


@dataclass(frozen=True)
class DSystem:
    """Family of d-subsets of {0..n-1}, stored as sorted tuples of sorted tuples."""

    n: int
    d: int
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.d < 1 or self.d > self.n:
            raise ValueError("arity out of range")
        seen = set()
        for m in self.members:
            if len(m) != self.d or len(set(m)) != self.d:
                raise ValueError(f"member {m} is not a {self.d}-set")
            if tuple(sorted(m)) != m:
                raise ValueError(f"member {m} not sorted")
            if any(x < 0 or x >= self.n for x in m):
                raise ValueError(f"member {m} outside ground set")
            if m in seen:
                raise ValueError(f"duplicate member {m}")
            seen.add(m)
        if tuple(sorted(self.members)) != self.members:
            raise ValueError("members not sorted")

    def __len__(self):
        return len(self.members)

    def __str__(self):
        return format_dsystem(self)


def make_dsystem(n: int, d: int, members) -> DSystem:
    return DSystem(n, d, tuple(sorted(tuple(sorted(m)) for m in members)))


def edge_system(g: SmallGraph) -> DSystem:
    """The edge set of a graph viewed as a 2-system."""
    return make_dsystem(g.n, 2, g.edges())


def system_graph(e: DSystem) -> SmallGraph:
    if e.d != 2:
        raise ValueError("only 2-systems correspond to graphs")
    return from_edges(e.n, e.members)


def density(e: DSystem) -> Fraction:
    """|E| / C(n, d)."""
    return Fraction(len(e.members), comb(e.n, e.d))


def sym_diff(a: DSystem, b: DSystem) -> DSystem:
    if (a.n, a.d) != (b.n, b.d):
        raise ValueError("mismatched systems")
    return make_dsystem(a.n, a.d, set(a.members) ^ set(b.members))


def coboundary(e: DSystem) -> DSystem:
    """The (d+1)-system of sets containing an odd number of members of e."""
    if e.d + 1 > e.n:
        raise ValueError("coboundary needs d+1 <= n")
    members = set(e.members)
    out = []
    for t in itertools.combinations(range(e.n), e.d + 1):
        odd = sum(1 for s in itertools.combinations(t, e.d) if s in members) & 1
        if odd:
            out.append(t)
    return make_dsystem(e.n, e.d + 1, out)


def is_minimal(e: DSystem) -> bool:
    """Exhaustive test: no (d-1)-system D makes ||E xor delta(D)|| smaller.

    The coboundary is linear over symmetric difference, so delta(D) is the
    xor of the singleton coboundaries; a Gray-code walk over all D costs one
    xor per step.  Feasible while C(n, d-1) stays small (about 22).
    """
    base_sets = list(itertools.combinations(range(e.n), e.d - 1))
    if len(base_sets) > 22:
        raise ValueError("instance too large for exhaustive minimality check")
    d_sets = list(itertools.combinations(range(e.n), e.d))
    index = {s: i for i, s in enumerate(d_sets)}
    e_mask = 0
    for m in e.members:
        e_mask |= 1 << index[m]
    # coboundary of each singleton (d-1)-set, as a bitmask over d-sets
    deltas = []
    for s in base_sets:
        mask = 0
        rest = [x for x in range(e.n) if x not in s]
        for x in rest:
            mask |= 1 << index[tuple(sorted(s + (x,)))]
        deltas.append(mask)
    size = len(e.members)
    acc = 0
    prev_gray = 0
    for k in range(1, 1 << len(base_sets)):
        gray = k ^ (k >> 1)
        acc ^= deltas[(gray ^ prev_gray).bit_length() - 1]
        prev_gray = gray
        if (e_mask ^ acc).bit_count() < size:
            return False
    return True


def cut_crossings(g: SmallGraph, side: int) -> tuple[int, int]:
    """(crossing edges, crossing non-edges) for the cut given by bitmask side."""
    n = g.n
    comp = ((1 << n) - 1) & ~side
    edges = 0
    for v in range(n):
        if side >> v & 1:
            edges += (g.rows[v] & comp).bit_count()
    total = (side.bit_count()) * (n - side.bit_count())
    return edges, total - edges


def is_seidel_minimal(g: SmallGraph) -> bool:
    """True iff every cut contains at most as many edges as non-edges.

    Cuts are enumerated with vertex 0 pinned to one block, halving the count.
    """
    if g.n > 24:
        raise ValueError("exhaustive cut check limited to n <= 24")
    if g.n == 1:
        return True
    for rest in range(1 << (g.n - 1)):
        side = rest << 1 | 1
        edges, nonedges = cut_crossings(g, side)
        if edges > nonedges:
            return False
    return True


def odd_triple_density(g: SmallGraph) -> Fraction:
    """Fraction of vertex triples inducing exactly one or three edges."""
    if g.n < 3:
        raise ValueError("odd-triple density needs at least 3 vertices")
    odd = 0
    for a, b, c in itertools.combinations(range(g.n), 3):
        cnt = (g.rows[a] >> b & 1) + (g.rows[a] >> c & 1) + (g.rows[b] >> c & 1)
        if cnt & 1:
            odd += 1
    return Fraction(odd, comb(g.n, 3))


# ---------------------------------------------------------------------------
# Text format: "n d: {a,b},{c,d},..."
# ---------------------------------------------------------------------------

def format_dsystem(e: DSystem) -> str:
    body = ",".join("{" + ",".join(str(x) for x in m) + "}" for m in e.members)
    return f"{e.n} {e.d}: {body}"


def parse_dsystem(text: str) -> DSystem:
    head, _, body = text.partition(":")
    parts = head.split()
    if len(parts) != 2:
        raise ValueError("expected 'n d: ...'")
    n, d = int(parts[0]), int(parts[1])
    members = []
    body = body.strip()
    if body:
        for chunk in body.replace("},", "}|").split("|"):
            chunk = chunk.strip()
            if not (chunk.startswith("{") and chunk.endswith("}")):
                raise ValueError(f"bad member {chunk!r}")
            members.append(tuple(int(x) for x in chunk[1:-1].split(",")))
    return make_dsystem(n, d, members)
