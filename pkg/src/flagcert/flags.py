"""Exact flag-algebra computations on small graphs.

Two layers live here.  The unlabeled layer works with density vectors over a
fixed ordered basis of ell-vertex graphs: ``expand`` writes a graph as its
induced-density coordinates one level up, and ``product`` expands a product
of two graphs over disjoint vertex samples.  The labeled layer works with
flags: graphs carrying an ordered embedding of a type graph sigma.  Sampled
sets are then conditioned to contain the embedded copy and to overlap exactly
on it, and ``unlabel`` averages a flag combination back into the unlabeled
algebra, scaling each flag by the probability that a uniformly random ordered
injection of the type reproduces it.

All coordinates are exact rationals; vectors may also carry polynomial
coefficients (used for the certificate that keeps a free parameter in the
squared flag combination), since the operations only ever add and multiply
coordinate values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, perm

from .graphs import (
    SmallGraph,
    basis,
    count_induced,
    format_graph,
)

MAX_UNLABELED_LEVEL = 7
MAX_LABELED_SIZE = 6


# ---------------------------------------------------------------------------
# Unlabeled layer
# ---------------------------------------------------------------------------

def p(h: SmallGraph, h0: SmallGraph) -> Fraction:
    """Probability that a random |V(h)|-subset of h0 induces a copy of h."""
    if h.n > h0.n:
        raise ValueError("pattern larger than host")
    return Fraction(count_induced(h, h0), comb(h0.n, h.n))


def p2(h1: SmallGraph, h2: SmallGraph, h0: SmallGraph) -> Fraction:
    """Probability that random disjoint subsets induce copies of h1 and h2.

    The pair (V1, V2) is ordered: V1 is a uniform |V(h1)|-subset and V2 a
    uniform |V(h2)|-subset of the rest.
    """
    s1, s2 = h1.n, h2.n
    if s1 + s2 > h0.n:
        raise ValueError("samples exceed host size")
    k1, k2 = h1.canonical_key, h2.canonical_key
    hits = 0
    for v1 in itertools.combinations(range(h0.n), s1):
        if h0.induced(v1).canonical_key != k1:
            continue
        rest = [v for v in range(h0.n) if v not in v1]
        for v2 in itertools.combinations(rest, s2):
            if h0.induced(v2).canonical_key == k2:
                hits += 1
    return Fraction(hits, comb(h0.n, s1) * comb(h0.n - s1, s2))


@dataclass(frozen=True)
class DensityVector:
    """Coordinates over the ordered basis of ``level``-vertex graphs or flags."""

    kind: str  # "unlabeled" or "sigma:<graph text>"
    level: int
    coords: tuple

    def __add__(self, other: "DensityVector") -> "DensityVector":
        if (self.kind, self.level) != (other.kind, other.level):
            raise ValueError("basis mismatch")
        return DensityVector(
            self.kind, self.level, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "DensityVector") -> "DensityVector":
        return self + other.scale(-1)

    def scale(self, c) -> "DensityVector":
        return DensityVector(self.kind, self.level, tuple(c * x for x in self.coords))

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "type": self.kind,
            "coords": [str(x) for x in self.coords],
        }

    @staticmethod
    def from_json(data: dict) -> "DensityVector":
        return DensityVector(
            data["type"], data["level"], tuple(Fraction(c) for c in data["coords"])
        )


def expand(h: SmallGraph, level: int) -> DensityVector:
    """Coordinates of h over the level-vertex basis: p(h, H) for each H."""
    if not h.n <= level <= MAX_UNLABELED_LEVEL:
        raise ValueError(f"level must satisfy |h| <= level <= {MAX_UNLABELED_LEVEL}")
    return DensityVector("unlabeled", level, tuple(p(h, H) for H in basis(level)))


def product(h1: SmallGraph, h2: SmallGraph, level: int | None = None) -> DensityVector:
    """Expansion of the product h1 x h2 over the level-vertex basis.

    The natural level is |h1| + |h2|; a larger level re-expands directly via
    disjoint samples in the bigger host graphs.
    """
    if level is None:
        level = h1.n + h2.n
    if not h1.n + h2.n <= level <= MAX_UNLABELED_LEVEL:
        raise ValueError("level out of range")
    return DensityVector(
        "unlabeled", level, tuple(p2(h1, h2, H0) for H0 in basis(level))
    )


def lift(v: DensityVector, level: int) -> DensityVector:
    """Re-express a vector one or more levels up (the kernel relation)."""
    if v.kind != "unlabeled" or level < v.level:
        raise ValueError("lift applies to unlabeled vectors, upward")
    lower = basis(v.level)
    upper = basis(level)
    coords = tuple(
        sum((c * p(H, G) for H, c in zip(lower, v.coords)), start=Fraction(0))
        for G in upper
    )
    return DensityVector("unlabeled", level, coords)


# ---------------------------------------------------------------------------
# Labeled layer: flags over a type sigma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Flag:
    """A graph with an ordered embedding of a type: roots[i] hosts label i."""

    graph: SmallGraph
    roots: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("root vertices must be distinct")
        if any(r < 0 or r >= self.graph.n for r in self.roots):
            raise ValueError("root out of range")

    @property
    def sigma(self) -> SmallGraph:
        return self.graph.induced(self.roots)

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if v not in self.roots)

    def require_type(self, sigma: SmallGraph):
        if self.sigma != sigma:
            raise ValueError("flag roots do not induce the expected type")

    @property
    def key(self) -> tuple[int, int, int]:
        return flag_key(self)

    def __str__(self):
        return f"{format_graph(self.graph)}|roots={','.join(map(str, self.roots))}"


def _encode_order(g: SmallGraph, order) -> int:
    code = 0
    for k in range(1, len(order)):
        row = g.rows[order[k]]
        for j in range(k):
            code = code << 1 | (row >> order[j] & 1)
    return code


@lru_cache(maxsize=None)
def flag_key(f: Flag) -> tuple[int, int, int]:
    """Canonical key under label-preserving isomorphism (roots pinned in order)."""
    best = min(
        _encode_order(f.graph, list(f.roots) + list(p))
        for p in itertools.permutations(f.free)
    )
    return (f.graph.n, len(f.roots), best)


def flag_restrict(f0: Flag, free_subset) -> Flag:
    """Sub-flag induced by the roots plus the given free vertices."""
    vs = list(f0.roots) + sorted(free_subset)
    return Flag(f0.graph.induced(vs), tuple(range(len(f0.roots))))


@lru_cache(maxsize=None)
def flag_basis(sigma: SmallGraph, size: int) -> tuple[Flag, ...]:
    """All flags of the given type on ``size`` vertices, in canonical key order."""
    if not sigma.n <= size <= MAX_LABELED_SIZE:
        raise ValueError(f"flag size must satisfy |sigma| <= size <= {MAX_LABELED_SIZE}")
    k = sigma.n
    free_pairs = [
        (i, j) for j in range(size) for i in range(j) if not (i < k and j < k)
    ]
    seen: dict[tuple[int, int, int], Flag] = {}
    for mask in range(1 << len(free_pairs)):
        edges = list(sigma.edges())
        for bit, (i, j) in enumerate(free_pairs):
            if mask >> bit & 1:
                edges.append((i, j))
        rows = [0] * size
        for u, v in edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        fl = Flag(SmallGraph(size, tuple(rows)), tuple(range(k)))
        seen.setdefault(fl.key, fl)
    return tuple(seen[key] for key in sorted(seen))


def flag_p(f: Flag, f0: Flag) -> Fraction:
    """Probability that a random free-vertex extension of the roots gives f."""
    sigma = f.sigma
    f0.require_type(sigma)
    s = f.graph.n - sigma.n
    free = f0.free
    if s > len(free):
        raise ValueError("flag larger than host")
    key = f.key
    hits = sum(
        1
        for subset in itertools.combinations(free, s)
        if flag_restrict(f0, subset).key == key
    )
    return Fraction(hits, comb(len(free), s))


def flag_p2(f1: Flag, f2: Flag, f0: Flag) -> Fraction:
    """Probability that disjoint free samples (beyond the shared roots) give f1, f2."""
    sigma = f1.sigma
    f2.require_type(sigma)
    f0.require_type(sigma)
    s1 = f1.graph.n - sigma.n
    s2 = f2.graph.n - sigma.n
    free = f0.free
    if s1 + s2 > len(free):
        raise ValueError("samples exceed host size")
    k1, k2 = f1.key, f2.key
    hits = 0
    for v1 in itertools.combinations(free, s1):
        if flag_restrict(f0, v1).key != k1:
            continue
        rest = [v for v in free if v not in v1]
        for v2 in itertools.combinations(rest, s2):
            if flag_restrict(f0, v2).key == k2:
                hits += 1
    return Fraction(hits, comb(len(free), s1) * comb(len(free) - s1, s2))


def flag_product(f1: Flag, f2: Flag) -> DensityVector:
    """Expansion of the labeled product over the joint flag basis."""
    sigma = f1.sigma
    f2.require_type(sigma)
    size = f1.graph.n + f2.graph.n - sigma.n
    fb = flag_basis(sigma, size)
    coords = tuple(flag_p2(f1, f2, f0) for f0 in fb)
    return DensityVector(f"sigma:{format_graph(sigma)}", size, coords)


def flag_combination_square(sigma: SmallGraph, terms) -> DensityVector:
    """Square of a linear combination of equal-size flags of type sigma.

    ``terms`` is a sequence of (Flag, coefficient) pairs; coefficients may be
    rationals or polynomial ring elements.  The result lives on the flag
    basis of size 2*|flag| - |sigma|.
    """
    terms = list(terms)
    size = 2 * terms[0][0].graph.n - sigma.n
    fb = flag_basis(sigma, size)
    kind = f"sigma:{format_graph(sigma)}"
    coords: list = [Fraction(0)] * len(fb)
    for (fa, ca), (fb2, cb) in itertools.product(terms, repeat=2):
        vec = flag_product(fa, fb2)
        coords = [acc + ca * cb * q for acc, q in zip(coords, vec.coords)]
    return DensityVector(kind, size, tuple(coords))


def unlabel_factor(f: Flag) -> Fraction:
    """Probability that a random ordered injection of the type reproduces f.

    Counts ordered tuples of distinct vertices whose induced pattern matches
    the type labels and whose flag is label-isomorphic to f, over all ordered
    injections of |sigma| labels into the underlying graph.
    """
    sigma = f.sigma
    g = f.graph
    k = sigma.n
    key = f.key
    hits = 0
    for tup in itertools.permutations(range(g.n), k):
        if all(
            g.has_edge(tup[i], tup[j]) == sigma.has_edge(i, j)
            for i in range(k)
            for j in range(i + 1, k)
        ) and flag_key(Flag(g, tup)) == key:
            hits += 1
    return Fraction(hits, perm(g.n, k))


def unlabel(v: DensityVector, sigma: SmallGraph) -> DensityVector:
    """Average a flag vector into the unlabeled algebra.

    Linear: each basis flag F maps to unlabel_factor(F) times its underlying
    graph, expressed in the unlabeled basis of the same level.
    """
    fb = flag_basis(sigma, v.level)
    target = basis(v.level)
    index = {H.canonical_key: i for i, H in enumerate(target)}
    coords: list = [Fraction(0)] * len(target)
    for f, c in zip(fb, v.coords):
        if c == 0:
            continue
        i = index[f.graph.canonical_key]
        coords[i] = coords[i] + c * unlabel_factor(f)
    return DensityVector("unlabeled", v.level, tuple(coords))


def flag_vector(sigma: SmallGraph, size: int, terms) -> DensityVector:
    """Assemble a vector over flag_basis(sigma, size) from (Flag, coeff) pairs."""
    fb = flag_basis(sigma, size)
    index = {f.key: i for i, f in enumerate(fb)}
    coords: list = [Fraction(0)] * len(fb)
    for f, c in terms:
        f.require_type(sigma)
        coords[index[f.key]] = coords[index[f.key]] + c
    return DensityVector(f"sigma:{format_graph(sigma)}", size, tuple(coords))
