"""Edge-colored complete graphs and the target graphs searched for inside them.

Vertices are 0..n-1.  The C(n, 2) edges of K_n are kept in lexicographic
order of their endpoint pairs, so an edge coloring is a flat tuple of ints.
Colors are 1-based; a coloring with palette size k is *exact* when every
color in 1..k actually appears on some edge.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class UnsupportedSizeError(ValueError):
    """Raised when an input is larger than an exact routine is built to handle."""


def edge_count(n: int) -> int:
    """Number of edges of K_n."""
    return n * (n - 1) // 2


def edge_index(i: int, j: int, n: int) -> int:
    """Position of edge ij in the lexicographic pair ordering of K_n."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pairs(n: int) -> Iterator[tuple[int, int]]:
    """All vertex pairs of K_n, in the order used by ``edge_index``."""
    return combinations(range(n), 2)


class ColoredComplete:
    """An immutable edge coloring of K_n with colors drawn from 1..k.

    ``colors[edge_index(i, j, n)]`` is the color of edge ij.  Per-color
    adjacency is precomputed as vertex bitmasks (``adj[c][v]`` is the mask
    of color-c neighbors of v) so neighborhood queries are O(1).
    """

    __slots__ = ("n", "k", "colors", "adj", "_hash")

    def __init__(self, n: int, k: int, colors: Sequence[int]):
        if n < 1:
            raise ValueError(f"need n >= 1, got n={n}")
        if k < 1:
            raise ValueError(f"need k >= 1, got k={k}")
        colors = tuple(colors)
        if len(colors) != edge_count(n):
            raise ValueError(
                f"expected {edge_count(n)} edge colors for n={n}, got {len(colors)}"
            )
        adj = [[0] * n for _ in range(k + 1)]
        idx = 0
        for i in range(n):
            for j in range(i + 1, n):
                c = colors[idx]
                idx += 1
                if not 1 <= c <= k:
                    raise ValueError(f"edge color {c} outside 1..{k}")
                adj[c][i] |= 1 << j
                adj[c][j] |= 1 << i
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "adj", tuple(tuple(row) for row in adj))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ColoredComplete is immutable")

    @classmethod
    def constant(cls, n: int, k: int, color: int = 1) -> ColoredComplete:
        """The coloring giving every edge the same color."""
        return cls(n, k, [color] * edge_count(n))

    @classmethod
    def from_edge_triples(
        cls, n: int, k: int, triples: Iterable[tuple[int, int, int]]
    ) -> ColoredComplete:
        """Build from (i, j, color) triples; every edge must appear exactly once."""
        m = edge_count(n)
        cols: list[int] = [0] * m
        for i, j, c in triples:
            if i > j:
                i, j = j, i
            idx = edge_index(i, j, n)
            if cols[idx] != 0:
                raise ValueError(f"edge ({i}, {j}) assigned twice")
            cols[idx] = c
        if 0 in cols:
            missing = next(e for e, c in zip(pairs(n), cols) if c == 0)
            raise ValueError(f"edge {missing} has no color")
        return cls(n, k, cols)

    @property
    def used_colors(self) -> frozenset[int]:
        return frozenset(self.colors)

    @property
    def exact(self) -> bool:
        """True when all k palette colors appear."""
        return len(self.used_colors) == self.k

    def color_of(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.colors[edge_index(i, j, self.n)]

    def recolored(self, i: int, j: int, color: int) -> ColoredComplete:
        """A copy with edge ij recolored; the original is left untouched."""
        if not 1 <= color <= self.k:
            raise ValueError(f"edge color {color} outside 1..{self.k}")
        if i > j:
            i, j = j, i
        cols = list(self.colors)
        cols[edge_index(i, j, self.n)] = color
        return ColoredComplete(self.n, self.k, cols)

    def neighbors(self, v: int, color: int) -> int:
        """Bitmask of the color-`color` neighbors of v."""
        return self.adj[color][v]

    def degree(self, v: int, color: int) -> int:
        return self.adj[color][v].bit_count()

    def vertices_incident(self, color: int) -> frozenset[int]:
        """Vertices touched by at least one edge of the given color."""
        row = self.adj[color]
        return frozenset(v for v in range(self.n) if row[v])

    def edges_in_color(self, color: int) -> tuple[tuple[int, int], ...]:
        return tuple(e for e, c in zip(pairs(self.n), self.colors) if c == color)

    def color_class_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for c in self.colors:
            sizes[c] = sizes.get(c, 0) + 1
        return sizes

    def permuted(
        self, vperm: Sequence[int], cperm: Sequence[int] | None = None
    ) -> ColoredComplete:
        """Relabel vertices by ``vperm`` (old index -> new index) and, when
        given, colors by ``cperm`` (``cperm[c]`` is the new name of color c;
        index 0 is ignored)."""
        n = self.n
        out = [0] * edge_count(n)
        for (i, j), c in zip(pairs(n), self.colors):
            a, b = vperm[i], vperm[j]
            if a > b:
                a, b = b, a
            out[edge_index(a, b, n)] = c if cperm is None else cperm[c]
        return ColoredComplete(n, self.k, out)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "edges": [[i, j, c] for (i, j), c in zip(pairs(self.n), self.colors)],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> ColoredComplete:
        n = int(data["n"])
        k = int(data["k"])
        triples = []
        for entry in data["edges"]:
            i, j, c = (int(x) for x in entry)
            if i == j:
                raise ValueError(f"self-loop ({i}, {j}) is not an edge of K_n")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) outside vertex range 0..{n - 1}")
            triples.append((i, j, c))
        return cls.from_edge_triples(n, k, triples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredComplete):
            return NotImplemented
        return (self.n, self.k, self.colors) == (other.n, other.k, other.colors)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.k, self.colors)))
        return self._hash

    def __repr__(self) -> str:
        return f"ColoredComplete(n={self.n}, k={self.k}, colors={self.colors})"


FAMILY_COMPLETE = "complete"
FAMILY_STAR_PLUS = "star_plus"
FAMILY_PINEAPPLE = "pineapple"
FAMILY_COMPLETE_MINUS_MATCHING = "complete_minus_matching"
FAMILY_ARBITRARY = "arbitrary"

_ARBITRARY_MAX_ORDER = 12


@dataclass(frozen=True)
class TargetGraph:
    """A fixed small graph searched for as a monochromatic subgraph.

    Structured families keep their defining parameters, so rules keyed on a
    family stay literal even when two parameterizations happen to build
    isomorphic graphs (S_3^1 and K_3, say).  ``edge_list`` is populated only
    for the arbitrary family.
    """

    family: str
    t: int
    r: int | None = None
    omega: int | None = None
    edge_list: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def complete(cls, t: int) -> TargetGraph:
        """K_t."""
        if t < 2:
            raise ValueError(f"complete target needs t >= 2, got t={t}")
        return cls(FAMILY_COMPLETE, t)

    @classmethod
    def star_plus(cls, t: int, r: int) -> TargetGraph:
        """S_t^r: a star on t vertices plus r independent edges between leaves.

        Vertex 0 is the center, 1..t-1 the leaves, and the extra edges are
        (1,2), (3,4), ..., (2r-1, 2r); this forces t >= 2r + 1.
        """
        if r < 0:
            raise ValueError(f"star_plus needs r >= 0, got r={r}")
        if t < 2:
            raise ValueError(f"star_plus needs t >= 2, got t={t}")
        if t < 2 * r + 1:
            raise ValueError(f"star_plus needs t >= 2r + 1, got t={t}, r={r}")
        return cls(FAMILY_STAR_PLUS, t, r=r)

    @classmethod
    def pineapple(cls, t: int, omega: int) -> TargetGraph:
        """PA_{t,omega}: K_omega with t - omega pendant edges at one clique vertex.

        Vertices 0..omega-1 form the clique, vertex 0 carries the pendants
        omega..t-1.
        """
        if omega < 2:
            raise ValueError(f"pineapple needs omega >= 2, got omega={omega}")
        if t < omega + 1:
            raise ValueError(f"pineapple needs t >= omega + 1, got t={t}, omega={omega}")
        return cls(FAMILY_PINEAPPLE, t, omega=omega)

    @classmethod
    def complete_minus_matching(cls, t: int) -> TargetGraph:
        """K_t with a maximum matching removed: edges (0,1), (2,3), ... are dropped.

        For odd t the last vertex keeps full degree t - 1.
        """
        if t < 2:
            raise ValueError(f"complete_minus_matching needs t >= 2, got t={t}")
        return cls(FAMILY_COMPLETE_MINUS_MATCHING, t)

    @classmethod
    def arbitrary(cls, order: int, edges: Iterable[tuple[int, int]]) -> TargetGraph:
        """An explicit graph given by an edge list on vertices 0..order-1."""
        if order < 1:
            raise ValueError(f"arbitrary target needs order >= 1, got {order}")
        if order > _ARBITRARY_MAX_ORDER:
            raise UnsupportedSizeError(
                f"arbitrary targets are limited to order {_ARBITRARY_MAX_ORDER}, got {order}"
            )
        normalized: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if i > j:
                i, j = j, i
            if not (0 <= i and j < order):
                raise ValueError(f"edge ({i}, {j}) outside vertex range 0..{order - 1}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            normalized.append((i, j))
        return cls(FAMILY_ARBITRARY, order, edge_list=tuple(sorted(normalized)))

    @property
    def order(self) -> int:
        return self.t

    def edges(self) -> tuple[tuple[int, int], ...]:
        """The canonical edge list on vertices 0..t-1."""
        t = self.t
        if self.family == FAMILY_ARBITRARY:
            assert self.edge_list is not None
            return self.edge_list
        if self.family == FAMILY_COMPLETE:
            return tuple(pairs(t))
        if self.family == FAMILY_STAR_PLUS:
            assert self.r is not None
            spokes = tuple((0, i) for i in range(1, t))
            extra = tuple((2 * i + 1, 2 * i + 2) for i in range(self.r))
            return spokes + extra
        if self.family == FAMILY_PINEAPPLE:
            assert self.omega is not None
            clique = tuple(pairs(self.omega))
            pendants = tuple((0, j) for j in range(self.omega, t))
            return clique + pendants
        if self.family == FAMILY_COMPLETE_MINUS_MATCHING:
            removed = {(2 * i, 2 * i + 1) for i in range(t // 2)}
            return tuple(e for e in pairs(t) if e not in removed)
        raise ValueError(f"unknown family {self.family!r}")

    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks of the target graph."""
        masks = [0] * self.t
        for i, j in self.edges():
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    @property
    def is_complete(self) -> bool:
        """Structural completeness test: does every vertex pair carry an edge?"""
        return self.num_edges == edge_count(self.t)


@dataclass(frozen=True)
class TargetProperties:
    """Order, size, maximum degree, and clique number of a target graph."""

    order: int
    num_edges: int
    max_degree: int
    clique_number: int
    is_complete: bool


def _max_clique_size(masks: Sequence[int], order: int) -> int:
    best = 0

    def grow(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        c = cand
        while c:
            if size + c.bit_count() <= best:
                return
            v = (c & -c).bit_length() - 1
            c &= c - 1
            grow(size + 1, c & masks[v])

    grow(0, (1 << order) - 1)
    return best


def target_properties(H: TargetGraph) -> TargetProperties:
    """Closed-form parameters for the structured families, brute force otherwise."""
    t = H.order
    m = H.num_edges
    complete = H.is_complete
    if H.family == FAMILY_COMPLETE:
        return TargetProperties(t, m, t - 1, t, complete)
    if H.family == FAMILY_STAR_PLUS:
        assert H.r is not None
        a = 3 if H.r >= 1 else 2
        return TargetProperties(t, m, t - 1, a, complete)
    if H.family == FAMILY_PINEAPPLE:
        assert H.omega is not None
        return TargetProperties(t, m, t - 1, H.omega, complete)
    if H.family == FAMILY_COMPLETE_MINUS_MATCHING:
        # For odd t one vertex is untouched by the removed matching and keeps
        # degree t - 1; every matched vertex drops to t - 2.
        delta = t - 2 if t % 2 == 0 else t - 1
        return TargetProperties(t, m, delta, (t + 1) // 2, complete)
    if H.family == FAMILY_ARBITRARY:
        if t > _ARBITRARY_MAX_ORDER:
            raise UnsupportedSizeError(
                f"clique number by brute force is limited to order {_ARBITRARY_MAX_ORDER}"
            )
        masks = H.adjacency_masks()
        delta = max((mk.bit_count() for mk in masks), default=0)
        return TargetProperties(t, m, delta, _max_clique_size(masks, t), complete)
    raise ValueError(f"unknown family {H.family!r}")


_RE_COMPLETE_MINUS = re.compile(r"K(\d+)-M")
_RE_COMPLETE = re.compile(r"K(\d+)")
_RE_STAR_PLUS = re.compile(r"S(\d+)\^(\d+)")
_RE_PINEAPPLE = re.compile(r"PA(\d+),(\d+)")


def parse_hspec(text: str) -> TargetGraph:
    """Parse a target-graph spec string.

    Accepted forms: ``K<t>``, ``S<t>^<r>``, ``PA<t>,<omega>``, ``K<t>-M``,
    or inline JSON ``{"order": t, "edges": [[i, j], ...]}``.
    """
    s = text.strip()
    if s.startswith("{"):
        data = json.loads(s)
        edges = [(int(e[0]), int(e[1])) for e in data["edges"]]
        return TargetGraph.arbitrary(int(data["order"]), edges)
    if m := _RE_COMPLETE_MINUS.fullmatch(s):
        return TargetGraph.complete_minus_matching(int(m.group(1)))
    if m := _RE_COMPLETE.fullmatch(s):
        return TargetGraph.complete(int(m.group(1)))
    if m := _RE_STAR_PLUS.fullmatch(s):
        return TargetGraph.star_plus(int(m.group(1)), int(m.group(2)))
    if m := _RE_PINEAPPLE.fullmatch(s):
        return TargetGraph.pineapple(int(m.group(1)), int(m.group(2)))
    raise ValueError(f"cannot parse target graph spec {text!r}")


def render_hspec(H: TargetGraph) -> str:
    """Inverse of ``parse_hspec`` for the structured families; JSON otherwise."""
    if H.family == FAMILY_COMPLETE:
        return f"K{H.t}"
    if H.family == FAMILY_STAR_PLUS:
        return f"S{H.t}^{H.r}"
    if H.family == FAMILY_PINEAPPLE:
        return f"PA{H.t},{H.omega}"
    if H.family == FAMILY_COMPLETE_MINUS_MATCHING:
        return f"K{H.t}-M"
    return json.dumps(
        {"order": H.t, "edges": [list(e) for e in H.edges()]}, separators=(",", ":")
    )
