"""Presence tests for rainbow paths and monochromatic target copies.

Both detectors are exhaustive and deterministic: hosts are scanned in
ascending vertex order, colors in ascending order, and the first embedding
found is returned.  Every returned embedding is re-checked against the host
before it leaves this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from gallai.graphs import (
    FAMILY_COMPLETE,
    FAMILY_PINEAPPLE,
    FAMILY_STAR_PLUS,
    ColoredComplete,
    TargetGraph,
    UnsupportedSizeError,
)

RAINBOW_PATH = "rainbow_path"
MONO_COPY = "mono_copy"

_MAX_MATCHING_VERTICES = 12


@dataclass(frozen=True)
class Embedding:
    """A concrete copy of a pattern inside a host coloring.

    ``vertices`` realizes the pattern: for monochromatic copies it lists the
    host images of target vertices 0..t-1 in target-label order; for rainbow
    paths it lists the path in traversal order.  ``edges`` are the host edges
    used, and ``color`` is set for monochromatic findings only.
    """

    kind: str
    vertices: tuple[int, ...]
    color: int | None
    edges: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "color": self.color,
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> Embedding:
        return cls(
            kind=data["kind"],
            vertices=tuple(int(v) for v in data["vertices"]),
            color=None if data["color"] is None else int(data["color"]),
            edges=tuple((int(e[0]), int(e[1])) for e in data["edges"]),
        )


def check_rainbow_embedding(c: ColoredComplete, emb: Embedding) -> bool:
    """True iff emb is a simple path in c whose edge colors are all distinct."""
    vs = emb.vertices
    if len(set(vs)) != len(vs) or len(vs) < 2:
        return False
    cols = [c.color_of(u, w) for u, w in zip(vs, vs[1:])]
    if len(set(cols)) != len(cols):
        return False
    expect = tuple(tuple(sorted(e)) for e in zip(vs, vs[1:]))
    return tuple(tuple(sorted(e)) for e in emb.edges) == expect


def check_mono_embedding(c: ColoredComplete, H: TargetGraph, emb: Embedding) -> bool:
    """True iff emb maps every edge of H onto a host edge of emb.color."""
    vs = emb.vertices
    if len(vs) != H.order or len(set(vs)) != H.order:
        return False
    if emb.color is None or not 1 <= emb.color <= c.k:
        return False
    mapped = []
    for i, j in H.edges():
        u, w = vs[i], vs[j]
        if c.color_of(u, w) != emb.color:
            return False
        mapped.append(tuple(sorted((u, w))))
    return tuple(mapped) == tuple(tuple(sorted(e)) for e in emb.edges)


def _checked_rainbow(c: ColoredComplete, emb: Embedding) -> Embedding:
    if not check_rainbow_embedding(c, emb):
        raise RuntimeError(f"rainbow embedding failed re-verification: {emb}")
    return emb


def _checked_mono(c: ColoredComplete, H: TargetGraph, emb: Embedding) -> Embedding:
    if not check_mono_embedding(c, H, emb):
        raise RuntimeError(f"monochromatic embedding failed re-verification: {emb}")
    return emb


def iter_rainbow_paths(c: ColoredComplete, m: int) -> Iterator[tuple[int, ...]]:
    """All simple paths with m edges and m distinct edge colors, as vertex
    tuples, in ascending DFS order.  Each undirected path appears once, in
    the orientation whose first endpoint is the smaller."""
    if not 1 <= m <= c.n - 1:
        raise ValueError(f"path edge count must satisfy 1 <= m <= n-1, got m={m}, n={c.n}")
    if len(c.used_colors) < m:
        return
    n = c.n
    path = [0] * (m + 1)

    def dfs(depth: int, used: int, colors_seen: int) -> Iterator[tuple[int, ...]]:
        if depth == m + 1:
            if path[0] < path[m]:
                yield tuple(path)
            return
        last = path[depth - 1]
        for w in range(n):
            if used >> w & 1:
                continue
            col = c.color_of(last, w)
            if colors_seen >> col & 1:
                continue
            path[depth] = w
            yield from dfs(depth + 1, used | 1 << w, colors_seen | 1 << col)

    for start in range(n):
        path[0] = start
        yield from dfs(1, 1 << start, 0)


def find_rainbow_path(c: ColoredComplete, m: int) -> Embedding | None:
    """First rainbow path with m edges, or None if none exists."""
    for vs in iter_rainbow_paths(c, m):
        edges = tuple(tuple(sorted(e)) for e in zip(vs, vs[1:]))
        return _checked_rainbow(
            c, Embedding(kind=RAINBOW_PATH, vertices=vs, color=None, edges=edges)
        )
    return None


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _find_clique(masks: tuple[int, ...], start_mask: int, size: int) -> list[int] | None:
    """A clique of the given size inside the vertex set start_mask, where
    masks[v] is v's neighbor bitmask; lexicographically first, or None."""
    out: list[int] = []

    def grow(cand: int) -> bool:
        if len(out) == size:
            return True
        if len(out) + cand.bit_count() < size:
            return False
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            out.append(v)
            if grow(c & masks[v]):
                return True
            out.pop()
            if len(out) + c.bit_count() < size:
                return False
        return False

    if size == 0:
        return []
    return out if grow(start_mask) else None


def _matching_with_pairs(
    masks: tuple[int, ...], allowed: int, r: int
) -> list[tuple[int, int]] | None:
    """A matching of exactly r edges inside the vertex set ``allowed`` of the
    graph given by neighbor bitmasks, found by exact branching, or None."""
    if r == 0:
        return []
    a = allowed
    while a:
        u = (a & -a).bit_length() - 1
        a &= a - 1
        if masks[u] & allowed & ~(1 << u):
            break
    else:
        return None
    for w in _iter_bits(masks[u] & allowed):
        rest = _matching_with_pairs(masks, allowed & ~(1 << u) & ~(1 << w), r - 1)
        if rest is not None:
            return [(u, w)] + rest
    # leave u unmatched
    return _matching_with_pairs(masks, allowed & ~(1 << u), r)


def max_matching(
    c: ColoredComplete, color: int, vertices: int | Iterable[int] | None = None
) -> int:
    """Exact maximum matching size of the color class induced on the given
    vertices (a bitmask or an iterable of vertex ids; all vertices when
    omitted).  Branch-and-bound over at most 12 vertices."""
    if vertices is None:
        mask = (1 << c.n) - 1
    elif isinstance(vertices, int):
        mask = vertices
    else:
        mask = 0
        for v in vertices:
            mask |= 1 << v
    if mask.bit_count() > _MAX_MATCHING_VERTICES:
        raise UnsupportedSizeError(
            f"exact matching is limited to {_MAX_MATCHING_VERTICES} vertices, "
            f"got {mask.bit_count()}"
        )
    masks = c.adj[color]

    def rec(avail: int) -> int:
        a = avail
        while a:
            u = (a & -a).bit_length() - 1
            a &= a - 1
            if masks[u] & avail & ~(1 << u):
                break
        else:
            return 0
        best = rec(avail & ~(1 << u))
        for w in _iter_bits(masks[u] & avail):
            best = max(best, 1 + rec(avail & ~(1 << u) & ~(1 << w)))
        return best

    return rec(mask)


def _embedding_from_assignment(
    c: ColoredComplete, H: TargetGraph, color: int, assign: list[int]
) -> Embedding:
    edges = tuple(tuple(sorted((assign[i], assign[j]))) for i, j in H.edges())
    return _checked_mono(
        c, H, Embedding(kind=MONO_COPY, vertices=tuple(assign), color=color, edges=edges)
    )


def find_mono_copy_generic(
    c: ColoredComplete, H: TargetGraph, color: int
) -> Embedding | None:
    """Backtracking embedding of H into one color class, highest-degree
    target vertices first.  Works for every family; the fast paths must
    agree with it."""
    t = H.order
    if t > c.n:
        return None
    hmasks = H.adjacency_masks()
    order = sorted(range(t), key=lambda v: (-hmasks[v].bit_count(), v))
    cmasks = c.adj[color]
    assign = [-1] * t
    full = (1 << c.n) - 1

    def rec(pos: int, used: int) -> bool:
        if pos == t:
            return True
        hv = order[pos]
        cand = full & ~used
        for q in range(pos):
            hu = order[q]
            if hmasks[hv] >> hu & 1:
                cand &= cmasks[assign[hu]]
                if not cand:
                    return False
        for w in _iter_bits(cand):
            assign[hv] = w
            if rec(pos + 1, used | 1 << w):
                return True
        assign[hv] = -1
        return False

    if rec(0, 0):
        return _embedding_from_assignment(c, H, color, assign)
    return None


def _find_star_plus(c: ColoredComplete, H: TargetGraph, color: int) -> Embedding | None:
    t, r = H.t, H.r
    assert r is not None
    masks = c.adj[color]
    for v in range(c.n):
        nb = masks[v]
        if nb.bit_count() < t - 1:
            continue
        pairs_found = _matching_with_pairs(masks, nb, r)
        if pairs_found is None:
            continue
        matched = [x for pair in pairs_found for x in pair]
        rest = [w for w in _iter_bits(nb) if w not in matched]
        assign = [v] + matched + rest[: t - 1 - 2 * r]
        return _embedding_from_assignment(c, H, color, assign)
    return None


def _find_pineapple(c: ColoredComplete, H: TargetGraph, color: int) -> Embedding | None:
    t, omega = H.t, H.omega
    assert omega is not None
    masks = c.adj[color]
    for v in range(c.n):
        nb = masks[v]
        if nb.bit_count() < t - 1:
            continue
        clique = _find_clique(masks, nb, omega - 1)
        if clique is None:
            continue
        rest = [w for w in _iter_bits(nb) if w not in clique]
        assign = [v] + clique + rest[: t - omega]
        return _embedding_from_assignment(c, H, color, assign)
    return None


def _find_complete(c: ColoredComplete, H: TargetGraph, color: int) -> Embedding | None:
    masks = c.adj[color]
    clique = _find_clique(masks, (1 << c.n) - 1, H.t)
    if clique is None:
        return None
    return _embedding_from_assignment(c, H, color, clique)


def find_mono_copy_in_color(
    c: ColoredComplete, H: TargetGraph, color: int
) -> Embedding | None:
    """A copy of H inside the single color class ``color``, or None."""
    if not 1 <= color <= c.k:
        raise ValueError(f"color {color} outside 1..{c.k}")
    if H.order > c.n:
        return None
    if H.num_edges == 0:
        assign = list(range(H.order))
        return _embedding_from_assignment(c, H, color, assign)
    if H.family == FAMILY_COMPLETE:
        return _find_complete(c, H, color)
    if H.family == FAMILY_STAR_PLUS:
        return _find_star_plus(c, H, color)
    if H.family == FAMILY_PINEAPPLE:
        return _find_pineapple(c, H, color)
    return find_mono_copy_generic(c, H, color)


def find_mono_copy(c: ColoredComplete, H: TargetGraph) -> Embedding | None:
    """A monochromatic copy of H in any color class, lowest color first."""
    if H.order > c.n:
        return None
    for color in range(1, c.k + 1):
        emb = find_mono_copy_in_color(c, H, color)
        if emb is not None:
            return emb
    return None
