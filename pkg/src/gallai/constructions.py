"""Lower-bound witness colorings.

Each builder produces an edge coloring that avoids both a rainbow 4-edge
path and a monochromatic copy of some target family member; the dispatcher
``lower_bound_witness`` gathers every construction whose hypotheses match a
query, verifies each with the detectors, and returns the largest certified
one.  Constructions are referred to by their registry names (G1..G6,
F1..F13, TW-case-f).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Mapping

from gallai.detectors import find_mono_copy_in_color
from gallai.graphs import (
    FAMILY_PINEAPPLE,
    FAMILY_STAR_PLUS,
    ColoredComplete,
    TargetGraph,
    UnsupportedSizeError,
    pairs,
    target_properties,
)


@dataclass(frozen=True)
class Part:
    """One block of a blow-up: a monochromatic clique (``color``) or an
    explicitly colored clique (``inner``); size-1 parts need neither."""

    size: int
    color: int | None = None
    inner: ColoredComplete | None = None


@dataclass(frozen=True)
class BlowupSpec:
    """Parts plus the inter-part rule: a single dominant color, or explicit
    colors for every part pair given as (i, j, color) triples."""

    k: int
    parts: tuple[Part, ...]
    inter: int | tuple[tuple[int, int, int], ...] = 1


def _part_offsets(parts: tuple[Part, ...]) -> list[int]:
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + p.size)
    return offsets


def blowup(spec: BlowupSpec) -> ColoredComplete:
    """Expand a blow-up spec into a concrete coloring.

    The result must be exact for the declared k; a spec whose expansion
    misses a color is rejected.
    """
    if spec.k < 1:
        raise ValueError(f"need k >= 1, got k={spec.k}")
    if not spec.parts:
        raise ValueError("blow-up needs at least one part")
    num = len(spec.parts)
    for idx, part in enumerate(spec.parts):
        if part.size < 1:
            raise ValueError(f"part {idx} has size {part.size}, need >= 1")
        if part.size >= 2 and (part.color is None) == (part.inner is None):
            raise ValueError(f"part {idx} needs exactly one of color or inner coloring")
        if part.color is not None and not 1 <= part.color <= spec.k:
            raise ValueError(f"part {idx} color {part.color} outside 1..{spec.k}")
        if part.inner is not None:
            if part.inner.n != part.size:
                raise ValueError(
                    f"part {idx} inner coloring has order {part.inner.n}, expected {part.size}"
                )
            bad = [c for c in part.inner.used_colors if not 1 <= c <= spec.k]
            if bad:
                raise ValueError(f"part {idx} inner colors {bad} outside 1..{spec.k}")

    if isinstance(spec.inter, int):
        if not 1 <= spec.inter <= spec.k:
            raise ValueError(f"inter color {spec.inter} outside 1..{spec.k}")
        inter = {(i, j): spec.inter for i, j in pairs(num)}
    else:
        inter = {}
        for i, j, col in spec.inter:
            if i > j:
                i, j = j, i
            if not 1 <= col <= spec.k:
                raise ValueError(f"inter color {col} outside 1..{spec.k}")
            if (i, j) in inter:
                raise ValueError(f"part pair ({i}, {j}) assigned twice")
            inter[(i, j)] = col
        missing = [e for e in pairs(num) if e not in inter]
        if missing:
            raise ValueError(f"inter rule misses part pairs {missing}")

    offsets = _part_offsets(spec.parts)
    n = offsets[-1]
    triples: list[tuple[int, int, int]] = []
    for idx, part in enumerate(spec.parts):
        base = offsets[idx]
        if part.size < 2:
            continue
        if part.color is not None:
            for i, j in pairs(part.size):
                triples.append((base + i, base + j, part.color))
        else:
            assert part.inner is not None
            for (i, j), col in zip(pairs(part.size), part.inner.colors):
                triples.append((base + i, base + j, col))
    for (pi, pj), col in inter.items():
        for u in range(offsets[pi], offsets[pi + 1]):
            for w in range(offsets[pj], offsets[pj + 1]):
                triples.append((u, w, col))
    c = ColoredComplete.from_edge_triples(n, spec.k, triples)
    if not c.exact:
        missing_colors = sorted(set(range(1, spec.k + 1)) - c.used_colors)
        raise ValueError(f"blow-up is not exact: colors {missing_colors} unused")
    return c


def star_augmented(
    base_order: int, base_color: int, spoke_colors: list[int]
) -> ColoredComplete:
    """A monochromatic K_base plus one new vertex whose i-th edge back into
    the base is colored spoke_colors[i].  Palette size is the max color used."""
    if base_order < 1:
        raise ValueError(f"need base_order >= 1, got {base_order}")
    if len(spoke_colors) != base_order:
        raise ValueError(
            f"need {base_order} spoke colors, got {len(spoke_colors)}"
        )
    if base_color < 1 or any(col < 1 for col in spoke_colors):
        raise ValueError("colors must be >= 1")
    k = max([base_color] + list(spoke_colors))
    apex = base_order
    triples = [(i, j, base_color) for i, j in pairs(base_order)]
    triples += [(i, apex, spoke_colors[i]) for i in range(base_order)]
    return ColoredComplete.from_edge_triples(base_order + 1, k, triples)


_PENTAGON = ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))


def pentagon_blowup(t: int) -> ColoredComplete:
    """Five order-(t-1) cliques in color 1, joined by a 2-colored reduced K5
    whose color classes are a 5-cycle and its complement.  Declared with 3
    colors; for t=2 the parts are single vertices and color 1 is unused."""
    if t < 2:
        raise ValueError(f"need t >= 2, got t={t}")
    inter = tuple(
        (i, j, 2 if (i, j) in _PENTAGON else 3) for i, j in pairs(5)
    )
    if t == 2:
        triples = [(i, j, col) for i, j, col in inter]
        return ColoredComplete.from_edge_triples(5, 3, triples)
    parts = tuple(Part(t - 1, color=1) for _ in range(5))
    return blowup(BlowupSpec(k=3, parts=parts, inter=inter))


def doubling(base: ColoredComplete) -> ColoredComplete:
    """Two copies of a {1,2}-colored graph with all cross edges in color 3."""
    if not base.used_colors <= {1, 2}:
        raise ValueError(f"doubling base must use colors within {{1, 2}}, got {sorted(base.used_colors)}")
    b = base.n
    triples: list[tuple[int, int, int]] = []
    for (i, j), col in zip(pairs(b), base.colors):
        triples.append((i, j, col))
        triples.append((b + i, b + j, col))
    for i in range(b):
        for j in range(b):
            triples.append((i, b + j, 3))
    return ColoredComplete.from_edge_triples(2 * b, 3, triples)


_SPORADIC: dict[str, tuple[int, int, tuple[tuple[int, int, int], ...]]] = {
    "G1": (4, 5, ((0, 1, 1), (2, 3, 1), (0, 2, 2), (0, 3, 3), (1, 2, 4), (1, 3, 5))),
    "G2": (4, 6, ((0, 1, 1), (2, 3, 2), (0, 2, 3), (0, 3, 4), (1, 2, 5), (1, 3, 6))),
    "F3": (
        5,
        4,
        (
            (0, 3, 1), (0, 4, 1), (1, 2, 1),
            (0, 2, 2), (1, 3, 2), (1, 4, 2),
            (0, 1, 3), (2, 3, 3), (2, 4, 3),
            (3, 4, 4),
        ),
    ),
    "F9": (4, 5, ((1, 2, 1), (1, 3, 1), (0, 1, 2), (0, 2, 3), (0, 3, 4), (2, 3, 5))),
    "F10": (4, 6, ((1, 2, 1), (0, 1, 2), (0, 2, 3), (0, 3, 4), (2, 3, 5), (1, 3, 6))),
}
_SPORADIC["TW-case-f"] = _SPORADIC["F3"]


def sporadic(name: str) -> ColoredComplete:
    """One of the fixed small witness colorings, by registry name."""
    if name not in _SPORADIC:
        raise KeyError(f"unknown sporadic construction {name!r}")
    n, k, triples = _SPORADIC[name]
    return ColoredComplete.from_edge_triples(n, k, triples)


def _circulant13(diffs: set[int]) -> ColoredComplete:
    triples = []
    for i, j in pairs(13):
        d = (j - i) % 13
        col = 1 if (d in diffs or (13 - d) in diffs) else 2
        triples.append((i, j, col))
    return ColoredComplete.from_edge_triples(13, 2, triples)


def _r35_ok(c: ColoredComplete) -> bool:
    return (
        find_mono_copy_in_color(c, TargetGraph.complete(3), 1) is None
        and find_mono_copy_in_color(c, TargetGraph.complete(5), 2) is None
    )


def r35_witness() -> ColoredComplete:
    """A 2-coloring of K13 whose color-1 graph is triangle-free and whose
    color-2 graph has no K5.  The cyclic graph on Z13 with color 1 on
    differences {1, 5} is tried first and machine-verified; if that ever
    failed, all 64 cyclic difference sets are searched."""
    c = _circulant13({1, 5})
    if _r35_ok(c):
        return c
    for bits in range(1, 64):
        diffs = {d + 1 for d in range(6) if bits >> d & 1}
        c = _circulant13(diffs)
        if _r35_ok(c):
            return c
    raise RuntimeError("no cyclic 13-vertex witness found; detectors are inconsistent")


def _balanced_counts(total: int, groups: int) -> list[int]:
    """Split total into the given number of positive group sizes, larger
    groups first (the +1 remainders go to the lowest-indexed groups)."""
    if groups < 1 or total < groups:
        raise ValueError(f"cannot split {total} into {groups} positive groups")
    base, rem = divmod(total, groups)
    return [base + 1] * rem + [base] * (groups - rem)


def g1() -> ColoredComplete:
    return sporadic("G1")


def g2() -> ColoredComplete:
    return sporadic("G2")


def g3(t: int) -> ColoredComplete:
    """K_{t-1} in color 1 plus an apex whose spokes use colors 2..t."""
    if t < 3:
        raise ValueError(f"need t >= 3, got t={t}")
    return star_augmented(t - 1, 1, list(range(2, t + 1)))


def g4(a: int, t: int, k: int) -> ColoredComplete:
    """a-1 cliques of order t-1; their inner colors split the palette 2..k
    as evenly as possible; everything between parts is color 1."""
    if a < 3:
        raise ValueError(f"need a >= 3, got a={a}")
    if t < 3:
        raise ValueError(f"need t >= 3, got t={t}")
    if not 2 <= k <= a:
        raise ValueError(f"need 2 <= k <= a, got k={k}, a={a}")
    counts = _balanced_counts(a - 1, k - 1)
    parts = []
    for color, m in zip(range(2, k + 1), counts):
        parts.extend(Part(t - 1, color=color) for _ in range(m))
    return blowup(BlowupSpec(k=k, parts=tuple(parts), inter=1))


def g5(t: int, k: int) -> ColoredComplete:
    """K_{t-1} in color 1 plus an apex whose t-1 spokes are split as evenly
    as possible over colors 2..k."""
    if t < 3:
        raise ValueError(f"need t >= 3, got t={t}")
    if not 2 <= k <= t:
        raise ValueError(f"need 2 <= k <= t, got k={k}, t={t}")
    counts = _balanced_counts(t - 1, k - 1)
    spokes: list[int] = []
    for color, m in zip(range(2, k + 1), counts):
        spokes.extend([color] * m)
    return star_augmented(t - 1, 1, spokes)


def g6(max_degree: int, k: int) -> ColoredComplete:
    """k-1 cliques with inner colors 2..k and inter color 1, sized so the
    order is max_degree + p - 1 where max_degree - 1 = p(k-2) + q."""
    if k < 3:
        raise ValueError(f"need k >= 3, got k={k}")
    if max_degree < 2:
        raise ValueError(f"need max_degree >= 2, got {max_degree}")
    p, q = divmod(max_degree - 1, k - 2)
    # some part has exactly p vertices, and exactness needs an edge in it
    if p < 2:
        raise ValueError(f"degenerate split: max_degree={max_degree} under k={k}")
    sizes = [p + 1] * q + [p] * (k - 1 - q)
    parts = tuple(Part(s, color=color) for s, color in zip(sizes, range(2, k + 1)))
    return blowup(BlowupSpec(k=k, parts=parts, inter=1))


def f1(t: int) -> ColoredComplete:
    """Three cliques in colors 2, 3, 4 (the first enlarged when t is odd),
    inter color 1; order t + p - 2 where (p, q) = divmod(t-2, 2)."""
    if t < 6:
        raise ValueError(f"need t >= 6, got t={t}")
    p, q = divmod(t - 2, 2)
    parts = (Part(p + q, color=2), Part(p, color=3), Part(p, color=4))
    return blowup(BlowupSpec(k=4, parts=parts, inter=1))


def f2(t: int) -> ColoredComplete:
    """The 4-color apex construction: g5 with k=4."""
    return g5(t, 4)


def f3() -> ColoredComplete:
    return sporadic("F3")


def f4(t: int) -> ColoredComplete:
    """Odd t: cliques of orders (t-1)/2, (t-3)/2, (t-3)/2 in colors 2, 3, 4,
    inter color 1; order (3t-7)/2."""
    if t < 7 or t % 2 == 0:
        raise ValueError(f"need odd t >= 7, got t={t}")
    parts = (
        Part((t - 1) // 2, color=2),
        Part((t - 3) // 2, color=3),
        Part((t - 3) // 2, color=4),
    )
    return blowup(BlowupSpec(k=4, parts=parts, inter=1))


def f5(t: int, r: int) -> ColoredComplete:
    """K_{t-1} in color 2 plus two K_{r-1} in colors 3, 4, inter color 1;
    order t + 2r - 3."""
    if r < 3:
        raise ValueError(f"need r >= 3, got r={r}")
    if t < 2 * r + 1:
        raise ValueError(f"need t >= 2r + 1, got t={t}, r={r}")
    parts = (Part(t - 1, color=2), Part(r - 1, color=3), Part(r - 1, color=4))
    return blowup(BlowupSpec(k=4, parts=parts, inter=1))


def f6(t: int) -> ColoredComplete:
    """Even t: three cliques of order (t-2)/2 in colors 2, 3, 4, inter color
    1; order (3t-6)/2."""
    if t < 6 or t % 2 == 1:
        raise ValueError(f"need even t >= 6, got t={t}")
    parts = tuple(Part((t - 2) // 2, color=col) for col in (2, 3, 4))
    return blowup(BlowupSpec(k=4, parts=parts, inter=1))


def f7(t: int) -> ColoredComplete:
    return pentagon_blowup(t)


def f8(base: ColoredComplete) -> ColoredComplete:
    return doubling(base)


def f9() -> ColoredComplete:
    return sporadic("F9")


def f10() -> ColoredComplete:
    return sporadic("F10")


def f11() -> ColoredComplete:
    return star_augmented(4, 1, [2, 3, 4, 5])


def f12() -> ColoredComplete:
    """A 13-vertex 2-colored block (triangle-free color 1, K5-free color 2)
    plus two K5 in colors 3 and 4, inter color 1; order 23."""
    parts = (Part(13, inner=r35_witness()), Part(5, color=3), Part(5, color=4))
    return blowup(BlowupSpec(k=4, parts=parts, inter=1))


def f13() -> ColoredComplete:
    """As f12 with K6 blocks; order 25."""
    parts = (Part(13, inner=r35_witness()), Part(6, color=3), Part(6, color=4))
    return blowup(BlowupSpec(k=4, parts=parts, inter=1))


BUILDERS: dict[str, tuple[Callable[..., ColoredComplete], tuple[str, ...]]] = {
    "G1": (g1, ()),
    "G2": (g2, ()),
    "G3": (g3, ("t",)),
    "G4": (g4, ("a", "t", "k")),
    "G5": (g5, ("t", "k")),
    "G6": (g6, ("max_degree", "k")),
    "F1": (f1, ("t",)),
    "F2": (f2, ("t",)),
    "F3": (f3, ()),
    "F4": (f4, ("t",)),
    "F5": (f5, ("t", "r")),
    "F6": (f6, ("t",)),
    "F7": (f7, ("t",)),
    "F8": (lambda: f8(r35_witness()), ()),
    "F9": (f9, ()),
    "F10": (f10, ()),
    "F11": (f11, ()),
    "F12": (f12, ()),
    "F13": (f13, ()),
    "TW-case-f": (lambda: sporadic("TW-case-f"), ()),
}


def build_named(name: str, params: Mapping[str, int]) -> ColoredComplete:
    """Build a registered construction from CLI-style parameters."""
    if name not in BUILDERS:
        raise KeyError(f"unknown construction {name!r}")
    fn, needed = BUILDERS[name]
    missing = [p for p in needed if p not in params]
    if missing:
        raise ValueError(f"construction {name} needs parameters {missing}")
    extra = [p for p in params if p not in needed]
    if extra:
        raise ValueError(f"construction {name} does not take parameters {extra}")
    return fn(**{p: params[p] for p in needed})


_GRID: tuple[dict, ...] | None = None


def construction_grid() -> tuple[dict, ...]:
    """The shipped parameter grid: for each row, building ``name`` with
    ``params`` must give an exact coloring of the stated ``order`` that a
    witness check against ``target`` accepts."""
    global _GRID
    if _GRID is None:
        text = resources.files("gallai").joinpath("data/construction_grids.json").read_text()
        _GRID = tuple(json.loads(text))
    return _GRID


def lower_bound_witness(H: TargetGraph, k: int):
    """Largest certified witness coloring for (H, k) among the constructions
    whose hypotheses cover the query; None when nothing applies or survives
    verification.  Returns a WitnessCertificate."""
    from gallai.search import WitnessFailure, verify_witness

    props = target_properties(H)
    t = H.order
    a = props.clique_number
    delta = props.max_degree

    cands: list[tuple[str, ColoredComplete]] = []

    def add(name: str, fn: Callable[[], ColoredComplete]) -> None:
        try:
            cands.append((name, fn()))
        except (ValueError, UnsupportedSizeError):
            pass

    if k == 5 and k >= t + 1 and t >= 3:
        add("G1", g1)
    if k == 6 and k >= t + 1 and t >= 3:
        add("G2", g2)
    if k == t:
        add("G3", lambda: g3(t))
    if 4 <= k <= a and a >= 3:
        add("G4", lambda: g4(a, t, k))
    if 3 <= k <= t:
        add("G5", lambda: g5(t, k))
    if k >= 4 and delta >= 2:
        add("G6", lambda: g6(delta, k))
    if H.family == FAMILY_STAR_PLUS and k == 4:
        r = H.r
        assert r is not None
        if r in (1, 2) and t >= 6:
            add("F1", lambda: f1(t))
            add("F2", lambda: f2(t))
        if r >= 3:
            if t % 2 == 1:
                add("F4", lambda: f4(t))
            else:
                add("F6", lambda: f6(t))
            add("F5", lambda: f5(t, r))
    if k == 4:
        add("F3", f3)
    if k == 3 and t >= 3:
        add("F7", lambda: f7(t))
    if k == 5:
        add("F9", f9)
        add("F11", f11)
    if k == 6:
        add("F10", f10)
    if H.family == FAMILY_PINEAPPLE and k == 4:
        if (t, H.omega) == (6, 5):
            add("F12", f12)
        if (t, H.omega) == (7, 5):
            add("F13", f13)

    for name, coloring in sorted(cands, key=lambda item: (-item[1].n, item[0])):
        try:
            return verify_witness(coloring, H, label=name)
        except WitnessFailure:
            continue
    return None
