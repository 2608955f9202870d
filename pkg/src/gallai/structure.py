"""Structural classification of rainbow-path-free colorings.

A coloring of K_n (n >= 5) with no rainbow 4-edge path falls, after
renumbering colors, into at least one of six shapes:

  (a) at most three colors are used;
  (b) some color is dominant: the vertex sets touched by the other colors
      are pairwise disjoint;
  (c) all edges missing one vertex share a single color;
  (d) three vertices a, b, c with color classes {ab}, {ac}, and
      {bc} plus possibly more edges at a, everything else in one color;
  (e) four vertices a, b, c, d with classes {ab} (possibly plus cd),
      {ac, bd}, {ad, bc}, everything else in one color;
  (f) one sporadic coloring of K5.

``classify_p5free`` evaluates each shape independently and cross-checks the
combined answer against the rainbow detector at runtime.  The same shapes
drive ``enumerate_p5free``, which generates every exact k-coloring of K_n
without a rainbow 4-edge path, up to vertex-and-color isomorphism.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Callable, Iterable, Sequence, TypeVar

from gallai.canonical import (
    MODE_VERTEX_AND_COLOR,
    MODE_VERTEX_ONLY,
    canonical_form,
    coloring_from_key,
)
from gallai.constructions import sporadic
from gallai.detectors import Embedding, find_rainbow_path
from gallai.graphs import (
    ColoredComplete,
    UnsupportedSizeError,
    edge_count,
    edge_index,
    pairs,
)

MAX_ENUM_N = 9
MAX_ENUM_K = 12

_T = TypeVar("_T")
_U = TypeVar("_U")


class TheoremViolation(RuntimeError):
    """A structural guarantee failed on a concrete coloring; this signals a
    bug in a predicate or detector, never a property of the input."""


def resolve_threads(explicit: int | None = None) -> int:
    """Worker count: explicit argument, else GALLAI_THREADS, else cpu count."""
    if explicit is not None:
        if explicit < 1:
            raise ValueError(f"thread count must be >= 1, got {explicit}")
        return explicit
    env = os.environ.get("GALLAI_THREADS")
    if env:
        value = int(env)
        if value < 1:
            raise ValueError(f"GALLAI_THREADS must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


def parallel_map(
    fn: Callable[[_T], _U], items: Sequence[_T], threads: int
) -> list[_U]:
    """Order-preserving map, sequential for one worker.  Results never
    depend on the worker count."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class P4Report:
    """Outcome for the 2-edge-path-free structure check: ``case`` is "a"
    (at most two colors) or "b" (K4 in three perfect matchings); otherwise
    ``rainbow`` holds a rainbow 3-edge path."""

    case: str | None
    rainbow: Embedding | None


@dataclass(frozen=True)
class StructureReport:
    """All satisfied shapes among a-f with one witness each; ``rainbow``
    holds the rainbow 4-edge path exactly when no shape applies."""

    cases: frozenset[str]
    witnesses: dict
    rainbow: Embedding | None


def classify_p4free(c: ColoredComplete) -> P4Report:
    """Structure of colorings without a rainbow 3-edge path; raises
    TheoremViolation if neither shape applies yet no rainbow path exists."""
    if c.n < 4:
        raise ValueError(f"classification needs n >= 4, got n={c.n}")
    used = c.used_colors
    if len(used) <= 2:
        return P4Report(case="a", rainbow=None)
    if c.n == 4 and len(used) == 3:
        factors = [c.edges_in_color(col) for col in sorted(used)]
        if all(
            len(f) == 2 and len({v for e in f for v in e}) == 4 for f in factors
        ):
            return P4Report(case="b", rainbow=None)
    emb = find_rainbow_path(c, 3)
    if emb is None:
        raise TheoremViolation(
            f"no rainbow 3-edge path and no structure case in {c!r}"
        )
    return P4Report(case=None, rainbow=emb)


def _case_a(c: ColoredComplete):
    used = c.used_colors
    return len(used) if len(used) <= 3 else None


def _case_b(c: ColoredComplete):
    used = sorted(c.used_colors)
    if len(used) < 2:
        return None
    for dom in used:
        sets = {j: c.vertices_incident(j) for j in used if j != dom}
        total = sum(len(s) for s in sets.values())
        union: set[int] = set()
        for s in sets.values():
            union |= s
        if len(union) == total:
            return dom, sets
    return None


def _case_c(c: ColoredComplete):
    n = c.n
    edge_list = list(pairs(n))
    for v in range(n):
        rest = {col for (i, j), col in zip(edge_list, c.colors) if v not in (i, j)}
        if len(rest) == 1:
            return v, next(iter(rest))
    return None


def _color_classes(c: ColoredComplete) -> dict[int, tuple[tuple[int, int], ...]]:
    return {col: c.edges_in_color(col) for col in sorted(c.used_colors)}


def _case_d(c: ColoredComplete):
    classes = _color_classes(c)
    if len(classes) != 4:
        return None
    singles = [col for col, cl in classes.items() if len(cl) == 1]
    for colx, coly in permutations(singles, 2):
        (e1,) = classes[colx]
        (e2,) = classes[coly]
        shared = set(e1) & set(e2)
        if len(shared) != 1:
            continue
        a = shared.pop()
        b = next(v for v in e1 if v != a)
        cc = next(v for v in e2 if v != a)
        bc = tuple(sorted((b, cc)))
        for colz, cl in classes.items():
            if colz in (colx, coly):
                continue
            if bc not in cl:
                continue
            if all(e == bc or a in e for e in cl):
                return a, b, cc, frozenset(cl)
    return None


def _case_e(c: ColoredComplete):
    classes = {col: set(cl) for col, cl in _color_classes(c).items()}
    if len(classes) != 4:
        return None
    for quad in combinations(range(c.n), 4):
        q0, q1, q2, q3 = quad
        matchings = [
            {(q0, q1), (q2, q3)},
            {(q0, q2), (q1, q3)},
            {(q0, q3), (q1, q2)},
        ]
        exact = {
            i: col
            for i, m in enumerate(matchings)
            for col, cl in classes.items()
            if cl == m
        }
        for iz, mz in enumerate(matchings):
            others = [i for i in range(3) if i != iz]
            if not all(i in exact for i in others):
                continue
            taken = {exact[others[0]], exact[others[1]]}
            for col, cl in classes.items():
                if col in taken or not cl or not cl <= mz:
                    continue
                ordered = sorted(mz)
                if len(cl) == 1:
                    ab = next(iter(cl))
                    cd = next(e for e in ordered if e != ab)
                    cd_in = False
                else:
                    ab, cd = ordered
                    cd_in = True
                return ab[0], ab[1], cd[0], cd[1], cd_in
    return None


_CASE_F_CLASSES: tuple[tuple[tuple[int, int], ...], ...] = (
    ((0, 3), (0, 4), (1, 2)),
    ((0, 2), (1, 3), (1, 4)),
    ((0, 1), (2, 3), (2, 4)),
    ((3, 4),),
)


def _case_f(c: ColoredComplete):
    if c.n != 5 or len(c.used_colors) != 4:
        return None
    for perm in permutations(range(5)):
        assigned: list[int] = []
        ok = True
        for template_class in _CASE_F_CLASSES:
            cols = {c.color_of(perm[i], perm[j]) for i, j in template_class}
            if len(cols) != 1 or cols & set(assigned):
                ok = False
                break
            assigned.append(cols.pop())
        if ok:
            return tuple(perm)
    return None


def classify_p5free(c: ColoredComplete) -> StructureReport:
    """All satisfied shapes a-f with witnesses; empty exactly when the
    coloring has a rainbow 4-edge path (cross-checked, TheoremViolation on
    disagreement)."""
    if c.n < 5:
        raise ValueError(f"classification needs n >= 5, got n={c.n}")
    witnesses: dict = {}
    checks = {
        "a": _case_a,
        "b": _case_b,
        "c": _case_c,
        "d": _case_d,
        "e": _case_e,
        "f": _case_f,
    }
    for name, fn in checks.items():
        witness = fn(c)
        if witness is not None:
            witnesses[name] = witness
    rainbow = find_rainbow_path(c, 4)
    if bool(witnesses) == (rainbow is not None):
        raise TheoremViolation(
            f"cases {sorted(witnesses)} vs rainbow {rainbow} disagree on {c!r}"
        )
    return StructureReport(
        cases=frozenset(witnesses), witnesses=witnesses, rainbow=rainbow
    )


GallaiPartition = tuple[frozenset[int], ...]


def verify_gallai_partition(c: ColoredComplete, p: Sequence[Iterable[int]]) -> bool:
    """True iff the blocks use at most two colors between them and every
    block pair is joined monochromatically.  The partition itself must be
    valid and nontrivial (>= 2 blocks)."""
    blocks = [frozenset(b) for b in p]
    if len(blocks) < 2:
        raise ValueError("partition must have at least 2 blocks")
    seen: set[int] = set()
    for b in blocks:
        if not b or b & seen:
            raise ValueError("blocks must be disjoint and nonempty")
        seen |= b
    if seen != set(range(c.n)):
        raise ValueError("blocks must cover all vertices")
    inter_colors: set[int] = set()
    for bi, bj in combinations(blocks, 2):
        bundle = {c.color_of(u, w) for u in bi for w in bj}
        if len(bundle) != 1:
            return False
        inter_colors |= bundle
    return len(inter_colors) <= 2


def find_gallai_partition(c: ColoredComplete) -> GallaiPartition | None:
    """First nontrivial partition (by block-assignment order) whose reduced
    graph is 2-colored with monochromatic bundles, or None."""
    n = c.n
    if n > 10:
        raise UnsupportedSizeError(f"partition search is limited to n <= 10, got {n}")
    if n < 2:
        return None
    assign = [0] * n

    def bundle_ok(i: int, block: int, bundles: dict, inter: set[int]) -> tuple[dict, set[int]] | None:
        new_bundles = dict(bundles)
        new_inter = set(inter)
        for u in range(i):
            if assign[u] == block:
                continue
            key = (min(assign[u], block), max(assign[u], block))
            col = c.color_of(u, i)
            prev = new_bundles.get(key)
            if prev is None:
                new_bundles[key] = col
                new_inter.add(col)
                if len(new_inter) > 2:
                    return None
            elif prev != col:
                return None
        return new_bundles, new_inter

    def dfs(i: int, max_block: int, bundles: dict, inter: set[int]) -> GallaiPartition | None:
        if i == n:
            if max_block == 0:
                return None
            blocks: dict[int, set[int]] = {}
            for v, b in enumerate(assign):
                blocks.setdefault(b, set()).add(v)
            return tuple(frozenset(blocks[b]) for b in sorted(blocks))
        for block in range(max_block + 2):
            state = bundle_ok(i, block, bundles, inter)
            if state is None:
                continue
            assign[i] = block
            found = dfs(i + 1, max(max_block, block), *state)
            if found is not None:
                return found
        return None

    return dfs(1, 0, {}, set())


@lru_cache(maxsize=None)
def _graphs_min_deg1(s: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All graphs on s labeled vertices with minimum degree >= 1, one
    representative per isomorphism class, as edge tuples."""
    all_pairs = list(pairs(s))
    seen: set[bytes] = set()
    out: list[tuple[tuple[int, int], ...]] = []
    for mask in range(1 << len(all_pairs)):
        edges = tuple(e for idx, e in enumerate(all_pairs) if mask >> idx & 1)
        deg = [0] * s
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        if min(deg, default=0) == 0:
            continue
        cols = [2 if mask >> idx & 1 else 1 for idx in range(len(all_pairs))]
        key = canonical_form(ColoredComplete(s, 2, cols), MODE_VERTEX_ONLY)
        if key not in seen:
            seen.add(key)
            out.append(edges)
    return tuple(out)


def _candidates_case_b(n: int, k: int) -> Iterable[ColoredComplete]:
    """Disjoint vertex sets per color 2..k, each inducing a graph of its
    color with minimum degree 1 (the rest of the part in color 1), all other
    edges color 1."""
    groups = k - 1
    if 2 * groups > n:
        return
    for sizes in combinations_with_replacement(range(2, n - 2 * (groups - 1) + 1), groups):
        if sum(sizes) > n:
            continue
        catalogs = [_graphs_min_deg1(s) for s in sizes]
        for choice in _choices_respecting_ties(sizes, catalogs):
            cols = [1] * edge_count(n)
            offset = 0
            for part_idx, (s, edges) in enumerate(zip(sizes, choice)):
                color = part_idx + 2
                for i, j in edges:
                    cols[edge_index(offset + i, offset + j, n)] = color
                offset += s
            yield ColoredComplete(n, k, cols)


def _choices_respecting_ties(
    sizes: Sequence[int], catalogs: Sequence[tuple]
) -> Iterable[tuple]:
    """Cartesian product over per-part graph catalogs, with unordered
    selection inside runs of equal part sizes (equal-size parts are
    interchangeable up to renaming their colors)."""
    runs: list[tuple[int, int]] = []
    start = 0
    for idx in range(1, len(sizes) + 1):
        if idx == len(sizes) or sizes[idx] != sizes[start]:
            runs.append((start, idx))
            start = idx
    def rec(run_idx: int, acc: tuple):
        if run_idx == len(runs):
            yield acc
            return
        lo, hi = runs[run_idx]
        for combo in combinations_with_replacement(catalogs[lo], hi - lo):
            yield from rec(run_idx + 1, acc + combo)
    yield from rec(0, ())


def _candidates_case_c(n: int, k: int) -> Iterable[ColoredComplete]:
    """Monochromatic K_{n-1} in color 1 plus an apex; apex edge colors cover
    2..k, sorted into blocks."""
    apex_degree = n - 1
    spare = apex_degree - (k - 1)
    if spare < 0:
        return
    for c1 in range(spare + 1):
        for rest in combinations_with_replacement(range(1, apex_degree + 1), k - 1):
            if c1 + sum(rest) != apex_degree:
                continue
            cols = [1] * edge_count(n)
            apex = n - 1
            counts = [c1] + list(rest)
            v = 0
            for color_idx, count in enumerate(counts):
                color = 1 if color_idx == 0 else color_idx + 1
                for _ in range(count):
                    cols[edge_index(v, apex, n)] = color
                    v += 1
            yield ColoredComplete(n, k, cols)


def _candidates_case_d(n: int, k: int) -> Iterable[ColoredComplete]:
    if k != 4:
        return
    for s in range(n - 2):
        cols = [1] * edge_count(n)
        cols[edge_index(0, 1, n)] = 2
        cols[edge_index(0, 2, n)] = 3
        cols[edge_index(1, 2, n)] = 4
        for v in range(3, 3 + s):
            cols[edge_index(0, v, n)] = 4
        yield ColoredComplete(n, k, cols)


def _candidates_case_e(n: int, k: int) -> Iterable[ColoredComplete]:
    if k != 4:
        return
    for cd_in in (False, True):
        cols = [1] * edge_count(n)
        cols[edge_index(0, 1, n)] = 2
        if cd_in:
            cols[edge_index(2, 3, n)] = 2
        cols[edge_index(0, 2, n)] = 3
        cols[edge_index(1, 3, n)] = 3
        cols[edge_index(0, 3, n)] = 4
        cols[edge_index(1, 2, n)] = 4
        yield ColoredComplete(n, k, cols)


def _candidates_case_f(n: int, k: int) -> Iterable[ColoredComplete]:
    if n == 5 and k == 4:
        yield sporadic("TW-case-f")


def enumerate_p5free(
    n: int, k: int, threads: int | None = None
) -> list[ColoredComplete]:
    """Every exact k-coloring of K_n with no rainbow 4-edge path, one
    canonical representative per vertex-and-color isomorphism class, sorted
    by canonical key.  Only k >= 4 is supported: with fewer colors no
    rainbow 4-edge path exists and the answer would be all colorings."""
    if n < 5:
        raise ValueError(f"enumeration needs n >= 5, got n={n}")
    if k <= 3:
        raise ValueError(
            f"enumeration needs k >= 4 (every k <= 3 coloring qualifies), got k={k}"
        )
    if n > MAX_ENUM_N:
        raise UnsupportedSizeError(f"enumeration is limited to n <= {MAX_ENUM_N}, got {n}")
    if k > MAX_ENUM_K:
        raise UnsupportedSizeError(f"enumeration is limited to k <= {MAX_ENUM_K}, got {k}")
    workers = resolve_threads(threads)

    candidates: list[ColoredComplete] = []
    for gen in (
        _candidates_case_b,
        _candidates_case_c,
        _candidates_case_d,
        _candidates_case_e,
        _candidates_case_f,
    ):
        candidates.extend(gen(n, k))

    def to_key(c: ColoredComplete) -> bytes | None:
        if not c.exact:
            return None
        if find_rainbow_path(c, 4) is not None:
            return None
        return canonical_form(c, MODE_VERTEX_AND_COLOR)

    keys = {key for key in parallel_map(to_key, candidates, workers) if key is not None}
    return [coloring_from_key(key) for key in sorted(keys)]
