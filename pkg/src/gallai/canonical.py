"""Exact canonical forms for edge colorings of K_n.

The key of a coloring is ``bytes([n, k]) + body`` where body lists edge
colors column by column: vertices are placed one at a time, and each new
vertex contributes the colors of its edges back to the already-placed
vertices.  The key is the lexicographically least body over all admissible
vertex orderings.

Two modes:

* ``vertex-and-color``: before comparison, colors are renamed by first
  occurrence inside the body.  For a fixed vertex order this renaming is
  the lexicographic minimum over all color bijections and is prefix-stable,
  so minimizing over vertex orders gives a key invariant under simultaneous
  vertex and color permutation.
* ``vertex-only``: raw colors are kept; the key is invariant under vertex
  permutation alone.

Admissible orderings respect an iterated-refinement vertex partition whose
cells and cell order are themselves invariant under the mode's symmetry
group, so the restriction never merges or splits key classes; it only
prunes the search.  Orders are exhausted within that restriction with
branch-and-bound pruning against the best body found so far.
"""

from __future__ import annotations

from gallai.graphs import (
    ColoredComplete,
    UnsupportedSizeError,
    edge_count,
    edge_index,
    pairs,
)

MAX_CANONICAL_ORDER = 10

MODE_VERTEX_AND_COLOR = "vertex-and-color"
MODE_VERTEX_ONLY = "vertex-only"
_MODES = (MODE_VERTEX_AND_COLOR, MODE_VERTEX_ONLY)


def _edge_label_matrix(c: ColoredComplete, mode: str) -> list[list[int]]:
    """Symmetric edge labels driving the refinement.

    vertex-only mode labels an edge by its color.  vertex-and-color mode
    labels it by the rank of its color's signature (class size plus sorted
    per-vertex degree sequence), which is unchanged when colors are renamed.
    """
    n = c.n
    label = [[0] * n for _ in range(n)]
    if mode == MODE_VERTEX_ONLY:
        rank = {col: col for col in c.used_colors}
    else:
        sigs: dict[int, tuple] = {}
        for col in c.used_colors:
            degs = tuple(sorted(c.degree(v, col) for v in range(n)))
            sigs[col] = (len(c.edges_in_color(col)), degs)
        ordered = sorted(set(sigs.values()))
        rank = {col: ordered.index(sig) + 1 for col, sig in sigs.items()}
    for (i, j), col in zip(pairs(n), c.colors):
        label[i][j] = label[j][i] = rank[col]
    return label


def _refined_cells(n: int, label: list[list[int]]) -> list[list[int]]:
    """Partition vertices by iterated neighborhood signatures.

    Cells are returned in increasing signature order; the signature of a
    vertex is rebuilt from invariant data only, so the cell list (and its
    order) is identical for any relabeled copy of the same coloring.
    """
    inv = [0] * n
    while True:
        sigs = []
        for v in range(n):
            around = tuple(sorted((label[v][u], inv[u]) for u in range(n) if u != v))
            sigs.append((inv[v], around))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == inv:
            break
        inv = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(inv[v], []).append(v)
    return [cells[value] for value in sorted(cells)]


def _minimum_body(c: ColoredComplete, cells: list[list[int]], rename: bool) -> list[int]:
    n = c.n
    pos_cell: list[list[int]] = []
    for cell in cells:
        pos_cell.extend([cell] * len(cell))
    used = [False] * n
    order: list[int] = []
    cur: list[int] = []
    cmap: dict[int, int] = {}
    best: list[int] | None = None

    def dfs(p: int) -> None:
        nonlocal best
        if p == n:
            if best is None or cur < best:
                best = cur.copy()
            return
        base = len(cur)
        cands = []
        for v in pos_cell[p]:
            if used[v]:
                continue
            col: list[int] = []
            pending: dict[int, int] = {}
            for u in order:
                raw = c.color_of(u, v)
                if rename:
                    name = cmap.get(raw)
                    if name is None:
                        name = pending.get(raw)
                        if name is None:
                            name = len(cmap) + len(pending) + 1
                            pending[raw] = name
                    col.append(name)
                else:
                    col.append(raw)
            cands.append((col, v, pending))
        cands.sort(key=lambda item: item[0])
        for col, v, pending in cands:
            if best is not None and cur == best[:base]:
                # candidates are sorted, so one worse column ends the level
                if col > best[base : base + len(col)]:
                    break
            used[v] = True
            order.append(v)
            cur.extend(col)
            cmap.update(pending)
            dfs(p + 1)
            for raw in pending:
                del cmap[raw]
            del cur[base:]
            order.pop()
            used[v] = False

    dfs(0)
    assert best is not None
    return best


def canonical_form(c: ColoredComplete, mode: str = MODE_VERTEX_AND_COLOR) -> bytes:
    """Canonical key of a coloring; equal keys characterize the orbit of the
    chosen symmetry group (vertex permutations, optionally times color
    permutations)."""
    if mode not in _MODES:
        raise ValueError(f"unknown canonical mode {mode!r}")
    n, k = c.n, c.k
    if n > MAX_CANONICAL_ORDER:
        raise UnsupportedSizeError(
            f"canonical forms are limited to n <= {MAX_CANONICAL_ORDER}, got n={n}"
        )
    if k > 255:
        raise UnsupportedSizeError("canonical forms need the palette to fit in a byte")
    header = bytes([n, k])
    if n <= 1:
        return header
    if len(c.used_colors) == 1:
        fill = 1 if mode == MODE_VERTEX_AND_COLOR else c.colors[0]
        return header + bytes([fill] * edge_count(n))
    label = _edge_label_matrix(c, mode)
    cells = _refined_cells(n, label)
    body = _minimum_body(c, cells, rename=(mode == MODE_VERTEX_AND_COLOR))
    return header + bytes(body)


def coloring_from_key(key: bytes) -> ColoredComplete:
    """Decode a canonical key back into its representative coloring."""
    if len(key) < 2:
        raise ValueError("canonical key must hold at least n and k")
    n, k = key[0], key[1]
    body = key[2:]
    if len(body) != edge_count(n):
        raise ValueError(
            f"canonical key body has {len(body)} entries, expected {edge_count(n)}"
        )
    cols = [0] * edge_count(n)
    pos = 0
    for p in range(1, n):
        for q in range(p):
            cols[edge_index(q, p, n)] = body[pos]
            pos += 1
    return ColoredComplete(n, k, cols)


def canonical_coloring(
    c: ColoredComplete, mode: str = MODE_VERTEX_AND_COLOR
) -> ColoredComplete:
    """The canonical representative of c's isomorphism class."""
    return coloring_from_key(canonical_form(c, mode))
