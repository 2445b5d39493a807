"""Bipartite machinery shared by the engines.

A box set is viewed as the edge set of a bipartite graph on its rows and
columns; a stable set of the rook graph is exactly a matching of that
graph.  Everything here is deterministic for fixed input order.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

Box = tuple[int, int]


class _Flow:
    """Max-flow network: source -> rows (cap r) -> boxes (cap 1) -> cols (cap r) -> sink.

    Built once per box set; the per-vertex capacity can then be raised
    incrementally so that alpha_1, alpha_2, ... come out of one network.
    """

    def __init__(self, boxes: Sequence[Box]):
        self.boxes = list(boxes)
        self.rows: dict[int, int] = {}
        self.cols: dict[int, int] = {}
        for i, j in self.boxes:
            self.rows.setdefault(i, len(self.rows))
            self.cols.setdefault(j, len(self.cols))
        nr = len(self.rows)
        self.S = 0
        self.T = 1 + nr + len(self.cols)
        self.n = self.T + 1
        self.cap: list[dict[int, int]] = [dict() for _ in range(self.n)]
        for ri in range(nr):
            self.cap[self.S][1 + ri] = 0
            self.cap[1 + ri][self.S] = 0
        for ci in range(len(self.cols)):
            self.cap[1 + nr + ci][self.T] = 0
            self.cap[self.T][1 + nr + ci] = 0
        for i, j in self.boxes:
            u = 1 + self.rows[i]
            v = 1 + nr + self.cols[j]
            self.cap[u][v] = 1
            self.cap[v][u] = 0
        self.value = 0
        self.r = 0

    def raise_capacity(self, r: int) -> int:
        """Set the per-row/column capacity to r and return the new max flow."""
        assert r >= self.r
        nr = len(self.rows)
        for ri in range(nr):
            self.cap[self.S][1 + ri] += r - self.r
        for ci in range(len(self.cols)):
            self.cap[1 + nr + ci][self.T] += r - self.r
        self.r = r
        while self._augment():
            self.value += 1
        return self.value

    def _augment(self) -> bool:
        parent = {self.S: -1}
        queue = deque([self.S])
        while queue:
            u = queue.popleft()
            if u == self.T:
                break
            for v, c in self.cap[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if self.T not in parent:
            return False
        v = self.T
        while v != self.S:
            u = parent[v]
            self.cap[u][v] -= 1
            self.cap[v][u] += 1
            v = u
        return True

    def saturated_boxes(self) -> list[Box]:
        """Boxes whose unit edge carries flow in the current solution."""
        nr = len(self.rows)
        out = []
        for i, j in self.boxes:
            u = 1 + self.rows[i]
            v = 1 + nr + self.cols[j]
            if self.cap[v][u] == 1:
                out.append((i, j))
        return out


def alpha_sequence(boxes: Iterable[Box], r_max: int) -> list[int]:
    """[alpha_1, ..., alpha_r_max] for the rook graph of the box set."""
    bs = sorted(set(boxes))
    if not bs or r_max < 1:
        return [0] * max(0, r_max)
    flow = _Flow(bs)
    return [flow.raise_capacity(r) for r in range(1, r_max + 1)]


def max_union_edges(boxes: Iterable[Box], r: int) -> list[Box]:
    """A maximum box subset whose rows and columns each repeat at most r times.

    Its size is alpha_r, and such a subset always splits into r matchings.
    """
    bs = sorted(set(boxes))
    if not bs or r < 1:
        return []
    flow = _Flow(bs)
    flow.raise_capacity(r)
    return flow.saturated_boxes()


def edge_color(boxes: Sequence[Box], k: int) -> list[list[Box]]:
    """Partition boxes with row/column multiplicity <= k into k matchings.

    Alternating-chain construction: insert boxes one at a time; when the
    first free color differs between the row and the column, flip the
    two-colored chain hanging off the column before inserting.
    """
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for i, j in boxes:
        rows.setdefault(i, len(rows))
        cols.setdefault(j, len(cols))
    row_col: list[list[int | None]] = [[None] * k for _ in rows]
    col_row: list[list[int | None]] = [[None] * k for _ in cols]

    def first_free(slots: list[int | None]) -> int:
        for c, v in enumerate(slots):
            if v is None:
                return c
        raise AssertionError("vertex degree exceeds the color count")

    for box in boxes:
        ri, ci = rows[box[0]], cols[box[1]]
        a = first_free(row_col[ri])
        b = first_free(col_row[ci])
        if a != b:
            # walk the a/b-alternating chain starting from the column's
            # a-edge; it can never reach ri, so flipping frees a at ci
            edges = []
            u, on_col, color = ci, True, a
            while True:
                v = (col_row if on_col else row_col)[u][color]
                if v is None:
                    break
                edges.append((u, v, color) if on_col else (v, u, color))
                u, on_col, color = v, not on_col, b if color == a else a
            for c_v, r_v, color in edges:
                col_row[c_v][color] = None
                row_col[r_v][color] = None
            for c_v, r_v, color in edges:
                new = b if color == a else a
                col_row[c_v][new] = r_v
                row_col[r_v][new] = c_v
        row_col[ri][a] = ci
        col_row[ci][a] = ri

    row_names = {v: r for r, v in rows.items()}
    col_names = {v: c for c, v in cols.items()}
    classes: list[list[Box]] = [[] for _ in range(k)]
    for ri, slots in enumerate(row_col):
        for c, ci in enumerate(slots):
            if ci is not None:
                classes[c].append((row_names[ri], col_names[ci]))
    total = sum(len(cls) for cls in classes)
    assert total == len(boxes), "edge coloring lost boxes"
    for cls in classes:
        cls.sort()
    return classes


def kuhn_max_matching(
    cells: Sequence[Box], banned_rows: set[int], banned_cols: set[int]
) -> list[Box]:
    """Maximum matching over candidate cells outside the banned rows/columns.

    Deterministic for a fixed cell order (rows processed in sorted order,
    columns in first-seen order per row).
    """
    by_row: dict[int, list[int]] = {}
    for i, j in cells:
        if i not in banned_rows and j not in banned_cols:
            by_row.setdefault(i, []).append(j)
    match_col: dict[int, int] = {}

    def try_row(i: int, visited: set[int]) -> bool:
        for j in by_row.get(i, ()):
            if j in visited:
                continue
            visited.add(j)
            if j not in match_col or try_row(match_col[j], visited):
                match_col[j] = i
                return True
        return False

    for i in sorted(by_row):
        try_row(i, set())
    return sorted((i, j) for j, i in match_col.items())
