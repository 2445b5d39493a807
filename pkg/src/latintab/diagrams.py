"""Box diagrams, rook-graph stable sets, and the two alpha oracles.

A Diagram is an arbitrary finite set of boxes; it covers Young diagrams,
skew shapes, and the two classic arrangements whose chromatic difference
sequence is not realized by any coloring.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .bipartite import alpha_sequence
from .errors import DiagramTooLargeError, WeightMismatchError
from .partitions import Box, Partition

BRUTE_FORCE_CAP = 20


class Diagram:
    """An immutable finite set of boxes."""

    __slots__ = ("_boxes",)

    def __init__(self, boxes: Iterable[Box] = ()):
        bs = frozenset((int(i), int(j)) for i, j in boxes)
        for i, j in bs:
            if i < 0 or j < 0:
                raise ValueError(f"negative coordinates in box ({i}, {j})")
        self._boxes = bs

    @classmethod
    def from_partition(cls, lam: Partition) -> "Diagram":
        return cls(lam.boxes())

    @classmethod
    def parse(cls, text: str) -> "Diagram":
        """Parse the semicolon-separated text form, e.g. "0,2;0,4;1,2"."""
        text = text.strip()
        if not text:
            return cls()
        boxes = []
        for chunk in text.split(";"):
            i, j = chunk.split(",")
            boxes.append((int(i), int(j)))
        return cls(boxes)

    @property
    def boxes(self) -> frozenset[Box]:
        return self._boxes

    def sorted_boxes(self) -> list[Box]:
        return sorted(self._boxes)

    def __len__(self) -> int:
        return len(self._boxes)

    def __contains__(self, box: Box) -> bool:
        return box in self._boxes

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Diagram) and self._boxes == other._boxes

    def __hash__(self) -> int:
        return hash(self._boxes)

    def __repr__(self) -> str:
        return f"Diagram({self.sorted_boxes()})"

    def __str__(self) -> str:
        return ";".join(f"{i},{j}" for i, j in self.sorted_boxes())


# The 9-box arrangement with chromatic difference sequence (5, 3, 1) that
# admits no coloring of that shape, and the 16-box skew shape with CDS
# (6, 6, 3, 1) that admits none either.
COUNTEREXAMPLE_GRAPH = Diagram(
    [(0, 2), (0, 4), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (3, 1), (4, 0)]
)
COUNTEREXAMPLE_SKEW = Diagram(
    [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3),
     (3, 0), (3, 1), (3, 2), (3, 3), (4, 0), (4, 1), (5, 0), (5, 1)]
)


def is_stable(diagram: Diagram, boxes: Iterable[Box]) -> bool:
    """True iff the boxes lie in the diagram, pairwise in distinct rows and columns."""
    rows, cols = set(), set()
    for box in boxes:
        if box not in diagram:
            return False
        i, j = box
        if i in rows or j in cols:
            return False
        rows.add(i)
        cols.add(j)
    return True


def shape_of(coloring: Mapping[Box, int]) -> Partition:
    """Class sizes of a coloring, sorted weakly decreasing."""
    counts: dict[int, int] = {}
    for color in coloring.values():
        counts[color] = counts.get(color, 0) + 1
    return Partition(sorted(counts.values(), reverse=True))


def validate_coloring(diagram: Diagram, coloring: Mapping[Box, int]) -> None:
    """Raise ValueError if the coloring repeats a color in a row or column."""
    seen_row: set[tuple[int, int]] = set()
    seen_col: set[tuple[int, int]] = set()
    for (i, j), color in coloring.items():
        if (i, j) not in diagram:
            raise ValueError(f"colored box ({i}, {j}) not in diagram")
        if (i, color) in seen_row:
            raise ValueError(f"color {color} repeated in row {i}")
        if (j, color) in seen_col:
            raise ValueError(f"color {color} repeated in column {j}")
        seen_row.add((i, color))
        seen_col.add((j, color))


def alpha_r_flow(diagram: Diagram, r: int) -> int:
    """Maximum total size of r disjoint stable sets, via maximum flow.

    A box subset splits into r matchings of the row/column bipartite graph
    exactly when its row and column multiplicities stay at most r, so the
    answer is the largest such subset.
    """
    if r < 1:
        raise ValueError("r must be positive")
    return alpha_sequence(diagram.boxes, r)[-1]


def alpha_sequence_flow(diagram: Diagram, r_max: int) -> list[int]:
    """[alpha_1 .. alpha_r_max] from one incrementally grown flow network."""
    return alpha_sequence(diagram.boxes, r_max)


def alpha_r_bruteforce(diagram: Diagram, r: int, cap: int = BRUTE_FORCE_CAP) -> int:
    """Exhaustive branch-and-bound value of alpha_r.

    Exists solely as an independent oracle; refuses diagrams above the cap.
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = len(diagram)
    if n > cap:
        raise DiagramTooLargeError(f"{n} boxes exceeds the cap of {cap}")
    if n == 0:
        return 0
    boxes = diagram.sorted_boxes()
    rows = sorted({i for i, _ in boxes})
    cols = sorted({j for _, j in boxes})
    # trivial upper bound: at most r boxes per row and per column
    row_count: dict[int, int] = {}
    col_count: dict[int, int] = {}
    for i, j in boxes:
        row_count[i] = row_count.get(i, 0) + 1
        col_count[j] = col_count.get(j, 0) + 1
    ub0 = min(
        sum(min(c, r) for c in row_count.values()),
        sum(min(c, r) for c in col_count.values()),
        n,
    )
    # suffix bound: boxes from index t onward, capped at r per row
    suffix = [0] * (n + 1)
    tally = dict.fromkeys(rows, 0)
    total = 0
    for t in range(n - 1, -1, -1):
        i = boxes[t][0]
        if tally[i] < r:
            total += 1
        tally[i] += 1
        suffix[t] = total
    best = 0
    color_rows = [0] * r  # bitmask over row index
    color_cols = [0] * r
    row_bit = {x: 1 << k for k, x in enumerate(rows)}
    col_bit = {x: 1 << k for k, x in enumerate(cols)}

    def dfs(t: int, colored: int, used_colors: int) -> None:
        nonlocal best
        if colored > best:
            best = colored
        if best == ub0 or t == n:
            return
        if colored + suffix[t] <= best:
            return
        i, j = boxes[t]
        rb, cb = row_bit[i], col_bit[j]
        limit = min(used_colors + 1, r)
        for c in range(limit):
            if color_rows[c] & rb or color_cols[c] & cb:
                continue
            color_rows[c] |= rb
            color_cols[c] |= cb
            dfs(t + 1, colored + 1, max(used_colors, c + 1))
            color_rows[c] &= ~rb
            color_cols[c] &= ~cb
            if best == ub0:
                return
        dfs(t + 1, colored, used_colors)

    dfs(0, 0, 0)
    return best


def canonical_coloring(coloring: Mapping[Box, int]) -> dict[Box, int]:
    """Relabel classes 1..k by decreasing size, ties by smallest box."""
    classes: dict[int, list[Box]] = {}
    for box, color in coloring.items():
        classes.setdefault(color, []).append(box)
    ordered = sorted(classes.values(), key=lambda cls: (-len(cls), min(cls)))
    out: dict[Box, int] = {}
    for new_color, cls in enumerate(ordered, start=1):
        for box in cls:
            out[box] = new_color
    return out


def exists_coloring_with_shape(
    diagram: Diagram, target: Partition
) -> Optional[dict[Box, int]]:
    """Exact search for a coloring whose class sizes equal the target.

    Complete backtracking over color classes as matchings, largest class
    first, with a degree bound on the residual and symmetry breaking
    between classes of equal size.  Returns a canonical coloring or None.
    """
    if target.size != len(diagram):
        raise WeightMismatchError(
            f"target weight {target.size} != box count {len(diagram)}"
        )
    boxes = diagram.sorted_boxes()
    n = len(boxes)
    if n == 0:
        return {}
    sizes = list(target.parts)
    rows = sorted({i for i, _ in boxes})
    cols = sorted({j for _, j in boxes})
    row_bit = {x: 1 << k for k, x in enumerate(rows)}
    col_bit = {x: 1 << k for k, x in enumerate(cols)}
    row_mask = [0] * n  # mask of box indices per row, built below
    box_row = [row_bit[i] for i, _ in boxes]
    box_col = [col_bit[j] for _, j in boxes]
    row_boxes: dict[int, int] = {}
    col_boxes: dict[int, int] = {}
    for t, (i, j) in enumerate(boxes):
        row_boxes[i] = row_boxes.get(i, 0) | (1 << t)
        col_boxes[j] = col_boxes.get(j, 0) | (1 << t)
    full = (1 << n) - 1
    assignment: list[int] = [0] * n  # color per box index, 0 = unassigned

    def degree_ok(residual: int, classes_left: int) -> bool:
        for mask in row_boxes.values():
            if (residual & mask).bit_count() > classes_left:
                return False
        for mask in col_boxes.values():
            if (residual & mask).bit_count() > classes_left:
                return False
        return True

    def place_class(k: int, residual: int, min_start: int) -> bool:
        if k == len(sizes):
            return residual == 0
        s = sizes[k]
        t_left = len(sizes) - k
        if not degree_ok(residual, t_left):
            return False

        # choose s boxes of `residual` forming a matching, scanning upward
        def extend(start: int, chosen: int, count: int, used_r: int, used_c: int, first: int) -> bool:
            if count == s:
                nxt = first + 1 if k + 1 < len(sizes) and sizes[k + 1] == s else 0
                return place_class(k + 1, residual & ~chosen, nxt)
            # not enough boxes left to finish this class
            pool = residual & ~((1 << start) - 1)
            if pool.bit_count() < s - count:
                return False
            t = start
            while t < n:
                bit = 1 << t
                if residual & bit and not (used_r & box_row[t]) and not (used_c & box_col[t]):
                    if extend(
                        t + 1, chosen | bit, count + 1,
                        used_r | box_row[t], used_c | box_col[t],
                        t if count == 0 else first,
                    ):
                        assignment[t] = k + 1
                        return True
                t += 1
            return False

        if s == 0:
            return place_class(k + 1, residual, 0)
        return extend(min_start, 0, 0, 0, 0, -1)

    if place_class(0, full, 0):
        coloring = {boxes[t]: assignment[t] for t in range(n)}
        return canonical_coloring(coloring)
    return None
