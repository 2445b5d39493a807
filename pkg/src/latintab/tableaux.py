"""Exact Latin-tableau existence, dominance recoloring, and verification.

A Latin tableau of shape lam and type mu is a coloring of the diagram of
lam with no repeated color in any row or column whose class sizes, sorted
decreasingly, equal mu.  Existence is decided by a complete backtracking
search over color classes (largest first) with corner-constraint pruning
through the flow oracle on residual diagrams.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional

from .bipartite import _Flow
from .cds import cds
from .errors import (
    AlternatingPathError,
    NotComparableError,
    SearchBudgetExceeded,
    TableauInvalidError,
    WeightMismatchError,
)
from .partitions import Box, Partition, dominates

DEFAULT_BUDGET = 2_000_000
_GREEDY_BUDGET = 4_000


class LatinTableau:
    """A fully colored Young diagram with no repeats in rows or columns."""

    __slots__ = ("shape", "cells")

    def __init__(self, shape: Partition, cells: dict[Box, int]):
        self.shape = shape
        self.cells = dict(cells)

    @property
    def type(self) -> Partition:
        counts: dict[int, int] = {}
        for color in self.cells.values():
            counts[color] = counts.get(color, 0) + 1
        return Partition(sorted(counts.values(), reverse=True))

    def classes(self) -> dict[int, set[Box]]:
        out: dict[int, set[Box]] = {}
        for box, color in self.cells.items():
            out.setdefault(color, set()).add(box)
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LatinTableau)
            and self.shape == other.shape
            and self.cells == other.cells
        )

    def __repr__(self) -> str:
        return f"LatinTableau(shape={self.shape!r}, boxes={len(self.cells)})"

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape.parts),
            "cells": [
                {"row": i, "col": j, "color": c}
                for (i, j), c in sorted(self.cells.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LatinTableau":
        shape = Partition(data["shape"])
        cells = {(c["row"], c["col"]): c["color"] for c in data["cells"]}
        return cls(shape, cells)


def validate_tableau(tableau: LatinTableau) -> Partition:
    """Check coverage and row/column distinctness; return the type.

    The first violated constraint is reported with its box coordinates.
    """
    lam = tableau.shape
    for box in tableau.cells:
        if not lam.contains(box):
            raise TableauInvalidError(f"box {box} lies outside the shape {lam}")
    for box in lam.boxes():
        if box not in tableau.cells:
            raise TableauInvalidError(f"box {box} is uncolored")
    seen_row: dict[tuple[int, int], Box] = {}
    seen_col: dict[tuple[int, int], Box] = {}
    for box in sorted(tableau.cells):
        i, j = box
        color = tableau.cells[box]
        if (i, color) in seen_row:
            raise TableauInvalidError(
                f"color {color} repeated in row {i} at {seen_row[(i, color)]} and {box}"
            )
        if (j, color) in seen_col:
            raise TableauInvalidError(
                f"color {color} repeated in column {j} at {seen_col[(j, color)]} and {box}"
            )
        seen_row[(i, color)] = box
        seen_col[(j, color)] = box
    return tableau.type


class _TableauSearch:
    """Backtracking over color classes as matchings, largest class first.

    Classes of equal size are interchangeable, so each one is forced to
    start at a strictly larger box index than the previous one.  Residual
    diagrams are pruned by their degree bound and, in the thorough phase,
    by alpha_r from the flow oracle for r up to 4.
    """

    def __init__(self, lam: Partition, sizes: tuple[int, ...], budget: int):
        self.boxes = sorted(lam.boxes())
        self.n = len(self.boxes)
        self.sizes = [s for s in sizes if s > 0]
        self.budget = budget
        self.nodes = 0
        rows = sorted({i for i, _ in self.boxes})
        cols = sorted({j for _, j in self.boxes})
        self.row_boxes: dict[int, int] = {i: 0 for i in rows}
        self.col_boxes: dict[int, int] = {j: 0 for j in cols}
        row_bit = {i: 1 << k for k, i in enumerate(rows)}
        col_bit = {j: 1 << k for k, j in enumerate(cols)}
        self.box_row = [0] * self.n
        self.box_col = [0] * self.n
        for t, (i, j) in enumerate(self.boxes):
            self.row_boxes[i] |= 1 << t
            self.col_boxes[j] |= 1 << t
            self.box_row[t] = row_bit[i]
            self.box_col[t] = col_bit[j]
        self.assignment = [0] * self.n
        self._alpha_memo: dict[int, list[int]] = {}
        self.prune_alpha = True

    def _alphas(self, residual: int, r_max: int) -> list[int]:
        got = self._alpha_memo.get(residual)
        if got is not None and len(got) >= r_max:
            return got
        boxes = [self.boxes[t] for t in range(self.n) if residual >> t & 1]
        flow = _Flow(boxes)
        vals = [flow.raise_capacity(r) for r in range(1, r_max + 1)]
        self._alpha_memo[residual] = vals
        return vals

    def _viable(self, residual: int, k: int) -> bool:
        t_left = len(self.sizes) - k
        for mask in self.row_boxes.values():
            if (residual & mask).bit_count() > t_left:
                return False
        for mask in self.col_boxes.values():
            if (residual & mask).bit_count() > t_left:
                return False
        if self.prune_alpha and t_left > 1:
            r_max = min(4, t_left)
            alphas = self._alphas(residual, r_max)
            need = 0
            for r in range(r_max):
                need += self.sizes[k + r]
                if need > alphas[r]:
                    return False
        return True

    def run(self) -> Optional[dict[Box, int]]:
        if self.n == 0:
            return {}
        if sum(self.sizes) != self.n:
            return None
        if self._place(0, (1 << self.n) - 1, 0):
            return {self.boxes[t]: self.assignment[t] for t in range(self.n)}
        return None

    def _place(self, k: int, residual: int, min_start: int) -> bool:
        if k == len(self.sizes):
            return residual == 0
        if not self._viable(residual, k):
            return False
        s = self.sizes[k]
        n = self.n
        box_row, box_col = self.box_row, self.box_col

        def extend(start: int, count: int, used_r: int, used_c: int,
                   chosen: int, first: int) -> bool:
            if count == s:
                nxt = first + 1 if k + 1 < len(self.sizes) and self.sizes[k + 1] == s else 0
                return self._place(k + 1, residual & ~chosen, nxt)
            pool = residual >> start
            if pool.bit_count() < s - count:
                return False
            t = start
            while t < n:
                bit = 1 << t
                if residual & bit and not used_r & box_row[t] and not used_c & box_col[t]:
                    self.nodes += 1
                    if self.nodes > self.budget:
                        raise SearchBudgetExceeded(self.nodes)
                    if extend(t + 1, count + 1, used_r | box_row[t],
                              used_c | box_col[t], chosen | bit,
                              t if count == 0 else first):
                        self.assignment[t] = k + 1
                        return True
                t += 1
            return False

        return extend(min_start, 0, 0, 0, 0, -1)


def exists_latin_tableau(
    lam: Partition, mu: Partition, budget: int = DEFAULT_BUDGET
) -> Optional[LatinTableau]:
    """A Latin tableau of shape lam and type mu, or None if none exists.

    The prefix-sum necessity is applied first: r color classes cover at
    most alpha_r boxes, so a type not dominated by the CDS is impossible
    without any search.  Otherwise the search is complete; running out of
    the node budget raises SearchBudgetExceeded rather than answering.
    """
    if mu.size != lam.size:
        raise WeightMismatchError(f"|{mu}| = {mu.size} != {lam.size} = |{lam}|")
    if not lam:
        return LatinTableau(lam, {})
    if not dominates(cds(lam).delta_partition(), mu):
        return None
    # fast path: plain greedy descent finds most dominated types immediately
    greedy = _TableauSearch(lam, mu.parts, min(_GREEDY_BUDGET, budget))
    greedy.prune_alpha = False
    try:
        cells = greedy.run()
        spent = greedy.nodes
    except SearchBudgetExceeded:
        cells = None
        spent = greedy.nodes
        full = _TableauSearch(lam, mu.parts, budget - spent)
        cells = full.run()
        spent += full.nodes
    tableau = LatinTableau(lam, cells) if cells is not None else None
    exists_latin_tableau.last_nodes = spent  # type: ignore[attr-defined]
    return tableau


exists_latin_tableau.last_nodes = 0  # type: ignore[attr-defined]


@dataclass
class VerificationRecord:
    """Outcome of checking one partition against its CDS type."""

    lam: Partition
    delta: Partition
    tableau_found: bool
    witness: Optional[LatinTableau]
    elapsed: float
    node_count: int
    inconclusive: bool = False

    def to_json(self) -> dict:
        data = {
            "lambda": str(self.lam),
            "delta": str(self.delta),
            "found": self.tableau_found,
            "inconclusive": self.inconclusive,
            "nodes": self.node_count,
            "elapsed": self.elapsed,
        }
        if self.witness is not None:
            data["witness"] = self.witness.to_json()["cells"]
        return data


def verify_conjecture_single(
    lam: Partition, budget: int = DEFAULT_BUDGET
) -> VerificationRecord:
    """Search for a tableau of shape lam whose type is the CDS of lam.

    A record with tableau_found False (and not inconclusive) is a
    counterexample to the conjecture and must be surfaced loudly.
    """
    if not lam:
        raise ValueError("empty partition")
    start = time.perf_counter()
    delta = cds(lam).delta_partition()
    try:
        witness = exists_latin_tableau(lam, delta, budget=budget)
        nodes = exists_latin_tableau.last_nodes
        inconclusive = False
    except SearchBudgetExceeded as exc:
        witness = None
        nodes = exc.nodes
        inconclusive = True
    elapsed = time.perf_counter() - start
    if witness is not None:
        validate_tableau(witness)
    return VerificationRecord(
        lam, delta, witness is not None, witness, elapsed, nodes, inconclusive
    )


# ---------------------------------------------------------------------------
# dominance recoloring


def _ordered_classes(tableau: LatinTableau) -> list[tuple[int, set[Box]]]:
    classes = tableau.classes()
    return sorted(classes.items(), key=lambda kv: (-len(kv[1]), kv[0]))


def _flip_one_box(tableau: LatinTableau, donor_pos: int, receiver_pos: int) -> LatinTableau:
    """Move one box from the donor class to the receiver class.

    In the bipartite row/column view the two classes are matchings; some
    connected component of their union is a path with the donor color in
    the majority, and reversing the colors along it shifts exactly one box.
    """
    ordered = _ordered_classes(tableau)
    donor_color, donor_set = ordered[donor_pos]
    if receiver_pos < len(ordered):
        receiver_color, receiver_set = ordered[receiver_pos]
    else:
        receiver_color = max(tableau.cells.values(), default=0) + 1
        receiver_set = set()

    adj: dict[tuple[str, int], list[tuple[tuple[str, int], Box, bool]]] = {}
    for box in donor_set | receiver_set:
        is_donor = box in donor_set
        u = ("r", box[0])
        v = ("c", box[1])
        adj.setdefault(u, []).append((v, box, is_donor))
        adj.setdefault(v, []).append((u, box, is_donor))

    seen: set[tuple[str, int]] = set()
    flip: Optional[list[tuple[Box, bool]]] = None
    for start in sorted(adj):
        if start in seen or len(adj[start]) != 1:
            continue
        # walk the path from one of its endpoints
        comp_edges: list[tuple[Box, bool]] = []
        prev, cur = None, start
        seen.add(cur)
        while True:
            step = [e for e in adj[cur] if e[1] != prev]
            if not step:
                break
            nxt, box, is_donor = step[0]
            comp_edges.append((box, is_donor))
            prev, cur = box, nxt
            seen.add(cur)
        donors = sum(1 for _, d in comp_edges if d)
        if donors == len(comp_edges) - donors + 1:
            flip = comp_edges
            break
    if flip is None:
        raise AlternatingPathError(
            f"no donor-majority path between classes {donor_color} and {receiver_color}"
        )
    cells = dict(tableau.cells)
    for box, is_donor in flip:
        cells[box] = receiver_color if is_donor else donor_color
    return LatinTableau(tableau.shape, cells)


def recolor_steps(tableau: LatinTableau, nu: Partition) -> Iterator[LatinTableau]:
    """Yield the tableau after each single-box move down to type nu."""
    mu = tableau.type
    if mu.size != nu.size:
        raise WeightMismatchError(f"|{mu}| = {mu.size} != {nu.size} = |{nu}|")
    if not dominates(mu, nu):
        raise NotComparableError(f"type {mu} does not dominate {nu}")
    current = tableau
    while True:
        cur_type = current.type
        if cur_type == nu:
            return
        width = max(len(cur_type), len(nu))
        cur = cur_type.padded(width)
        tgt = nu.padded(width)
        donor = next(k for k in range(width) if cur[k] > tgt[k])
        receiver = next(k for k in range(width) if cur[k] < tgt[k])
        current = _flip_one_box(current, donor, receiver)
        yield current


def recolor_to(tableau: LatinTableau, nu: Partition) -> LatinTableau:
    """A tableau of the same shape with type nu, assuming type(T) dominates nu."""
    result = tableau
    for step in recolor_steps(tableau, nu):
        result = step
    return result
