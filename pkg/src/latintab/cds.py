"""Chromatic difference sequences of partition graphs via corner constraints.

For a partition diagram, the maximum size of a union of r stable sets is
the minimum of r*(i+j) + |corner(i, j)| over all corners, taken over the
boxes of the diagram together with one empty corner at the first missing
box.  Everything in this module is driven by that minimization.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .partitions import (
    Partition,
    corner_size,
    corner_subdiagram,
    enumerate_partitions_in_box,
)


@dataclass(frozen=True)
class CornerCertificate:
    """A corner (i, j) achieving alpha_r = r*(i+j) + |mu|."""

    r: int
    i: int
    j: int
    d: int
    mu: Partition


@dataclass(frozen=True)
class CdsProfile:
    """Alpha prefix sums, the difference sequence, and its normalized form."""

    delta1: int
    alpha: tuple[int, ...]
    delta: tuple[int, ...]
    normalized: tuple[int, ...]
    certificates: tuple[CornerCertificate, ...]

    def delta_padded(self, length: int) -> tuple[int, ...]:
        return self.delta + (0,) * max(0, length - len(self.delta))

    def normalized_padded(self, length: int) -> tuple[int, ...]:
        # a zero-padded delta entry normalizes to delta1
        pad = max(0, length - len(self.normalized))
        return self.normalized + (self.delta1,) * pad

    def prefix(self, r: int) -> tuple[int, ...]:
        """(normalized_2, ..., normalized_r), zero-padded convention."""
        return self.normalized_padded(r)[1:r]

    def delta_partition(self) -> Partition:
        return Partition(self.delta)


def delta1(lam: Partition) -> int:
    """First CDS term: the smallest coordinate sum of a missing box.

    Equivalently the unique k whose antidiagonal k-1 lies fully inside the
    diagram while antidiagonal k does not.
    """
    if not lam:
        raise ValueError("empty partition has no CDS")
    best = len(lam)  # missing box (len(lam), 0)
    for i, p in enumerate(lam.parts):
        if i + p < best:
            best = i + p
    return best


def first_missing_box(lam: Partition) -> tuple[int, int]:
    """The smallest-row missing box on antidiagonal delta1."""
    d1 = delta1(lam)
    for i, p in enumerate(lam.parts):
        if i + p == d1:
            return (i, p)
    return (len(lam), 0)


def _corner_candidates(lam: Partition) -> list[tuple[int, int, int, int]]:
    """(s, w, i, j) for in-diagram corners with s = delta1 - i - j >= 1.

    Corners further out can never beat the empty corner, whose bound is
    alpha_r <= r * delta1.
    """
    d1 = delta1(lam)
    out = []
    # suffix weights: weight[i][j] = |corner(i, j)| computed by downward sweep
    for i in range(min(len(lam), d1)):
        p = lam[i]
        for j in range(min(p, d1 - i)):
            s = d1 - i - j
            if s >= 1:
                out.append((s, corner_size(lam, i, j), i, j))
    return out


def cds(lam: Partition) -> CdsProfile:
    """Full CDS profile of a partition via the corner minimization."""
    if not lam:
        raise ValueError("empty partition has no CDS")
    d1 = delta1(lam)
    size = lam.size
    cands = _corner_candidates(lam)
    mi, mj = first_missing_box(lam)

    alphas: list[int] = []
    deltas: list[int] = []
    certs: list[CornerCertificate] = []
    r = 0
    prev = 0
    while not alphas or alphas[-1] < size:
        r += 1
        # T_r = max(0, max over candidates of r*s - w); alpha_r = r*d1 - T_r
        t_best = 0
        arg: Optional[tuple[int, int]] = None  # None = the empty corner wins
        for s, w, i, j in cands:
            v = r * s - w
            if v > t_best:
                t_best = v
                arg = (i, j)
        alpha_r = r * d1 - t_best
        alphas.append(alpha_r)
        deltas.append(alpha_r - prev)
        prev = alpha_r
        if arg is None:
            certs.append(CornerCertificate(r, mi, mj, d1, Partition()))
        else:
            i, j = arg
            certs.append(
                CornerCertificate(r, i, j, i + j, corner_subdiagram(lam, i, j))
            )
        if r > size:  # safety; cannot happen for valid partitions
            raise AssertionError(f"CDS of {lam} failed to saturate")
    normalized = tuple(d1 - d for d in deltas)
    return CdsProfile(d1, tuple(alphas), tuple(deltas), normalized, tuple(certs))


def includes(lam: Partition, mu: Partition, d: int) -> bool:
    """True iff some corner (i, j) with i + j = d equals mu.

    The empty partition is included at d exactly when some box on
    antidiagonal d is missing from the diagram.
    """
    if d < 0:
        return False
    for i in range(d + 1):
        if corner_subdiagram(lam, i, d - i) == mu:
            return True
    return False


@dataclass(frozen=True)
class InclusionSet:
    """Corner inclusions (mu, s = delta1 - d) kept after redundancy pruning."""

    entries: frozenset[tuple[Partition, int]]
    horizon: int


def inclusion_set(lam: Partition, r: int) -> InclusionSet:
    """All pruned inclusions needed to recover the normalized CDS up to r.

    Keeps (mu, s) with 0 < s < r and |mu| < r*s; anything else is implied
    by nonnegativity or by a deeper corner.
    """
    if not lam:
        raise ValueError("empty partition has no inclusion set")
    if r < 2:
        raise ValueError("horizon must be at least 2")
    d1 = delta1(lam)
    entries = set()
    for s in range(1, r):
        d = d1 - s
        if d < 0:
            continue
        for i in range(d + 1):
            mu = corner_subdiagram(lam, i, d - i)
            if mu and mu.size < r * s:
                entries.add((mu, s))
    return InclusionSet(frozenset(entries), r)


def normalized_prefix_from_inclusions(
    inc: InclusionSet, r: int
) -> tuple[int, ...]:
    """Recover (normalized_1 .. normalized_r) from an inclusion set.

    Inductively, each term is the smallest nonnegative integer consistent
    with every constraint sum(normalized_1..t) >= t*s - |mu|.
    """
    if r > inc.horizon:
        raise ValueError(f"horizon {inc.horizon} cannot recover prefix {r}")
    out = [0]
    total = 0
    for t in range(2, r + 1):
        need = 0
        for mu, s in inc.entries:
            need = max(need, t * s - mu.size - total)
        nxt = max(out[-1], need, 0)
        out.append(nxt)
        total += nxt
    return tuple(out[:r])


@dataclass(frozen=True)
class CharacterizationReport:
    """Corner-inclusion clauses determining the second and third terms."""

    includes_1: bool       # (1) at delta1 - 1
    includes_21: bool      # (2,1) at delta1 - 2
    includes_22: bool      # (2,2) at delta1 - 2
    includes_2: bool       # (2) at delta1 - 1
    includes_11: bool      # (1,1) at delta1 - 1
    predicted: tuple[int, int]  # (normalized_2, normalized_3)


def characterization_predicates(lam: Partition) -> CharacterizationReport:
    """Evaluate the inclusion clauses and the prefix they predict."""
    d1 = delta1(lam)
    inc_1 = includes(lam, Partition([1]), d1 - 1)
    inc_21 = includes(lam, Partition([2, 1]), d1 - 2)
    inc_22 = includes(lam, Partition([2, 2]), d1 - 2)
    inc_2 = includes(lam, Partition([2]), d1 - 1)
    inc_11 = includes(lam, Partition([1, 1]), d1 - 1)
    n2 = 1 if inc_1 else 0
    if inc_1:
        n3 = 2 if inc_21 else 1
    elif inc_22:
        n3 = 2
    elif inc_2 or inc_11:
        n3 = 1
    else:
        n3 = 0
    return CharacterizationReport(inc_1, inc_21, inc_22, inc_2, inc_11, (n2, n3))


# exclusions demanded of each hard normalized prefix: case -> [(shape, offset)]
# where the corner antidiagonal is delta1 - offset
_FIVECASE_EXCLUSIONS: dict[tuple[int, int, int], list[tuple[tuple[int, ...], int]]] = {
    (0, 0, 2): [((1,), 1), ((1, 1), 1), ((2,), 1), ((3, 3, 3), 3)],
    (0, 1, 2): [((1,), 1), ((2, 2), 2), ((3, 3, 2), 3)],
    (0, 2, 2): [((1,), 1)],
    (1, 1, 2): [((2, 1), 2), ((3, 3, 1), 3), ((3, 2, 2), 3)],
    (1, 2, 2): [((3, 2, 1), 3)],
}


def fivecase_exclusions(lam: Partition) -> dict[tuple[int, int, int], bool]:
    """For each hard prefix, whether its required exclusions all hold.

    Clauses whose antidiagonal would be negative are vacuously excluded.
    """
    if not lam:
        raise ValueError("empty partition")
    d1 = delta1(lam)
    out = {}
    for case, clauses in _FIVECASE_EXCLUSIONS.items():
        ok = True
        for shape, offset in clauses:
            d = d1 - offset
            if d >= 0 and includes(lam, Partition(shape), d):
                ok = False
                break
        out[case] = ok
    return out


# ---------------------------------------------------------------------------
# census of normalized prefixes over a box


@dataclass(frozen=True)
class CensusEntry:
    prefix: tuple[int, ...]
    count: int
    witness: Partition


@dataclass(frozen=True)
class CensusResult:
    r: int
    box: tuple[int, int]
    entries: tuple[CensusEntry, ...]

    @property
    def prefixes(self) -> set[tuple[int, ...]]:
        return {e.prefix for e in self.entries}


MAX_CENSUS_HORIZON = 7


def _parts_matrix(m: int, n: int) -> np.ndarray:
    """Nonempty partitions in the box as a zero-padded (N, m) int matrix."""
    count = 1
    # C(m+n, m) - 1 nonempty partitions
    from math import comb

    count = comb(m + n, m) - 1
    out = np.zeros((count, m), dtype=np.int16)
    k = 0
    for lam in enumerate_partitions_in_box(m, n):
        if not lam:
            continue
        ps = lam.parts
        out[k, : len(ps)] = ps
        k += 1
    assert k == count
    return out


def _normalized_prefixes_bulk(parts: np.ndarray, r: int, n_cols: int) -> np.ndarray:
    """(N, r-1) matrix of zero-padded (normalized_2 .. normalized_r).

    Vectorized corner minimization: for every grid cell (i, j) the corner
    weight w and slack s = delta1 - i - j are formed, and
    sum(normalized_1..t) = max(0, max over cells of t*s - w).  Cells outside
    the diagram automatically have s <= 0 and drop out.
    """
    big = np.int32(1 << 20)
    m = parts.shape[1]
    nblock = parts.shape[0]
    padded = np.concatenate(
        [parts, np.zeros((nblock, 1), dtype=parts.dtype)], axis=1
    ).astype(np.int32)
    i_idx = np.arange(m + 1, dtype=np.int32)
    d1 = (padded + i_idx[None, :]).min(axis=1)

    j_idx = np.arange(n_cols + 1, dtype=np.int32)
    # per-cell leftover row widths, clipped at zero, then suffix-summed;
    # the padded zero row supplies the empty corners below the diagram
    a = np.maximum(padded[:, :, None] - j_idx[None, None, :], 0)
    w = np.flip(np.cumsum(np.flip(a, axis=1), axis=1), axis=1)
    s = d1[:, None, None] - i_idx[None, :, None] - j_idx[None, None, :]
    dead = s < 1
    prefixes = np.zeros((nblock, r - 1), dtype=np.int8)
    t_prev = np.zeros(nblock, dtype=np.int32)
    for t in range(2, r + 1):
        vals = t * s - w
        np.copyto(vals, -big, where=dead)
        t_cur = np.maximum(vals.max(axis=(1, 2)), 0)
        if t == 2:
            # establish T_1 as well (needed for the t=2 difference)
            vals1 = s - w
            np.copyto(vals1, -big, where=dead)
            t_prev = np.maximum(vals1.max(axis=(1, 2)), 0)
        prefixes[:, t - 2] = (t_cur - t_prev).astype(np.int8)
        t_prev = t_cur
    return prefixes


def prefix_census(r: int, box_m: int, box_n: int, block: int = 65536) -> CensusResult:
    """Distinct zero-padded normalized prefixes over all nonempty partitions.

    Returns each distinct (normalized_2 .. normalized_r) with its count and
    the first witness in enumeration order.
    """
    if not 1 <= r <= MAX_CENSUS_HORIZON:
        raise ValueError(f"census horizon must be in 1..{MAX_CENSUS_HORIZON}")
    if box_m < 1 or box_n < 1:
        raise ValueError("box dimensions must be positive")
    if r == 1:
        from math import comb

        total = comb(box_m + box_n, box_m) - 1
        witness = next(
            lam for lam in enumerate_partitions_in_box(box_m, box_n) if lam
        )
        return CensusResult(1, (box_m, box_n), (CensusEntry((), total, witness),))

    parts = _parts_matrix(box_m, box_n)
    found: dict[tuple[int, ...], list] = {}
    for lo in range(0, parts.shape[0], block):
        chunk = parts[lo : lo + block]
        prefixes = _normalized_prefixes_bulk(chunk, r, box_n)
        uniq, first_idx, counts = np.unique(
            prefixes, axis=0, return_index=True, return_counts=True
        )
        for row, idx, cnt in zip(uniq, first_idx, counts):
            key = tuple(int(x) for x in row)
            if key in found:
                found[key][0] += int(cnt)
            else:
                witness = Partition(int(x) for x in chunk[idx] if x)
                found[key] = [int(cnt), witness]
    entries = tuple(
        CensusEntry(key, cnt, wit)
        for key, (cnt, wit) in sorted(found.items())
    )
    return CensusResult(r, (box_m, box_n), entries)


def census_prefix_counts(result: CensusResult, r: int) -> set[tuple[int, ...]]:
    """Project a census down to a shorter horizon r."""
    if r - 1 > len(next(iter(result.prefixes), ())):
        raise ValueError("cannot project census upward")
    return {p[: r - 1] for p in result.prefixes}
