"""Integer partitions, their Young diagrams, and the dominance order.

Boxes are (row, col) pairs with the top-left box at (0, 0).
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .errors import NotComparableError, WeightMismatchError

Box = tuple[int, int]


class Partition:
    """A weakly decreasing sequence of positive integers.

    Trailing zeros are stripped on construction, so equal partitions always
    compare equal.  Indexing past the last part returns 0.
    """

    __slots__ = ("_parts", "_size")

    def __init__(self, parts: Iterable[int] = ()):
        ps = []
        for p in parts:
            p = int(p)
            if p < 0:
                raise ValueError(f"negative part {p}")
            ps.append(p)
        while ps and ps[-1] == 0:
            ps.pop()
        for a, b in zip(ps, ps[1:]):
            if a < b:
                raise ValueError(f"parts not weakly decreasing: {ps}")
        if any(p == 0 for p in ps):
            raise ValueError(f"zero part inside {ps}")
        self._parts = tuple(ps)
        self._size = sum(ps)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the comma-separated text form, e.g. "4,2,1"; "" is empty."""
        text = text.strip()
        if not text:
            return cls()
        return cls(int(t) for t in text.split(","))

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def size(self) -> int:
        """Number of boxes |λ|."""
        return self._size

    def __len__(self) -> int:
        return len(self._parts)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        return self._parts[i] if i < len(self._parts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"Partition{self._parts}"

    def __str__(self) -> str:
        return ",".join(str(p) for p in self._parts)

    def padded(self, length: int) -> tuple[int, ...]:
        """Parts extended with zeros to at least ``length`` entries."""
        return self._parts + (0,) * max(0, length - len(self._parts))

    def contains(self, box: Box) -> bool:
        """Membership test for a box in the Young diagram."""
        i, j = box
        return 0 <= i < len(self._parts) and 0 <= j < self._parts[i]

    def boxes(self) -> Iterator[Box]:
        """All boxes in row-major order."""
        for i, p in enumerate(self._parts):
            for j in range(p):
                yield (i, j)

    def conjugate(self) -> "Partition":
        """Transpose rows and columns of the diagram."""
        if not self._parts:
            return Partition()
        cols = [0] * self._parts[0]
        for p in self._parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)


def contains(lam: Partition, box: Box) -> bool:
    return lam.contains(box)


def conjugate(lam: Partition) -> Partition:
    return lam.conjugate()


def antidiagonal(lam: Partition, k: int) -> tuple[frozenset[Box], frozenset[Box]]:
    """Split the k+1 boxes with coordinate sum k into (present, missing)."""
    present, missing = [], []
    for i in range(k + 1):
        box = (i, k - i)
        (present if lam.contains(box) else missing).append(box)
    return frozenset(present), frozenset(missing)


def corner_subdiagram(lam: Partition, i: int, j: int) -> Partition:
    """The partition of boxes weakly below and right of (i, j).

    Row t of the result has max(lam[i+t] - j, 0) boxes.
    """
    parts = []
    for t in range(i, len(lam)):
        w = lam[t] - j
        if w <= 0:
            break
        parts.append(w)
    return Partition(parts)


def corner_size(lam: Partition, i: int, j: int) -> int:
    """Number of boxes in the corner at (i, j), without building it."""
    total = 0
    for t in range(i, len(lam)):
        w = lam[t] - j
        if w <= 0:
            break
        total += w
    return total


def dominates(mu: Partition, nu: Partition) -> bool:
    """True iff every prefix sum of mu is >= the matching prefix sum of nu.

    Weights need not be equal; callers that need |mu| = |nu| check it
    themselves.
    """
    sm = sn = 0
    for r in range(max(len(mu), len(nu))):
        sm += mu[r]
        sn += nu[r]
        if sm < sn:
            return False
    return True


def dominance_chain(mu: Partition, nu: Partition) -> list[tuple[int, int]]:
    """Single-box transfer moves turning mu into nu.

    Each move is a (donor_index, receiver_index) pair into the current
    partition (sorted weakly decreasing, padded with zeros as needed); the
    donor part shrinks by one and the receiver grows by one, after which the
    parts are re-sorted.  The chain repeatedly moves a box from the largest
    part exceeding its target to the first part below its target.
    """
    if mu.size != nu.size:
        raise WeightMismatchError(f"|{mu}| = {mu.size} != {nu.size} = |{nu}|")
    if not dominates(mu, nu):
        raise NotComparableError(f"{mu} does not dominate {nu}")
    width = max(len(mu), len(nu))
    cur = list(mu.padded(width))
    target = list(nu.padded(width))
    moves: list[tuple[int, int]] = []
    while cur != target:
        donor = next(k for k in range(width) if cur[k] > target[k])
        receiver = next(k for k in range(width) if cur[k] < target[k])
        moves.append((donor, receiver))
        cur[donor] -= 1
        cur[receiver] += 1
        cur.sort(reverse=True)
    return moves


def apply_chain(mu: Partition, moves: list[tuple[int, int]]) -> Partition:
    """Replay dominance_chain moves; used as the oracle in tests."""
    width = max((max(d, r) for d, r in moves), default=-1) + 1
    cur = list(mu.padded(max(width, len(mu))))
    for donor, receiver in moves:
        if cur[donor] <= cur[receiver]:
            raise NotComparableError(f"bad move {donor}->{receiver} on {cur}")
        cur[donor] -= 1
        cur[receiver] += 1
        cur.sort(reverse=True)
    return Partition(cur)


def enumerate_partitions_in_box(m: int, n: int) -> Iterator[Partition]:
    """All partitions with at most m parts, each at most n.

    Yields C(m+n, m) partitions (including the empty one) in descending
    lexicographic order of the part tuples, so runs are byte-stable.
    """
    if m < 1 or n < 1:
        raise ValueError("box dimensions must be positive")

    def rec(bound: int, rows: int) -> Iterator[tuple[int, ...]]:
        if rows > 0 and bound > 0:
            for first in range(bound, 0, -1):
                for rest in rec(first, rows - 1):
                    yield (first,) + rest
        yield ()

    for parts in rec(n, m):
        yield Partition(parts)
