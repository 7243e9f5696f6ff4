"""Set partitions of finitely many upper and lower points.

A partition is stored as a restricted-growth string over the points read
in order: upper row left to right, then lower row left to right.  Block
labels are nonnegative integers; the first point of each new block gets
the smallest unused label, so every partition has exactly one encoding.

Words like "abcb" denote one-line partitions (no upper points); equal
letters mean same block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_POINTS = 12

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class PartitionError(Exception):
    pass


class CapacityError(PartitionError):
    pass


def canonical_labels(labels):
    """Relabel so blocks are numbered by first occurrence (RGS form)."""
    seen = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """A set partition of `upper` + `lower` points in RGS encoding."""

    upper: int
    lower: int
    assignment: tuple

    def __post_init__(self):
        if self.upper < 0 or self.lower < 0:
            raise PartitionError("negative point count")
        if len(self.assignment) != self.upper + self.lower:
            raise PartitionError("assignment length mismatch")
        if self.assignment != canonical_labels(self.assignment):
            raise PartitionError(f"not in canonical form: {self.assignment}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def make(upper, lower, labels):
        return Partition(upper, lower, canonical_labels(labels))

    @staticmethod
    def from_word(word):
        """One-line partition from a lowercase word, e.g. 'abab'."""
        if not all(c in _LETTERS for c in word):
            raise PartitionError(f"invalid word: {word!r}")
        return Partition.make(0, len(word), tuple(word))

    @staticmethod
    def from_blocks(upper, lower, blocks):
        """Blocks given as iterables of 1-based point positions."""
        n = upper + lower
        labels = [None] * n
        for i, block in enumerate(blocks):
            for pos in block:
                if not 1 <= pos <= n or labels[pos - 1] is not None:
                    raise PartitionError(f"bad block structure at point {pos}")
            for pos in block:
                labels[pos - 1] = i
        if any(x is None for x in labels):
            raise PartitionError("blocks do not cover all points")
        return Partition.make(upper, lower, labels)

    @staticmethod
    def identity(k):
        """k straight lines: upper point i joined to lower point i."""
        return Partition.make(k, k, tuple(range(k)) * 2)

    @staticmethod
    def empty():
        return Partition(0, 0, ())

    # -- basic data ---------------------------------------------------------

    @property
    def size(self):
        return self.upper + self.lower

    def n_blocks(self):
        return len(set(self.assignment))

    def blocks(self):
        """Blocks as tuples of 0-based point indices, by first occurrence."""
        out = {}
        for i, b in enumerate(self.assignment):
            out.setdefault(b, []).append(i)
        return [tuple(v) for _, v in sorted(out.items())]

    def block_sizes(self):
        return sorted((len(b) for b in self.blocks()), reverse=True)

    def is_pairing(self):
        return all(len(b) == 2 for b in self.blocks())

    def has_singleton(self):
        return any(len(b) == 1 for b in self.blocks())

    def to_word(self):
        if self.upper:
            raise PartitionError("to_word needs a one-line partition")
        if self.n_blocks() > len(_LETTERS):
            raise PartitionError("too many blocks for letters")
        return "".join(_LETTERS[b] for b in self.assignment)

    def one_line_sequence(self):
        """Point labels on a single line: upper reversed, then lower.

        This is the boundary order obtained by rotating all upper points
        down, which preserves planarity.
        """
        return tuple(reversed(self.assignment[: self.upper])) + tuple(
            self.assignment[self.upper :]
        )

    def __str__(self):
        up = "".join(_LETTERS[b] for b in self.assignment[: self.upper])
        low = "".join(_LETTERS[b] for b in self.assignment[self.upper :])
        if self.upper == 0 and self.lower == 0:
            return "<empty>"
        if self.upper == 0:
            return low
        return f"{up}|{low}"


# common atoms
def pair_part():
    return Partition.from_word("aa")


def singleton_part():
    return Partition.from_word("a")


def upper_pair_part():
    return Partition.make(2, 0, (0, 0))


def upper_singleton_part():
    return Partition.make(1, 0, (0,))


def disconnect_part():
    """One upper singleton over one lower singleton."""
    return Partition.make(1, 1, (0, 1))


def block_part(k):
    """The one-line partition of k points in a single block."""
    return Partition.make(0, k, (0,) * k)


# ---------------------------------------------------------------------------
# enumeration, rank, unrank
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def bell_number(n):
    """Number of set partitions of n points, via the Bell triangle."""
    if n < 0:
        raise PartitionError("negative size")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@lru_cache(maxsize=None)
def _rgs_list(n):
    if n > MAX_POINTS:
        raise CapacityError(f"enumeration capped at {MAX_POINTS} points")
    out = []

    def rec(prefix, mx):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(mx + 2):
            prefix.append(v)
            rec(prefix, max(mx, v))
            prefix.pop()

    if n == 0:
        return [()]
    rec([], -1)
    return out


@lru_cache(maxsize=None)
def _rgs_index(n):
    return {a: i for i, a in enumerate(_rgs_list(n))}


def enumerate_partitions(l):
    """All one-line partitions of l points, lexicographic in RGS encoding."""
    return [Partition(0, l, a) for a in _rgs_list(l)]


def rank(p):
    """Position of a one-line partition in lexicographic RGS order."""
    if p.upper:
        raise PartitionError("rank is defined for one-line partitions")
    return _rgs_index(p.lower)[p.assignment]


def unrank(l, r):
    lst = _rgs_list(l)
    if not 0 <= r < len(lst):
        raise PartitionError(f"rank {r} out of range for length {l}")
    return Partition(0, l, lst[r])


# ---------------------------------------------------------------------------
# crossings
# ---------------------------------------------------------------------------


def _blocks_cross(pos_a, pos_b):
    """Two blocks (sorted position tuples) cross on a line iff their points
    alternate a..b..a..b somewhere."""
    merged = sorted((x, 0) for x in pos_a) + sorted((x, 1) for x in pos_b)
    merged.sort()
    changes = 0
    last = None
    for _, which in merged:
        if which != last:
            changes += 1
            last = which
    return changes >= 4


def crossing_pairs(p):
    """Pairs of block labels that cross, on the one-line boundary order."""
    seq = p.one_line_sequence()
    positions = {}
    for i, b in enumerate(seq):
        positions.setdefault(b, []).append(i)
    labels = sorted(positions)
    out = []
    for i, a in enumerate(labels):
        for b in labels[i + 1 :]:
            if _blocks_cross(positions[a], positions[b]):
                out.append((a, b))
    return out


def is_noncrossing(p):
    return not crossing_pairs(p)
