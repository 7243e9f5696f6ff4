"""Combinatorial enumerators for the known easy categories.

These are independent oracles: membership is decided by a predicate on
the partition alone, never by the closure engine.
"""

from __future__ import annotations

from .lincomb import LinComb, ModuleBasis
from .partitions import Partition, PartitionError, enumerate_partitions, is_noncrossing

SPAN_CAP = 10


class CatalogError(Exception):
    pass


def _is_all(p):
    return True


def _is_pairing(p):
    return p.is_pairing()


def _is_noncrossing_pairing(p):
    return p.is_pairing() and is_noncrossing(p)


def _is_noncrossing_even(p):
    return p.size % 2 == 0 and is_noncrossing(p)


def _is_even_blocks(p):
    return all(len(b) % 2 == 0 for b in p.blocks())


def _is_halflib_pairing(p):
    """Pairings whose blocks each join an odd and an even position."""
    if not p.is_pairing():
        return False
    return all((i + j) % 2 == 1 for i, j in p.blocks())


EASY_CLASSES = {
    "all": _is_all,
    "nonCrossing": is_noncrossing,
    "nonCrossingEven": _is_noncrossing_even,
    "pairings": _is_pairing,
    "nonCrossingPairings": _is_noncrossing_pairing,
    "evenBlocks": _is_even_blocks,
    "halfLibPairings": _is_halflib_pairing,
}


def class_predicate(name):
    try:
        return EASY_CLASSES[name]
    except KeyError:
        raise CatalogError(f"unknown easy class {name!r}") from None


def members(name, l):
    pred = class_predicate(name)
    return [p for p in enumerate_partitions(l) if pred(p)]


def span_at(name, l):
    """The full span of the class at one length, as a module basis."""
    if l > SPAN_CAP:
        raise CatalogError(f"span_at capped at length {SPAN_CAP}")
    basis = ModuleBasis(l)
    for p in members(name, l):
        basis.insert(LinComb.of(p))
    return basis


def dimension(name, l):
    return len(members(name, l))


def half_liberation_generator():
    """The three-line crossing word generating the half-liberated pairings."""
    return Partition.from_word("abcabc")


def validate_halflib(l0=6):
    """Self-validation: the closure of the half-liberation word must have
    exactly the halfLibPairings dimensions at every length up to l0."""
    from .closure import closure

    if l0 > 8:
        raise CatalogError("validate_halflib capped at length 8")
    approx = closure([half_liberation_generator()], l0)
    return approx.dimensions() == [dimension("halfLibPairings", l) for l in range(l0 + 1)]
