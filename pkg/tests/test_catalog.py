"""Combinatorial class oracles."""

import pytest

from lincat.catalog import (
    CatalogError,
    EASY_CLASSES,
    class_predicate,
    dimension,
    half_liberation_generator,
    members,
    validate_halflib,
)
from lincat.ops import contract, reflect, tensor, word_rotate
from lincat.partitions import Partition, bell_number, enumerate_partitions


def test_known_dimension_sequences():
    assert [dimension("all", l) for l in range(9)] == [
        bell_number(n) for n in range(9)
    ]
    assert [dimension("nonCrossing", l) for l in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    assert [dimension("pairings", l) for l in range(7)] == [1, 0, 1, 0, 3, 0, 15]
    assert [dimension("nonCrossingPairings", l) for l in range(7)] == [1, 0, 1, 0, 2, 0, 5]
    assert [dimension("halfLibPairings", l) for l in range(7)] == [1, 0, 1, 0, 2, 0, 6]


def test_class_inclusions():
    for l in range(7):
        ncp = set(members("nonCrossingPairings", l))
        assert ncp <= set(members("pairings", l))
        assert ncp <= set(members("nonCrossing", l))
        assert ncp <= set(members("halfLibPairings", l))
        assert set(members("halfLibPairings", l)) <= set(members("pairings", l))
        assert set(members("nonCrossingEven", l)) <= set(members("nonCrossing", l))
        assert set(members("pairings", l)) <= set(members("evenBlocks", l))


def test_classes_closed_under_operations():
    """Every catalog class is closed under rotation, reflection and (up to
    the loop factor) contraction; tensor products of members stay members."""
    for name, pred in EASY_CLASSES.items():
        for l in range(1, 7):
            for p in members(name, l):
                assert pred(_rot(p))
                assert pred(_refl(p))
                if l >= 2:
                    for q in _contract_support(p):
                        assert pred(q), (name, str(p))
        for l1 in range(1, 4):
            for l2 in range(1, 4):
                for p in members(name, l1):
                    for q in members(name, l2):
                        t = tensor(p, q).support()[0]
                        assert pred(t), (name, str(p), str(q))


def _rot(p):
    from lincat.ops import word_rotate_part

    return word_rotate_part(p, 1)


def _refl(p):
    from lincat.ops import reflect_part

    return reflect_part(p)


def _contract_support(p):
    from lincat.ops import contract_part

    q, _ = contract_part(p)
    return [q] if q.size else []


def test_unknown_class():
    with pytest.raises(CatalogError):
        class_predicate("nope")


def test_half_liberation_self_validation():
    assert str(half_liberation_generator()) == "abcabc"
    assert validate_halflib(6)
