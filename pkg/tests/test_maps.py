"""Linear maps: projection, conjugation, disjoin, join, block map, coisometry."""

import random

import pytest

from lincat.coeffs import Coeff, qnum
from lincat.lincomb import LinComb
from lincat.maps import (
    MapError,
    block_map,
    coisometry,
    conjugate_t,
    disjoin,
    join_map,
    pi_map,
    project_p,
    tau_map,
    upsilon_map,
)
from lincat.ops import compose, contract, contract_at, reflect, tensor, word_rotate
from lincat.partitions import Partition, block_part, enumerate_partitions


def W(word, c=1):
    return LinComb.of(Partition.from_word(word), c)


def Q(p, q=1):
    return Coeff.from_q(qnum(p, q))


D9 = Coeff.from_q(9)
D8 = Coeff.from_q(8)


def one_line(l):
    return [Partition.make(0, l, p.assignment) for p in enumerate_partitions(l)]


# --- projection and conjugation ----------------------------------------------


def test_pi_is_projection_tau_is_involution():
    ident = LinComb.of(Partition.identity(1))
    assert compose(pi_map(), pi_map()) == pi_map()
    assert compose(tau_map(), tau_map()) == ident


def test_conjugations_idempotent_and_involutive():
    for l in range(1, 5):
        for p in one_line(l):
            assert project_p(project_p(p)) == project_p(p)
            assert conjugate_t(conjugate_t(p)) == LinComb.of(p)


def test_projection_kills_singletons():
    for l in range(1, 5):
        for p in one_line(l):
            if p.has_singleton():
                assert project_p(p).is_zero(), str(p)


def test_projection_expansion_goldens():
    d = Coeff.symbol("d")
    one = Coeff.from_q(1)
    assert project_p(Partition.from_word("a")).is_zero()
    assert project_p(Partition.from_word("aa")) == W("aa") - W("ab").scale(one / d)
    got3 = project_p(block_part(3))
    want3 = (
        W("aaa")
        - (W("aab") + W("aba") + W("abb")).scale(one / d)
        + W("abc").scale(Coeff.from_q(2) / (d * d))
    )
    assert got3 == want3
    got4 = project_p(block_part(4))
    want4 = (
        W("aaaa")
        - (W("aaab") + W("aaba") + W("abaa") + W("abbb")).scale(one / d)
        + (
            W("aabc") + W("abac") + W("abca") + W("abbc") + W("abcb") + W("abcc")
        ).scale(one / (d * d))
        - W("abcd").scale(Coeff.from_q(3) / (d * d * d))
    )
    assert got4 == want4


def test_conjugation_expansion_golden():
    d = Coeff.symbol("d")
    got = conjugate_t(block_part(4))
    want = (
        W("aaaa")
        - (W("aaab") + W("aaba") + W("abaa") + W("abbb")).scale(Coeff.from_q(2) / d)
        + (
            W("aabc") + W("abac") + W("abca") + W("abbc") + W("abcb") + W("abcc")
        ).scale(Coeff.from_q(4) / (d * d))
        - W("abcd").scale(Coeff.from_q(16) / (d * d * d))
    )
    assert got == want


# --- disjoin and join ---------------------------------------------------------


def test_disjoin_goldens():
    d = Coeff.symbol("d")
    got = disjoin(Partition.from_word("abab"))
    want = (
        W("abab")
        - (W("abac") + W("abcb")).scale(Coeff.from_q(2) / d)
        + W("abcd").scale(Coeff.from_q(4) / (d * d))
    )
    assert got == want
    # non-crossing pairings have no odd blocks
    assert disjoin(Partition.from_word("aabb")) == W("aabb")


def test_join_goldens():
    assert join_map(Partition.from_word("abab")) == W("abab", -1) + W("aaaa", 2)
    assert join_map(Partition.from_word("aabb")) == W("aabb")
    got = join_map(Partition.from_word("abcabc"))
    want = (
        W("abcabc", -1)
        + (W("aabaab") + W("abaaba") + W("abbabb")).scale(Coeff.from_q(2))
        - W("aaaaaa", 4)
    )
    assert got == want


def test_disjoin_join_reject_non_pairings():
    with pytest.raises(MapError):
        disjoin(Partition.from_word("aaa"))
    with pytest.raises(MapError):
        join_map(W("abcc") + W("aaaa"))


def random_pairing(rng, max_len=8):
    l = rng.choice([0, 2, 4, 6, 8][: max_len // 2 + 1])
    points = list(range(l))
    rng.shuffle(points)
    labels = [0] * l
    for b, i in enumerate(range(0, l, 2)):
        labels[points[i]] = b
        labels[points[i + 1]] = b
    return Partition.make(0, l, labels)


def _check_commutes(f, p, q, delta):
    assert f(tensor(p, q)) == tensor(f(p), f(q)), ("tensor", str(p), str(q))
    assert f(word_rotate(LinComb.of(p))) == word_rotate(f(p)), ("rot", str(p))
    assert f(reflect(LinComb.of(p))) == reflect(f(p)), ("refl", str(p))
    if p.lower >= 2:
        assert f(contract(LinComb.of(p), delta)) == contract(f(p), delta), (
            "contract",
            str(p),
        )


def test_disjoin_functor_laws_random():
    rng = random.Random(2024)
    d7 = Coeff.from_q(7)
    f = lambda x: disjoin(x, d7)
    for _ in range(120):
        p = random_pairing(rng)
        q = random_pairing(rng, max_len=4)
        _check_commutes(f, p, q, d7)


def test_join_functor_laws_random():
    rng = random.Random(4048)
    d7 = Coeff.from_q(7)
    for _ in range(120):
        p = random_pairing(rng)
        q = random_pairing(rng, max_len=4)
        _check_commutes(join_map, p, q, d7)


# --- block map and coisometry ---------------------------------------------------


def test_block_map_goldens():
    assert block_map(Partition.from_word("a")).is_zero()
    assert block_map(Partition.from_word("aa")) == W("aa") + W("ab")
    assert block_map(Partition.from_word("aaa")) == W("aaa") - W("abc")
    # singleton-containing partitions die entirely
    assert block_map(Partition.from_word("abb")).is_zero()


def test_upsilon_expansion():
    # at d = 9 with sqrt 3 the correction coefficients are exact rationals
    up = upsilon_map(9, +1)
    down = upsilon_map(9, -1)
    disc = Partition.make(1, 1, (0, 1))
    assert up.coefficient_of(disc).constant_value() == -qnum(1, 6)
    assert down.coefficient_of(disc).constant_value() == -qnum(1, 12)
    with pytest.raises(MapError):
        upsilon_map(7, +1)  # 7 is not a square rational
    with pytest.raises(MapError):
        upsilon_map(1, +1)


def test_coisometry_small_goldens():
    assert coisometry(Partition.from_word("a"), 9).is_zero()
    assert coisometry(Partition.from_word("aa"), 9) == W("aa")
    for sign, mid, last in ((+1, -qnum(1, 6), qnum(1, 12)),
                            (-1, -qnum(1, 12), -qnum(1, 48))):
        got = coisometry(block_part(3), 9, sign)
        want = (
            W("aaa")
            + (W("aab") + W("aba") + W("abb")).scale(Coeff.from_q(mid))
            + W("abc").scale(Coeff.from_q(last))
        )
        assert got == want, sign


def test_coisometry_four_block_goldens():
    for sign, c1, c2, c3 in (
        (+1, -qnum(1, 6), qnum(1, 36), qnum(0)),
        (-1, -qnum(1, 12), qnum(1, 144), qnum(1, 96)),
    ):
        got = coisometry(block_part(4), 9, sign)
        want = (
            W("aaaa")
            + (W("aaab") + W("aaba") + W("abaa") + W("abbb")).scale(
                Coeff.from_q(c1)
            )
            + (
                W("aabc") + W("abac") + W("abca") + W("abbc") + W("abcb") + W("abcc")
            ).scale(Coeff.from_q(c2))
            + W("abcd").scale(Coeff.from_q(c3))
        )
        assert got == want, sign


def test_coisometry_kills_singletons():
    for l in range(1, 5):
        for p in one_line(l):
            if p.has_singleton():
                assert coisometry(p, 9, +1).is_zero(), str(p)
                assert coisometry(p, 9, -1).is_zero(), str(p)


def spec9(x):
    return x.specialize({"d": qnum(9)})


def test_coisometry_single_block_contraction_identity():
    # contracting the image at loop 8 equals the image of the projected,
    # contracted block at loop 9
    for sign in (+1, -1):
        for k in range(2, 6):
            lhs = contract(coisometry(block_part(k), 9, sign), D8)
            inner = spec9(contract(project_p(block_part(k), D9), D9))
            rhs = coisometry(inner, 9, sign)
            assert lhs == rhs, (sign, k)


def test_coisometry_two_block_contraction_identity():
    for sign in (+1, -1):
        for k in range(1, 6):
            for l in range(1, 6):
                x = tensor(block_part(k), block_part(l)).support()[0]
                lhs = contract_at(coisometry(x, 9, sign), k - 1, D8)
                inner = spec9(contract_at(project_p(x, D9), k - 1, D9))
                rhs = coisometry(inner, 9, sign)
                assert lhs == rhs, (sign, k, l)
