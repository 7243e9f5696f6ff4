"""Matrix realization of partitions and sign twists."""

import random

import pytest

from lincat.coeffs import qnum
from lincat.lincomb import LinComb
from lincat.ops import compose, involution, tensor
from lincat.partitions import (
    Partition,
    bell_number,
    block_part,
    enumerate_partitions,
    is_noncrossing,
)
from lincat.tensorrep import (
    TensorRepError,
    mat_add,
    mat_eq,
    mat_kron,
    mat_mul,
    mat_rank,
    mat_scale,
    matrix_of,
    rank_of_span,
    sigma_grad,
    sigma_product,
    sigma_qdef,
    twisted_matrix_of,
)


def W(word):
    return Partition.from_word(word)


def one_line(l):
    return [Partition.make(0, l, p.assignment) for p in enumerate_partitions(l)]


def even_blocks(l):
    return [p for p in one_line(l) if all(len(b) % 2 == 0 for b in p.blocks())]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def test_identity_and_pair_vectors():
    assert matrix_of(Partition.identity(1), 3) == [
        [qnum(int(i == j)) for j in range(3)] for i in range(3)
    ]
    # the (0,2) pair is the duality vector sum_i e_i (x) e_i
    assert [row[0] for row in matrix_of(W("aa"), 2)] == [
        qnum(1),
        qnum(0),
        qnum(0),
        qnum(1),
    ]


def test_capacity_guard():
    with pytest.raises(TensorRepError):
        matrix_of(block_part(9), 3)


def test_functoriality_random():
    rng = random.Random(99)
    for N in (2, 3):
        pool2 = [x.assignment for x in enumerate_partitions(2)]
        pool4 = [x.assignment for x in enumerate_partitions(4)]
        for _ in range(60):
            p = Partition.make(2, 2, rng.choice(pool4))
            q = Partition.make(2, 2, rng.choice(pool4))
            qp = compose(LinComb.of(q), LinComb.of(p))
            assert mat_eq(
                matrix_of(qp, N), mat_mul(matrix_of(q, N), matrix_of(p, N))
            )
            r = Partition.make(1, 1, rng.choice(pool2))
            pr = tensor(p, r)
            assert mat_eq(
                matrix_of(pr, N), mat_kron(matrix_of(p, N), matrix_of(r, N))
            )
            assert mat_eq(
                matrix_of(involution(LinComb.of(p)), N), transpose(matrix_of(p, N))
            )


def test_loop_convention_matches_N():
    # composing the (2,0) pair onto the (0,2) pair closes one loop
    up = LinComb.of(Partition.make(2, 0, (0, 0)))
    down = LinComb.of(W("aa"))
    for N in (2, 3):
        scalar = compose(up, down)
        assert matrix_of(scalar, N) == [[qnum(N)]]
        assert mat_eq(
            matrix_of(scalar, N), mat_mul(matrix_of(up, N), matrix_of(down, N))
        )


def test_sigma_products():
    s = sigma_qdef(2)
    assert sigma_product(s, ()) == 1
    assert sigma_product(s, (0,)) == 1
    assert sigma_product(s, (0, 1)) == -1
    assert sigma_product(s, (1, 0)) == 1
    g = sigma_grad(3, 2)
    assert g[0][1] == 1 and g[0][2] == -1 and g[1][2] == -1


def test_twist_identity_on_crossing():
    # T^sigma of the crossing equals -T(crossing) + 2 T(4-block)
    for N in (2, 3):
        s = sigma_qdef(N)
        lhs = twisted_matrix_of(W("abab"), N, s)
        rhs = mat_add(
            mat_scale(matrix_of(W("abab"), N), qnum(-1)),
            mat_scale(matrix_of(W("aaaa"), N), qnum(2)),
        )
        assert mat_eq(lhs, rhs)
        assert mat_eq(
            twisted_matrix_of(W("aaaa"), N, s), matrix_of(W("aaaa"), N)
        )


def test_twist_fixes_noncrossing_even_blocks():
    for N in (2, 3):
        for sigma in (sigma_qdef(N), sigma_grad(N, N - 1)):
            for l in (2, 4):
                for p in even_blocks(l):
                    if is_noncrossing(p):
                        assert mat_eq(
                            twisted_matrix_of(p, N, sigma), matrix_of(p, N)
                        ), str(p)


def test_twist_functoriality_even_blocks():
    rng = random.Random(321)
    N = 2
    s = sigma_qdef(N)
    pool = [
        Partition.make(2, 2, p.assignment)
        for p in enumerate_partitions(4)
        if all(len(b) % 2 == 0 for b in p.blocks())
    ]
    for _ in range(60):
        p = rng.choice(pool)
        q = rng.choice(pool)
        qp = compose(LinComb.of(q), LinComb.of(p))
        assert mat_eq(
            twisted_matrix_of(qp, N, s),
            mat_mul(twisted_matrix_of(q, N, s), twisted_matrix_of(p, N, s)),
        ), (str(q), str(p))


def test_rank_of_span():
    assert rank_of_span(one_line(3), 3) == bell_number(3) == 5
    assert rank_of_span(one_line(3), 2) < 5
    assert rank_of_span(one_line(2), 4) == 2
    assert mat_rank([[qnum(1), qnum(2)], [qnum(2), qnum(4)]]) == 1
