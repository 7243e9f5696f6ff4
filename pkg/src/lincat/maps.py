"""Linear transformations used to build and certify non-easy categories.

All maps act on combinations of partitions:

- project_p: conjugation by the rank-one-corrected projection
  pi = id - (1/d) (singleton over singleton); kills singleton blocks.
- conjugate_t: conjugation by the reflection tau = id - (2/d)(...), an
  involution.
- disjoin: on pairings, splits every block with an odd number of points
  between its legs into two singletons, with factor -2/d per split.
- join_map: on pairings, sums over subsets of crossing block pairs,
  joining them into four-blocks, with factor -2 per join and a global
  sign (-1)^(number of crossing pairs).
- block_map: replaces every block by block + (-1)^size (all singletons);
  the image lives at loop parameter d - 1.
- coisometry: block_map followed by conjugation with the upsilon
  correction, defined at square rational specializations of d.
"""

from __future__ import annotations

from itertools import combinations

from .coeffs import COEFF_ONE, Coeff, DELTA_COEFF, qnum
from .lincomb import LinComb
from .ops import compose, tensor
from .partitions import Partition, PartitionError, disconnect_part


class MapError(Exception):
    pass


def _ident_11():
    return Partition.identity(1)


def pi_map(delta=None):
    """pi = id - (1/d)(up-singleton over down-singleton), a projection."""
    d = DELTA_COEFF if delta is None else delta
    return LinComb(
        1, 1, {_ident_11(): COEFF_ONE, disconnect_part(): Coeff.from_q(-1) / d}
    )


def tau_map(delta=None):
    """tau = id - (2/d)(up-singleton over down-singleton), an involution."""
    d = DELTA_COEFF if delta is None else delta
    return LinComb(1, 1, {_ident_11(): COEFF_ONE, disconnect_part(): Coeff.from_q(-2) / d})


def _tensor_power(m, n):
    if n == 0:
        return LinComb.of(Partition.empty())
    out = m
    for _ in range(n - 1):
        out = tensor(out, m)
    return out


def conjugate(m, x, delta=None):
    """m tensor-power conjugation: m^(x.lower) . x . m^(x.upper)."""
    if isinstance(x, Partition):
        x = LinComb.of(x)
    out = x
    if x.upper:
        out = compose(out, _tensor_power(m, x.upper), delta)
    if x.lower:
        out = compose(_tensor_power(m, x.lower), out, delta)
    return out


def project_p(x, delta=None):
    return conjugate(pi_map(delta), x, delta)


def conjugate_t(x, delta=None):
    return conjugate(tau_map(delta), x, delta)


# ---------------------------------------------------------------------------
# disjoining and joining on pairings
# ---------------------------------------------------------------------------


def _require_one_line(x):
    if isinstance(x, Partition):
        x = LinComb.of(x)
    if x.upper:
        raise MapError("one-line combination expected")
    return x


def _odd_blocks(p):
    """Blocks of a pairing with an odd number of points between the legs."""
    out = []
    for b in p.blocks():
        if len(b) != 2:
            raise MapError("disjoin is defined on pairings")
        i, j = b
        if (j - i - 1) % 2 == 1:
            out.append(b)
    return out


def _split_blocks(p, blocks_to_split):
    labels = list(p.assignment)
    nxt = max(labels, default=-1) + 1
    for b in blocks_to_split:
        labels[b[1]] = nxt
        nxt += 1
    return Partition.make(p.upper, p.lower, labels)


def disjoin(x, delta=None):
    x = _require_one_line(x)
    d = DELTA_COEFF if delta is None else delta
    factor = Coeff.from_q(-2) / d
    out = LinComb.zero(0, x.lower)
    for p, c in x.terms.items():
        odd = _odd_blocks(p)
        for r in range(len(odd) + 1):
            for subset in combinations(odd, r):
                q = _split_blocks(p, subset)
                v = c * factor**r
                s = out.terms.get(q)
                v = v if s is None else s + v
                if v.is_zero():
                    out.terms.pop(q, None)
                else:
                    out.terms[q] = v
    return out


def _join_blocks(p, label_pairs):
    dsu = {b: b for b in set(p.assignment)}

    def find(a):
        while dsu[a] != a:
            dsu[a] = dsu[dsu[a]]
            a = dsu[a]
        return a

    for a, b in label_pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            dsu[rb] = ra
    return Partition.make(p.upper, p.lower, [find(b) for b in p.assignment])


def join_map(x):
    from .partitions import crossing_pairs

    x = _require_one_line(x)
    out = LinComb.zero(0, x.lower)
    for p, c in x.terms.items():
        if not p.is_pairing():
            raise MapError("join_map is defined on pairings")
        crossings = crossing_pairs(p)
        sign = Coeff.from_q((-1) ** len(crossings))
        for r in range(len(crossings) + 1):
            for subset in combinations(crossings, r):
                q = _join_blocks(p, subset)
                v = c * sign * Coeff.from_q((-2) ** r)
                s = out.terms.get(q)
                v = v if s is None else s + v
                if v.is_zero():
                    out.terms.pop(q, None)
                else:
                    out.terms[q] = v
    return out


# ---------------------------------------------------------------------------
# block map and coisometry
# ---------------------------------------------------------------------------


def block_map(x):
    """Replace every block by block + (-1)^size (all singletons).

    The image is to be read at loop parameter d - 1; the coefficients
    themselves are plain integers.
    """
    if isinstance(x, Partition):
        x = LinComb.of(x)
    out = LinComb.zero(x.upper, x.lower)
    for p, c in x.terms.items():
        blocks = p.blocks()
        for r in range(len(blocks) + 1):
            for subset in combinations(range(len(blocks)), r):
                labels = list(p.assignment)
                nxt = max(labels, default=-1) + 1
                signq = 1
                for bi in subset:
                    b = blocks[bi]
                    signq *= (-1) ** len(b)
                    for pos in b[1:]:
                        labels[pos] = nxt
                        nxt += 1
                q = Partition.make(p.upper, p.lower, labels)
                v = c * Coeff.from_q(signq)
                s = out.terms.get(q)
                v = v if s is None else s + v
                if v.is_zero():
                    out.terms.pop(q, None)
                else:
                    out.terms[q] = v
    return out


def _sqrt_q(value):
    value = qnum(value)
    num, den = int(value.numerator), int(value.denominator)
    if num < 0:
        raise MapError("negative value has no rational square root")
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        raise MapError(f"{value} is not a square rational")
    return qnum(rn, rd)


def _isqrt_exact(n):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def upsilon_map(delta_value, sign):
    """upsilon = id - (1/(d-1))(1 +- 1/sqrt(d)) (singleton over singleton),
    at a rational d whose square root is rational."""
    d = qnum(delta_value)
    if d == 1:
        raise MapError("upsilon undefined at d = 1")
    s = _sqrt_q(d)
    coeff = qnum(1, 1) / (d - 1) * (1 + sign / s)
    return LinComb(
        1, 1, {_ident_11(): COEFF_ONE, disconnect_part(): Coeff.from_q(-coeff)}
    )


def coisometry(x, delta_value, sign=+1):
    """The coisometry image: block_map followed by upsilon conjugation.

    The result lives in the ambient ring at loop parameter d - 1, so all
    compositions here use that loop factor.
    """
    if sign not in (1, -1):
        raise MapError("sign must be +1 or -1")
    d = qnum(delta_value)
    target_loop = Coeff.from_q(d - 1)
    b = block_map(x)
    if isinstance(x, Partition):
        x = LinComb.of(x)
    b = b.specialize({"d": d})
    return conjugate(upsilon_map(d, sign), b, target_loop)
