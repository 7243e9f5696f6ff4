"""The matrix realization of partitions at integer loop parameter N.

A partition p with k upper and l lower points maps to the N^l x N^k
0/1 matrix T_p whose (j, i) entry is 1 exactly when the joint labeling
of the points by the multi-indices i and j is constant on every block.
Sign twists multiply rows and columns by products of a +-1 matrix sigma
over all index pairs of the multi-index.

Matrices are plain lists of lists with exact rational entries.
Multi-indices are enumerated with the first position varying fastest.
"""

from __future__ import annotations

from .coeffs import qnum
from .lincomb import LinComb
from .partitions import Partition

CAPACITY = 6561  # N^(k+l) cap


class TensorRepError(Exception):
    pass


def _indices(N, n):
    out = []
    for m in range(N**n):
        out.append(tuple((m // N**i) % N for i in range(n)))
    return out


def _check_capacity(N, k, l):
    if N ** (k + l) > CAPACITY:
        raise TensorRepError(f"index space N^(k+l) exceeds {CAPACITY}")


def matrix_of_partition(p, N):
    _check_capacity(N, p.upper, p.lower)
    cols = _indices(N, p.upper)
    rows = _indices(N, p.lower)
    blocks = p.blocks()
    out = [[qnum(0)] * len(cols) for _ in rows]
    for jj, j in enumerate(rows):
        for ii, i in enumerate(cols):
            labels = list(i) + list(j)
            if all(
                all(labels[x] == labels[b[0]] for x in b)
                for b in blocks
            ):
                out[jj][ii] = qnum(1)
    return out


def matrix_of(x, N):
    """T of a combination: coefficients are specialized at d = N."""
    if isinstance(x, Partition):
        return matrix_of_partition(x, N)
    _check_capacity(N, x.upper, x.lower)
    x = x.specialize({"d": qnum(N)})
    shape_rows = N**x.lower
    shape_cols = N**x.upper
    out = [[qnum(0)] * shape_cols for _ in range(shape_rows)]
    for p, c in x.terms.items():
        if not c.is_constant():
            raise TensorRepError("coefficients must specialize to rationals")
        cv = c.constant_value()
        m = matrix_of_partition(p, N)
        for j in range(shape_rows):
            row = m[j]
            orow = out[j]
            for i in range(shape_cols):
                if row[i]:
                    orow[i] += cv * row[i]
    return out


def sigma_qdef(N):
    """sigma(i, j) = -1 when i < j, else +1."""
    return [[qnum(-1) if i < j else qnum(1) for j in range(N)] for i in range(N)]


def sigma_grad(N, n):
    """sigma(i, j) = s_i s_j for i < j (else +1), s_i = +1 iff i < n.

    n counts how many of the N indices carry the positive sign (0-based
    indices 0..n-1)."""
    s = [qnum(1) if i < n else qnum(-1) for i in range(N)]
    return [
        [s[i] * s[j] if i < j else qnum(1) for j in range(N)] for i in range(N)
    ]


def sigma_product(sigma, idx):
    """Product of sigma over all ordered pairs m < n of the multi-index;
    empty and singleton indices give +1."""
    out = qnum(1)
    for m in range(len(idx)):
        for n in range(m + 1, len(idx)):
            out *= sigma[idx[m]][idx[n]]
    return out


def twisted_matrix_of(x, N, sigma):
    """The sign-twisted matrix: entry (j, i) of T gets sigma_i sigma_j."""
    base = matrix_of(x, N)
    if isinstance(x, Partition):
        k, l = x.upper, x.lower
    else:
        k, l = x.upper, x.lower
    cols = _indices(N, k)
    rows = _indices(N, l)
    col_s = [sigma_product(sigma, i) for i in cols]
    row_s = [sigma_product(sigma, j) for j in rows]
    return [
        [base[jj][ii] * row_s[jj] * col_s[ii] for ii in range(len(cols))]
        for jj in range(len(rows))
    ]


# ---------------------------------------------------------------------------
# small exact matrix helpers
# ---------------------------------------------------------------------------


def mat_mul(a, b):
    if not b:
        return [[] for _ in a]
    n, m, r = len(a), len(b), len(b[0])
    if a and a[0] and len(a[0]) != m:
        raise TensorRepError("matrix shape mismatch")
    out = [[qnum(0)] * r for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for kk in range(m):
            v = ai[kk]
            if v:
                bk = b[kk]
                for j in range(r):
                    if bk[j]:
                        oi[j] += v * bk[j]
    return out


def mat_kron(a, b, fast_first=True):
    """Kronecker product consistent with first-index-fastest enumeration:
    index of (a tensor b) = index_a + size_a * index_b when a sits on the
    earlier positions."""
    na, ma = len(a), len(a[0]) if a else 0
    nb, mb = len(b), len(b[0]) if b else 0
    out = [[qnum(0)] * (ma * mb) for _ in range(na * nb)]
    for ja in range(na):
        for jb in range(nb):
            for ia in range(ma):
                for ib in range(mb):
                    out[ja + na * jb][ia + ma * ib] = a[ja][ia] * b[jb][ib]
    return out


def mat_eq(a, b):
    return a == b


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_rank(m):
    """Rank over Q by fraction-free-ish Gaussian elimination."""
    m = [row[:] for row in m]
    rank = 0
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def rank_of_span(partitions, N, sigma=None):
    """Rank of the span of the (possibly twisted) matrices of one-line
    partitions, vectorized over entries."""
    vecs = []
    for p in partitions:
        m = twisted_matrix_of(p, N, sigma) if sigma else matrix_of(p, N)
        vecs.append([x for row in m for x in row])
    return mat_rank(vecs)
