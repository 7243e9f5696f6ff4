"""Operations on partitions and their linear combinations.

Partition-level primitives return a partition together with the number of
closed loops produced, so the loop factor can be applied at the
coefficient level.  The loop factor defaults to the symbol d; passing a
rational Coeff runs the same operation in a specialized ambient ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coeffs import Coeff, DELTA_COEFF, Poly
from .lincomb import LinComb
from .partitions import Partition, PartitionError


class OpsError(Exception):
    pass


class PlanError(OpsError):
    pass


# ---------------------------------------------------------------------------
# partition-level primitives
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def tensor_parts(p, q):
    """Place q to the right of p on both rows."""
    pu = p.assignment[: p.upper]
    pl = p.assignment[p.upper :]
    off = p.n_blocks()
    qu = tuple(x + off for x in q.assignment[: q.upper])
    ql = tuple(x + off for x in q.assignment[q.upper :])
    return Partition.make(p.upper + q.upper, p.lower + q.lower, pu + qu + pl + ql)


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@lru_cache(maxsize=None)
def compose_parts(q, p):
    """Stack q on top of p: q in P(l, m), p in P(k, l).

    Returns (result in P(k, m), number of loops), where a loop is a
    connected component supported entirely on the glued middle points.
    """
    k, l = p.upper, p.lower
    if q.upper != l:
        raise PartitionError(
            f"cannot compose: q has {q.upper} upper points, p has {l} lower"
        )
    m = q.lower
    # point ids: 0..k-1 boundary upper, k..k+l-1 middle, k+l..k+l+m-1 boundary lower
    dsu = _DSU(k + l + m)
    groups = {}
    for i, b in enumerate(p.assignment):
        groups.setdefault(("p", b), []).append(i)
    for i, b in enumerate(q.assignment):
        groups.setdefault(("q", b), []).append(k + i)
    for pts in groups.values():
        for x in pts[1:]:
            dsu.union(pts[0], x)
    boundary = list(range(k)) + list(range(k + l, k + l + m))
    labels = [dsu.find(x) for x in boundary]
    touched = set(labels)
    loops = len({dsu.find(x) for x in range(k, k + l)} - touched)
    return Partition.make(k, m, labels), loops


@lru_cache(maxsize=None)
def involution_part(p):
    """Mirror along the horizontal axis: P(k, l) -> P(l, k)."""
    return Partition.make(
        p.lower, p.upper, p.assignment[p.upper :] + p.assignment[: p.upper]
    )


@lru_cache(maxsize=None)
def left_rotate_part(p):
    """Move the leftmost upper point to the beginning of the lower row."""
    if p.upper == 0:
        raise PartitionError("no upper point to rotate")
    a = p.assignment
    return Partition.make(
        p.upper - 1, p.lower + 1, a[1 : p.upper] + (a[0],) + a[p.upper :]
    )


@lru_cache(maxsize=None)
def left_rotate_inv_part(p):
    """Move the first lower point back to the beginning of the upper row."""
    if p.lower == 0:
        raise PartitionError("no lower point to rotate")
    a = p.assignment
    return Partition.make(
        p.upper + 1, p.lower - 1, (a[p.upper],) + a[: p.upper] + a[p.upper + 1 :]
    )


@lru_cache(maxsize=None)
def right_rotate_part(p):
    """Move the last lower point to the end of the upper row."""
    if p.lower == 0:
        raise PartitionError("no lower point to rotate")
    a = p.assignment
    return Partition.make(
        p.upper + 1, p.lower - 1, a[: p.upper] + (a[-1],) + a[p.upper : -1]
    )


@lru_cache(maxsize=None)
def right_rotate_inv_part(p):
    """Move the last upper point to the end of the lower row."""
    if p.upper == 0:
        raise PartitionError("no upper point to rotate")
    a = p.assignment
    return Partition.make(
        p.upper - 1, p.lower + 1, a[: p.upper - 1] + a[p.upper :] + (a[p.upper - 1],)
    )


@lru_cache(maxsize=None)
def word_rotate_part(p, n=1):
    """Cyclic rotation of a one-line partition: last n letters to the front
    (first |n| letters to the end for negative n)."""
    if p.upper:
        raise PartitionError("word rotation needs a one-line partition")
    if p.lower == 0:
        return p
    n %= p.lower
    if n == 0:
        return p
    a = p.assignment
    return Partition.make(0, p.lower, a[-n:] + a[:-n])


@lru_cache(maxsize=None)
def reflect_part(p):
    """Reverse the letters of a one-line partition (the word star)."""
    if p.upper:
        raise PartitionError("reflection needs a one-line partition")
    return Partition.make(0, p.lower, tuple(reversed(p.assignment)))


@lru_cache(maxsize=None)
def contract_part(p):
    """Identify and remove the first two points of a one-line partition.

    Returns (partition of length l-2, loops) with loops = 1 exactly when
    the merged block contains no further points.
    """
    if p.upper or p.lower < 2:
        raise PartitionError("contraction needs a one-line partition of length >= 2")
    a = p.assignment
    merged = {a[0], a[1]}
    rest = a[2:]
    loops = 0 if any(x in merged for x in rest) else 1
    target = min(merged)
    labels = tuple(target if x in merged else x for x in rest)
    return Partition.make(0, p.lower - 2, labels), loops


# ---------------------------------------------------------------------------
# LinComb-level operations
# ---------------------------------------------------------------------------


def _loop_factor(delta):
    return DELTA_COEFF if delta is None else delta


def _as_lc(x):
    return LinComb.of(x) if isinstance(x, Partition) else x


def _acc(out, r, v):
    s = out.terms.get(r)
    v = v if s is None else s + v
    if v.is_zero():
        out.terms.pop(r, None)
    else:
        out.terms[r] = v


def tensor(x, y):
    x, y = _as_lc(x), _as_lc(y)
    out = LinComb.zero(x.upper + y.upper, x.lower + y.lower)
    for p, c in x.terms.items():
        for q, d in y.terms.items():
            _acc(out, tensor_parts(p, q), c * d)
    return out


def compose(q, p, delta=None):
    """Composition q . p of combinations, q in P(l, m), p in P(k, l)."""
    q, p = _as_lc(q), _as_lc(p)
    if q.upper != p.lower:
        raise PartitionError("composition shape mismatch")
    d = _loop_factor(delta)
    out = LinComb.zero(p.upper, q.lower)
    for qp, qc in q.terms.items():
        for pp, pc in p.terms.items():
            r, loops = compose_parts(qp, pp)
            v = qc * pc
            if loops:
                v = v * d**loops
            _acc(out, r, v)
    return out


def _relabel_map(x, f, shape):
    x = _as_lc(x)
    u, l = shape(x.upper, x.lower)
    out = LinComb.zero(u, l)
    for p, c in x.terms.items():
        _acc(out, f(p), c)
    return out


def involution(x):
    return _relabel_map(x, involution_part, lambda u, l: (l, u))


def left_rotate(x):
    return _relabel_map(x, left_rotate_part, lambda u, l: (u - 1, l + 1))


def left_rotate_inv(x):
    return _relabel_map(x, left_rotate_inv_part, lambda u, l: (u + 1, l - 1))


def right_rotate(x):
    return _relabel_map(x, right_rotate_part, lambda u, l: (u + 1, l - 1))


def right_rotate_inv(x):
    return _relabel_map(x, right_rotate_inv_part, lambda u, l: (u - 1, l + 1))


def reflect(x):
    return _relabel_map(x, reflect_part, lambda u, l: (u, l))


def word_rotate(x, n=1):
    return _relabel_map(x, lambda p: word_rotate_part(p, n), lambda u, l: (u, l))


def contract(x, delta=None):
    """The word contraction: identify and remove the first two letters."""
    x = _as_lc(x)
    if x.upper or x.lower < 2:
        raise OpsError("contraction needs one-line length >= 2")
    d = _loop_factor(delta)
    out = LinComb.zero(0, x.lower - 2)
    for p, c in x.terms.items():
        r, loops = contract_part(p)
        _acc(out, r, c * d if loops else c)
    return out


def contract_at(x, i, delta=None):
    """Contract the letters at positions i+1 and i+2 (1-based), i.e. the
    plain contraction conjugated by i word rotations."""
    return word_rotate(contract(word_rotate(x, -i), delta), i)


def to_word_form(x):
    """Rotate all upper points down: the one-line form of a combination."""
    x = _as_lc(x)
    for _ in range(x.upper):
        x = left_rotate(x)
    return x


def from_word_form(x, k):
    """Undo to_word_form: rotate the first k lower points back up."""
    x = _as_lc(x)
    for _ in range(k):
        x = left_rotate_inv(x)
    return x


def compose_via_words(q, p, delta=None):
    """Composition computed purely through word operations.

    Both factors are rotated to one-line form and tensored; the glued
    middle points then sit at the two ends of the word and are contracted
    one wrap-around pair at a time.  Cross-checks the direct composition.
    """
    q, p = _as_lc(q), _as_lc(p)
    k, l = p.upper, p.lower
    if q.upper != l:
        raise PartitionError("composition shape mismatch")
    w = tensor(to_word_form(q), to_word_form(p))
    for _ in range(l):
        w = contract(word_rotate(w, 1), delta)
    return from_word_form(word_rotate(w, k), k)


def rotation_polynomial(f, x, delta=None):
    """Apply f(R) to a one-line combination, f a univariate polynomial
    (Poly or ascending coefficient list) in the rotation R."""
    x = _as_lc(x)
    coeffs = f.univariate_coeffs() if isinstance(f, Poly) else list(f)
    out = LinComb.zero(0, x.lower)
    cur = x
    for c in coeffs:
        if c:
            out = out + cur.scale(Coeff.from_q(c))
        cur = word_rotate(cur)
    return out


# ---------------------------------------------------------------------------
# contraction plans (planar diagrams of generator copies)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContractionPlan:
    """A diagram of vertex_count copies of a generator of arity leg_arity.

    Legs are (vertex, leg) pairs, 1-based; every leg appears exactly once
    among the edges and the free legs.  Edges are contracted pairwise; the
    free legs remain as the boundary of the result, in the given order.
    """

    vertex_count: int
    leg_arity: int
    edges: tuple
    free_legs: tuple

    def __post_init__(self):
        seen = []
        for a, b in self.edges:
            seen.extend((a, b))
        seen.extend(self.free_legs)
        expect = {
            (v, i)
            for v in range(1, self.vertex_count + 1)
            for i in range(1, self.leg_arity + 1)
        }
        if len(seen) != len(expect) or set(seen) != expect:
            raise PlanError("edges and free legs must cover every leg exactly once")


def _plan_order(edges, boundary):
    """Find an order contracting each edge while its two legs are cyclically
    adjacent on the evolving boundary; depth-first with backtracking.
    Returns a list of (edge, position) steps or None."""

    def adjacency(bnd, edge):
        n = len(bnd)
        a, b = edge
        ia, ib = bnd.index(a), bnd.index(b)
        if (ia + 1) % n == ib:
            return ia
        if (ib + 1) % n == ia:
            return ib
        return None

    def rec(bnd, remaining):
        if not remaining:
            return []
        for edge in remaining:
            pos = adjacency(bnd, edge)
            if pos is None:
                continue
            nbnd = (bnd[pos:] + bnd[:pos])[2:]
            tail = rec(nbnd, [e for e in remaining if e != edge])
            if tail is not None:
                return [(edge, pos)] + tail
        return None

    return rec(tuple(boundary), list(edges))


def execute_plan(plan, gen, delta=None):
    """Contract a planar diagram of copies of a one-line generator."""
    gen = _as_lc(gen)
    if gen.upper or gen.lower != plan.leg_arity:
        raise PlanError("generator length must equal the plan leg arity")
    boundary = [
        (v, i)
        for v in range(1, plan.vertex_count + 1)
        for i in range(1, plan.leg_arity + 1)
    ]
    order = _plan_order(plan.edges, boundary)
    if order is None:
        raise PlanError("plan admits no planar contraction order")
    cur = gen
    for _ in range(plan.vertex_count - 1):
        cur = tensor(cur, gen)
    for _, pos in order:
        cur = contract(word_rotate(cur, -pos), delta)
        boundary = (boundary[pos:] + boundary[:pos])[2:]
    free = list(plan.free_legs)
    if sorted(boundary) != sorted(free):
        raise PlanError("free legs do not match the remaining boundary")
    if free:
        at = boundary.index(free[0])
        if boundary[at:] + boundary[:at] != free:
            raise PlanError("free legs are not in a planar cyclic order")
        cur = word_rotate(cur, -at)
    return cur


def _staged_steps(plan):
    """Find a step sequence that interleaves inserting generator copies and
    contracting edges whose legs are cyclically adjacent on the boundary.

    Inserting a copy places its legs as a contiguous block anywhere on the
    current cyclic boundary, so plans whose contraction graph is planar but
    not outerplanar (some vertex must sit in an interior face) are still
    executable.  Returns a list of ("insert", vertex, rotation, position)
    and ("contract", edge, position) steps, or None.
    """

    n, arity = plan.vertex_count, plan.leg_arity

    def greedy(bnd, remaining):
        steps = []
        progress = True
        while progress:
            progress = False
            m = len(bnd)
            for edge in remaining:
                a, b = edge
                if a not in bnd or b not in bnd:
                    continue
                ia, ib = bnd.index(a), bnd.index(b)
                pos = None
                if (ia + 1) % m == ib:
                    pos = ia
                elif (ib + 1) % m == ia:
                    pos = ib
                if pos is not None:
                    steps.append(("contract", edge, pos))
                    bnd = tuple((bnd[pos:] + bnd[:pos])[2:])
                    remaining = [e for e in remaining if e != edge]
                    m = len(bnd)
                    progress = True
                    break
        return bnd, remaining, steps

    def rec(bnd, remaining, todo):
        bnd, remaining, steps0 = greedy(bnd, remaining)
        if not todo:
            return steps0 if not remaining else None
        positions = range(len(bnd)) if bnd else (0,)
        for v in sorted(todo):
            legs = tuple((v, i) for i in range(1, arity + 1))
            for rot in range(arity):
                block = legs[rot:] + legs[:rot]
                for pos in positions:
                    nb = tuple(bnd[pos:] + bnd[:pos]) + block
                    tail = rec(nb, remaining, todo - {v})
                    if tail is not None:
                        return steps0 + [("insert", v, rot, pos)] + tail
        return None

    return rec((), list(plan.edges), set(range(1, n + 1)))


def execute_plan_staged(plan, gen, delta=None):
    """Contract a planar diagram, inserting copies of the generator as the
    contraction proceeds; handles plans execute_plan cannot order."""
    gen = _as_lc(gen)
    if gen.upper or gen.lower != plan.leg_arity:
        raise PlanError("generator length must equal the plan leg arity")
    steps = _staged_steps(plan)
    if steps is None:
        raise PlanError("plan admits no planar contraction order")
    cur = None
    boundary = []
    for step in steps:
        if step[0] == "insert":
            _, v, rot, pos = step
            legs = [(v, i) for i in range(1, plan.leg_arity + 1)]
            block = legs[rot:] + legs[:rot]
            piece = word_rotate(gen, -rot)
            if cur is None:
                cur = piece
                boundary = block
            else:
                cur = tensor(word_rotate(cur, -pos), piece)
                boundary = boundary[pos:] + boundary[:pos] + block
        else:
            _, _, pos = step
            cur = contract(word_rotate(cur, -pos), delta)
            boundary = (boundary[pos:] + boundary[:pos])[2:]
    free = list(plan.free_legs)
    if sorted(boundary) != sorted(free):
        raise PlanError("free legs do not match the remaining boundary")
    if free:
        at = boundary.index(free[0])
        if boundary[at:] + boundary[:at] != free:
            raise PlanError("free legs are not in a planar cyclic order")
        cur = word_rotate(cur, -at)
    return cur


def chain_plan(copies):
    """A closed chain of length-4 generator copies: consecutive copies are
    glued by double bonds, the closing bond is single and leaves one free
    leg at each of its endpoints."""
    if copies < 2:
        raise PlanError("chain plans need at least two copies")
    edges = []
    for v in range(1, copies):
        edges.append(((v, 4), (v + 1, 1)))
        edges.append(((v, 3), (v + 1, 2)))
    edges.append(((copies, 4), (1, 1)))
    free = ((1, 2), (copies, 3))
    return ContractionPlan(copies, 4, tuple(edges), free)


def cyclic_contract(gen, copies, delta=None):
    """Close `copies` copies of a length-4 generator into a cycle.

    One copy means the plain contraction of the generator; for more
    copies, consecutive ones are glued by double bonds and the closing
    single bond leaves a free leg at each of its endpoints, so the result
    has length 2.
    """
    gen = _as_lc(gen)
    if copies < 1:
        raise OpsError("need at least one copy")
    if copies == 1:
        return contract(gen, delta)
    return execute_plan(chain_plan(copies), gen, delta)
