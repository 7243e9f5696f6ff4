"""Iterative approximation of the category generated by a set of words.

The category generated by one-line combinations is approximated from
below by spans K_0 .. K_l0, closed under rotation and contraction
(add_parts) and repeatedly enlarged by tensor products of what is already
there (add_tensors) until nothing new appears.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import Coeff, qnum
from .lincomb import CategoryApprox, LinComb
from .ops import contract, reflect, tensor, word_rotate
from .partitions import Partition, pair_part


class ClosureError(Exception):
    pass


DEFAULT_L0 = 8
DEFAULT_MAX_PASSES = 20


def add_parts(approx, l, vectors, delta=None, log=None, prune=True):
    """Insert vectors into K_l together with all their word rotations, and
    recursively all their contractions.

    With prune=True a vector already contained in the current span is
    skipped entirely; this is sound because the spans are kept closed
    under the (linear) rotation and contraction maps.
    """
    if l > approx.l0:
        raise ClosureError(f"length {l} exceeds the cutoff {approx.l0}")
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return False
    space = approx.spaces[l]
    grew = False

    def handle(batch):
        nonlocal grew
        live = []
        for v in batch:
            if v.is_zero():
                continue
            if log is not None:
                log.append((l, v))
            if prune and space.contains(v):
                continue
            live.append(v)
        if not live:
            return
        if l >= 2:
            if add_parts(
                approx, l - 2, [contract(v, delta) for v in live], delta, log, prune
            ):
                grew = True
        for v in live:
            if space.insert(v):
                grew = True

    handle(vectors)
    current = vectors
    for _ in range(1, max(l, 1)):
        current = [word_rotate(v) for v in current]
        handle(current)
    return grew


def add_tensors(approx, delta=None, log=None, prune=True):
    """One pass of tensoring the spans pairwise; returns True if anything
    grew.  Spans are updated in place, so later pairs in the same pass see
    earlier additions."""
    grew = False
    l0 = approx.l0
    for k in range(1, l0 // 2 + 1):
        for l in range(k, l0 - k + 1):
            rows_k = approx.spaces[k].sorted_rows()
            rows_l = approx.spaces[l].sorted_rows()
            if not rows_k or not rows_l:
                continue
            for x in rows_k:
                for y in rows_l:
                    if add_parts(
                        approx, k + l, [tensor(x, y)], delta, log, prune
                    ):
                        grew = True
    return grew


def add_compositions(approx, delta=None, log=None, prune=True):
    """One pass of composing rotated span elements pairwise.

    Tensor products alone cannot realize compositions whose one-line
    intermediate exceeds the cutoff, so rows are split into two-row form
    at every gluing depth and composed directly; the result length
    l1 + l2 - 2j stays within the cutoff even when l1 + l2 does not.
    """
    from .ops import compose, from_word_form, to_word_form

    grew = False
    l0 = approx.l0
    for l1 in range(1, l0 + 1):
        rows1 = approx.spaces[l1].sorted_rows()
        if not rows1:
            continue
        for l2 in range(1, l0 + 1):
            rows2 = approx.spaces[l2].sorted_rows()
            if not rows2:
                continue
            for j in range(1, min(l1, l2) + 1):
                if l1 + l2 - 2 * j > l0:
                    continue
                for x in rows1:
                    k = l1 - j
                    p = from_word_form(x, k)
                    for y in rows2:
                        q = from_word_form(y, j)
                        r = to_word_form(compose(q, p, delta))
                        if add_parts(
                            approx, l1 + l2 - 2 * j, [r], delta, log, prune
                        ):
                            grew = True
    return grew


def closure(
    generators,
    l0=DEFAULT_L0,
    specialization=None,
    max_passes=DEFAULT_MAX_PASSES,
    log=None,
    prune=True,
):
    """Approximate the category generated by one-line combinations.

    The pair partition is always included.  Each generator is seeded
    together with its reflection.  If a specialization binding the loop
    symbol is given, all arithmetic runs at that rational value.
    """
    delta = None
    gens = []
    for g in generators:
        if isinstance(g, Partition):
            g = LinComb.of(g)
        gens.append(g)
    if specialization:
        bindings = specialization.as_dict()
        gens = [g.specialize(specialization) for g in gens]
        if "d" in bindings:
            delta = Coeff.from_q(bindings["d"])
    approx = CategoryApprox(l0)
    add_parts(approx, 2, [LinComb.of(pair_part())], delta, log, prune)
    for g in gens:
        if g.is_zero():
            continue
        if g.lower > l0:
            raise ClosureError("generator longer than the cutoff")
        add_parts(approx, g.lower, [g, reflect(g)], delta, log, prune)
    for _ in range(max_passes):
        approx.passes += 1
        grew = add_tensors(approx, delta, log, prune)
        if add_compositions(approx, delta, log, prune):
            grew = True
        if not grew:
            approx.converged = True
            break
    return approx


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class EasinessReport:
    dimensions: list
    converged: bool
    passes: int
    verdicts: list  # (generator text, [(partition, contained)], easy flag)
    vanishing_loci: list = field(default_factory=list)

    @property
    def all_easy(self):
        return all(flag for _, _, flag in self.verdicts)

    def render(self):
        lines = []
        for l, dim in enumerate(self.dimensions):
            lines.append(f"dim[{l}] = {dim}")
        lines.append(f"converged = {self.converged}")
        lines.append(f"passes = {self.passes}")
        for text, summands, easy in self.verdicts:
            lines.append(f"generator {text}")
            for p, ok in summands:
                lines.append(f"  summand {p}: {'contained' if ok else 'missing'}")
            n_in = sum(1 for _, ok in summands if ok)
            verdict = "EASY (proven)" if easy else "NON-EASY CANDIDATE"
            lines.append(f"  verdict = {verdict} ({n_in}/{len(summands)} summands)")
        if self.vanishing_loci:
            locs = ", ".join(str(x) for x in self.vanishing_loci)
            lines.append(f"pivot vanishing loci (d) = {locs}")
        return "\n".join(lines)


def easiness_report(approx, generators, specialization=None):
    """Check, for every summand partition of every generator, whether the
    single partition lies in the approximated category.  If all summands
    of a generator are contained, the generator spans an easy category; a
    missing summand up to the cutoff only yields a candidate verdict."""
    verdicts = []
    for g in generators:
        if isinstance(g, Partition):
            g = LinComb.of(g)
        text = str(g)
        if specialization:
            g = g.specialize(specialization)
        summands = []
        for p in g.support():
            summands.append((p, approx.contains(LinComb.of(p))))
        verdicts.append((text, summands, all(ok for _, ok in summands)))
    return EasinessReport(
        dimensions=approx.dimensions(),
        converged=approx.converged,
        passes=approx.passes,
        verdicts=verdicts,
        vanishing_loci=approx.vanishing_loci(),
    )


def singleton_free_check(gen, delta=None):
    """For a one-line generator of odd length, decide whether every
    composition (id tensor q) gen with q an upper partition of length-1
    fewer points vanishes; this certifies that the generated category
    contains no singleton-supported partitions beyond the span of the
    generator itself."""
    from .ops import compose
    from .partitions import enumerate_partitions

    if isinstance(gen, Partition):
        gen = LinComb.of(gen)
    if gen.upper:
        raise ClosureError("one-line generator expected")
    l = gen.lower
    if l < 2:
        raise ClosureError("generator too short")
    idp = Partition.identity(1)
    for r in enumerate_partitions(l - 1):
        q = Partition.make(l - 1, 0, r.assignment)
        probe = tensor(idp, LinComb.of(q))  # in P(l, 1)
        if not compose(probe, gen, delta).is_zero():
            return False
    return True
