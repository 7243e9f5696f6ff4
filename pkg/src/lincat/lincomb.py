"""Formal linear combinations of partitions and echelon bases of spans.

A LinComb is a finite sum of partitions with Coeff coefficients; all
partitions in one combination share the same shape (upper, lower).
ModuleBasis keeps a reduced row echelon basis of a span of one-line
combinations, with pivots chosen as the smallest partition in the
lexicographic RGS order.
"""

from __future__ import annotations

from .coeffs import COEFF_ONE, Coeff, qnum, rational_roots
from .partitions import Partition, PartitionError


def _as_coeff(c):
    if isinstance(c, Coeff):
        return c
    return Coeff.from_q(qnum(c))


class LinComb:
    __slots__ = ("upper", "lower", "terms")

    def __init__(self, upper, lower, terms=None):
        self.upper = upper
        self.lower = lower
        self.terms = {}
        if terms:
            for p, c in terms.items():
                if p.upper != upper or p.lower != lower:
                    raise PartitionError("mixed shapes in linear combination")
                c = _as_coeff(c)
                if not c.is_zero():
                    self.terms[p] = c

    @staticmethod
    def of(p, c=1):
        return LinComb(p.upper, p.lower, {p: _as_coeff(c)})

    @staticmethod
    def zero(upper, lower):
        return LinComb(upper, lower)

    def is_zero(self):
        return not self.terms

    def coefficient_of(self, p):
        return self.terms.get(p, Coeff.from_q(0))

    def same_shape(self, other):
        return self.upper == other.upper and self.lower == other.lower

    def __add__(self, other):
        if not self.same_shape(other):
            raise PartitionError("shape mismatch in addition")
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(p, None)
            else:
                out[p] = s
        r = LinComb(self.upper, self.lower)
        r.terms = out
        return r

    def __neg__(self):
        r = LinComb(self.upper, self.lower)
        r.terms = {p: -c for p, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _as_coeff(c)
        r = LinComb(self.upper, self.lower)
        if not c.is_zero():
            r.terms = {p: v * c for p, v in self.terms.items()}
        return r

    def map_terms(self, f):
        """Apply f(partition, coeff) -> LinComb termwise and sum."""
        out = None
        for p, c in self.terms.items():
            piece = f(p, c)
            out = piece if out is None else out + piece
        return out

    def specialize(self, spec):
        r = LinComb(self.upper, self.lower)
        for p, c in self.terms.items():
            s = c.specialize(spec)
            if not s.is_zero():
                r.terms[p] = s
        return r

    def support(self):
        return sorted(self.terms, key=lambda p: p.assignment)

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.same_shape(other) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for p in self.support():
            c = self.terms[p]
            cs = str(c)
            word = str(p)
            if cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append(f"-{word}")
            else:
                if any(op in cs[1:] for op in "+-") or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{word}")
        out = parts[0]
        for piece in parts[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    __repr__ = __str__


class ModuleBasis:
    """Reduced echelon basis for a span of one-line combinations of fixed
    length.  Pivot of a row is its smallest partition in RGS order; pivot
    coefficients are normalized to 1 and eliminated from all other rows.
    """

    def __init__(self, length):
        self.length = length
        self.rows = {}  # pivot Partition -> LinComb
        self.pivot_events = []  # leading coefficients seen while normalizing

    @property
    def dimension(self):
        return len(self.rows)

    def reduce(self, v):
        """Remainder of v after elimination against the basis."""
        if v.is_zero():
            return v
        hits = [p for p in v.terms if p in self.rows]
        while hits:
            for p in sorted(hits, key=lambda q: q.assignment):
                c = v.terms.get(p)
                if c is not None and not c.is_zero():
                    v = v - self.rows[p].scale(c)
            hits = [p for p in v.terms if p in self.rows]
        return v

    def contains(self, v):
        return self.reduce(v).is_zero()

    def insert(self, v):
        """Add v to the span; returns True if the dimension grew."""
        v = self.reduce(v)
        if v.is_zero():
            return False
        pivot = min(v.terms, key=lambda p: p.assignment)
        lead = v.terms[pivot]
        self.pivot_events.append(lead)
        v = v.scale(lead.inverse())
        for piv, row in list(self.rows.items()):
            c = row.terms.get(pivot)
            if c is not None:
                self.rows[piv] = row - v.scale(c)
        self.rows[pivot] = v
        return True

    def sorted_rows(self):
        return [self.rows[p] for p in sorted(self.rows, key=lambda q: q.assignment)]

    def vanishing_loci(self):
        """Rational values of the loop parameter where some pivot leading
        coefficient (numerator or denominator) vanishes."""
        roots = set()
        for c in self.pivot_events:
            for poly in (c.num, c.den):
                if poly.is_constant():
                    continue
                if poly.variables == ("d",):
                    roots.update(rational_roots(poly))
        return sorted(roots)


class CategoryApprox:
    """Per-length spans K_0 .. K_l0 approximating a category of partitions."""

    def __init__(self, l0):
        self.l0 = l0
        self.spaces = {l: ModuleBasis(l) for l in range(l0 + 1)}
        self.passes = 0
        self.converged = False

    def dimensions(self):
        return [self.spaces[l].dimension for l in range(self.l0 + 1)]

    def contains(self, v):
        if v.upper != 0 or v.lower > self.l0:
            return False
        return self.spaces[v.lower].contains(v)

    def vanishing_loci(self):
        roots = set()
        for basis in self.spaces.values():
            roots.update(basis.vanishing_loci())
        return sorted(roots)
