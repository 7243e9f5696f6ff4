"""Exact arithmetic in the fraction field of multivariate polynomials over Q.

The distinguished loop variable is named "d"; any further symbols (free
parameters of a generator) are ordered after it alphabetically.  All
polynomials are kept in a pruned canonical form (unused variables dropped,
no zero terms), so equal values compare and hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

try:
    from gmpy2 import mpq as _mpq

    def qnum(a, b=1):
        return _mpq(a, b)
except ImportError:  # pragma: no cover
    from fractions import Fraction as _Fraction

    def qnum(a, b=1):
        return _Fraction(a, b)

Q_ZERO = qnum(0)
Q_ONE = qnum(1)

DELTA = "d"


class CoeffError(Exception):
    pass


class PoleError(CoeffError):
    """A specialization made a denominator vanish."""

    def __init__(self, bindings=None):
        if isinstance(bindings, str):
            self.bindings = {}
            super().__init__(bindings)
            return
        self.bindings = dict(bindings or {})
        super().__init__(f"denominator vanishes under {self.bindings}")


def canonical_vars(names):
    """Order symbols with the loop variable first, the rest alphabetically."""
    rest = sorted(n for n in set(names) if n != DELTA)
    if DELTA in names:
        return (DELTA, *rest)
    return tuple(rest)


def _merge_vars(a, b):
    if a == b:
        return a
    return canonical_vars(set(a) | set(b))


def _embed(terms, old_vars, new_vars):
    if old_vars == new_vars:
        return dict(terms)
    pos = [new_vars.index(v) for v in old_vars]
    n = len(new_vars)
    out = {}
    for exp, c in terms.items():
        e = [0] * n
        for p, x in zip(pos, exp):
            e[p] = x
        out[tuple(e)] = c
    return out


def _grlex_key(exp):
    return (sum(exp), exp)


class Poly:
    """Sparse multivariate polynomial over Q, graded-lex canonical order."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables=(), terms=None):
        terms = terms or {}
        # prune zero coefficients and unused variables
        terms = {e: c for e, c in terms.items() if c != 0}
        if terms and variables:
            used = [i for i in range(len(variables)) if any(e[i] for e in terms)]
            if len(used) < len(variables):
                variables = tuple(variables[i] for i in used)
                terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        elif not terms:
            variables = ()
        cvars = canonical_vars(variables)
        if cvars != tuple(variables):
            terms = _embed(terms, tuple(variables), cvars)
            variables = cvars
        else:
            variables = tuple(variables)
        self.variables = variables
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(value):
        value = qnum(value)
        if value == 0:
            return Poly()
        return Poly((), {(): value})

    @staticmethod
    def symbol(name):
        return Poly((name,), {(1,): Q_ONE})

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.variables

    def constant_value(self):
        if self.variables:
            raise CoeffError(f"not a constant: {self}")
        return self.terms.get((), Q_ZERO)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if name not in self.variables:
            return 0
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=0)

    def is_univariate(self):
        return len(self.variables) <= 1

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other):
        nv = _merge_vars(self.variables, other.variables)
        return nv, _embed(self.terms, self.variables, nv), _embed(
            other.terms, other.variables, nv
        )

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        nv, a, b = self._aligned(other)
        for e, c in b.items():
            s = a.get(e, Q_ZERO) + c
            if s == 0:
                a.pop(e, None)
            else:
                a[e] = s
        return Poly(nv, a)

    def __neg__(self):
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if not self.terms or not other.terms:
            return Poly()
        nv, a, b = self._aligned(other)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, Q_ZERO) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(nv, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return Poly.constant(other) - self

    def __pow__(self, n):
        if n < 0:
            raise CoeffError("negative polynomial power")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, q):
        q = qnum(q)
        if q == 0:
            return Poly()
        return Poly(self.variables, {e: c * q for e, c in self.terms.items()})

    # -- canonical leading data ---------------------------------------------

    def leading_exponent(self):
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_exponent()]

    def monic(self):
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # -- substitution --------------------------------------------------------

    def substitute(self, bindings):
        """Replace symbols by rational values; unbound symbols persist."""
        relevant = {k: qnum(v) for k, v in bindings.items() if k in self.variables}
        if not relevant:
            return self
        keep = [i for i, v in enumerate(self.variables) if v not in relevant]
        vals = {i: relevant[v] for i, v in enumerate(self.variables) if v in relevant}
        out = {}
        for e, c in self.terms.items():
            for i, val in vals.items():
                c = c * val ** e[i]
            ne = tuple(e[i] for i in keep)
            s = out.get(ne, Q_ZERO) + c
            if s == 0:
                out.pop(ne, None)
            else:
                out[ne] = s
        return Poly(tuple(self.variables[i] for i in keep), out)

    def substitute_poly(self, name, value):
        """Replace one symbol by a polynomial."""
        if name not in self.variables:
            return self
        i = self.variables.index(name)
        keep_vars = tuple(v for j, v in enumerate(self.variables) if j != i)
        out = Poly()
        for e, c in self.terms.items():
            ne = tuple(x for j, x in enumerate(e) if j != i)
            mono = Poly(keep_vars, {ne: c})
            out = out + mono * value ** e[i]
        return out

    # -- univariate views ------------------------------------------------------

    def univariate_coeffs(self):
        """Dense Q coefficient list (ascending) of a univariate polynomial."""
        if len(self.variables) > 1:
            raise CoeffError(f"not univariate: {self}")
        if not self.terms:
            return []
        if not self.variables:
            return [self.terms[()]]
        deg = max(e[0] for e in self.terms)
        out = [Q_ZERO] * (deg + 1)
        for e, c in self.terms.items():
            out[e[0]] = c
        return out

    @staticmethod
    def from_univariate(name, coeffs):
        return Poly((name,), {(i,): qnum(c) for i, c in enumerate(coeffs) if c != 0})

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, type(Q_ONE))):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{x}" if x > 1 else v
                for v, x in zip(self.variables, e)
                if x
            )
            if not mono:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = f"-{mono}"
            else:
                piece = f"{c}*{mono}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    __repr__ = __str__


POLY_ZERO = Poly()
POLY_ONE = Poly.constant(1)


# ---------------------------------------------------------------------------
# polynomial division and gcd
# ---------------------------------------------------------------------------


def _exp_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def exact_div(f, g):
    """Exact quotient f/g, or None if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return POLY_ZERO
    nv, ft, gt = f._aligned(g)
    glead = max(gt, key=_grlex_key)
    gc = gt[glead]
    quo = {}
    ft = dict(ft)
    while ft:
        flead = max(ft, key=_grlex_key)
        if not _exp_divides(glead, flead):
            return None
        qe = tuple(x - y for x, y in zip(flead, glead))
        qc = ft[flead] / gc
        quo[qe] = qc
        for e, c in gt.items():
            te = tuple(x + y for x, y in zip(e, qe))
            s = ft.get(te, Q_ZERO) - c * qc
            if s == 0:
                ft.pop(te, None)
            else:
                ft[te] = s
    return Poly(nv, quo)


def _uni_gcd_q(f, g):
    """Monic gcd of two univariate polynomials over Q (dense Euclid)."""
    a = [c for c in f]
    b = [c for c in g]

    def strip(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = strip(a), strip(b)
    while b:
        # a mod b
        inv = 1 / b[-1]
        while len(a) >= len(b):
            k = a[-1] * inv
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] -= k * c
            strip(a)
            if not a:
                break
        a, b = b, a
    if not a:
        return []
    inv = 1 / a[-1]
    return [c * inv for c in a]


def _split_by_var(p, x):
    """View p in Q[rest][x]: dict degree -> Poly over the other vars."""
    if x not in p.variables:
        return {0: p}
    i = p.variables.index(x)
    rest = p.variables[:i] + p.variables[i + 1 :]
    out = {}
    for e, c in p.terms.items():
        ne = e[:i] + e[i + 1 :]
        out.setdefault(e[i], {})[ne] = c
    return {d: Poly(rest, t) for d, t in out.items()}


def _join_by_var(coeffs, name):
    out = POLY_ZERO
    xs = Poly.symbol(name)
    for d, c in coeffs.items():
        out = out + c * xs**d
    return out


def _content(coeffs):
    polys = [c for c in coeffs.values() if not c.is_zero()]
    g = POLY_ZERO
    for c in polys:
        g = poly_gcd(g, c)
        if g == POLY_ONE:
            break
    return g


def _pseudo_rem(a, b, name):
    """Pseudo-remainder of a by b, both dicts degree -> Poly coefficient."""
    da = max(a)
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        # r := lb*r - lr*x^(dr-db)*b
        nr = {}
        for d, c in r.items():
            nr[d] = c * lb
        for d, c in b.items():
            t = nr.get(d + dr - db, POLY_ZERO) - c * lr
            if t.is_zero():
                nr.pop(d + dr - db, None)
            else:
                nr[d + dr - db] = t
        nr.pop(dr, None)
        r = {d: c for d, c in nr.items() if not c.is_zero()}
    return r


def poly_gcd(f, g):
    """Gcd in Q[vars], normalized with graded-lex leading coefficient 1."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return POLY_ONE
    nv = _merge_vars(f.variables, g.variables)
    if len(nv) == 1:
        out = _uni_gcd_q(f.univariate_coeffs(), g.univariate_coeffs())
        return Poly.from_univariate(nv[0], out)
    x = nv[-1]
    fa = _split_by_var(f, x)
    ga = _split_by_var(g, x)
    cf, cg = _content(fa), _content(ga)
    gamma = poly_gcd(cf, cg)
    fa = {d: exact_div(c, cf) for d, c in fa.items()}
    ga = {d: exact_div(c, cg) for d, c in ga.items()}
    a, b = (fa, ga) if max(fa) >= max(ga) else (ga, fa)
    while b:
        r = _pseudo_rem(a, b, x)
        if r:
            cr = _content(r)
            r = {d: exact_div(c, cr) for d, c in r.items()}
        a, b = b, r
    ca = _content(a)
    a = {d: exact_div(c, ca) for d, c in a.items()}
    return (_join_by_var(a, x) * gamma).monic()


def gcd_univariate(f, g):
    """Monic univariate gcd via the Euclidean algorithm.

    Raises on genuinely multivariate input; the inputs must share their
    variable (or be constants).
    """
    if not f.is_univariate() or not g.is_univariate():
        raise CoeffError("gcd_univariate requires univariate polynomials")
    if f.variables and g.variables and f.variables != g.variables:
        raise CoeffError("gcd_univariate: different variables")
    if f.is_zero() and g.is_zero():
        raise CoeffError("gcd_univariate(0, 0) undefined")
    name = (f.variables or g.variables or (DELTA,))[0]
    out = _uni_gcd_q(f.univariate_coeffs(), g.univariate_coeffs())
    return Poly.from_univariate(name, out)


def rational_roots(f):
    """All rational roots of a univariate polynomial over Q."""
    coeffs = f.univariate_coeffs()
    if len(coeffs) <= 1:
        return []
    roots = set()
    while coeffs and coeffs[0] == 0:
        roots.add(Q_ZERO)
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    # clear denominators
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * int(qnum(c).denominator) // _gcd_int(
            den_lcm, int(qnum(c).denominator)
        )
    ints = [int(c * den_lcm) for c in coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (qnum(p, q), qnum(-p, q)):
                if sum(c * cand**i for i, c in enumerate(coeffs)) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# fraction field
# ---------------------------------------------------------------------------


class Coeff:
    """Element of the fraction field Q(d, parameters), kept in lowest terms.

    The denominator is normalized to have graded-lex leading coefficient 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized=False):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        if den is None:
            den = POLY_ONE
        elif not isinstance(den, Poly):
            den = Poly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _normalize_fraction(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_q(q):
        return Coeff(Poly.constant(q), POLY_ONE, _normalized=True)

    @staticmethod
    def symbol(name):
        return Coeff(Poly.symbol(name), POLY_ONE, _normalized=True)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Coeff):
            return other
        if isinstance(other, Poly):
            return Coeff(other)
        return Coeff.from_q(qnum(other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_constant() and other.is_constant():
            return Coeff.from_q(self.constant_value() + other.constant_value())
        if self.den == other.den:
            return Coeff(self.num + other.num, self.den)
        return Coeff(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return Coeff(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_constant() and other.is_constant():
            return Coeff.from_q(self.constant_value() * other.constant_value())
        return Coeff(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise PoleError("division by zero coefficient")
        if self.is_constant() and other.is_constant():
            return Coeff.from_q(self.constant_value() / other.constant_value())
        return Coeff(self.num * other.den, self.den * other.num)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return Coeff(self.den, self.num) ** (-n)
        return Coeff(self.num**n, self.den**n)

    def inverse(self):
        return Coeff(self.den, self.num)

    # -- specialization --------------------------------------------------------

    def specialize(self, spec):
        bindings = spec.as_dict() if isinstance(spec, Specialization) else dict(spec)
        den = self.den.substitute(bindings)
        if den.is_zero():
            raise PoleError(bindings)
        return Coeff(self.num.substitute(bindings), den)

    # -- comparisons -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (Coeff, Poly, int, type(Q_ONE))):
            other = self._coerce(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.den == POLY_ONE:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    __repr__ = __str__


def _normalize_fraction(num, den):
    if num.is_zero():
        return POLY_ZERO, POLY_ONE
    if den.is_constant():
        inv = 1 / den.constant_value()
        return num.scale(inv), POLY_ONE
    if not num.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = exact_div(num, g)
            den = exact_div(den, g)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num, den = num.scale(inv), den.scale(inv)
    if den.is_constant():
        return num.scale(1 / den.constant_value()), POLY_ONE
    return num, den


COEFF_ZERO = Coeff.from_q(0)
COEFF_ONE = Coeff.from_q(1)
DELTA_COEFF = Coeff.symbol(DELTA)


@dataclass(frozen=True)
class Specialization:
    """A partial assignment symbol -> rational value."""

    bindings: tuple = ()

    @staticmethod
    def of(**kwargs):
        return Specialization(tuple(sorted((k, qnum(v)) for k, v in kwargs.items())))

    @staticmethod
    def delta(value):
        return Specialization(((DELTA, qnum(value)),))

    def as_dict(self):
        return dict(self.bindings)

    def __bool__(self):
        return bool(self.bindings)
