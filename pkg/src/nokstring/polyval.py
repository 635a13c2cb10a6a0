"""Sparse rational polynomials and term-order valuations.

Values of valuations are ``ValVector`` tuples, compared lexicographically
and added componentwise.  The highest term valuation returns the negated
lex-largest exponent, the lowest term valuation the lex-smallest exponent.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import factorial

from .linalg import fmt_frac


class ZeroValuationError(ValueError):
    """A valuation was asked for the value of zero."""


class LeafSeparationError(ArithmeticError):
    """Two colliding elements could not be separated by a scalar combination."""


class ValVector(tuple):
    """Integer tuple with lexicographic order and componentwise addition."""

    def __new__(cls, values=()):
        return super().__new__(cls, (int(x) for x in values))

    def __add__(self, other):
        if len(self) != len(other):
            raise ValueError("length mismatch")
        return ValVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return ValVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return ValVector(-a for a in self)

    def __repr__(self):
        return f"ValVector{tuple(self)}"


@total_ordering
@dataclass(frozen=True)
class GradedValue:
    """Value (degree, tail) with (k, x) > (l, y) iff k < l, or k == l and x > y."""

    degree: int
    tail: tuple

    def __lt__(self, other):
        if self.degree != other.degree:
            return self.degree > other.degree
        return tuple(self.tail) < tuple(other.tail)

    def __add__(self, other):
        return GradedValue(self.degree + other.degree, ValVector(self.tail) + ValVector(other.tail))

    def as_tuple(self):
        return (self.degree, *self.tail)


class MultiPoly:
    """Polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, nvars, c=1):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp), {tuple(exp): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            if not c:
                return MultiPoly(self.nvars)
            return MultiPoly._raw(self.nvars, {e: c * x for e, x in self.terms.items()})
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultiPoly.constant(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def derivative(self, i, times=1):
        out = {}
        for e, c in self.terms.items():
            if e[i] < times:
                continue
            ne = list(e)
            ne[i] -= times
            out[tuple(ne)] = c * (factorial(e[i]) // factorial(e[i] - times))
        return MultiPoly._raw(self.nvars, out)

    def restrict_zero(self, i):
        """Set variable i to zero."""
        return MultiPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if e[i] == 0})

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                t *= Fraction(x) ** k
            total += t
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def to_json(self):
        return {
            "vars": self.nvars,
            "terms": [{"exp": list(e), "coef": fmt_frac(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["vars"], {tuple(t["exp"]): Fraction(t["coef"]) for t in d["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"t{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            coef = fmt_frac(c)
            parts.append(f"{coef}*{mono}" if mono else coef)
        return " + ".join(parts)


def _order_key(order, nvars):
    order = list(range(nvars)) if order is None else list(order)
    if sorted(order) != list(range(nvars)):
        raise ValueError("order must be a permutation of the variable indices")
    return order


def leading_exponent(f, order=None, highest=True):
    """Lex-extreme exponent under the variable priority ``order``, reordered."""
    if not f:
        raise ZeroValuationError("zero polynomial has no leading term")
    order = _order_key(order, f.nvars)
    pick = max if highest else min
    exp = pick(f.terms, key=lambda e: tuple(e[i] for i in order))
    return exp


def highest_term_valuation(f, order=None):
    """(-l_1, ..., -l_d) for the lex-largest exponent l, listed in priority order."""
    order = _order_key(order, f.nvars) if f else order
    exp = leading_exponent(f, order, highest=True)
    return ValVector(-exp[i] for i in order)


def lowest_term_valuation(f, order=None):
    order = _order_key(order, f.nvars) if f else order
    exp = leading_exponent(f, order, highest=False)
    return ValVector(exp[i] for i in order)


class TermValuation:
    """Highest or lowest term valuation with a fixed variable priority."""

    def __init__(self, nvars, highest=True, order=None):
        self.nvars = nvars
        self.highest = highest
        self.order = _order_key(order, nvars)

    def __call__(self, f):
        return self.value(f)

    def value(self, f):
        if self.highest:
            return highest_term_valuation(f, self.order)
        return lowest_term_valuation(f, self.order)

    def leading_coefficient(self, f):
        return f.terms[leading_exponent(f, self.order, self.highest)]

    def leaf(self, f):
        return self.value(f), (self.leading_coefficient(f),)

    def exponent_of(self, value):
        """Exponent tuple (in variable index order) with the given value."""
        exp = [0] * self.nvars
        for pos, i in enumerate(self.order):
            exp[i] = -value[pos] if self.highest else value[pos]
        return tuple(exp)


def graded_extension(pieces):
    """(s, v(f_s)) for the top nonzero degree s among ``(degree, element, value)`` pieces."""
    live = [(k, v) for k, elem, v in pieces if elem]
    if not live:
        raise ZeroValuationError("all graded pieces are zero")
    s, v = max(live, key=lambda kv: kv[0])
    return GradedValue(s, ValVector(v))


def _scale_sub(x, c, y):
    return x - c * y


def leaf_reduce(vectors, leaf, combine=_scale_sub):
    """Make valuation values pairwise distinct by eliminating leaf collisions.

    ``leaf(x)`` returns ``(value, representative)`` where the representative is
    a tuple of rationals spanning the one-dimensional leaf of ``value``.
    Collisions are processed in increasing value order, always eliminating
    against the lowest-index element of the colliding group.  Returns the
    reduced vectors and their values.
    """
    vecs = list(vectors)
    leaves = [leaf(v) for v in vecs]
    while True:
        groups = {}
        for j, (val, _) in enumerate(leaves):
            groups.setdefault(val, []).append(j)
        clashes = sorted(val for val, idx in groups.items() if len(idx) > 1)
        if not clashes:
            break
        idx = groups[clashes[0]]
        p = idx[0]
        rep_p = leaves[p][1]
        k = next(n for n, x in enumerate(rep_p) if x)
        for j in idx[1:]:
            rep_j = leaves[j][1]
            c = Fraction(rep_j[k]) / rep_p[k]
            if any(a != c * b for a, b in zip(rep_j, rep_p)):
                raise LeafSeparationError(f"leaf at {clashes[0]} is not one-dimensional")
            vecs[j] = combine(vecs[j], c, vecs[p])
            if not vecs[j]:
                raise LeafSeparationError("inputs are linearly dependent")
            leaves[j] = leaf(vecs[j])
    return vecs, [val for val, _ in leaves]


def leaf_reduce_polys(polys, valuation):
    """leaf_reduce specialised to MultiPoly with a TermValuation."""
    return leaf_reduce(polys, valuation.leaf)


@dataclass
class AxiomReport:
    pairs_checked: int = 0
    combos_checked: int = 0
    ultrametric: int = 0
    sharpened: int = 0
    scalar: int = 0
    multiplicative: int = 0
    min_of_distinct: int = 0
    examples: list = None

    @property
    def violations(self):
        return self.ultrametric + self.sharpened + self.scalar + self.multiplicative + self.min_of_distinct

    def as_dict(self):
        return {
            "pairs_checked": self.pairs_checked,
            "combos_checked": self.combos_checked,
            "ultrametric": self.ultrametric,
            "sharpened": self.sharpened,
            "scalar": self.scalar,
            "multiplicative": self.multiplicative,
            "min_of_distinct": self.min_of_distinct,
            "violations": self.violations,
        }


def check_prevaluation_axioms(samples, valuation, scalars=(Fraction(-3), Fraction(1, 2), Fraction(1)),
                              multiplicative=True, combos=20, seed=0):
    """Count axiom violations of ``valuation`` over all pairs of ``samples``."""
    rep = AxiomReport(examples=[])
    samples = [f for f in samples if f]
    vals = [valuation(f) for f in samples]

    def note(kind, *items):
        if len(rep.examples) < 5:
            rep.examples.append((kind, items))

    for f, vf in zip(samples, vals):
        for c in scalars:
            if valuation(c * f) != vf:
                rep.scalar += 1
                note("scalar", f, c)
    for a in range(len(samples)):
        for b in range(a + 1, len(samples)):
            f, g = samples[a], samples[b]
            vf, vg = vals[a], vals[b]
            rep.pairs_checked += 1
            s = f + g
            if s:
                vs = valuation(s)
                if vs < min(vf, vg):
                    rep.ultrametric += 1
                    note("ultrametric", f, g)
                if vf != vg and vs != min(vf, vg):
                    rep.sharpened += 1
                    note("sharpened", f, g)
            if multiplicative:
                p = f * g
                if p and valuation(p) != vf + vg:
                    rep.multiplicative += 1
                    note("multiplicative", f, g)
    rng = random.Random(seed)
    by_val = {}
    for f, v in zip(samples, vals):
        by_val.setdefault(v, f)
    distinct = list(by_val.items())
    for _ in range(combos if len(distinct) >= 2 else 0):
        chosen = rng.sample(distinct, rng.randint(2, min(4, len(distinct))))
        total = None
        for v, f in chosen:
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
            total = c * f if total is None else total + c * f
        rep.combos_checked += 1
        if not total or valuation(total) != min(v for v, _ in chosen):
            rep.min_of_distinct += 1
            note("min_of_distinct", chosen)
    return rep


def max_degree_function(f):
    """Negative control: total degree, which is not a valuation for the min convention."""
    return f.total_degree()


def random_poly(rng, nvars, max_terms=4, max_exp=3, coef_range=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        c = Fraction(rng.randint(-coef_range, coef_range), rng.randint(1, 3))
        if c:
            terms[e] = terms.get(e, 0) + c
    p = MultiPoly(nvars, terms)
    return p if p else MultiPoly.constant(nvars, 1)
