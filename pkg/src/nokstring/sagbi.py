"""Subduction, SAGBI checks and the degeneration to the semigroup algebra.

Valuations are objects with ``leaf(f) -> (value, representative)`` as used by
``polyval.leaf_reduce``; values are ``ValVector`` or ``GradedValue``.  Elements
only need ``+``, ``-``, ``*`` (with each other and with rational scalars) and
truthiness.

The section ring R(L_lambda) is modelled inside polynomials in (s, t_1..t_N):
a level-k section f_sigma becomes s^k f_sigma(t).  The highest term valuation
with s first then has value (-k, -iota), which orders exactly like the graded
extension (lower level is larger).
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .bott_samelson import expand_in_basis, leaf_basis_polys, matrix_coeff_poly
from .hwmodule import build_hw_module
from .linalg import fmt_frac
from .polyval import GradedValue, MultiPoly, TermValuation, leaf_reduce
from .strings import _check_longest_word


class NotRepresentableError(ArithmeticError):
    def __init__(self, value, remainder, steps):
        super().__init__(f"value {tuple(_as_tuple(value))} is not in the generated semigroup")
        self.value = value
        self.remainder = remainder
        self.steps = steps


class StepCapError(RuntimeError):
    """Subduction did not finish within the step cap (inconclusive)."""


class NotClosedError(ValueError):
    pass


class NonAdditiveError(ArithmeticError):
    pass


def _as_tuple(v):
    if isinstance(v, GradedValue):
        return v.as_tuple()
    return tuple(v)


@dataclass
class ValuedGenerator:
    element: object
    value: object = None

    @classmethod
    def make(cls, element, valuation):
        return cls(element, valuation.leaf(element)[0])

    def check(self, valuation):
        return valuation.leaf(self.element)[0] == self.value


def _exponent_bound(gens, target, default):
    # a coordinate where every generator is strictly one-signed bounds the total exponent
    for k in range(len(target)):
        col = [g[k] for g in gens]
        if all(x > 0 for x in col) or all(x < 0 for x in col):
            if target[k] * col[0] < 0:
                return -1
            return abs(target[k]) // min(abs(x) for x in col)
    return default


def semigroup_membership(target, values, max_exponent=12):
    """Nonnegative integer d with sum d_i values_i == target, or None.

    Exhaustive bounded search; among solutions the one found first when
    exponents are tried from generator 0 upward is returned.
    """
    target = _as_tuple(target)
    gens = [_as_tuple(v) for v in values]
    if not any(target):
        return (0,) * len(gens)
    if not gens:
        return None
    cap = _exponent_bound(gens, target, max_exponent)
    if cap < 0:
        return None
    n = len(gens)

    def search(i, rem, budget):
        if i == n:
            return () if not any(rem) else None
        for d in range(budget + 1):
            nxt = tuple(r - d * g for r, g in zip(rem, gens[i]))
            tail = search(i + 1, nxt, budget - d)
            if tail is not None:
                return (d,) + tail
        return None

    return search(0, target, cap)


def _monomial(generators, exps, one):
    out = one
    for g, d in zip(generators, exps):
        for _ in range(d):
            out = out * g.element
    return out


def _one_like(generators, h):
    if isinstance(h, MultiPoly):
        return MultiPoly.constant(h.nvars)
    if generators:
        return generators[0].element ** 0
    raise ValueError("cannot build the unit element")


@dataclass
class SubductionTrace:
    """h = sum c * prod g_i^d_i over steps, plus the remainder."""

    steps: list = field(default_factory=list)
    remainder: object = None

    @property
    def complete(self):
        return not self.remainder

    def replay(self, generators, one):
        out = self.remainder if self.remainder is not None else one * 0
        for exps, c, _ in self.steps:
            out = out + _monomial(generators, exps, one) * c
        return out

    def to_json(self):
        return {
            "steps": [
                {"exponents": list(e), "scalar": fmt_frac(c), "value": list(_as_tuple(v))}
                for e, c, v in self.steps
            ],
            "remainder_zero": self.complete,
        }


def subduct(h, generators, valuation, step_cap=200, max_exponent=12):
    """Rewrite h as a polynomial in the generators by repeated leaf cancellation."""
    one = _one_like(generators, h)
    gen_values = []
    for g in generators:
        v = valuation.leaf(g.element)[0]
        if g.value is not None and v != g.value:
            raise ValueError("declared generator value does not match the valuation")
        gen_values.append(v)
    steps = []
    current = h
    last = None
    while current:
        if len(steps) >= step_cap:
            raise StepCapError(f"no zero remainder after {step_cap} steps")
        val, rep = valuation.leaf(current)
        if last is not None and not last < val:
            raise ArithmeticError("remainder value did not increase")
        exps = semigroup_membership(val, gen_values, max_exponent)
        if exps is None:
            raise NotRepresentableError(val, current, steps)
        mono = _monomial(generators, exps, one)
        mval, mrep = valuation.leaf(mono)
        if mval != val:
            raise ArithmeticError("monomial value differs from the sum of generator values")
        k = next(n for n, x in enumerate(mrep) if x)
        c = Fraction(rep[k]) / mrep[k]
        if any(a != c * b for a, b in zip(rep, mrep)):
            raise ArithmeticError("leaf is not one-dimensional")
        steps.append((tuple(exps), c, val))
        current = current - mono * c
        last = val
    return SubductionTrace(steps, current)


def is_sagbi(generators, sample, valuation, max_exponent=12):
    """Check sampled values lie in the generated semigroup and every sample element subducts.

    ``sample`` is a list of graded pieces, each a list of elements spanning it.
    """
    gen_values = [valuation.leaf(g.element)[0] for g in generators]
    checked = 0
    for level, piece in enumerate(sample):
        if not piece:
            continue
        _, values = leaf_reduce(piece, valuation.leaf)
        for v in sorted(values):
            if semigroup_membership(v, gen_values, max_exponent) is None:
                return {"ok": False, "witness": {"piece": level, "value": list(_as_tuple(v))}, "checked": checked}
        for h in piece:
            try:
                subduct(h, generators, valuation, max_exponent=max_exponent)
            except NotRepresentableError as err:
                return {"ok": False, "witness": {"piece": level, "value": list(_as_tuple(err.value))}, "checked": checked}
            checked += 1
    return {"ok": True, "witness": None, "checked": checked}


# --- semigroup algebra and degeneration ----------------------------------------

def semigroup_algebra(points, level_cap):
    """Multiplication table t^p * t^q = t^(p+q) on points (level, ...) up to the cap."""
    pts = sorted({tuple(p) for p in points})
    pset = set(pts)
    table = {}
    for p in pts:
        for q in pts:
            if p[0] + q[0] > level_cap:
                continue
            s = tuple(a + b for a, b in zip(p, q))
            if s not in pset:
                raise NotClosedError(f"{p} + {q} = {s} is missing from the sample")
            table[(p, q)] = s
    return table


def associativity_violations(table):
    bad = []
    for (p, q), pq in table.items():
        for (a, r), _ in table.items():
            if a != q:
                continue
            qr = table[(q, r)]
            left = table.get((pq, r))
            right = table.get((p, qr))
            if left is not None and right is not None and left != right:
                bad.append((p, q, r))
    return bad


def degeneration_family(products):
    """Split basis products into leading and lower terms.

    ``products`` maps (p, q) to a list of (point, coefficient) giving the
    expansion of b_p * b_q; points are negated values, so the leading term is
    the largest point and must equal p + q.
    """
    t0, t1, report = {}, {}, []
    for (p, q), terms in sorted(products.items()):
        target = tuple(a + b for a, b in zip(p, q))
        terms = sorted(((tuple(x), Fraction(c)) for x, c in terms if c), reverse=True)
        if not terms or terms[0][0] != target:
            raise NonAdditiveError(f"leading point of {p} * {q} is not {target}")
        lead_c = terms[0][1]
        lower = terms[1:]
        gaps = [tuple(a - b for a, b in zip(target, x)) for x, _ in lower]
        t0[(p, q)] = target
        t1[(p, q)] = terms
        report.append({
            "left": list(p),
            "right": list(q),
            "leading": list(target),
            "leading_coefficient": fmt_frac(lead_c),
            "lower": [
                {"point": list(x), "coefficient": fmt_frac(c), "gap": list(g)}
                for (x, c), g in zip(lower, gaps)
            ],
        })
    return {
        "t0": t0,
        "t1": t1,
        "constant_in_t": all(not r["lower"] for r in report),
        "report": report,
    }


# --- the section ring R(L_lambda) ----------------------------------------------

def lift_level(poly, k):
    """s^k * poly as a polynomial in (s, t_1..t_N)."""
    return MultiPoly(poly.nvars + 1, {(k,) + e: c for e, c in poly.terms.items()})


def section_ring_valuation(word):
    return TermValuation(len(word) + 1, highest=True)


def section_ring_piece(spec, lam, word, k, leaf_reduced=True):
    """Level-k sections s^k f_sigma over the leaf basis (or the plain dual basis)."""
    word = _check_longest_word(spec, word)
    mu = tuple(k * x for x in lam)
    module = build_hw_module(spec, mu)
    if leaf_reduced:
        polys, _ = leaf_basis_polys(module, word)
    else:
        polys = [matrix_coeff_poly(module, word, s).poly for s in module.dual_basis()]
    return [lift_level(p, k) for p in polys]


def section_ring_generators(spec, lam, word):
    val = section_ring_valuation(word)
    return [ValuedGenerator.make(g, val) for g in section_ring_piece(spec, lam, word, 1)]


def section_ring_subduction(spec, lam, word, level_cap):
    """Subduct the dual-basis sections at every level <= cap by level-1 generators."""
    val = section_ring_valuation(word)
    gens = section_ring_generators(spec, lam, word)
    one = MultiPoly.constant(len(word) + 1)
    rows = []
    for k in range(level_cap + 1):
        for j, h in enumerate(section_ring_piece(spec, lam, word, k, leaf_reduced=False)):
            trace = subduct(h, gens, val)
            rows.append({
                "level": k,
                "index": j,
                "steps": len(trace.steps),
                "remainder_zero": trace.complete,
                "replay_ok": trace.replay(gens, one) == h,
            })
    return rows


def section_ring_products(spec, lam, word, level_cap):
    """Expansions of leaf-basis products b_p * b_q with levels summing to <= cap."""
    word = _check_longest_word(spec, word)
    bases = {}
    for k in range(level_cap + 1):
        module = build_hw_module(spec, tuple(k * x for x in lam))
        polys, values = leaf_basis_polys(module, word)
        bases[k] = [((k,) + tuple(v), p) for v, p in zip(values, polys)]
    products = {}
    for k in range(level_cap + 1):
        for l in range(level_cap + 1 - k):
            target = bases[k + l]
            tpolys = [p for _, p in target]
            for p, fp in bases[k]:
                for q, fq in bases[l]:
                    coeffs = expand_in_basis(fp * fq, tpolys)
                    products[(p, q)] = [(x, c) for (x, _), c in zip(target, coeffs) if c]
    points = [x for k in bases for x, _ in bases[k]]
    return products, points
