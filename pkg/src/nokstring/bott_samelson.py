"""Dual vectors as polynomials on the Bott-Samelson chart.

For a reduced word (i_1, ..., i_N) the functional sigma becomes

    f_sigma(t) = sigma(exp(t_1 F_{i_1}) ... exp(t_N F_{i_N}) v_lambda),

a polynomial because every F_i is nilpotent.  The highest-term exponent of
f_sigma under the lex order t_1 > ... > t_N is compared with the string
parameters of sigma.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .hwmodule import DualVector, build_hw_module
from .linalg import fmt_frac, solve_consistent
from .polyval import (
    MultiPoly,
    TermValuation,
    ValVector,
    ZeroValuationError,
    leaf_reduce,
)
from .strings import ZeroVectorError, _check_longest_word, cached_value_set, string_params


@dataclass(frozen=True)
class SectionPoly:
    poly: MultiPoly
    lam: tuple = ()
    word: tuple = ()
    sigma: DualVector = field(default=None, compare=False)


_ORBIT_CACHE = {}


def orbit_vector(module, word):
    """exp(t_1 F_{i_1}) ... exp(t_N F_{i_N}) v_lambda as {exponent: sparse vector}."""
    key = (module.spec, module.lam, tuple(word))
    if key in _ORBIT_CACHE:
        return _ORBIT_CACHE[key]
    n = len(word)
    state = {(0,) * n: {module.hw_index: Fraction(1)}}
    for k in reversed(range(n)):
        F = module.op_F[word[k] - 1]
        cols = [[(r, F[r][c]) for r in range(module.dim) if F[r][c]] for c in range(module.dim)]
        new = {}
        for exp, vec in state.items():
            j = 0
            cur = vec
            while cur:
                e = list(exp)
                e[k] += j
                e = tuple(e)
                scale = Fraction(1, factorial(j))
                tgt = new.setdefault(e, {})
                for idx, x in cur.items():
                    v = tgt.get(idx, 0) + scale * x
                    if v:
                        tgt[idx] = v
                    else:
                        tgt.pop(idx, None)
                nxt = {}
                for c, x in cur.items():
                    for r, f in cols[c]:
                        v = nxt.get(r, 0) + f * x
                        if v:
                            nxt[r] = v
                        else:
                            nxt.pop(r, None)
                cur = nxt
                j += 1
        state = {e: v for e, v in new.items() if v}
    _ORBIT_CACHE[key] = state
    return state


def matrix_coeff_poly(module, word, sigma):
    word = _check_longest_word(module.spec, word)
    if not sigma:
        raise ZeroVectorError("zero functional")
    terms = {}
    for exp, vec in orbit_vector(module, word).items():
        c = sum((sigma.coords[i] * x for i, x in vec.items() if sigma.coords[i]), Fraction(0))
        if c:
            terms[exp] = c
    return SectionPoly(MultiPoly(len(word), terms), module.lam, word, sigma)


def _poly(f):
    return f.poly if isinstance(f, SectionPoly) else f


def geometric_valuation(f):
    """Lex-largest exponent (t_1 > ... > t_N), i.e. minus the highest-term valuation."""
    p = _poly(f)
    if not p:
        raise ZeroValuationError("zero polynomial")
    return -TermValuation(p.nvars, highest=True).value(p)


def derivative_valuation(f):
    """Same exponent found by iterated differentiation and restriction to t_k = 0."""
    h = _poly(f)
    if not h:
        raise ZeroValuationError("zero polynomial")
    out = []
    for k in range(h.nvars):
        a = 0
        while h.derivative(k, a + 1):
            a += 1
        out.append(a)
        h = h.derivative(k, a).restrict_zero(k)
    return ValVector(out)


def verify_main_theorem(module, word, sigma):
    iota = string_params(module, word, sigma)
    minus_v = geometric_valuation(matrix_coeff_poly(module, word, sigma))
    return {
        "string_params": list(iota),
        "minus_valuation": list(minus_v),
        "match": iota == minus_v,
    }


def random_combination(rng, module, max_terms=4):
    """A seeded random rational combination of dual basis vectors."""
    while True:
        coords = [Fraction(0)] * module.dim
        for j in rng.sample(range(module.dim), min(max_terms, module.dim)):
            coords[j] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        sigma = DualVector(coords)
        if sigma:
            return sigma


def main_theorem_batch(spec, lam, word, n_random=0, seed=0):
    """Check the identity on the full dual basis plus seeded random combinations."""
    module = build_hw_module(spec, lam)
    rng = random.Random(f"{spec.label}|{tuple(lam)}|{tuple(word)}|{seed}")
    sigmas = module.dual_basis() + [random_combination(rng, module) for _ in range(n_random)]
    rows = []
    for j, s in enumerate(sigmas):
        r = verify_main_theorem(module, word, s)
        r["sigma"] = [fmt_frac(x) for x in s.coords] if j >= module.dim else f"dual[{j}]"
        rows.append(r)
    return rows


# --- products ---------------------------------------------------------------

class SpanError(ArithmeticError):
    """A product fell outside the span of the target basis."""


def leaf_basis_polys(module, word):
    """f_b for the leaf-reduced dual basis, with their string values."""
    vs = cached_value_set(module.spec, module.lam, word)
    polys = [matrix_coeff_poly(module, word, b).poly for b in vs.representatives]
    return polys, [geometric_valuation(p) for p in polys]


def expand_in_basis(poly, basis):
    """Coefficients c with sum c_j basis_j == poly, by an exact linear solve."""
    monos = sorted(set(poly.terms).union(*[b.terms for b in basis]))
    a = [[b.coefficient(m) for b in basis] for m in monos]
    rhs = [poly.coefficient(m) for m in monos]
    sol = solve_consistent(a, rhs)
    if sol is None:
        raise SpanError("product is not in the span of the basis")
    return sol


def expand_product(mod_lam, mod_mu, mod_sum, word, sigma, tau):
    """Expand f_sigma * f_tau in the leaf-reduced basis of V_{lambda+mu}^*."""
    word = _check_longest_word(mod_sum.spec, word)
    fs = matrix_coeff_poly(mod_lam, word, sigma).poly
    ft = matrix_coeff_poly(mod_mu, word, tau).poly
    target = string_params(mod_lam, word, sigma) + string_params(mod_mu, word, tau)
    basis, values = leaf_basis_polys(mod_sum, word)
    coeffs = expand_in_basis(fs * ft, basis)
    terms = [(tuple(v), c) for v, c in zip(values, coeffs) if c]
    leading = [t for t in terms if t[0] == tuple(target)]
    others = [t for t in terms if t[0] != tuple(target)]
    ok = len(leading) == 1 and all(v < tuple(target) for v, _ in others)
    return {
        "target": list(target),
        "leading": [list(leading[0][0]), fmt_frac(leading[0][1])] if leading else None,
        "lower": [[list(v), fmt_frac(c)] for v, c in sorted(others, reverse=True)],
        "ok": ok,
    }


# --- weight-extended valuation ------------------------------------------------

class WeightedFunction:
    """Finite sum of chi^gamma (x) f_gamma, stored as {gamma: MultiPoly}."""

    def __init__(self, components):
        self.components = {tuple(g): p for g, p in components.items() if p}

    def __bool__(self):
        return bool(self.components)

    def __mul__(self, other):
        out = {}
        for g, p in self.components.items():
            for h, q in other.components.items():
                k = tuple(a + b for a, b in zip(g, h))
                out[k] = out[k] + p * q if k in out else p * q
        return WeightedFunction(out)

    def __add__(self, other):
        out = dict(self.components)
        for g, p in other.components.items():
            out[g] = out[g] + p if g in out else p
        return WeightedFunction(out)


def weight_extended_valuation(f, word=None):
    """(lambda, exponent) with lambda the lex-minimal weight carrying a nonzero part."""
    if not f:
        raise ZeroValuationError("zero weighted function")
    lam = min(f.components)
    return tuple(lam), geometric_valuation(f.components[lam])


def section_function(module, word, sigma):
    """chi^lambda (x) f_sigma."""
    return WeightedFunction({module.lam: matrix_coeff_poly(module, word, sigma).poly})


def geometric_value_set(module, word):
    """Values of leaf-reduced f_{e_j^*} under the highest-term valuation alone."""
    word = _check_longest_word(module.spec, word)
    polys = [matrix_coeff_poly(module, word, s).poly for s in module.dual_basis()]
    val = TermValuation(len(word), highest=True)
    _, values = leaf_reduce(polys, val.leaf)
    return {tuple(-v) for v in values}
