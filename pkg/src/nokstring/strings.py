"""String parametrization of dual vectors and the type-A tableau crystal oracle.

String parameters of a functional are read off greedily along a reduced
word: apply the dual lowering operator for the current letter until the
functional vanishes, record how many applications survived, and carry the
last nonzero functional forward.
"""
from dataclasses import dataclass
from itertools import product

from .hwmodule import DualVector, build_hw_module, dual_action_F
from .polyval import ValVector, leaf_reduce
from .rootdata import (
    NotReducedError,
    RootSystemSpec,
    check_word,
    dominant_weights,
    is_reduced,
    weyl_dim,
)


class ZeroVectorError(ValueError):
    pass


def _check_longest_word(spec, word):
    word = check_word(spec, word)
    if len(word) != spec.num_positive_roots or not is_reduced(spec, word):
        raise NotReducedError(f"{word} is not a reduced word for w_0 of {spec.label}")
    return word


def string_trace(module, word, sigma):
    """String parameters together with the terminal surviving functional."""
    if not sigma:
        raise ZeroVectorError("string parameters of the zero functional are undefined")
    params = []
    current = sigma
    for i in word:
        a = 0
        while True:
            nxt = dual_action_F(module, i, current)
            if not nxt:
                break
            current = nxt
            a += 1
        params.append(a)
    return ValVector(params), current


def string_params(module, word, sigma):
    word = _check_longest_word(module.spec, word)
    return string_trace(module, word, sigma)[0]


@dataclass(frozen=True)
class ValueSet:
    lam: tuple
    word: tuple
    points: frozenset
    representatives: tuple = ()

    def sorted_points(self):
        return sorted(self.points)

    def to_json(self):
        return {
            "lambda": list(self.lam),
            "word": list(self.word),
            "points": [list(p) for p in self.sorted_points()],
        }


def _dual_leaf(module, word):
    def leaf(sigma):
        params, terminal = string_trace(module, word, sigma)
        return params, terminal.coords

    return leaf


def value_set(module, word):
    """Leaf-reduce the dual basis under the string valuation and collect values."""
    word = _check_longest_word(module.spec, word)
    vecs, vals = leaf_reduce(module.dual_basis(), _dual_leaf(module, word))
    if len(set(vals)) != module.dim:
        raise ArithmeticError("string values failed to separate the dual basis")
    return ValueSet(module.lam, word, frozenset(vals), tuple(vecs))


_VALUE_SET_CACHE = {}


def cached_value_set(spec, lam, word):
    key = (spec, tuple(lam), tuple(word))
    if key not in _VALUE_SET_CACHE:
        _VALUE_SET_CACHE[key] = value_set(build_hw_module(spec, lam), word)
    return _VALUE_SET_CACHE[key]


def string_cone_sample(spec, word, degree_cap=3, max_cap=5):
    """{(lambda, a) : a in S_lambda} over dominant lambda with coordinate sum <= cap."""
    if degree_cap > max_cap:
        raise ValueError(f"degree cap {degree_cap} exceeds {max_cap}")
    word = _check_longest_word(spec, word)
    out = set()
    for lam in dominant_weights(spec, degree_cap):
        for a in cached_value_set(spec, lam, word).points:
            out.add((tuple(lam), tuple(a)))
    return out


def additivity_violations(sample, degree_cap):
    """Pairs whose sum is in range but missing from the sample."""
    bad = []
    items = sorted(sample)
    for x in items:
        for y in items:
            lam = tuple(p + q for p, q in zip(x[0], y[0]))
            if sum(lam) > degree_cap:
                continue
            s = (lam, tuple(p + q for p, q in zip(x[1], y[1])))
            if s not in sample:
                bad.append((x, y))
    return bad


# --- type-A tableau crystal -----------------------------------------------

class InvalidTableauError(ValueError):
    pass


@dataclass(frozen=True)
class Tableau:
    """Semistandard tableau in English notation; rows are tuples."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows if len(r))
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self):
        return tuple(len(r) for r in self.rows)

    def is_semistandard(self, n):
        for r, row in enumerate(self.rows):
            if any(not 1 <= x <= n for x in row):
                return False
            if any(a > b for a, b in zip(row, row[1:])):
                return False
            if r and len(row) > len(self.rows[r - 1]):
                return False
            if r and any(row[c] <= self.rows[r - 1][c] for c in range(len(row))):
                return False
        return True

    def reading_word(self):
        """Cells read row by row from the bottom row up, left to right."""
        return [(r, c) for r in reversed(range(len(self.rows))) for c in range(len(self.rows[r]))]

    def _unmatched(self, i):
        # i+1 opens, i closes; matched pairs cancel
        stack, free_i = [], []
        for cell in self.reading_word():
            x = self.rows[cell[0]][cell[1]]
            if x == i + 1:
                stack.append(cell)
            elif x == i:
                if stack:
                    stack.pop()
                else:
                    free_i.append(cell)
        return free_i, stack

    def _replace(self, cell, value):
        rows = [list(r) for r in self.rows]
        rows[cell[0]][cell[1]] = value
        return Tableau(tuple(tuple(r) for r in rows))

    def raise_op(self, i):
        """Crystal raising e_i, or None."""
        _, free_up = self._unmatched(i)
        if not free_up:
            return None
        return self._replace(free_up[0], i)

    def lower_op(self, i):
        """Crystal lowering f_i, or None."""
        free_i, _ = self._unmatched(i)
        if not free_i:
            return None
        return self._replace(free_i[-1], i + 1)

    def epsilon(self, i):
        return len(self._unmatched(i)[1])

    def phi(self, i):
        return len(self._unmatched(i)[0])

    def weight(self, n):
        counts = [0] * (n + 1)
        for row in self.rows:
            for x in row:
                counts[x] += 1
        return tuple(counts[i] - counts[i + 1] for i in range(1, n))


def shape_of(lam):
    """Partition with lam_k columns of height k."""
    r = len(lam)
    return tuple(sum(lam[k] for k in range(j, r)) for j in range(r))


def semistandard_tableaux(lam):
    """All SSYT of the shape of lam with entries 1..rank+1."""
    n = len(lam) + 1
    shape = [s for s in shape_of(lam) if s]
    if not shape:
        return [Tableau(())]
    out = []

    def rows_after(prev, length, lo_row):
        for cand in product(range(1, n + 1), repeat=length):
            if any(a > b for a, b in zip(cand, cand[1:])):
                continue
            if prev is not None and any(cand[c] <= prev[c] for c in range(length)):
                continue
            yield cand

    def build(r, acc):
        if r == len(shape):
            out.append(Tableau(tuple(acc)))
            return
        prev = acc[-1] if acc else None
        for row in rows_after(prev, shape[r], r):
            build(r + 1, acc + [row])

    build(0, [])
    return out


def tableaux_string_params(spec, lam, tableau, word):
    """Raising-operator strings along the word (the dual crystal's lowering strings)."""
    if spec.family != "A":
        raise ValueError("tableau crystal oracle is type A only")
    word = _check_longest_word(spec, word)
    n = spec.rank + 1
    if tableau.shape != tuple(s for s in shape_of(lam) if s) or not tableau.is_semistandard(n):
        raise InvalidTableauError(f"{tableau.rows} is not a semistandard tableau of shape {shape_of(lam)}")
    params = []
    t = tableau
    for i in word:
        a = t.epsilon(i)
        for _ in range(a):
            t = t.raise_op(i)
        params.append(a)
    return ValVector(params)


def tableaux_value_set(spec, lam, word):
    return {tableaux_string_params(spec, lam, t, word) for t in semistandard_tableaux(lam)}


__all__ = [
    "RootSystemSpec",
    "DualVector",
    "ValueSet",
    "Tableau",
    "string_params",
    "string_trace",
    "value_set",
    "cached_value_set",
    "string_cone_sample",
    "additivity_violations",
    "semistandard_tableaux",
    "tableaux_string_params",
    "tableaux_value_set",
    "weyl_dim",
]
