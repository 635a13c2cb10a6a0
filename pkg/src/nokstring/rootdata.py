"""Cartan data and Weyl group combinatorics for types A_1..A_4 and C_2.

The Weyl group is realized concretely on epsilon coordinates: permutation
matrices of size r+1 for A_r and signed permutation matrices of size r for
C_r.  Weights are always integer vectors in the fundamental-weight basis;
the simple root alpha_j is column j of the Cartan matrix.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

SUPPORTED = {("A", 1), ("A", 2), ("A", 3), ("A", 4), ("C", 2)}


class CapabilityError(ValueError):
    """Requested root system or size is outside what this package supports."""


class NotReducedError(ValueError):
    pass


def cartan_matrix(family, rank):
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
        if i + 1 < rank:
            a[i][i + 1] = -1
            a[i + 1][i] = -1
    if family == "C" and rank >= 2:
        # alpha_r = 2 e_r is the long root: <alpha_r, alpha_{r-1}^vee> = -2
        a[rank - 2][rank - 1] = -2
    return a


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int
    cartan: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fam = str(self.family).upper()
        object.__setattr__(self, "family", fam)
        if (fam, self.rank) not in SUPPORTED:
            raise CapabilityError(f"unsupported root system {fam}{self.rank}")
        object.__setattr__(
            self, "cartan", tuple(tuple(r) for r in cartan_matrix(fam, self.rank))
        )

    @property
    def cartan_matrix(self):
        return [list(r) for r in self.cartan]

    @property
    def num_positive_roots(self):
        r = self.rank
        return r * (r + 1) // 2 if self.family == "A" else r * r

    @property
    def label(self):
        return f"{self.family}{self.rank}"

    @property
    def fundamental_weights(self):
        return [f"omega{i + 1}" for i in range(self.rank)]

    def simple_root(self, i):
        """alpha_i (1-based) in fundamental-weight coordinates."""
        return tuple(self.cartan[k][i - 1] for k in range(self.rank))

    @property
    def eps_dim(self):
        return self.rank + 1 if self.family == "A" else self.rank

    def to_json(self):
        return {"family": self.family, "rank": self.rank}

    @classmethod
    def from_json(cls, d):
        return cls(d["family"], int(d["rank"]))


def check_word(spec, word):
    word = tuple(int(i) for i in word)
    for i in word:
        if not 1 <= i <= spec.rank:
            raise ValueError(f"index {i} out of range for {spec.label}")
    return word


def is_dominant(lam):
    return all(x >= 0 for x in lam)


# --- concrete Weyl group -------------------------------------------------

def _reflection(spec, i):
    n = spec.eps_dim
    m = [[int(a == b) for b in range(n)] for a in range(n)]
    if spec.family == "C" and i == spec.rank:
        m[n - 1][n - 1] = -1
    else:
        m[i - 1][i - 1] = m[i][i] = 0
        m[i - 1][i] = m[i][i - 1] = 1
    return tuple(tuple(r) for r in m)


def _mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity(n):
    return tuple(tuple(int(a == b) for b in range(n)) for a in range(n))


def word_element(spec, word):
    """The matrix of s_{i_1} ... s_{i_k} acting on epsilon coordinates."""
    g = _identity(spec.eps_dim)
    for i in check_word(spec, word):
        g = _mul(g, _reflection(spec, i))
    return g


def longest_element(spec):
    n = spec.eps_dim
    if spec.family == "A":
        return tuple(tuple(int(a + b == n - 1) for b in range(n)) for a in range(n))
    return tuple(tuple(-int(a == b) for b in range(n)) for a in range(n))


def positive_roots_eps(spec):
    n = spec.eps_dim
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            roots.append(tuple(v))
            if spec.family == "C":
                v = [0] * n
                v[i] = v[j] = 1
                roots.append(tuple(v))
        if spec.family == "C":
            v = [0] * n
            v[i] = 2
            roots.append(tuple(v))
    return roots


def _is_positive(v):
    for x in v:
        if x:
            return x > 0
    return False


def element_length(spec, g):
    """Number of positive roots sent to negative roots."""
    count = 0
    for beta in positive_roots_eps(spec):
        img = tuple(sum(g[a][b] * beta[b] for b in range(len(beta))) for a in range(len(g)))
        if not _is_positive(img):
            count += 1
    return count


def is_reduced(spec, word):
    word = check_word(spec, word)
    return element_length(spec, word_element(spec, word)) == len(word)


def longest_element_words(spec):
    """All reduced words for w_0, built by extending reduced prefixes."""
    target = longest_element(spec)
    n = spec.num_positive_roots
    out = set()
    frontier = [((), _identity(spec.eps_dim))]
    for length in range(n):
        nxt = []
        for word, g in frontier:
            for i in range(1, spec.rank + 1):
                h = _mul(g, _reflection(spec, i))
                if element_length(spec, h) == length + 1:
                    nxt.append((word + (i,), h))
        frontier = nxt
    for word, g in frontier:
        if g == target:
            out.add(word)
    return out


def brute_force_longest_words(spec):
    """Oracle: every word of length N whose product is w_0."""
    target = longest_element(spec)
    n = spec.num_positive_roots
    return {
        w
        for w in product(range(1, spec.rank + 1), repeat=n)
        if word_element(spec, w) == target
    }


def default_word(spec):
    """A fixed reduced word for w_0: lexicographically smallest."""
    return min(longest_element_words(spec))


def suffix_elements(spec, word):
    """(w_0, w_1, ..., w_N) with w_k the suffix after dropping k letters."""
    word = check_word(spec, word)
    if len(word) != spec.num_positive_roots or not is_reduced(spec, word):
        raise NotReducedError(f"{word} is not a reduced word for w_0 of {spec.label}")
    return [word[k:] for k in range(len(word) + 1)]


# --- weights --------------------------------------------------------------

def reflect_weight(spec, i, mu):
    """s_i(mu) = mu - <mu, alpha_i^vee> alpha_i in fundamental coordinates."""
    a = spec.simple_root(i)
    c = mu[i - 1]
    return tuple(m - c * x for m, x in zip(mu, a))


def act_weight(spec, word, mu):
    mu = tuple(mu)
    for i in reversed(check_word(spec, word)):
        mu = reflect_weight(spec, i, mu)
    return mu


def dual_weight(spec, lam):
    """lambda* = -w_0 lambda."""
    w0 = next(iter(longest_element_words(spec)))
    return tuple(-x for x in act_weight(spec, w0, lam))


def weyl_orbit(spec, mu):
    seen = {tuple(mu)}
    stack = [tuple(mu)]
    while stack:
        m = stack.pop()
        for i in range(1, spec.rank + 1):
            n = reflect_weight(spec, i, m)
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return seen


def positive_roots_simple(cartan):
    """Positive roots of the system with this Cartan matrix, in simple-root coordinates.

    ``cartan[i][j] = <alpha_j, alpha_i^vee>``.
    """
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    stack = list(simple)
    while stack:
        b = stack.pop()
        for i in range(r):
            pairing = sum(b[j] * cartan[i][j] for j in range(r))
            c = list(b)
            c[i] -= pairing
            c = tuple(c)
            if any(x < 0 for x in c) or not any(c):
                continue
            if c not in roots:
                roots.add(c)
                stack.append(c)
    return sorted(roots)


def positive_coroots(spec):
    """Positive coroots in simple-coroot coordinates (roots of the transposed system)."""
    a = spec.cartan_matrix
    at = [[a[j][i] for j in range(spec.rank)] for i in range(spec.rank)]
    return positive_roots_simple(at)


def weyl_dim(spec, lam):
    """dim V_lambda by the Weyl dimension product."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != spec.rank:
        raise ValueError("weight has wrong length")
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    num = Fraction(1)
    for c in positive_coroots(spec):
        num *= Fraction(sum(ci * (li + 1) for ci, li in zip(c, lam)), sum(c))
    assert num.denominator == 1
    return int(num)


def dominant_weights(spec, total):
    """Dominant weights with coordinate sum <= total."""
    return [
        lam
        for lam in product(range(total + 1), repeat=spec.rank)
        if sum(lam) <= total
    ]
