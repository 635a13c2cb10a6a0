"""Value semigroups, Newton-Okounkov bodies, string polytopes and fibered polytopes."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .polytope import EmptyPolytopeError, RationalPolytope
from .polyval import GradedValue, ValVector
from .rootdata import is_dominant, weyl_dim
from .strings import _check_longest_word, cached_value_set


class InconsistentHilbertError(ValueError):
    pass


@dataclass
class ValueSemigroup:
    """Graded lattice points (level, point); level 0 holds only the origin."""

    dim: int
    points: set = field(default_factory=set)
    generators: list = None

    def add(self, level, point):
        point = tuple(point)
        if len(point) != self.dim:
            raise ValueError("point has wrong dimension")
        self.points.add((int(level), point))

    def max_level(self):
        return max((k for k, _ in self.points), default=0)

    def level(self, k):
        return sorted(p for lv, p in self.points if lv == k)

    def closure_violations(self):
        """Sums landing in a sampled level but missing from the sample."""
        top = self.max_level()
        bad = []
        pts = sorted(self.points)
        for a in pts:
            for b in pts:
                k = a[0] + b[0]
                if k > top:
                    continue
                s = (k, tuple(x + y for x, y in zip(a[1], b[1])))
                if s not in self.points:
                    bad.append((a, b))
        return bad


def _scaled_points(semigroup, cap):
    out = []
    for k, x in semigroup.points:
        if 0 < k <= cap:
            out.append(tuple(Fraction(v, k) for v in x))
    return out


def nok_body(semigroup, level_cap):
    """Convex hull of x/k over sampled (k, x), k <= cap, with a stabilization flag."""
    pts = _scaled_points(semigroup, level_cap)
    if not pts:
        raise EmptyPolytopeError("semigroup has no points of positive level")
    body = RationalPolytope.from_points(pts)
    if level_cap >= 2:
        prev = _scaled_points(semigroup, level_cap - 1)
        body.stabilized = bool(prev) and RationalPolytope.from_points(prev) == body
    else:
        body.stabilized = False
    return body


def string_semigroup(spec, word, lam, level_cap):
    word = _check_longest_word(spec, word)
    sg = ValueSemigroup(len(word))
    sg.add(0, (0,) * len(word))
    for k in range(1, level_cap + 1):
        for a in cached_value_set(spec, tuple(k * x for x in lam), word).points:
            sg.add(k, a)
    return sg


def string_polytope(spec, word, lam, level_cap=2):
    lam = tuple(int(x) for x in lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    body = nok_body(string_semigroup(spec, word, lam, level_cap), level_cap)
    return body


def lattice_count(polytope, scale=1):
    return polytope.lattice_count(scale)


def volume(polytope):
    return polytope.volume()


def hilbert_leading(values, q, start=0):
    """q! times the leading coefficient of the degree-q polynomial through the values.

    ``values[j]`` is H(start + j).  Every supplied value must lie on the fitted
    polynomial.
    """
    values = [Fraction(v) for v in values]
    if len(values) < q + 1:
        raise InconsistentHilbertError("not enough values for the fit")
    diffs = list(values)
    table = [diffs]
    for _ in range(len(values) - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        table.append(diffs)
    if any(x != 0 for row in table[q + 1:] for x in row):
        raise InconsistentHilbertError(f"values are not polynomial of degree {q}")
    lead = table[q][0]
    if q and not lead:
        raise InconsistentHilbertError("fitted degree is lower than the body dimension")
    return lead


def degree_check(hilbert, polytope, start=0):
    """Compare q! * leading Hilbert coefficient with q! * Vol_q of the body."""
    q = polytope.dim
    from_hilbert = hilbert_leading(hilbert, q, start)
    if q == 0:
        vol = Fraction(1)
    elif q == polytope.ambient_dim:
        vol = polytope.volume()
    else:
        vol = None
    from_volume = vol * factorial(q) if vol is not None else None
    return {
        "q": q,
        "degree_from_hilbert": from_hilbert,
        "volume": vol,
        "degree_from_volume": from_volume,
        "match": from_volume is not None and from_hilbert == from_volume,
    }


# --- isotypic data -----------------------------------------------------------

@dataclass
class IsotypicData:
    """Multiplicity-free decomposition data: levels[k] = {dominant weight: 0 or 1}."""

    spec: object
    levels: dict
    moment_vertices: list = None

    def __post_init__(self):
        for k, mults in self.levels.items():
            for lam, m in mults.items():
                if m not in (0, 1):
                    raise ValueError("multiplicities must be 0 or 1")
                if not is_dominant(lam):
                    raise ValueError(f"{lam} is not dominant")

    def support(self, k):
        return sorted(tuple(lam) for lam, m in self.levels.get(k, {}).items() if m)

    def max_level(self):
        return max(self.levels, default=0)

    def hilbert(self, k):
        return sum(weyl_dim(self.spec, lam) for lam in self.support(k))

    def to_json(self):
        return {
            "root_system": self.spec.to_json(),
            "levels": {str(k): [list(l) for l in self.support(k)] for k in sorted(self.levels)},
            "moment_vertices": self.moment_vertices,
        }

    @classmethod
    def from_json(cls, d):
        from .rootdata import RootSystemSpec

        spec = RootSystemSpec.from_json(d["root_system"])
        levels = {int(k): {tuple(l): 1 for l in v} for k, v in d["levels"].items()}
        return cls(spec, levels, d.get("moment_vertices"))


def flag_datum(spec, lam, level_cap):
    """Section ring of the flag variety: R_k = V_{k lambda}^* only."""
    lam = tuple(lam)
    levels = {k: {tuple(k * x for x in lam): 1} for k in range(level_cap + 1)}
    return IsotypicData(spec, levels, [list(lam)])


def a1_toy_datum(spec, level_cap):
    """A1 datum with support {m omega : m <= k} at level k."""
    if spec.label != "A1":
        raise ValueError("toy datum is defined for A1")
    levels = {k: {(m,): 1 for m in range(k + 1)} for k in range(level_cap + 1)}
    return IsotypicData(spec, levels, [[0], [1]])


def weight_valuation(support):
    """Max of (k, lambda) with lower k first and, within a level, larger lambda first."""
    support = [(int(k), tuple(lam)) for k, lam in support]
    if not support:
        raise ValueError("empty support")
    return max(GradedValue(k, ValVector(lam)) for k, lam in support)


def weight_semigroup(data, cap):
    sg = ValueSemigroup(data.spec.rank)
    for k in range(cap + 1):
        for lam in data.support(k):
            sg.add(k, lam)
    return sg


def moment_body(data, cap):
    pts = [tuple(Fraction(x, k) for x in lam) for k in range(1, cap + 1) for lam in data.support(k)]
    if not pts:
        raise EmptyPolytopeError("no support at positive level")
    return RationalPolytope.from_points(pts)


def fibered_points(data, word, cap):
    word = _check_longest_word(data.spec, word)
    pts = []
    for k in range(1, cap + 1):
        for lam in data.support(k):
            for a in cached_value_set(data.spec, lam, word).points:
                pts.append(tuple(Fraction(x, k) for x in tuple(lam) + tuple(a)))
    return pts


def fibered_polytope(data, word, cap):
    pts = fibered_points(data, word, cap)
    if not pts:
        raise EmptyPolytopeError("empty moment polytope")
    body = RationalPolytope.from_points(pts)
    if cap >= 2:
        prev = fibered_points(data, word, cap - 1)
        body.stabilized = bool(prev) and RationalPolytope.from_points(prev) == body
    return body


def fibered_count_oracle(data, k):
    return sum(weyl_dim(data.spec, lam) for lam in data.support(k))
