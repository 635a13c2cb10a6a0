"""Exact rational polytopes: convex hulls, volumes and lattice point counts.

Hulls are computed by beneath-beyond insertion over ``Fraction``s inside the
affine hull of the input, so lower-dimensional inputs are handled by
projecting to coordinates on which the affine hull is a graph.
"""
from fractions import Fraction
from itertools import combinations, product
from math import ceil, factorial, floor, lcm

from .linalg import det, fmt_frac, frac, nullspace, primitive, rank, rref, solve


class EmptyPolytopeError(ValueError):
    pass


class UnboundedError(ValueError):
    pass


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _affine_rank(points):
    if len(points) <= 1:
        return 0 if points else -1
    base = points[0]
    return rank([_sub(p, base) for p in points[1:]])


def _independent_subset(points, size):
    """Greedily pick ``size`` affinely independent points, or None."""
    chosen = [points[0]]
    for p in points[1:]:
        if len(chosen) == size:
            break
        if _affine_rank(chosen + [p]) == len(chosen):
            chosen.append(p)
    return chosen if len(chosen) == size else None


def _hyperplane(points, interior):
    """Primitive outward normal and rhs of the hyperplane through ``points``."""
    base = points[0]
    ns = nullspace([_sub(p, base) for p in points[1:]], len(base))
    if len(ns) != 1:
        raise ArithmeticError("points do not span a hyperplane")
    n = primitive(ns[0])
    rhs = _dot(n, base)
    if _dot(n, interior) > rhs:
        n = [-x for x in n]
        rhs = -rhs
    return tuple(n), rhs


def _hull_full(points):
    """Facets of the hull of full-dimensional points in R^d (d >= 1).

    Returns (facets, vertex indices) where facets are (normal, rhs, point index set).
    """
    d = len(points[0])
    if d == 1:
        xs = [p[0] for p in points]
        lo, hi = min(xs), max(xs)
        i_lo, i_hi = xs.index(lo), xs.index(hi)
        facets = [((-1,), -lo, frozenset({i_lo})), ((1,), hi, frozenset({i_hi}))]
        return facets, sorted({i_lo, i_hi})

    simplex = [0]
    for q in range(1, len(points)):
        if _affine_rank([points[i] for i in simplex + [q]]) == len(simplex):
            simplex.append(q)
            if len(simplex) == d + 1:
                break
    interior = tuple(Fraction(sum(points[i][k] for i in simplex), d + 1) for k in range(d))
    processed = list(simplex)

    facets = {}

    def points_on(normal, rhs):
        return frozenset(q for q in processed if _dot(normal, points[q]) == rhs)

    for omit in simplex:
        pts = [points[i] for i in simplex if i != omit]
        n, rhs = _hyperplane(pts, interior)
        facets[(n, rhs)] = points_on(n, rhs)

    in_simplex = set(simplex)
    for q in range(len(points)):
        if q in in_simplex:
            continue
        p = points[q]
        visible = [k for k in facets if _dot(k[0], p) > k[1]]
        processed.append(q)
        if not visible:
            for k in facets:
                if _dot(k[0], p) == k[1]:
                    facets[k] = facets[k] | {q}
            continue
        vis = set(visible)
        hidden = [k for k in facets if k not in vis]
        new = {}
        for v in visible:
            sv = facets[v]
            for h in hidden:
                ridge = sv & facets[h]
                if len(ridge) < d - 1:
                    continue
                rpts = [points[i] for i in sorted(ridge)]
                if _affine_rank(rpts) != d - 2:
                    continue
                sub = _independent_subset(rpts, d - 1)
                key = _hyperplane(sub + [p], interior)
                new[key] = True
        for v in visible:
            del facets[v]
        for k in list(facets):
            if _dot(k[0], p) == k[1]:
                facets[k] = facets[k] | {q}
        for key in new:
            if key not in facets:
                facets[key] = points_on(*key)

    verts = []
    for q in processed:
        normals = [k[0] for k, pts in facets.items() if q in pts]
        if normals and rank(normals) == d:
            verts.append(q)
    return [(k[0], k[1], pts) for k, pts in facets.items()], sorted(verts)


class RationalPolytope:
    """Bounded polytope with exact V- and H-representations.

    ``facets`` are pairs (normal, rhs) meaning normal . x <= rhs, and
    ``equations`` are pairs meaning normal . x == rhs.
    """

    def __init__(self, ambient_dim, vertices, facets, equations, dim):
        self.ambient_dim = ambient_dim
        self.vertices = tuple(sorted(tuple(frac(x) for x in v) for v in vertices))
        self.facets = tuple(sorted((tuple(n), frac(r)) for n, r in facets))
        self.equations = tuple(sorted((tuple(n), frac(r)) for n, r in equations))
        self.dim = dim
        self.stabilized = None
        self._proj = None

    # construction ---------------------------------------------------------

    @classmethod
    def from_points(cls, points):
        pts = sorted({tuple(frac(x) for x in p) for p in points})
        if not pts:
            raise EmptyPolytopeError("no points")
        n = len(pts[0])
        base = pts[0]
        diffs = [_sub(p, base) for p in pts[1:]]
        if diffs:
            red, pivots = rref(diffs)
        else:
            red, pivots = [], []
        d = len(pivots)
        eqs = []
        for v in nullspace(red, n) if red else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]:
            nv = primitive(v)
            eqs.append((tuple(nv), _dot(nv, base)))
        if d == 0:
            poly = cls(n, [base], [], eqs, 0)
            poly._proj = (pivots, [base], [0])
            return poly
        proj = [tuple(p[i] for i in pivots) for p in pts]
        # hull on integer points: clear denominators, then scale the rhs back
        scale = lcm(*(x.denominator for q in proj for x in q))
        facets_d, vert_idx = _hull_full([tuple(int(x * scale) for x in q) for q in proj])
        facets_d = [(n, Fraction(r, scale), s) for n, r, s in facets_d]
        facets = []
        for normal, rhs, _ in facets_d:
            full = [0] * n
            for k, i in enumerate(pivots):
                full[i] = normal[k]
            facets.append((tuple(full), rhs))
        poly = cls(n, [pts[i] for i in vert_idx], facets, eqs, d)
        poly._proj = (pivots, pts, vert_idx, facets_d)
        return poly

    @classmethod
    def from_hrep(cls, facets, equations=()):
        """Vertex enumeration by brute force over facet subsets (small inputs only)."""
        facets = [(tuple(frac(x) for x in n), frac(r)) for n, r in facets]
        equations = [(tuple(frac(x) for x in n), frac(r)) for n, r in equations]
        n = len((facets or equations)[0][0])
        eq_rows = [list(e[0]) for e in equations]
        eq_rank = rank(eq_rows) if eq_rows else 0
        need = n - eq_rank
        verts = set()
        for combo in combinations(range(len(facets)), need):
            rows = eq_rows + [list(facets[i][0]) for i in combo]
            rhs = [e[1] for e in equations] + [facets[i][1] for i in combo]
            if rank(rows) != n:
                continue
            red, piv = rref([r + [b] for r, b in zip(rows, rhs)])
            if n in piv:
                continue
            x = [Fraction(0)] * n
            for r, pc in enumerate(piv):
                x[pc] = red[r][n]
            if all(_dot(nv, x) <= r for nv, r in facets) and all(_dot(nv, x) == r for nv, r in equations):
                verts.add(tuple(x))
        if not verts:
            raise EmptyPolytopeError("infeasible or unbounded H-representation")
        return cls.from_points(verts)

    # queries ----------------------------------------------------------------

    def contains(self, x, scale=1):
        x = [frac(v) for v in x]
        return all(_dot(n, x) <= scale * r for n, r in self.facets) and all(
            _dot(n, x) == scale * r for n, r in self.equations
        )

    def scaled(self, k):
        k = frac(k)
        return RationalPolytope.from_points([tuple(k * x for x in v) for v in self.vertices])

    def same_set(self, other):
        return self.vertices == other.vertices

    def __eq__(self, other):
        return isinstance(other, RationalPolytope) and self.same_set(other)

    def __hash__(self):
        return hash(self.vertices)

    def bounding_box(self, scale=1):
        lo = [min(v[i] for v in self.vertices) * scale for i in range(self.ambient_dim)]
        hi = [max(v[i] for v in self.vertices) * scale for i in range(self.ambient_dim)]
        return lo, hi

    def lattice_points(self, scale=1):
        lo, hi = self.bounding_box(scale)
        ranges = [range(ceil(a), floor(b) + 1) for a, b in zip(lo, hi)]
        fac = [(n, r * scale) for n, r in self.facets]
        eqs = [(n, r * scale) for n, r in self.equations]
        out = []
        for x in product(*ranges):
            if all(sum(a * b for a, b in zip(n, x)) <= r for n, r in fac) and all(
                sum(a * b for a, b in zip(n, x)) == r for n, r in eqs
            ):
                out.append(x)
        return out

    def lattice_count(self, scale=1):
        return len(self.lattice_points(scale))

    def volume(self):
        """Euclidean volume in the ambient space; 0 for lower-dimensional polytopes."""
        if self.dim < self.ambient_dim:
            return Fraction(0)
        pivots, pts, vert_idx, facets_d = self._proj
        d = self.dim
        verts = [pts[i] for i in vert_idx]
        vset = set(vert_idx)
        facet_sets = [frozenset(i for i in fpts if i in vset) for _, _, fpts in facets_d]
        interior = tuple(Fraction(sum(v[k] for v in verts)) / len(verts) for k in range(d))
        cache = {}

        def subfaces(face, k):
            cands = set()
            for fs in facet_sets:
                s = face & fs
                if s != face and len(s) >= k and _affine_rank([pts[i] for i in s]) == k - 1:
                    cands.add(s)
            return cands

        def triangulate(face, k):
            key = face
            if key in cache:
                return cache[key]
            if k == 0:
                res = [(next(iter(face)),)]
            else:
                apex = min(face)
                res = []
                for sub in subfaces(face, k):
                    if apex in sub:
                        continue
                    for s in triangulate(sub, k - 1):
                        res.append((apex,) + s)
            cache[key] = res
            return res

        total = Fraction(0)
        for fs in facet_sets:
            for simplex in triangulate(fs, d - 1):
                rows = [_sub(pts[i], interior) for i in simplex]
                total += abs(det(rows))
        return total / factorial(d)

    def to_json(self):
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "vertices": [[fmt_frac(x) for x in v] for v in self.vertices],
            "facets": [{"normal": list(n), "rhs": fmt_frac(r)} for n, r in self.facets],
            "equations": [{"normal": list(n), "rhs": fmt_frac(r)} for n, r in self.equations],
            "stabilized": self.stabilized,
        }

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"
