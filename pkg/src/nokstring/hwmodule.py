"""Exact irreducible highest-weight modules with Chevalley operator matrices.

V_lambda is generated from its highest weight vector by the lowering
operators inside a tensor product of symmetric powers of the fundamental
representations.  Vectors of that ambient space are sparse polynomials in
the basis vectors of the fundamental modules; the Lie algebra acts by
derivations.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import fmt_frac, matmul, matsub
from .rootdata import RootSystemSpec, is_dominant, weyl_dim

DEFAULT_DIM_CAP = 200


class DimensionCapError(ValueError):
    pass


@dataclass(frozen=True)
class ChevalleyRep:
    """A representation given by explicit E_i, F_i, H_i matrices."""

    spec: RootSystemSpec
    E: tuple
    F: tuple
    H: tuple
    weights: tuple

    @property
    def dim(self):
        return len(self.weights)


def _elem(n, i, j, c=1):
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i][j] = Fraction(c)
    return m


def _add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _freeze(m):
    return tuple(tuple(r) for r in m)


def _bracket(a, b):
    return matsub(matmul(a, b), matmul(b, a))


def _diag_weights(spec, hs):
    n = len(hs[0])
    return tuple(tuple(int(hs[i][j][j]) for i in range(spec.rank)) for j in range(n))


def build_defining_rep(spec):
    """sl_{r+1} on C^{r+1}, or sp_4 on C^4 with basis e1, e2, e_-2, e_-1."""
    if spec.family == "A":
        n = spec.rank + 1
        E = [_elem(n, i - 1, i) for i in range(1, n)]
        F = [_elem(n, i, i - 1) for i in range(1, n)]
    else:
        n = 4
        E = [_add(_elem(n, 0, 1), _elem(n, 2, 3, -1)), _elem(n, 1, 2)]
        F = [_add(_elem(n, 1, 0), _elem(n, 3, 2, -1)), _elem(n, 2, 1)]
    H = [_bracket(e, f) for e, f in zip(E, F)]
    return ChevalleyRep(
        spec,
        tuple(map(_freeze, E)),
        tuple(map(_freeze, F)),
        tuple(map(_freeze, H)),
        _diag_weights(spec, H),
    )


def symplectic_form():
    """Antidiagonal form J with J[0][3] = J[1][2] = 1 = -J[2][1] = -J[3][0]."""
    j = [[Fraction(0)] * 4 for _ in range(4)]
    j[0][3] = j[1][2] = Fraction(1)
    j[2][1] = j[3][0] = Fraction(-1)
    return j


# --- sparse vectors in the ambient polynomial space -----------------------

def _poly_add(acc, poly, c=Fraction(1)):
    for m, x in poly.items():
        v = acc.get(m, 0) + c * x
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def _derive(poly, images):
    """Apply the derivation with x_v -> images[v] (a sparse linear form)."""
    out = {}
    for mono, c in poly.items():
        for pos, e in enumerate(mono):
            if not e or not images[pos]:
                continue
            base = list(mono)
            base[pos] -= 1
            for tgt, coef in images[pos]:
                nm = list(base)
                nm[tgt] += 1
                nm = tuple(nm)
                v = out.get(nm, 0) + c * e * coef
                if v:
                    out[nm] = v
                else:
                    out.pop(nm, None)
    return out


def _exterior_rep(defining, k):
    """Lambda^k of a matrix representation, basis = sorted k-subsets."""
    n = defining.dim
    subsets = list(combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}

    def lift(mat):
        m = len(subsets)
        out = [[Fraction(0)] * m for _ in range(m)]
        for j, s in enumerate(subsets):
            for pos, col in enumerate(s):
                for row in range(n):
                    c = mat[row][col]
                    if not c:
                        continue
                    if row in s and row != col:
                        continue
                    new = list(s)
                    new[pos] = row
                    sign = 1
                    # sort with sign of the permutation
                    arr = new[:]
                    for a in range(len(arr)):
                        for b in range(len(arr) - 1 - a):
                            if arr[b] > arr[b + 1]:
                                arr[b], arr[b + 1] = arr[b + 1], arr[b]
                                sign = -sign
                    out[index[tuple(arr)]][j] += sign * c
        return out

    return subsets, [lift(e) for e in defining.E], [lift(f) for f in defining.F]


def _closure_rep(spec, E, F, hw_index, weight):
    """Irreducible submodule generated by a basis vector of a matrix rep."""
    n = len(E[0])
    images_F = [_images(f) for f in F]
    images_E = [_images(e) for e in E]
    start = [0] * n
    start[hw_index] = 1
    space = _Closure(spec, images_E, images_F, {tuple(start): Fraction(1)}, weight)
    return space.to_matrices()


def _images(mat):
    """Column-wise sparse images: images[col] = [(row, value), ...]."""
    n = len(mat)
    return [[(r, mat[r][c]) for r in range(n) if mat[r][c]] for c in range(len(mat[0]))]


def fundamental_rep(spec, k):
    """The k-th fundamental representation as a ChevalleyRep."""
    d = build_defining_rep(spec)
    if k == 1:
        return d
    _, E, F = _exterior_rep(d, k)
    omega = tuple(int(j == k - 1) for j in range(spec.rank))
    Em, Fm, weights = _closure_rep(spec, E, F, 0, omega)
    H = [_bracket(e, f) for e, f in zip(Em, Fm)]
    return ChevalleyRep(spec, tuple(map(_freeze, Em)), tuple(map(_freeze, Fm)),
                        tuple(map(_freeze, H)), tuple(weights))


class _Closure:
    """Span closure of a vector under lowering operators, weight space by weight space."""

    def __init__(self, spec, images_E, images_F, start, start_weight):
        self.spec = spec
        self.images_E = images_E
        self.images_F = images_F
        self.basis = []
        self.weights = []
        self.rows = {}
        self._add(start, start_weight)
        frontier = [0]
        while frontier:
            nxt = []
            for b in frontier:
                for i in range(spec.rank):
                    v = _derive(self.basis[b], images_F[i])
                    if not v:
                        continue
                    mu = tuple(w - a for w, a in zip(self.weights[b], spec.simple_root(i + 1)))
                    if self._reduce(v, mu)[0]:
                        nxt.append(self._add(v, mu))
            frontier = nxt

    def _reduce(self, v, mu):
        rem = dict(v)
        coords = {}
        for pivot, row, combo in self.rows.get(mu, []):
            c = rem.get(pivot)
            if c:
                f = c / row[pivot]
                _poly_add(rem, row, -f)
                for idx, x in combo.items():
                    coords[idx] = coords.get(idx, 0) + f * x
        return rem, coords

    def _add(self, v, mu):
        idx = len(self.basis)
        rem, coords = self._reduce(v, mu)
        combo = {idx: Fraction(1)}
        for j, x in coords.items():
            combo[j] = combo.get(j, 0) - x
        pivot = min(rem)
        self.rows.setdefault(mu, []).append((pivot, rem, combo))
        self.basis.append(v)
        self.weights.append(mu)
        return idx

    def coords(self, v, mu):
        rem, coords = self._reduce(v, mu)
        if rem:
            raise ArithmeticError("vector escaped the module")
        return coords

    def to_matrices(self):
        n = len(self.basis)
        E, F = [], []
        for i in range(self.spec.rank):
            a = self.spec.simple_root(i + 1)
            for images, store, sgn in ((self.images_E[i], E, 1), (self.images_F[i], F, -1)):
                m = [[Fraction(0)] * n for _ in range(n)]
                for j, b in enumerate(self.basis):
                    v = _derive(b, images)
                    if not v:
                        continue
                    mu = tuple(w + sgn * x for w, x in zip(self.weights[j], a))
                    for r, c in self.coords(v, mu).items():
                        if c:
                            m[r][j] = c
                store.append(m)
        return E, F, list(self.weights)


@dataclass(frozen=True)
class HWModule:
    """V_lambda with a weight basis; basis vector 0 is v_lambda."""

    spec: RootSystemSpec
    lam: tuple
    basis_weights: tuple
    op_E: tuple
    op_F: tuple
    hw_index: int = 0

    def __post_init__(self):
        rows = tuple(
            tuple(tuple((c, x) for c, x in enumerate(row) if x) for row in m)
            for m in self.op_F
        )
        object.__setattr__(self, "_f_rows", rows)

    @property
    def dim(self):
        return len(self.basis_weights)

    def matrix_E(self, i):
        return [list(r) for r in self.op_E[i - 1]]

    def matrix_F(self, i):
        return [list(r) for r in self.op_F[i - 1]]

    def weight_multiplicities(self):
        mult = {}
        for w in self.basis_weights:
            mult[w] = mult.get(w, 0) + 1
        return mult

    def highest_dual(self):
        """tau_lambda, the functional dual to v_lambda."""
        return DualVector.unit(self.dim, self.hw_index)

    def dual_basis(self):
        return [DualVector.unit(self.dim, j) for j in range(self.dim)]

    def to_json(self):
        def sparse(m):
            return [[r, c, fmt_frac(x)] for r, row in enumerate(m) for c, x in enumerate(row) if x]

        return {
            "root_system": self.spec.to_json(),
            "lambda": list(self.lam),
            "dim": self.dim,
            "hw_index": self.hw_index,
            "basis_weights": [list(w) for w in self.basis_weights],
            "E": [sparse(m) for m in self.op_E],
            "F": [sparse(m) for m in self.op_F],
        }

    @classmethod
    def from_json(cls, d):
        spec = RootSystemSpec.from_json(d["root_system"])
        n = d["dim"]

        def dense(entries):
            m = [[Fraction(0)] * n for _ in range(n)]
            for r, c, x in entries:
                m[r][c] = Fraction(x)
            return _freeze(m)

        return cls(
            spec,
            tuple(d["lambda"]),
            tuple(tuple(w) for w in d["basis_weights"]),
            tuple(dense(e) for e in d["E"]),
            tuple(dense(f) for f in d["F"]),
            d["hw_index"],
        )


_MODULE_CACHE = {}


def build_hw_module(spec, lam, dim_cap=DEFAULT_DIM_CAP):
    lam = tuple(int(x) for x in lam)
    if len(lam) != spec.rank or not is_dominant(lam):
        raise ValueError(f"{lam} is not a dominant weight of {spec.label}")
    expected = weyl_dim(spec, lam)
    if expected > dim_cap:
        raise DimensionCapError(f"dim V_{lam} = {expected} exceeds cap {dim_cap}")
    key = (spec, lam)
    if key in _MODULE_CACHE:
        return _MODULE_CACHE[key]

    # variables: basis vectors of each fundamental module with lam_k > 0
    images_E = [[] for _ in range(spec.rank)]
    images_F = [[] for _ in range(spec.rank)]
    start = []
    offset = 0
    for k in range(1, spec.rank + 1):
        if not lam[k - 1]:
            continue
        fund = fundamental_rep(spec, k)
        for i in range(spec.rank):
            for src, dst in ((fund.E[i], images_E[i]), (fund.F[i], images_F[i])):
                dst.extend([(r + offset, x) for r, x in col] for col in _images(src))
        block = [0] * fund.dim
        block[0] = lam[k - 1]
        start.extend(block)
        offset += fund.dim

    closure = _Closure(spec, images_E, images_F, {tuple(start): Fraction(1)}, lam)
    E, F, weights = closure.to_matrices()
    if len(weights) != expected:
        raise ArithmeticError(f"closure has dim {len(weights)}, expected {expected}")
    mod = HWModule(
        spec,
        lam,
        tuple(weights),
        tuple(map(_freeze, E)),
        tuple(map(_freeze, F)),
        0,
    )
    _MODULE_CACHE[key] = mod
    return mod


class DualVector:
    """A functional on V_lambda, stored by its values on the module basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Fraction(x) for x in coords)

    @classmethod
    def _trusted(cls, coords):
        # coords already a tuple of Fractions
        out = cls.__new__(cls)
        out.coords = coords
        return out

    @classmethod
    def unit(cls, n, j):
        return cls(Fraction(int(k == j)) for k in range(n))

    def __len__(self):
        return len(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        return isinstance(other, DualVector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        return DualVector(x + y for x, y in zip(self.coords, other.coords))

    def __sub__(self, other):
        return DualVector(x - y for x, y in zip(self.coords, other.coords))

    def __rmul__(self, c):
        c = Fraction(c)
        return DualVector(c * x for x in self.coords)

    def __neg__(self):
        return DualVector(-x for x in self.coords)

    def pair(self, v):
        return sum((x * y for x, y in zip(self.coords, v) if x and y), Fraction(0))

    def support(self):
        return [j for j, x in enumerate(self.coords) if x]

    def __repr__(self):
        return f"DualVector({[fmt_frac(x) for x in self.coords]})"


def dual_action_F(module, i, sigma):
    """The functional v -> sigma(F_i v)."""
    rows = module._f_rows[i - 1]
    out = [Fraction(0)] * module.dim
    for r, x in enumerate(sigma.coords):
        if x:
            for c, f in rows[r]:
                out[c] += x * f
    return DualVector._trusted(tuple(out))


def dual_weight_of(module, sigma):
    """Weight of a dual weight vector (minus the weight it pairs with), else None."""
    ws = {module.basis_weights[j] for j in sigma.support()}
    if len(ws) != 1:
        return None
    return tuple(-x for x in ws.pop())
