"""Plane Cremona transformations as coprime triples of homogeneous polynomials."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import algebra
from .algebra import Poly, X, Y, Z, _div, _q, substitute
from .errors import DegreeMismatch, InvalidConfiguration
from .geometry import (
    InfinitelyNearPoint,
    LinearSystem,
    ProjectivePoint,
    as_point,
    base_points,
    collinear,
    line_through,
    local_expansion,
    tangent_line,
)


class BirationalMap:
    """(F1 : F2 : F3) with coprime components of equal degree.

    The triple is stored in canonical form: common factors removed, then
    scaled so that the leading coefficient of the first nonzero component
    is 1.  Two maps are equal exactly when their canonical triples agree.
    """

    __slots__ = ("components", "degree", "_key")

    def __init__(self, components, reduce=True):
        comps = tuple(components)
        if len(comps) != 3:
            raise ValueError("a plane map has three components")
        degs = {c.degree for c in comps if c.terms}
        if len(degs) != 1:
            raise DegreeMismatch("components must be nonzero polynomials sharing one degree")
        d = degs.pop()
        comps = tuple(c if c.terms else Poly.zero(d) for c in comps)
        if reduce and d > 0:
            g = algebra.gcd_many(comps)
            if g.degree > 0:
                comps = tuple(algebra.exact_divide(c, g) for c in comps)
        self.components = _normalize_scalar(comps)
        self.degree = self.components[0].degree
        self._key = None

    @classmethod
    def _trusted(cls, comps):
        f = object.__new__(cls)
        f.components = _normalize_scalar(tuple(comps))
        f.degree = f.components[0].degree
        f._key = None
        return f

    @classmethod
    def identity(cls):
        return cls._trusted((X, Y, Z))

    @classmethod
    def from_matrix(cls, m):
        """The linear map X_i -> sum_j m[i][j] X_j."""
        comps = [Poly.linear(*row) for row in m]
        if _det3(m) == 0:
            raise InvalidConfiguration("singular matrix")
        return cls._trusted(comps)

    def key(self):
        if self._key is None:
            self._key = tuple(tuple(c.sorted_terms()) for c in self.components)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, BirationalMap):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.components) + ")"

    def __call__(self, point):
        """Image of a proper point outside the base locus."""
        coords = point.coords if isinstance(point, ProjectivePoint) else tuple(point)
        vals = [c.evaluate(coords) for c in self.components]
        if not any(vals):
            raise InvalidConfiguration(f"{point} is a base point")
        return ProjectivePoint(tuple(vals))

    def __matmul__(self, other):
        return compose(self, other)

    def is_linear(self):
        return self.degree == 1

    def matrix(self):
        if self.degree != 1:
            raise ValueError("only linear maps have a matrix")
        return [[c.coefficient(1, 0, 0), c.coefficient(0, 1, 0), c.coefficient(0, 0, 1)] for c in self.components]

    def net(self):
        return LinearSystem.of(self)

    def base_points(self):
        return base_points(self)

    def to_json(self):
        return {"degree": self.degree, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data):
        comps = [Poly.from_json(c) for c in data["components"]]
        f = cls(comps)
        if "degree" in data and int(data["degree"]) != f.degree:
            raise DegreeMismatch(f"declared degree {data['degree']} but reduced degree is {f.degree}")
        return f


def _normalize_scalar(comps):
    for c in comps:
        if c.terms:
            lc = c.leading_coefficient()
            if lc == 1:
                return comps
            inv = _div(1, lc)
            return tuple(p.scale(inv) for p in comps)
    raise ValueError("the zero triple is not a map")


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def jacobian(comps):
    """Determinant of the 3x3 matrix of partial derivatives."""
    if isinstance(comps, BirationalMap):
        comps = comps.components
    d = [[c.derivative(j) for j in range(3)] for c in comps]
    return (
        d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1])
        - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
        + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0])
    )


# -- composition --------------------------------------------------------------


def _strip_lines(comps, lines):
    comps = list(comps)
    for line in lines:
        while True:
            quot = [algebra.try_divide(c, line) for c in comps]
            if any(q is None for q in quot):
                break
            comps = quot
    return comps


def _strip_by_jacobian(comps, jac):
    comps = list(comps)
    while True:
        g = jac
        for c in comps:
            g = algebra.gcd(g, c)
            if g.degree == 0:
                return comps
        comps = [algebra.exact_divide(c, g) for c in comps]


def compose(f, g, contracted=None):
    """f o g with common factors cleared.

    Common factors of f(g) are curves contracted by g, hence factors of the
    Jacobian of g.  ``contracted`` may list the contracted lines of g to
    avoid gcd computations.
    """
    comps = [substitute(c, g.components) for c in f.components]
    if f.degree > 1 and g.degree > 1:
        if contracted is not None:
            comps = _strip_lines(comps, contracted)
        else:
            comps = _strip_by_jacobian(comps, jacobian(g))
    return BirationalMap._trusted(comps)


def compose_all(*maps):
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


def power(f, n):
    if n < 0:
        f = inverse(f)
        n = -n
    out = BirationalMap.identity()
    for _ in range(n):
        out = compose(out, f)
    return out


def equal(f, g):
    """True iff f and g define the same rational map."""
    return f.key() == g.key()


def equal_by_minors(f, g):
    """Same test through the vanishing of all 2x2 minors F_i G_j - F_j G_i."""
    F, G = f.components, g.components
    return all((F[i] * G[j] - F[j] * G[i]).is_zero() for i in range(3) for j in range(i + 1, 3))


def contracted_lines(f):
    """Distinct lines contracted by a quadratic map, read off its base points."""
    if f.degree == 1:
        return []
    if f.degree != 2:
        raise ValueError("contracted lines are only tabulated for quadratic maps")
    pts = [p for p, _ in base_points(f)]
    lines = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            a, b = pts[i], pts[j]
            if a.base != b.base:
                lines.add(line_through(a.base, b.base))
            else:
                deeper = a if a.depth > b.depth else b
                lines.add(tangent_line(deeper.base, deeper.tower[0]))
    jac = jacobian(f)
    return sorted((L for L in lines if algebra.divides(L, jac)), key=lambda p: p.sorted_terms())


# -- linear algebra ------------------------------------------------------------------


def nullspace(rows, ncols):
    """Basis of the rational nullspace, from the reduced row echelon form."""
    m = [[_q(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = _div(1, m[rank][col])
        m[rank] = [_q(x * inv) for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [_q(x - f * y) for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = _q(-m[r][fc])
        basis.append(v)
    return basis


def monomials(degree):
    return [(a, b, degree - a - b) for a in range(degree, -1, -1) for b in range(degree - a, -1, -1)]


def inverse(f, max_degree=4):
    """Inverse map, found by solving g(f) proportional to (X:Y:Z) linearly."""
    if f.degree == 1:
        return BirationalMap.from_matrix(_mat_inv(f.matrix()))
    d = f.degree
    if d > max_degree:
        raise ValueError(f"inverse of a degree {d} map is outside the supported range")
    monos = monomials(d)
    images = [substitute(Poly.monomial(*k), f.components) for k in monos]
    n = len(monos)
    rows = {}
    pairs = [(0, 1), (0, 2), (1, 2)]
    for r, (i, j) in enumerate(pairs):
        # g_i(f) X_j - g_j(f) X_i = 0
        for idx, img in enumerate(images):
            for k, v in (img * algebra.VARIABLES[j]).terms.items():
                rows.setdefault((r, k), [0] * (3 * n))[i * n + idx] += v
            for k, v in (img * algebra.VARIABLES[i]).terms.items():
                rows.setdefault((r, k), [0] * (3 * n))[j * n + idx] -= v
    basis = nullspace(list(rows.values()), 3 * n)
    if len(basis) != 1:
        raise InvalidConfiguration("map is not birational (inverse not unique)")
    v = basis[0]
    comps = [Poly({monos[k]: v[i * n + k] for k in range(n)}, d) for i in range(3)]
    return BirationalMap(comps)


def _mat_inv(m):
    n = 3
    a = [[_q(x) for x in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise InvalidConfiguration("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = _div(1, a[col][col])
        a[col] = [_q(x * inv) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [_q(x - f * y) for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def express_in_basis(targets, basis):
    """Matrix A with targets[i] = sum_j A[i][j] * basis[j], or None."""
    keys = sorted({k for p in list(targets) + list(basis) for k in p.terms})
    out = []
    for t in targets:
        # columns: basis coefficients, then -target
        rows = [[b.terms.get(k, 0) for b in basis] + [t.terms.get(k, 0)] for k in keys]
        ns = nullspace(rows, len(basis) + 1)
        sol = next((v for v in ns if v[-1]), None)
        if sol is None:
            return None
        out.append([_q(-x / Fraction(sol[-1])) for x in sol[:-1]])
    return out


# -- named points and generator formulas ------------------------------------------

PROPER_POINTS = {
    "p1": (1, 0, 0),
    "p2": (0, 1, 0),
    "p3": (0, 0, 1),
    "q1": (0, 1, -1),
    "q2": (1, 0, -1),
    "q3": (1, -1, 0),
}

_NAME_RE = re.compile(r"^([pq][123])(?:\^\{?([XYZ+]+)\}?)?$")


def parse_line(text):
    """A line given as a sum of coordinate names, e.g. 'Y+Z'."""
    out = Poly.zero(1)
    for tok in text.split("+"):
        out = out + {"X": X, "Y": Y, "Z": Z}[tok.strip()]
    return out


def named_point(name):
    """Points such as 'p1', 'q3' or 'p1^Y+Z' (tangent direction Y+Z=0 at p1)."""
    m = _NAME_RE.match(name.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown point name {name!r}")
    base = InfinitelyNearPoint.proper(*PROPER_POINTS[m.group(1)])
    if m.group(2):
        return InfinitelyNearPoint.tangent(base, parse_line(m.group(2)))
    return base


@lru_cache(maxsize=None)
def _name_table():
    table = {}
    lines = ["X", "Y", "Z", "X+Y", "X+Z", "Y+Z", "X+Y+Z"]
    for nm in PROPER_POINTS:
        table[named_point(nm)] = nm
        for ln in lines:
            try:
                pt = named_point(f"{nm}^{ln}")
            except InvalidConfiguration:
                continue
            table.setdefault(pt, f"{nm}^{ln}")
    return table


def point_name(pt):
    """Human-readable name for points of the triangle configuration."""
    pt = as_point(pt)
    return _name_table().get(pt, str(pt))


def _poly(text):
    """Tiny evaluator for the formula strings of the catalog tables."""
    return eval(text.replace("^", "**"), {"X": X, "Y": Y, "Z": Z})  # noqa: S307 - fixed literals only


def _formula(*texts):
    return BirationalMap([_poly(t) for t in texts])


C = BirationalMap._trusted((Y, Z, X))
SWAP = BirationalMap._trusted((Y, X, Z))
IDENTITY = BirationalMap.identity()
I = _formula("Z^2", "X*Y", "Y*Z")
P = _formula("X*Y", "(Y+Z)*Z", "X*Z")

# the twelve quadratic maps of H with the formulas and base points of the table
QUADRATIC_TABLE = {
    1: ("I", ("Z^2", "X*Y", "Y*Z"), ("p1", "p2", "p1^Y")),
    2: ("I^3", ("X*Y", "Z^2", "X*Z"), ("p1", "p2", "p2^X")),
    3: ("I^2", ("Y*Z", "X*Z", "X*Y"), ("p1", "p2", "p3")),
    4: ("P", ("X*Y", "(Y+Z)*Z", "X*Z"), ("p1", "p2", "q1")),
    5: ("P^-1", ("Z*(X+Z)", "X*Y", "Y*Z"), ("p1", "p2", "q2")),
    6: ("P I^2", ("Z^2", "(Y+Z)*X", "Y*Z"), ("p1", "p2", "p1^Y+Z")),
    7: ("P^-1 I^2", ("(X+Z)*Y", "Z^2", "X*Z"), ("p1", "p2", "p2^X+Z")),
    8: ("I^2 P", ("Z*(Y+Z)", "X*Y", "Y*(Y+Z)"), ("p1", "p1^Y", "q1")),
    9: ("I P", ("X*Z", "Y*(Y+Z)", "Z*(Y+Z)"), ("p1", "p1^Z", "q1")),
    10: ("P^2", ("Y*(Y+Z)", "Z*(X+Y+Z)", "X*Y"), ("p1", "q1", "q2")),
    11: ("P^3 C^-1", ("(X+Y+Z)*Y", "Z*(Y+Z)", "X*Z"), ("p1", "q1", "q3")),
    12: ("P I P", ("X*Y", "(Y+Z)^2", "X*Z"), ("p1", "q1", "q1^X")),
}

# the classical generators of the second table (powers of P and I^2)
GENERATOR_TABLE = {
    "I^2": (("Y*Z", "X*Z", "X*Y"), ("p1", "p2", "p3")),
    "P": (("X*Y", "(Y+Z)*Z", "X*Z"), ("p1", "p2", "q1")),
    "P^2": (("Y*(Y+Z)", "Z*(X+Y+Z)", "X*Y"), ("p1", "q1", "q2")),
    "P^3": (("(X+Y+Z)*Z", "X*(X+Z)", "X*Y"), ("p2", "q1", "q2")),
    "P^4": (("Z*(X+Z)", "X*Y", "Y*Z"), ("p1", "p2", "q2")),
}


def quadratic_map(i):
    return _formula(*QUADRATIC_TABLE[i][1])


def generator_map(name):
    return _formula(*GENERATOR_TABLE[name][0])


def diagonal(a, b, c=1):
    return BirationalMap.from_matrix([[a, 0, 0], [0, b, 0], [0, 0, c]])


def rho(lam):
    """The automorphism (X:Y:Z) -> (lam X : Y : Z)."""
    return diagonal(lam, 1, 1)


def torus(alpha, beta):
    """(x, y) -> (alpha x, beta y), i.e. (X:Y:Z) -> (alpha X : beta Y : Z)."""
    return diagonal(alpha, beta, 1)


def _check_lambda(lam):
    lam = _q(lam)
    if lam == 0 or lam == -1:
        raise InvalidConfiguration(f"lambda must avoid 0 and -1, got {lam}")
    return lam


def S(lam):
    lam = _check_lambda(lam)
    return BirationalMap(
        [
            (X * (X + Y + Z)).scale(-lam),
            Y * (X + Y - Z.scale(lam)),
            Z * (X.scale(-lam) + Y - Z.scale(lam)),
        ]
    )


def T(lam):
    lam = _check_lambda(lam)
    return BirationalMap([X * Y, (Y + Z) * (Z.scale(lam) - Y), (X * Z).scale(-lam)])


def S_base_points(lam):
    return sorted([InfinitelyNearPoint.proper(0, lam, 1), named_point("q2"), named_point("q3")])


def T_base_points(lam):
    return sorted([named_point("p1"), named_point("q1"), InfinitelyNearPoint.proper(0, lam, 1)])


def permutation_map(perm):
    """(X_0 : X_1 : X_2) -> (X_perm[0] : X_perm[1] : X_perm[2])."""
    return BirationalMap._trusted(tuple(algebra.VARIABLES[i] for i in perm))


def apply_linear(f, pt):
    """Image of a proper point under a linear map."""
    pt = as_point(pt)
    if pt.tower:
        raise ValueError("only proper points are moved by apply_linear")
    return InfinitelyNearPoint(f(pt.base))


# -- quadratic maps from base points ------------------------------------------------


def _conic_condition(pt):
    monos = monomials(2)
    if pt.is_proper:
        return [Poly.monomial(*k).evaluate(pt.base.coords) for k in monos]
    if pt.depth > 1:
        raise InvalidConfiguration("towers deeper than one level are not supported")
    a, b = pt.tower[0]
    row = []
    for k in monos:
        loc = local_expansion(Poly.monomial(*k), pt.base)
        row.append(a * loc.get((1, 0), 0) + b * loc.get((0, 1), 0))
    return row


def quadratic_from_points(a, b, c):
    """The quadratic map defined by the net of conics through a, b, c."""
    pts = [as_point(p) for p in (a, b, c)]
    if len(set(pts)) != 3:
        raise InvalidConfiguration("base points must be distinct")
    for p in pts:
        if p.tower:
            parent = p.parent()
            if parent not in pts:
                raise InvalidConfiguration(f"{p} is not attached to one of the other points")
    if collinear(*pts):
        raise InvalidConfiguration("base points are collinear")
    basis = nullspace([_conic_condition(p) for p in pts], 6)
    if len(basis) != 3:
        raise InvalidConfiguration("conditions are not independent")
    monos = monomials(2)
    comps = [Poly({monos[k]: v[k] for k in range(6)}, 2) for v in basis]
    return BirationalMap(comps)


# -- automorphisms of the triangle and quadratic decomposition -----------------------


@dataclass(frozen=True)
class TriangleAutomorphism:
    """f = torus o permutation, with torus = diag(scales)."""

    scales: tuple
    permutation: tuple
    torus: BirationalMap
    permutation_map: BirationalMap
    symplectic: bool


_EVEN = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def symplectic_automorphism_decompose(f):
    """Split an automorphism preserving XYZ = 0 into scaling and permutation.

    The automorphism is symplectic exactly when the permutation is a power
    of C, i.e. even.
    """
    if f.degree != 1:
        raise InvalidConfiguration("not an automorphism of the plane")
    m = f.matrix()
    perm = []
    scales = []
    for row in m:
        nz = [j for j in range(3) if row[j]]
        if len(nz) != 1:
            raise InvalidConfiguration("the map does not preserve the triangle XYZ = 0")
        perm.append(nz[0])
        scales.append(row[nz[0]])
    perm = tuple(perm)
    if len(set(perm)) != 3:
        raise InvalidConfiguration("singular matrix")
    last = scales[2]
    scales = tuple(_div(s, last) for s in scales)
    return TriangleAutomorphism(scales, perm, diagonal(*scales), permutation_map(perm), perm in _EVEN)


@dataclass(frozen=True)
class QuadraticDecomposition:
    """f = alpha o Q o beta."""

    alpha: BirationalMap
    q_name: str
    q_map: BirationalMap
    beta: BirationalMap
    lam: object = None
    k: int = 0

    def recompose(self):
        return compose(self.alpha, compose(self.q_map, self.beta))


_VERTICES = [ProjectivePoint(PROPER_POINTS[n]) for n in ("p1", "p2", "p3")]
C_INV = BirationalMap._trusted((Z, X, Y))


def _c_power(n):
    n %= 3
    return [IDENTITY, C, BirationalMap._trusted((Z, X, Y))][n]


def decompose_quadratic_symplectic(f, check_divisor=True):
    """Write a divisor-preserving quadratic map with proper base points as alpha Q beta.

    alpha lies in the torus extended by all coordinate permutations, beta
    in the torus extended by the powers of C, and Q is I^2, a power of P,
    S_lam or T_lam.  The choice follows the number k of base points that
    are vertices of the triangle.
    """
    if f.degree != 2:
        raise InvalidConfiguration("map is not quadratic")
    bps = base_points(f)
    if len(bps) != 3 or any(not p.is_proper or m != 1 for p, m in bps):
        raise InvalidConfiguration("map does not have three proper base points")
    if check_divisor:
        from .forms import preserves_divisor

        ok, _ = preserves_divisor(f)
        if not ok:
            raise InvalidConfiguration("map does not preserve div(omega_0)")
    pts = [p.base for p, _ in bps]
    vertices = [p for p in pts if p in _VERTICES]
    k = len(vertices)
    wanted = set(_VERTICES[:k])
    for c in range(3):
        # base points of f o C^c are C^-c of those of f
        moved = sorted(_c_power(-c)(p) for p in pts)
        if wanted <= set(moved):
            break
    else:  # pragma: no cover - three rotations always suffice
        raise InvalidConfiguration("could not renumber the vertices")
    others = [p for p in moved if p not in _VERTICES]
    lam = None
    pre = IDENTITY

    def on_line(p, i):
        return p.coords[i] == 0

    if k == 3:
        name, a, b = "I^2", 1, 1
    elif k == 2:
        (u,) = others
        if on_line(u, 0):
            name, a, b = "P", 1, Fraction(-u.coords[2], u.coords[1])
        elif on_line(u, 1):
            name, a, b = "P^4", Fraction(-u.coords[2], u.coords[0]), 1
        else:
            raise InvalidConfiguration("third base point is not a pole of omega_0")
    elif k == 1:
        on_l1 = [p for p in others if on_line(p, 0)]
        if not on_l1:
            raise InvalidConfiguration("no base point on X = 0")
        u = on_l1[0]
        v = next(p for p in others if p != u)
        if on_line(v, 0):
            name = "T"
            a, b = 1, Fraction(-u.coords[2], u.coords[1])
            lam = _q(b * v.coords[1] / Fraction(v.coords[2]))
        elif on_line(v, 1):
            name = "P^2"
            a, b = Fraction(-v.coords[2], v.coords[0]), Fraction(-u.coords[2], u.coords[1])
        elif on_line(v, 2):
            name = "P^3"
            a, b = Fraction(-u.coords[1], u.coords[2]), Fraction(-v.coords[1], v.coords[0])
            pre = C_INV
        else:
            raise InvalidConfiguration("base point off the triangle")
    else:
        by_line = {}
        for p in others:
            zeros = [i for i in range(3) if p.coords[i] == 0]
            if len(zeros) != 1:
                raise InvalidConfiguration("base point off the triangle")
            by_line[zeros[0]] = p
        if len(by_line) != 3:
            raise InvalidConfiguration("base points do not meet every side once")
        u, v, w = by_line[0], by_line[1], by_line[2]
        a = Fraction(-v.coords[2], v.coords[0])
        b = -a * Fraction(w.coords[0], w.coords[1])
        lam = _q(b * u.coords[1] / Fraction(u.coords[2]))
        name = "S"
    beta = compose(compose(torus(a, b), pre), _c_power(-c))
    if name == "S":
        q = S(lam)
    elif name == "T":
        q = T(lam)
    else:
        q = generator_map(name)
    qb = compose(q, beta)
    mat = express_in_basis(f.components, qb.components)
    if mat is None:
        raise InvalidConfiguration("f and Q beta do not share their net")
    alpha = BirationalMap.from_matrix(mat)
    symplectic_automorphism_decompose(alpha)
    out = QuadraticDecomposition(alpha, name, q, beta, lam, k)
    if not equal(out.recompose(), f):  # pragma: no cover - guarded by construction
        raise InvalidConfiguration("recomposition mismatch")
    return out
