"""Rational points of the projective plane and points infinitely near them.

A proper point is a canonical integer triple.  An infinitely near point is
a proper base point plus a tower of directions, one per blow-up.  Each
direction is a point (a:b) of the exceptional line, read in fixed local
coordinates (u, v):

* at a proper point the chart is Z=1 when z != 0, else Y=1 when y != 0,
  else X=1; u and v are the two remaining affine coordinates, translated so
  that the point sits at the origin;
* the direction (a:b) is the tangent vector (du:dv).  When a != 0 the next
  chart is (u, v) -> (u, u*v1) and the new point sits at v1 = b/a (local
  coordinates (u, v1 - b/a)); when a == 0 the chart is (u, v) -> (u2*v, v)
  and the new point is the origin (local coordinates (u2, v)).

With this convention p1^Y (tangent line Y=0 at p1) has tower ((0, 1),) and
p1^Z has tower ((1, 0),).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from . import algebra
from .algebra import Poly, _clean, _div, _q, _ugcd, _utrim
from .errors import InvalidConfiguration, UnaccountedBasePoint

# -- points ------------------------------------------------------------------


def _canonical_triple(coords):
    vals = [Fraction(c) for c in coords]
    if len(vals) != 3:
        raise ValueError("a projective point needs three coordinates")
    if not any(vals):
        raise ValueError("(0:0:0) is not a point of the projective plane")
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    first = next(v for v in ints if v)
    if first < 0:
        g = -g
    return tuple(v // g for v in ints)


def _canonical_pair(a, b):
    a, b = Fraction(a), Fraction(b)
    if not a and not b:
        raise ValueError("(0:0) is not a point of the projective line")
    den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    ia, ib = int(a * den), int(b * den)
    g = math.gcd(ia, ib)
    if (ia or ib) and (ia if ia else ib) < 0:
        g = -g
    return (ia // g, ib // g)


@total_ordering
@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple

    def __post_init__(self):
        canon = _canonical_triple(self.coords)
        if canon != tuple(self.coords):
            object.__setattr__(self, "coords", canon)

    @classmethod
    def of(cls, x, y, z):
        return cls((x, y, z))

    def __lt__(self, other):
        return self.coords < other.coords

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        x, y, z = self.coords
        return f"({x}:{y}:{z})"

    def chart(self):
        """(dehomogenized variable index, affine coordinates of the point)."""
        x, y, z = self.coords
        if z:
            return 2, (Fraction(x, z), Fraction(y, z))
        if y:
            return 1, (Fraction(x, y), Fraction(z, y))
        return 0, (Fraction(0), Fraction(0))


@total_ordering
@dataclass(frozen=True)
class InfinitelyNearPoint:
    base: ProjectivePoint
    tower: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.base, ProjectivePoint):
            object.__setattr__(self, "base", ProjectivePoint(tuple(self.base)))
        tower = tuple(_canonical_pair(*d) for d in self.tower)
        if tower != self.tower:
            object.__setattr__(self, "tower", tower)

    @classmethod
    def proper(cls, x, y, z):
        return cls(ProjectivePoint((x, y, z)))

    @classmethod
    def tangent(cls, base, line):
        """The point infinitely near ``base`` in the direction of ``line``."""
        base = base.base if isinstance(base, InfinitelyNearPoint) else base
        if not isinstance(base, ProjectivePoint):
            base = ProjectivePoint(tuple(base))
        if line.degree != 1:
            raise ValueError("a tangent direction is given by a line")
        loc = local_expansion(line, base)
        if loc.get((0, 0)):
            raise InvalidConfiguration(f"line {line} does not pass through {base}")
        a, b = loc.get((1, 0), 0), loc.get((0, 1), 0)
        return cls(base, ((b, -a),))

    def sort_key(self):
        return (self.base.coords, len(self.tower), self.tower)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @property
    def is_proper(self):
        return not self.tower

    @property
    def depth(self):
        return len(self.tower)

    def parent(self):
        if not self.tower:
            return None
        return InfinitelyNearPoint(self.base, self.tower[:-1])

    def is_infinitely_near_to(self, other):
        """True when ``other`` precedes this point in its blow-up tower."""
        return (
            self.base == other.base
            and len(other.tower) < len(self.tower)
            and self.tower[: len(other.tower)] == other.tower
        )

    def __str__(self):
        if not self.tower:
            return str(self.base)
        dirs = ",".join(f"({a}:{b})" for a, b in self.tower)
        return f"{self.base}^[{dirs}]"

    def to_json(self):
        return {"coords": list(self.base.coords), "tower": [list(d) for d in self.tower]}

    @classmethod
    def from_json(cls, data):
        return cls(ProjectivePoint(tuple(data["coords"])), tuple(tuple(d) for d in data.get("tower", [])))


def as_point(p):
    if isinstance(p, InfinitelyNearPoint):
        return p
    if isinstance(p, ProjectivePoint):
        return InfinitelyNearPoint(p)
    return InfinitelyNearPoint(ProjectivePoint(tuple(p)))


# -- local expansions ----------------------------------------------------------
# Local polynomials are bivariate dicts {(i, j): c} in the local coordinates
# (u, v) of a point.


def _taylor_shift(coeffs, c):
    """Coefficients of p(x + c) from those of p(x)."""
    if not c:
        return list(coeffs)
    out = []
    for a in reversed(coeffs):
        # out = out * (x + c) + a
        new = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            new[i + 1] += v
            new[i] += v * c
        new[0] += a
        out = new
    return [_q(v) for v in out]


def _shift(f, s0, t0):
    """f(u + s0, v + t0) for a bivariate dict f."""
    if s0:
        cols = {}
        for (i, j), v in f.items():
            cols.setdefault(j, {})[i] = v
        g = {}
        for j, col in cols.items():
            coeffs = [col.get(i, 0) for i in range(max(col) + 1)]
            for i, v in enumerate(_taylor_shift(coeffs, s0)):
                if v:
                    g[(i, j)] = g.get((i, j), 0) + v
        f = _clean(g)
    if t0:
        rows = {}
        for (i, j), v in f.items():
            rows.setdefault(i, {})[j] = v
        g = {}
        for i, row in rows.items():
            coeffs = [row.get(j, 0) for j in range(max(row) + 1)]
            for j, v in enumerate(_taylor_shift(coeffs, t0)):
                if v:
                    g[(i, j)] = g.get((i, j), 0) + v
        f = _clean(g)
    return f


def local_expansion(F, base):
    """F in the local coordinates (u, v) centred at a proper point."""
    if isinstance(base, InfinitelyNearPoint):
        base = base.base
    var, (s0, t0) = base.chart()
    return _shift(algebra.dehomogenize(F, var), _q(s0), _q(t0))


def order(f):
    """Order of vanishing at the origin (lowest total degree)."""
    if not f:
        return math.inf
    return min(i + j for i, j in f)


def leading_form(f, m):
    """Coefficients c_j of the degree-m part sum c_j u^(m-j) v^j."""
    out = [0] * (m + 1)
    for (i, j), v in f.items():
        if i + j == m:
            out[j] = v
    return out


def blow_up(f, direction, strip):
    """Transform of f at the point of the exceptional line given by direction.

    The exceptional factor is removed ``strip`` times; ``strip`` must not
    exceed the order of f at the origin.
    """
    a, b = direction
    if a:
        g = {(i + j - strip, j): v for (i, j), v in f.items()}
        return _shift(g, 0, _div(b, a))
    return {(i, i + j - strip): v for (i, j), v in f.items()}


def binary_common_roots(forms):
    """Common zeros (a:b) on P^1 of binary forms.

    Each form is the full coefficient list [c_0, ..., c_m] of
    sum c_j a^(m-j) b^j.  Returns (canonical directions sorted, degree of
    the unresolved non-rational part).
    """
    forms = [list(f) for f in forms if any(f)]
    if not forms:
        raise ValueError("every form vanishes identically")
    g = []
    for f in forms:
        f = _utrim(list(f))
        g = _ugcd(g, f) if g else algebra._umonic(f)
    dirs = []
    # (0:1) is a root iff the coefficient of b^m vanishes in every form
    if all(not f[-1] for f in forms):
        dirs.append((0, 1))
    leftover = 0
    if len(g) > 1:
        roots, leftover = algebra.count_rational_factor_degree(g)
        for t in roots:
            dirs.append(_canonical_pair(1, t))
    return sorted(set(dirs)), leftover


# -- multiplicities ------------------------------------------------------------


def _generators(system):
    if isinstance(system, Poly):
        return [system]
    if hasattr(system, "generators"):
        return list(system.generators)
    if hasattr(system, "components"):
        return list(system.components)
    return list(system)


def multiplicity(system, pt):
    """Multiplicity of the generic member of a linear system at a point.

    ``system`` may be a :class:`LinearSystem`, a birational map, a single
    polynomial (the curve it defines) or a sequence of polynomials.
    """
    pt = as_point(pt)
    locs = [local_expansion(F, pt.base) for F in _generators(system) if F.terms]
    locs = [f for f in locs if f]
    if not locs:
        return math.inf
    m = min(order(f) for f in locs)
    for d in pt.tower:
        if m == 0:
            return 0
        locs = [blow_up(f, d, m) for f in locs]
        m = min(order(f) for f in locs)
    return m


def lies_on(curve, pt):
    return multiplicity(curve, pt) > 0


def collinear(a, b, c):
    """True iff one line of the plane passes through the three points.

    A point infinitely near to p lies on a line when p does and every
    direction of its tower follows the strict transform of the line.
    """
    pts = [as_point(p) for p in (a, b, c)]
    candidates = []
    bases = sorted({p.base for p in pts})
    if len(bases) >= 2:
        candidates.append(line_through(bases[0], bases[1]))
    else:
        for p in pts:
            if p.tower:
                candidates.append(tangent_line(p.base, p.tower[0]))
    return any(all(lies_on(L, p) for p in pts) for L in candidates)


def line_through(p, q):
    """The line through two distinct proper points."""
    p = p.base if isinstance(p, InfinitelyNearPoint) else p
    q = q.base if isinstance(q, InfinitelyNearPoint) else q
    (x1, y1, z1), (x2, y2, z2) = p.coords, q.coords
    a, b, c = y1 * z2 - z1 * y2, z1 * x2 - x1 * z2, x1 * y2 - y1 * x2
    if not (a or b or c):
        raise InvalidConfiguration("a line needs two distinct points")
    return Poly.linear(a, b, c).primitive()


def tangent_line(base, direction):
    """The line through a proper point with the given first-order direction."""
    base = base.base if isinstance(base, InfinitelyNearPoint) else base
    var, (s0, t0) = base.chart()
    a, b = direction
    # local line: b*u - a*v = 0, i.e. b*(s - s0) - a*(t - t0) = 0 in the chart
    keep = [i for i in range(3) if i != var]
    coeffs = [0, 0, 0]
    coeffs[keep[0]] = b
    coeffs[keep[1]] = -a
    coeffs[var] = -b * s0 + a * t0
    return Poly.linear(*coeffs).primitive()


# -- linear systems ---------------------------------------------------------------


def _rank(vectors):
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = _div(rows[r][col], rows[rank][col])
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def linearly_independent(polys):
    keys = sorted({k for p in polys for k in p.terms})
    if not keys:
        return False
    return _rank([[p.terms.get(k, 0) for k in keys] for p in polys]) == len(polys)


@dataclass(frozen=True)
class LinearSystem:
    """A net of plane curves spanned by three equal-degree generators."""

    generators: tuple
    degree: int

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(gens) != 3:
            raise ValueError("a net has three generators")
        if len({g.degree for g in gens}) != 1 or gens[0].degree != self.degree:
            raise ValueError("generators must share the declared degree")
        if not linearly_independent(gens):
            raise InvalidConfiguration("generators are linearly dependent")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, f):
        """The net of a birational map, or of any triple of polynomials."""
        gens = tuple(_generators(f))
        return cls(gens, gens[0].degree)

    @classmethod
    def lines(cls):
        return cls((algebra.X, algebra.Y, algebra.Z), 1)


# -- common zeros -------------------------------------------------------------------

_COMBOS = [(1, 2, 3), (3, -1, 2), (2, 5, -3), (1, -4, 7), (5, 1, -2), (-3, 7, 1)]


def _combine(fs, coeffs):
    out = {}
    for f, c in zip(fs, coeffs):
        for k, v in f.items():
            out[k] = out.get(k, 0) + c * v
    return _clean(out)


def rational_common_zeros(polys):
    """Rational common zeros of homogeneous polynomials.

    Returns (sorted proper points, flag) where the flag is True when the
    elimination left a factor that may hide common zeros over an extension
    of the rationals.  Raises ValueError when the zero set is not finite.
    """
    polys = [p for p in polys if p.terms]
    if len(polys) < 2:
        raise ValueError("need at least two nonzero equations")
    if algebra.gcd_many(polys).degree > 0:
        raise ValueError("the polynomials share a common curve")
    found = set()
    suspicious = False
    # points on the line Z = 0
    forms = [[P.terms.get((P.degree - j, j, 0), 0) for j in range(P.degree + 1)] for P in polys]
    dirs, left = binary_common_roots(forms)
    suspicious |= left > 0
    for a, b in dirs:
        found.add(ProjectivePoint((a, b, 0)))
    # affine part Z = 1
    fs = [algebra.dehomogenize(P, 2) for P in polys]
    resultants = []
    for c1, c2 in zip(_COMBOS, _COMBOS[1:]):
        ha = _combine(fs, c1[: len(fs)])
        hb = _combine(fs, c2[: len(fs)])
        if ha and hb:
            R = algebra.bivariate_resultant(ha, hb)
            if R:
                resultants.append(R)
        if len(resultants) == 2:
            break
    if not resultants:
        raise ValueError("elimination failed: resultants vanish identically")
    R = resultants[0]
    for R2 in resultants[1:]:
        R = _ugcd(R, R2)
    xs, left = algebra.count_rational_factor_degree(R) if len(R) > 1 else ([], 0)
    suspicious |= left > 0
    for x0 in xs:
        g = []
        for f in fs:
            u = algebra.bivariate_substitute_first(f, x0)
            if u:
                g = _ugcd(g, u) if g else algebra._umonic(u)
        if not g:
            raise ValueError("the polynomials share a vertical line")
        if len(g) > 1:
            ys, lefty = algebra.count_rational_factor_degree(g)
            suspicious |= lefty > 0
            for y0 in ys:
                found.add(ProjectivePoint((x0, y0, 1)))
    return sorted(found), suspicious


def _triangle_zeros(polys):
    """Common zeros of the generators lying on the triangle XYZ = 0."""
    found = set()
    for var in range(3):
        keep = [i for i in range(3) if i != var]
        forms = []
        for P in polys:
            m = P.degree
            f = [0] * (m + 1)
            for k, v in P.terms.items():
                if k[var] == 0:
                    f[k[keep[1]]] = v
            forms.append(f)
        if not any(any(f) for f in forms):
            continue
        dirs, _ = binary_common_roots(forms)
        for a, b in dirs:
            c = [0, 0, 0]
            c[keep[0]], c[keep[1]] = a, b
            found.add(ProjectivePoint(tuple(c)))
    return found


# -- base points ------------------------------------------------------------------


def noether_sums(mults):
    return sum(mults), sum(m * m for m in mults)


def noether_holds(degree, mults):
    s, s2 = noether_sums(mults)
    return s == 3 * (degree - 1) and s2 == degree * degree - 1


def _explore(locs, m, pt, out, budget):
    out.append((pt, m))
    if budget <= 0:
        return 0
    forms = [leading_form(f, m) for f in locs if order(f) == m]
    dirs, leftover = binary_common_roots(forms)
    for d in dirs:
        new = [blow_up(f, d, m) for f in locs]
        m2 = min(order(f) for f in new)
        if m2 > 0:
            leftover += _explore(new, m2, InfinitelyNearPoint(pt.base, pt.tower + (d,)), out, budget - 1)
    return leftover


def base_points(system, audit=True):
    """Rational base points of a homaloidal net with their multiplicities.

    Proper points are searched on the triangle XYZ = 0 first and then, if
    the Noether equations are not yet met, everywhere by elimination.
    Infinitely near points are found by following the tangent cones of
    the strict transforms.
    """
    gens = [g for g in _generators(system) if g.terms]
    degree = gens[0].degree
    if degree <= 1:
        return []

    def collect(points):
        out = []
        for p in sorted(points):
            locs = [f for f in (local_expansion(F, p) for F in gens) if f]
            m = min(order(f) for f in locs)
            if m > 0:
                _explore(locs, m, InfinitelyNearPoint(p), out, 3 * degree)
        return out

    points = _triangle_zeros(gens)
    result = collect(points)
    if audit and not noether_holds(degree, [m for _, m in result]):
        more, _ = rational_common_zeros(gens)
        points |= set(more)
        result = collect(points)
    result.sort(key=lambda pm: pm[0].sort_key())
    if audit and not noether_holds(degree, [m for _, m in result]):
        s, s2 = noether_sums([m for _, m in result])
        raise UnaccountedBasePoint(
            f"degree {degree}: found sum m = {s}, sum m^2 = {s2}; expected "
            f"{3 * (degree - 1)} and {degree * degree - 1}"
        )
    return result
