"""Rational 2-forms (A/B)·ω₀ on the plane, with ω₀ = dx∧dy/(xy).

In homogeneous coordinates ω₀ = Ω/(XYZ) with Ω = X dY∧dZ - Y dX∧dZ + Z dX∧dY,
so div((A/B)·ω₀) = div(A) - div(B) - (X) - (Y) - (Z).  For a map g of degree
e the pullback of Ω is Jac(g)/e · Ω, which gives

    g*((A/B)·ω₀) = A(g) · Jac(g) · XYZ / (e · B(g) · g1 g2 g3) · ω₀.

The pushforward by f is the pullback by f⁻¹.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra
from .algebra import Poly, X, Y, Z, _div, _q, substitute
from .errors import IrrationalSingularLocus
from .geometry import (
    ProjectivePoint,
    as_point,
    blow_up,
    leading_form,
    line_through,
    local_expansion,
    order,
    rational_common_zeros,
)
from .maps import BirationalMap, inverse, jacobian

XYZ = X * Y * Z


class RationalTwoForm:
    """The form (A/B)·ω₀ with A, B coprime and B scaled to leading coefficient 1."""

    __slots__ = ("A", "B")

    def __init__(self, A, B=None):
        if B is None:
            B = Poly.constant(1)
        if isinstance(A, (int, float)) or not isinstance(A, Poly):
            A = Poly.constant(_q(A))
        if not isinstance(B, Poly):
            B = Poly.constant(_q(B))
        if not B.terms:
            raise ZeroDivisionError("denominator vanishes")
        if not A.terms:
            raise ValueError("the zero form is not supported")
        if A.degree != B.degree:
            raise algebra.DegreeMismatch("A and B must share one degree")
        g = algebra.gcd(A, B)
        if g.degree > 0:
            A, B = algebra.exact_divide(A, g), algebra.exact_divide(B, g)
        lc = B.leading_coefficient()
        if lc != 1:
            A, B = A.scale(_div(1, lc)), B.scale(_div(1, lc))
        self.A, self.B = A, B

    @classmethod
    def omega0(cls):
        return cls(Poly.constant(1))

    def scalar(self):
        """The constant c when the form is c·ω₀, else None."""
        if self.A.degree == 0:
            return _div(self.A.coefficient(0, 0, 0), self.B.coefficient(0, 0, 0))
        return None

    def __eq__(self, other):
        return isinstance(other, RationalTwoForm) and self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return f"RationalTwoForm(({self.A}) / ({self.B}))"

    def to_json(self):
        return {"A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(Poly.from_json(data["A"]), Poly.from_json(data["B"]))


OMEGA0 = RationalTwoForm.omega0()


def pullback(g, form):
    """g*(form) for a map g given by homogeneous components."""
    comps = g.components if isinstance(g, BirationalMap) else tuple(g)
    e = comps[0].degree
    if e == 1:
        # linear maps: Jac is constant, no cancellation to look for
        jac = jacobian(comps).coefficient(0, 0, 0)
        A = substitute(form.A, comps) * XYZ
        B = substitute(form.B, comps) * comps[0] * comps[1] * comps[2]
        return RationalTwoForm(A.scale(jac), B)
    num = substitute(form.A, comps) * jacobian(comps) * XYZ
    den = (substitute(form.B, comps) * comps[0] * comps[1] * comps[2]).scale(e)
    q = algebra.try_divide(num, den)
    if q is not None:
        return RationalTwoForm(q)
    return RationalTwoForm(num, den)


def pushforward(f, form=None, inverse_map=None):
    """f_*(form), computed as the pullback by f⁻¹.

    ``inverse_map`` may be supplied (for words it is the value of the
    inverted word); otherwise it is computed by linear algebra.
    """
    if form is None:
        form = OMEGA0
    g = inverse_map if inverse_map is not None else inverse(f)
    return pullback(g, form)


def is_symplectic(f, inverse_map=None):
    return pushforward(f, OMEGA0, inverse_map) == OMEGA0


def preserves_divisor(f, inverse_map=None):
    """(True, μ) when f_*(ω₀) = μ·ω₀, else (False, None)."""
    c = pushforward(f, OMEGA0, inverse_map).scalar()
    return (c is not None, c)


# -- local behaviour at (infinitely near) points ---------------------------------------


def blowup_form_multiplicity(form, q):
    """Multiplicity m of div(form) at q.

    Blowing q up, the exceptional curve carries coefficient m + 1 in the
    divisor of the pulled-back form.  For an infinitely near q the pullbacks
    along the tower are followed, the exceptional coefficient of each step
    being folded into the local numerator or denominator.
    """
    q = as_point(q)
    N = local_expansion(form.A, q.base)
    D = local_expansion(form.B * XYZ, q.base)
    m = order(N) - order(D)
    for a, b in q.tower:
        N = blow_up(N, (a, b), order(N))
        D = blow_up(D, (a, b), order(D))
        e = m + 1
        # the exceptional curve is u = 0 in the first chart, v = 0 in the second
        mono = {(abs(e), 0): 1} if a else {(0, abs(e)): 1}
        if e > 0:
            N = _bmul(N, mono)
        elif e < 0:
            D = _bmul(D, mono)
        m = order(N) - order(D)
    return m


def _bmul(f, g):
    out = {}
    for (i, j), v in f.items():
        for (k, l), w in g.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + v * w
    return {k: v for k, v in out.items() if v}


def exceptional_coefficient(form, q):
    return blowup_form_multiplicity(form, q) + 1


def exceptional_kind(form, q):
    """'zero', 'simple pole', 'pole' or 'neither' for the exceptional curve over q."""
    m = blowup_form_multiplicity(form, q)
    if m >= 0:
        return "zero"
    if m == -2:
        return "simple pole"
    if m < -2:
        return "pole"
    return "neither"


def is_pole(form, q):
    """q lies on the polar part of div(form)."""
    return blowup_form_multiplicity(form, q) < 0


# -- normal cubic forms ---------------------------------------------------------------

KINDS = {
    "triangle": "(i)",
    "conic+line": "(ii)",
    "nodal-cubic": "(iii)",
    "not-normal": "-",
}


@dataclass(frozen=True)
class CubicClassification:
    kind: str
    components: tuple = ()
    nodes: tuple = ()
    reason: str = ""

    @property
    def label(self):
        return KINDS[self.kind]

    @property
    def is_normal(self):
        return self.kind != "not-normal"

    def to_json(self):
        return {
            "kind": self.kind,
            "type": self.label,
            "components": [c.to_json() for c in self.components],
            "nodes": [list(p.coords) for p in self.nodes],
            "reason": self.reason,
        }


def minus_divisor_cubic(form):
    """The polynomial F with -div(form) = div(F), when it is a polynomial."""
    return algebra.try_divide(form.B * XYZ, form.A)


def is_node(F, pt):
    loc = local_expansion(F, pt)
    if order(loc) != 2:
        return False
    a, b, c = leading_form(loc, 2)
    return b * b - 4 * a * c != 0


_CHANGES = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 2, 3], [0, 1, 5], [0, 0, 1]],
]


def _singular_points(F):
    partials = [F.derivative(i) for i in range(3)]
    for mat in _CHANGES:
        comps = [Poly.linear(*row) for row in mat]
        moved = [substitute(p, comps) for p in partials]
        pts, suspicious = rational_common_zeros(moved)
        if not suspicious:
            return sorted(ProjectivePoint(tuple(sum(mat[i][j] * p.coords[j] for j in range(3)) for i in range(3))) for p in pts)
    raise IrrationalSingularLocus("singular points of the cubic are not all rational")


def classify_normal_cubic(form):
    F = minus_divisor_cubic(form)
    if F is None:
        return CubicClassification("not-normal", reason="-div is not effective")
    if F.degree != 3:
        return CubicClassification("not-normal", reason="-div is not a cubic")
    try:
        nodes = _singular_points(F)
    except ValueError as exc:
        if isinstance(exc, IrrationalSingularLocus):
            raise
        return CubicClassification("not-normal", (F.monic(),), reason="non-isolated singularities")
    if not nodes:
        return CubicClassification("not-normal", (F.monic(),), reason="smooth cubic")
    for p in nodes:
        if not is_node(F, p):
            return CubicClassification("not-normal", (F.monic(),), tuple(nodes), reason=f"{p} is not an ordinary double point")
    nodes = tuple(nodes)
    if len(nodes) == 3:
        lines = [line_through(nodes[i], nodes[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
        prod = lines[0] * lines[1] * lines[2]
        if algebra.try_divide(F, prod) is None:
            return CubicClassification("not-normal", (F.monic(),), nodes, reason="three nodes not forming a triangle")
        return CubicClassification("triangle", tuple(sorted((L.monic() for L in lines), key=lambda p: p.sorted_terms(), reverse=True)), nodes)
    if len(nodes) == 2:
        L = line_through(nodes[0], nodes[1])
        conic = algebra.try_divide(F, L)
        if conic is None:
            return CubicClassification("not-normal", (F.monic(),), nodes, reason="two nodes not on a line component")
        return CubicClassification("conic+line", (conic.monic(), L.monic()), nodes)
    if len(nodes) == 1:
        return CubicClassification("nodal-cubic", (F.monic(),), nodes)
    return CubicClassification("not-normal", (F.monic(),), nodes, reason="too many singular points")


def normal_after(f, form, inverse_map=None):
    """Whether f_*(form) is a normal cubic form."""
    return classify_normal_cubic(pushforward(f, form, inverse_map)).is_normal
