from fractions import Fraction

import pytest
import sympy

from cremona.algebra import Poly, X, Y, Z
from cremona.errors import IrrationalSingularLocus
from cremona.forms import (
    OMEGA0,
    RationalTwoForm,
    blowup_form_multiplicity,
    classify_normal_cubic,
    exceptional_kind,
    is_pole,
    is_symplectic,
    preserves_divisor,
    pullback,
    pushforward,
)
from cremona.geometry import ProjectivePoint
from cremona.maps import SWAP, S, T, inverse, named_point, quadratic_from_points, quadratic_map, torus
from cremona.words import eval_word

from conftest import SX, SY, SZ, to_sympy

x, y = sympy.symbols("x y")


def affine_ratio(g):
    """g*(omega0) / omega0 computed in the chart Z = 1."""
    u, v, w = (to_sympy(c).subs({SX: x, SY: y, SZ: 1}) for c in g.components)
    a, b = u / w, v / w
    jac = sympy.diff(a, x) * sympy.diff(b, y) - sympy.diff(a, y) * sympy.diff(b, x)
    return sympy.cancel(x * y * jac / (a * b))


def as_affine(form):
    return sympy.cancel((to_sympy(form.A) / to_sympy(form.B)).subs({SX: x, SY: y, SZ: 1}))


@pytest.mark.parametrize("g", [SWAP, torus(2, 3), quadratic_map(4), quadratic_map(12), eval_word("P I P I")])
def test_pullback_matches_affine_oracle(g):
    assert sympy.simplify(as_affine(pullback(g, OMEGA0)) - affine_ratio(g)) == 0


def test_pullback_of_general_form_matches_oracle():
    form = RationalTwoForm(X + Y, Y + Z)
    g = quadratic_map(10)
    u, v, w = (to_sympy(c).subs({SX: x, SY: y, SZ: 1}) for c in g.components)
    coeff = ((u + v) / (v + w))
    expected = sympy.cancel(coeff * affine_ratio(g))
    assert sympy.simplify(as_affine(pullback(g, form)) - expected) == 0


def test_form_normalization():
    f = RationalTwoForm((X + Y).scale(4), (X - Z).scale(2))
    assert f.B.leading_coefficient() == 1 and f.A == (X + Y).scale(2)
    assert RationalTwoForm(X * Y, X * Z) == RationalTwoForm(Y, Z)
    assert OMEGA0.scalar() == 1
    assert RationalTwoForm.from_json(f.to_json()) == f
    with pytest.raises(ZeroDivisionError):
        RationalTwoForm(Poly.constant(1), Poly.zero(0))


def test_swap_reverses_sign():
    assert pushforward(SWAP) == RationalTwoForm(Poly.constant(-1))
    assert preserves_divisor(SWAP) == (True, -1)
    assert not is_symplectic(SWAP)


@pytest.mark.parametrize("i", range(1, 13))
def test_catalog_maps_are_symplectic(i):
    assert is_symplectic(quadratic_map(i))


def test_S_T_are_symplectic():
    for lam in (2, Fraction(-1, 3)):
        assert is_symplectic(S(lam))
        assert is_symplectic(T(lam))


def test_pushforward_with_supplied_inverse():
    f = eval_word("P I P")
    assert pushforward(f, OMEGA0, inverse_map=eval_word("P^-1 I^-1 P^-1")) == pushforward(f)


@pytest.mark.parametrize(
    "name, m",
    [("p1", -2), ("q1", -1), ("p1^Y", -2), ("p1^Y+Z", -1), ("q1^X", -1)],
)
def test_multiplicities_of_omega0(name, m):
    assert blowup_form_multiplicity(OMEGA0, named_point(name)) == m
    assert is_pole(OMEGA0, named_point(name))


def test_off_the_triangle():
    pt = ProjectivePoint((1, 1, 1))
    assert blowup_form_multiplicity(OMEGA0, pt) == 0
    assert not is_pole(OMEGA0, pt)
    assert exceptional_kind(OMEGA0, pt) == "zero"
    assert exceptional_kind(OMEGA0, named_point("p1")) == "simple pole"
    assert exceptional_kind(OMEGA0, named_point("q1")) == "neither"


def test_classify_omega0():
    c = classify_normal_cubic(OMEGA0)
    assert c.kind == "triangle" and c.label == "(i)"
    assert set(c.components) == {X, Y, Z}
    assert len(c.nodes) == 3


def test_classify_conic_and_line():
    # -div = Z (XY - Z^2)
    c = classify_normal_cubic(RationalTwoForm(X * Y, X * Y - Z * Z))
    assert c.kind == "conic+line" and c.label == "(ii)"


def test_classify_nodal_cubic():
    # -div = Y^2 Z - X^2 (X + Z), node at (0:0:1)
    F = Y * Y * Z - X * X * (X + Z)
    c = classify_normal_cubic(RationalTwoForm(X * Y * Z, F))
    assert c.kind == "nodal-cubic" and c.nodes == (ProjectivePoint((0, 0, 1)),)


def test_classify_not_normal():
    cusp = Y * Y * Z - X * X * X
    assert classify_normal_cubic(RationalTwoForm(X * Y * Z, cusp)).kind == "not-normal"
    fermat = X**3 + Y**3 + Z**3
    assert classify_normal_cubic(RationalTwoForm(X * Y * Z, fermat)).reason == "smooth cubic"
    assert classify_normal_cubic(RationalTwoForm(X * X, Y * Z)).kind == "not-normal"


def test_irrational_nodes_are_refused():
    with pytest.raises(IrrationalSingularLocus):
        classify_normal_cubic(RationalTwoForm(X * Y * Z, X * (Y * Y - Z * Z.scale(2))))


def test_quadratic_map_with_base_point_off_the_poles():
    f = quadratic_from_points(named_point("p1"), named_point("p2"), ProjectivePoint((1, 1, 1)))
    assert not classify_normal_cubic(pushforward(f)).is_normal
    assert classify_normal_cubic(pushforward(quadratic_map(3))).is_normal
    assert inverse(f).degree == 2
