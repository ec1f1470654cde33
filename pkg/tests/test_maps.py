from fractions import Fraction

import pytest
import sympy

from cremona.algebra import X, Y, Z
from cremona.errors import DegreeMismatch, InvalidConfiguration
from cremona.geometry import ProjectivePoint, base_points
from cremona.maps import (
    C,
    GENERATOR_TABLE,
    IDENTITY,
    QUADRATIC_TABLE,
    SWAP,
    BirationalMap,
    I,
    P,
    S,
    S_base_points,
    T,
    T_base_points,
    compose,
    contracted_lines,
    decompose_quadratic_symplectic,
    diagonal,
    equal_by_minors,
    generator_map,
    inverse,
    named_point,
    point_name,
    power,
    quadratic_from_points,
    quadratic_map,
    rho,
    symplectic_automorphism_decompose,
    torus,
)
from cremona.words import eval_word

from conftest import SX, SY, SZ, to_sympy


def sympy_compose(f, g):
    """f o g computed in sympy with the common factor cancelled."""
    gs = [to_sympy(c) for c in g.components]
    comps = [sympy.expand(to_sympy(c).subs({SX: gs[0], SY: gs[1], SZ: gs[2]}, simultaneous=True)) for c in f.components]
    common = sympy.gcd(sympy.gcd(comps[0], comps[1]), comps[2])
    return [sympy.cancel(c / common) for c in comps]


def proportional(a, b):
    ratios = {sympy.cancel(x / y) for x, y in zip(a, b) if y != 0}
    return len(ratios) == 1 and next(iter(ratios)).is_number and all((x == 0) == (y == 0) for x, y in zip(a, b))


def test_generators():
    assert P.components == (X * Y, (Y + Z) * Z, X * Z)
    assert I.degree == 2 and C.degree == 1
    assert power(P, 5) == IDENTITY
    assert power(I, 4) == IDENTITY
    assert power(C, 3) == IDENTITY
    assert compose(P, compose(C, P)) == I


def test_compose_matches_sympy():
    for f, g in [(P, I), (I, P), (P, compose(P, I))]:
        ours = compose(f, g)
        assert proportional([to_sympy(c) for c in ours.components], sympy_compose(f, g))


def test_canonical_form_and_equality():
    f = BirationalMap([(X * Y).scale(3), (Y * Z).scale(3), (X * Z).scale(3)])
    assert f.components[0].leading_coefficient() == 1
    g = BirationalMap([X * X * Y, X * Y * Z, X * X * Z])
    assert g == BirationalMap([X * Y, Y * Z, X * Z])
    assert equal_by_minors(f, g)
    with pytest.raises(DegreeMismatch):
        BirationalMap([X, Y, Z * Z])
    with pytest.raises(InvalidConfiguration):
        BirationalMap.from_matrix([[1, 0, 0], [2, 0, 0], [0, 0, 1]])
    assert BirationalMap.from_json(P.to_json()) == P


def test_evaluation_at_points():
    assert P(ProjectivePoint((1, 1, 1))) == ProjectivePoint((1, 2, 1))
    with pytest.raises(InvalidConfiguration):
        P(ProjectivePoint((1, 0, 0)))


@pytest.mark.parametrize("i", range(1, 13))
def test_quadratic_table(i):
    word, _, names = QUADRATIC_TABLE[i]
    assert quadratic_map(i) == eval_word(word)
    assert {p for p, _ in base_points(quadratic_map(i))} == {named_point(n) for n in names}


@pytest.mark.parametrize("name", sorted(GENERATOR_TABLE))
def test_generator_table(name):
    _, names = GENERATOR_TABLE[name]
    f = generator_map(name)
    assert f == eval_word(name)
    assert {p for p, _ in base_points(f)} == {named_point(n) for n in names}


def test_inverse():
    assert inverse(P) == quadratic_map(5)
    assert inverse(C) == eval_word("C^2")
    f = eval_word("P I P I")
    assert compose(inverse(f), f) == IDENTITY


def test_contracted_lines_of_P():
    lines = {ln.monic() for ln in contracted_lines(P)}
    assert lines == {X, Z, Y + Z}


# The defining compositions differ from the table formulas by a diagonal
# factor; the sympy oracle confirms both torus factors.
@pytest.mark.parametrize("lam", [2, Fraction(-3, 5), Fraction(7, 4)])
def test_S_and_T_against_definitions(lam):
    p2c = eval_word("P^2 C")
    s_def = compose(inverse(p2c), compose(rho(-lam), p2c))
    assert s_def == compose(diagonal(1, 1, -lam), S(lam))
    t_def = compose(eval_word("P^2"), compose(rho(-lam), eval_word("C P^2")))
    assert t_def == compose(diagonal(1, -1, 1), T(lam))
    oracle = sympy_compose(inverse(p2c), compose(rho(-lam), p2c))
    assert proportional(oracle, [to_sympy(c) for c in compose(diagonal(1, 1, -lam), S(lam)).components])


@pytest.mark.parametrize("lam", [2, Fraction(-3, 5)])
def test_S_T_base_points(lam):
    assert sorted(p for p, _ in base_points(S(lam))) == S_base_points(lam)
    assert sorted(p for p, _ in base_points(T(lam))) == T_base_points(lam)


def test_S_T_reject_degenerate_lambda():
    for bad in (0, -1):
        with pytest.raises(InvalidConfiguration):
            S(bad)
        with pytest.raises(InvalidConfiguration):
            T(bad)


def test_quadratic_from_points():
    # the net is determined by the points, the map only up to a linear factor
    f = quadratic_from_points(named_point("p1"), named_point("p2"), named_point("p3"))
    assert set(f.components) == set(eval_word("I^2").components)
    g = quadratic_from_points(named_point("p1"), named_point("p1^Y"), named_point("p2"))
    assert g.degree == 2 and {p for p, _ in base_points(g)} == {named_point(n) for n in ("p1", "p1^Y", "p2")}
    with pytest.raises(InvalidConfiguration):
        quadratic_from_points(named_point("p1"), named_point("p2"), named_point("q3"))


def test_point_names():
    assert point_name(named_point("q1^X")) == "q1^X"
    assert point_name(ProjectivePoint((1, 1, 1))) == "(1:1:1)"


def test_symplectic_automorphisms():
    assert symplectic_automorphism_decompose(C).symplectic
    assert not symplectic_automorphism_decompose(SWAP).symplectic
    d = symplectic_automorphism_decompose(compose(torus(2, Fraction(1, 3)), C))
    assert d.scales == (2, Fraction(1, 3), 1) and d.symplectic
    assert compose(d.torus, d.permutation_map) == compose(torus(2, Fraction(1, 3)), C)
    with pytest.raises(InvalidConfiguration):
        symplectic_automorphism_decompose(BirationalMap.from_matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))


@pytest.mark.parametrize(
    "core, expected",
    [
        (eval_word("I^2"), "I^2"),
        (eval_word("P"), "P"),
        (eval_word("P^4"), "P^4"),
        (eval_word("P^2"), "P^2"),
        (eval_word("P^3"), "P^3"),
        (T(3), "T"),
        (S(Fraction(2, 3)), "S"),
    ],
)
def test_decomposition_cases(core, expected):
    f = compose(torus(3, -2), compose(core, compose(C, torus(Fraction(1, 5), 7))))
    d = decompose_quadratic_symplectic(f)
    assert d.q_name == expected
    assert d.recompose() == f


def test_decomposition_rejects_non_divisor_preserving():
    f = quadratic_from_points(named_point("p1"), named_point("p2"), ProjectivePoint((1, 1, 1)))
    with pytest.raises(InvalidConfiguration):
        decompose_quadratic_symplectic(f)
    with pytest.raises(InvalidConfiguration):
        decompose_quadratic_symplectic(I)
