import random

import pytest
import sympy

from cremona.algebra import Poly

SX, SY, SZ = sympy.symbols("X Y Z")


def to_sympy(p):
    return sum(
        (sympy.Rational(v.numerator, v.denominator) if not isinstance(v, int) else sympy.Integer(v))
        * SX**a * SY**b * SZ**c
        for (a, b, c), v in p.terms.items()
    ) if p.terms else sympy.Integer(0)


def from_sympy(expr, degree=None):
    poly = sympy.Poly(sympy.expand(expr), SX, SY, SZ)
    terms = {}
    for mono, coeff in poly.terms():
        terms[mono] = sympy.Rational(coeff)
    from fractions import Fraction

    return Poly({k: Fraction(int(v.p), int(v.q)) for k, v in terms.items()}, degree)


def random_word_text(rng, max_len=8):
    n = rng.randint(0, max_len)
    letters = []
    for _ in range(n):
        g = rng.choice("CIP")
        e = rng.choice([-2, -1, 1, 2, 3])
        letters.append(g if e == 1 else f"{g}^{e}")
    return " ".join(letters)


@pytest.fixture
def rng():
    return random.Random(20240611)
