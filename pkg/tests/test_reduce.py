import random

import pytest
import sympy

from cremona.errors import DegreeCapExceeded
from cremona.geometry import base_points, noether_sums
from cremona.maps import IDENTITY
from cremona.reduce import ENV_DEGREE_CAP, default_degree_cap, is_identity, reduce, reduce_factors
from cremona.words import QuadraticWord, catalog, eval_word, factors_word, relators

from conftest import SX, SY, SZ, to_sympy


def peaks_decrease(trace):
    # each step logs the pair (D, n) it starts from
    pairs = [(s["D"], s["n"]) for s in trace[1:]]
    return all(b < a for a, b in zip(pairs, pairs[1:]))


@pytest.mark.parametrize("name", sorted(relators()))
def test_relators_reduce_to_empty(name):
    red = reduce(relators()[name])
    assert red.is_empty and not red.flagged
    assert is_identity(relators()[name])


@pytest.mark.parametrize("text", ["P", "I", "C", "P I P", "P^2 C", "I^3 P^-1", "P C P I^-1 C"])
def test_short_words(text):
    red = reduce(text)
    assert eval_word(red.word) == eval_word(text)
    assert not red.flagged and red.degree == eval_word(text).degree


def test_non_identity():
    assert not is_identity("C I C^-1 I^-1")
    assert not is_identity("P")


def test_cubic_value_is_flagged():
    red = reduce("P I P I")
    assert red.flagged and red.degree == 3
    assert eval_word(red.word) == eval_word("P I P I")


def test_cubic_value_against_sympy():
    # P I P I evaluated in sympy with the common factor removed
    P = (SX * SY, (SY + SZ) * SZ, SX * SZ)
    I = (SZ**2, SX * SY, SY * SZ)

    def comp(f, g):
        out = [sympy.expand(c.subs({SX: g[0], SY: g[1], SZ: g[2]}, simultaneous=True)) for c in f]
        common = sympy.gcd(sympy.gcd(out[0], out[1]), out[2])
        return tuple(sympy.cancel(c / common) for c in out)

    m = comp(P, comp(I, comp(P, I)))
    assert {sympy.Poly(c, SX, SY, SZ).total_degree() for c in m} == {3}
    ours = eval_word("P I P I")
    ratios = {sympy.cancel(to_sympy(a) / b) for a, b in zip(ours.components, m)}
    assert len(ratios) == 1
    mults = [k for _, k in base_points(ours)]
    assert noether_sums(mults) == (6, 8)


def qw(a, i, b):
    return QuadraticWord(a, i, b)


# a configuration that needs the four-base-point split, frozen with its trace
R4_FACTORS = [qw(1, 10, 1), qw(0, 9, 1), qw(2, 6, 1), qw(1, 1, 0), qw(0, 6, 0), qw(2, 11, 0)]
R4_TRACE = [
    (5, 4, None, "start"),
    (5, 4, 4, "split via Q = Q10 C: Q4 C * (Q11 C * Q3 C)"),
    (5, 3, 2, "merge W4 W3 -> C^2 Q2"),
    (4, 5, 2, "merge W6 W5 -> Q7 C"),
    (4, 3, 3, "split via Q = Q8 C on ['(0:1:0)', '(1:0:-1)', '(0:1:0)^[(1:0)]']: C Q4 * C^2 Q9 C"),
    (3, 5, None, "stop: the value has degree > 2"),
]


def test_four_point_split_golden():
    red = reduce_factors(0, R4_FACTORS, trace=True)
    assert [(s["D"], s["n"], s["r"], s["action"]) for s in red.trace] == R4_TRACE
    assert red.factors == ["Q7 C", "C Q4", "C^2 Q9 C", "Q6", "C^2 Q11"]
    assert eval_word(red.word) == eval_word(factors_word(0, R4_FACTORS))
    assert red.flagged and red.degree == 3
    assert peaks_decrease(red.trace)


def test_scrambled_factorizations_collapse():
    rng = random.Random(7)
    words = catalog().words
    splits = 0
    for _ in range(150):
        A = [rng.choice(words) for _ in range(rng.randint(1, 3))]
        x = rng.choice(words)
        factors = A + [a.inverse() for a in reversed(A)] + [x]
        prefix = rng.randrange(3)
        red = reduce_factors(prefix, factors, trace=True)
        assert eval_word(red.word) == eval_word(factors_word(prefix, factors))
        assert not red.flagged and red.degree <= 2
        assert peaks_decrease(red.trace)
        splits += sum(1 for s in red.trace if s["r"] == 3)
    assert splits > 0


def test_degree_cap(monkeypatch):
    with pytest.raises(DegreeCapExceeded):
        reduce_factors(0, R4_FACTORS, degree_cap=4)
    monkeypatch.setenv(ENV_DEGREE_CAP, "8")
    assert default_degree_cap() == 8
    monkeypatch.setenv(ENV_DEGREE_CAP, "1")
    with pytest.raises(ValueError):
        default_degree_cap()
    with pytest.raises(ValueError):
        reduce("P", degree_cap=1)


def test_reduction_json():
    data = reduce("P I P I", trace=True).to_json()
    assert data["flagged"] is True and data["degree"] == 3
    assert {"step", "D", "n", "r", "action", "factors"} <= set(data["trace"][0])


def test_identity_of_empty_word():
    assert is_identity("")
    assert eval_word("") == IDENTITY
