import itertools

import pytest

from cremona.errors import InvalidConfiguration, WordSyntaxError
from cremona.maps import IDENTITY, SWAP, compose, named_point
from cremona.words import (
    LinearWord,
    QuadraticWord,
    Word,
    catalog,
    common_count,
    conjugate_swap,
    eval_word,
    factors_word,
    find_quadratic_word,
    format_word,
    invert,
    merge_adjacent,
    multiply_pair,
    parse,
    product_degree,
    relators,
    simplify_pair,
    to_quadratic_words,
)


def Q(i, a=0, b=0):
    return QuadraticWord(a, i, b)


def same(u, v):
    return eval_word(u) == eval_word(v)


def test_parse_and_format():
    w = parse("P C P I^-1")
    assert w.letters == (("P", 1), ("C", 1), ("P", 1), ("I", -1))
    assert format_word(w) == "P C P I^-1"
    assert parse("P*C*P") == parse("P C P") == parse("PCP")
    assert parse("C ^ 2 I^+3") == Word([("C", 2), ("I", 3)])
    assert parse("") == Word() and not parse("   ")
    assert parse("P P^-1") == Word()


@pytest.mark.parametrize("text, pos", [("P X", 2), ("P^", 2), ("P^a", 2), ("C2", 1)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(WordSyntaxError) as exc:
        parse(text)
    assert exc.value.position == pos


def test_inverse_and_normalization():
    assert invert("P C") == parse("C^-1 P^-1")
    assert parse("I^-1 P^7 C^-4").normalized() == parse("I^3 P^2 C^2")
    assert parse("I^5").syllables() == 5


@pytest.mark.parametrize("name", sorted(relators()))
def test_relators_evaluate_to_identity(name):
    assert eval_word(relators()[name]) == IDENTITY


def test_evaluation_order_is_right_to_left():
    assert eval_word("P C") == compose(eval_word("P"), eval_word("C"))


# identities used by the packing and by the reducer
@pytest.mark.parametrize(
    "lhs, rhs",
    [
        ("I P", "I P"),
        ("P I P", "P I P"),
        ("P I P^-1", "P^2 C"),
        ("I^2 P", "I^2 P"),
        ("P I^2 P", "C^-1 P^-2 C^-1"),
        ("P I^2 P^-1", "P I P C"),
        ("I^3 P", "P^-1 C^-1"),
        ("P I^-1 P", "C^-1"),
        ("P I^-1 P^-1", "C^-1 P^3"),
        ("P^4 C^-1", "I^3 P"),
        ("P^3 C^-1", "P^-1 I^-1 P"),
        ("I^3 P^-1", "I^2 P C"),
    ],
)
def test_table_identities(lhs, rhs):
    assert same(lhs, rhs)


def test_printed_table_entry_for_P_I2_P_is_off_by_one_exponent():
    assert not same("P I^2 P", "C^-1 P^-1 C^-1")


def test_inverses_of_quadratic_maps():
    assert same(invert("P I^2"), "I P C")
    assert same(invert("P^-1 I^2"), "I^2 P")
    assert same(invert("P I P"), "C P I P C")
    assert Q(6).inverse() == Q(9, 0, 1)
    assert Q(7).inverse() == Q(8)


def test_catalog_shape():
    cat = catalog()
    assert len(cat.words) == 108
    # I^2 commutes with C, so C^a Q3 C^b only depends on a + b
    assert len(set(cat.maps.values())) == 102
    assert len({cat.maps[w] for w in cat.words if w.i == 3}) == 3
    for w in cat.words:
        assert cat.maps[w] == eval_word(w.word)
        assert len(w.base_points) == 3
        assert w.inverse().inverse().map == w.map
        assert compose(w.inverse().map, w.map) == IDENTITY


def test_product_degree_formula():
    cat = catalog()
    for w2, w1 in itertools.islice(itertools.product(cat.words, repeat=2), 0, None, 37):
        assert compose(w2.map, w1.map).degree == product_degree(w2, w1)
        assert product_degree(w2, w1) == 4 - common_count(w2, w1)


def test_multiply_and_simplify():
    assert multiply_pair(Q(7).inverse(), Q(7)) == LinearWord(0)
    assert simplify_pair(Q(8), Q(7).inverse()) == LinearWord(0)
    with pytest.raises(InvalidConfiguration):
        simplify_pair(Q(3), Q(10, 1, 0))


def test_conjugate_swap():
    assert conjugate_swap(Q(6)) == Q(7)
    assert conjugate_swap(Q(9)) == Q(8, 0, 1)
    for w in catalog().words[::7]:
        assert conjugate_swap(w).map == compose(SWAP, compose(w.map, SWAP))


def test_find_quadratic_word():
    pts = [named_point(n) for n in ("p1", "q1", "q3")]
    w = find_quadratic_word(*pts)
    assert w == Q(11) and w.base_points == frozenset(pts)
    with pytest.raises(InvalidConfiguration):
        find_quadratic_word(*(named_point(n) for n in ("p1", "p2", "q3")))
    with pytest.raises(InvalidConfiguration):
        find_quadratic_word(*(named_point(n) for n in ("p2", "p1^Y", "q1")))
    with pytest.raises(InvalidConfiguration):
        # no point of the set lies on X = 0
        find_quadratic_word(*(named_point(n) for n in ("p1", "q2", "q3")))


@pytest.mark.parametrize(
    "text, expected",
    [("I P", (0, ["Q9"])), ("P I P", (0, ["Q12"])), ("I^3 P^-1", (0, ["Q8 C"])), ("C", (1, [])), ("", (0, []))],
)
def test_to_quadratic_words(text, expected):
    prefix, factors = to_quadratic_words(text)
    assert (prefix, [str(f) for f in factors]) == expected
    assert same(factors_word(prefix, factors), text)


def test_packing_preserves_value(rng):
    from conftest import random_word_text

    for _ in range(60):
        text = random_word_text(rng)
        for merge in (True, False):
            prefix, factors = to_quadratic_words(text, merge=merge)
            assert same(factors_word(prefix, factors), text)


def test_merge_adjacent():
    factors, prefix = merge_adjacent([Q(7).inverse(), Q(7)])
    assert factors == [] and prefix == 0
