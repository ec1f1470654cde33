"""Words in C, I, P and the calculus of quadratic words C^a Q_i C^b.

A word is read as a composition of maps: the rightmost letter acts
first, so eval("P C") = P o C.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalCheckError, InvalidConfiguration, WordSyntaxError
from .geometry import as_point, collinear, lies_on
from .algebra import X, Y, Z
from .maps import (
    C,
    I,
    IDENTITY,
    P,
    QUADRATIC_TABLE,
    SWAP,
    compose,
    contracted_lines,
)

ORDERS = {"C": 3, "I": 4, "P": 5}
_MAPS = {"C": C, "I": I, "P": P}
TRIANGLE = (X, Y, Z)


class Word:
    """A sequence of (generator, exponent) with no two adjacent equal generators.

    Adjacent equal generators are merged and zero exponents dropped on
    construction; exponents are otherwise kept as given.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for g, e in letters:
            if g not in ORDERS:
                raise ValueError(f"unknown generator {g!r}")
            e = int(e)
            if out and out[-1][0] == g:
                e += out.pop()[1]
            if e:
                out.append((g, e))
        self.letters = tuple(out)

    @classmethod
    def parse(cls, text):
        return parse(text)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def inverse(self):
        return Word((g, -e) for g, e in reversed(self.letters))

    def normalized(self):
        """Exponents reduced modulo the generator orders, in (0, order)."""
        w = self
        while True:
            nxt = Word((g, e % ORDERS[g]) for g, e in w.letters)
            if nxt.letters == w.letters:
                return nxt
            w = nxt

    def syllables(self):
        return sum(abs(e) for _, e in self.letters)


_INT = re.compile(r"[+-]?\d+")


def parse(text):
    """Parse words such as 'P C P I^-1', 'P*C*P' or 'C^2 I^3'."""
    letters = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and (text[pos].isspace() or text[pos] == "*"):
            pos += 1
        if pos >= n:
            break
        ch = text[pos]
        if ch not in ORDERS:
            raise WordSyntaxError(f"unexpected {ch!r}; letters are C, I, P", pos)
        pos += 1
        exp = 1
        j = pos
        while j < n and text[j].isspace():
            j += 1
        if j < n and text[j] == "^":
            j += 1
            while j < n and text[j].isspace():
                j += 1
            m = _INT.match(text, j)
            if not m:
                raise WordSyntaxError("expected a signed integer after '^'", j)
            exp = int(m.group(0))
            pos = m.end()
        if pos < n and not (text[pos].isspace() or text[pos] == "*" or text[pos] in ORDERS):
            raise WordSyntaxError(f"unexpected {text[pos]!r} after letter", pos)
        letters.append((ch, exp))
    return Word(letters)


def format_word(w):
    parts = []
    for g, e in w:
        parts.append(g if e == 1 else f"{g}^{e}")
    return " ".join(parts)


def as_word(w):
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return parse(w)
    if hasattr(w, "word"):
        return w.word
    return Word(w)


def invert(w):
    return as_word(w).inverse()


# -- evaluation -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _lines(g):
    return tuple(contracted_lines(_MAPS[g]))


def _apply_right(m, g):
    """m o g for a single generator g."""
    if g == "C":
        return compose(m, C)
    return compose(m, _MAPS[g], contracted=_lines(g))


@lru_cache(maxsize=8192)
def _eval_letters(letters):
    m = IDENTITY
    for g, e in letters:
        for _ in range(e % ORDERS[g]):
            m = _apply_right(m, g)
    return m


def eval_word(w):
    """The birational map of a word, composed right to left."""
    return _eval_letters(as_word(w).letters)


def relators():
    """The relators of R as words evaluating to the identity."""
    return {
        "I^4": Word([("I", 4)]),
        "C^3": Word([("C", 3)]),
        "[C,I^2]": parse("C I^2 C^-1 I^-2"),
        "P^5": Word([("P", 5)]),
        "PCP I^-1": parse("P C P I^-1"),
    }


# -- quadratic words -------------------------------------------------------------------

Q_WORDS = {i: parse(QUADRATIC_TABLE[i][0]) for i in QUADRATIC_TABLE}


@dataclass(frozen=True, order=True)
class QuadraticWord:
    """C^a Q_i C^b."""

    a: int
    i: int
    b: int

    def __post_init__(self):
        if not 1 <= self.i <= 12:
            raise ValueError("quadratic words use Q_1 .. Q_12")
        object.__setattr__(self, "a", self.a % 3)
        object.__setattr__(self, "b", self.b % 3)

    @property
    def word(self):
        return Word([("C", self.a)]) * Q_WORDS[self.i] * Word([("C", self.b)])

    @property
    def map(self):
        return catalog().maps[self]

    @property
    def base_points(self):
        return catalog().base[self]

    @property
    def lines(self):
        return catalog().lines[self]

    def inverse(self):
        return catalog().inverse[self]

    def left(self, c):
        return QuadraticWord(self.a + c, self.i, self.b)

    def right(self, c):
        return QuadraticWord(self.a, self.i, self.b + c)

    def degree(self):
        return 2

    def __str__(self):
        parts = []
        if self.a:
            parts.append("C" if self.a == 1 else f"C^{self.a}")
        parts.append(f"Q{self.i}")
        if self.b:
            parts.append("C" if self.b == 1 else f"C^{self.b}")
        return " ".join(parts)


@dataclass(frozen=True)
class LinearWord:
    """C^a."""

    a: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % 3)

    @property
    def word(self):
        return Word([("C", self.a)])

    @property
    def map(self):
        return eval_word(self.word)

    def degree(self):
        return 1

    def __str__(self):
        return "1" if self.a == 0 else ("C" if self.a == 1 else f"C^{self.a}")


class Catalog:
    """The 108 quadratic words with their maps, base points and inverses."""

    def __init__(self):
        self.words = [QuadraticWord(a, i, b) for i in range(1, 13) for a in range(3) for b in range(3)]
        self.maps = {}
        self.base = {}
        self.lines = {}
        self.quadratic = {}
        self.linear = {}
        self.by_base = {}
        for a in range(3):
            self.linear.setdefault(eval_word(Word([("C", a)])), LinearWord(a))
        from .geometry import base_points

        for w in self.words:
            m = eval_word(w.word)
            if m.degree != 2:  # pragma: no cover - the table guarantees degree 2
                raise InternalCheckError(f"{w} does not evaluate to a quadratic map")
            self.maps[w] = m
            self.quadratic.setdefault(m, w)
            pts = frozenset(p for p, _ in base_points(m))
            self.base[w] = pts
            self.lines[w] = tuple(contracted_lines(m))
            self.by_base.setdefault(pts, []).append(w)
        self.inverse = {}
        for w in self.words:
            inv = eval_word(w.word.inverse())
            self.inverse[w] = self.quadratic[inv]
        self.points = frozenset().union(*self.base.values())

    def lookup(self, m):
        """The first linear or quadratic word with value m, or None."""
        if m.degree == 1:
            return self.linear.get(m)
        if m.degree == 2:
            return self.quadratic.get(m)
        return None


@lru_cache(maxsize=None)
def catalog():
    return Catalog()


def common_count(w2, w1):
    """Number of common base points of W2 and W1^-1."""
    return len(w2.base_points & w1.inverse().base_points)


def product_degree(w2, w1):
    """Degree of W2 W1 for quadratic words: 4 minus the shared base points."""
    return 4 - common_count(w2, w1)


def product_map(w2, w1):
    return compose(w2.map, w1.map, contracted=w1.lines)


def multiply_pair(w2, w1):
    """W2 W1 as a linear or quadratic word, when its degree is at most 2."""
    m = product_map(w2, w1)
    out = catalog().lookup(m)
    if out is None:
        raise InternalCheckError(
            "product of degree <= 2 missing from the catalog",
            {"W2": str(w2), "W1": str(w1), "degree": m.degree},
        )
    return out


def simplify_pair(f, g):
    """f g^-1 as a linear or quadratic word, for f, g sharing at least two base points."""
    shared = len(f.base_points & g.base_points)
    if shared < 2:
        raise InvalidConfiguration("f and g share fewer than two base points")
    h = compose(f.map, g.inverse().map, contracted=g.inverse().lines)
    out = catalog().lookup(h)
    if out is None:
        raise InternalCheckError(
            "no linear or quadratic word equals f g^-1",
            {"f": str(f), "g": str(g), "degree": h.degree},
        )
    return out


def _in_triangle_cover(points):
    return all(any(lies_on(L, p) for p in points) for L in TRIANGLE)


def find_quadratic_word(a1, a2, a3):
    """A catalog quadratic word whose base points are exactly a1, a2, a3."""
    pts = [as_point(p) for p in (a1, a2, a3)]
    if len(set(pts)) != 3:
        raise InvalidConfiguration("points must be distinct")
    cat = catalog()
    for p in pts:
        if p not in cat.points:
            raise InvalidConfiguration(f"{p} is not a base point of any quadratic word")
        if p.tower and p.parent() not in pts:
            raise InvalidConfiguration(f"{p} is infinitely near to a point outside the set")
    if collinear(*pts):
        raise InvalidConfiguration("points are collinear")
    if not _in_triangle_cover(pts):
        raise InvalidConfiguration("some line of the triangle contains none of the points")
    found = cat.by_base.get(frozenset(pts))
    if not found:
        raise InternalCheckError("no quadratic word has these base points", {"points": [p.to_json() for p in pts]})
    return found[0]


def conjugate_swap(q):
    """tau Q tau^-1 for tau = (Y:X:Z), as a quadratic word.

    tau conjugates C, I, P to their inverses, so the conjugate is the
    word with every exponent negated.
    """
    negated = Word((g, -e) for g, e in q.word)
    m = eval_word(negated)
    out = catalog().lookup(m)
    if out is None or m != compose(SWAP, compose(q.map, SWAP)):
        raise InternalCheckError("conjugation by the swap left the catalog", {"q": str(q)})
    return out


# -- packing into quadratic words -----------------------------------------------------

_POWER_WORDS = {
    ("I", 1): (0, 1, 0),
    ("I", 2): (0, 3, 0),
    ("I", 3): (0, 2, 0),
    ("P", 1): (0, 4, 0),
    ("P", 2): (0, 10, 0),
    ("P", 3): (0, 11, 1),
    ("P", 4): (0, 5, 0),
}


def _absorb_linear(prefix, factors, pos, c):
    """Insert C^c at written position pos of factors (left to right)."""
    if c % 3 == 0:
        return prefix
    if pos < len(factors):
        factors[pos] = factors[pos].left(c)
    elif factors:
        factors[-1] = factors[-1].right(c)
    else:
        prefix = (prefix + c) % 3
    return prefix


def to_quadratic_words(w, merge=True):
    """(prefix exponent a, [W_k, ..., W_1]) with w = C^a W_k ... W_1 modulo R.

    Powers of I and P are read off the catalog, powers of C are absorbed
    into a neighbouring quadratic word, and (unless ``merge`` is false)
    adjacent pairs whose product has degree at most 2 are merged greedily.
    """
    w = as_word(w).normalized()
    factors = []
    pending = 0
    for g, e in w:
        if g == "C":
            pending += e
            continue
        a, i, b = _POWER_WORDS[(g, e)]
        factors.append(QuadraticWord(a + pending, i, b))
        pending = 0
    prefix = 0
    if pending:
        prefix = _absorb_linear(prefix, factors, len(factors), pending)
    if merge:
        factors, prefix = merge_adjacent(factors, prefix)
    return prefix, factors


def merge_adjacent(factors, prefix=0):
    """Greedily replace adjacent pairs of degree <= 2 by a single word."""
    factors = list(factors)
    changed = True
    while changed:
        changed = False
        for j in range(len(factors) - 1):
            left, right = factors[j], factors[j + 1]
            if product_degree(left, right) <= 2:
                prod = multiply_pair(left, right)
                del factors[j : j + 2]
                if isinstance(prod, LinearWord):
                    prefix = _absorb_linear(prefix, factors, j, prod.a)
                else:
                    factors.insert(j, prod)
                changed = True
                break
    return factors, prefix


def factors_word(prefix, factors):
    """C^prefix W_k ... W_1 as a plain word (factors written left to right)."""
    out = Word([("C", prefix)])
    for f in factors:
        out = out * f.word
    return out.normalized()
