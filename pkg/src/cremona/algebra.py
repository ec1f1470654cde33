"""Exact rational arithmetic on sparse homogeneous polynomials in X, Y, Z.

Coefficients are Python ints or :class:`fractions.Fraction`; integral
fractions are demoted to ``int`` so that integer-only computations (every
map of the group generated by C, I, P is integral) never pay for rational
arithmetic.

Terms are kept in a dict keyed by exponent triples.  The term order is
graded lexicographic with X > Y > Z; inside a homogeneous polynomial that
is plain lexicographic order on the triples.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DegreeMismatch, NotDivisible

Rational = Fraction


def _q(c):
    """Coerce a scalar to int or Fraction, demoting integral fractions."""
    if type(c) is int:
        return c
    if type(c) is Fraction:
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, _RationalABC):
        c = Fraction(c.numerator, c.denominator)
    else:
        c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _div(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _q(Fraction(a) / b)


def _clean(terms):
    out = {}
    for k, v in terms.items():
        if v:
            if type(v) is Fraction and v.denominator == 1:
                v = v.numerator
            out[k] = v
    return out


class Poly:
    """Homogeneous polynomial in X, Y, Z with rational coefficients.

    Instances are immutable by convention; every operation returns a new
    polynomial.  The zero polynomial carries an explicit degree tag so that
    it can take part in degree-checked sums.
    """

    __slots__ = ("terms", "degree", "_hash")

    def __init__(self, terms=None, degree=None):
        terms = _clean({tuple(int(e) for e in k): _q(v) for k, v in (terms or {}).items()})
        degrees = {sum(k) for k in terms}
        if len(degrees) > 1:
            raise DegreeMismatch(f"terms of mixed degrees {sorted(degrees)}")
        for k in terms:
            if len(k) != 3 or min(k) < 0:
                raise ValueError(f"bad exponent triple {k}")
        if degrees:
            d = degrees.pop()
            if degree is not None and degree != d:
                raise DegreeMismatch(f"declared degree {degree}, terms have degree {d}")
            degree = d
        elif degree is None:
            degree = 0
        if degree < 0:
            raise ValueError("negative degree")
        self.terms = terms
        self.degree = degree
        self._hash = None

    @classmethod
    def _raw(cls, terms, degree):
        # trusted constructor: terms already clean and homogeneous
        p = object.__new__(cls)
        p.terms = terms
        p.degree = degree
        p._hash = None
        return p

    @classmethod
    def zero(cls, degree=0):
        return cls._raw({}, degree)

    @classmethod
    def constant(cls, c):
        c = _q(c)
        return cls._raw({(0, 0, 0): c} if c else {}, 0)

    @classmethod
    def monomial(cls, a, b, c, coeff=1):
        coeff = _q(coeff)
        return cls._raw({(a, b, c): coeff} if coeff else {}, a + b + c)

    @classmethod
    def linear(cls, a, b, c):
        """The linear form a*X + b*Y + c*Z."""
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1)

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in decreasing term order."""
        return sorted(self.terms.items(), reverse=True)

    def leading_monomial(self):
        return max(self.terms)

    def leading_coefficient(self):
        if not self.terms:
            return 0
        return self.terms[max(self.terms)]

    def coefficient(self, a, b, c):
        return self.terms.get((a, b, c), 0)

    def is_integral(self):
        return all(type(v) is int for v in self.terms.values())

    def max_exponents(self):
        if not self.terms:
            return (0, 0, 0)
        return tuple(max(k[i] for k in self.terms) for i in range(3))

    def min_exponents(self):
        if not self.terms:
            return (0, 0, 0)
        return tuple(min(k[i] for k in self.terms) for i in range(3))

    # -- arithmetic ------------------------------------------------------

    def _check_same_degree(self, other):
        if self.degree != other.degree and self.terms and other.terms:
            raise DegreeMismatch(f"cannot add degree {self.degree} and degree {other.degree}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        self._check_same_degree(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        res = dict(self.terms)
        for k, v in other.terms.items():
            res[k] = res.get(k, 0) + v
        return Poly._raw(_clean(res), self.degree)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -v for k, v in self.terms.items()}, self.degree)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _q(c)
        if not c:
            return Poly.zero(self.degree)
        if c == 1:
            return self
        return Poly._raw(_clean({k: v * c for k, v in self.terms.items()}), self.degree)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        deg = self.degree + other.degree
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(deg)
        if len(a) < len(b):
            a, b = b, a
        res = {}
        get = res.get
        for (b0, b1, b2), bc in b.items():
            for (a0, a1, a2), ac in a.items():
                k = (a0 + b0, a1 + b1, a2 + b2)
                res[k] = get(k, 0) + ac * bc
        return Poly._raw(_clean(res), deg)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return exact_divide(self, other)
        return self.scale(Fraction(1) / _q(other))

    def __eq__(self, other):
        if isinstance(other, Poly):
            if not self.terms and not other.terms:
                return True
            return self.degree == other.degree and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self.terms.items())))
        return self._hash

    # -- normalizations --------------------------------------------------

    def monic(self):
        """Scale so that the leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(_div(1, self.leading_coefficient()))

    def content(self):
        """Positive rational c with self / c integral and primitive."""
        if not self.terms:
            return 1
        num = 0
        den = 1
        for v in self.terms.values():
            if type(v) is int:
                num = math.gcd(num, v)
            else:
                num = math.gcd(num, v.numerator)
                den = den * v.denominator // math.gcd(den, v.denominator)
        return _div(num, den)

    def primitive(self):
        """Integral primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(_div(1, c))

    # -- evaluation and substitution ------------------------------------

    def evaluate(self, point):
        x, y, z = (_q(t) for t in point)
        total = 0
        for (a, b, c), v in self.terms.items():
            total += v * x**a * y**b * z**c
        return _q(total)

    def substitute(self, triple):
        return substitute(self, triple)

    def derivative(self, var):
        """Partial derivative with respect to variable index 0, 1 or 2."""
        res = {}
        for k, v in self.terms.items():
            e = k[var]
            if e:
                nk = list(k)
                nk[var] -= 1
                res[tuple(nk)] = v * e
        return Poly._raw(res, max(self.degree - 1, 0))

    def vanishes_at(self, point):
        return self.evaluate(point) == 0

    # -- display and serialization ---------------------------------------

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), v in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in (("X", a), ("Y", b), ("Z", c))
                if e
            )
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self):
        return [
            {
                "exponents": list(k),
                "num": str(Fraction(v).numerator),
                "den": str(Fraction(v).denominator),
            }
            for k, v in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, records, degree=None):
        terms = {}
        for r in records:
            k = tuple(int(e) for e in r["exponents"])
            terms[k] = Fraction(int(r["num"]), int(r.get("den", "1")))
        return cls(terms, degree)


X = Poly._raw({(1, 0, 0): 1}, 1)
Y = Poly._raw({(0, 1, 0): 1}, 1)
Z = Poly._raw({(0, 0, 1): 1}, 1)
VARIABLES = (X, Y, Z)


def add(p, q):
    return p + q


def sub(p, q):
    return p - q


def mul(p, q):
    return p * q


def evaluate(p, point):
    return p.evaluate(point)


# -- exact division --------------------------------------------------------


def exact_divide(p, d):
    """Return q with q * d == p, raising :class:`NotDivisible` otherwise."""
    if not d.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    qdeg = p.degree - d.degree
    if not p.terms:
        return Poly.zero(max(qdeg, 0))
    if qdeg < 0:
        raise NotDivisible(f"degree {p.degree} is smaller than divisor degree {d.degree}")
    if len(d.terms) == 1:
        (dk, dc), = d.terms.items()
        res = {}
        for k, v in p.terms.items():
            nk = (k[0] - dk[0], k[1] - dk[1], k[2] - dk[2])
            if nk[0] < 0 or nk[1] < 0 or nk[2] < 0:
                raise NotDivisible("monomial divisor does not divide")
            res[nk] = _div(v, dc)
        return Poly._raw(res, qdeg)
    lt = max(d.terms)
    lc = d.terms[lt]
    rest = [(k, c) for k, c in d.terms.items() if k != lt]
    r = dict(p.terms)
    heap = [(-k[0], -k[1], -k[2]) for k in r]
    heapq.heapify(heap)
    q = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        nk = pop(heap)
        key = (-nk[0], -nk[1], -nk[2])
        c = r.pop(key, None)
        if c is None:
            continue
        e0, e1, e2 = key[0] - lt[0], key[1] - lt[1], key[2] - lt[2]
        if e0 < 0 or e1 < 0 or e2 < 0:
            raise NotDivisible("leading term of the remainder is not divisible")
        f = _div(c, lc)
        q[(e0, e1, e2)] = f
        for (d0, d1, d2), dc in rest:
            kk = (e0 + d0, e1 + d1, e2 + d2)
            old = r.get(kk)
            if old is None:
                r[kk] = -f * dc
                push(heap, (-kk[0], -kk[1], -kk[2]))
            else:
                nv = old - f * dc
                if nv:
                    r[kk] = nv
                else:
                    del r[kk]
    return Poly._raw(_clean(q), qdeg)


def try_divide(p, d):
    """Like :func:`exact_divide` but returns None when d does not divide p."""
    try:
        return exact_divide(p, d)
    except NotDivisible:
        return None


def divides(d, p):
    return try_divide(p, d) is not None


# -- substitution ----------------------------------------------------------


class _PowerCache:
    def __init__(self, poly):
        self.powers = [Poly.constant(1), poly]

    def __getitem__(self, n):
        pw = self.powers
        while len(pw) <= n:
            pw.append(pw[-1] * pw[1])
        return pw[n]


def substitute(p, triple):
    """Compose p with (F1, F2, F3): the polynomial p(F1, F2, F3).

    The three substituted polynomials must share one degree e; the result
    has degree deg(p) * e.
    """
    f1, f2, f3 = triple
    degs = {f.degree for f in triple if f.terms}
    if len(degs) > 1:
        raise DegreeMismatch("substituted polynomials must share one degree")
    e = degs.pop() if degs else f1.degree
    out_deg = p.degree * e
    if not p.terms:
        return Poly.zero(out_deg)
    c1, c2, c3 = _PowerCache(f1), _PowerCache(f2), _PowerCache(f3)
    by_a = {}
    for (a, b, c), v in p.terms.items():
        by_a.setdefault(a, []).append((b, c, v))
    pair_cache = {}
    res = {}
    for a, items in by_a.items():
        inner = {}
        for b, c, v in items:
            key = (b, c)
            pc = pair_cache.get(key)
            if pc is None:
                pc = c2[b] * c3[c]
                pair_cache[key] = pc
            for k, w in pc.terms.items():
                inner[k] = inner.get(k, 0) + v * w
        inner_poly = Poly._raw(_clean(inner), (p.degree - a) * e)
        prod = c1[a] * inner_poly if a else inner_poly
        for k, w in prod.terms.items():
            res[k] = res.get(k, 0) + w
    return Poly._raw(_clean(res), out_deg)


# -- univariate helpers (dense lists, index = exponent) ---------------------


def _utrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _uadd(a, b):
    n = max(len(a), len(b))
    return _utrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _usub(a, b):
    n = max(len(a), len(b))
    return _utrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _umul(a, b):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _utrim([_q(c) for c in res])


def _uscale(a, c):
    return _utrim([_q(x * c) for x in a])


def _udivmod(a, b):
    """Quotient and remainder over Q."""
    if not b:
        raise ZeroDivisionError
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _utrim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = _div(c, lb)
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return _utrim([_q(c) for c in q]), _utrim([_q(c) for c in a[:db]])


def _umonic(a):
    if not a:
        return a
    return _uscale(a, _div(1, a[-1]))


def _ugcd(a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    return _umonic(a)


def _uderiv(a):
    return _utrim([_q(i * a[i]) for i in range(1, len(a))])


def _ueval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return _q(acc)


def _uprimitive_int(a):
    """Integer primitive associate of a rational univariate polynomial."""
    den = 1
    for c in a:
        if type(c) is Fraction:
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        return []
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def squarefree_part(a):
    a = _utrim(list(a))
    if len(a) <= 2:
        return _umonic(a)
    g = _ugcd(a, _uderiv(a))
    q, r = _udivmod(a, g)
    return _umonic(q)


def _small_factor(n):
    # Pollard rho with Brent's cycle detection; n is odd composite
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"could not factor {n}")


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n):
    """Prime factorization of a positive integer as {prime: exponent}."""
    n = abs(n)
    out = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 17
    while n > 1 and p * p <= n and p < 10000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _small_factor(m)
        stack.extend([f, m // f])
    return out


def divisors(n):
    n = abs(n)
    if n == 0:
        return []
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def rational_roots(coeffs):
    """Distinct rational roots of a univariate polynomial (low degree first).

    Uses the rational root theorem on the integral primitive squarefree
    part; the divisor candidates are filtered with the values at +1 and -1
    before full evaluation.
    """
    a = _utrim(list(_q(c) for c in coeffs))
    if not a:
        raise ValueError("the zero polynomial has every number as a root")
    roots = []
    if not a[0]:
        roots.append(0)
        while a and not a[0]:
            a = a[1:]
    if len(a) <= 1:
        return roots
    a = squarefree_part(a)
    ints = _uprimitive_int(a)
    if len(ints) == 2:
        return sorted(roots + [_div(-ints[0], ints[1])])
    lead, trail = ints[-1], ints[0]
    f1 = sum(ints)
    fm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(ints))
    if f1 == 0:
        roots.append(1)
    if fm1 == 0:
        roots.append(-1)
    for p in divisors(trail):
        for q in divisors(lead):
            if math.gcd(p, q) != 1:
                continue
            for s in (p, -p):
                if q == 1 and s in (1, -1):
                    continue
                if f1 and (q - s) and f1 % (q - s):
                    continue
                if fm1 and (q + s) and fm1 % (q + s):
                    continue
                # homogeneous Horner for sum c_i s^i q^(n-i)
                val = 0
                qp = 1
                for c in reversed(ints):
                    val = val * s + c * qp
                    qp *= q
                if val == 0:
                    roots.append(_div(s, q))
    return sorted(set(roots))


def count_rational_factor_degree(coeffs):
    """(rational roots, degree of the squarefree part left after removing them)."""
    a = _utrim(list(_q(c) for c in coeffs))
    sq = squarefree_part(a)
    roots = rational_roots(sq)
    rest = list(sq)
    for r in roots:
        rest, rem = _udivmod(rest, [_q(-r), 1])
    return roots, len(rest) - 1


# -- bivariate helpers -----------------------------------------------------
# A bivariate polynomial in (s, t) is a dict {(i, j): coeff} meaning
# coeff * s**i * t**j.


def dehomogenize(p, var):
    """Set variable ``var`` to 1; returns a bivariate dict in the other two."""
    keep = [i for i in range(3) if i != var]
    out = {}
    for k, v in p.terms.items():
        kk = (k[keep[0]], k[keep[1]])
        out[kk] = out.get(kk, 0) + v
    return _clean(out)


def homogenize(f, var, degree):
    keep = [i for i in range(3) if i != var]
    out = {}
    for (i, j), v in f.items():
        k = [0, 0, 0]
        k[keep[0]] = i
        k[keep[1]] = j
        k[var] = degree - i - j
        out[tuple(k)] = v
    return Poly._raw(_clean(out), degree)


def _bi_total_degree(f):
    return max((i + j for i, j in f), default=0)


def _bi_to_rows(f, main):
    """Rows indexed by the power of the main variable, entries univariate."""
    rows = {}
    for (i, j), v in f.items():
        e, o = (i, j) if main == 0 else (j, i)
        rows.setdefault(e, {})
        rows[e][o] = rows[e].get(o, 0) + v
    n = max(rows) + 1 if rows else 0
    out = []
    for e in range(n):
        r = rows.get(e, {})
        m = max(r) + 1 if r else 0
        out.append(_utrim([r.get(o, 0) for o in range(m)]))
    return out


def _rows_to_bi(rows, main):
    out = {}
    for e, r in enumerate(rows):
        for o, v in enumerate(r):
            if v:
                out[(e, o) if main == 0 else (o, e)] = v
    return out


def _rows_trim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _rows_content(rows):
    g = []
    for r in rows:
        if r:
            g = _ugcd(g, r) if g else _umonic(r)
            if len(g) == 1:
                break
    return g


def _rows_divide_content(rows, c):
    out = []
    for r in rows:
        if r:
            q, rem = _udivmod(r, c)
            out.append(q)
        else:
            out.append([])
    return out


def _rows_prem(a, b):
    """Pseudo-remainder of a by b, both rows in the main variable."""
    a = [list(r) for r in a]
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        shift = da - db
        a = [_umul(r, lb) for r in a]
        for j in range(db + 1):
            a[shift + j] = _usub(a[shift + j], _umul(la, b[j]))
        a.pop()
        _rows_trim(a)
    return a


def _bivariate_gcd(f, g, main):
    fr = _rows_trim(_bi_to_rows(f, main))
    gr = _rows_trim(_bi_to_rows(g, main))
    if not fr:
        return g
    if not gr:
        return f
    cf = _rows_content(fr)
    cg = _rows_content(gr)
    c = _ugcd(cf, cg)
    fr = _rows_divide_content(fr, cf)
    gr = _rows_divide_content(gr, cg)
    if len(fr) < len(gr):
        fr, gr = gr, fr
    while gr:
        if len(gr) == 1:
            fr = [[1]]
            break
        r = _rows_trim(_rows_prem(fr, gr))
        if r:
            cr = _rows_content(r)
            r = _rows_divide_content(r, cr)
        fr, gr = gr, r
    fr = [_umul(row, c) for row in fr]
    return _rows_to_bi(fr, main)


def _monomial_part_removed(p):
    m = p.min_exponents()
    if m == (0, 0, 0):
        return p, m
    return exact_divide(p, Poly.monomial(*m)), m


def gcd(p, q):
    """Greatest common divisor, normalized to leading coefficient 1.

    gcd(0, q) is q normalized; gcd(0, 0) is the zero polynomial.
    """
    if not p.terms:
        return q.monic()
    if not q.terms:
        return p.monic()
    pp, mp = _monomial_part_removed(p)
    qq, mq = _monomial_part_removed(q)
    mono = Poly.monomial(*(min(a, b) for a, b in zip(mp, mq)))
    if pp.degree == 0 or qq.degree == 0:
        return mono
    if len(pp.terms) == 1 or len(qq.terms) == 1:
        # a monomial-free factor cannot divide a monomial
        return mono
    mx = [max(a, b) for a, b in zip(pp.max_exponents(), qq.max_exponents())]
    var = min(range(3), key=lambda i: (mx[i], i))
    f = dehomogenize(pp, var)
    g = dehomogenize(qq, var)
    keep = [i for i in range(3) if i != var]
    main = 0 if mx[keep[0]] <= mx[keep[1]] else 1
    h = _bivariate_gcd(f, g, main)
    hd = _bi_total_degree(h)
    hp = homogenize(h, var, hd)
    return (hp * mono).monic()


def gcd_many(polys):
    g = Poly.zero(0)
    for p in polys:
        g = gcd(g, p)
        if g.terms and g.degree == 0:
            break
    return g


def coprime(p, q):
    g = gcd(p, q)
    return g.degree == 0 and bool(g.terms)


# -- elimination -------------------------------------------------------------


def _det(matrix):
    """Exact determinant by Bareiss fraction-free elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return _q(sign * m[n - 1][n - 1])


def univariate_resultant(a, b, da=None, db=None):
    """Sylvester resultant with formal degrees da, db (zero leading entries allowed)."""
    da = len(a) - 1 if da is None else da
    db = len(b) - 1 if db is None else db
    a = list(a) + [0] * (da + 1 - len(a))
    b = list(b) + [0] * (db + 1 - len(b))
    n = da + db
    if n == 0:
        return 1
    rows = []
    for i in range(db):
        row = [0] * n
        for j in range(da + 1):
            row[i + j] = a[da - j]
        rows.append(row)
    for i in range(da):
        row = [0] * n
        for j in range(db + 1):
            row[i + j] = b[db - j]
        rows.append(row)
    return _det(rows)


def bivariate_resultant(f, g):
    """Res_t(f, g) as a univariate polynomial in s (dense list).

    Computed by evaluation at integer points and Newton interpolation; the
    Sylvester matrix uses the formal t-degrees so that evaluation commutes
    with taking the resultant.
    """
    fr = _bi_to_rows(f, 1)
    gr = _bi_to_rows(g, 1)
    df, dg = len(fr) - 1, len(gr) - 1
    bound = _bi_total_degree(f) * _bi_total_degree(g)
    xs, ys = [], []
    for x in range(bound + 1):
        a = [_ueval(r, x) for r in fr]
        b = [_ueval(r, x) for r in gr]
        xs.append(x)
        ys.append(univariate_resultant(a, b, df, dg))
    # Newton divided differences
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = _div(coef[i] - coef[i - 1], xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        poly = _uadd(_umul(poly, [-xs[i], 1]), [coef[i]])
    return _utrim([_q(c) for c in poly])


def bivariate_substitute_first(f, s0):
    """f(s0, t) as a univariate list in t."""
    out = {}
    for (i, j), v in f.items():
        out[j] = out.get(j, 0) + v * _q(s0) ** i
    m = max(out) + 1 if out else 0
    return _utrim([_q(out.get(j, 0)) for j in range(m)])
