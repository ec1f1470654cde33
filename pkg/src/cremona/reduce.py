"""Reduction of words in C, I, P to linear or quadratic words modulo R.

The word is written C^a W_k ... W_1 with quadratic words W_i.  Λ_i is the
image of the net of lines under W_i ... W_1, i.e. the net of the map
(W_i ... W_1)^-1, and d_i its degree.  Each step lowers the pair (D, n)
with D = max d_i and n the last index reaching D, either by merging two
factors or by inserting Q Q^-1 for a suitable quadratic word Q and
merging on both sides.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import DegreeCapExceeded, InternalCheckError, InvalidConfiguration
from .geometry import multiplicity
from .maps import IDENTITY, compose
from .words import (
    LinearWord,
    as_word,
    eval_word,
    factors_word,
    find_quadratic_word,
    multiply_pair,
    product_degree,
    to_quadratic_words,
)

DEFAULT_DEGREE_CAP = 2**10
ENV_DEGREE_CAP = "CREMONA_DEGREE_CAP"


def default_degree_cap():
    raw = os.environ.get(ENV_DEGREE_CAP)
    if raw:
        cap = int(raw)
        if cap < 2:
            raise ValueError(f"{ENV_DEGREE_CAP} must be at least 2")
        return cap
    return DEFAULT_DEGREE_CAP


class ReducerState:
    """Factors W_1 .. W_k (stored in that order) with their systems Λ_i."""

    def __init__(self, prefix, factors, degree_cap):
        self.prefix = prefix % 3
        self.W = list(factors)
        self.cap = degree_cap
        self.G = [IDENTITY]
        self.refresh(0)

    def refresh(self, start):
        """Recompute Λ_i for i > start."""
        del self.G[start + 1 :]
        for w in self.W[start:]:
            inv = w.inverse()
            g = compose(self.G[-1], inv.map, contracted=inv.lines)
            if g.degree > self.cap:
                raise DegreeCapExceeded(f"intermediate degree {g.degree} exceeds the cap {self.cap}")
            self.G.append(g)

    @property
    def k(self):
        return len(self.W)

    def d(self, i):
        return self.G[i].degree

    def degrees(self):
        return [self.d(i) for i in range(1, self.k + 1)]

    def peak(self):
        if not self.W:
            return (1, 0)
        ds = self.degrees()
        D = max(ds)
        n = max(i for i, v in enumerate(ds, 1) if v == D)
        return (D, n)

    def m(self, i, p):
        return multiplicity(self.G[i], p)

    def written(self):
        """Factors from left to right, as they appear in the word."""
        return [str(w) for w in reversed(self.W)]

    def word(self):
        return factors_word(self.prefix, list(reversed(self.W)))

    def snapshot(self):
        D, n = self.peak()
        return {"prefix": self.prefix, "factors": self.written(), "degrees": self.degrees(), "D": D, "n": n}

    # -- rewriting helpers; indices are 1-based as in W_1 .. W_k

    def replace(self, i, j, new):
        """Replace W_i .. W_j (i <= j) by ``new`` (a list W'_i, W'_(i+1), ...)."""
        linear = 0
        items = []
        for w in new:
            if isinstance(w, LinearWord):
                linear += w.a
            else:
                if linear:
                    w = w.right(linear)
                    linear = 0
                items.append(w)
        self.W[i - 1 : j] = items
        if linear % 3:
            # a linear word left at the top of the block moves to the factor above
            pos = i - 1 + len(items)
            if pos < len(self.W):
                self.W[pos] = self.W[pos].right(linear)
            else:
                self.prefix = (self.prefix + linear) % 3
        self.refresh(min(i - 1, len(self.W)))


@dataclass
class Reduction:
    word: object
    prefix: int
    factors: list
    degree: int
    flagged: bool
    trace: list = field(default_factory=list)

    @property
    def is_empty(self):
        return len(self.word) == 0

    def to_json(self):
        return {
            "word": str(self.word),
            "prefix": self.prefix,
            "factors": [str(f) for f in self.factors],
            "degree": self.degree,
            "flagged": self.flagged,
            "trace": self.trace,
        }


def _ordered(points, m):
    return sorted(points, key=lambda p: (-m(p), p.sort_key()))


def _lift(points):
    """Replace infinitely near points whose carrier is absent by the carrier."""
    pts = list(points)
    changed = True
    while changed:
        changed = False
        for idx, p in enumerate(pts):
            if p.tower and p.parent() not in pts:
                pts[idx] = p.parent()
                changed = True
    return pts


def _candidates(S, T, m, D, r):
    """Candidate triples in the order fixed by the case analysis."""
    if r == 3:
        (u,) = S & T
        s1, s2 = _ordered(S - {u}, m)
        t1, t2 = _ordered(T - {u}, m)
        if m(u) + m(s1) + m(t2) > D:
            return [(u, s1, t1), (u, s1, t2)]
        if m(u) + m(t1) + m(s2) > D:
            return [(u, t1, s1), (u, t1, s2)]
        raise InternalCheckError(
            "neither inequality holds for r = 3",
            {"D": D, "m": {str(p): m(p) for p in S | T}},
        )
    s1, s2, s3 = _ordered(S, m)
    t1, t2, t3 = _ordered(T, m)
    if m(s1) + m(t2) + m(t3) > D:
        return [(s1, t2, t3), (s1, t1, t3), (s1, t1, t2)]
    if m(t1) + m(s2) + m(s3) > D:
        return [(t1, s2, s3), (t1, s1, s3), (t1, s1, s2)]
    raise InternalCheckError(
        "neither inequality holds for r = 4",
        {"D": D, "m": {str(p): m(p) for p in S | T}},
    )


def choose_q(upper, lower, m, D):
    """A quadratic word Q with Q(Λ) of degree < D splitting upper·lower.

    ``lower`` maps the previous system onto Λ (multiplicities m, degree D)
    and ``upper`` maps Λ onward.  Returns Q and the candidate triple.
    """
    S = upper.base_points
    T = lower.inverse().base_points
    r = 4 - len(S & T)
    for triple in _candidates(S, T, m, D, r):
        if sum(m(p) for p in triple) <= D:
            continue
        pts = _lift(triple)
        try:
            q = find_quadratic_word(*pts)
        except InvalidConfiguration:
            continue
        # Q must lower Λ and split the pair into the expected degrees
        if 2 * D - sum(m(p) for p in q.base_points) >= D:
            continue
        degs = sorted((product_degree(q, lower), product_degree(upper, q.inverse())))
        if degs == ([2, 2] if r == 3 else [2, 3]):
            return q, pts
    raise InternalCheckError(
        "no quadratic word satisfies the splitting conditions",
        {"upper": str(upper), "lower": str(lower), "D": D, "r": r},
    )


def _split3(upper, lower, m, D):
    """upper·lower of degree 3 around a system of degree D as σ2·σ1."""
    q, pts = choose_q(upper, lower, m, D)
    s1 = multiply_pair(q, lower)
    s2 = multiply_pair(upper, q.inverse())
    return q, pts, s2, s1


def reduce(w, degree_cap=None, trace=False, merge=True):
    """Reduce a word to a linear or quadratic word modulo R.

    When the value of w has degree > 2 the loop stops at the first peak
    reached by the last factor and the result is flagged.  With
    ``merge`` false the initial greedy packing is skipped and every
    simplification goes through the (D, n) loop.
    """
    prefix, factors = to_quadratic_words(as_word(w), merge=merge)
    return reduce_factors(prefix, factors, degree_cap=degree_cap, trace=trace)


def reduce_factors(prefix, factors, degree_cap=None, trace=False):
    """Run the reduction loop on C^prefix W_k ... W_1 (factors written left to right)."""
    cap = default_degree_cap() if degree_cap is None else int(degree_cap)
    if cap < 2:
        raise ValueError("degree cap must be at least 2")
    st = ReducerState(prefix, list(reversed(factors)), cap)
    steps = []
    flagged = False
    step = 0

    def log(D, n, r, action):
        if trace:
            steps.append({"step": step, "D": D, "n": n, "r": r, "action": action, "factors": st.written()})

    log(*st.peak(), None, "start")
    while st.k > 1:
        step += 1
        before = st.peak()
        D, n = before
        if D <= 2:
            prod = multiply_pair(st.W[1], st.W[0])
            st.replace(1, 2, [prod])
            log(D, n, None, f"merge W2 W1 -> {prod}")
            if not st.peak() < before:  # pragma: no cover - guaranteed by the merge
                raise InternalCheckError("(D, n) did not decrease", st.snapshot())
            continue
        if n == st.k:
            flagged = True
            log(D, n, None, "stop: the value has degree > 2")
            break
        upper, lower = st.W[n], st.W[n - 1]
        r = product_degree(upper, lower)
        if r <= 2:
            prod = multiply_pair(upper, lower)
            st.replace(n, n + 1, [prod])
            action = f"merge W{n + 1} W{n} -> {prod}"
        else:
            m = lambda p: st.m(n, p)  # noqa: E731
            if r == 3:
                q, pts, s2, s1 = _split3(upper, lower, m, D)
                st.replace(n, n + 1, [s1, s2])
                action = f"split via Q = {q} on {[str(p) for p in pts]}: {s2} * {s1}"
            else:
                q, pts = choose_q(upper, lower, m, D)
                if product_degree(q, lower) == 2:
                    s0 = multiply_pair(q, lower)
                    _, _, s2, s1 = _split3(upper, q.inverse(), m, D)
                    st.replace(n, n + 1, [s0, s1, s2])
                    action = f"split via Q = {q}: ({s2} * {s1}) * {s0}"
                else:
                    s0 = multiply_pair(upper, q.inverse())
                    _, _, s2, s1 = _split3(q, lower, m, D)
                    st.replace(n, n + 1, [s1, s2, s0])
                    action = f"split via Q = {q}: {s0} * ({s2} * {s1})"
        after = st.peak()
        log(D, n, r, action)
        if not after < before:
            raise InternalCheckError("(D, n) did not decrease", {"before": list(before), "after": list(after), **st.snapshot()})
    result = st.word()
    degree = st.d(st.k) if st.k else 1
    out = Reduction(result, st.prefix, st.written(), degree, flagged, steps)
    return out


def is_identity(w, degree_cap=None):
    """Decide whether w is trivial in H, cross-checked against evaluation."""
    w = as_word(w)
    red = reduce(w, degree_cap=degree_cap)
    by_reduction = red.is_empty
    by_eval = eval_word(w) == IDENTITY
    if by_reduction != by_eval:
        raise InternalCheckError(
            "reduction and evaluation disagree",
            {"word": str(w), "reduced": str(red.word), "identity_by_eval": by_eval},
        )
    return by_reduction
