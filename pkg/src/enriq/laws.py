"""Executable law suite for quantales and Q-matrices.

Finite instances are checked exhaustively.  The half-line instances are checked
on seeded random samples, and the Lawvere residuals additionally against their
closed form.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Violation
from .qmatrix import QMatrix, compose, diag, m_join, m_leq, m_rext, m_rlift
from .quantale import INF, Quantale

# Carriers up to this size also get joins and meets of every subset.
ALL_SUBSETS_UP_TO = 8
MAX_RECORDED = 20


@dataclass
class LawReport:
    quantale: Quantale
    checked: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    failure_count: int = 0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def expect(self, law: str, holds: bool, witness: tuple, lhs=None, rhs=None) -> None:
        self.checked[law] += 1
        if not holds:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED:
                self.failures.append(Violation(law, witness, lhs, rhs))


def sample_element(q: Quantale, rng: random.Random):
    """A random carrier element; half-line samples hit 0 and ∞ often."""
    if q.is_finite:
        return rng.choice(q.carrier())
    r = rng.random()
    if r < 0.1:
        return INF
    if r < 0.2:
        return Fraction(0)
    return Fraction(rng.randint(0, 40), rng.randint(1, 8))


def _subsets(xs: tuple, everything: bool):
    if everything:
        for k in range(len(xs) + 1):
            yield from itertools.combinations(xs, k)
    else:
        yield ()
        yield from itertools.combinations(xs, 1)
        yield from itertools.combinations(xs, 2)
        yield xs


def _check_bounds(rep: LawReport, q: Quantale, S: tuple, universe) -> None:
    j, m = q.join(S), q.meet(S)
    rep.expect("join upper bound", all(q.leq(s, j) for s in S), S, j)
    rep.expect("meet lower bound", all(q.leq(m, s) for s in S), S, m)
    for u in universe:
        if all(q.leq(s, u) for s in S):
            rep.expect("join least", q.leq(j, u), S + (u,), j, u)
        if all(q.leq(u, s) for s in S):
            rep.expect("meet greatest", q.leq(u, m), S + (u,), u, m)


def _pointwise(rep: LawReport, q: Quantale, x, y, z) -> None:
    leq, mul = q.leq, q.mul
    rep.expect("reflexive", leq(x, x), (x,))
    if leq(x, y) and leq(y, x):
        rep.expect("antisymmetric", x == y, (x, y))
    if leq(x, y) and leq(y, z):
        rep.expect("transitive", leq(x, z), (x, y, z))
    rep.expect("associative", mul(mul(z, y), x) == mul(z, mul(y, x)), (z, y, x),
               mul(mul(z, y), x), mul(z, mul(y, x)))
    rep.expect("left unit", mul(q.unit, x) == x, (x,), mul(q.unit, x), x)
    rep.expect("right unit", mul(x, q.unit) == x, (x,), mul(x, q.unit), x)
    lhs, rhs = mul(q.join((x, y)), z), q.join((mul(x, z), mul(y, z)))
    rep.expect("left distributive", lhs == rhs, (x, y, z), lhs, rhs)
    lhs, rhs = mul(z, q.join((x, y))), q.join((mul(z, x), mul(z, y)))
    rep.expect("right distributive", lhs == rhs, (z, x, y), lhs, rhs)
    rep.expect("bottom absorbs left", mul(q.bottom, x) == q.bottom, (x,), mul(q.bottom, x), q.bottom)
    rep.expect("bottom absorbs right", mul(x, q.bottom) == q.bottom, (x,), mul(x, q.bottom), q.bottom)
    # y ⪯ z↙x  ⟺  y∘x ⪯ z  ⟺  x ⪯ y↘z
    a, b, c = leq(y, q.rext(z, x)), leq(mul(y, x), z), leq(x, q.rlift(y, z))
    rep.expect("residuation", a == b == c, (x, y, z), (a, b, c))


def lawvere_closed_form(z, x):
    """Truncated subtraction with both infinite cases, written out independently."""
    if x == INF:
        return Fraction(0)
    if z == INF:
        return INF
    return max(z - x, Fraction(0))


def check_quantale_laws(q: Quantale, seed: int = 0, samples: int = 10_000) -> LawReport:
    """Order, lattice, monoid, distributivity and residuation laws."""
    rep = LawReport(q)
    if q.is_finite:
        carrier = q.carrier()
        for x, y, z in itertools.product(carrier, repeat=3):
            _pointwise(rep, q, x, y, z)
        everything = len(carrier) <= ALL_SUBSETS_UP_TO
        for S in _subsets(carrier, everything):
            _check_bounds(rep, q, S, carrier)
            for x in carrier:
                lhs, rhs = q.mul(q.join(S), x), q.join(q.mul(s, x) for s in S)
                rep.expect("left distributive (sets)", lhs == rhs, S + (x,), lhs, rhs)
                lhs, rhs = q.mul(x, q.join(S)), q.join(q.mul(x, s) for s in S)
                rep.expect("right distributive (sets)", lhs == rhs, (x,) + S, lhs, rhs)
        return rep
    rng = random.Random(seed)
    for _ in range(samples):
        x, y, z = (sample_element(q, rng) for _ in range(3))
        _pointwise(rep, q, x, y, z)
        S = (x, y, z)
        _check_bounds(rep, q, S, (sample_element(q, rng), x, y, z, Fraction(0), INF))
        _check_bounds(rep, q, (), (x,))
        if q.kind == "lawvere_rat":
            want = lawvere_closed_form(z, x)
            rep.expect("closed form rext", q.rext(z, x) == want, (z, x), q.rext(z, x), want)
            rep.expect("closed form rlift", q.rlift(x, z) == want, (x, z), q.rlift(x, z), want)
    if q.kind == "lawvere_rat":
        for z, x in lawvere_table():
            want = lawvere_closed_form(z, x)
            rep.expect("closed form table", q.rext(z, x) == want, (z, x), q.rext(z, x), want)
    return rep


def lawvere_table() -> list[tuple]:
    """Fixed residual cases: both orders of finite arguments, and each infinite case."""
    F = Fraction
    return [
        (F(3), F(5)), (F(5), F(3)), (F(5), F(5)), (F(0), F(0)), (F(7, 2), F(1, 3)),
        (F(4), INF), (INF, INF), (F(0), INF), (INF, F(2)), (INF, F(0)),
    ]


# --- matrices ---------------------------------------------------------------------


def random_matrix(q: Quantale, rows: tuple, cols: tuple, rng: random.Random) -> QMatrix:
    return QMatrix(q, rows, cols, tuple(tuple(sample_element(q, rng) for _ in cols) for _ in rows))


def check_matrix_laws(q: Quantale, seed: int = 0, trials: int = 200) -> LawReport:
    """Adjointness chain, associativity, units and join preservation on random small matrices."""
    rep = LawReport(q)
    rng = random.Random(seed)
    shapes = [(), ("a",), ("a", "b"), ("a", "b", "c")]
    for t in range(trials):
        A, B, C, D = (rng.choice(shapes[1:]) if t % 7 else rng.choice(shapes) for _ in range(4))
        X, X2 = random_matrix(q, A, B, rng), random_matrix(q, A, B, rng)
        Y, Y2 = random_matrix(q, B, C, rng), random_matrix(q, B, C, rng)
        Z = random_matrix(q, A, C, rng)
        W = random_matrix(q, C, D, rng)
        a, b, c = m_leq(Y, m_rext(Z, X)), m_leq(compose(Y, X), Z), m_leq(X, m_rlift(Y, Z))
        rep.expect("matrix residuation", a == b == c, (t,), (a, b, c))
        # residuals are attained: both bounds compose back under Z
        rep.expect("matrix rext attained", m_leq(compose(m_rext(Z, X), X), Z), (t,))
        rep.expect("matrix rlift attained", m_leq(compose(Y, m_rlift(Y, Z)), Z), (t,))
        rep.expect("matrix associative", compose(W, compose(Y, X)) == compose(compose(W, Y), X), (t,))
        rep.expect("matrix left unit", compose(diag(B, q), X) == X, (t,))
        rep.expect("matrix right unit", compose(X, diag(A, q)) == X, (t,))
        rep.expect("matrix rext diag", m_rext(Z, diag(A, q)) == Z, (t,))
        rep.expect("matrix rlift diag", m_rlift(diag(C, q), Z) == Z, (t,))
        rep.expect("matrix join left", compose(m_join(Y, Y2), X) == m_join(compose(Y, X), compose(Y2, X)), (t,))
        rep.expect("matrix join right", compose(Y, m_join(X, X2)) == m_join(compose(Y, X), compose(Y, X2)), (t,))
    return rep


def lawbook(q: Quantale, seed: int = 0, samples: int = 10_000, trials: int = 200) -> list[LawReport]:
    return [check_quantale_laws(q, seed, samples), check_matrix_laws(q, seed, trials)]
