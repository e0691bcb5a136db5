from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest

from enriq.analysis import is_complete
from enriq.errors import PreconditionError, ResourceLimitError, UnsupportedError, UsageError
from enriq.isbell import bottom_presheaf, coyoneda, enumerate_presheaves, yoneda
from enriq.macneille import (
    MNObject,
    PresheafPair,
    embed,
    in_U,
    make_pair,
    mn_closure,
    mn_construct,
    mn_hom,
    mn_maximality_check,
    mn_member,
)
from enriq.qmatrix import m_leq
from enriq.qcategory import QCategory, comparison_lower, is_fully_faithful, is_skeletal
from enriq.quantale import INF, bool2, chain_trop
from helpers import all_posets, dedekind_cuts, is_lattice, metric, poset, random_category, small_families

B = bool2()
TWO_POINTS = metric("ab", {("a", "b"): F(1), ("b", "a"): F(1)})


def all_pairs(C):
    q = C.quantale
    n = len(C)
    for vec in itertools.product(q.carrier(), repeat=2 * n):
        yield make_pair(C, vec[:n], vec[n:])


def test_representable_pairs_in_U():
    for C in small_families():
        for c in C.objects:
            assert in_U(C, make_pair(C, yoneda(C, c).vector, coyoneda(C, c).vector))
            assert mn_member(C, make_pair(C, yoneda(C, c).vector, coyoneda(C, c).vector))


def test_lawvere_pair_outside_U():
    C = TWO_POINTS
    pair = make_pair(C, [0, INF], [INF, 0])
    assert not in_U(C, pair)
    assert not mn_member(C, pair)
    with pytest.raises(PreconditionError):
        mn_closure(C, pair)


def test_bottom_X_always_in_U():
    for C in small_families():
        q = C.quantale
        bottom = [q.bottom] * len(C)
        for ys in itertools.product(q.carrier(), repeat=len(C)):
            assert in_U(C, make_pair(C, bottom, ys))


def test_lawvere_member_pair_against_grid():
    C = TWO_POINTS
    pair = make_pair(C, [F(3, 10), F(1, 2)], [F(1, 2), F(7, 10)])
    # grid oracle: no pair in U_C with entries k/10 dominates it strictly
    cur = [F(3, 10), F(1, 2), F(1, 2), F(7, 10)]
    grid = [F(k, 10) for k in range(11)]
    dominating = []
    for vec in itertools.product(*[[g for g in grid if g <= v] for v in cur]):
        if list(vec) != cur and in_U(C, make_pair(C, vec[:2], vec[2:])):
            dominating.append(vec)
    assert dominating == []
    assert mn_member(C, pair)
    assert mn_closure(C, pair).X == pair.X


def test_lawvere_non_member_is_strictly_improved():
    C = TWO_POINTS
    pair = make_pair(C, [F(1, 2), F(1, 2)], [F(3, 4), F(3, 4)])
    assert in_U(C, pair) and not mn_member(C, pair)
    o = mn_closure(C, pair)
    assert mn_member(C, o)
    assert o.X != pair.X or o.Y != pair.Y


def test_maximality_agrees_with_membership_on_chain():
    C = poset("ab", {("a", "b")})
    pairs = list(all_pairs(C))
    assert len(pairs) == 16
    for pair in pairs:
        assert bool(mn_maximality_check(C, pair)) == mn_member(C, pair)


def test_maximality_agrees_with_membership_everywhere():
    for C in small_families():
        if len(C) > 2:
            continue
        for pair in all_pairs(C):
            m = mn_maximality_check(C, pair)
            assert m.maximal == mn_member(C, pair)
            if not m.maximal and in_U(C, pair):
                w = m.witness
                assert in_U(C, w)
                assert w != PresheafPair(pair.X, pair.Y)


def test_closure_properties():
    for C in small_families():
        for pair in all_pairs(C):
            if not in_U(C, pair):
                continue
            o = mn_closure(C, pair)
            assert mn_member(C, o)
            assert m_leq(pair.X, o.X) and m_leq(pair.Y, o.Y)
            assert mn_closure(C, o) == o


def test_closure_of_representable_with_bottom_row():
    for C in small_families():
        q = C.quantale
        for c in C.objects:
            o = mn_closure(C, make_pair(C, yoneda(C, c).vector, [q.bottom] * len(C)))
            assert o == embed(C, c)


def test_antichain_gives_four_objects():
    mn = mn_construct(poset("ab", set()))
    assert len(mn.points) == 4
    assert is_skeletal(mn.category)


def test_empty_category_has_one_point():
    mn = mn_construct(poset((), set()))
    assert len(mn.points) == 1
    assert mn.embedding == {}


def test_lattices_are_their_own_completion():
    for n in range(1, 5):
        for pts, lt in all_posets(n):
            le = lambda a, b: a == b or (a, b) in lt
            if not is_lattice(pts, le):
                continue
            C = poset(pts, lt)
            mn = mn_construct(C)
            assert sorted(mn.embedding.values()) == list(range(len(mn.points)))


def test_completion_matches_dedekind_cuts():
    for n in range(4):
        for pts, lt in all_posets(n):
            le = lambda a, b: a == b or (a, b) in lt
            C = poset(pts, lt)
            mn = mn_construct(C)
            got = [(frozenset(c for c in pts if p.P[c]), frozenset(c for c in pts if p.R[c])) for p in mn.points]
            want = dedekind_cuts(pts, le)
            assert len(got) == len(want)
            assert set(got) == set(want)


def test_two_chain_hom_is_order():
    C = poset("ab", {("a", "b")})
    mn = mn_construct(C)
    M = mn.category
    assert len(M) == 2
    a, b = (mn.point_id(mn.embedding[c]) for c in "ab")
    assert M(a, b) is True and M(b, a) is False


def test_construction_invariants():
    for C in small_families():
        mn = mn_construct(C)
        M = mn.category
        assert is_skeletal(M)
        assert is_complete(M).complete
        i = mn.embedding_functor()
        assert is_fully_faithful(i)
        low = comparison_lower(i)
        for pid, p in zip(M.objects, mn.points):
            assert low[pid] == p.P.values
        for c, c2 in itertools.product(C.objects, repeat=2):
            assert mn_hom(mn, embed(C, c), embed(C, c2)) == C(c, c2)
        for p in mn.points:
            assert C.quantale.leq(C.quantale.unit, mn_hom(mn, p, p))
        if is_skeletal(C) and is_complete(C).complete:
            assert sorted(mn.embedding.values()) == list(range(len(M)))


def test_parallel_construction_is_identical():
    rng = random.Random(5)
    for _ in range(3):
        C = random_category(chain_trop(2), 3, rng)
        a, b = mn_construct(C, jobs=1), mn_construct(C, jobs=2)
        assert a.points == b.points
        assert a.category == b.category
        assert a.embedding == b.embedding


def iso_by_search(M, N):
    if len(M) != len(N):
        return False
    for perm in itertools.permutations(N.objects):
        f = dict(zip(M.objects, perm))
        if all(M(a, b) == N(f[a], f[b]) for a in M.objects for b in M.objects):
            return True
    return False


def test_renaming_gives_isomorphic_completion():
    rng = random.Random(9)
    for _ in range(10):
        C = random_category(rng.choice([bool2(), chain_trop(2)]), 3, rng)
        perm = list(C.objects)
        rng.shuffle(perm)
        names = {c: f"z{c}" for c in C.objects}
        renamed = QCategory.from_rows(
            C.quantale, [names[c] for c in perm], [[C(a, b) for b in perm] for a in perm]
        )
        assert iso_by_search(mn_construct(C).category, mn_construct(renamed).category)


def test_limits_and_scope():
    C = random_category(chain_trop(4), 3, random.Random(1))
    with pytest.raises(ResourceLimitError):
        mn_construct(C, cap=10)
    with pytest.raises(UnsupportedError):
        mn_construct(TWO_POINTS)
    with pytest.raises(UnsupportedError):
        mn_maximality_check(TWO_POINTS, make_pair(TWO_POINTS, [1, 1], [1, 1]))


def test_foreign_point():
    mn = mn_construct(poset("ab", set()))
    other = poset("ab", {("a", "b")})
    with pytest.raises(UsageError):
        mn_hom(mn, embed(other, "a"), embed(other, "a"))


def test_non_fixed_pair_rejected():
    C = poset("ab", set())
    with pytest.raises(PreconditionError):
        MNObject(bottom_presheaf(C), coyoneda(C, "a"))
    assert len(list(enumerate_presheaves(C))) == 4
