from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from enriq.errors import AxiomViolation, UsageError
from enriq.isbell import presheaf_category, yoneda, yoneda_functor
from enriq.qcategory import (
    QCategory,
    QFunctor,
    category_violation,
    comparison_lower,
    compose_functors,
    identity_functor,
    is_codense,
    is_dense,
    is_fully_faithful,
    is_isomorphic_pair,
    is_skeletal,
    iso_classes,
    skeletal_quotient,
    underlying_preorder,
    validate_category,
    validate_functor,
)
from enriq.qmatrix import QMatrix, diag
from enriq.quantale import bool2, chain_trop, lawvere_rat
from helpers import all_posets, close_category, metric, poset, random_category, small_families

B = bool2()


def test_triangle_violation_reports_witness():
    with pytest.raises(AxiomViolation) as err:
        validate_category(lawvere_rat(), "abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    v = err.value.violation
    assert v.axiom == "CA2"
    assert v.witness == ("a", "b", "c")
    assert (v.lhs, v.rhs) == (2, 5)


def test_reflexivity_violation():
    with pytest.raises(AxiomViolation) as err:
        validate_category(lawvere_rat(), "ab", [[0, 1], [1, 2]])
    assert err.value.violation.axiom == "CA1"
    assert err.value.violation.witness == ("b",)


def test_posets_are_valid_and_skeletal():
    for pts, lt in all_posets(3):
        C = poset(pts, lt)
        assert is_skeletal(C)
        assert underlying_preorder(C) == {(a, a) for a in pts} | lt


def test_one_object_category():
    for q in (bool2(), chain_trop(2), lawvere_rat()):
        C = validate_category(q, ["x"], [[q.unit]])
        assert is_skeletal(C) and len(C) == 1


def ca_oracle(q, objs, rows):
    n = len(objs)
    if not all(q.leq(q.unit, rows[i][i]) for i in range(n)):
        return False
    return all(q.leq(q.mul(rows[j][k], rows[i][j]), rows[i][k]) for i in range(n) for j in range(n) for k in range(n))


def test_validation_matches_triple_loop_oracle():
    q = chain_trop(2)
    objs = ("a", "b")
    for vals in itertools.product(q.carrier(), repeat=4):
        rows = (vals[:2], vals[2:])
        M = QMatrix(q, objs, objs, rows)
        assert (category_violation(q, objs, M) is None) == ca_oracle(q, objs, rows)


def test_lawvere_underlying_order_is_zero_distance():
    C = metric("abc", {("a", "b"): F(0), ("b", "a"): F(2), ("a", "c"): F(1), ("c", "a"): F(1),
                       ("b", "c"): F(1), ("c", "b"): F(1)})
    assert C.leq("a", "b")
    assert not C.leq("b", "a")
    assert not C.leq("a", "c")


def test_discrete_preorder_is_equality():
    q = chain_trop(2)
    C = QCategory(q, ("a", "b"), diag(("a", "b"), q))
    assert underlying_preorder(C) == {("a", "a"), ("b", "b")}


def test_zero_distance_pair_is_not_skeletal():
    C = metric("ab", {("a", "b"): F(0), ("b", "a"): F(0)})
    assert is_isomorphic_pair(C, "a", "b")
    assert not is_skeletal(C)
    Q, p = skeletal_quotient(C)
    assert Q.objects == ("a",)
    assert p.images == ("a", "a")


def test_quotient_of_preorder():
    # a ≅ b ≤ c
    rows = [[True, True, True], [True, True, True], [False, False, True]]
    C = QCategory.from_rows(B, "abc", rows)
    Q, p = skeletal_quotient(C)
    assert Q.objects == ("a", "c")
    assert is_skeletal(Q)
    assert is_fully_faithful(p)
    assert set(p.images) == set(Q.objects)
    assert iso_classes(C) == [("a", "b"), ("c",)]


def test_quotient_of_skeletal_is_identity_shaped():
    C = poset("abc", {("a", "b")})
    Q, p = skeletal_quotient(C)
    assert Q == C
    assert p.images == C.objects


def test_identity_fully_faithful_dense_codense():
    for C in small_families():
        f = identity_functor(C)
        assert is_fully_faithful(f) and is_dense(f) and is_codense(f)


def test_constant_functor():
    # constant map to e is a functor iff every hom is below D(e, e)
    C = close_category(chain_trop(2), "ab", [[0, 1], [2, 0]])
    D = close_category(chain_trop(2), "xy", [[0, 2], [2, 1]])
    for e in D.objects:
        want = all(C.quantale.leq(C(a, b), D(e, e)) for a in C.objects for b in C.objects)
        ok = True
        try:
            QFunctor(C, D, (e, e))
        except AxiomViolation:
            ok = False
        assert ok == want


def test_isometric_inclusion_is_fully_faithful():
    X = metric("abc", {(a, b): F(1) for a in "abc" for b in "abc" if a != b})
    sub = X.full_subcategory(("a", "c"))
    f = validate_functor(sub, X, {"a": "a", "c": "c"})
    assert is_fully_faithful(f)


def test_functor_violation_and_usage():
    C = poset("ab", {("a", "b")})
    D = poset("xy", set())
    with pytest.raises(AxiomViolation) as err:
        validate_functor(C, D, {"a": "x", "b": "y"})
    assert err.value.violation.witness == ("a", "b")
    with pytest.raises(UsageError):
        validate_functor(C, D, {"a": "x"})
    with pytest.raises(UsageError):
        validate_functor(C, D, {"a": "x", "b": "z"})


def test_comparison_lower_of_identity_is_yoneda():
    for C in small_families():
        low = comparison_lower(identity_functor(C))
        for d in C.objects:
            assert low[d] == yoneda(C, d).values


def test_yoneda_functor_dense_not_always_codense():
    codense = []
    for C in small_families():
        y = yoneda_functor(C)
        assert is_fully_faithful(y)
        assert is_dense(y)
        codense.append(is_codense(y))
    assert not all(codense)


def direct_dense(f):
    D, C = f.target, f.source
    q = D.quantale
    return all(
        D(d, d2) == q.meet(q.rext(D(f(c), d2), D(f(c), d)) for c in C.objects)
        for d in D.objects
        for d2 in D.objects
    )


def test_density_matches_direct_formula():
    rng = random.Random(3)
    for _ in range(40):
        q = rng.choice([bool2(), chain_trop(2)])
        D = random_category(q, 3, rng)
        sub = D.objects[: rng.randint(0, 3)]
        C = D.full_subcategory(sub)
        f = QFunctor(C, D, sub)
        assert is_dense(f) == direct_dense(f)


def test_composition_of_functors():
    C = poset("ab", {("a", "b")})
    D = poset("xyz", {("x", "y"), ("y", "z"), ("x", "z")})
    f = validate_functor(C, D, {"a": "x", "b": "z"})
    g = validate_functor(D, D, {"x": "y", "y": "y", "z": "z"})
    assert compose_functors(g, f).images == ("y", "z")


@given(st.integers(min_value=0, max_value=2**31), st.integers(min_value=1, max_value=4))
def test_preorder_reflexive_transitive(seed, n):
    C = random_category(chain_trop(3), n, random.Random(seed))
    rel = underlying_preorder(C)
    assert all((a, a) in rel for a in C.objects)
    assert all((a, c) in rel for a, b in rel for b2, c in rel if b == b2)


def test_unknown_object():
    C = poset("ab", set())
    with pytest.raises(UsageError):
        C.index("z")
    with pytest.raises(UsageError):
        yoneda(C, "z")


def test_presheaf_category_materialises():
    C = poset("ab", set())
    PC, ps = presheaf_category(C)
    assert len(PC) == 4
    assert is_skeletal(PC)
