"""Decision procedures: completeness, injectivity, Kan extensions, Isbell convexity.

Everything here works on finite object sets.  Procedures that quantify over the
whole carrier (:func:`is_complete`, :func:`is_injective`) need a finite quantale;
the pointwise ones (powers, copowers, Kan extensions, ball systems) do not.

Ties are always broken by the first object in canonical order.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, NamedTuple, Sequence

from .errors import PreconditionError, ResourceLimitError, UnsupportedError, UsageError
from .isbell import DEFAULT_CAP
from .macneille import MNCategory, MNObject, PresheafPair, in_U, make_pair, mn_closure, mn_construct
from .qcategory import (
    QCategory,
    QFunctor,
    category_violation,
    is_codense,
    is_dense,
    is_fully_faithful,
    is_skeletal,
    iso_classes,
)
from .qmatrix import QMatrix
from .quantale import INF, Quantale

# Above this many isomorphism classes order-completeness is refused.
MAX_ORDER_CLASSES = 4096


def find_power(C: QCategory, c: str, x) -> str | None:
    """An object ``c'`` with ``C(d, c') = x ↘ C(d, c)`` for every ``d``."""
    q = C.quantale
    want = [q.rlift(x, C(d, c)) for d in C.objects]
    for c2 in C.objects:
        if all(C(d, c2) == w for d, w in zip(C.objects, want)):
            return c2
    return None


def find_copower(C: QCategory, c: str, x) -> str | None:
    """An object ``c'`` with ``C(c', d) = C(c, d) ↙ x`` for every ``d``."""
    q = C.quantale
    want = [q.rext(C(c, d), x) for d in C.objects]
    for c2 in C.objects:
        if all(C(c2, d) == w for d, w in zip(C.objects, want)):
            return c2
    return None


def order_join(C: QCategory, objs: Sequence[str]) -> str | None:
    """Least upper bound in the underlying preorder (a representative), or None."""
    ubs = [u for u in C.objects if all(C.leq(o, u) for o in objs)]
    for u in ubs:
        if all(C.leq(u, v) for v in ubs):
            return u
    return None


def order_meet(C: QCategory, objs: Sequence[str]) -> str | None:
    lbs = [u for u in C.objects if all(C.leq(u, o) for o in objs)]
    for u in lbs:
        if all(C.leq(v, u) for v in lbs):
            return u
    return None


def order_completeness_witness(C: QCategory, max_classes: int = MAX_ORDER_CLASSES) -> tuple | None:
    """A family of objects without a join, or None if the poset reflection is a complete lattice.

    For a finite poset a bottom element and binary joins give every join.
    """
    reps = [cls[0] for cls in iso_classes(C)]
    if len(reps) > max_classes:
        raise ResourceLimitError("order-completeness scan", len(reps), max_classes)
    if order_join(C, ()) is None:
        return ()
    for a, b in itertools.combinations(reps, 2):
        if order_join(C, (a, b)) is None:
            return (a, b)
    return None


def is_order_complete(C: QCategory, max_classes: int = MAX_ORDER_CLASSES) -> bool:
    return order_completeness_witness(C, max_classes) is None


@dataclass(frozen=True)
class CompletenessReport:
    powered: bool
    copowered: bool
    order_complete: bool
    power_witness: tuple | None = None
    copower_witness: tuple | None = None
    order_witness: tuple | None = None

    @property
    def complete(self) -> bool:
        return self.powered and self.copowered and self.order_complete


def is_complete(C: QCategory) -> CompletenessReport:
    """Powered, copowered and order-complete, with the first failure of each."""
    carrier = C.quantale.carrier()
    power_w = next(((c, x) for c in C.objects for x in carrier if find_power(C, c, x) is None), None)
    copower_w = next(((c, x) for c in C.objects for x in carrier if find_copower(C, c, x) is None), None)
    order_w = order_completeness_witness(C)
    return CompletenessReport(
        powered=power_w is None,
        copowered=copower_w is None,
        order_complete=order_w is None,
        power_witness=power_w,
        copower_witness=copower_w,
        order_witness=order_w,
    )


# --- functor search -------------------------------------------------------------


def _search_functors(D: QCategory, E: QCategory, choices: Sequence[Sequence[str]]) -> Iterator[tuple]:
    """Q-functors ``D -> E`` whose image of the k-th object is drawn from ``choices[k]``."""
    q = D.quantale
    objs = D.objects
    n = len(objs)
    dh = [[D(a, b) for b in objs] for a in objs]
    img: list = [None] * n

    def fits(k: int) -> bool:
        gk = img[k]
        for j in range(k + 1):
            gj = img[j]
            if not q.leq(dh[k][j], E(gk, gj)) or not q.leq(dh[j][k], E(gj, gk)):
                return False
        return True

    def go(k: int):
        if k == n:
            yield tuple(img)
            return
        for e in choices[k]:
            img[k] = e
            if fits(k):
                yield from go(k + 1)

    yield from go(0)


def _search_size(choices) -> int:
    return math.prod(len(c) for c in choices)


class Injectivity(NamedTuple):
    injective: bool
    retraction: dict | None

    def __bool__(self) -> bool:
        return self.injective


def is_injective(C: QCategory, cap: int = DEFAULT_CAP, mn: MNCategory | None = None) -> Injectivity:
    """Decide injectivity by searching for a retraction ``r`` of ``i_C: C -> MN C``.

    Returns the first retraction found (as a map on completion point ids) or
    ``Injectivity(False, None)`` once the search is exhausted.  A completion
    already built for ``C`` may be passed as ``mn``.
    """
    if mn is None:
        mn = mn_construct(C, cap)
    elif mn.base != C:
        raise UsageError("completion was built for a different category")
    M = mn.category
    fixed: dict = {}
    for c in C.objects:
        pid = mn.point_id(mn.embedding[c])
        if fixed.setdefault(pid, c) != c:
            # i_C identifies two objects, so no map can undo it
            return Injectivity(False, None)
    choices = [[fixed[m]] if m in fixed else list(C.objects) for m in M.objects]
    needed = _search_size(choices)
    if needed > cap:
        raise ResourceLimitError("retraction search", needed, cap)
    for images in _search_functors(M, C, choices):
        return Injectivity(True, dict(zip(M.objects, images)))
    return Injectivity(False, None)


def is_essential_embedding(f: QFunctor) -> bool:
    return is_fully_faithful(f) and is_dense(f) and is_codense(f)


# --- Kan extensions -------------------------------------------------------------


class Extension(NamedTuple):
    mapping: dict | None
    witness: dict | None


def _check_span(f: QFunctor, i: QFunctor) -> None:
    if f.source != i.source:
        raise UsageError("f and i must share their source category")
    if f.target.quantale != i.target.quantale:
        raise UsageError("categories over different quantales")


def kan_lan(f: QFunctor, i: QFunctor) -> Extension:
    """``d ↦ ⋁_c D(i c, d) ∗ f(c)`` computed from copowers and order joins in ``E``."""
    _check_span(f, i)
    C, D, E = f.source, i.target, f.target
    out = {}
    for d in D.objects:
        parts = []
        for c in C.objects:
            x = D(i(c), d)
            e = find_copower(E, f(c), x)
            if e is None:
                return Extension(None, {"missing": "copower", "at": d, "object": f(c), "by": x})
            parts.append(e)
        j = order_join(E, parts)
        if j is None:
            return Extension(None, {"missing": "join", "at": d, "objects": parts})
        out[d] = j
    return Extension(out, None)


def kan_ran(f: QFunctor, i: QFunctor) -> Extension:
    """``d ↦ ⋀_c D(d, i c) ⋔ f(c)`` computed from powers and order meets in ``E``."""
    _check_span(f, i)
    C, D, E = f.source, i.target, f.target
    out = {}
    for d in D.objects:
        parts = []
        for c in C.objects:
            x = D(d, i(c))
            e = find_power(E, f(c), x)
            if e is None:
                return Extension(None, {"missing": "power", "at": d, "object": f(c), "by": x})
            parts.append(e)
        m = order_meet(E, parts)
        if m is None:
            return Extension(None, {"missing": "meet", "at": d, "objects": parts})
        out[d] = m
    return Extension(out, None)


def solve_extension(f: QFunctor, i: QFunctor, cap: int = DEFAULT_CAP, verify_sandwich: bool = True) -> list[QFunctor]:
    """Every Q-functor ``g: D -> E`` with ``g ∘ i = f``, in canonical order.

    When ``i`` is an embedding and ``E`` is skeletal and complete (finite
    quantale), the result is checked against the interval between the left and
    right Kan extensions.
    """
    _check_span(f, i)
    C, D, E = f.source, i.target, f.target
    forced: dict = {}
    for c in C.objects:
        if forced.setdefault(i(c), f(c)) != f(c):
            return []
    choices = [[forced[d]] if d in forced else list(E.objects) for d in D.objects]
    needed = _search_size(choices)
    if needed > cap:
        raise ResourceLimitError("extension search", needed, cap)
    out = [QFunctor(D, E, images) for images in _search_functors(D, E, choices)]
    if (
        verify_sandwich
        and E.quantale.is_finite
        and is_fully_faithful(i)
        and is_skeletal(E)
        and is_complete(E).complete
    ):
        interval = sandwich_interval(f, i, cap)
        assert [g.images for g in out] == [g.images for g in interval]
    return out


def sandwich_interval(f: QFunctor, i: QFunctor, cap: int = DEFAULT_CAP) -> list[QFunctor]:
    """Every Q-functor ``g: D -> E`` with ``Lan ⪯ g ⪯ Ran`` pointwise."""
    lan, ran = kan_lan(f, i), kan_ran(f, i)
    if lan.mapping is None or ran.mapping is None:
        raise PreconditionError(f"Kan extension missing: {lan.witness or ran.witness}")
    D, E = i.target, f.target
    choices = [
        [e for e in E.objects if E.leq(lan.mapping[d], e) and E.leq(e, ran.mapping[d])] for d in D.objects
    ]
    needed = _search_size(choices)
    if needed > cap:
        raise ResourceLimitError("sandwich search", needed, cap)
    return [QFunctor(D, E, images) for images in _search_functors(D, E, choices)]


# --- ball systems and Isbell convexity -------------------------------------------


class Ball(NamedTuple):
    at: str
    x: Any
    y: Any


@dataclass(frozen=True)
class BallReport:
    consistent: bool
    witness: str | None
    hull_point: MNObject | None
    pair: PresheafPair


def induced_pair(C: QCategory, balls: Sequence[Ball]) -> PresheafPair:
    """``X(c)`` joins the ``x_i`` centred at ``c`` (bottom if none); ``Y`` likewise."""
    q = C.quantale
    for b in balls:
        C.index(b.at)
    xs = [q.join(b.x for b in balls if b.at == c) for c in C.objects]
    ys = [q.join(b.y for b in balls if b.at == c) for c in C.objects]
    return make_pair(C, xs, ys)


def ball_witness(C: QCategory, balls: Sequence[Ball]) -> str | None:
    """First object ``c`` with ``x_i ⪯ C(c_i, c)`` and ``y_i ⪯ C(c, c_i)`` for all balls."""
    q = C.quantale
    for c in C.objects:
        if all(q.leq(b.x, C(b.at, c)) and q.leq(b.y, C(c, b.at)) for b in balls):
            return c
    return None


def check_ball_system(C: QCategory, balls: Sequence[Ball]) -> BallReport:
    """Pairwise consistency, a witnessing object if any, and a hull point of ``MN C``.

    Over the Lawvere quantale consistency reads ``x_i + y_j ≥ C(c_i, c_j)`` and a
    witness ``c`` satisfies ``x_i ≥ C(c_i, c)`` and ``y_i ≥ C(c, c_i)``.
    """
    q = C.quantale
    balls = [Ball(b.at, q.check(b.x), q.check(b.y)) for b in balls]
    consistent = all(q.leq(q.mul(bj.y, bi.x), C(bi.at, bj.at)) for bi in balls for bj in balls)
    pair = induced_pair(C, balls)
    assert consistent == in_U(C, pair)
    hull = mn_closure(C, pair) if consistent else None
    return BallReport(consistent, ball_witness(C, balls), hull, pair)


class Convexity(NamedTuple):
    convex: bool
    counterexample: PresheafPair | None

    def __bool__(self) -> bool:
        return self.convex


def convexity_grid(C: QCategory, grid_denominator: int | None = None) -> list:
    """Candidate radii, from the top of the quantale downwards (tightest first)."""
    q = C.quantale
    if q.kind == "chain_trop":
        return list(reversed(q.carrier()))
    if q.kind == "lawvere_rat":
        if grid_denominator is None or grid_denominator < 1:
            raise UsageError("lawvere_rat needs a positive grid denominator")
        finite = [v for r in C.hom.entries for v in r if v != INF]
        kmax = math.ceil(max(finite, default=Fraction(0)) * grid_denominator)
        return [Fraction(k, grid_denominator) for k in range(kmax + 1)] + [INF]
    raise UnsupportedError(f"Isbell convexity is checked over chain_trop or lawvere_rat, not {q.kind}")


def is_isbell_convex(C: QCategory, grid_denominator: int | None = None, cap: int = DEFAULT_CAP) -> Convexity:
    """Search grid ball systems for one that is consistent but has no common point.

    Exact over ``chain_trop``.  Over ``lawvere_rat`` only radii ``k/den`` up to
    the largest finite distance, plus ∞, are tried: a returned counterexample is
    genuine, a ``True`` verdict holds on that grid only.  Systems are tried in
    order of increasing largest radius, so the first counterexample is a tightest
    one.
    """
    q = C.quantale
    grid = convexity_grid(C, grid_denominator)
    objs = C.objects
    n = len(objs)
    if n == 0:
        return Convexity(False, make_pair(C, [], []))
    needed = len(grid) ** (2 * n)
    if needed > cap:
        raise ResourceLimitError("Isbell convexity grid", needed, cap)
    hom = [[C(a, b) for b in objs] for a in objs]
    leq, mul = q.leq, q.mul

    def consistent(xs, ys):
        return all(leq(mul(ys[j], xs[i]), hom[i][j]) for i in range(n) for j in range(n))

    def witnessed(xs, ys):
        return any(
            all(leq(xs[k], hom[k][c]) and leq(ys[k], hom[c][k]) for k in range(n)) for c in range(n)
        )

    for m in range(len(grid)):
        for idx in itertools.product(range(m + 1), repeat=2 * n):
            if max(idx) != m:
                continue
            vals = [grid[k] for k in idx]
            xs, ys = vals[:n], vals[n:]
            if consistent(xs, ys) and not witnessed(xs, ys):
                return Convexity(False, make_pair(C, xs, ys))
    return Convexity(True, None)


# --- enumeration of small categories ---------------------------------------------

_NAMES = "abcdefghijklmnopqrstuvwxyz"


def enumerate_categories(q: Quantale, n: int, names: Sequence[str] | None = None) -> Iterator[QCategory]:
    """Every valid Q-category on ``n`` labelled objects (isomorphic copies included)."""
    objs = tuple(names) if names is not None else tuple(_NAMES[:n])
    carrier = q.carrier()
    diag_vals = [v for v in carrier if q.leq(q.unit, v)]
    cells = [(a, b) for a in range(n) for b in range(n)]
    choices = [diag_vals if a == b else carrier for a, b in cells]
    for vals in itertools.product(*choices):
        rows = tuple(tuple(vals[a * n:(a + 1) * n]) for a in range(n))
        hom = QMatrix(q, objs, objs, rows)
        if category_violation(q, objs, hom) is None:
            yield QCategory(q, objs, hom)


@dataclass(frozen=True)
class CensusEntry:
    """Structural verdicts for one category and its completion."""

    category: QCategory
    skeletal: bool
    complete: bool
    injective: bool
    essential_i: bool
    completion_size: int
    completion_injective: bool
    completion_skeletal: bool
    completion_complete: bool


def census_entry(C: QCategory, cap: int = DEFAULT_CAP) -> CensusEntry:
    mn = mn_construct(C, cap)
    M = mn.category
    return CensusEntry(
        category=C,
        skeletal=is_skeletal(C),
        complete=is_complete(C).complete,
        injective=is_injective(C, cap).injective,
        essential_i=is_essential_embedding(mn.embedding_functor()),
        completion_size=len(M),
        completion_injective=is_injective(M, cap).injective,
        completion_skeletal=is_skeletal(M),
        completion_complete=is_complete(M).complete,
    )


def census(categories: Sequence[QCategory], cap: int = DEFAULT_CAP, jobs: int = 1) -> list[CensusEntry]:
    """:func:`census_entry` for each category; order follows the input regardless of ``jobs``."""
    categories = list(categories)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(census_entry, categories, [cap] * len(categories)))
    return [census_entry(C, cap) for C in categories]
