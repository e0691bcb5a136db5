"""The MacNeille completion ``MN C``: Isbell-fixed pairs ``(P, R)``.

A pair ``(X, Y)`` of a column ``X: ob C -> 1`` and a row ``Y: 1 -> ob C`` lies in
``U_C`` when ``Y ∘ X ⪯ C``.  Members of the completion are exactly the maximal
elements of ``U_C``, equivalently the pairs with ``X = Y ↘ C`` and ``Y = C ↙ X``.

Pointwise queries (:func:`in_U`, :func:`mn_member`, :func:`mn_closure`,
:func:`mn_hom`) work over every quantale; :func:`mn_construct` and
:func:`mn_maximality_check` need a finite carrier.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from .errors import PreconditionError, ResourceLimitError, UsageError
from .isbell import (
    DEFAULT_CAP,
    Copresheaf,
    Presheaf,
    column,
    copresheaf_hom,
    coyoneda,
    enumerate_presheaves,
    isbell_left,
    isbell_right,
    presheaf_hom,
    row,
    yoneda,
)
from .qcategory import QCategory, QFunctor
from .qmatrix import QMatrix, compose, m_leq


@dataclass(frozen=True)
class PresheafPair:
    X: QMatrix
    Y: QMatrix


def make_pair(C: QCategory, xs, ys) -> PresheafPair:
    """Pair from mappings or object-ordered sequences; no (co)presheaf condition is imposed."""
    return PresheafPair(column(C, xs), row(C, ys))


def _check_pair(C: QCategory, pair) -> tuple[QMatrix, QMatrix]:
    X, Y = column(C, pair.X), row(C, pair.Y)
    return X, Y


@dataclass(frozen=True)
class MNObject:
    P: Presheaf
    R: Copresheaf

    def __post_init__(self):
        C = self.P.base
        if self.R.base != C:
            raise UsageError("presheaf and copresheaf over different categories")
        if isbell_right(C, self.R).values != self.P.values or isbell_left(C, self.P).values != self.R.values:
            raise PreconditionError("(P, R) is not an Isbell-fixed pair")

    @property
    def X(self) -> QMatrix:
        return self.P.values

    @property
    def Y(self) -> QMatrix:
        return self.R.values


def in_U(C: QCategory, pair) -> bool:
    """Whether ``Y ∘ X ⪯ C``, i.e. ``Y(c') ∘ X(c) ⪯ C(c, c')`` for all ``c, c'``."""
    X, Y = _check_pair(C, pair)
    return m_leq(compose(Y, X), C.hom)


def mn_member(C: QCategory, pair) -> bool:
    X, Y = _check_pair(C, pair)
    R = isbell_left(C, X)
    if R.values != Y:
        return False
    P = isbell_right(C, Y)
    if P.values != X:
        return False
    # members are automatically in U_C and both halves are (co)presheaves
    assert in_U(C, pair)
    assert P.values == X and R.values == Y
    return True


def _dominates(C: QCategory, big: PresheafPair, small: PresheafPair) -> bool:
    return m_leq(small.X, big.X) and m_leq(small.Y, big.Y)


def mn_closure(C: QCategory, pair) -> MNObject:
    """The member ``((C ↙ X) ↘ C, C ↙ X)`` dominating a pair of ``U_C``."""
    X, Y = _check_pair(C, pair)
    if not in_U(C, pair):
        raise PreconditionError("pair is not in U_C; a dominating member need not exist")
    R = isbell_left(C, X)
    P = isbell_right(C, R)
    assert m_leq(X, P.values) and m_leq(Y, R.values)
    return MNObject(P, R)


class Maximality(NamedTuple):
    maximal: bool
    witness: PresheafPair | None

    def __bool__(self) -> bool:
        return self.maximal


def mn_maximality_check(C: QCategory, pair, cap: int = DEFAULT_CAP) -> Maximality:
    """Exhaustively search ``U_C`` for a pair strictly above ``pair``.

    Returns ``Maximality(False, witness)`` when one exists and
    ``Maximality(False, None)`` when ``pair`` is not in ``U_C`` at all.
    """
    q = C.quantale
    carrier = q.carrier()
    X, Y = _check_pair(C, pair)
    if not in_U(C, pair):
        return Maximality(False, None)
    xs = [x for (x,) in X.entries]
    ys = list(Y.entries[0])
    ups = [[v for v in carrier if q.leq(u, v)] for u in xs + ys]
    needed = 1
    for u in ups:
        needed *= len(u)
    if needed > cap:
        raise ResourceLimitError("maximality search", needed, cap)
    n = len(C.objects)
    current = tuple(xs + ys)
    for vec in itertools.product(*ups):
        if vec == current:
            continue
        cand = make_pair(C, vec[:n], vec[n:])
        if in_U(C, cand):
            return Maximality(False, cand)
    return Maximality(True, None)


@dataclass(frozen=True, eq=False)
class MNCategory:
    """The completion together with its canonical embedding ``i_C``.

    ``category`` names the points ``m0, m1, ...`` in canonical order (lexicographic
    on the presheaf vector in carrier order); ``embedding`` maps each base object
    to the index of its image.
    """

    base: QCategory
    points: tuple
    category: QCategory
    embedding: dict

    def point_id(self, k: int) -> str:
        return self.category.objects[k]

    def index_of(self, o: MNObject) -> int:
        for k, p in enumerate(self.points):
            if p.P.values == o.P.values and p.R.values == o.R.values:
                return k
        raise UsageError("object is not a point of this completion")

    def embedding_functor(self) -> QFunctor:
        return QFunctor(self.base, self.category, tuple(self.point_id(self.embedding[c]) for c in self.base.objects))


def _fixed_presheaves(C: QCategory, cap: int, prefix: tuple) -> list[tuple]:
    out = []
    for P in enumerate_presheaves(C, cap, prefix):
        R = isbell_left(C, P)
        if isbell_right(C, R).values == P.values:
            out.append((P.vector, R.vector))
    return out


def mn_construct(C: QCategory, cap: int = DEFAULT_CAP, jobs: int = 1) -> MNCategory:
    """All Isbell-fixed pairs of a finite-quantale category, with hom and embedding.

    With ``jobs > 1`` candidates are split by the value at the first object and
    checked in worker processes; the result does not depend on ``jobs``.
    """
    q = C.quantale
    carrier = q.carrier()
    needed = len(carrier) ** len(C.objects)
    if needed > cap:
        raise ResourceLimitError("MacNeille construction", needed, cap)
    if jobs > 1 and C.objects:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_fixed_presheaves, [C] * len(carrier), [cap] * len(carrier), [(x,) for x in carrier])
            found = [item for part in parts for item in part]
    else:
        found = _fixed_presheaves(C, cap, ())
    found.sort(key=lambda pr: tuple(q.index(v) for v in pr[0]))
    points = tuple(MNObject(Presheaf(C, column(C, p)), Copresheaf(C, row(C, r))) for p, r in found)
    ids = tuple(f"m{k}" for k in range(len(points)))
    rows = [[presheaf_hom(a.P, b.P) for b in points] for a in points]
    for a, rw in zip(points, rows):
        for b, h in zip(points, rw):
            assert h == copresheaf_hom(a.R, b.R)
    category = QCategory.from_rows(q, ids, rows)
    where = {p.P.vector: k for k, p in enumerate(points)}
    embedding = {}
    for c in C.objects:
        k = where[yoneda(C, c).vector]
        assert points[k].R.vector == coyoneda(C, c).vector
        embedding[c] = k
    return MNCategory(C, points, category, embedding)


def mn_hom(mn: MNCategory, o: MNObject, o2: MNObject):
    """``PC(P, P')``, checked equal to ``P†C(R, R')``."""
    mn.index_of(o)
    mn.index_of(o2)
    h = presheaf_hom(o.P, o2.P)
    assert h == copresheaf_hom(o.R, o2.R)
    return h


def embed(C: QCategory, c: str) -> MNObject:
    """``i_C(c) = (C(-, c), C(c, -))`` without building the whole completion."""
    return MNObject(yoneda(C, c), coyoneda(C, c))
