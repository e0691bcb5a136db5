"""Presheaves, copresheaves, (co-)Yoneda and the Isbell adjunction.

A presheaf over ``C`` is a column matrix ``P: ob C -> 1`` with
``P(c') ∘ C(c, c') ⪯ P(c)``; a copresheaf is a row matrix ``R: 1 -> ob C`` with
``C(c, c') ∘ R(c) ⪯ R(c')``.  The Isbell maps are the matrix residuals

    isbell_left(C, P)  = C ↙ P      (a copresheaf)
    isbell_right(C, R) = R ↘ C      (a presheaf)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import AxiomViolation, ResourceLimitError, UsageError, Violation
from .qcategory import QCategory, QFunctor
from .qmatrix import QMatrix, m_rext, m_rlift
from .quantale import Quantale

STAR = "*"
ONE = (STAR,)

DEFAULT_CAP = 10**7


def presheaf_violation(C: QCategory, X: QMatrix) -> Violation | None:
    q = C.quantale
    for c in C.objects:
        for c2 in C.objects:
            lhs = q.mul(X[c2, STAR], C(c, c2))
            if not q.leq(lhs, X[c, STAR]):
                return Violation("presheaf", (c, c2), lhs, X[c, STAR])
    return None


def copresheaf_violation(C: QCategory, Y: QMatrix) -> Violation | None:
    q = C.quantale
    for c in C.objects:
        for c2 in C.objects:
            lhs = q.mul(C(c, c2), Y[STAR, c])
            if not q.leq(lhs, Y[STAR, c2]):
                return Violation("copresheaf", (c, c2), lhs, Y[STAR, c2])
    return None


def _column(C: QCategory, values) -> QMatrix:
    if isinstance(values, QMatrix):
        if values.rows != C.objects or values.cols != ONE or values.quantale != C.quantale:
            raise UsageError("presheaf matrix does not match the base category")
        return values
    if isinstance(values, Mapping):
        values = [values[c] for c in C.objects]
    return QMatrix(C.quantale, C.objects, ONE, tuple((v,) for v in values))


def _row(C: QCategory, values) -> QMatrix:
    if isinstance(values, QMatrix):
        if values.rows != ONE or values.cols != C.objects or values.quantale != C.quantale:
            raise UsageError("copresheaf matrix does not match the base category")
        return values
    if isinstance(values, Mapping):
        values = [values[c] for c in C.objects]
    return QMatrix(C.quantale, ONE, C.objects, (tuple(values),))


@dataclass(frozen=True)
class Presheaf:
    base: QCategory
    values: QMatrix

    def __post_init__(self):
        object.__setattr__(self, "values", _column(self.base, self.values))
        violation = presheaf_violation(self.base, self.values)
        if violation is not None:
            raise AxiomViolation(violation)

    def __getitem__(self, c: str):
        return self.values[c, STAR]

    @property
    def vector(self) -> tuple:
        return tuple(row[0] for row in self.values.entries)


@dataclass(frozen=True)
class Copresheaf:
    base: QCategory
    values: QMatrix

    def __post_init__(self):
        object.__setattr__(self, "values", _row(self.base, self.values))
        violation = copresheaf_violation(self.base, self.values)
        if violation is not None:
            raise AxiomViolation(violation)

    def __getitem__(self, c: str):
        return self.values[STAR, c]

    @property
    def vector(self) -> tuple:
        return self.values.entries[0]


def column(C: QCategory, values) -> QMatrix:
    """Column matrix ``ob C -> 1`` from a mapping or a sequence in object order."""
    return _column(C, values)


def row(C: QCategory, values) -> QMatrix:
    """Row matrix ``1 -> ob C`` from a mapping or a sequence in object order."""
    return _row(C, values)


def _same_base(a, b) -> QCategory:
    if a.base != b.base:
        raise UsageError("(co)presheaves over different categories")
    return a.base


def presheaf_hom(P: Presheaf, P2: Presheaf):
    """``⋀_c P2(c) ↙ P(c)``."""
    _same_base(P, P2)
    return m_rext(P2.values, P.values).entries[0][0]


def copresheaf_hom(R: Copresheaf, R2: Copresheaf):
    """``⋀_c R2(c) ↘ R(c)``."""
    _same_base(R, R2)
    return m_rlift(R2.values, R.values).entries[0][0]


def yoneda(C: QCategory, c: str) -> Presheaf:
    C.index(c)
    return Presheaf(C, column(C, [C(c2, c) for c2 in C.objects]))


def coyoneda(C: QCategory, c: str) -> Copresheaf:
    C.index(c)
    return Copresheaf(C, row(C, [C(c, c2) for c2 in C.objects]))


def _values(x) -> QMatrix:
    return x.values if isinstance(x, (Presheaf, Copresheaf)) else x


def isbell_left(C: QCategory, P) -> Copresheaf:
    """``(C ↙ P)(c) = ⋀_{c'} C(c', c) ↙ P(c')``; accepts any column matrix."""
    X = column(C, _values(P))
    return Copresheaf(C, m_rext(C.hom, X))


def isbell_right(C: QCategory, R) -> Presheaf:
    """``(R ↘ C)(c) = ⋀_{c'} R(c') ↘ C(c, c')``; accepts any row matrix."""
    Y = row(C, _values(R))
    return Presheaf(C, m_rlift(Y, C.hom))


def check_isbell_adjunction(C: QCategory, P: Presheaf, R: Copresheaf) -> bool:
    """Whether ``PC(P, R↘C) = P†C(C↙P, R)``."""
    return presheaf_hom(P, isbell_right(C, R)) == copresheaf_hom(isbell_left(C, P), R)


# --- enumeration over finite quantales ------------------------------------------


def _check_cap(C: QCategory, cap: int, what: str) -> None:
    q = C.quantale
    needed = len(q.carrier()) ** len(C.objects)
    if needed > cap:
        raise ResourceLimitError(what, needed, cap)


def _backtrack(C: QCategory, ok_pair, prefix: tuple = ()) -> Iterator[tuple]:
    """Vectors over the carrier, lexicographic in carrier order, pruned pairwise.

    Only vectors starting with ``prefix`` are produced.
    """
    carrier = C.quantale.carrier()
    n = len(C.objects)
    vec: list = [None] * n

    def go(k: int):
        if k == n:
            yield tuple(vec)
            return
        for x in (prefix[k],) if k < len(prefix) else carrier:
            vec[k] = x
            if all(ok_pair(k, j, vec) and ok_pair(j, k, vec) for j in range(k + 1)):
                yield from go(k + 1)

    yield from go(0)


def enumerate_presheaves(C: QCategory, cap: int = DEFAULT_CAP, prefix: tuple = ()) -> Iterator[Presheaf]:
    _check_cap(C, cap, "presheaf enumeration")
    q, objs = C.quantale, C.objects

    def ok(i, j, v):
        # P(c_j) ∘ C(c_i, c_j) ⪯ P(c_i)
        return q.leq(q.mul(v[j], C(objs[i], objs[j])), v[i])

    for vec in _backtrack(C, ok, prefix):
        yield Presheaf(C, column(C, vec))


def enumerate_copresheaves(C: QCategory, cap: int = DEFAULT_CAP) -> Iterator[Copresheaf]:
    _check_cap(C, cap, "copresheaf enumeration")
    q, objs = C.quantale, C.objects

    def ok(i, j, v):
        # C(c_i, c_j) ∘ R(c_i) ⪯ R(c_j)
        return q.leq(q.mul(C(objs[i], objs[j]), v[i]), v[j])

    for vec in _backtrack(C, ok):
        yield Copresheaf(C, row(C, vec))


def presheaf_category(C: QCategory, cap: int = DEFAULT_CAP) -> tuple[QCategory, list[Presheaf]]:
    """Materialise ``PC`` (finite quantales only); objects are named ``p0, p1, ...``."""
    ps = list(enumerate_presheaves(C, cap))
    ids = tuple(f"p{k}" for k in range(len(ps)))
    rows = [[presheaf_hom(a, b) for b in ps] for a in ps]
    return QCategory.from_rows(C.quantale, ids, rows), ps


def copresheaf_category(C: QCategory, cap: int = DEFAULT_CAP) -> tuple[QCategory, list[Copresheaf]]:
    rs = list(enumerate_copresheaves(C, cap))
    ids = tuple(f"r{k}" for k in range(len(rs)))
    rows = [[copresheaf_hom(a, b) for b in rs] for a in rs]
    return QCategory.from_rows(C.quantale, ids, rows), rs


def yoneda_functor(C: QCategory, cap: int = DEFAULT_CAP) -> QFunctor:
    PC, ps = presheaf_category(C, cap)
    where = {p.vector: pid for pid, p in zip(PC.objects, ps)}
    return QFunctor(C, PC, tuple(where[yoneda(C, c).vector] for c in C.objects))


def coyoneda_functor(C: QCategory, cap: int = DEFAULT_CAP) -> QFunctor:
    PdC, rs = copresheaf_category(C, cap)
    where = {r.vector: rid for rid, r in zip(PdC.objects, rs)}
    return QFunctor(C, PdC, tuple(where[coyoneda(C, c).vector] for c in C.objects))


def top_copresheaf(C: QCategory) -> Copresheaf:
    q: Quantale = C.quantale
    return Copresheaf(C, row(C, [q.top] * len(C.objects)))


def bottom_presheaf(C: QCategory) -> Presheaf:
    q = C.quantale
    return Presheaf(C, column(C, [q.bottom] * len(C.objects)))

