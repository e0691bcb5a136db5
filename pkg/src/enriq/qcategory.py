"""Q-categories, Q-functors, the underlying preorder and density.

A Q-category is a square hom matrix satisfying

* CA1: ``unit ⪯ C(c, c)``
* CA2: ``C(c', c'') ∘ C(c, c') ⪯ C(c, c'')``

Calling a category returns hom elements: ``C("a", "b")``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .errors import AxiomViolation, UsageError, Violation
from .qmatrix import QMatrix, m_rext, m_rlift, objset
from .quantale import Quantale


def category_violation(q: Quantale, objects: Sequence[str], hom: QMatrix) -> Violation | None:
    """First failed axiom in canonical object order, or None."""
    objects = tuple(objects)
    if hom.quantale != q:
        raise UsageError("hom matrix is over a different quantale")
    if hom.rows != objects or hom.cols != objects:
        raise UsageError(f"hom matrix must be square over {objects}")
    e = hom.entries
    for i, c in enumerate(objects):
        if not q.leq(q.unit, e[i][i]):
            return Violation("CA1", (c,), q.unit, e[i][i])
    n = len(objects)
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = q.mul(e[j][k], e[i][j])
        if not q.leq(lhs, e[i][k]):
            return Violation("CA2", (objects[i], objects[j], objects[k]), lhs, e[i][k])
    return None


@dataclass(frozen=True)
class QCategory:
    quantale: Quantale
    objects: tuple
    hom: QMatrix

    def __post_init__(self):
        object.__setattr__(self, "objects", objset(self.objects))
        violation = category_violation(self.quantale, self.objects, self.hom)
        if violation is not None:
            raise AxiomViolation(violation)

    @classmethod
    def from_rows(cls, q: Quantale, objects: Sequence[str], rows) -> "QCategory":
        objects = tuple(objects)
        return cls(q, objects, QMatrix(q, objects, objects, tuple(tuple(r) for r in rows)))

    def __call__(self, c: str, c2: str):
        return self.hom[c, c2]

    def __len__(self) -> int:
        return len(self.objects)

    def __contains__(self, c) -> bool:
        return c in self._index

    @cached_property
    def _index(self) -> dict:
        return {c: i for i, c in enumerate(self.objects)}

    def index(self, c: str) -> int:
        try:
            return self._index[c]
        except KeyError:
            raise UsageError(f"unknown object {c!r}") from None

    def leq(self, c: str, c2: str) -> bool:
        """``c ⪯ c2`` in the underlying preorder."""
        return self.quantale.leq(self.quantale.unit, self(c, c2))

    def full_subcategory(self, objects: Sequence[str]) -> "QCategory":
        objects = tuple(objects)
        return QCategory.from_rows(self.quantale, objects, [[self(a, b) for b in objects] for a in objects])


def validate_category(q: Quantale, objects: Sequence[str], hom) -> QCategory:
    """Return the category, raising :class:`AxiomViolation` with a witness otherwise."""
    if not isinstance(hom, QMatrix):
        objects = tuple(objects)
        hom = QMatrix(q, objects, objects, tuple(tuple(r) for r in hom))
    return QCategory(q, tuple(objects), hom)


def underlying_preorder(C: QCategory) -> frozenset:
    return frozenset((a, b) for a in C.objects for b in C.objects if C.leq(a, b))


def is_isomorphic_pair(C: QCategory, c: str, c2: str) -> bool:
    return C.leq(c, c2) and C.leq(c2, c)


def is_skeletal(C: QCategory) -> bool:
    return not any(is_isomorphic_pair(C, a, b) for a, b in itertools.combinations(C.objects, 2))


def iso_classes(C: QCategory) -> list[tuple]:
    """Isomorphism classes, each listed in canonical order, ordered by first member."""
    classes: list[list] = []
    for c in C.objects:
        for cls in classes:
            if is_isomorphic_pair(C, cls[0], c):
                cls.append(c)
                break
        else:
            classes.append([c])
    return [tuple(cls) for cls in classes]


# --- functors ---------------------------------------------------------------


def functor_violation(source: QCategory, target: QCategory, mapping: Mapping[str, str]) -> Violation | None:
    q = source.quantale
    if target.quantale != q:
        raise UsageError("source and target are over different quantales")
    if set(mapping) != set(source.objects):
        raise UsageError("functor map must be defined on exactly the source objects")
    for img in mapping.values():
        if img not in target:
            raise UsageError(f"functor image {img!r} is not a target object")
    for a in source.objects:
        for b in source.objects:
            lhs, rhs = source(a, b), target(mapping[a], mapping[b])
            if not q.leq(lhs, rhs):
                return Violation("functor", (a, b), lhs, rhs)
    return None


@dataclass(frozen=True)
class QFunctor:
    source: QCategory
    target: QCategory
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.source.objects):
            raise UsageError("functor needs one image per source object")
        violation = functor_violation(self.source, self.target, self.mapping)
        if violation is not None:
            raise AxiomViolation(violation)

    @classmethod
    def from_mapping(cls, source: QCategory, target: QCategory, mapping: Mapping[str, str]) -> "QFunctor":
        missing = set(source.objects) - set(mapping)
        if missing:
            raise UsageError(f"functor map is missing {sorted(missing)}")
        return cls(source, target, tuple(mapping[c] for c in source.objects))

    @property
    def mapping(self) -> dict:
        return dict(zip(self.source.objects, self.images))

    def __call__(self, c: str) -> str:
        return self.images[self.source.index(c)]


def validate_functor(source: QCategory, target: QCategory, mapping: Mapping[str, str]) -> QFunctor:
    return QFunctor.from_mapping(source, target, mapping)


def identity_functor(C: QCategory) -> QFunctor:
    return QFunctor(C, C, C.objects)


def compose_functors(g: QFunctor, f: QFunctor) -> QFunctor:
    """``g ∘ f``."""
    if f.target != g.source:
        raise UsageError("functors are not composable")
    return QFunctor(f.source, g.target, tuple(g(f(c)) for c in f.source.objects))


def is_fully_faithful(f: QFunctor) -> bool:
    C, D = f.source, f.target
    return all(C(a, b) == D(f(a), f(b)) for a in C.objects for b in C.objects)


def skeletal_quotient(C: QCategory) -> tuple[QCategory, QFunctor]:
    """Collapse isomorphism classes onto their first-listed member."""
    classes = iso_classes(C)
    reps = tuple(cls[0] for cls in classes)
    Q = C.full_subcategory(reps)
    rep_of = {c: cls[0] for cls in classes for c in cls}
    return Q, QFunctor(C, Q, tuple(rep_of[c] for c in C.objects))


# --- density ------------------------------------------------------------------

_STAR = ("*",)


def comparison_lower(f: QFunctor) -> dict:
    """``f*``: each ``d`` goes to the presheaf ``(D(f c, d))_c`` over the source."""
    C, D = f.source, f.target
    return {
        d: QMatrix(C.quantale, C.objects, _STAR, tuple((D(f(c), d),) for c in C.objects))
        for d in D.objects
    }


def comparison_upper(f: QFunctor) -> dict:
    """``f_*``: each ``d`` goes to the copresheaf ``(D(d, f c))_c``."""
    C, D = f.source, f.target
    return {
        d: QMatrix(C.quantale, _STAR, C.objects, (tuple(D(d, f(c)) for c in C.objects),))
        for d in D.objects
    }


def is_dense(f: QFunctor) -> bool:
    """``D(d, d') = ⋀_c D(f c, d') ↙ D(f c, d)`` for all ``d, d'``."""
    D = f.target
    lower = comparison_lower(f)
    return all(
        D(d, d2) == m_rext(lower[d2], lower[d]).entries[0][0] for d in D.objects for d2 in D.objects
    )


def is_codense(f: QFunctor) -> bool:
    """``D(d, d') = ⋀_c D(d', f c) ↘ D(d, f c)`` for all ``d, d'``."""
    D = f.target
    upper = comparison_upper(f)
    return all(
        D(d, d2) == m_rlift(upper[d2], upper[d]).entries[0][0] for d in D.objects for d2 in D.objects
    )
