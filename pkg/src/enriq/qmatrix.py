"""Q-matrices: composition, both residuals, diagonals and the pointwise order.

A matrix ``X`` from ``A`` to ``B`` stores ``X(a, b)`` at row ``a``, column ``b``.
Composition follows the categorical order, so ``compose(Y, X)`` is "first ``X``,
then ``Y``"::

    compose(Y, X)(a, c) = ⋁_b  Y(b, c) ∘ X(a, b)
    m_rext(Z, X)(b, c)  = ⋀_a  Z(a, c) ↙ X(a, b)
    m_rlift(Y, Z)(a, b) = ⋀_c  Y(b, c) ↘ Z(a, c)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Sequence

from .errors import UsageError
from .quantale import Quantale

ObjSet = tuple  # ordered, duplicate-free tuple of object ids


def objset(ids: Sequence[str]) -> tuple:
    ids = tuple(ids)
    if any(not isinstance(i, str) for i in ids):
        raise UsageError(f"object identifiers must be strings: {ids!r}")
    if len(set(ids)) != len(ids):
        raise UsageError(f"duplicate object identifiers in {ids!r}")
    return ids


@dataclass(frozen=True)
class QMatrix:
    quantale: Quantale
    rows: tuple
    cols: tuple
    entries: tuple = field(repr=False)

    def __post_init__(self):
        rows, cols = objset(self.rows), objset(self.cols)
        if len(self.entries) != len(rows) or any(len(r) != len(cols) for r in self.entries):
            raise UsageError(f"entries do not have shape {len(rows)}x{len(cols)}")
        check = self.quantale.check
        entries = tuple(tuple(check(x) for x in row) for row in self.entries)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_function(cls, q: Quantale, rows, cols, fn: Callable[[str, str], Any]) -> "QMatrix":
        return cls(q, tuple(rows), tuple(cols), tuple(tuple(fn(r, c) for c in cols) for r in rows))

    @cached_property
    def _row_index(self) -> dict:
        return {r: i for i, r in enumerate(self.rows)}

    @cached_property
    def _col_index(self) -> dict:
        return {c: j for j, c in enumerate(self.cols)}

    def __getitem__(self, key):
        r, c = key
        try:
            return self.entries[self._row_index[r]][self._col_index[c]]
        except KeyError:
            raise UsageError(f"no entry ({r!r}, {c!r}) in a {self.rows}x{self.cols} matrix") from None

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.cols)

    def column(self, c: str) -> tuple:
        j = self._col_index[c]
        return tuple(row[j] for row in self.entries)

    def row(self, r: str) -> tuple:
        return self.entries[self._row_index[r]]

    def __repr__(self) -> str:
        return f"QMatrix({self.quantale!r}, rows={self.rows}, cols={self.cols}, entries={self.entries})"


def _same_quantale(*ms: QMatrix) -> Quantale:
    q = ms[0].quantale
    if any(m.quantale != q for m in ms[1:]):
        raise UsageError("matrices over different quantales")
    return q


def compose(Y: QMatrix, X: QMatrix) -> QMatrix:
    q = _same_quantale(Y, X)
    if Y.rows != X.cols:
        raise UsageError(f"cannot compose: {X.cols} does not match {Y.rows}")
    mul, join = q.mul, q.join
    nb = len(X.cols)
    entries = tuple(
        tuple(join(mul(Y.entries[b][c], xa[b]) for b in range(nb)) for c in range(len(Y.cols)))
        for xa in X.entries
    )
    return QMatrix(q, X.rows, Y.cols, entries)


def m_rext(Z: QMatrix, X: QMatrix) -> QMatrix:
    """Largest ``Y`` with ``compose(Y, X) ⪯ Z``."""
    q = _same_quantale(Z, X)
    if Z.rows != X.rows:
        raise UsageError(f"cannot extend: {Z.rows} does not match {X.rows}")
    rext, meet = q.rext, q.meet
    na = len(X.rows)
    entries = tuple(
        tuple(meet(rext(Z.entries[a][c], X.entries[a][b]) for a in range(na)) for c in range(len(Z.cols)))
        for b in range(len(X.cols))
    )
    return QMatrix(q, X.cols, Z.cols, entries)


def m_rlift(Y: QMatrix, Z: QMatrix) -> QMatrix:
    """Largest ``X`` with ``compose(Y, X) ⪯ Z``."""
    q = _same_quantale(Y, Z)
    if Y.cols != Z.cols:
        raise UsageError(f"cannot lift: {Y.cols} does not match {Z.cols}")
    rlift, meet = q.rlift, q.meet
    nc = len(Z.cols)
    entries = tuple(
        tuple(meet(rlift(yb[c], za[c]) for c in range(nc)) for yb in Y.entries)
        for za in Z.entries
    )
    return QMatrix(q, Z.rows, Y.rows, entries)


def diag(A: Sequence[str], q: Quantale) -> QMatrix:
    A = objset(A)
    return QMatrix.from_function(q, A, A, lambda a, b: q.unit if a == b else q.bottom)


def constant(rows: Sequence[str], cols: Sequence[str], q: Quantale, value) -> QMatrix:
    return QMatrix.from_function(q, rows, cols, lambda r, c: value)


def bottom_matrix(rows, cols, q: Quantale) -> QMatrix:
    return constant(rows, cols, q, q.bottom)


def top_matrix(rows, cols, q: Quantale) -> QMatrix:
    return constant(rows, cols, q, q.top)


def _check_shape(X: QMatrix, X2: QMatrix) -> Quantale:
    q = _same_quantale(X, X2)
    if X.rows != X2.rows or X.cols != X2.cols:
        raise UsageError(f"shape mismatch: {X.rows}x{X.cols} vs {X2.rows}x{X2.cols}")
    return q


def m_leq(X: QMatrix, X2: QMatrix) -> bool:
    q = _check_shape(X, X2)
    return all(q.leq(x, y) for r1, r2 in zip(X.entries, X2.entries) for x, y in zip(r1, r2))


def m_join(X: QMatrix, X2: QMatrix) -> QMatrix:
    q = _check_shape(X, X2)
    entries = tuple(tuple(q.join((x, y)) for x, y in zip(r1, r2)) for r1, r2 in zip(X.entries, X2.entries))
    return QMatrix(q, X.rows, X.cols, entries)


def m_meet(X: QMatrix, X2: QMatrix) -> QMatrix:
    q = _check_shape(X, X2)
    entries = tuple(tuple(q.meet((x, y)) for x, y in zip(r1, r2)) for r1, r2 in zip(X.entries, X2.entries))
    return QMatrix(q, X.rows, X.cols, entries)
