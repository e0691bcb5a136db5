"""Quantales: complete lattices with a monoid multiplication that preserves joins.

Every quantale exposes the same surface: ``leq``, ``join``/``meet``, ``unit``,
``mul`` and the two residuals ``rext`` (right extension, ``z↙x``) and ``rlift``
(right lifting, ``y↘z``)::

    leq(y, rext(z, x))  <=>  leq(mul(y, x), z)  <=>  leq(x, rlift(y, z))

Finite instances (``bool2``, ``chain_trop``, ``free_monoid``, ``relations``)
precompute their operation tables and derive both residuals by brute force from
``mul`` and ``leq``.  The two instances on the extended half-line
(``lawvere_rat``, ``max_ext``) use exact rationals and closed-form residuals.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import DomainError, ResourceLimitError, UnsupportedError, UsageError

INF = math.inf

# Brute-force residual tables cost |carrier|**3.
MAX_FINITE_CARRIER = 64


class Quantale:
    kind: str = ""
    is_finite = False

    @property
    def key(self) -> tuple:
        return (self.kind,)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quantale) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v!r}" for k, v in self.key[1:])
        return f"{self.kind}({params})"

    def spec(self) -> dict:
        """JSON selection form, e.g. ``{"kind": "chain_trop", "n": 4}``."""
        return {"kind": self.kind}

    def __reduce__(self):
        return (from_spec, (self.spec(),))

    def carrier(self) -> tuple:
        raise UnsupportedError(f"{self.kind} has an infinite carrier")

    enumerate_carrier = carrier

    def index(self, x) -> int:
        raise UnsupportedError(f"{self.kind} has no finite index")

    def contains(self, x) -> bool:
        try:
            self.check(x)
        except DomainError:
            return False
        return True

    def lt(self, x, y) -> bool:
        return self.leq(x, y) and x != y

    def geq(self, x, y) -> bool:
        return self.leq(y, x)

    # subclasses provide: check, leq, join, meet, mul, rext, rlift,
    # unit, bottom, top, encode, decode, sort_key


class FiniteQuantale(Quantale):
    """A quantale on an explicitly listed carrier.

    ``elements`` fixes the canonical order used by every enumeration in the
    package; callers list it ⪯-ascending where that is a linear order.
    """

    is_finite = True

    def __init__(
        self,
        kind: str,
        params: tuple,
        elements: Sequence[Hashable],
        leq: Callable[[Any, Any], bool],
        mul: Callable[[Any, Any], Any],
        unit: Hashable,
        encode: Callable[[Any], Any],
        decode: Callable[[Any], Any],
    ):
        n = len(elements)
        if n > MAX_FINITE_CARRIER:
            raise ResourceLimitError(f"{kind} carrier", n, MAX_FINITE_CARRIER)
        self.kind = kind
        self._params = params
        self._elems = tuple(elements)
        self._index = {x: i for i, x in enumerate(self._elems)}
        if len(self._index) != n:
            raise UsageError(f"{kind}: duplicate carrier elements")
        self._encode = encode
        self._decode = decode
        e = self._elems
        self._leq = [[bool(leq(x, y)) for y in e] for x in e]
        self._mul = [[self._index[mul(y, x)] for x in e] for y in e]
        self._unit = self._index[unit]
        self._join = [[self._lub((i, j)) for j in range(n)] for i in range(n)]
        self._meet = [[self._glb((i, j)) for j in range(n)] for i in range(n)]
        self._bottom = self._lub(())
        self._top = self._glb(())
        self._rext, self._rlift = self._residual_tables()

    @property
    def key(self) -> tuple:
        return (self.kind,) + self._params

    def spec(self) -> dict:
        return {"kind": self.kind, **dict(self._params)}

    def _lub(self, idxs: Iterable[int]) -> int:
        idxs = tuple(idxs)
        n = len(self._elems)
        ub = [u for u in range(n) if all(self._leq[i][u] for i in idxs)]
        least = [u for u in ub if all(self._leq[u][v] for v in ub)]
        if len(least) != 1:
            raise UsageError(f"{self.kind}: carrier is not a lattice")
        return least[0]

    def _glb(self, idxs: Iterable[int]) -> int:
        idxs = tuple(idxs)
        n = len(self._elems)
        lb = [u for u in range(n) if all(self._leq[u][i] for i in idxs)]
        greatest = [u for u in lb if all(self._leq[v][u] for v in lb)]
        if len(greatest) != 1:
            raise UsageError(f"{self.kind}: carrier is not a lattice")
        return greatest[0]

    def _residual_tables(self):
        n = len(self._elems)
        leq, mul, join = self._leq, self._mul, self._join
        # rext[z][x] joins every y with y∘x ⪯ z; rlift[y][z] joins every such x
        rext = [[self._bottom] * n for _ in range(n)]
        rlift = [[self._bottom] * n for _ in range(n)]
        for y in range(n):
            for x in range(n):
                m = mul[y][x]
                for z in range(n):
                    if leq[m][z]:
                        rext[z][x] = join[rext[z][x]][y]
                        rlift[y][z] = join[rlift[y][z]][x]
        for z in range(n):
            for x in range(n):
                if not leq[mul[rext[z][x]][x]][z]:
                    raise UsageError(f"{self.kind}: multiplication does not preserve joins")
        for y in range(n):
            for z in range(n):
                if not leq[mul[y][rlift[y][z]]][z]:
                    raise UsageError(f"{self.kind}: multiplication does not preserve joins")
        return rext, rlift

    def _i(self, x) -> int:
        try:
            i = self._index[x]
        except (KeyError, TypeError):
            raise DomainError(f"{x!r} is not in the carrier of {self!r}") from None
        if type(x) is not type(self._elems[i]):
            raise DomainError(f"{x!r} is not in the carrier of {self!r}")
        return i

    def check(self, x):
        return self._elems[self._i(x)]

    def carrier(self) -> tuple:
        return self._elems

    enumerate_carrier = carrier

    def index(self, x) -> int:
        return self._i(x)

    def element(self, i: int):
        return self._elems[i]

    def sort_key(self, x):
        return self._i(x)

    @property
    def unit(self):
        return self._elems[self._unit]

    @property
    def bottom(self):
        return self._elems[self._bottom]

    @property
    def top(self):
        return self._elems[self._top]

    def leq(self, x, y) -> bool:
        return self._leq[self._i(x)][self._i(y)]

    def join(self, xs: Iterable) -> Any:
        acc = self._bottom
        for x in xs:
            acc = self._join[acc][self._i(x)]
        return self._elems[acc]

    def meet(self, xs: Iterable) -> Any:
        acc = self._top
        for x in xs:
            acc = self._meet[acc][self._i(x)]
        return self._elems[acc]

    def mul(self, y, x):
        return self._elems[self._mul[self._i(y)][self._i(x)]]

    def rext(self, z, x):
        return self._elems[self._rext[self._i(z)][self._i(x)]]

    def rlift(self, y, z):
        return self._elems[self._rlift[self._i(y)][self._i(z)]]

    def encode(self, x):
        return self._encode(self.check(x))

    def decode(self, obj):
        try:
            x = self._decode(obj)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"cannot decode {obj!r} as an element of {self!r}: {exc}") from None
        return self.check(x)


def bool2() -> FiniteQuantale:
    """Truth values ordered by entailment, multiplication is conjunction."""

    def decode(obj):
        if not isinstance(obj, bool):
            raise TypeError("expected a boolean")
        return obj

    return FiniteQuantale(
        "bool2",
        (),
        [False, True],
        leq=lambda x, y: (not x) or y,
        mul=lambda y, x: y and x,
        unit=True,
        encode=bool,
        decode=decode,
    )


def chain_trop(n: int) -> FiniteQuantale:
    """``{0, ..., n}`` under the reversed order with addition truncated at ``n``.

    ``n`` plays the role of ∞; this is the finite stand-in for the Lawvere
    quantale.  The canonical carrier order is ⪯-ascending, i.e. ``[n, ..., 0]``.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise UsageError(f"chain_trop needs an integer n >= 1, got {n!r}")

    def decode(obj):
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise TypeError("expected an integer")
        return obj

    return FiniteQuantale(
        "chain_trop",
        (("n", n),),
        list(range(n, -1, -1)),
        leq=lambda x, y: x >= y,
        mul=lambda y, x: min(x + y, n),
        unit=0,
        encode=int,
        decode=decode,
    )


def _subsets(items: Sequence) -> list[frozenset]:
    # by size, then lexicographically: a linear extension of inclusion
    out = []
    for k in range(len(items) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(items, k))
    return out


def free_monoid(table: Sequence[Sequence[int]]) -> FiniteQuantale:
    """Powerset of a finite monoid given by its multiplication table.

    ``table[a][b]`` is the product ``a·b``; ``A·B = {a·b | a ∈ A, b ∈ B}``.
    """
    table = tuple(tuple(row) for row in table)
    m = len(table)
    if m == 0 or any(len(row) != m for row in table):
        raise UsageError("monoid table must be a non-empty square array")
    if any(isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < m for row in table for v in row):
        raise UsageError("monoid table entries must be element indices")
    for a, b, c in itertools.product(range(m), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise UsageError(f"monoid table is not associative at {(a, b, c)}")
    units = [e for e in range(m) if all(table[e][a] == a == table[a][e] for a in range(m))]
    if not units:
        raise UsageError("monoid table has no unit")

    def decode(obj):
        if not isinstance(obj, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in obj):
            raise TypeError("expected a list of element indices")
        return frozenset(obj)

    return FiniteQuantale(
        "free_monoid",
        (("table", table),),
        _subsets(range(m)),
        leq=lambda x, y: x <= y,
        mul=lambda y, x: frozenset(table[a][b] for a in y for b in x),
        unit=frozenset([units[0]]),
        encode=lambda x: sorted(x),
        decode=decode,
    )


def relations(size: int) -> FiniteQuantale:
    """Binary relations on ``{0, ..., size-1}`` under inclusion.

    ``mul(r, s)`` is the composite "first ``s``, then ``r``", matching the
    categorical reading ``r∘s``; the unit is the diagonal.
    """
    if isinstance(size, bool) or not isinstance(size, int) or size < 0:
        raise UsageError(f"relations needs a non-negative integer size, got {size!r}")
    pairs = list(itertools.product(range(size), repeat=2))

    def compose(r, s):
        return frozenset((a, c) for (a, b) in s for (b2, c) in r if b == b2)

    def decode(obj):
        if not isinstance(obj, list):
            raise TypeError("expected a list of pairs")
        out = set()
        for p in obj:
            if not isinstance(p, list) or len(p) != 2:
                raise TypeError("expected pairs [a, b]")
            out.add(tuple(p))
        return frozenset(out)

    return FiniteQuantale(
        "relations",
        (("size", size),),
        _subsets(pairs),
        leq=lambda x, y: x <= y,
        mul=compose,
        unit=frozenset((a, a) for a in range(size)),
        encode=lambda x: [list(p) for p in sorted(x)],
        decode=decode,
    )


class _HalfLine(Quantale):
    """``[0, ∞]`` with exact rationals, ordered by ``≥`` (so ∞ is the bottom)."""

    unit = Fraction(0)
    bottom = INF
    top = Fraction(0)

    def check(self, x):
        t = type(x)
        if t is Fraction:
            if x.numerator < 0:
                raise DomainError(f"{x!r} is negative")
            return x
        if t is float and x == INF:
            return INF
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise DomainError(f"{x!r} is not in the carrier of {self!r}")
        if x < 0:
            raise DomainError(f"{x!r} is negative")
        return Fraction(x)

    def sort_key(self, x):
        # ⪯-ascending: ∞ first, then decreasing magnitude
        x = self.check(x)
        return (0, 0) if x == INF else (1, -x)

    def leq(self, x, y) -> bool:
        return self.check(x) >= self.check(y)

    def join(self, xs: Iterable):
        return min((self.check(x) for x in xs), default=INF)

    def meet(self, xs: Iterable):
        return max((self.check(x) for x in xs), default=Fraction(0))

    def encode(self, x):
        x = self.check(x)
        if x == INF:
            return "inf"
        return {"num": x.numerator, "den": x.denominator}

    def decode(self, obj):
        if obj == "inf":
            return INF
        if isinstance(obj, dict) and set(obj) == {"num", "den"}:
            num, den = obj["num"], obj["den"]
            if all(isinstance(v, int) and not isinstance(v, bool) for v in (num, den)) and den > 0:
                return self.check(Fraction(num, den))
        elif isinstance(obj, int) and not isinstance(obj, bool):
            return self.check(obj)
        raise DomainError(f"cannot decode {obj!r} as an element of {self!r}")


class LawvereQuantale(_HalfLine):
    """``([0, ∞], ≥, 0, +)``; residuals are truncated subtraction."""

    kind = "lawvere_rat"

    def mul(self, y, x):
        y, x = self.check(y), self.check(x)
        if x == INF or y == INF:
            return INF
        return y + x

    def rext(self, z, x):
        z, x = self.check(z), self.check(x)
        if x == INF:
            return Fraction(0)
        if z == INF:
            return INF
        return max(z - x, Fraction(0))

    def rlift(self, y, z):
        return self.rext(z, y)


class MaxQuantale(_HalfLine):
    """``([0, ∞], ≥, 0, max)``, the base for generalised ultrametrics."""

    kind = "max_ext"

    def mul(self, y, x):
        return max(self.check(y), self.check(x))

    def rext(self, z, x):
        z, x = self.check(z), self.check(x)
        return Fraction(0) if x >= z else z

    def rlift(self, y, z):
        return self.rext(z, y)


def lawvere_rat() -> LawvereQuantale:
    return LawvereQuantale()


def max_ext() -> MaxQuantale:
    return MaxQuantale()


def from_spec(spec: dict) -> Quantale:
    """Build a quantale from its JSON selection form."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise UsageError(f"quantale spec must be an object with a 'kind': {spec!r}")
    kind = spec["kind"]
    extra = set(spec) - {"kind"}
    if kind == "bool2" and not extra:
        return bool2()
    if kind == "chain_trop" and extra == {"n"}:
        return chain_trop(spec["n"])
    if kind == "lawvere_rat" and not extra:
        return lawvere_rat()
    if kind == "max_ext" and not extra:
        return max_ext()
    if kind == "free_monoid" and extra == {"table"}:
        return free_monoid(spec["table"])
    if kind == "relations" and extra == {"size"}:
        return relations(spec["size"])
    raise UsageError(f"unknown quantale spec {spec!r}")
