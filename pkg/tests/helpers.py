"""Generators and independent oracles shared by the test modules.

Oracles here deliberately avoid the library's residual and matrix code: they
work directly with sets, integers and explicit loops.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from enriq.analysis import enumerate_categories
from enriq.qcategory import QCategory
from enriq.quantale import INF, Quantale, bool2, chain_trop

NAMES = "abcdefgh"


def close_category(q: Quantale, objs, rows) -> QCategory:
    """Least Q-category whose hom lies above the given matrix (path closure)."""
    n = len(objs)
    h = [list(r) for r in rows]
    for a in range(n):
        h[a][a] = q.join((h[a][a], q.unit))
    changed = True
    while changed:
        changed = False
        for a, b, c in itertools.product(range(n), repeat=3):
            v = q.join((h[a][c], q.mul(h[b][c], h[a][b])))
            if v != h[a][c]:
                h[a][c] = v
                changed = True
    return QCategory.from_rows(q, objs, h)


def random_category(q: Quantale, n: int, rng: random.Random) -> QCategory:
    carrier = q.carrier()
    rows = [[rng.choice(carrier) for _ in range(n)] for _ in range(n)]
    return close_category(q, tuple(NAMES[:n]), rows)


def small_families():
    """The exhaustive families: bool2 up to 3 objects, chain_trop(2) up to 2."""
    out = []
    for q, top in ((bool2(), 3), (chain_trop(2), 2)):
        for n in range(top + 1):
            out.extend(enumerate_categories(q, n))
    return out


def poset(elements, less_pairs) -> QCategory:
    """Poset over bool2 from its strict order (already transitive)."""
    le = {(a, a) for a in elements} | set(less_pairs)
    return QCategory.from_rows(bool2(), elements, [[(a, b) in le for b in elements] for a in elements])


def metric(objs, d) -> QCategory:
    """Lawvere space from a dict of distances; missing off-diagonal entries are ∞."""
    from enriq.quantale import lawvere_rat

    rows = [[Fraction(0) if a == b else d.get((a, b), INF) for b in objs] for a in objs]
    return QCategory.from_rows(lawvere_rat(), objs, rows)


# --- poset oracles ---------------------------------------------------------------


def dedekind_cuts(elements, le) -> list[tuple[frozenset, frozenset]]:
    """All (lower set, upper set) pairs closed under taking bounds, by subset enumeration."""
    elements = list(elements)

    def uppers(S):
        return frozenset(u for u in elements if all(le(s, u) for s in S))

    def lowers(S):
        return frozenset(l for l in elements if all(le(l, s) for s in S))

    cuts = set()
    for k in range(len(elements) + 1):
        for S in itertools.combinations(elements, k):
            U = uppers(S)
            L = lowers(U)
            cuts.add((L, U))
    return sorted(cuts, key=lambda p: (len(p[0]), sorted(p[0]), sorted(p[1])))


def is_lattice(elements, le) -> bool:
    elements = list(elements)
    for S in itertools.chain.from_iterable(itertools.combinations(elements, k) for k in range(len(elements) + 1)):
        ubs = [u for u in elements if all(le(s, u) for s in S)]
        if not [u for u in ubs if all(le(u, v) for v in ubs)]:
            return False
    return True


def all_posets(n: int):
    """Every partial order on ``n`` labelled points, as a set of strict pairs."""
    pts = NAMES[:n]
    pairs = [(a, b) for a in pts for b in pts if a != b]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        lt = {p for p, on in zip(pairs, bits) if on}
        if any((b, a) in lt for a, b in lt):
            continue
        if any((a, c) not in lt for a, b in lt for b2, c in lt if b == b2 and a != c):
            continue
        yield pts, lt


# --- relation oracles --------------------------------------------------------------


def rel_after(r: frozenset, s: frozenset) -> frozenset:
    """Relational composite: first ``s``, then ``r``."""
    return frozenset((a, c) for a, b in s for b2, c in r if b == b2)


def all_relations(size: int) -> list[frozenset]:
    pairs = list(itertools.product(range(size), repeat=2))
    return [frozenset(p for p, on in zip(pairs, bits) if on) for bits in itertools.product((0, 1), repeat=len(pairs))]


# --- functors ------------------------------------------------------------------------


def all_functors(C: QCategory, D: QCategory) -> list:
    """Every Q-functor by trying all object maps, checked with explicit loops."""
    from enriq.qcategory import QFunctor

    q = C.quantale
    out = []
    for images in itertools.product(D.objects, repeat=len(C)):
        g = dict(zip(C.objects, images))
        if all(q.leq(C(a, b), D(g[a], g[b])) for a in C.objects for b in C.objects):
            out.append(QFunctor(C, D, images))
    return out


def kan_instance(rng: random.Random):
    """A random span ``f: C -> E``, ``i: C -> D`` with ``i`` a full inclusion and ``E`` a completion."""
    from enriq.macneille import mn_construct
    from enriq.qcategory import QFunctor

    q = rng.choice([bool2(), chain_trop(2)])
    E = mn_construct(random_category(q, rng.randint(1, 3 if q.kind == "bool2" else 2), rng)).category
    D = random_category(q, rng.randint(1, 3), rng)
    keep = sorted(rng.sample(range(len(D)), rng.randint(0, len(D))))
    C = D.full_subcategory([D.objects[k] for k in keep])
    i = QFunctor(C, D, C.objects)
    f = rng.choice(all_functors(C, E))
    return f, i
