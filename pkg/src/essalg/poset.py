"""Finite posets on {1,...,n}: validation, Birkhoff duality, automorphisms.

Elements are the integers 1..n throughout.  The order is kept as a dense
boolean matrix; all enumeration orders (downsets, antichains, automorphisms)
are canonical so that repeated runs produce identical output.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class PosetError(ValueError):
    """Raised when an input fails a partial-order axiom."""


@dataclass(frozen=True)
class Poset:
    """Partial order on {1,...,n}.  ``leq[i-1][j-1]`` holds iff i <= j."""

    n: int
    leq: tuple  # tuple of n tuples of n bools

    def le(self, i: int, j: int) -> bool:
        return self.leq[i - 1][j - 1]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i - 1][j - 1]

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    def strictly_below(self, i: int) -> tuple:
        return tuple(j for j in self.elements if self.lt(j, i))

    def below_eq(self, i: int) -> tuple:
        return tuple(j for j in self.elements if self.le(j, i))

    def strictly_above(self, i: int) -> tuple:
        return tuple(j for j in self.elements if self.lt(i, j))

    def comparable(self, i: int, j: int) -> bool:
        return self.le(i, j) or self.le(j, i)

    def strict_pairs(self) -> list:
        """All pairs (i, j) with i < j in the order, sorted."""
        return [(i, j) for i in self.elements for j in self.elements if self.lt(i, j)]

    def linear_extension(self) -> list:
        """Least-label-first topological order of the elements."""
        remaining = set(self.elements)
        out = []
        while remaining:
            i = min(x for x in remaining
                    if all(j not in remaining for j in self.strictly_below(x)))
            out.append(i)
            remaining.remove(i)
        return out

    def is_downset(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(j in s for i in s for j in self.strictly_below(i))

    def induced(self, subset: Sequence[int]) -> "Poset":
        """Subposet on ``sorted(subset)`` relabelled to 1..k."""
        labels = sorted(set(subset))
        k = len(labels)
        leq = tuple(tuple(self.le(labels[a], labels[b]) for b in range(k))
                    for a in range(k))
        return Poset(k, leq)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "pairs": self.strict_pairs()})

    def __repr__(self):
        return f"Poset(n={self.n}, pairs={self.strict_pairs()})"


# ---------------------------------------------------------------------------
# construction


def validate_poset(matrix: Sequence[Sequence[bool]]) -> Poset:
    """Build a Poset from an n x n matrix, checking the order axioms.

    The first violated axiom is reported with a witness pair.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise PosetError("matrix is not square")
    m = tuple(tuple(bool(v) for v in row) for row in matrix)
    for i in range(n):
        if not m[i][i]:
            raise PosetError(f"reflexivity fails at element {i + 1}")
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j] and m[j][i]:
                raise PosetError(f"antisymmetry fails at pair ({i + 1},{j + 1})")
    for i in range(n):
        for j in range(n):
            if m[i][j]:
                for k in range(n):
                    if m[j][k] and not m[i][k]:
                        raise PosetError(
                            f"transitivity fails: {i + 1}<={j + 1}<={k + 1} "
                            f"but not {i + 1}<={k + 1}")
    return Poset(n, m)


def poset_from_pairs(n: int, pairs: Iterable[Sequence[int]]) -> Poset:
    """Reflexive-transitive closure of the given order pairs on {1..n}.

    Raises PosetError if the closure violates antisymmetry (a cycle).
    """
    if n < 0:
        raise PosetError("negative element count")
    m = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise PosetError(f"pair ({i},{j}) out of range 1..{n}")
        m[i - 1][j - 1] = True
    # Floyd-Warshall closure
    for k in range(n):
        for i in range(n):
            if m[i][k]:
                for j in range(n):
                    if m[k][j]:
                        m[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] and m[j][i]:
                raise PosetError(f"antisymmetry fails at pair ({i + 1},{j + 1})")
    return Poset(n, tuple(tuple(row) for row in m))


def load_poset(text: str) -> Poset:
    data = json.loads(text)
    return poset_from_pairs(data["n"], data.get("pairs", []))


def chain(n: int) -> Poset:
    return poset_from_pairs(n, [(i, i + 1) for i in range(1, n)])


def discrete(n: int) -> Poset:
    return poset_from_pairs(n, [])


def star(n: int) -> Poset:
    """1..n-1 pairwise incomparable, all below the top element n."""
    return poset_from_pairs(n, [(i, n) for i in range(1, n)])


def reverse(p: Poset) -> Poset:
    return Poset(p.n, tuple(tuple(p.leq[j][i] for j in range(p.n))
                            for i in range(p.n)))


def all_posets(n: int) -> list:
    """All labelled posets on {1..n}, built by adding element n to each
    poset on {1..n-1} with a compatible (downset, upset) pair."""
    if n == 0:
        return [Poset(0, ())]
    out = []
    for q in all_posets(n - 1):
        downs = downsets(q)
        ups = downsets(reverse(q))  # upward-closed subsets of q
        for d in downs:
            for u in ups:
                ds, us = set(d), set(u)
                if ds & us:
                    continue
                if not all(q.lt(x, y) for x in ds for y in us):
                    continue
                pairs = q.strict_pairs()
                pairs += [(x, n) for x in ds] + [(n, y) for y in us]
                out.append(poset_from_pairs(n, pairs))
    return out


# ---------------------------------------------------------------------------
# downsets, antichains, Birkhoff duality


def downsets(p: Poset) -> list:
    """All downward closed subsets, sorted by size then lexicographically."""
    out = []
    for bits in itertools.product([False, True], repeat=p.n):
        s = tuple(i for i in p.elements if bits[i - 1])
        if all(j in s for i in s for j in p.strictly_below(i)):
            out.append(s)
    out.sort(key=lambda s: (len(s), s))
    return out


def antichains(p: Poset) -> list:
    """All antichains, sorted by size then lexicographically."""
    out = []
    for bits in itertools.product([False, True], repeat=p.n):
        s = tuple(i for i in p.elements if bits[i - 1])
        if all(not p.comparable(a, b) for a, b in itertools.combinations(s, 2)):
            out.append(s)
    out.sort(key=lambda s: (len(s), s))
    return out


class LatticeError(ValueError):
    """Raised when a poset fails to be a lattice."""


@dataclass(frozen=True)
class Lattice:
    """Finite lattice: a poset with verified meet and join tables."""

    poset: Poset
    meet: tuple  # n x n tables of 1-based elements
    join: tuple
    distributive: bool
    labels: tuple = ()  # optional descriptive label per element

    @property
    def n(self) -> int:
        return self.poset.n

    def bottom(self) -> int:
        b = self.meet[0][0]
        for x in self.poset.elements:
            b = self.meet[b - 1][x - 1]
        return b

    def lower_covers(self, x: int) -> list:
        p = self.poset
        below = [y for y in p.elements if p.lt(y, x)]
        return [y for y in below if not any(p.lt(y, z) and p.lt(z, x) for z in below)]


def lattice_from_poset(p: Poset, labels: tuple = ()) -> Lattice:
    """Compute meet/join tables; raise LatticeError if some pair has no
    unique infimum or supremum."""
    n = p.n
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in p.elements:
        for b in p.elements:
            lower = [c for c in p.elements if p.le(c, a) and p.le(c, b)]
            glb = [c for c in lower if all(p.le(d, c) for d in lower)]
            upper = [c for c in p.elements if p.le(a, c) and p.le(b, c)]
            lub = [c for c in upper if all(p.le(c, d) for d in upper)]
            if len(glb) != 1 or len(lub) != 1:
                raise LatticeError(f"no meet/join for pair ({a},{b})")
            meet[a - 1][b - 1] = glb[0]
            join[a - 1][b - 1] = lub[0]
    dist = all(
        meet[a - 1][join[b - 1][c - 1] - 1]
        == join[meet[a - 1][b - 1] - 1][meet[a - 1][c - 1] - 1]
        for a in p.elements for b in p.elements for c in p.elements)
    return Lattice(p, tuple(tuple(r) for r in meet), tuple(tuple(r) for r in join),
                   dist, labels)


def j_lattice(x: Poset) -> Lattice:
    """Lattice of antichains of x: Y1 <= Y2 iff every member of Y1 lies below
    some member of Y2.  Always distributive."""
    ac = antichains(x)
    k = len(ac)
    leq = tuple(tuple(
        all(any(x.le(y1, y2) for y2 in ac[b]) for y1 in ac[a])
        for b in range(k)) for a in range(k))
    lat = lattice_from_poset(Poset(k, leq), labels=tuple(ac))
    if not lat.distributive:
        raise LatticeError("antichain lattice unexpectedly non-distributive")
    return lat


def ir(lat: Lattice) -> Lattice:
    """Subposet of join-irreducible elements (exactly one lower cover).

    Returned as a Lattice-free structure: a Poset plus the original labels,
    packed as (poset, labels)."""
    p = lat.poset
    irr = [x for x in p.elements if len(lat.lower_covers(x)) == 1]
    sub = p.induced(irr)
    labels = tuple(lat.labels[x - 1] for x in irr) if lat.labels else tuple(irr)
    return sub, labels


def poset_isomorphism(p: Poset, q: Poset) -> Optional[dict]:
    """An order isomorphism p -> q as a dict, or None.  Backtracking over
    degree invariants; deterministic (least extension first)."""
    if p.n != q.n:
        return None

    def inv(r: Poset, x: int):
        return (len(r.strictly_below(x)), len(r.strictly_above(x)))

    pinv = {x: inv(p, x) for x in p.elements}
    qinv = {x: inv(q, x) for x in q.elements}
    if sorted(pinv.values()) != sorted(qinv.values()):
        return None

    order = sorted(p.elements)
    mapping: dict = {}
    used = set()

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        a = order[idx]
        for b in q.elements:
            if b in used or pinv[a] != qinv[b]:
                continue
            if any((p.le(a, c) != q.le(b, mapping[c]))
                   or (p.le(c, a) != q.le(mapping[c], b)) for c in mapping):
                continue
            mapping[a] = b
            used.add(b)
            if extend(idx + 1):
                return True
            del mapping[a]
            used.remove(b)
        return False

    return dict(mapping) if extend(0) else None


def birkhoff_roundtrip(x: Poset):
    """Witnesses for X ~ Ir(J(X)) and J(Ir(J(X))) ~ J(X).

    Returns (iso_x_to_irjx, iso_jirjx_to_jx); a None entry signals an
    implementation bug, not a mathematical possibility."""
    jx = j_lattice(x)
    irjx, _ = ir(jx)
    w1 = poset_isomorphism(x, irjx)
    w2 = lattice_isomorphic(j_lattice(irjx), jx)
    return w1, w2


# ---------------------------------------------------------------------------
# predicates and symmetry


def structural_predicates(p: Poset) -> dict:
    is_chain = all(p.comparable(a, b)
                   for a, b in itertools.combinations(p.elements, 2))
    is_discrete = all(not p.lt(a, b) and not p.lt(b, a)
                      for a, b in itertools.combinations(p.elements, 2))
    is_depth1 = all(len(p.strictly_above(a)) <= 1 for a in p.elements)
    return {"is_chain": is_chain, "is_discrete": is_discrete,
            "is_depth1_coforest": is_depth1}


def automorphisms(p: Poset) -> list:
    """All order automorphisms as tuples sigma with sigma[i-1] = image of i,
    in lexicographic order."""
    out = []
    for perm in itertools.permutations(p.elements):
        if all(p.le(i, j) == p.le(perm[i - 1], perm[j - 1])
               for i in p.elements for j in p.elements):
            out.append(perm)
    return out


def minimal_incomparable_pair(p: Poset) -> Optional[tuple]:
    """Lexicographically least pair (i, j) such that every (i', j') with
    i' <= i, j' <= j is comparable except (i, j) itself; None iff chain."""
    for i in p.elements:
        for j in p.elements:
            if p.comparable(i, j):
                continue
            ok = all(p.comparable(a, b) or (a, b) == (i, j)
                     for a in p.below_eq(i) for b in p.below_eq(j))
            if ok:
                return (i, j)
    return None


def lattice_isomorphic(l1: Lattice, l2: Lattice) -> Optional[dict]:
    """A meet/join preserving bijection, or None.  Backtracks over
    (height, degree) invariants."""
    if l1.n != l2.n:
        return None
    p1, p2 = l1.poset, l2.poset

    def inv(lat: Lattice, x: int):
        p = lat.poset
        return (len(p.strictly_below(x)), len(p.strictly_above(x)),
                len(lat.lower_covers(x)))

    i1 = {x: inv(l1, x) for x in p1.elements}
    i2 = {x: inv(l2, x) for x in p2.elements}
    if sorted(i1.values()) != sorted(i2.values()):
        return None

    order = sorted(p1.elements, key=lambda x: (i1[x], x))
    mapping: dict = {}
    used = set()

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        a = order[idx]
        for b in p2.elements:
            if b in used or i1[a] != i2[b]:
                continue
            good = True
            for c, fc in mapping.items():
                if l1.meet[a - 1][c - 1] in mapping and \
                        mapping[l1.meet[a - 1][c - 1]] != l2.meet[b - 1][fc - 1]:
                    good = False
                    break
                if l1.join[a - 1][c - 1] in mapping and \
                        mapping[l1.join[a - 1][c - 1]] != l2.join[b - 1][fc - 1]:
                    good = False
                    break
                if p1.le(a, c) != p2.le(b, fc) or p1.le(c, a) != p2.le(fc, b):
                    good = False
                    break
            if not good:
                continue
            mapping[a] = b
            used.add(b)
            if extend(idx + 1):
                return True
            del mapping[a]
            used.remove(b)
        return False

    if not extend(0):
        return None
    # final full table check
    for a in p1.elements:
        for b in p1.elements:
            if mapping[l1.meet[a - 1][b - 1]] != \
                    l2.meet[mapping[a] - 1][mapping[b] - 1]:
                return None
            if mapping[l1.join[a - 1][b - 1]] != \
                    l2.join[mapping[a] - 1][mapping[b] - 1]:
                return None
    return mapping
