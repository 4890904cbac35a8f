"""Relations over small finite domains.

Two representations coexist: ProductRelation (symbolic, n equivalence
partitions — scales with n) and DenseRelation (explicit tuple sets — bounded
domain, used for brute-force cross-checks).  Tuples are encoded as integers in
mixed radix with component 1 least significant, and tuple sets are kept sorted
for deterministic iteration.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_TUPLE_BUDGET = 1 << 20


class BudgetError(RuntimeError):
    """A dense expansion would exceed the configured tuple budget."""


# ---------------------------------------------------------------------------
# equivalence partitions


@dataclass(frozen=True)
class EquivPartition:
    """Partition of {1,...,m}; block_of[j-1] is the least member of j's block."""

    m: int
    block_of: tuple

    def __post_init__(self):
        b = self.block_of
        assert len(b) == self.m
        for j in range(self.m):
            if not (1 <= b[j] <= j + 1) or b[b[j] - 1] != b[j]:
                raise ValueError(f"invalid block assignment at position {j + 1}")

    def same_block(self, j1: int, j2: int) -> bool:
        return self.block_of[j1 - 1] == self.block_of[j2 - 1]

    def blocks(self) -> list:
        out: dict = {}
        for j in range(1, self.m + 1):
            out.setdefault(self.block_of[j - 1], []).append(j)
        return [tuple(out[k]) for k in sorted(out)]

    def rgs(self) -> tuple:
        """Restricted-growth string: block index (1-based, by first occurrence)."""
        seen: dict = {}
        out = []
        for j in range(1, self.m + 1):
            rep = self.block_of[j - 1]
            if rep not in seen:
                seen[rep] = len(seen) + 1
            out.append(seen[rep])
        return tuple(out)

    def refines(self, other: "EquivPartition") -> bool:
        """True iff every block of self lies inside a block of other."""
        return all(other.same_block(j1, j2)
                   for j1 in range(1, self.m + 1) for j2 in range(1, self.m + 1)
                   if self.same_block(j1, j2))

    def is_discrete(self) -> bool:
        return self.block_of == tuple(range(1, self.m + 1))


def partition_from_rgs(rgs: Sequence[int]) -> EquivPartition:
    m = len(rgs)
    first: dict = {}
    for j, b in enumerate(rgs, start=1):
        first.setdefault(b, j)
    return EquivPartition(m, tuple(first[b] for b in rgs))


def partition_from_blocks(m: int, blocks: Iterable[Sequence[int]]) -> EquivPartition:
    block_of = [0] * m
    for blk in blocks:
        rep = min(blk)
        for j in blk:
            block_of[j - 1] = rep
    if 0 in block_of:
        raise ValueError("blocks do not cover the ground set")
    return EquivPartition(m, tuple(block_of))


def discrete_partition(m: int) -> EquivPartition:
    return EquivPartition(m, tuple(range(1, m + 1)))


def full_partition(m: int) -> EquivPartition:
    return EquivPartition(m, tuple(1 for _ in range(m))) if m else EquivPartition(0, ())


def enumerate_partitions(m: int) -> list:
    """All partitions of {1..m} in restricted-growth-string order."""
    if m == 0:
        return [EquivPartition(0, ())]
    out = []

    def rec(rgs, mx):
        if len(rgs) == m:
            out.append(partition_from_rgs(rgs))
            return
        for b in range(1, mx + 2):
            rec(rgs + [b], max(mx, b))

    rec([1], 1)
    return out


# ---------------------------------------------------------------------------
# dense relations


def encode_tuple(t: Sequence[int], d: int) -> int:
    """Mixed-radix code, first component least significant."""
    code = 0
    for v in reversed(t):
        code = code * d + v
    return code


def decode_tuple(code: int, d: int, m: int) -> tuple:
    out = []
    for _ in range(m):
        out.append(code % d)
        code //= d
    return tuple(out)


@dataclass(frozen=True)
class DenseRelation:
    arity: int
    domain: int
    codes: tuple  # sorted encoded tuples

    def __post_init__(self):
        assert self.codes == tuple(sorted(set(self.codes)))

    def tuples(self) -> list:
        return [decode_tuple(c, self.domain, self.arity) for c in self.codes]

    def __contains__(self, t) -> bool:
        from bisect import bisect_left
        c = encode_tuple(t, self.domain)
        i = bisect_left(self.codes, c)
        return i < len(self.codes) and self.codes[i] == c

    def __len__(self):
        return len(self.codes)

    def to_json(self) -> str:
        return json.dumps({"arity": self.arity, "domain": self.domain,
                           "tuples": [list(t) for t in self.tuples()]})


def dense_from_tuples(arity: int, domain: int, tuples: Iterable[Sequence[int]]
                      ) -> DenseRelation:
    codes = set()
    for t in tuples:
        if len(t) != arity or any(not (0 <= v < domain) for v in t):
            raise ValueError(f"bad tuple {tuple(t)} for arity {arity}, domain {domain}")
        codes.add(encode_tuple(t, domain))
    return DenseRelation(arity, domain, tuple(sorted(codes)))


def load_dense(text: str) -> DenseRelation:
    data = json.loads(text)
    return dense_from_tuples(data["arity"], data["domain"], data["tuples"])


def full_dense(arity: int, domain: int) -> DenseRelation:
    return DenseRelation(arity, domain, tuple(range(domain ** arity)))


def diagonal_dense(arity: int, domain: int) -> DenseRelation:
    return dense_from_tuples(arity, domain, [(v,) * arity for v in range(domain)])


def delta_of(E: EquivPartition, d: int) -> DenseRelation:
    """All m-tuples over {0..d-1} constant on each block of E."""
    m = E.m
    tuples = [t for t in itertools.product(range(d), repeat=m)
              if all(t[j1 - 1] == t[j2 - 1]
                     for j1 in range(1, m + 1) for j2 in range(1, m + 1)
                     if E.same_block(j1, j2))]
    return dense_from_tuples(m, d, tuples)


def project_pair(r: DenseRelation, j1: int, j2: int) -> DenseRelation:
    if not (1 <= j1 <= r.arity and 1 <= j2 <= r.arity):
        raise IndexError(f"pair indices ({j1},{j2}) out of range 1..{r.arity}")
    return dense_from_tuples(2, r.domain,
                             [(t[j1 - 1], t[j2 - 1]) for t in r.tuples()])


def relational_compose(s: DenseRelation, t: DenseRelation) -> DenseRelation:
    if s.arity != 2 or t.arity != 2:
        raise ValueError("relational composition needs binary relations")
    if s.domain != t.domain:
        raise ValueError("domain mismatch")
    by_first: dict = {}
    for (b, c) in t.tuples():
        by_first.setdefault(b, []).append(c)
    out = {(a, c) for (a, b) in s.tuples() for c in by_first.get(b, ())}
    return dense_from_tuples(2, s.domain, out)


def intersect_all(rs: Sequence[DenseRelation]) -> DenseRelation:
    if not rs:
        raise ValueError("empty intersection is undefined without arity/domain")
    arity, domain = rs[0].arity, rs[0].domain
    for r in rs[1:]:
        if r.arity != arity or r.domain != domain:
            raise ValueError("arity/domain mismatch in intersection")
    codes = set(rs[0].codes)
    for r in rs[1:]:
        codes &= set(r.codes)
    return DenseRelation(arity, domain, tuple(sorted(codes)))


# ---------------------------------------------------------------------------
# product relations


@dataclass(frozen=True)
class ProductRelation:
    """m-ary relation on ({0,1}^l)^n of the form prod_i Delta_{E_i}."""

    n: int
    m: int
    parts: tuple  # n EquivPartitions of {1..m}

    def __post_init__(self):
        assert len(self.parts) == self.n
        for p in self.parts:
            if p.m != self.m:
                raise ValueError("all parts must partition the same {1..m}")

    def key(self) -> tuple:
        return tuple(p.rgs() for p in self.parts)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "m": self.m,
                           "parts": [list(p.rgs()) for p in self.parts]})


def load_product(text: str) -> ProductRelation:
    data = json.loads(text)
    return ProductRelation(data["n"], data["m"],
                           tuple(partition_from_rgs(p) for p in data["parts"]))


def product_contains(R: ProductRelation, columns: Sequence[Sequence[int]],
                     l: int) -> bool:
    """Membership of an m-tuple of domain elements (each an encoded n-tuple of
    l-bit component values) without dense expansion."""
    q = 1 << l
    for i in range(R.n):
        comp = [(x // q ** i) % q for x in columns]
        for j1 in range(1, R.m + 1):
            for j2 in range(j1 + 1, R.m + 1):
                if R.parts[i].same_block(j1, j2) and comp[j1 - 1] != comp[j2 - 1]:
                    return False
    return True


def product_expand(R: ProductRelation, l: int,
                   budget: int = DEFAULT_TUPLE_BUDGET) -> DenseRelation:
    """Dense form over domain (2^l)^n.  Component i of each domain element is
    digit i (base 2^l, component 1 least significant)."""
    q = 1 << l
    d = q ** R.n
    if d ** R.m > budget:
        raise BudgetError(
            f"dense expansion needs {d ** R.m} tuples, budget {budget}")
    # per component, group domain elements by their i-th digit pattern on blocks
    codes = []
    for cols in itertools.product(range(d), repeat=R.m):
        if product_contains(R, cols, l):
            codes.append(encode_tuple(cols, d))
    return DenseRelation(R.m, d, tuple(sorted(codes)))


def restrict_dense(r: DenseRelation, subset: Iterable[int]) -> DenseRelation:
    """r ∩ U^m for U a set of encoded domain elements."""
    u = set(subset)
    return DenseRelation(r.arity, r.domain,
                         tuple(c for c in r.codes
                               if all(v in u for v in decode_tuple(c, r.domain, r.arity))))


# ---------------------------------------------------------------------------
# invariance


@dataclass(frozen=True)
class OpTable:
    """k-ary operation on {0..d-1}; table[encode(args)] = output."""

    arity: int
    domain: int
    table: tuple

    def __post_init__(self):
        assert len(self.table) == self.domain ** self.arity

    def apply(self, args: Sequence[int]) -> int:
        return self.table[encode_tuple(args, self.domain)]


def is_invariant(r: DenseRelation, f: OpTable) -> bool:
    """True iff applying f row-wise to every k-tuple of r-tuples lands in r."""
    if f.domain != r.domain:
        raise ValueError("domain mismatch")
    codes = set(r.codes)
    tuples = r.tuples()
    d, m = r.domain, r.arity
    for rows in itertools.product(tuples, repeat=f.arity):
        img = tuple(f.apply([row[j] for row in rows]) for j in range(m))
        if encode_tuple(img, d) not in codes:
            return False
    return True
