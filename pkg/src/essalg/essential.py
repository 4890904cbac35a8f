"""The essential algebra E_P = ({0,1}^n, Pol(R_<=)).

Domain elements are integers 0..(2^l)^n - 1 in base q = 2^l with component 1
the least significant digit.  Operations of the clone are exactly those whose
i-th output component reads only input components i' <= i; DepTermOp stores
that normal form directly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .poset import Poset, PosetError, validate_poset
from .relalg import (EquivPartition, OpTable, ProductRelation,
                     discrete_partition, encode_tuple, enumerate_partitions)


class BoundError(RuntimeError):
    pass


def component(x: int, i: int, q: int) -> int:
    """Digit i (1-based) of encoded domain element x."""
    return (x // q ** (i - 1)) % q


def set_component(x: int, i: int, v: int, q: int) -> int:
    return x + (v - component(x, i, q)) * q ** (i - 1)


def project(x: int, coords: Sequence[int], q: int) -> tuple:
    """Tuple of digits of x at the given (sorted) coordinates."""
    return tuple(component(x, i, q) for i in coords)


@dataclass(frozen=True)
class DepTermOp:
    """m-ary clone member: per component i a table over (prod_{i'<=i} values)^m.

    tables[i-1] maps the key built from the arguments' digits at coordinates
    below_eq(i) (all coords of argument 1, then argument 2, ...) to component i
    of the output.
    """

    poset: Poset
    l: int
    arity: int
    tables: tuple  # n dict-free flat tuples

    @property
    def q(self) -> int:
        return 1 << self.l

    def key_of(self, i: int, args: Sequence[int]) -> int:
        coords = self.poset.below_eq(i)
        digits = [d for x in args for d in project(x, coords, self.q)]
        return encode_tuple(digits, self.q)

    def apply(self, args: Sequence[int]) -> int:
        assert len(args) == self.arity
        out = 0
        for i in self.poset.elements:
            out += self.tables[i - 1][self.key_of(i, args)] * self.q ** (i - 1)
        return out

    def as_optable(self) -> OpTable:
        d = self.q ** self.poset.n
        table = tuple(self.apply(decode_args(code, d, self.arity))
                      for code in range(d ** self.arity))
        return OpTable(self.arity, d, table)

    def to_json(self) -> str:
        coords = [list(self.poset.below_eq(i)) for i in self.poset.elements]
        return json.dumps({
            "poset": {"n": self.poset.n, "pairs": self.poset.strict_pairs()},
            "l": self.l, "arity": self.arity,
            "radix": [[self.q] * (len(c) * self.arity) for c in coords],
            "tables": [list(t) for t in self.tables]})


def decode_args(code: int, d: int, m: int) -> tuple:
    out = []
    for _ in range(m):
        out.append(code % d)
        code //= d
    return tuple(out)


def dep_term_from_json(text: str) -> DepTermOp:
    from .poset import poset_from_pairs
    data = json.loads(text)
    p = poset_from_pairs(data["poset"]["n"], data["poset"]["pairs"])
    return DepTermOp(p, data["l"], data["arity"],
                     tuple(tuple(t) for t in data["tables"]))


@dataclass(frozen=True)
class EssentialAlgebra:
    poset: Poset
    l: int = 1

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("power l must be >= 1")

    @property
    def q(self) -> int:
        return 1 << self.l

    @property
    def domain_size(self) -> int:
        return self.q ** self.poset.n

    def elements(self) -> range:
        return range(self.domain_size)


# ---------------------------------------------------------------------------
# relation generation


def build_R_leq(P: Poset, m: int, bound: int = 4) -> list:
    """All product relations prod Delta_{E_i} with i1 <= i2 => E_{i1} coarser
    than E_{i2}, in canonical (per-part restricted-growth string) order."""
    if m > bound:
        raise BoundError(f"arity {m} exceeds bound {bound}")
    parts = enumerate_partitions(m)
    out = []
    for choice in itertools.product(range(len(parts)), repeat=P.n):
        ok = all(parts[choice[i2 - 1]].refines(parts[choice[i1 - 1]])
                 for i1 in P.elements for i2 in P.elements if P.lt(i1, i2))
        if ok:
            out.append(ProductRelation(P.n, m, tuple(parts[c] for c in choice)))
    out.sort(key=lambda r: r.key())
    return out


def delta_upper(P: Poset, i0: int, j1: int, j2: int, m: int) -> ProductRelation:
    """Product relation forcing x_{i j1} = x_{i j2} for all i <= i0."""
    if not (1 <= i0 <= P.n and 1 <= j1 <= m and 1 <= j2 <= m):
        raise IndexError("delta_upper index out of range")
    # blocks {j1,j2} merged, rest singletons
    block_of = list(range(1, m + 1))
    rep = min(j1, j2)
    block_of[j1 - 1] = rep
    block_of[j2 - 1] = rep
    merged = EquivPartition(m, tuple(block_of))
    parts = tuple(merged if P.le(i, i0) else discrete_partition(m)
                  for i in P.elements)
    # coordinates not below i0 are unconstrained: full freedom means the
    # discrete partition (no equalities forced)
    return ProductRelation(P.n, m, parts)


def recover_order(relations: Sequence[ProductRelation], n: int) -> Poset:
    """i1 <= i2 iff every listed relation with part i1 discrete also has part
    i2 discrete; validated as a partial order."""
    rels = [r for r in relations if r.m == 2]
    if not rels:
        raise PosetError("no binary relations to recover from")
    leq = [[True] * n for _ in range(n)]
    for i1 in range(1, n + 1):
        for i2 in range(1, n + 1):
            for r in rels:
                if r.parts[i1 - 1].is_discrete() and \
                        not r.parts[i2 - 1].is_discrete():
                    leq[i1 - 1][i2 - 1] = False
                    break
    return validate_poset(leq)


# ---------------------------------------------------------------------------
# clone membership and generators


def is_clone_member(f: OpTable, P: Poset, l: int) -> Optional[DepTermOp]:
    """Dependency-structured form of f, or None if some output component
    depends on a coordinate not below it."""
    q = 1 << l
    d = q ** P.n
    if f.domain != d:
        raise ValueError("operation domain does not match (2^l)^n")
    m = f.arity
    tables = []
    for i in P.elements:
        coords = P.below_eq(i)
        size = q ** (len(coords) * m)
        table = [-1] * size
        for code in range(d ** m):
            args = decode_args(code, d, m)
            key = encode_tuple([dig for x in args
                                for dig in project(x, coords, q)], q)
            v = component(f.table[code], i, q)
            if table[key] == -1:
                table[key] = v
            elif table[key] != v:
                return None
        tables.append(tuple(table))
    return DepTermOp(P, l, m, tuple(tables))


def canonical_generators(P: Poset, l: int = 1) -> tuple:
    """The unary retractions e_1..e_n (keep coordinate i, zero the rest) and
    the n-ary diagonal d (component i taken from argument i)."""
    q = 1 << l
    es = []
    for i in P.elements:
        coords = P.below_eq(i)
        pos = coords.index(i)
        table = []
        for key in range(q ** len(coords)):
            digits = decode_args(key, q, len(coords))
            table.append(digits[pos])
        tables = []
        for ii in P.elements:
            cs = P.below_eq(ii)
            if ii == i:
                tables.append(tuple(table))
            else:
                tables.append(tuple(0 for _ in range(q ** len(cs))))
        es.append(DepTermOp(P, l, 1, tuple(tables)))
    # diagonal: n-ary, component i of output = component i of argument i
    dtables = []
    for i in P.elements:
        coords = P.below_eq(i)
        k = len(coords)
        pos = coords.index(i)
        size = q ** (k * P.n)
        table = []
        for key in range(size):
            digits = decode_args(key, q, k * P.n)
            table.append(digits[(i - 1) * k + pos])
        dtables.append(tuple(table))
    diag = DepTermOp(P, l, P.n, tuple(dtables))
    return tuple(es), diag


def shift_generators(P: Poset, l: int = 1) -> list:
    """Unary maps s_{i,i'} for i' < i: component i copies coordinate i',
    all other components 0.  Without these, no generator lets component i
    read a strictly-below coordinate, and the generated clone is a proper
    subclone of Pol(R_<=) whenever P is non-discrete."""
    q = 1 << l
    out = []
    for i in P.elements:
        for ip in P.strictly_below(i):
            coords = P.below_eq(i)
            pos = coords.index(ip)
            tables = []
            for j in P.elements:
                cs = P.below_eq(j)
                if j == i:
                    tables.append(tuple(
                        decode_args(key, q, len(coords))[pos]
                        for key in range(q ** len(coords))))
                else:
                    tables.append(tuple(0 for _ in range(q ** len(cs))))
            out.append(DepTermOp(P, l, 1, tuple(tables)))
    return out


def clone_generators(P: Poset, l: int = 1) -> list:
    """A generating set of Pol(R_<=): the retractions e_i, the diagonal d,
    componentwise NAND, and the shift maps s_{i,i'}."""
    es, diag = canonical_generators(P, l)
    return list(es) + [diag, componentwise_nand(P, l)] + shift_generators(P, l)


def componentwise_nand(P: Poset, l: int = 1) -> DepTermOp:
    """Binary operation applying bitwise NAND on every component."""
    q = 1 << l
    mask = q - 1
    tables = []
    for i in P.elements:
        coords = P.below_eq(i)
        k = len(coords)
        pos = coords.index(i)
        table = []
        for key in range(q ** (2 * k)):
            digits = decode_args(key, q, 2 * k)
            a, b = digits[pos], digits[k + pos]
            table.append((~(a & b)) & mask)
        tables.append(tuple(table))
    return DepTermOp(P, l, 2, tuple(tables))


def essentiality_check(P: Poset) -> dict:
    """Verify d(e_1(x),...,e_n(x)) = x and e_i(d(e_1(x_1),...,e_n(x_n))) =
    e_i(x_i) over the whole l=1 domain, plus irredundance of the axis cover."""
    es, diag = canonical_generators(P, 1)
    alg = EssentialAlgebra(P, 1)
    failures = []
    for x in alg.elements():
        if diag.apply([e.apply([x]) for e in es]) != x:
            failures.append(("reassembly", x))
    for xs in itertools.product(alg.elements(), repeat=P.n):
        if P.n == 0:
            break
        y = diag.apply([es[i].apply([xs[i]]) for i in range(P.n)])
        for i in range(P.n):
            if es[i].apply([y]) != es[i].apply([xs[i]]):
                failures.append(("component", i + 1, xs))
    report = {"poset": P, "identities_pass": not failures, "failures": failures}
    from .nbhd import axis_cover_report
    report["cover"] = axis_cover_report(P)
    report["pass"] = report["identities_pass"] and report["cover"]["pass"]
    return report
