"""Neighbourhoods of E_P^[l]: membership, witnesses, enumeration, covers,
M(P), and congruence lattices.

A neighbourhood is kept as a frozenset of encoded domain elements (base
q = 2^l digits, component 1 least significant).  All enumeration output is
sorted by (size, element codes) for reproducibility.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poset import Lattice, Poset, antichains, lattice_from_poset, poset_from_pairs
from .relalg import product_expand, restrict_dense
from .essential import (DepTermOp, EssentialAlgebra, build_R_leq, component,
                        project)
from . import essential as _ess


@dataclass(frozen=True)
class Neighbourhood:
    poset: Poset
    l: int
    elements: frozenset  # encoded domain elements
    validated: bool = False

    @property
    def q(self) -> int:
        return 1 << self.l

    def tuples(self) -> list:
        from .relalg import decode_tuple
        return sorted(decode_tuple(x, self.q, self.poset.n)
                      for x in self.elements)

    def sorted_codes(self) -> tuple:
        return tuple(sorted(self.elements))

    def to_json(self) -> str:
        return json.dumps({
            "poset": {"n": self.poset.n, "pairs": self.poset.strict_pairs()},
            "l": self.l, "elements": [list(t) for t in self.tuples()]})


def load_neighbourhood(text: str) -> Neighbourhood:
    data = json.loads(text)
    p = poset_from_pairs(data["poset"]["n"], data["poset"].get("pairs", []))
    q = 1 << data["l"]
    codes = set()
    for t in data["elements"]:
        if len(t) != p.n or any(not (0 <= v < q) for v in t):
            raise ValueError(f"bad element {t}")
        codes.add(sum(v * q ** i for i, v in enumerate(t)))
    return neighbourhood(p, data["l"], codes)


class EmptySliceError(ValueError):
    pass


def slice_of(A: Neighbourhood, i: int, abar: Sequence[int]) -> set:
    """A_{i,abar}: i-th components of members extending abar on coords < i."""
    below = A.poset.strictly_below(i)
    abar = tuple(abar)
    if len(abar) != len(below):
        raise ValueError(f"partial tuple length {len(abar)} != |P_<{i}|")
    out = {component(x, i, A.q) for x in A.elements
           if project(x, below, A.q) == abar}
    if not out:
        raise EmptySliceError(f"{abar} is not in the projection of A below {i}")
    return out


def is_neighbourhood(P: Poset, l: int, elements: Iterable[int]) -> bool:
    """True iff rebuilding the set from its slices along a linear extension
    reproduces it exactly.  The rebuild fails (and the set is rejected) when
    a reachable base point has no slice: slices over incomparable coordinates
    must combine freely.  Empty sets are rejected."""
    A = set(elements)
    if not A:
        raise ValueError("neighbourhoods are nonempty")
    q = 1 << l
    below = {i: P.strictly_below(i) for i in P.elements}
    slices: dict = {}
    for i in P.elements:
        for x in A:
            key = (i, project(x, below[i], q))
            slices.setdefault(key, set()).add(component(x, i, q))
    partial = [dict()]
    for i in P.linear_extension():
        new = []
        for x in partial:
            sl = slices.get((i, tuple(x[j] for j in below[i])))
            if sl is None:
                return False
            new.extend({**x, i: v} for v in sl)
        partial = new
        # the rebuilt set can only grow from here (slices are nonempty)
        if len(partial) > len(A):
            return False
    rebuilt = {sum(v * q ** (i - 1) for i, v in x.items()) for x in partial}
    return rebuilt == A


def neighbourhood(P: Poset, l: int, elements: Iterable[int]) -> Neighbourhood:
    elems = frozenset(elements)
    if not is_neighbourhood(P, l, elems):
        raise ValueError("set fails the neighbourhood closure condition")
    return Neighbourhood(P, l, elems, validated=True)


def idempotent_witness(A: Neighbourhood) -> DepTermOp:
    """Canonical retraction onto A: component i keeps x_i when it lies in the
    slice over the (recursively corrected) prefix, else takes the least slice
    member."""
    P, q, l = A.poset, A.q, A.l
    order = P.linear_extension()
    below = {i: P.strictly_below(i) for i in P.elements}
    slices: dict = {}
    for i in P.elements:
        for x in A.elements:
            key = (i, project(x, below[i], q))
            slices.setdefault(key, set()).add(component(x, i, q))

    def retract_digits(digits: dict) -> dict:
        """digits: raw values on a down-closed coordinate set; returns the
        corrected values on the same set."""
        out: dict = {}
        for i in order:
            if i not in digits:
                continue
            prefix = tuple(out[j] for j in below[i])
            sl = slices[(i, prefix)]
            out[i] = digits[i] if digits[i] in sl else min(sl)
        return out

    tables = []
    for i in P.elements:
        coords = P.below_eq(i)
        table = []
        for key in range(q ** len(coords)):
            raw = dict(zip(coords, _ess.decode_args(key, q, len(coords))))
            table.append(retract_digits(raw)[i])
        tables.append(tuple(table))
    return DepTermOp(P, l, 1, tuple(tables))


def enumerate_neighbourhoods(P: Poset, l: int, budget: int = 1 << 22):
    """All neighbourhoods exactly once, by the downset recursion: process a
    linear extension, and at element i choose a nonempty value set for every
    base point of the strictly-below projection.  Yields in (size, codes)
    order."""
    q = 1 << l
    if q ** P.n > budget:
        raise _ess.BoundError(f"domain size {q ** P.n} exceeds budget {budget}")
    order = P.linear_extension()
    value_sets = [tuple(s) for k in range(1, q + 1)
                  for s in itertools.combinations(range(q), k)]

    def rec(idx: int, partial: list):
        # partial: list of dicts coord->value over order[:idx]
        if idx == len(order):
            codes = frozenset(sum(v * q ** (i - 1) for i, v in x.items())
                              for x in partial)
            yield codes
            return
        i = order[idx]
        below = P.strictly_below(i)
        bases = sorted({tuple(x[j] for j in below) for x in partial})
        for choice in itertools.product(value_sets, repeat=len(bases)):
            pick = dict(zip(bases, choice))
            new = [{**x, i: v} for x in partial
                   for v in pick[tuple(x[j] for j in below)]]
            yield from rec(idx + 1, new)

    found = sorted(rec(0, [dict()]),
                   key=lambda s: (len(s), tuple(sorted(s))))
    for codes in found:
        yield Neighbourhood(P, l, codes, validated=True)


def m_of(P: Poset) -> Neighbourhood:
    """M(P): indicator vectors of antichains of P (l = 1)."""
    codes = {sum(1 << (i - 1) for i in ac) for ac in antichains(P)}
    return neighbourhood(P, 1, codes)


# ---------------------------------------------------------------------------
# congruences


@dataclass(frozen=True)
class CongruenceLattice:
    lattice: Lattice
    relations: tuple  # ProductRelations (for E_P) or None
    dense: tuple  # DenseRelations in the same order as lattice elements


def congruences(X) -> CongruenceLattice:
    """For an EssentialAlgebra: the lattice of R_{<=,2} under inclusion.
    For a Neighbourhood: restrictions of those relations to A, deduplicated."""
    if isinstance(X, EssentialAlgebra):
        rels = build_R_leq(X.poset, 2)
        dense = [product_expand(r, X.l) for r in rels]
        keep = list(range(len(rels)))
    elif isinstance(X, Neighbourhood):
        rels = build_R_leq(X.poset, 2)
        alg_dense = [restrict_dense(product_expand(r, X.l), X.elements)
                     for r in rels]
        seen: dict = {}
        for idx, r in enumerate(alg_dense):
            seen.setdefault(r.codes, idx)
        keep = sorted(seen.values())
        dense = [alg_dense[i] for i in keep]
        rels = [rels[i] for i in keep]
    else:
        raise TypeError("congruences expects an EssentialAlgebra or Neighbourhood")
    k = len(dense)
    leq = tuple(tuple(set(dense[a].codes) <= set(dense[b].codes)
                      for b in range(k)) for a in range(k))
    lat = lattice_from_poset(Poset(k, leq))
    return CongruenceLattice(lat, tuple(rels), tuple(dense))


# ---------------------------------------------------------------------------
# covers


def _invariant_family(X) -> list:
    """Dense invariants of arity <= 2 used as separating witnesses."""
    if isinstance(X, EssentialAlgebra):
        rels = build_R_leq(X.poset, 1) + build_R_leq(X.poset, 2)
        return [product_expand(r, X.l) for r in rels]
    if isinstance(X, Neighbourhood):
        rels = build_R_leq(X.poset, 1) + build_R_leq(X.poset, 2)
        return [restrict_dense(product_expand(r, X.l), X.elements)
                for r in rels]
    raise TypeError("expected an EssentialAlgebra or Neighbourhood")


def _universe(X) -> set:
    if isinstance(X, EssentialAlgebra):
        return set(X.elements())
    return set(X.elements)


def cover_check(X, parts: Sequence[Iterable[int]]) -> bool:
    """True iff agreement of invariants on every part forces agreement on X:
    for all r, s of equal arity, (r|_U = s|_U for all U) implies r|_X = s|_X."""
    fam = _invariant_family(X)
    universe = _universe(X)
    part_sets = [set(p) for p in parts]
    for p in part_sets:
        if not p <= universe:
            raise ValueError("cover part not contained in the underlying set")
    for r, s in itertools.combinations(fam, 2):
        if r.arity != s.arity:
            continue
        if all(restrict_dense(r, u).codes == restrict_dense(s, u).codes
               for u in part_sets):
            if restrict_dense(r, universe).codes != \
                    restrict_dense(s, universe).codes:
                return False
    return True


def cover_witness(X, parts: Sequence[Iterable[int]]):
    """A pair (r, s) separating X but not the parts, or None."""
    fam = _invariant_family(X)
    universe = _universe(X)
    part_sets = [set(p) for p in parts]
    for r, s in itertools.combinations(fam, 2):
        if r.arity != s.arity:
            continue
        if all(restrict_dense(r, u).codes == restrict_dense(s, u).codes
               for u in part_sets) and \
                restrict_dense(r, universe).codes != \
                restrict_dense(s, universe).codes:
            return (r, s)
    return None


def irredundant_nonrefinable(X, parts: Sequence[Iterable[int]]) -> dict:
    """Cover report: parts must be two-element, the family must cover, and
    every proper subfamily must fail (irredundance).  Non-refinability of
    two-element parts is structural and recorded, not re-derived."""
    part_sets = [set(p) for p in parts]
    for p in part_sets:
        if len(p) != 2:
            raise ValueError("every part must have exactly 2 elements")
    if not cover_check(X, part_sets):
        return {"pass": False, "reason": "family does not cover",
                "witness": cover_witness(X, part_sets)}
    for k in range(len(part_sets)):
        sub = part_sets[:k] + part_sets[k + 1:]
        if cover_check(X, sub):
            return {"pass": False,
                    "reason": f"part {k} is redundant", "witness": None}
    return {"pass": True, "reason": "irredundant cover of two-element parts "
                                    "(non-refinable by size)", "witness": None}


def axis_cover(P: Poset, l: int = 1) -> list:
    """Images of the canonical retractions e_i."""
    q = 1 << l
    return [{v * q ** (i - 1) for v in range(q)} for i in P.elements]


def axis_cover_report(P: Poset, l: int = 1) -> dict:
    alg = EssentialAlgebra(P, l)
    q = 1 << l
    parts = [{v * q ** (i - 1) for v in range(q)} for i in P.elements]
    if P.n == 0:
        return {"pass": True, "parts": [], "reason": "empty poset"}
    if l == 1:
        rep = irredundant_nonrefinable(alg, parts)
    else:
        rep = {"pass": cover_check(alg, parts), "reason": "cover only "
               "(parts larger than 2 at l > 1)", "witness": None}
    rep["parts"] = parts
    return rep


# ---------------------------------------------------------------------------
# categorical-equivalence condition and the proof's cover of A


def cat_equiv_condition(A: Neighbourhood) -> bool:
    """Every element i has some base point with slice size >= 2."""
    P, q = A.poset, A.q
    for i in P.elements:
        below = P.strictly_below(i)
        bases = {project(x, below, q) for x in A.elements}
        if not any(len(slice_of(A, i, b)) >= 2 for b in sorted(bases)):
            return False
    return True


def _greedy_member(A: Neighbourhood, fixed: dict) -> int:
    """Least member of A extending the given down-closed digit assignment,
    completing each remaining coordinate with the least slice value."""
    P, q = A.poset, A.q
    out = dict(fixed)
    for i in P.linear_extension():
        if i in out:
            continue
        prefix = tuple(out[j] for j in P.strictly_below(i))
        out[i] = min(slice_of(A, i, prefix))
    return sum(v * q ** (i - 1) for i, v in out.items())


def proof_cover(A: Neighbourhood) -> list:
    """For each i, a unary clone member e_i with a two-element image inside A,
    dispatching on coordinate i; the images form an irredundant cover."""
    if not cat_equiv_condition(A):
        raise ValueError("categorical-equivalence condition fails")
    P, q, l = A.poset, A.q, A.l
    out = []
    for i in P.elements:
        below = P.strictly_below(i)
        bases = sorted({project(x, below, q) for x in A.elements})
        abar = next(b for b in bases if len(slice_of(A, i, b)) >= 2)
        sl = sorted(slice_of(A, i, abar))
        bi, ci = sl[0], sl[1]
        fixed_b = dict(zip(below, abar))
        fixed_b[i] = bi
        b = _greedy_member(A, fixed_b)
        # c agrees with b off the up-set of i
        fixed_c = {j: component(b, j, q) for j in P.elements
                   if not P.le(i, j)}
        fixed_c[i] = ci
        c = _greedy_member(A, fixed_c)
        tables = []
        for ip in P.elements:
            coords = P.below_eq(ip)
            size = q ** len(coords)
            if not P.le(i, ip):
                tables.append(tuple(component(b, ip, q)
                                    for _ in range(size)))
            else:
                pos = coords.index(i)
                table = []
                for key in range(size):
                    digits = _ess.decode_args(key, q, len(coords))
                    table.append(component(b, ip, q) if digits[pos] == bi
                                 else component(c, ip, q))
                tables.append(tuple(table))
        e = DepTermOp(P, l, 1, tuple(tables))
        out.append((e, {b, c}))
    return out
