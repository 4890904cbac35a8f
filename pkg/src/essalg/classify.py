"""Isomorphism of neighbourhoods, c-minimality, class catalogues, and
verifiers for the classification theorems (cardinality, discreteness,
uniqueness) including the proof's counterexample constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .poset import Poset, automorphisms
from .essential import BoundError, component, project
from .nbhd import Neighbourhood, m_of, slice_of


@dataclass(frozen=True)
class IsoWitness:
    sigma: tuple  # poset automorphism, sigma[i-1] = image of i
    phi: tuple  # sorted ((i, abar), value-bijection-items) family
    total: tuple  # sorted (a, b) pairs of the induced bijection A -> B

    def total_map(self) -> dict:
        return dict(self.total)


@dataclass(frozen=True)
class ClassCatalogue:
    poset: Poset
    representatives: tuple  # Neighbourhoods, canonical order
    members: tuple  # per class: tuple of sorted-code tuples
    witnesses: tuple  # per class: tuple of IsoWitness (member -> representative)
    mp_class: int  # index of the class containing M(P)


def _slices(A: Neighbourhood) -> dict:
    P, q = A.poset, A.q
    out: dict = {}
    for i in P.elements:
        below = P.strictly_below(i)
        for x in A.elements:
            key = (i, project(x, below, q))
            out.setdefault(key, set()).add(component(x, i, q))
    return out


def _encode(digits: dict, q: int) -> int:
    return sum(v * q ** (i - 1) for i, v in digits.items())


def term_isomorphic(A: Neighbourhood, B: Neighbourhood
                    ) -> Optional[IsoWitness]:
    """A family of slice bijections assembling into a bijection A -> B, built
    by backtracking along a linear extension; sigma is the identity."""
    if A.poset != B.poset or A.l != B.l:
        raise ValueError("neighbourhoods must share the poset and power")
    P, q = A.poset, A.q
    if len(A.elements) != len(B.elements):
        return None
    order = P.linear_extension()
    slA, slB = _slices(A), _slices(B)

    def rec(idx: int, pairs: list, family: dict):
        if idx == len(order):
            return (dict(family),
                    {_encode(xa, q): _encode(xb, q) for xa, xb in pairs})
        i = order[idx]
        below = P.strictly_below(i)
        base_img: dict = {}
        for xa, xb in pairs:
            ka = tuple(xa[j] for j in below)
            kb = tuple(xb[j] for j in below)
            base_img[ka] = kb  # well defined: image prefix is a function of ka
        base_list = sorted(base_img)

        def choose(bi: int, chosen: dict):
            if bi == len(base_list):
                new_pairs = []
                for xa, xb in pairs:
                    ka = tuple(xa[j] for j in below)
                    for v in sorted(slA[(i, ka)]):
                        new_pairs.append(({**xa, i: v},
                                          {**xb, i: chosen[ka][v]}))
                return rec(idx + 1, new_pairs, family)
            ka = base_list[bi]
            kb = base_img[ka]
            sa = sorted(slA[(i, ka)])
            sb = sorted(slB.get((i, kb), ()))
            if len(sa) != len(sb):
                return None
            for perm in itertools.permutations(sb):
                chosen[ka] = dict(zip(sa, perm))
                family[(i, ka)] = tuple(zip(sa, perm))
                res = choose(bi + 1, chosen)
                if res is not None:
                    return res
            del chosen[ka], family[(i, ka)]
            return None

        return choose(0, {})

    res = rec(0, [({}, {})], {})
    if res is None:
        return None
    family, total = res
    return IsoWitness(tuple(P.elements), tuple(sorted(family.items())),
                      tuple(sorted(total.items())))


def apply_perm(x: int, sigma: Sequence[int], q: int, n: int) -> int:
    """Coordinate permutation of an encoded element: digit i moves to
    position sigma[i-1]."""
    return sum(((x // q ** (i - 1)) % q) * q ** (sigma[i - 1] - 1)
               for i in range(1, n + 1))


def permuted(A: Neighbourhood, sigma: Sequence[int]) -> Neighbourhood:
    codes = frozenset(apply_perm(x, sigma, A.q, A.poset.n)
                      for x in A.elements)
    return Neighbourhood(A.poset, A.l, codes, validated=True)


def nonindexed_isomorphic(A: Neighbourhood, B: Neighbourhood
                          ) -> Optional[IsoWitness]:
    """Searches sigma in Aut(P), then a term isomorphism sigma.A -> B.  The
    factorization automorphism-then-term is the working definition here; the
    transport oracle cross-checks it at small sizes."""
    for sigma in automorphisms(A.poset):
        w = term_isomorphic(permuted(A, sigma), B)
        if w is not None:
            n, q = A.poset.n, A.q
            total = tuple(sorted(
                (a, dict(w.total)[apply_perm(a, sigma, q, n)])
                for a in A.elements))
            return IsoWitness(tuple(sigma), w.phi, total)
    return None


def is_cminimal(A: Neighbourhood) -> bool:
    """Per element, exactly one base point with a 2-element slice and
    singleton slices everywhere else."""
    P, q = A.poset, A.q
    sl = _slices(A)
    for i in P.elements:
        sizes = sorted(len(s) for (j, _), s in sl.items() if j == i)
        if sizes[-1:] != [2] or sizes[:-1] != [1] * (len(sizes) - 1):
            return False
    return True


# ---------------------------------------------------------------------------
# normalized candidates


def _build_normalized(P: Poset, choose_base):
    """All (or one) c-minimal neighbourhoods in normalized form: processing a
    linear extension, the chosen base point of each element gets slice {0,1}
    and every other base gets {0}.  choose_base(t, bases, state) returns the
    list of base choices to branch over; state maps elements to facts needed
    by the counterexample construction."""
    order = P.linear_extension()

    def rec(idx: int, partial: list, state: dict):
        if idx == len(order):
            yield frozenset(_encode(x, 2) for x in partial), dict(state)
            return
        t = order[idx]
        below = P.strictly_below(t)
        bases = sorted({tuple(x[j] for j in below) for x in partial})
        for special in choose_base(t, bases, state):
            new = []
            for x in partial:
                key = tuple(x[j] for j in below)
                vals = (0, 1) if key == special else (0,)
                for v in vals:
                    new.append({**x, t: v})
            st = dict(state)
            st[t] = special
            yield from rec(idx + 1, new, st)

    return rec(0, [{}], {})


def enumerate_normalized_cminimal(P: Poset) -> list:
    """Every c-minimal neighbourhood is term-isomorphic to exactly the
    candidates produced here (slices relabelled order-preservingly onto
    {0,1} / {0})."""
    return [codes for codes, _ in
            _build_normalized(P, lambda t, bases, state: bases)]


def canonical_cminimal(P: Poset) -> Neighbourhood:
    """The deterministic candidate choosing the least base everywhere."""
    codes, _ = next(_build_normalized(P, lambda t, bases, state: bases[:1]))
    return Neighbourhood(P, 1, codes, validated=True)


def enumerate_cminimal(P: Poset, budget_n: int = 5) -> ClassCatalogue:
    """Catalogue of c-minimal algebras of type P up to non-indexed
    isomorphism, at l = 1; representatives are the least element sets of
    their classes."""
    if P.n > budget_n:
        raise BoundError(f"poset size {P.n} exceeds catalogue budget {budget_n}")
    cands = sorted(enumerate_normalized_cminimal(P),
                   key=lambda s: tuple(sorted(s)))
    nbhds = [Neighbourhood(P, 1, c, validated=True) for c in cands]
    # union-find over isomorphism edges
    parent = list(range(len(nbhds)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(nbhds)):
        for b in range(a + 1, len(nbhds)):
            if find(a) != find(b) and \
                    nonindexed_isomorphic(nbhds[a], nbhds[b]) is not None:
                parent[find(b)] = find(a)

    groups: dict = {}
    for idx in range(len(nbhds)):
        groups.setdefault(find(idx), []).append(idx)
    classes = []
    for root in groups:
        idxs = groups[root]
        rep_idx = min(idxs, key=lambda k: tuple(sorted(cands[k])))
        classes.append((rep_idx, idxs))
    classes.sort(key=lambda c: (len(cands[c[0]]), tuple(sorted(cands[c[0]]))))

    reps, members, witnesses = [], [], []
    for rep_idx, idxs in classes:
        reps.append(nbhds[rep_idx])
        members.append(tuple(tuple(sorted(cands[k])) for k in idxs))
        witnesses.append(tuple(nonindexed_isomorphic(nbhds[k], nbhds[rep_idx])
                               for k in idxs))
    mp = m_of(P) if P.n <= budget_n else None
    mp_class = -1
    for ci, rep in enumerate(reps):
        if nonindexed_isomorphic(mp, rep) is not None:
            mp_class = ci
            break
    return ClassCatalogue(P, tuple(reps), tuple(members), tuple(witnesses),
                          mp_class)


def extend_cminimal(Aprime: Neighbourhood, P: Poset,
                    labels: Optional[Sequence[int]] = None) -> Neighbourhood:
    """Extend a c-minimal algebra over a downset of P to one over all of P,
    adding one element at a time: the new element's two-element slice sits
    over the least base point, all other slices are {0}."""
    if labels is None:
        labels = list(range(1, Aprime.poset.n + 1))
    labels = list(labels)
    if len(labels) != Aprime.poset.n:
        raise ValueError("label list does not match the smaller poset")
    if not P.is_downset(labels):
        raise ValueError("the smaller poset must sit on a downset of P")
    if P.induced(labels).leq != Aprime.poset.leq:
        raise ValueError("induced order does not match the smaller poset")
    if not is_cminimal(Aprime):
        raise ValueError("input is not c-minimal")
    relabel = dict(zip(range(1, len(labels) + 1), sorted(labels)))
    q = Aprime.q
    partial = []
    for x in Aprime.elements:
        partial.append({relabel[i]: component(x, i, q)
                        for i in Aprime.poset.elements})
    done = set(sorted(labels))
    for t in P.linear_extension():
        if t in done:
            continue
        below = P.strictly_below(t)
        bases = sorted({tuple(x[j] for j in below) for x in partial})
        special = bases[0]
        new = []
        for x in partial:
            key = tuple(x[j] for j in below)
            for v in ((0, 1) if key == special else (0,)):
                new.append({**x, t: v})
        partial = new
        done.add(t)
    return Neighbourhood(P, Aprime.l,
                         frozenset(_encode(x, q) for x in partial),
                         validated=True)


# ---------------------------------------------------------------------------
# property (*) and the uniqueness counterexamples


def property_star(A: Neighbourhood) -> bool:
    """For i < j, i < k, j != k and two members of A_{<=i} agreeing strictly
    below i, one of the two (y_j, y_k)-projection sets must be a singleton."""
    P, q = A.poset, A.q
    for i in P.elements:
        above = [x for x in P.elements if P.lt(i, x)]
        if len(above) < 2:
            continue
        beloweq = P.below_eq(i)
        below = P.strictly_below(i)
        prefixes = sorted({project(x, beloweq, q) for x in A.elements})
        for j, k in itertools.combinations(above, 2):
            for a, b in itertools.combinations(prefixes, 2):
                if project_sub(a, beloweq, below) != \
                        project_sub(b, beloweq, below):
                    continue
                sa = {(component(y, j, q), component(y, k, q))
                      for y in A.elements if project(y, beloweq, q) == a}
                sb = {(component(y, j, q), component(y, k, q))
                      for y in A.elements if project(y, beloweq, q) == b}
                if len(sa) > 1 and len(sb) > 1:
                    return False
    return True


def project_sub(values: Sequence[int], coords: Sequence[int],
                sub: Sequence[int]) -> tuple:
    pos = {c: idx for idx, c in enumerate(coords)}
    return tuple(values[pos[c]] for c in sub)


def coforest_violation(P: Poset) -> Optional[tuple]:
    """Lexicographically least (i, j, k) with i < j, i < k, j != k."""
    for i in P.elements:
        above = [x for x in P.elements if P.lt(i, x)]
        if len(above) >= 2:
            return (i, above[0], above[1])
    return None


def counterexample_construct(P: Poset) -> Neighbourhood:
    """A c-minimal algebra of type P violating property (*), built by chained
    extensions: the two-element slices at j and k sit over bases extending
    the two distinct prefixes (a_{<i}, 0) and (a_{<i}, 1)."""
    viol = coforest_violation(P)
    if viol is None:
        raise ValueError("poset is a depth-1 co-forest; no counterexample")
    i, j, k = viol
    if P.comparable(j, k) and P.lt(k, j):
        j, k = k, j

    state: dict = {}

    def choose(t, bases, st):
        if t == j or t == k:
            below_t = P.strictly_below(t)
            bi = P.strictly_below(i)
            digit = (0,) if t == j else (1,)
            good = [b for b in bases
                    if project_sub(b, below_t, bi) == st[i]
                    and project_sub(b, below_t, (i,)) == digit]
            return good[:1]
        return bases[:1]

    codes, _ = next(_build_normalized(P, choose))
    A = Neighbourhood(P, 1, codes, validated=True)
    assert is_cminimal(A)
    return A


# ---------------------------------------------------------------------------
# theorem verification


def verify_theorems(P: Poset, budget_n: int = 5) -> dict:
    """The three classification biconditionals at desk scale."""
    from .poset import structural_predicates
    preds = structural_predicates(P)
    cat = enumerate_cminimal(P, budget_n)
    sizes = [len(r.elements) for r in cat.representatives]
    full_cube = frozenset(range(2 ** P.n))
    card_ok = (all(s == P.n + 1 for s in sizes)) == preds["is_chain"]
    ep_in = any(frozenset(r.elements) == full_cube for r in cat.representatives)
    ep_ok = ep_in == preds["is_discrete"]
    uniq_ok = (len(cat.representatives) == 1) == preds["is_depth1_coforest"]
    return {
        "poset": P, "catalogue": cat, "class_sizes": sizes,
        "cardinality_consistent": card_ok,
        "ep_cminimal_consistent": ep_ok,
        "uniqueness_consistent": uniq_ok,
        "pass": card_ok and ep_ok and uniq_ok,
    }
