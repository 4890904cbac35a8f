"""Independent brute-force ground truth.

Everything here works on flat operation tables and dense relations only, so
that the structural modules (essential, nbhd, classify) can be validated
against results that share none of their code paths.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .poset import Poset
from .relalg import (DenseRelation, OpTable, decode_tuple, encode_tuple)
from . import _kernels


class OracleBudgetError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Inv


def brute_inv(generators: Sequence[OpTable], m: int, d: int,
              mask_budget: int = 1 << 16) -> list:
    """All nonempty m-ary relations on {0..d-1} invariant under every
    generator, ascending in encoded-mask order.  The empty relation is
    trivially invariant and excluded by convention (invariant sets are
    compared against families of nonempty product relations)."""
    T = d ** m
    if 2 ** T > mask_budget:
        raise OracleBudgetError(
            f"2^{T} candidate relations exceed budget {mask_budget}")
    gens = []
    for f in generators:
        if f.domain != d:
            raise ValueError("generator domain mismatch")
        k = f.arity
        imgs = []
        for c in range(T ** k):
            digits = decode_tuple(c, T, k)
            rows = [decode_tuple(t, d, m) for t in digits]
            img = tuple(f.apply([row[j] for row in rows]) for j in range(m))
            imgs.append(encode_tuple(img, d))
        gens.append((k, imgs))
    masks = _kernels.filter_invariant_masks(T, gens)
    return [DenseRelation(m, d, tuple(t for t in range(T) if (mask >> t) & 1))
            for mask in masks if mask != 0]


# ---------------------------------------------------------------------------
# Pol


def brute_pol(relations: Sequence[DenseRelation], k: int, d: int,
              node_budget: int = 1 << 24) -> list:
    """All k-ary operations on {0..d-1} preserving every relation, by
    backtracking over table entries with earliest-violation pruning."""
    n_entries = d ** k
    # constraint instances: for each relation r and each k-tuple of r-tuples,
    # the entry indices read per output position and the relation itself
    constraints = []  # (max_entry, entry_indices per position, codes set)
    for r in relations:
        if r.domain != d:
            raise ValueError("relation domain mismatch")
        tuples = r.tuples()
        codes = set(r.codes)
        for rows in itertools.product(tuples, repeat=k):
            idxs = tuple(encode_tuple([row[j] for row in rows], d)
                         for j in range(r.arity))
            constraints.append((max(idxs, default=0), idxs, r.arity, codes))
    by_last: dict = {}
    for c in constraints:
        by_last.setdefault(c[0], []).append(c)

    out = []
    table = [0] * n_entries
    nodes = 0

    def ok_at(pos: int) -> bool:
        for _, idxs, arity, codes in by_last.get(pos, ()):
            img = encode_tuple([table[i] for i in idxs], d)
            if img not in codes:
                return False
        return True

    def dfs(pos: int):
        nonlocal nodes
        if pos == n_entries:
            out.append(OpTable(k, d, tuple(table)))
            return
        for v in range(d):
            nodes += 1
            if nodes > node_budget:
                raise OracleBudgetError(f"node budget {node_budget} exceeded")
            table[pos] = v
            if ok_at(pos):
                dfs(pos + 1)
        table[pos] = 0

    dfs(0)
    return out


# ---------------------------------------------------------------------------
# idempotent witness search


def brute_idempotent_search(A: Sequence[int], P: Poset, l: int
                            ) -> Optional[OpTable]:
    """A canonical dependency-structured unary e with e^2 = e and image
    exactly A, or None.  Exhaustive backtracking over per-component tables."""
    q = 1 << l
    d = q ** P.n
    n = P.n
    elems = sorted(set(A))
    if not elems:
        raise ValueError("candidate set must be nonempty")
    if any(not (0 <= x < d) for x in elems):
        raise ValueError("candidate element out of domain")
    if n == 0:
        return OpTable(1, 1, (0,))
    coords = [P.below_eq(i) for i in P.elements]
    sizes = [q ** len(c) for c in coords]
    offsets = [0] * n
    for i in range(1, n):
        offsets[i] = offsets[i - 1] + sizes[i - 1]
    n_slots = offsets[-1] + sizes[-1]
    comp_key = [[0] * d for _ in range(n)]
    comp_val = [[0] * d for _ in range(n)]
    for x in range(d):
        for i in range(n):
            digits = [(x // q ** (j - 1)) % q for j in coords[i]]
            comp_key[i][x] = encode_tuple(digits, q)
            comp_val[i][x] = (x // q ** i) % q
    in_a = [1 if x in set(elems) else 0 for x in range(d)]
    flat = _kernels.idempotent_table_search(n, d, q, comp_key, comp_val,
                                           offsets, n_slots, in_a)
    if flat is None:
        return None
    return OpTable(1, d, tuple(flat))


# ---------------------------------------------------------------------------
# clone transport


def _dep_classes(P: Poset, q: int, elems: Sequence[int], k: int) -> list:
    """For each poset element i, the partition of elems^k identifying argument
    tuples with equal digits at coordinates <= i (per argument)."""
    classes = []
    for i in P.elements:
        coords = P.below_eq(i)
        key = {}
        for args in itertools.product(elems, repeat=k):
            sig = tuple(tuple((x // q ** (j - 1)) % q for j in coords)
                        for x in args)
            key[args] = sig
        classes.append(key)
    return classes


def _transport_ok(P: Poset, q: int, a_elems, b_elems, phi: dict, k: int,
                  cls_a=None, cls_b=None) -> bool:
    """phi . Clo_k(A) . phi^{-1} subset of Clo_k(B)?

    Clo_k(U) restricted to U is exactly the set of h: U^k -> U whose i-th
    output digit is constant on argument tuples agreeing at coordinates <= i.
    The inclusion holds iff for every pair of B-argument tuples agreeing at
    coordinates <= i, and every pair of values (u, v) of A a clone member can
    take there (u, v agree at coordinate block <= j whenever the preimage
    tuples agree there), phi(u) and phi(v) share digit i."""
    inv = {b: a for a, b in phi.items()}
    if cls_b is None:
        cls_b = _dep_classes(P, q, b_elems, k)
    if cls_a is None:
        cls_a = _dep_classes(P, q, a_elems, k)
    for i_idx, i in enumerate(P.elements):
        for b1 in itertools.product(b_elems, repeat=k):
            for b2 in itertools.product(b_elems, repeat=k):
                if cls_b[i_idx][b1] != cls_b[i_idx][b2]:
                    continue
                a1 = tuple(inv[x] for x in b1)
                a2 = tuple(inv[x] for x in b2)
                tied = [j_idx for j_idx in range(P.n)
                        if cls_a[j_idx][a1] == cls_a[j_idx][a2]]
                for u in a_elems:
                    for v in a_elems:
                        if any(((u // q ** j) % q) != ((v // q ** j) % q)
                               for j in tied):
                            continue
                        if ((phi[u] // q ** i_idx) % q) != \
                                ((phi[v] // q ** i_idx) % q):
                            return False
    return True


def brute_transport(a_elems: Sequence[int], b_elems: Sequence[int], P: Poset,
                    l: int, k_max: int = 2) -> Optional[dict]:
    """A bijection phi: A -> B conjugating Clo_k(A) onto Clo_k(B) for all
    k <= k_max, or None.  k_max <= 2 is a stated approximation of full
    non-indexed isomorphism; every report quoting this oracle records it."""
    a_elems = sorted(set(a_elems))
    b_elems = sorted(set(b_elems))
    if len(a_elems) != len(b_elems):
        return None
    if len(a_elems) > 6:
        raise OracleBudgetError("transport oracle limited to 6 elements")
    if k_max > 2:
        raise OracleBudgetError("transport oracle limited to k_max = 2")
    q = 1 << l
    cls_a = {k: _dep_classes(P, q, a_elems, k) for k in range(1, k_max + 1)}
    cls_b = {k: _dep_classes(P, q, b_elems, k) for k in range(1, k_max + 1)}
    for perm in itertools.permutations(b_elems):
        phi = dict(zip(a_elems, perm))
        inv_phi = {b: a for a, b in phi.items()}
        good = True
        for k in range(1, k_max + 1):
            if not _transport_ok(P, q, a_elems, b_elems, phi, k,
                                 cls_a[k], cls_b[k]) or \
                    not _transport_ok(P, q, b_elems, a_elems, inv_phi, k,
                                      cls_b[k], cls_a[k]):
                good = False
                break
        if good:
            return phi
    return None


def clo_restrictions(P: Poset, l: int, elems: Sequence[int], k: int,
                     budget: int = 1 << 16) -> set:
    """All restrictions to elems^k of dependency-structured k-ary operations
    preserving elems, enumerated directly (tiny cases only).  Used to sanity
    check the transport criterion."""
    q = 1 << l
    elems = sorted(set(elems))
    s = len(elems)
    if s ** (s ** k) > budget:
        raise OracleBudgetError("direct restriction enumeration too large")
    args = list(itertools.product(elems, repeat=k))
    coords = [P.below_eq(i) for i in P.elements]
    out = set()
    for outputs in itertools.product(elems, repeat=len(args)):
        h = dict(zip(args, outputs))
        ok = True
        for i_idx, i in enumerate(P.elements):
            sig = {}
            for a in args:
                key = tuple(tuple((x // q ** (j - 1)) % q for j in coords[i_idx])
                            for x in a)
                v = (h[a] // q ** i_idx) % q
                if sig.setdefault(key, v) != v:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(tuple(h[a] for a in args))
    return out


# ---------------------------------------------------------------------------
# Galois sanity


def unary_clone(generators: Sequence[OpTable], d: int) -> set:
    """Unary part of the clone generated by the given operations, by closure
    iteration: plug already-found unary maps into each generator."""
    unary = {tuple(range(d))}  # identity
    changed = True
    while changed:
        changed = False
        for f in generators:
            for gs in itertools.product(sorted(unary), repeat=f.arity):
                new = tuple(f.apply([g[x] for g in gs]) for x in range(d))
                if new not in unary:
                    unary.add(new)
                    changed = True
    return {OpTable(1, d, t) for t in unary}
