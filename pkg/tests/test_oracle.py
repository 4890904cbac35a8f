"""Brute-force oracle: Inv/Pol Galois sanity, transport, budgets."""

import itertools

import pytest

from essalg import (OpTable, all_posets, build_R_leq, chain, clone_generators,
                    discrete, enumerate_cminimal, m_of, neighbourhood,
                    nonindexed_isomorphic, product_expand)
from essalg import oracle
from essalg.oracle import (OracleBudgetError, brute_idempotent_search,
                           brute_inv, brute_pol, brute_transport,
                           clo_restrictions, unary_clone)
from essalg.relalg import diagonal_dense, full_dense
from essalg.poset import poset_from_pairs


def _projections(d):
    return [OpTable(1, d, tuple(range(d)))]


# ---------------------------------------------------------------------------
# Inv


def test_inv_contains_diagonal_and_full():
    for gens in ([], _projections(2),
                 [OpTable(2, 2, (1, 1, 1, 0))]):  # NAND
        rels = brute_inv(gens, 2, 2)
        codeset = {r.codes for r in rels}
        assert diagonal_dense(2, 2).codes in codeset
        assert full_dense(2, 2).codes in codeset


def test_inv_excludes_empty_relation():
    rels = brute_inv([], 2, 2)
    assert all(len(r.codes) > 0 for r in rels)


def test_inv_budget():
    with pytest.raises(OracleBudgetError):
        brute_inv([], 3, 3, mask_budget=1 << 16)


def test_inv_of_clone_generators_is_relation_family():
    """Dense completeness at n <= 2: the invariants of the generator set are
    exactly the dense expansions of the structural relation family."""
    for n in range(3):
        for p in all_posets(n):
            gens = [g.as_optable() for g in clone_generators(p)]
            got = sorted(r.codes for r in brute_inv(gens, 2, 2 ** p.n))
            want = sorted(product_expand(r, 1).codes
                          for r in build_R_leq(p, 2))
            assert got == want, (n, p.strict_pairs())


# ---------------------------------------------------------------------------
# Pol and Galois sanity


def _unary_tables(ops):
    return {f.table for f in ops if f.arity == 1}


def test_galois_sanity_unary():
    """brute_pol(brute_inv(C, 2), 1) has exactly the unary part of the clone
    generated by C, for C in {all ops, projections, {NAND}} at d = 2."""
    d = 2
    all_ops = [OpTable(1, d, t)
               for t in itertools.product(range(d), repeat=d)]
    all_ops += [OpTable(2, d, t)
                for t in itertools.product(range(d), repeat=d * d)]
    nand = OpTable(2, d, (1, 1, 1, 0))
    for cgen in (all_ops, _projections(d), [nand]):
        inv = brute_inv(cgen, 2, d)
        pol1 = brute_pol(inv, 1, d)
        assert _unary_tables(pol1) == _unary_tables(unary_clone(cgen, d))


def test_pol_of_diagonal_is_everything():
    pol = brute_pol([diagonal_dense(2, 2)], 1, 2)
    assert len(pol) == 4


def test_pol_node_budget():
    with pytest.raises(OracleBudgetError):
        brute_pol([full_dense(2, 2)], 2, 2, node_budget=3)


# ---------------------------------------------------------------------------
# idempotent search


def test_idempotent_search_validates():
    p = chain(2)
    with pytest.raises(ValueError):
        brute_idempotent_search([], p, 1)
    with pytest.raises(ValueError):
        brute_idempotent_search([99], p, 1)


def test_idempotent_search_finds_retraction(vee):
    e = brute_idempotent_search([0, 1, 2, 5], vee, 1)
    assert e is not None
    image = {e.apply([x]) for x in range(8)}
    assert image == {0, 1, 2, 5}
    for a in image:
        assert e.apply([a]) == a


def test_idempotent_search_rejects_gluing_failure():
    p = poset_from_pairs(3, [(1, 3), (2, 3)])
    assert brute_idempotent_search([1, 2], p, 1) is None


# ---------------------------------------------------------------------------
# transport


def test_transport_identity(chain3):
    a = sorted(m_of(chain3).elements)
    phi = brute_transport(a, a, chain3, 1)
    assert phi is not None


def test_transport_matches_structural_iso(chain3, vee):
    """Agreement of the k <= 2 transport oracle with the structural
    non-indexed isomorphism test on whole catalogues."""
    for p in (chain3, vee):
        cat = enumerate_cminimal(p)
        reps = list(cat.representatives)
        for a in reps:
            for b in reps:
                structural = nonindexed_isomorphic(a, b) is not None
                transported = brute_transport(sorted(a.elements),
                                              sorted(b.elements),
                                              p, 1) is not None
                assert structural == transported


def test_transport_budget(chain3):
    with pytest.raises(OracleBudgetError):
        brute_transport(list(range(7)), list(range(7)), chain3, 1)
    with pytest.raises(OracleBudgetError):
        brute_transport([0], [0], chain3, 1, k_max=3)


def test_transport_size_mismatch(chain3):
    assert brute_transport([0], [0, 1], chain3, 1) is None


def test_clo_restrictions_sanity(chain3):
    """The direct enumeration of restricted clone operations is conjugation-
    stable exactly when transport succeeds (tiny case)."""
    a = sorted(neighbourhood(chain3, 1, [0, 1, 2, 4]).elements)
    ops = clo_restrictions(chain3, 1, a, 1)
    # identity restriction is always present
    assert tuple(a) in ops
    with pytest.raises(OracleBudgetError):
        clo_restrictions(chain3, 1, list(range(8)), 3)
