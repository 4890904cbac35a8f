"""Isomorphism, c-minimality, catalogues, classification biconditionals."""

import itertools

import pytest

from essalg import (all_posets, chain, counterexample_construct, discrete,
                    enumerate_cminimal, extend_cminimal, is_cminimal, m_of,
                    neighbourhood, nonindexed_isomorphic, property_star,
                    term_isomorphic, verify_theorems)
from essalg.classify import (apply_perm, canonical_cminimal,
                             coforest_violation,
                             enumerate_normalized_cminimal, permuted)
from essalg.nbhd import Neighbourhood
from essalg.poset import poset_from_pairs, structural_predicates


def _tuple_set(nb):
    return {tuple(t) for t in nb.tuples()}


# ---------------------------------------------------------------------------
# term isomorphism laws


def _cminimal_candidates(p):
    return [Neighbourhood(p, 1, c, validated=True)
            for c in enumerate_normalized_cminimal(p)]


def test_term_iso_equivalence_laws(posets_upto_3):
    for p in posets_upto_3:
        cands = _cminimal_candidates(p)
        for a in cands:
            w = term_isomorphic(a, a)
            assert w is not None
            assert w.total_map() == {x: x for x in a.elements}
        for a, b in itertools.combinations(cands, 2):
            wab = term_isomorphic(a, b)
            wba = term_isomorphic(b, a)
            assert (wab is None) == (wba is None)
        for a in cands:
            for b in cands:
                for c in cands:
                    if term_isomorphic(a, b) and term_isomorphic(b, c):
                        assert term_isomorphic(a, c) is not None


def test_term_iso_witness_is_bijection(chain3):
    cands = _cminimal_candidates(chain3)
    for a in cands:
        for b in cands:
            w = term_isomorphic(a, b)
            if w is None:
                continue
            tm = w.total_map()
            assert set(tm) == set(a.elements)
            assert set(tm.values()) == set(b.elements)


def test_term_iso_needs_matching_slice_profile(chain3):
    a = neighbourhood(chain3, 1, [0, 1, 2, 4])
    b = neighbourhood(chain3, 1, [0, 1, 2, 3])  # slice sizes differ
    assert len(a.elements) == len(b.elements)
    assert term_isomorphic(a, b) is None


def test_term_iso_guards(chain3, vee):
    a = neighbourhood(chain3, 1, [0])
    b = neighbourhood(vee, 1, [0])
    with pytest.raises(ValueError):
        term_isomorphic(a, b)


def test_apply_perm_roundtrip(vee):
    for sigma in ((1, 3, 2), (1, 2, 3)):
        inv = [0] * 3
        for i, v in enumerate(sigma):
            inv[v - 1] = i + 1
        for x in range(8):
            assert apply_perm(apply_perm(x, sigma, 2, 3), tuple(inv), 2, 3) == x


def test_nonindexed_uses_symmetry(vee):
    # the doubled coordinate moves between the two incomparable tops, so no
    # term isomorphism exists, but swapping elements 2 and 3 is an
    # automorphism of the poset
    a = neighbourhood(vee, 1, [0, 1, 2, 3])  # {00*,10*,01*,11*}, x3 = 0
    b = permuted(a, (1, 3, 2))               # x2 = 0, x3 free
    assert term_isomorphic(a, b) is None
    assert nonindexed_isomorphic(a, b) is not None


# ---------------------------------------------------------------------------
# c-minimality


def test_is_cminimal_definition(chain3):
    assert is_cminimal(neighbourhood(chain3, 1, [0, 1, 2, 4]))
    assert not is_cminimal(neighbourhood(chain3, 1, range(8)))


def test_candidates_are_cminimal(posets_upto_3):
    for p in posets_upto_3:
        for a in _cminimal_candidates(p):
            assert is_cminimal(a)
            assert len(a.elements) >= p.n + 1 or p.n == 0


def test_canonical_candidate(chain3):
    a = canonical_cminimal(chain3)
    assert _tuple_set(a) == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}


# ---------------------------------------------------------------------------
# catalogues (cross-checked against the brute-force transport oracle in
# test_oracle.py)


def test_catalogue_chain3(chain3):
    cat = enumerate_cminimal(chain3)
    reps = [_tuple_set(r) for r in cat.representatives]
    assert len(reps) == 2
    assert {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)} in reps
    assert {(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 0, 1)} in reps
    assert cat.mp_class == 0


def test_catalogue_vee(vee):
    cat = enumerate_cminimal(vee)
    reps = [_tuple_set(r) for r in cat.representatives]
    assert len(reps) == 2
    assert {(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 0, 1)} in reps
    assert {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)} in reps


def test_catalogue_star(star5):
    for n in (3, 4, 5):
        from essalg import star
        cat = enumerate_cminimal(star(n))
        assert len(cat.representatives) == 1
        want = {t + (0,) for t in itertools.product((0, 1), repeat=n - 1)}
        want.add((0,) * (n - 1) + (1,))
        assert _tuple_set(cat.representatives[0]) == want


def test_catalogue_discrete():
    for n in (1, 2, 3):
        cat = enumerate_cminimal(discrete(n))
        assert len(cat.representatives) == 1
        assert frozenset(cat.representatives[0].elements) == \
            frozenset(range(2 ** n))


def test_catalogue_m3(m3):
    cat = enumerate_cminimal(m3)
    sizes = sorted(len(r.elements) for r in cat.representatives)
    assert sizes == [7, 7, 10, 10]
    assert cat.mp_class >= 0


def test_mp_always_catalogued(posets_upto_3):
    for p in posets_upto_3:
        cat = enumerate_cminimal(p)
        assert cat.mp_class >= 0
        rep = cat.representatives[cat.mp_class]
        assert nonindexed_isomorphic(m_of(p), rep) is not None


def test_witnesses_map_members_to_representative(vee):
    cat = enumerate_cminimal(vee)
    for ci in range(len(cat.representatives)):
        for codes, w in zip(cat.members[ci], cat.witnesses[ci]):
            assert w is not None
            assert set(w.total_map()) == set(codes)


def test_catalogue_budget(m3):
    from essalg.essential import BoundError
    with pytest.raises(BoundError):
        enumerate_cminimal(m3, budget_n=4)


# ---------------------------------------------------------------------------
# extension


def test_extend_cminimal_chain():
    small = canonical_cminimal(chain(2))
    big = extend_cminimal(small, chain(3))
    assert is_cminimal(big)
    assert big.poset == chain(3)


def test_extend_cminimal_guards(chain3):
    small = canonical_cminimal(chain(2))
    with pytest.raises(ValueError):
        extend_cminimal(small, chain3, labels=[2, 3])  # not a downset
    bad = neighbourhood(chain(2), 1, range(4))
    with pytest.raises(ValueError):
        extend_cminimal(bad, chain3)


# ---------------------------------------------------------------------------
# uniqueness biconditional and counterexamples


def test_coforest_violation(chain3, vee, star5):
    # strictly-above counts, not covers: 1 < 2 and 1 < 3 in the 3-chain
    assert coforest_violation(chain3) == (1, 2, 3)
    assert coforest_violation(chain(2)) is None
    assert coforest_violation(star5) is None
    assert coforest_violation(vee) == (1, 2, 3)


def test_counterexamples_upto_4(posets_upto_4):
    for p in posets_upto_4:
        if coforest_violation(p) is None:
            with pytest.raises(ValueError):
                counterexample_construct(p)
            continue
        a = counterexample_construct(p)
        assert is_cminimal(a)
        assert not property_star(a)
        assert nonindexed_isomorphic(a, m_of(p)) is None


def test_mp_satisfies_property_star(posets_upto_4):
    for p in posets_upto_4:
        assert property_star(m_of(p))


def test_verify_theorems_upto_3(posets_upto_3):
    for p in posets_upto_3:
        rep = verify_theorems(p)
        assert rep["pass"], (p.strict_pairs(), rep)


def test_theorem_report_shape(vee):
    rep = verify_theorems(vee)
    assert rep["class_sizes"] == [4, 5]
    assert rep["cardinality_consistent"]
    assert rep["ep_cminimal_consistent"]
    assert rep["uniqueness_consistent"]
