"""Posets, Birkhoff duality, automorphisms."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from essalg import (Poset, PosetError, all_posets, antichains, automorphisms,
                    birkhoff_roundtrip, chain, discrete, downsets, ir,
                    j_lattice, lattice_isomorphic, minimal_incomparable_pair,
                    poset_from_pairs, poset_isomorphism, reverse, star,
                    structural_predicates, validate_poset)
from essalg.poset import lattice_from_poset, load_poset


# ---------------------------------------------------------------------------
# construction and validation


def test_closure_from_pairs():
    p = poset_from_pairs(3, [(1, 2), (2, 3)])
    assert p.le(1, 3)
    assert p.strict_pairs() == [(1, 2), (1, 3), (2, 3)]


def test_cycle_rejected():
    with pytest.raises(PosetError, match="antisymmetry"):
        poset_from_pairs(2, [(1, 2), (2, 1)])


def test_validate_reports_first_violated_axiom():
    with pytest.raises(PosetError, match="reflexivity"):
        validate_poset([[False]])
    with pytest.raises(PosetError, match="transitivity"):
        validate_poset([[True, True, False],
                       [False, True, True],
                       [False, False, True]])


def test_out_of_range_pair():
    with pytest.raises(PosetError, match="out of range"):
        poset_from_pairs(2, [(1, 3)])


def test_load_roundtrip():
    p = poset_from_pairs(4, [(1, 3), (2, 3), (3, 4)])
    assert load_poset(p.to_json()) == p


@given(st.integers(1, 4), st.lists(st.tuples(st.integers(1, 4),
                                             st.integers(1, 4)), max_size=6))
def test_from_pairs_total(n, pairs):
    """Any in-range pair list either closes to a valid poset or raises."""
    pairs = [(i, j) for i, j in pairs if i <= n and j <= n]
    try:
        p = poset_from_pairs(n, pairs)
    except PosetError:
        return
    validate_poset(p.leq)  # no exception: axioms hold
    for i, j in pairs:
        assert p.le(i, j)


# ---------------------------------------------------------------------------
# enumeration


def test_labeled_poset_counts():
    # number of labeled posets on n points: OEIS A001035
    assert [len(all_posets(n)) for n in range(5)] == [1, 1, 3, 19, 219]


def test_all_posets_distinct_and_valid():
    seen = set()
    for p in all_posets(3):
        validate_poset(p.leq)
        assert p.leq not in seen
        seen.add(p.leq)


def test_downsets_lattice_laws(posets_upto_4):
    for p in posets_upto_4:
        ds = {frozenset(s) for s in downsets(p)}
        assert frozenset() in ds
        assert frozenset(p.elements) in ds
        for a in ds:
            for b in ds:
                assert a | b in ds
                assert a & b in ds


def test_antichain_downset_bijection(posets_upto_4):
    """Maximal elements of downsets are antichains, bijectively."""
    for p in posets_upto_4:
        assert len(antichains(p)) == len(downsets(p))


def test_linear_extension_is_topological(posets_upto_4):
    for p in posets_upto_4:
        order = p.linear_extension()
        assert sorted(order) == list(p.elements)
        pos = {x: k for k, x in enumerate(order)}
        for i, j in p.strict_pairs():
            assert pos[i] < pos[j]


# ---------------------------------------------------------------------------
# Birkhoff duality


def test_birkhoff_roundtrip_upto_5():
    for n in range(6):
        for p in all_posets(n):
            w1, w2 = birkhoff_roundtrip(p)
            assert w1 is not None and w2 is not None


def test_j_lattice_distributive(posets_upto_4):
    for p in posets_upto_4:
        assert j_lattice(p).distributive


def test_ir_recovers_poset(chain3, vee):
    for p in (chain3, vee):
        sub, _ = ir(j_lattice(p))
        assert poset_isomorphism(p, sub) is not None


def test_lattice_isomorphic_rejects_different_shapes():
    l1 = j_lattice(chain(3))  # 4-element chain
    l2 = j_lattice(discrete(2))  # 2x2 diamond
    assert l1.n == l2.n == 4
    assert lattice_isomorphic(l1, l2) is None
    assert lattice_isomorphic(l1, l1) is not None


def test_lattice_from_non_lattice_poset():
    from essalg import LatticeError
    # two incomparable points have no meet/join
    with pytest.raises(LatticeError):
        lattice_from_poset(discrete(2))


# ---------------------------------------------------------------------------
# predicates and symmetry


def test_automorphism_group_laws():
    for n in range(6):
        for p in all_posets(n):
            auts = automorphisms(p)
            aset = {tuple(a) for a in auts}
            ident = tuple(p.elements)
            assert ident in aset
            for a in auts:
                inv = [0] * p.n
                for i, v in enumerate(a):
                    inv[v - 1] = i + 1
                assert tuple(inv) in aset
                for b in auts:
                    assert tuple(b[a[i] - 1] for i in range(p.n)) in aset


def test_minimal_incomparable_pair_iff_chain(posets_upto_4):
    for p in posets_upto_4:
        pair = minimal_incomparable_pair(p)
        if structural_predicates(p)["is_chain"]:
            assert pair is None
        else:
            assert pair is not None
            i, j = pair
            assert not p.comparable(i, j)


def test_discrete_implies_depth1_coforest():
    for n in range(7):
        for p in all_posets(n):
            preds = structural_predicates(p)
            if preds["is_discrete"]:
                assert preds["is_depth1_coforest"]


def test_reverse_involution(posets_upto_4):
    for p in posets_upto_4:
        assert reverse(reverse(p)) == p


def test_star_chain_shapes():
    assert structural_predicates(chain(4))["is_chain"]
    s = star(4)
    assert s.strictly_above(1) == (4,)
    assert structural_predicates(s)["is_depth1_coforest"]
