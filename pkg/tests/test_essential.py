"""The algebra E_P: relation family, clone membership, generators."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from essalg import (OpTable, all_posets, build_R_leq, canonical_generators,
                    chain, clone_generators, componentwise_nand, discrete,
                    delta_upper, essentiality_check, is_clone_member,
                    is_invariant, product_expand, recover_order,
                    shift_generators)
from essalg.essential import (BoundError, DepTermOp, EssentialAlgebra,
                              component, decode_args, dep_term_from_json,
                              project, set_component)
from essalg.poset import PosetError, poset_from_pairs


# ---------------------------------------------------------------------------
# encoding helpers


@given(st.integers(0, 63), st.integers(1, 3), st.integers(0, 3))
def test_set_component_roundtrip(x, i, v):
    q = 4
    x %= q ** 3
    y = set_component(x, i, v, q)
    assert component(y, i, q) == v
    for j in (1, 2, 3):
        if j != i:
            assert component(y, j, q) == component(x, j, q)


def test_project_order():
    # x = (1, 0, 1) base 2
    assert project(5, (1, 3), 2) == (1, 1)
    assert project(5, (2,), 2) == (0,)


# ---------------------------------------------------------------------------
# the relation family R_{<=,m}


def test_relation_counts_small():
    # one partition choice per component, constrained by coarsening downward
    assert len(build_R_leq(discrete(2), 2)) == 4
    assert len(build_R_leq(chain(2), 2)) == 3
    assert len(build_R_leq(chain(3), 2)) == 4


def test_arity_bound_is_hard():
    with pytest.raises(BoundError):
        build_R_leq(chain(2), 5)


def test_delta_upper_membership():
    p = chain(3)
    r = delta_upper(p, 2, 1, 2, 2)
    # components 1 and 2 forced equal across the two positions, 3 free
    dense = product_expand(r, 1)
    assert (0, 0) in dense and (1, 1) in dense
    assert (4, 0) in dense  # differ only in component 3
    assert (1, 0) not in dense  # differ in component 1
    with pytest.raises(IndexError):
        delta_upper(p, 4, 1, 2, 2)


def test_recover_order_roundtrip_upto_4(posets_upto_4):
    for p in posets_upto_4:
        assert recover_order(build_R_leq(p, 2), p.n).leq == p.leq


def test_recover_order_validates():
    with pytest.raises(PosetError):
        recover_order([], 2)


# ---------------------------------------------------------------------------
# generators and closure


def test_generators_invariant_on_relations(posets_upto_3):
    # is_invariant costs |relation| ** arity; ternary relations are checked
    # at n <= 2 only (at n = 3 they hold 512 tuples and the diagonal is
    # ternary, which brute force cannot afford)
    for p in posets_upto_3:
        gens = clone_generators(p)
        arities = (1, 2, 3) if p.n <= 2 else (1, 2)
        for m in arities:
            for r in build_R_leq(p, m):
                dense = product_expand(r, 1)
                for g in gens:
                    assert is_invariant(dense, g.as_optable())


def test_generators_are_clone_members(posets_upto_3):
    for p in posets_upto_3:
        for g in clone_generators(p):
            assert is_clone_member(g.as_optable(), p, 1) is not None


def test_nand_is_functionally_complete_per_component():
    p = discrete(1)
    nand = componentwise_nand(p).as_optable()
    assert [nand.apply([a, b]) for a in (0, 1) for b in (0, 1)] == [1, 1, 1, 0]


def test_clone_membership_criterion_matches_invariance():
    """is_clone_member accepts f iff f preserves every binary relation in the
    family, checked against all unary operations for n <= 2 and a seeded
    sample of binary ones (the full binary space is 4^16 at n = 2)."""
    import random
    rng = random.Random(20240824)
    for n in (1, 2):
        for p in all_posets(n):
            d = 2 ** n
            dense = [product_expand(r, 1) for r in build_R_leq(p, 2)]
            unary = [OpTable(1, d, t)
                     for t in itertools.product(range(d), repeat=d)]
            if n == 1:
                binary = [OpTable(2, d, t)
                          for t in itertools.product(range(d), repeat=d * d)]
            else:
                binary = [OpTable(2, d, tuple(rng.randrange(d)
                                              for _ in range(d * d)))
                          for _ in range(500)]
                binary += [g.as_optable() for g in clone_generators(p)
                           if g.arity == 2]
            for f in unary + binary:
                structural = is_clone_member(f, p, 1) is not None
                oracle = all(is_invariant(r, f) for r in dense)
                assert structural == oracle


def test_clone_member_normal_form_reproduces_table(posets_upto_3):
    for p in posets_upto_3:
        for g in clone_generators(p):
            t = g.as_optable()
            back = is_clone_member(t, p, 1)
            assert back is not None
            assert back.as_optable() == t


def test_dep_term_json_roundtrip(vee):
    _, diag = canonical_generators(vee)
    back = dep_term_from_json(diag.to_json())
    assert back.as_optable() == diag.as_optable()


def test_shift_generators_shape(chain3):
    shifts = shift_generators(chain3)
    # one shift per strict pair
    assert len(shifts) == len(chain3.strict_pairs())
    for s in shifts:
        assert s.arity == 1


# ---------------------------------------------------------------------------
# essentiality identities


def test_essentiality_identities_upto_3(posets_upto_3):
    for p in posets_upto_3:
        rep = essentiality_check(p)
        assert rep["identities_pass"], rep["failures"]
        assert rep["pass"]


def test_diagonal_reassembles(vee):
    es, diag = canonical_generators(vee)
    alg = EssentialAlgebra(vee, 1)
    for x in alg.elements():
        assert diag.apply([e.apply([x]) for e in es]) == x


def test_essential_algebra_guards():
    with pytest.raises(ValueError):
        EssentialAlgebra(chain(2), 0)
    assert EssentialAlgebra(chain(2), 2).domain_size == 16
