"""Essential algebras of finite posets: neighbourhoods, covers, and the
c-minimal classification, with independent brute-force verification."""

from .poset import (Poset, PosetError, Lattice, LatticeError, validate_poset,
                    poset_from_pairs, load_poset, chain, discrete, star,
                    reverse, all_posets, downsets, antichains, j_lattice, ir,
                    birkhoff_roundtrip, structural_predicates, automorphisms,
                    minimal_incomparable_pair, lattice_isomorphic,
                    poset_isomorphism)
from .relalg import (EquivPartition, DenseRelation, ProductRelation, OpTable,
                     enumerate_partitions, delta_of, product_expand,
                     project_pair, relational_compose, intersect_all,
                     is_invariant, restrict_dense)
from .essential import (DepTermOp, EssentialAlgebra, build_R_leq,
                        is_clone_member, canonical_generators,
                        componentwise_nand, essentiality_check, recover_order,
                        delta_upper, shift_generators, clone_generators)
from .nbhd import (Neighbourhood, CongruenceLattice, neighbourhood,
                   is_neighbourhood, slice_of, idempotent_witness,
                   enumerate_neighbourhoods, m_of, congruences, cover_check,
                   irredundant_nonrefinable, cat_equiv_condition, proof_cover,
                   axis_cover, load_neighbourhood)
from .classify import (IsoWitness, ClassCatalogue, term_isomorphic,
                       nonindexed_isomorphic, is_cminimal, enumerate_cminimal,
                       extend_cminimal, property_star,
                       counterexample_construct, verify_theorems)
from . import oracle

__version__ = "0.1.0"
