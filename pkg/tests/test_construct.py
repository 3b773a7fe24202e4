import pytest

from designforge.atlas import (
    build_alternating,
    build_psl2,
    build_symmetric,
    embed_pgl2,
    point_stabilizer_subgroup,
)
from designforge.construct import (
    coset_action,
    faithfulness_check,
    method1_design,
    method2_design,
    perm_char_value,
    stabilizer_orbits,
)
from designforge.errors import OrbitOverflow
from designforge.group import PermGroup, conjugacy_class, element_of_order
from designforge.perm import Permutation, parse_cycle_string


def test_stabilizer_orbits_sorted():
    G = build_psl2(7)
    orbits = stabilizer_orbits(G, 0)
    assert orbits[0] == [0]
    assert [len(o) for o in orbits] == [1, 7]


def test_method1_natural_alternating():
    # A6 acting on 6 points: the point stabilizer is transitive on the rest
    G = build_alternating(6)
    M1 = method1_design(G)
    assert M1.params.as_tuple() == (1, 6, 5, 5)
    assert M1.design.b == 6
    assert M1.delta == (1, 2, 3, 4, 5)


def test_method1_orbit_selectors():
    G = build_psl2(9)
    M1 = method1_design(G, alpha=0, orbit_size=9)
    assert M1.params.as_tuple() == (1, 10, 9, 9)
    with pytest.raises(ValueError):
        method1_design(G, orbit_size=4)
    with pytest.raises(ValueError):
        method1_design(G, orbit_index=10)


def test_method1_requires_transitive():
    G = PermGroup([parse_cycle_string("(1,2,3)", 5)], 5)
    with pytest.raises(ValueError):
        method1_design(G)


def test_method1_blocks_are_group_translates():
    G = build_symmetric(5)
    M1 = method1_design(G)
    base = set(M1.delta)
    blocks = {tuple(sorted(g.images[p] for p in base)) for g in G.elements()}
    assert blocks == set(M1.design.blocks)


def test_coset_action_matches_index():
    G = build_psl2(9)
    M = embed_pgl2(3, "squared")
    ca = coset_action(G, M)
    assert ca.group.degree == G.order() // M.order() == 15
    assert ca.group.is_transitive()
    assert ca.point_sets[0] == frozenset(M.elements())


def test_coset_action_rejects_huge_subgroup():
    G = build_psl2(9)
    with pytest.raises(OrbitOverflow):
        coset_action(G, G, elem_cap=100)


def test_coset_action_faithful_for_simple_group():
    G = build_psl2(9)
    ca = coset_action(G, embed_pgl2(3, "squared"))
    assert faithfulness_check(G, ca.induced_perm, samples=50)


def test_method2_basic_parameters():
    G = build_psl2(9)
    M = point_stabilizer_subgroup(G, 0)
    g = element_of_order(M, 2)
    D2 = method2_design(G, M, g)
    assert D2.params.v == len(conjugacy_class(G, g))
    assert D2.design.b == G.order() // M.order()
    assert D2.params.lam == D2.params.b * D2.params.k // D2.params.v
    # base block = class elements lying inside M
    assert all(D2.class_elems[i] in M for i in D2.base_block)


def test_method2_rejects_bad_element():
    G = build_psl2(5)
    M = point_stabilizer_subgroup(G, 0)
    with pytest.raises(ValueError):
        method2_design(G, M, Permutation.identity(G.degree))
    outsider = next(x for x in conjugacy_class(G, element_of_order(G, 2)) if x not in M)
    with pytest.raises(ValueError):
        method2_design(G, M, outsider)


def test_method2_block_transversal_translates_base():
    G = build_psl2(5)
    M = point_stabilizer_subgroup(G, 0)
    g = element_of_order(M, 2)
    D2 = method2_design(G, M, g)
    act = D2.index_set_action()
    for blk, u in D2.block_transversal.items():
        assert act(D2.base_block, u, u.inverse()) == blk


def test_method2_conjugator_to():
    G = build_psl2(5)
    M = point_stabilizer_subgroup(G, 0)
    g = element_of_order(M, 2)
    D2 = method2_design(G, M, g)
    for pt in range(0, D2.params.v, 3):
        u = D2.conjugator_to(pt)
        assert g.conjugate(u) == D2.class_elems[pt]


def test_method2_induced_point_perm():
    G = build_psl2(9)
    M = point_stabilizer_subgroup(G, 0)
    g = element_of_order(M, 2)
    D2 = method2_design(G, M, g)
    x = G.gens[0]
    pi = D2.induced_point_perm(x)
    assert pi is not None
    assert all(
        D2.class_elems[pi.images[i]] == D2.class_elems[i].conjugate(x)
        for i in range(D2.params.v)
    )


def test_perm_char_point_stabilizer_shortcut():
    G = build_psl2(9)
    M = point_stabilizer_subgroup(G, 0)
    g = element_of_order(M, 2)
    assert perm_char_value(G, M, g) == len(g.fixed_points())


def test_perm_char_equals_replication():
    # the replication number of a Method-2 design is 1_M^G(g)
    G = build_psl2(9)
    M = embed_pgl2(3, "squared")
    ca = coset_action(G, M)
    g = element_of_order(M, 2)
    D2 = method2_design(G, M, g)
    assert D2.params.lam == perm_char_value(G, M, g, coset=ca)


def test_faithfulness_detects_kernel():
    G = build_symmetric(4)

    def collapse(x):
        # quotient onto S3 via the Klein-four kernel: kills some elements
        return Permutation.identity(4) if x.order() == 2 and not x.fixed_points() else x

    assert not faithfulness_check(G, collapse, samples=200)
