from itertools import combinations
from math import factorial
from random import Random

import pytest

from designforge.atlas import build_alternating, build_psl2, point_stabilizer_subgroup
from designforge.autsearch import (
    aut_group,
    brute_force_aut_order,
    expand_class_perm,
    fixes_every_block,
    is_design_automorphism,
    kernel_generators,
    lift_test_method1,
    lift_test_method2,
    normalizing_map_check,
    reduction_kernel_order,
    verify_kernel_intersection,
    verify_kernel_quotient,
)
from designforge.construct import method1_design, method2_design
from designforge.design import IncidenceStructure, reduce_design, validate_1design
from designforge.group import PermGroup, element_of_order
from designforge.perm import Permutation

FANO = IncidenceStructure(
    7,
    [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)],
)


from oracles import oracle_aut_order


def random_structure(rng, max_v=12):
    v = rng.randrange(3, max_v + 1)
    nb = rng.randrange(2, 7)
    blocks = []
    while len(blocks) < nb:
        size = rng.randrange(1, v)
        blocks.append(tuple(sorted(rng.sample(range(v), size))))
    covered = {p for blk in blocks for p in blk}
    blocks.append(tuple(sorted(set(range(v)) - covered | {0})))
    return IncidenceStructure(v, blocks)


def test_fano_automorphism_group():
    res = aut_group(FANO)
    assert res.order == 168
    assert res.complete
    assert res.point_transitive and res.block_transitive
    assert all(is_design_automorphism(FANO, p) for p in res.point_gens)


def test_aut_generators_act_on_points_and_blocks():
    res = aut_group(FANO)
    for g in res.generators:
        assert g.degree == FANO.v + FANO.b


def test_brute_force_matches_search_small():
    D = IncidenceStructure(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    assert brute_force_aut_order(D) == aut_group(D).order


def test_oracle_agrees_on_known_cases():
    assert oracle_aut_order(FANO) == 168
    complete = IncidenceStructure(5, list(combinations(range(5), 2)))
    assert oracle_aut_order(complete) == factorial(5)
    assert aut_group(complete).order == factorial(5)


def test_aut_search_vs_oracle_random_corpus():
    rng = Random(2024)
    for _ in range(150):
        D = random_structure(rng, max_v=9)
        assert aut_group(D).order == oracle_aut_order(D), D.blocks


def test_aut_respects_multiplicity():
    # the repeated block breaks the symmetry that swaps the two pairs
    D1 = IncidenceStructure(4, [(0, 1), (0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)])
    D2 = IncidenceStructure(4, [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)])
    assert aut_group(D2).order > aut_group(D1).order
    assert aut_group(D1).order == oracle_aut_order(D1)


def test_aut_budget_marks_incomplete():
    G = build_psl2(9)
    D = method1_design(G).design
    res = aut_group(D, budget=3)
    assert not res.complete
    assert all(is_design_automorphism(D, p) for p in res.point_gens)


def test_kernel_of_reduction():
    D = IncidenceStructure(
        6, [(0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5), (0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5)]
    )
    R = reduce_design(D)
    assert reduction_kernel_order(R) == 2**3
    gens = kernel_generators(R)
    for g in gens:
        assert is_design_automorphism(D, g)
        assert fixes_every_block(D, g)
    assert PermGroup(gens, D.v).order() == 8


def test_expand_class_perm():
    D = IncidenceStructure(
        6, [(0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5), (0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5)]
    )
    R = reduce_design(D)
    sigma = aut_group(R.quotient).point_gens[0]
    lifted = expand_class_perm(R, sigma)
    assert is_design_automorphism(D, lifted)


def test_verify_kernel_quotient_small():
    D = IncidenceStructure(
        6, [(0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5), (0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5)]
    )
    R = reduce_design(D)
    rep = verify_kernel_quotient(D, R)
    assert rep.complete and rep.product_ok
    assert rep.quotient_lifts_ok and rep.kernel_fixes_blocks
    assert rep.kernel_order == 8
    assert rep.aut_full.order == rep.kernel_order * rep.aut_quotient.order


def test_normalizing_map_check():
    G = build_psl2(9)
    from designforge.atlas import frobenius_on_projline

    assert normalizing_map_check(G, frobenius_on_projline(9))
    # a transposition of two projective points does not normalize PSL(2,9)
    assert not normalizing_map_check(G, Permutation([1, 0] + list(range(2, 10))))


def test_lift_method1_natural():
    G = build_alternating(6)
    dsn = method1_design(G)
    swap = Permutation([1, 0, 2, 3, 4, 5])
    assert normalizing_map_check(G, swap)
    assert lift_test_method1(dsn, swap)


def test_lift_method2():
    from designforge.atlas import diagonal_map_on_projline, frobenius_on_projline

    G = build_psl2(9)
    M = point_stabilizer_subgroup(G, 0)
    g = element_of_order(M, 2)
    dsn = method2_design(G, M, g)
    frob = frobenius_on_projline(9)
    assert lift_test_method2(dsn, frob) == is_lift_by_hand(dsn, frob)
    assert lift_test_method2(dsn, frob)
    # inner maps always lift
    assert all(lift_test_method2(dsn, x) for x in G.gens)


def is_lift_by_hand(dsn, phi):
    pi = dsn.induced_point_perm(phi)
    if pi is None:
        return False
    return is_design_automorphism(dsn.design, pi)


def test_verify_kernel_intersection():
    G = build_psl2(9)
    M = point_stabilizer_subgroup(G, 0)
    g = element_of_order(M, 2)
    dsn = method2_design(G, M, g)
    from designforge.atlas import frobenius_on_projline

    rep = verify_kernel_intersection(dsn, [frobenius_on_projline(9)] + list(G.gens))
    assert rep.ok
    assert all(rep.lifted)
