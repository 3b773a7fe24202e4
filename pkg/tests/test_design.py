from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from designforge.design import (
    DesignParams,
    IncidenceStructure,
    dual_design,
    read_design,
    reduce_design,
    t_design_lambda,
    validate_1design,
    write_design,
)
from designforge.errors import (
    BudgetExceeded,
    NonUniformBlockSize,
    NonUniformReplication,
    NotTDesign,
    PartitionViolation,
)

FANO = IncidenceStructure(
    7,
    [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)],
)


def test_constructor_normalizes_and_validates():
    D = IncidenceStructure(4, [(2, 0, 1), (1, 2, 3)])
    assert D.blocks == [(0, 1, 2), (1, 2, 3)]
    with pytest.raises(ValueError):
        IncidenceStructure(3, [(0, 3)])
    with pytest.raises(ValueError):
        IncidenceStructure(3, [(0, 0)])
    with pytest.raises(ValueError):
        IncidenceStructure(3, [])
    with pytest.raises(ValueError):
        IncidenceStructure(0, [(0,)])


def test_multiplicity_tracking():
    D = IncidenceStructure(3, [(0, 1), (0, 1), (1, 2)])
    assert D.b == 3
    assert D.has_repeated_blocks()
    assert D.block_multiset() == {(0, 1): 2, (1, 2): 1}
    assert D.blocks_through(1) == [0, 1, 2]


def test_validate_1design_fano():
    params = validate_1design(FANO)
    assert params.as_tuple() == (1, 7, 3, 3)
    assert params.r == 3


def test_validate_rejects_non_uniform():
    with pytest.raises(NonUniformBlockSize):
        validate_1design(IncidenceStructure(3, [(0, 1), (0, 1, 2)]))
    with pytest.raises(NonUniformReplication):
        validate_1design(IncidenceStructure(3, [(0, 1), (0, 2), (0, 1)]))
    with pytest.raises(NonUniformReplication):
        validate_1design(IncidenceStructure(4, [(0, 1), (0, 1)]))


def test_fano_is_2_design():
    assert t_design_lambda(FANO, 1) == 3
    assert t_design_lambda(FANO, 2) == 1
    with pytest.raises(NotTDesign):
        t_design_lambda(FANO, 3)


def test_t_design_witness_reports_counts():
    D = IncidenceStructure(4, [(0, 1), (0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)])
    with pytest.raises(NotTDesign) as exc:
        t_design_lambda(D, 2)
    clo, chi = exc.value.counts
    assert clo < chi and chi == 2
    assert len(exc.value.witness) == 2


def test_t_design_budget_and_bounds():
    with pytest.raises(BudgetExceeded):
        t_design_lambda(FANO, 2, budget=5)
    with pytest.raises(ValueError):
        t_design_lambda(FANO, 0)
    with pytest.raises(ValueError):
        t_design_lambda(FANO, 4)


def test_complete_design_lambdas():
    # all 3-subsets of a 6-set form a t-design for every t <= 3
    D = IncidenceStructure(6, list(combinations(range(6), 3)))
    assert t_design_lambda(D, 1) == 10
    assert t_design_lambda(D, 2) == 4
    assert t_design_lambda(D, 3) == 1


def test_dual_design_fano_is_self_dual_shape():
    dual = dual_design(FANO)
    assert (dual.v, dual.b) == (7, 7)
    assert validate_1design(dual).as_tuple() == (1, 7, 3, 3)
    assert dual_design(dual) == FANO


def test_dual_preserves_multiplicity():
    D = IncidenceStructure(3, [(0, 1), (0, 1), (0, 2), (1, 2), (0, 2), (1, 2)])
    dual = dual_design(D)
    assert dual.v == 6 and dual.b == 3
    assert dual.has_repeated_blocks() is False
    # repeated points on the dual side come from equal incidence lists
    D2 = IncidenceStructure(4, [(0, 1, 2, 3), (0, 1, 2, 3), (0, 1), (2, 3)])
    dd = dual_design(D2)
    assert dd.has_repeated_blocks()


def test_reduce_design_pairs_into_classes():
    # points {0,1}, {2,3}, {4,5} always appear together
    D = IncidenceStructure(
        6, [(0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5), (0, 1, 2, 3), (2, 3, 4, 5), (0, 1, 4, 5)]
    )
    R = reduce_design(D)
    assert R.class_size == 2
    assert R.classes == [(0, 1), (2, 3), (4, 5)]
    assert R.params.as_tuple() == (1, 3, 2, 4)
    assert not R.trivial
    assert all(R.class_of[p] == i for i, cls in enumerate(R.classes) for p in cls)


def test_reduce_design_trivial_when_classes_are_singletons():
    R = reduce_design(FANO)
    assert R.trivial and R.quotient == FANO


def test_reduce_design_partition_violation():
    # a uniform 1-design whose identical-incidence classes have unequal sizes
    D = IncidenceStructure(5, [(0, 1, 4), (0, 2, 3), (0, 2, 3), (1, 2, 4), (1, 3, 4)])
    validate_1design(D)
    with pytest.raises(PartitionViolation):
        reduce_design(D)


def test_write_read_roundtrip(tmp_path):
    path = tmp_path / "fano.design"
    params = validate_1design(FANO)
    write_design(path, FANO, params, comments=["projective plane of order 2"])
    D, dp = read_design(path)
    assert D == FANO and dp == DesignParams(1, 7, 7, 3, 3)


def test_read_without_params_and_with_multiplicity(tmp_path):
    path = tmp_path / "d.design"
    D0 = IncidenceStructure(3, [(0, 1), (0, 1), (1, 2)])
    write_design(path, D0)
    D, dp = read_design(path)
    assert dp is None and D.b == 3 and D.has_repeated_blocks()


def test_read_rejects_malformed(tmp_path):
    path = tmp_path / "bad.design"
    path.write_text("blocks 3 1\n0 1\n")
    with pytest.raises(ValueError):
        read_design(path)
    path.write_text("design 3 2\n0 1\n")
    with pytest.raises(ValueError):
        read_design(path)
    path.write_text("# nothing\n")
    with pytest.raises(ValueError):
        read_design(path)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_dual_involution_property(data):
    v = data.draw(st.integers(2, 6))
    nb = data.draw(st.integers(1, 6))
    blocks = [
        tuple(sorted(data.draw(st.sets(st.integers(0, v - 1), min_size=1, max_size=v))))
        for _ in range(nb)
    ]
    D = IncidenceStructure(v, blocks)
    covered = {p for blk in blocks for p in blk}
    if len(covered) < v:
        with pytest.raises(ValueError):
            dual_design(D)
        return
    assert dual_design(dual_design(D)) == D
