import pytest
from gs.algebra import (associativity_witness, closure, interval_subgroups, make_subgroup, set_product,
                        subgroups, validate_group)
from gs.errors import (BadShape, DifferentParents, H0NotSubgroup, NoInverse, NotAssociative,
                       NotClosed)
from gs.groups import cyclic, group_named


def test_z2_table_is_a_group():
    g = validate_group([[0, 1], [1, 0]], name="Z2")
    assert g.order == 2
    assert g.identity == 0
    assert g.inverse == (0, 1)
    assert g.is_abelian()


def test_missing_inverse():
    with pytest.raises(NoInverse) as e:
        validate_group([[0, 1], [1, 1]])
    assert e.value.witness == (1,)


def test_non_associative_table():
    with pytest.raises(NotAssociative):
        validate_group([[0, 1, 2], [1, 0, 0], [2, 0, 0]])


def test_table_shape_and_range():
    with pytest.raises(BadShape):
        validate_group([[0, 1], [1]])
    with pytest.raises(NotClosed):
        validate_group([[0, 2], [2, 0]])


def test_associativity_witness_is_least_triple():
    assert associativity_witness(((0, 1), (1, 0))) is None
    assert associativity_witness(((0, 1), (0, 0))) == (1, 0, 1)


def test_identity_need_not_be_first():
    g = validate_group([[1, 0], [0, 1]])
    assert g.identity == 1
    c = g.canonical()
    assert c.identity == 0
    assert c.table == ((0, 1), (1, 0))


def test_subgroup_counts():
    assert len(subgroups(cyclic(1))) == 1
    assert [h.members for h in subgroups(cyclic(4))] == [(0,), (0, 2), (0, 1, 2, 3)]
    assert [h.order for h in subgroups(group_named("S3"))] == [1, 2, 2, 2, 3, 6]
    assert len(subgroups(group_named("Q8"))) == 6
    assert len(subgroups(group_named("D4"))) == 10
    assert len(subgroups(group_named("Z2xZ2xZ2"))) == 16


def test_closure():
    z4 = cyclic(4)
    assert closure(z4, [2]) == frozenset({0, 2})
    assert closure(z4, [1]) == frozenset(range(4))
    assert closure(z4, []) == frozenset({0})


def test_interval_from_trivial_subgroup_is_everything():
    s3 = group_named("S3")
    assert interval_subgroups(s3, make_subgroup(s3, [0])) == subgroups(s3)


def test_interval_above_a_transposition():
    s3 = group_named("S3")
    h0 = make_subgroup(s3, [0, 1])
    assert [k.members for k in interval_subgroups(s3, h0)] == [(0, 1), tuple(range(6))]


def test_interval_in_z4():
    z4 = cyclic(4)
    assert [k.members for k in interval_subgroups(z4, make_subgroup(z4, [0, 2]))] == [(0, 2), (0, 1, 2, 3)]


def test_interval_needs_a_subgroup_of_the_same_group():
    with pytest.raises(H0NotSubgroup):
        interval_subgroups(cyclic(4), make_subgroup(cyclic(2), [0]))


def test_set_products():
    s3 = group_named("S3")
    h = make_subgroup(s3, [0, 1])
    k = make_subgroup(s3, [0, 2])
    assert set_product(h, h) == frozenset(h.members)
    assert len(set_product(h, k)) == 4
    assert set_product(h, k) != set_product(k, h)

    z4 = cyclic(4)
    a, b = make_subgroup(z4, [0, 2]), make_subgroup(z4, range(4))
    assert set_product(a, b) == set_product(b, a)


def test_set_product_needs_one_parent():
    with pytest.raises(DifferentParents):
        set_product(make_subgroup(cyclic(2), [0]), make_subgroup(cyclic(3), [0]))


def test_subgroup_model_rejects_non_subgroups():
    with pytest.raises(ValueError):
        make_subgroup(cyclic(4), [0, 1])
