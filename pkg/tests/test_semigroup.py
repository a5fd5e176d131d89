import pytest
from pydantic import ValidationError
from gs.congruence import Partition, congruences_principal
from gs.errors import GroupMismatch, NotACongruence, NotAGSetCongruence, NotAssociative, NotGX0
from gs.groups import cyclic
from gs.gset import validate_gset
from gs.semigroup import (ElementRole, FiniteSemigroup, RoleKind, build_gx0, ideals, ideals_bruteforce,
                          ideals_form_chain, is_sg_congruence, lift_congruence, orbit_subsemigroups,
                          restrict_congruence, saturation_facts, sg_congruences, sg_congruences_bruteforce,
                          sg_permutable, sg_segregated, underlying_gset, validate_semigroup)

# Elements of the two-point example over the trivial group: e, a, b, 0.
E, A, B, ZERO = 0, 1, 2, 3


@pytest.fixture
def example():
    X = validate_gset(cyclic(1), [[0], [1]], name="example")
    return build_gx0(X.group, X)


@pytest.fixture
def z2_two_orbits():
    return validate_gset(cyclic(2), [[0, 1], [1, 0], [2, 3], [3, 2]])


def z2_regular():
    z2 = cyclic(2)
    return validate_gset(z2, z2.table)


def test_example_table(example):
    assert example.table == ((0, 3, 3, 3), (1, 3, 3, 3), (2, 3, 3, 3), (3, 3, 3, 3))
    assert example.zero == ZERO
    assert [r.tag() for r in example.roles] == ["g0", "x0", "x1", "z"]
    assert example.mul(A, E) == A
    assert example.mul(E, A) == ZERO
    assert example.mul(A, B) == ZERO


def test_gx0_of_regular_z2():
    X = z2_regular()
    S = build_gx0(X.group, X)
    assert S.order == 5
    for x in X.points:
        for g in X.group.elements:
            assert S.mul(2 + x, g) == 2 + X.action[x][g]
    assert validate_semigroup(S.table).zero == 4


def test_gx0_needs_the_same_group():
    with pytest.raises(GroupMismatch):
        build_gx0(cyclic(3), z2_regular())


def test_validate_semigroup():
    left_zero = validate_semigroup([[0, 0], [1, 1]])
    assert left_zero.zero is None
    with pytest.raises(NotAssociative) as e:
        validate_semigroup([[0, 1], [0, 0]])
    assert e.value.witness == (1, 0, 1)


def test_roles():
    assert ElementRole.from_tag("x12") == ElementRole(kind=RoleKind.SET, source=12)
    assert ElementRole.from_tag("z").tag() == "z"
    with pytest.raises(ValueError):
        ElementRole.from_tag("y1")


def test_roles_must_match_the_table(example):
    swapped = tuple(reversed(example.roles))
    with pytest.raises(ValidationError):
        FiniteSemigroup(order=4, table=example.table, zero=ZERO, roles=swapped)


def test_example_congruences(example):
    alpha = Partition.from_labels(["G", "a0", "b", "a0"])
    beta = Partition.from_labels(["G", "a", "b0", "b0"])
    assert is_sg_congruence(example, alpha)
    assert is_sg_congruence(example, beta)
    assert is_sg_congruence(example, Partition.identity(4))

    report = is_sg_congruence(example, Partition.from_blocks(4, [[E, A]]))
    assert not report
    assert report.witness == {"pair": [0, 1], "element": 0, "side": "left"}


def test_sg_congruence_enumerators_agree(example):
    found = sg_congruences(example)
    assert len(found) == 6
    assert found == sg_congruences_bruteforce(example)


def test_example_is_not_permutable(example):
    report = sg_permutable(example)
    assert not report
    assert report.witness == {"alpha": "{{0},{1,2},{3}}", "beta": "{{0},{1,3},{2}}", "pair": [B, ZERO]}


def test_permutable_semigroups():
    assert sg_permutable(validate_semigroup([[0]]))
    X = z2_regular()
    assert sg_permutable(build_gx0(X.group, X))


def test_underlying_gset(z2_two_orbits):
    S = build_gx0(z2_two_orbits.group, z2_two_orbits)
    X = underlying_gset(S)
    assert X.action == z2_two_orbits.action
    assert X.group.table == z2_two_orbits.group.table
    with pytest.raises(NotGX0):
        underlying_gset(validate_semigroup(S.table))


def test_lift_and_restrict(example, z2_two_orbits):
    assert lift_congruence(example, Partition.identity(2)).is_identity()
    lifted = lift_congruence(example, Partition.universal(2))
    assert lifted.blocks() == [(E,), (A, B), (ZERO,)]
    assert is_sg_congruence(example, lifted)

    alpha = Partition.from_labels(["G", "a0", "b", "a0"])
    assert restrict_congruence(example, alpha).is_identity()

    S = build_gx0(z2_two_orbits.group, z2_two_orbits)
    cross = Partition.from_blocks(4, [[0, 2], [1, 3]])
    assert is_sg_congruence(S, lift_congruence(S, cross))
    for p in congruences_principal(z2_two_orbits):
        assert restrict_congruence(S, lift_congruence(S, p)) == p


def test_lift_and_restrict_need_congruences(example, z2_two_orbits):
    S = build_gx0(z2_two_orbits.group, z2_two_orbits)
    with pytest.raises(NotAGSetCongruence):
        lift_congruence(S, Partition.from_blocks(4, [[0, 1, 2]]))
    with pytest.raises(NotACongruence):
        restrict_congruence(example, Partition.from_blocks(4, [[E, A]]))


def test_ideals(example):
    found = ideals(example)
    assert found == [(3,), (1, 3), (2, 3), (1, 2, 3), (0, 1, 2, 3)]
    assert found == ideals_bruteforce(example)
    report = ideals_form_chain(example)
    assert not report
    assert report.witness == {"ideals": [[A, ZERO], [B, ZERO]]}


def test_ideals_of_permutable_semigroups_form_chains():
    assert ideals_form_chain(validate_semigroup([[0]]))
    X = z2_regular()
    S = build_gx0(X.group, X)
    assert ideals(S) == ideals_bruteforce(S)
    assert ideals_form_chain(S)


def test_orbit_subsemigroups(example, z2_two_orbits):
    X = validate_gset(cyclic(1), [[0], [1]])
    assert [T.order for T in orbit_subsemigroups(X.group, X)] == [3, 3]
    assert [T.order for T in orbit_subsemigroups(z2_two_orbits.group, z2_two_orbits)] == [5, 5]
    regular = z2_regular()
    (only,) = orbit_subsemigroups(regular.group, regular)
    assert only == build_gx0(regular.group, regular)


def test_semigroup_segregation(z2_two_orbits):
    X = validate_gset(cyclic(1), [[0], [1]])
    assert sg_segregated(X.group, X)
    assert not sg_segregated(z2_two_orbits.group, z2_two_orbits)
    regular = z2_regular()
    assert sg_segregated(regular.group, regular)


def test_saturation_facts():
    X = z2_regular()
    report = saturation_facts(build_gx0(X.group, X))
    assert report
    assert report.stats["congruences"] >= 2
