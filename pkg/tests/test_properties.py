import itertools
import pytest
from gs.algebra import closure, set_product, subgroups
from gs.congruence import (BRUTEFORCE_CUTOFF, compose, congruences_bruteforce, congruences_principal,
                           gset_permutable, join)
from gs.groups import groups_up_to
from gs.gset import catalog, coset_action, orbit_of, stabilizer
from gs.semigroup import IDEAL_SUBSET_SCAN_LIMIT, build_gx0, ideals, ideals_bruteforce
from gs.theorems import DEFAULT_BOUNDS

SMALL_CATALOG = list(catalog(4, 4, 2))


def instance_id(X):
    return X.name


# Checks shared by the quick and the slow runs.

def check_product_formula(G):
    found = subgroups(G)
    for h, k in itertools.product(found, repeat=2):
        common = set(h.members) & set(k.members)
        assert len(set_product(h, k)) * len(common) == h.order * k.order


def check_small_closures_are_listed(G):
    members = {frozenset(h.members) for h in subgroups(G)}
    for a, b in itertools.combinations_with_replacement(G.elements, 2):
        assert closure(G, [a, b]) in members


def check_coset_stabilizers(G):
    for h in subgroups(G):
        assert stabilizer(coset_action(G, h), 0) == h


def check_orbit_stabilizer(X):
    for x in X.points:
        assert len(orbit_of(X, x)) * stabilizer(X, x).order == X.group.order


def check_lattice(X):
    cons = congruences_principal(X)
    found = set(cons)
    for p, q in itertools.combinations(cons, 2):
        assert join(p, q) in found
    for p, q in itertools.product(cons, repeat=2):
        pq, qp = compose(p, q), compose(q, p)
        assert all((c, a) in qp for a, c in pq.pairs)
    if X.carrier_size <= BRUTEFORCE_CUTOFF:
        brute = gset_permutable(X, congruences_bruteforce(X))
        assert brute.verdict == gset_permutable(X, cons).verdict


def check_ideals(X):
    S = build_gx0(X.group, X)
    if S.order <= IDEAL_SUBSET_SCAN_LIMIT:
        assert ideals(S) == ideals_bruteforce(S)


@pytest.mark.parametrize("G", groups_up_to(4), ids=lambda G: G.name)
def test_subgroup_invariants(G):
    check_product_formula(G)
    check_small_closures_are_listed(G)
    check_coset_stabilizers(G)


@pytest.mark.parametrize("X", SMALL_CATALOG, ids=instance_id)
def test_gset_invariants(X):
    check_orbit_stabilizer(X)
    check_lattice(X)
    check_ideals(X)


@pytest.mark.slow
def test_subgroup_invariants_of_every_builtin_group():
    for G in groups_up_to(DEFAULT_BOUNDS.max_group):
        check_product_formula(G)
        check_small_closures_are_listed(G)
        check_coset_stabilizers(G)


@pytest.mark.slow
def test_gset_invariants_at_default_bounds():
    for X in catalog(DEFAULT_BOUNDS.max_group, DEFAULT_BOUNDS.max_carrier, DEFAULT_BOUNDS.max_orbits):
        check_orbit_stabilizer(X)
        check_lattice(X)
        check_ideals(X)
