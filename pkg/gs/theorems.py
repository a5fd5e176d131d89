"""Exhaustive checks of the permutability characterizations on bounded instances.

Each verifier computes both sides of an equivalence by separate code paths and
reports whether they agree. A disagreement carries the serialized instance in
its witness so it can be replayed from the report alone.
"""
import itertools
import logging
import multiprocessing
import time
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
from pydantic import BaseModel, ConfigDict
from gs.algebra import (FiniteGroup, Subgroup, interval_subgroups, is_subgroup, make_subgroup, right_coset,
                        set_product)
from gs.congruence import (BRUTEFORCE_CUTOFF, Partition, compose, congruences_bruteforce,
                           congruences_principal, gset_permutable, is_congruence, is_segregated,
                           permutable_pair)
from gs.errors import BoundsExceeded, GroupMismatch, NotTransitive, UnknownClaim
from gs.groups import cyclic
from gs.gset import GSet, catalog, is_transitive, orbits, stabilizer, suborbit, validate_gset
from gs.printer import Printer
from gs.report import CLAIMS, SuiteSummary, VerdictReport
from gs.semigroup import (build_gx0, ideals_form_chain, is_sg_congruence, orbit_subsemigroups, saturation_facts,
                          sg_congruences, sg_congruences_bruteforce, sg_permutable, sg_segregated)

logger = logging.getLogger(__name__)


class Bounds(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_group: int = 8
    max_carrier: int = 8
    max_orbits: int = 3

    def check(self, limits: Optional["Bounds"] = None) -> "Bounds":
        limits = limits or DESK_LIMITS
        for field in ("max_group", "max_carrier", "max_orbits"):
            value, limit = getattr(self, field), getattr(limits, field)
            if not (1 <= value <= limit):
                raise BoundsExceeded(f"{field} must lie in 1..{limit}, got {value}.")
        return self


DESK_LIMITS = Bounds(max_group=8, max_carrier=10, max_orbits=4)
DEFAULT_BOUNDS = Bounds()

# Claims checked once per catalog instance (the rest run once per suite).
INSTANCE_CLAIMS = [c for c in CLAIMS if c != "example"]


def _serialize(X: GSet) -> str:
    return Printer().print(X)


def _verdict(claim: str, X: GSet, agree: bool, details: Dict[str, Any],
             stats: Optional[Dict[str, int]] = None, descriptor: Optional[str] = None) -> VerdictReport:
    witness = None
    if not agree:
        witness = dict(details, instance=_serialize(X))
    return VerdictReport(claim_id=claim, instance_descriptor=descriptor or X.name,
                         verdict=agree, witness=witness, stats=stats or {})


def _require_transitive(G: FiniteGroup, X: GSet):
    if X.group != G:
        raise GroupMismatch("The G-set is over a different group.")
    if not is_transitive(X):
        raise NotTransitive(f"{X.name or 'The G-set'} has more than one orbit.")


# Transitive G-sets and subgroup intervals.

def stabilizer_class(X: GSet, p: Partition, x: int) -> Tuple[int, ...]:
    """H_α = {g : (x^g, x) ∈ α}."""
    return tuple(g for g in X.group.elements if p.related(X.action[x][g], x))


def coset_partition(X: GSet, h: Subgroup, x: int) -> Optional[Partition]:
    """α_H = {(x^g, x^h) : Hg = Hh}, or None if the cosets do not descend to points."""
    labels: Dict[int, frozenset] = {}
    for g in X.group.elements:
        y = X.action[x][g]
        coset = right_coset(h, g)
        if labels.setdefault(y, coset) != coset:
            return None
    return Partition.from_labels([labels[y] for y in X.points])


def verify_lemma1(G: FiniteGroup, X: GSet, x: int) -> VerdictReport:
    """Con(X) and the interval [Stab(x), G] correspond through φ and ψ."""
    _require_transitive(G, X)
    descriptor = f"{X.name} @{x}"
    cons = congruences_principal(X)
    stab = stabilizer(X, x)
    interval = interval_subgroups(G, stab)
    members = {k.members for k in interval}
    stats = {"congruences": len(cons), "subgroups": len(interval)}

    def fail(step: str, **details) -> VerdictReport:
        return _verdict("lemma1", X, False, dict(details, step=step, base_point=x), stats, descriptor)

    phi = {}
    for alpha in cons:
        h = stabilizer_class(X, alpha, x)
        if not is_subgroup(G, h) or h not in members:
            return fail("phi", congruence=str(alpha), image=list(h))
        phi[alpha] = h

    psi = {}
    for k in interval:
        alpha = coset_partition(X, k, x)
        if alpha is None or not is_congruence(X, alpha):
            return fail("psi", subgroup=list(k.members))
        psi[k.members] = alpha

    for alpha in cons:
        if psi[phi[alpha]] != alpha:
            return fail("psi_phi", congruence=str(alpha))
    for k in interval:
        if phi.get(psi[k.members]) != k.members:
            return fail("phi_psi", subgroup=list(k.members))
    if len(cons) != len(interval):
        return fail("bijection", congruences=len(cons), subgroups=len(interval))

    for alpha, beta in itertools.permutations(cons, 2):
        below = set(phi[alpha]) <= set(phi[beta])
        if alpha.refines(beta) != below:
            return fail("order", congruences=[str(alpha), str(beta)])
    return _verdict("lemma1", X, True, {}, stats, descriptor)


def interval_products_commute(G: FiniteGroup, X: GSet, x: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """The first pair H, K in [Stab(x), G] with HK != KH, or None."""
    interval = interval_subgroups(G, stabilizer(X, x))
    for h, k in itertools.combinations(interval, 2):
        if set_product(h, k) != set_product(k, h):
            return h.members, k.members
    return None


def pairwise_mismatch(X: GSet, x: int, congruences: Sequence[Partition],
                      permutes: Dict[Tuple[int, int], bool]) -> Optional[Tuple[int, int]]:
    """The first pair i < j where α∘β = β∘α and H_αH_β = H_βH_α disagree, or None.

    `permutes` maps index pairs to the composition verdicts, computed once per G-set.
    """
    classes = [make_subgroup(X.group, stabilizer_class(X, p, x)) for p in congruences]
    for (i, j), commute in permutes.items():
        products = set_product(classes[i], classes[j]) == set_product(classes[j], classes[i])
        if products != commute:
            return i, j
    return None


def verify_lemma2(G: FiniteGroup, X: GSet, x: int = 0) -> VerdictReport:
    """Permutability of X against HK = KH in the interval, for every base point.

    Each pair of congruences is also checked on its own: α and β permute exactly when
    their stabilizer classes do.
    """
    _require_transitive(G, X)
    cons = congruences_principal(X)
    permutes = {(i, j): permutable_pair(cons[i], cons[j]).verdict
                for i, j in itertools.combinations(range(len(cons)), 2)}
    permutable = all(permutes.values())
    points = [x] + [y for y in X.points if y != x]
    stats = {"base_points": len(points), "pairs": len(permutes)}

    for y in points:
        for p in cons:
            if not is_subgroup(G, stabilizer_class(X, p, y)):
                return _verdict("lemma2", X, False, {"step": "class", "base_point": y, "congruence": str(p)},
                                stats)
        mismatch = pairwise_mismatch(X, y, cons, permutes)
        if mismatch is not None:
            i, j = mismatch
            details = {"step": "pairwise", "base_point": y, "alpha": str(cons[i]), "beta": str(cons[j]),
                       "permutable": permutes[mismatch]}
            return _verdict("lemma2", X, False, details, stats)

    commuting = {y: interval_products_commute(G, X, y) is None for y in points}
    agree = all(v == permutable for v in commuting.values())
    details = {"step": "interval", "permutable": permutable,
               "products_commute": [commuting[y] for y in X.points]}
    pair = interval_products_commute(G, X, x) if not agree else None
    if pair is not None:
        details["subgroups"] = [list(pair[0]), list(pair[1])]
    return _verdict("lemma2", X, agree, details, stats)


# Arbitrary G-sets.

def verify_lemma3(G: FiniteGroup, X: GSet) -> VerdictReport:
    """Permutable iff segregated, at most two orbits, and every orbit permutable."""
    if X.group != G:
        raise GroupMismatch("The G-set is over a different group.")
    cons = congruences_principal(X)
    permutable = gset_permutable(X, cons).verdict
    blocks = orbits(X).blocks
    segregated = is_segregated(X, cons).verdict
    orbit_permutable = [gset_permutable(suborbit(X, b)).verdict for b in blocks]
    characterized = segregated and len(blocks) <= 2 and all(orbit_permutable)
    details = {"permutable": permutable, "segregated": segregated,
               "orbits": len(blocks), "orbits_permutable": orbit_permutable}
    return _verdict("lemma3", X, permutable == characterized, details,
                    {"congruences": len(cons), "orbits": len(blocks)})


def verify_lemma4(G: FiniteGroup, X: GSet) -> VerdictReport:
    """(G,X,0) is segregated iff X is."""
    if X.group != G:
        raise GroupMismatch("The G-set is over a different group.")
    on_set = is_segregated(X).verdict
    on_semigroup = sg_segregated(G, X).verdict
    return _verdict("lemma4", X, on_set == on_semigroup,
                    {"gset_segregated": on_set, "semigroup_segregated": on_semigroup})


def verify_thm1(G: FiniteGroup, X: GSet) -> VerdictReport:
    """X transitive and permutable iff (G,X,0) permutable."""
    if X.group != G:
        raise GroupMismatch("The G-set is over a different group.")
    transitive = is_transitive(X)
    left = transitive and gset_permutable(X).verdict
    S = build_gx0(G, X)
    scons = sg_congruences(S)
    right = sg_permutable(S, scons)
    details: Dict[str, Any] = {"transitive": transitive, "gset_permutable": left,
                               "sg_permutable": right.verdict}
    stats = {"sg_congruences": len(scons)}
    if left != right.verdict:
        if right.witness is not None:
            details["sg_witness"] = right.witness
        return _verdict("thm1", X, False, details, stats)
    if left:
        facts = saturation_facts(S, scons)
        if not facts:
            details["saturation"] = facts.witness
            return _verdict("thm1", X, False, details, stats)
    return _verdict("thm1", X, True, details, stats)


def verify_thm6(G: FiniteGroup, X: GSet) -> VerdictReport:
    """X permutable iff (G,X,0) segregated with at most two orbit subsemigroups, each permutable."""
    if X.group != G:
        raise GroupMismatch("The G-set is over a different group.")
    permutable = gset_permutable(X).verdict
    subsemigroups = orbit_subsemigroups(G, X)
    segregated = sg_segregated(G, X).verdict
    parts_permutable = [sg_permutable(T).verdict for T in subsemigroups]
    characterized = segregated and len(subsemigroups) <= 2 and all(parts_permutable)
    details = {"permutable": permutable, "sg_segregated": segregated,
               "orbit_subsemigroups": len(subsemigroups), "subsemigroups_permutable": parts_permutable}
    return _verdict("thm6", X, permutable == characterized, details,
                    {"orbit_subsemigroups": len(subsemigroups)})


def verify_ideal_chain(G: FiniteGroup, X: GSet) -> VerdictReport:
    """A permutable (G,X,0) has totally ordered ideals."""
    S = build_gx0(G, X)
    permutable = sg_permutable(S).verdict
    if not permutable:
        return _verdict("ideal_chain", X, True, {}, {"sg_permutable": 0})
    chain = ideals_form_chain(S)
    return _verdict("ideal_chain", X, chain.verdict, dict(chain.witness or {}),
                    dict(chain.stats, sg_permutable=1))


def _lattice_difference(a: Sequence[Partition], b: Sequence[Partition]) -> Optional[str]:
    extra = sorted(set(a) ^ set(b))
    return str(extra[0]) if extra else None


def verify_oracle(G: FiniteGroup, X: GSet, cutoff: int = BRUTEFORCE_CUTOFF) -> VerdictReport:
    """Brute force and principal closure find the same congruences, on X and on (G,X,0)."""
    stats: Dict[str, int] = {}
    details: Dict[str, Any] = {}
    if X.carrier_size <= cutoff:
        brute, principal = congruences_bruteforce(X, cutoff), congruences_principal(X)
        stats["gset_congruences"] = len(principal)
        diff = _lattice_difference(brute, principal)
        if diff is not None:
            details.update(algebra="gset", bruteforce=len(brute), principal=len(principal), partition=diff)
            return _verdict("oracle", X, False, details, stats)
    S = build_gx0(G, X)
    if S.order <= cutoff:
        brute, principal = sg_congruences_bruteforce(S, cutoff), sg_congruences(S)
        stats["sg_congruences"] = len(principal)
        diff = _lattice_difference(brute, principal)
        if diff is not None:
            details.update(algebra="semigroup", bruteforce=len(brute), principal=len(principal), partition=diff)
            return _verdict("oracle", X, False, details, stats)
    return _verdict("oracle", X, True, details, stats)


# The worked example: X = {a, b} fixed pointwise.

def example_gset(group: FiniteGroup) -> GSet:
    action = [[0] * group.order, [1] * group.order]
    return validate_gset(group, action, name=f"{group.name}:{{a,b}}")


def example_assertions(group: FiniteGroup) -> List[VerdictReport]:
    """The five checks of the two-point example, one report each."""
    X = example_gset(group)
    S = build_gx0(group, X)
    n = group.order
    a, b, zero = n, n + 1, n + 2
    alpha = Partition.from_labels(["G"] * n + ["a0", "b", "a0"])
    beta = Partition.from_labels(["G"] * n + ["a", "b0", "b0"])
    alpha_beta = compose(alpha, beta)
    beta_alpha = compose(beta, alpha)
    congruent = [is_sg_congruence(S, alpha), is_sg_congruence(S, beta)]

    checks = [
        ("gset_permutable", gset_permutable(X)),
        ("congruences", all(congruent), {"alpha": congruent[0].witness, "beta": congruent[1].witness}),
        ("pair_in_alpha_beta", (a, b) in alpha_beta, {"pair": [a, b], "relation": "alpha_beta"}),
        ("pair_not_in_beta_alpha", (a, b) not in beta_alpha, {"pair": [a, b], "relation": "beta_alpha"}),
    ]
    sg = sg_permutable(S)
    checks.append(("sg_not_permutable", not sg.verdict, {"sg_permutable": True}))

    reports = []
    for check in checks:
        name, outcome = check[0], check[1]
        descriptor = f"{group.name} {name}"
        if isinstance(outcome, VerdictReport):
            reports.append(outcome.model_copy(update={"claim_id": "example", "instance_descriptor": descriptor}))
            continue
        reports.append(VerdictReport(claim_id="example", instance_descriptor=descriptor, verdict=outcome,
                                     witness=None if outcome else dict(check[2], zero=zero)))
    return reports


def example_groups() -> List[FiniteGroup]:
    return [cyclic(1), cyclic(2)]


def example_reports(group: Optional[FiniteGroup] = None) -> List[VerdictReport]:
    """Every example assertion for the given group, or for the trivial group and Z2."""
    groups = [group] if group is not None else example_groups()
    return [r for g in groups for r in example_assertions(g)]


def reproduce_example(group: Optional[FiniteGroup] = None) -> VerdictReport:
    """The example assertions folded into one report."""
    groups = [group] if group is not None else example_groups()
    reports = example_reports(group)
    for r in reports:
        if not r:
            witness = dict(r.witness, check=r.instance_descriptor)
            return VerdictReport(claim_id="example", verdict=False, witness=witness,
                                 stats={"assertions": len(reports)})
    return VerdictReport(claim_id="example", instance_descriptor=" ".join(g.name for g in groups),
                         verdict=True, stats={"assertions": len(reports)})


# The catalog suite.

def _instance_reports(claim: str, X: GSet) -> List[Tuple[int, VerdictReport]]:
    G = X.group
    if claim == "lemma1":
        if not is_transitive(X):
            return []
        return [(x, verify_lemma1(G, X, x)) for x in X.points]
    if claim == "lemma2":
        return [(0, verify_lemma2(G, X))] if is_transitive(X) else []
    verifier = {
        "lemma3": verify_lemma3,
        "lemma4": verify_lemma4,
        "thm1": verify_thm1,
        "thm6": verify_thm6,
        "ideal_chain": verify_ideal_chain,
        "oracle": verify_oracle,
    }[claim]
    return [(0, verifier(G, X))]


def _run_unit(unit) -> List[Tuple[Tuple[int, int, int], VerdictReport]]:
    position, X, claims = unit
    results = []
    for claim in claims:
        for point, report in _instance_reports(claim, X):
            results.append(((CLAIMS.index(claim), position, point), report))
    return results


def resolve_claims(names: Iterable[str]) -> List[str]:
    """Claim names in canonical order; 'all' expands to every claim."""
    wanted = set()
    for name in names:
        if name == "all":
            wanted.update(CLAIMS)
        elif name in CLAIMS:
            wanted.add(name)
        else:
            raise UnknownClaim(f"Unknown claim '{name}'; expected one of {', '.join(CLAIMS)} or all.")
    return [c for c in CLAIMS if c in wanted]


def run_catalog_suite(bounds: Bounds = DEFAULT_BOUNDS, claims: Iterable[str] = ("all",),
                      jobs: int = 1) -> SuiteSummary:
    bounds.check()
    claims = resolve_claims(claims)
    started = time.perf_counter()

    keyed: List[Tuple[Tuple[int, int, int], VerdictReport]] = []
    if "example" in claims:
        keyed.append(((CLAIMS.index("example"), -1, 0), reproduce_example()))

    per_instance = [c for c in claims if c in INSTANCE_CLAIMS]
    if per_instance:
        instances = catalog(bounds.max_group, bounds.max_carrier, bounds.max_orbits)
        units = [(i, X, per_instance) for i, X in enumerate(instances)]
        logger.info("checking %s on %d instances", ", ".join(per_instance), len(units))
        if jobs > 1:
            with multiprocessing.Pool(processes=jobs) as pool:
                for results in pool.imap_unordered(_run_unit, units):
                    keyed.extend(results)
        else:
            for unit in units:
                keyed.extend(_run_unit(unit))

    keyed.sort(key=lambda item: item[0])
    summary = SuiteSummary.collect([report for _, report in keyed])
    for report in summary.failures:
        logger.warning("%s failed on %s", report.claim_id, report.instance_descriptor)
    for claim, totals in summary.totals.items():
        logger.info("%s: %d run, %d failed", claim, totals.run, totals.failed)
    logger.info("suite finished in %.2fs", time.perf_counter() - started)
    return summary
