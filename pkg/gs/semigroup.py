import itertools
import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple
from pydantic import BaseModel, ConfigDict, model_validator
from gs.algebra import FiniteGroup, Table, associativity_witness, check_table, mask_of, members_of, validate_group
from gs.congruence import (BRUTEFORCE_CUTOFF, Operation, Partition, bruteforce_lattice, is_congruence,
                           permutability_scan, principal_lattice, segregation_scan, to_partitions)
from gs.errors import (AxiomError, CarrierMismatch, CarrierTooLarge, GroupMismatch, NotACongruence,
                       NotAGSetCongruence, NotAssociative, NotGX0)
from gs.gset import GSet, orbits, suborbit, validate_gset
from gs.report import VerdictReport

logger = logging.getLogger(__name__)

IDEAL_SUBSET_SCAN_LIMIT = 12
IDEAL_CLOSURE_LIMIT = 20


class RoleKind(str, Enum):
    GROUP = "GroupPart"
    SET = "SetPart"
    ZERO = "Zero"


class ElementRole(BaseModel):
    """Where an element of a (G,X,0) table comes from."""
    model_config = ConfigDict(frozen=True)

    kind: RoleKind
    source: Optional[int] = None

    def tag(self) -> str:
        if self.kind == RoleKind.GROUP:
            return f"g{self.source}"
        if self.kind == RoleKind.SET:
            return f"x{self.source}"
        return "z"

    @classmethod
    def from_tag(cls, tag: str) -> "ElementRole":
        if tag == "z":
            return cls(kind=RoleKind.ZERO)
        if len(tag) > 1 and tag[0] in "gx" and tag[1:].isdigit():
            kind = RoleKind.GROUP if tag[0] == "g" else RoleKind.SET
            return cls(kind=kind, source=int(tag[1:]))
        raise ValueError(f"Unknown role tag '{tag}'.")


class FiniteSemigroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    order: int
    table: Table
    zero: Optional[int] = None
    roles: Optional[Tuple[ElementRole, ...]] = None
    name: str = ""

    @model_validator(mode="after")
    def _structure(self):
        n = self.order
        if n < 1 or len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"A semigroup of order {n} needs an {n}x{n} table.")
        z = self.zero
        if z is not None and any(self.table[z][s] != z or self.table[s][z] != z for s in range(n)):
            raise ValueError(f"Element {z} is not a zero.")
        if self.roles is not None:
            self._check_roles()
        return self

    def _check_roles(self):
        if len(self.roles) != self.order:
            raise ValueError("Need one role per element.")
        kinds = [r.kind for r in self.roles]
        zeros = [i for i, k in enumerate(kinds) if k == RoleKind.ZERO]
        if zeros != [self.zero]:
            raise ValueError("Exactly the zero element must carry the Zero role.")
        for a, b in itertools.product(range(self.order), repeat=2):
            ab = self.table[a][b]
            if kinds[a] == RoleKind.GROUP and kinds[b] == RoleKind.GROUP and kinds[ab] != RoleKind.GROUP:
                raise ValueError("GroupPart elements must be closed under the product.")
            if kinds[a] != RoleKind.GROUP and kinds[b] != RoleKind.GROUP and ab != self.zero:
                raise ValueError("SetPart and Zero elements must form a zero subsemigroup.")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def indices(self, kind: RoleKind) -> List[int]:
        if self.roles is None:
            raise NotGX0("The semigroup carries no role tags.")
        return [i for i, r in enumerate(self.roles) if r.kind == kind]

    def translations(self) -> List[Operation]:
        """Left translations a -> s*a and right translations a -> a*s, deduplicated."""
        n = self.order
        left = (tuple(self.table[s]) for s in range(n))
        right = (tuple(self.table[a][s] for a in range(n)) for s in range(n))
        return list(dict.fromkeys(itertools.chain(left, right)))

    def accept(self, visitor, **kwargs):
        return visitor.semigroup(self, **kwargs)


def validate_semigroup(table: Sequence[Sequence[int]], zero: Optional[int] = None,
                       roles: Optional[Sequence[ElementRole]] = None, name: str = "") -> FiniteSemigroup:
    n = len(table)
    t = check_table(table, n, n)
    witness = associativity_witness(t)
    if witness is not None:
        raise NotAssociative(*witness)

    detected = None
    for z in range(n):
        if all(t[z][s] == z and t[s][z] == z for s in range(n)):
            detected = z
            break
    if zero is not None and zero != detected:
        raise AxiomError(f"Element {zero} is not a zero.", (zero,))

    return FiniteSemigroup(order=n, table=t, zero=detected,
                           roles=None if roles is None else tuple(roles), name=name)


# The (G,X,0) construction.

def build_gx0(group: FiniteGroup, X: GSet) -> FiniteSemigroup:
    """G ∪ X ∪ {0} with g*h = gh, x*g = x^g and every other product 0.

    Group elements come first (identity at index 0), then the points of X
    in carrier order, then the zero.
    """
    if X.group != group:
        raise GroupMismatch("The G-set is over a different group.")
    n, m = group.order, X.carrier_size
    order = [group.identity] + [g for g in group.elements if g != group.identity]
    position = {g: i for i, g in enumerate(order)}
    zero = n + m
    size = n + m + 1

    table = [[zero] * size for _ in range(size)]
    for i, g in enumerate(order):
        for j, h in enumerate(order):
            table[i][j] = position[group.table[g][h]]
    for x in X.points:
        for j, g in enumerate(order):
            table[n + x][j] = n + X.action[x][g]

    roles = ([ElementRole(kind=RoleKind.GROUP, source=g) for g in order]
             + [ElementRole(kind=RoleKind.SET, source=x) for x in X.points]
             + [ElementRole(kind=RoleKind.ZERO)])
    frozen = tuple(tuple(row) for row in table)
    witness = associativity_witness(frozen)
    if witness is not None:
        raise NotAssociative(*witness)
    return FiniteSemigroup(order=size, table=frozen, zero=zero, roles=tuple(roles),
                           name=f"({X.name or 'X'},0)")


def _sources(S: FiniteSemigroup, kind: RoleKind) -> List[int]:
    """Semigroup indices of one role kind, ordered by their source index."""
    indices = S.indices(kind)
    return sorted(indices, key=lambda i: S.roles[i].source)


def underlying_gset(S: FiniteSemigroup) -> GSet:
    """Recovers G and the G-set X from a role-tagged (G,X,0) table."""
    gidx = _sources(S, RoleKind.GROUP)
    xidx = _sources(S, RoleKind.SET)
    if not xidx:
        raise NotGX0("A (G,X,0) semigroup needs a nonempty set part.")
    src = [r.source for r in S.roles]
    table = [[src[S.table[g][h]] for h in gidx] for g in gidx]
    group = validate_group(table)
    action = [[src[S.table[x][g]] for g in gidx] for x in xidx]
    return validate_gset(group, action)


# Congruences.

def is_sg_congruence(S: FiniteSemigroup, p: Partition) -> VerdictReport:
    if p.carrier_size != S.order:
        raise CarrierMismatch(f"Expected a partition of {S.order} elements, got {p.carrier_size}.")
    ids = p.block_id
    t = S.table
    for a, b in itertools.combinations(range(S.order), 2):
        if ids[a] != ids[b]:
            continue
        for s in range(S.order):
            if ids[t[s][a]] != ids[t[s][b]]:
                return VerdictReport(claim_id="sg_congruence", verdict=False,
                                     witness={"pair": [a, b], "element": s, "side": "left"})
            if ids[t[a][s]] != ids[t[b][s]]:
                return VerdictReport(claim_id="sg_congruence", verdict=False,
                                     witness={"pair": [a, b], "element": s, "side": "right"})
    return VerdictReport(claim_id="sg_congruence", verdict=True)


def sg_congruences_bruteforce(S: FiniteSemigroup, cutoff: int = BRUTEFORCE_CUTOFF) -> List[Partition]:
    return to_partitions(S.order, bruteforce_lattice(S.translations(), S.order, cutoff))


def sg_congruences_principal(S: FiniteSemigroup) -> List[Partition]:
    return to_partitions(S.order, principal_lattice(S.translations(), S.order))


def sg_congruences(S: FiniteSemigroup) -> List[Partition]:
    return sg_congruences_principal(S)


def sg_permutable(S: FiniteSemigroup, congruences: Optional[Sequence[Partition]] = None) -> VerdictReport:
    if congruences is None:
        congruences = sg_congruences(S)
    report = permutability_scan(congruences, "sg_permutable")
    return report.model_copy(update={"instance_descriptor": S.name})


def lift_congruence(S: FiniteSemigroup, p: Partition) -> Partition:
    """α' = α ∪ ι_S: the blocks of p on the set part, singletons elsewhere."""
    X = underlying_gset(S)
    if p.carrier_size != X.carrier_size:
        raise CarrierMismatch(f"Expected a partition of {X.carrier_size} points, got {p.carrier_size}.")
    if not is_congruence(X, p):
        raise NotAGSetCongruence(f"{p} is not a congruence of the G-set.")
    labels = []
    for i, role in enumerate(S.roles):
        if role.kind == RoleKind.SET:
            labels.append(("x", p.block_id[role.source]))
        else:
            labels.append(("s", i))
    return Partition.from_labels(labels)


def restrict_congruence(S: FiniteSemigroup, p: Partition) -> Partition:
    """The trace of a semigroup congruence on the set part, as a G-set partition."""
    if not is_sg_congruence(S, p):
        raise NotACongruence(f"{p} is not a congruence of the semigroup.")
    xidx = _sources(S, RoleKind.SET)
    return Partition.from_labels([p.block_id[i] for i in xidx])


def saturation_facts(S: FiniteSemigroup, congruences: Optional[Sequence[Partition]] = None) -> VerdictReport:
    """Every non-universal congruence keeps [g] inside G and has 0-class {0} or N = X ∪ {0}."""
    if congruences is None:
        congruences = sg_congruences(S)
    group_part = set(S.indices(RoleKind.GROUP))
    n_part = set(S.indices(RoleKind.SET)) | {S.zero}
    for p in congruences:
        if p.is_universal():
            continue
        for g in sorted(group_part):
            if not set(p.class_of(g)) <= group_part:
                return VerdictReport(claim_id="saturation", verdict=False,
                                     witness={"congruence": str(p), "element": g, "fact": "group_class"})
        zero_class = set(p.class_of(S.zero))
        if zero_class != {S.zero} and zero_class != n_part:
            return VerdictReport(claim_id="saturation", verdict=False,
                                 witness={"congruence": str(p), "element": S.zero, "fact": "zero_class"})
    return VerdictReport(claim_id="saturation", verdict=True, stats={"congruences": len(congruences)})


# Ideals.

def _translation_masks(S: FiniteSemigroup) -> List[int]:
    """Element a -> mask of S*a ∪ a*S."""
    n = S.order
    return [mask_of(S.table[s][a] for s in range(n)) | mask_of(S.table[a][s] for s in range(n))
            for a in range(n)]


def _ideal_key(members: Tuple[int, ...]):
    return (len(members), members)


def principal_ideal(S: FiniteSemigroup, a: int) -> Tuple[int, ...]:
    """S¹aS¹."""
    n = S.order
    left = {a} | {S.table[s][a] for s in range(n)}
    both = left | {S.table[b][t] for b in left for t in range(n)}
    return tuple(sorted(both))


def ideals(S: FiniteSemigroup) -> List[Tuple[int, ...]]:
    """All two-sided ideals: unions of principal ideals, closed to fixpoint."""
    if S.order > IDEAL_CLOSURE_LIMIT:
        raise CarrierTooLarge(f"Ideal enumeration is limited to {IDEAL_CLOSURE_LIMIT} elements.")
    found = {mask_of(principal_ideal(S, a)) for a in range(S.order)}
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(sorted(found), 2):
            union = i | j
            if union not in found:
                found.add(union)
                changed = True
    return sorted((members_of(m) for m in found), key=_ideal_key)


def ideals_bruteforce(S: FiniteSemigroup) -> List[Tuple[int, ...]]:
    if S.order > IDEAL_SUBSET_SCAN_LIMIT:
        raise CarrierTooLarge(f"Subset scans are limited to {IDEAL_SUBSET_SCAN_LIMIT} elements.")
    reach = _translation_masks(S)
    found = []
    for mask in range(1, 1 << S.order):
        members = members_of(mask)
        if all(reach[a] & ~mask == 0 for a in members):
            found.append(members)
    return sorted(found, key=_ideal_key)


def ideals_form_chain(S: FiniteSemigroup, found: Optional[Sequence[Tuple[int, ...]]] = None) -> VerdictReport:
    if found is None:
        found = ideals(S)
    masks = [mask_of(i) for i in found]
    for i, j in itertools.combinations(range(len(found)), 2):
        a, b = masks[i], masks[j]
        if a & b != a and a & b != b:
            return VerdictReport(claim_id="ideal_chain", instance_descriptor=S.name, verdict=False,
                                 witness={"ideals": [list(found[i]), list(found[j])]},
                                 stats={"ideals": len(found)})
    return VerdictReport(claim_id="ideal_chain", instance_descriptor=S.name, verdict=True,
                         stats={"ideals": len(found)})


# Orbit subsemigroups and segregation.

def orbit_subsemigroups(group: FiniteGroup, X: GSet) -> List[FiniteSemigroup]:
    return [build_gx0(group, suborbit(X, block)) for block in orbits(X).blocks]


def sg_segregated(group: FiniteGroup, X: GSet,
                  congruences: Optional[Sequence[Partition]] = None) -> VerdictReport:
    """Segregation read off the congruences of (G,X,0) itself."""
    S = build_gx0(group, X)
    if congruences is None:
        congruences = sg_congruences(S)
    offset = group.order
    blocks = [[offset + x for x in block] for block in orbits(X).blocks]
    report = segregation_scan(congruences, blocks, "sg_segregated")
    return report.model_copy(update={"instance_descriptor": S.name})
