"""Congruences of finite unary algebras.

A G-set is a unary algebra with one operation x -> x^g per group element,
and a semigroup congruence is an equivalence compatible with every left and
right translation, so both sides share the machinery below: operations are
tuples mapping the carrier into itself, partitions are leader tuples.
"""
import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from gs.errors import CarrierMismatch, CarrierTooLarge
from gs.gset import GSet, orbits
from gs.printer import format_partition
from gs.report import VerdictReport

logger = logging.getLogger(__name__)

# Bell(10) = 115975 candidate partitions.
BRUTEFORCE_CUTOFF = 10

Leaders = Tuple[int, ...]
Operation = Tuple[int, ...]


class Partition(BaseModel):
    """An equivalence relation in canonical form: each element maps to the least member of its block."""
    model_config = ConfigDict(frozen=True)

    carrier_size: int
    block_id: Leaders

    @model_validator(mode="after")
    def _canonical(self):
        if len(self.block_id) != self.carrier_size:
            raise ValueError("block_id must have one entry per element.")
        for x, leader in enumerate(self.block_id):
            if leader > x or self.block_id[leader] != leader:
                raise ValueError(f"block_id is not canonical at {x}.")
        return self

    @classmethod
    def identity(cls, m: int) -> "Partition":
        return cls(carrier_size=m, block_id=tuple(range(m)))

    @classmethod
    def universal(cls, m: int) -> "Partition":
        return cls(carrier_size=m, block_id=(0,) * m)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        first = {}
        ids = []
        for x, label in enumerate(labels):
            ids.append(first.setdefault(label, x))
        return cls(carrier_size=len(labels), block_id=tuple(ids))

    @classmethod
    def from_blocks(cls, m: int, blocks: Sequence[Sequence[int]]) -> "Partition":
        labels = list(range(m))
        for block in blocks:
            leader = min(block)
            for x in block:
                labels[x] = leader
        return cls.from_labels(labels)

    def blocks(self) -> List[Tuple[int, ...]]:
        grouped: Dict[int, List[int]] = {}
        for x, leader in enumerate(self.block_id):
            grouped.setdefault(leader, []).append(x)
        return [tuple(grouped[k]) for k in sorted(grouped)]

    def class_of(self, x: int) -> Tuple[int, ...]:
        leader = self.block_id[x]
        return tuple(y for y in range(self.carrier_size) if self.block_id[y] == leader)

    def related(self, a: int, b: int) -> bool:
        return self.block_id[a] == self.block_id[b]

    def is_identity(self) -> bool:
        return self.block_id == tuple(range(self.carrier_size))

    def is_universal(self) -> bool:
        return all(x == 0 for x in self.block_id)

    def refines(self, other: "Partition") -> bool:
        """True iff self is contained in other as a relation."""
        return all(other.block_id[x] == other.block_id[leader] for x, leader in enumerate(self.block_id))

    def __lt__(self, other: "Partition") -> bool:
        return self.block_id < other.block_id

    def __str__(self):
        return format_partition(self)

    def accept(self, visitor, **kwargs):
        return visitor.partition(self, **kwargs)


class BinaryRelation(BaseModel):
    model_config = ConfigDict(frozen=True)

    carrier_size: int
    pairs: FrozenSet[Tuple[int, int]]

    @model_validator(mode="after")
    def _in_range(self):
        m = self.carrier_size
        if any(not (0 <= a < m and 0 <= c < m) for a, c in self.pairs):
            raise ValueError("Relation pairs must lie in carrier x carrier.")
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "BinaryRelation":
        pairs = set()
        for a, row in enumerate(rows):
            c = 0
            while row:
                if row & 1:
                    pairs.add((a, c))
                row >>= 1
                c += 1
        return cls(carrier_size=len(rows), pairs=frozenset(pairs))

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def accept(self, visitor, **kwargs):
        return visitor.relation(self, **kwargs)


# Leader-tuple primitives.

def _find(parent: List[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent: List[int], a: int, b: int) -> bool:
    # The smaller root wins, so roots stay the least members of their blocks.
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return False
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


def join_ids(p: Leaders, q: Leaders) -> Leaders:
    parent = list(p)
    for x, y in enumerate(q):
        _union(parent, x, y)
    return tuple(_find(parent, x) for x in range(len(parent)))


def meet_ids(p: Leaders, q: Leaders) -> Leaders:
    first: Dict[Tuple[int, int], int] = {}
    return tuple(first.setdefault((a, b), x) for x, (a, b) in enumerate(zip(p, q)))


def class_masks(ids: Leaders) -> List[int]:
    """Element x -> bitmask of its block."""
    by_leader: Dict[int, int] = {}
    for x, leader in enumerate(ids):
        by_leader[leader] = by_leader.get(leader, 0) | (1 << x)
    return [by_leader[leader] for leader in ids]


def compose_rows(p: Leaders, q: Leaders, q_masks: Optional[List[int]] = None) -> Tuple[int, ...]:
    """Row a of p∘q: every c with (a, b) in p and (b, c) in q for some b."""
    if q_masks is None:
        q_masks = class_masks(q)
    by_leader: Dict[int, int] = {}
    for b, leader in enumerate(p):
        by_leader[leader] = by_leader.get(leader, 0) | q_masks[b]
    return tuple(by_leader[leader] for leader in p)


def least_pair(rows: Sequence[int], others: Sequence[int]) -> Optional[Tuple[int, int]]:
    """Least (a, c) in rows minus others."""
    for a, (row, other) in enumerate(zip(rows, others)):
        extra = row & ~other
        if extra:
            return a, (extra & -extra).bit_length() - 1
    return None


# Operations.

def gset_operations(X: GSet) -> List[Operation]:
    ops = (tuple(X.action[x][g] for x in X.points) for g in X.group.elements)
    return list(dict.fromkeys(ops))


def compatibility_witness(ops: Sequence[Operation], ids: Leaders) -> Optional[Tuple[int, int, int]]:
    """Least (a, b, op index) with a ~ b but op(a) !~ op(b)."""
    for a, b in itertools.combinations(range(len(ids)), 2):
        if ids[a] != ids[b]:
            continue
        for k, op in enumerate(ops):
            if ids[op[a]] != ids[op[b]]:
                return a, b, k
    return None


def is_compatible(op_array: np.ndarray, ids: np.ndarray) -> bool:
    # images[f, x] is the block of f(x); compatibility means f(x) ~ f(leader(x))
    images = ids[op_array]
    return bool(np.array_equal(images[:, ids], images))


def principal_ids(ops: Sequence[Operation], m: int, a: int, b: int) -> Leaders:
    """Closes {(a, b)} under the operations and equivalence."""
    parent = list(range(m))
    pending = [(a, b)]
    while pending:
        u, v = pending.pop()
        if _union(parent, u, v):
            for op in ops:
                pending.append((op[u], op[v]))
    return tuple(_find(parent, x) for x in range(m))


def all_partitions(m: int) -> Iterator[Leaders]:
    """Every partition of range(m) as a leader tuple, in lexicographic order."""
    prefix: List[int] = []
    leaders: List[int] = []

    def extend():
        x = len(prefix)
        if x == m:
            yield tuple(prefix)
            return
        for leader in list(leaders):
            prefix.append(leader)
            yield from extend()
            prefix.pop()
        leaders.append(x)
        prefix.append(x)
        yield from extend()
        prefix.pop()
        leaders.pop()

    yield from extend()


def bruteforce_lattice(ops: Sequence[Operation], m: int, cutoff: int = BRUTEFORCE_CUTOFF) -> List[Leaders]:
    if m > cutoff:
        raise CarrierTooLarge(f"Brute force is limited to {cutoff} elements, got {m}.")
    op_array = np.asarray(ops, dtype=np.int64).reshape(len(ops), m)
    found = []
    for ids in all_partitions(m):
        if is_compatible(op_array, np.asarray(ids, dtype=np.int64)):
            found.append(ids)
    return found


def principal_lattice(ops: Sequence[Operation], m: int) -> List[Leaders]:
    """All congruences as joins of principal congruences."""
    principals = sorted({principal_ids(ops, m, a, b) for a, b in itertools.combinations(range(m), 2)})
    lattice = {tuple(range(m))}
    for theta in principals:
        # Each stage is join-closed, so a member adds nothing new.
        if theta in lattice:
            continue
        lattice |= {join_ids(gamma, theta) for gamma in lattice}
    logger.debug("%d principal congruences, %d congruences on %d elements",
                 len(principals), len(lattice), m)
    return sorted(lattice)


def to_partitions(m: int, lattice: Sequence[Leaders]) -> List[Partition]:
    return [Partition(carrier_size=m, block_id=ids) for ids in lattice]


# Scans shared by the G-set and semigroup predicates.

def permutability_scan(congruences: Sequence[Partition], claim_id: str) -> VerdictReport:
    """Checks every pair i < j in the given order; stops at the first pair that does not permute."""
    ids = [p.block_id for p in congruences]
    masks = [class_masks(p) for p in ids]
    checked = 0
    for i, j in itertools.combinations(range(len(ids)), 2):
        checked += 1
        pq = compose_rows(ids[i], ids[j], masks[j])
        qp = compose_rows(ids[j], ids[i], masks[i])
        if pq != qp:
            a, c = least_pair(pq, qp)
            witness = {"alpha": str(congruences[i]), "beta": str(congruences[j]), "pair": [a, c]}
            return VerdictReport(claim_id=claim_id, verdict=False, witness=witness,
                                 stats={"congruences": len(ids), "pairs_checked": checked})
    return VerdictReport(claim_id=claim_id, verdict=True,
                         stats={"congruences": len(ids), "pairs_checked": checked})


def segregation_scan(congruences: Sequence[Partition], blocks: Sequence[Sequence[int]],
                     claim_id: str) -> VerdictReport:
    """Every congruence linking two distinct blocks must relate all of their union."""
    for p in congruences:
        for i, j in itertools.combinations(range(len(blocks)), 2):
            linked = any(p.related(a, b) for a in blocks[i] for b in blocks[j])
            if not linked:
                continue
            union = sorted(list(blocks[i]) + list(blocks[j]))
            for a, b in itertools.combinations(union, 2):
                if not p.related(a, b):
                    witness = {"congruence": str(p), "orbits": [i, j], "pair": [a, b]}
                    return VerdictReport(claim_id=claim_id, verdict=False, witness=witness,
                                         stats={"congruences": len(congruences)})
    return VerdictReport(claim_id=claim_id, verdict=True, stats={"congruences": len(congruences)})


# Public operations on G-sets.

def _check_carrier(m: int, *partitions: Partition):
    for p in partitions:
        if p.carrier_size != m:
            raise CarrierMismatch(f"Expected a partition of {m} elements, got {p.carrier_size}.")


def is_congruence(X: GSet, p: Partition) -> VerdictReport:
    _check_carrier(X.carrier_size, p)
    ids = p.block_id
    for a, b in itertools.combinations(X.points, 2):
        if ids[a] != ids[b]:
            continue
        for g in X.group.elements:
            if ids[X.action[a][g]] != ids[X.action[b][g]]:
                return VerdictReport(claim_id="congruence", verdict=False,
                                     witness={"pair": [a, b], "element": g})
    return VerdictReport(claim_id="congruence", verdict=True)


def join(p: Partition, q: Partition) -> Partition:
    _check_carrier(p.carrier_size, q)
    return Partition(carrier_size=p.carrier_size, block_id=join_ids(p.block_id, q.block_id))


def meet(p: Partition, q: Partition) -> Partition:
    _check_carrier(p.carrier_size, q)
    return Partition(carrier_size=p.carrier_size, block_id=meet_ids(p.block_id, q.block_id))


def compose(p: Partition, q: Partition) -> BinaryRelation:
    _check_carrier(p.carrier_size, q)
    return BinaryRelation.from_rows(compose_rows(p.block_id, q.block_id))


def permutable_pair(p: Partition, q: Partition) -> VerdictReport:
    _check_carrier(p.carrier_size, q)
    pq = compose_rows(p.block_id, q.block_id)
    qp = compose_rows(q.block_id, p.block_id)
    if pq == qp:
        return VerdictReport(claim_id="permutable_pair", verdict=True)
    a, c = least_pair(pq, qp)
    return VerdictReport(claim_id="permutable_pair", verdict=False, witness={"pair": [a, c]})


def principal_congruence(X: GSet, a: int, b: int) -> Partition:
    m = X.carrier_size
    return Partition(carrier_size=m, block_id=principal_ids(gset_operations(X), m, a, b))


def congruences_bruteforce(X: GSet, cutoff: int = BRUTEFORCE_CUTOFF) -> List[Partition]:
    m = X.carrier_size
    return to_partitions(m, bruteforce_lattice(gset_operations(X), m, cutoff))


def congruences_principal(X: GSet) -> List[Partition]:
    m = X.carrier_size
    return to_partitions(m, principal_lattice(gset_operations(X), m))


def gset_permutable(X: GSet, congruences: Optional[Sequence[Partition]] = None) -> VerdictReport:
    if congruences is None:
        congruences = congruences_principal(X)
    report = permutability_scan(congruences, "gset_permutable")
    return report.model_copy(update={"instance_descriptor": X.name})


def is_segregated(X: GSet, congruences: Optional[Sequence[Partition]] = None) -> VerdictReport:
    if congruences is None:
        congruences = congruences_principal(X)
    report = segregation_scan(congruences, orbits(X).blocks, "segregated")
    return report.model_copy(update={"instance_descriptor": X.name})
