import itertools
import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from gs.errors import (BadShape, NotClosed, NotAssociative, NoIdentity, NoInverse,
                       H0NotSubgroup, DifferentParents)

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


# Table helpers shared with the G-set and semigroup modules.

def check_table(table: Sequence[Sequence[int]], width: int, values: int) -> Table:
    """Checks shape and range of an index table and freezes it into tuples."""
    if len(table) == 0:
        raise BadShape(width, 0, 0)
    rows = []
    for i, row in enumerate(table):
        if len(row) != width:
            raise BadShape(width, i, len(row))
        for j, v in enumerate(row):
            if not (0 <= v < values):
                raise NotClosed(i, j, v)
        rows.append(tuple(int(v) for v in row))
    return tuple(rows)


def associativity_witness(table: Table) -> Optional[Tuple[int, int, int]]:
    """Returns the lexicographically least triple (i, j, k) with (ij)k != i(jk)."""
    t = np.asarray(table, dtype=np.int64)
    # left[i, j, k] = t[t[i, j], k], right[i, j, k] = t[i, t[j, k]]
    left = t[t, :]
    right = t[:, t]
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    i, j, k = bad[0]
    return int(i), int(j), int(k)


def mask_of(members: Iterable[int]) -> int:
    mask = 0
    for x in members:
        mask |= 1 << x
    return mask


def members_of(mask: int) -> Tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


# Groups.

class FiniteGroup(BaseModel):
    """A finite group given by its Cayley table; row i, column j holds i·j."""
    model_config = ConfigDict(frozen=True)

    order: int
    table: Table
    identity: int
    inverse: Tuple[int, ...]
    name: str = ""

    @model_validator(mode="after")
    def _shape(self):
        n = self.order
        if n < 1 or len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"A group of order {n} needs an {n}x{n} table.")
        if len(self.inverse) != n or not (0 <= self.identity < n):
            raise ValueError("Identity or inverse data out of range.")
        return self

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a, b in itertools.combinations(self.elements, 2))

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Renames element a to perm[a]."""
        n = self.order
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                table[perm[a]][perm[b]] = perm[self.table[a][b]]
        inverse = [0] * n
        for a in range(n):
            inverse[perm[a]] = perm[self.inverse[a]]
        return FiniteGroup(order=n, table=tuple(map(tuple, table)),
                           identity=perm[self.identity], inverse=tuple(inverse), name=self.name)

    def identity_first(self) -> List[int]:
        """The permutation old -> new that swaps the identity into index 0."""
        perm = list(self.elements)
        perm[0], perm[self.identity] = self.identity, 0
        return perm

    def canonical(self) -> "FiniteGroup":
        if self.identity == 0:
            return self
        return self.relabel(self.identity_first())

    def accept(self, visitor, **kwargs):
        return visitor.group(self, **kwargs)


def validate_group(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    n = len(table)
    t = check_table(table, n, n)

    witness = associativity_witness(t)
    if witness is not None:
        raise NotAssociative(*witness)

    identity = None
    for e in range(n):
        if all(t[e][x] == x and t[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inverse = []
    for x in range(n):
        for y in range(n):
            if t[x][y] == identity and t[y][x] == identity:
                inverse.append(y)
                break
        else:
            raise NoInverse(x)

    logger.debug("validated group of order %d", n)
    return FiniteGroup(order=n, table=t, identity=identity, inverse=tuple(inverse), name=name)


# Subgroups.

def is_subgroup(group: FiniteGroup, members: Iterable[int]) -> bool:
    members = set(members)
    if group.identity not in members:
        return False
    if any(group.inverse[a] not in members for a in members):
        return False
    return all(group.table[a][b] in members for a in members for b in members)


class Subgroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    parent: FiniteGroup
    members: Tuple[int, ...]

    @model_validator(mode="after")
    def _closed(self):
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("Subgroup members must be sorted and distinct.")
        if not is_subgroup(self.parent, self.members):
            raise ValueError(f"{list(self.members)} is not a subgroup.")
        if self.parent.order % len(self.members) != 0:
            raise ValueError("Subgroup order does not divide the group order.")
        return self

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def sort_key(self):
        return (len(self.members), self.members)

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def accept(self, visitor, **kwargs):
        return visitor.subgroup(self, **kwargs)


def make_subgroup(group: FiniteGroup, members: Iterable[int]) -> Subgroup:
    return Subgroup(parent=group, members=tuple(sorted(set(members))))


def closure(group: FiniteGroup, generators: Iterable[int]) -> FrozenSet[int]:
    """The subgroup generated by a set of elements (right multiplication to fixpoint)."""
    gens = sorted(set(generators))
    members = {group.identity}
    frontier = [group.identity]
    while frontier:
        reached = []
        for x in frontier:
            for g in gens:
                y = group.table[x][g]
                if y not in members:
                    members.add(y)
                    reached.append(y)
        frontier = reached
    return frozenset(members)


def subgroups(group: FiniteGroup) -> List[Subgroup]:
    """All subgroups, ordered by size and then by member list."""
    found = set()
    for a in group.elements:
        for b in range(a, group.order):
            found.add(closure(group, (a, b)))

    # Joins of found subgroups, to fixpoint.
    changed = True
    while changed:
        changed = False
        current = sorted(found, key=lambda s: (len(s), sorted(s)))
        for h, k in itertools.combinations(current, 2):
            if h <= k or k <= h:
                continue
            joined = closure(group, h | k)
            if joined not in found:
                found.add(joined)
                changed = True

    result = [make_subgroup(group, s) for s in found]
    result.sort(key=Subgroup.sort_key)
    logger.debug("group %s has %d subgroups", group.name or group.order, len(result))
    return result


def interval_subgroups(group: FiniteGroup, h0: Subgroup) -> List[Subgroup]:
    """All subgroups K with H0 <= K <= G."""
    if h0.parent != group or not is_subgroup(group, h0.members):
        raise H0NotSubgroup(f"{list(h0.members)} is not a subgroup of the given group.")
    return [k for k in subgroups(group) if h0.issubset(k)]


def set_product(h: Subgroup, k: Subgroup) -> FrozenSet[int]:
    """The element set HK = {hk : h in H, k in K}; not a subgroup in general."""
    if h.parent != k.parent:
        raise DifferentParents("Set products need subgroups of the same group.")
    table = h.parent.table
    return frozenset(table[a][b] for a in h.members for b in k.members)


def right_coset(h: Subgroup, g: int) -> FrozenSet[int]:
    table = h.parent.table
    return frozenset(table[a][g] for a in h.members)
