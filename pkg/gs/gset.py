import itertools
import logging
from typing import Dict, Iterator, List, Sequence, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from gs.algebra import FiniteGroup, Subgroup, Table, check_table, make_subgroup, subgroups
from gs.errors import IdentityAxiomFails, CompatibilityFails, GroupMismatch, BoundsExceeded
from gs.groups import groups_up_to

logger = logging.getLogger(__name__)


class GSet(BaseModel):
    """A finite right G-set; row x, column g of the action table holds x^g."""
    model_config = ConfigDict(frozen=True)

    group: FiniteGroup
    carrier_size: int
    action: Table
    name: str = ""

    @model_validator(mode="after")
    def _shape(self):
        m, n = self.carrier_size, self.group.order
        if m < 1 or len(self.action) != m:
            raise ValueError(f"Expected {m} action rows.")
        for row in self.action:
            if len(row) != n or any(not (0 <= v < m) for v in row):
                raise ValueError("Action rows must have one in-range entry per group element.")
        return self

    @property
    def points(self) -> range:
        return range(self.carrier_size)

    def act(self, x: int, g: int) -> int:
        return self.action[x][g]

    def relabel_group(self, perm: Sequence[int]) -> "GSet":
        """Follows a renaming of the group elements (perm[old] = new)."""
        n = self.group.order
        action = []
        for row in self.action:
            new_row = [0] * n
            for g in range(n):
                new_row[perm[g]] = row[g]
            action.append(tuple(new_row))
        return GSet(group=self.group.relabel(perm), carrier_size=self.carrier_size,
                    action=tuple(action), name=self.name)

    def canonical(self) -> "GSet":
        if self.group.identity == 0:
            return self
        return self.relabel_group(self.group.identity_first())

    def accept(self, visitor, **kwargs):
        return visitor.gset(self, **kwargs)


def validate_gset(group: FiniteGroup, action: Sequence[Sequence[int]], name: str = "") -> GSet:
    m = len(action)
    a = check_table(action, group.order, m)

    for x in range(m):
        if a[x][group.identity] != x:
            raise IdentityAxiomFails(x)

    arr = np.asarray(a, dtype=np.int64)
    t = np.asarray(group.table, dtype=np.int64)
    # left[x, g, h] = (x^g)^h, right[x, g, h] = x^(gh)
    left = arr[arr, :]
    right = arr[:, t]
    bad = np.argwhere(left != right)
    if len(bad) > 0:
        x, g, h = bad[0]
        raise CompatibilityFails(int(x), int(g), int(h))

    return GSet(group=group, carrier_size=m, action=a, name=name)


# Orbits and stabilizers.

class OrbitDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def _partition(self):
        seen = sorted(x for block in self.blocks for x in block)
        if seen != list(range(len(seen))):
            raise ValueError("Orbits must be disjoint and cover the carrier.")
        if [b[0] for b in self.blocks] != sorted(min(b) for b in self.blocks):
            raise ValueError("Orbits must be sorted and listed by least element.")
        return self

    def __len__(self):
        return len(self.blocks)

    def block_of(self, x: int) -> int:
        for i, block in enumerate(self.blocks):
            if x in block:
                return i
        raise IndexError(x)

    def accept(self, visitor, **kwargs):
        return visitor.orbits(self, **kwargs)


def orbit_of(X: GSet, x: int) -> Tuple[int, ...]:
    reached = {x}
    frontier = [x]
    while frontier:
        y = frontier.pop()
        for z in X.action[y]:
            if z not in reached:
                reached.add(z)
                frontier.append(z)
    return tuple(sorted(reached))


def orbits(X: GSet) -> OrbitDecomposition:
    blocks = []
    covered = set()
    for x in X.points:
        if x in covered:
            continue
        block = orbit_of(X, x)
        covered.update(block)
        blocks.append(block)
    return OrbitDecomposition(blocks=tuple(blocks))


def is_transitive(X: GSet) -> bool:
    return len(orbit_of(X, 0)) == X.carrier_size


def stabilizer(X: GSet, x: int) -> Subgroup:
    return make_subgroup(X.group, [g for g in X.group.elements if X.action[x][g] == x])


# Canonical instances.

def coset_action(group: FiniteGroup, h: Subgroup) -> GSet:
    """G acting on the right cosets Hg by (Hg)^k = H(gk), cosets ordered by least element."""
    index: Dict[int, int] = {}
    reps: List[int] = []
    for g in group.elements:
        if g in index:
            continue
        c = len(reps)
        reps.append(g)
        for a in h.members:
            index[group.table[a][g]] = c
    action = tuple(tuple(index[group.table[r][k]] for k in group.elements) for r in reps)
    members = ",".join(map(str, h.members))
    return GSet(group=group, carrier_size=len(reps), action=action,
                name=f"{group.name}/{{{members}}}")


def disjoint_union(parts: Sequence[GSet], name: str = "") -> GSet:
    """Places the parts side by side, re-indexing carriers consecutively."""
    group = parts[0].group
    action = []
    offset = 0
    for part in parts:
        if part.group != group:
            raise GroupMismatch("Disjoint unions need a common group.")
        for row in part.action:
            action.append(tuple(offset + y for y in row))
        offset += part.carrier_size
    return GSet(group=group, carrier_size=offset, action=tuple(action),
                name=name or " + ".join(p.name for p in parts))


def suborbit(X: GSet, block: Sequence[int]) -> GSet:
    """An action-closed block of X as a G-set on its own, points re-indexed in block order.

    The whole carrier in its own order gives back X unchanged.
    """
    if tuple(block) == tuple(X.points):
        return X
    position = {x: i for i, x in enumerate(block)}
    action = tuple(tuple(position[X.action[x][g]] for g in X.group.elements) for x in block)
    return GSet(group=X.group, carrier_size=len(block), action=action,
                name=f"{X.name}[{','.join(map(str, block))}]")


def catalog(max_group_order: int, max_carrier: int, max_orbits: int) -> Iterator[GSet]:
    """Deterministic test instances: disjoint unions of coset actions of the built-in groups."""
    if min(max_group_order, max_carrier, max_orbits) < 1:
        raise BoundsExceeded("Catalog bounds must be positive.")
    for group in groups_up_to(max_group_order):
        actions = [coset_action(group, h) for h in subgroups(group)
                   if group.order // h.order <= max_carrier]
        count = 0
        for k in range(1, max_orbits + 1):
            for combo in itertools.combinations_with_replacement(range(len(actions)), k):
                if sum(actions[i].carrier_size for i in combo) > max_carrier:
                    continue
                count += 1
                if k == 1:
                    yield actions[combo[0]]
                else:
                    yield disjoint_union([actions[i] for i in combo])
        logger.debug("catalog: %d instances over %s", count, group.name)
