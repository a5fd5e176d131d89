import functools
import itertools
from typing import Dict, List, Sequence, Tuple
from gs.algebra import FiniteGroup, validate_group

# Built-in groups: every group of order <= 8 up to isomorphism.
# All tables have the identity at index 0.

Perm = Tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q (right actions: x^(pq) = (x^p)^q)."""
    return tuple(q[p[x]] for x in range(len(p)))


def cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_group(table, name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    # (a, b) is stored at a * |H| + b
    m = h.order
    n = g.order * m
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            a = g.table[x // m][y // m]
            b = h.table[x % m][y % m]
            table[x][y] = a * m + b
    return validate_group(table, name=name or f"{g.name}x{h.name}")


def generated_permutations(generators: Sequence[Perm]) -> List[Perm]:
    degree = len(generators[0])
    identity = tuple(range(degree))
    found = {identity}
    frontier = [identity]
    while frontier:
        reached = []
        for p in frontier:
            for g in generators:
                q = compose(p, g)
                if q not in found:
                    found.add(q)
                    reached.append(q)
        frontier = reached
    return sorted(found)


def permutation_group(perms: Sequence[Perm], name: str = "") -> FiniteGroup:
    """The group of the given permutations, indexed in the given order."""
    index: Dict[Perm, int] = {p: i for i, p in enumerate(perms)}
    table = [[index[compose(p, q)] for q in perms] for p in perms]
    return validate_group(table, name=name)


S3_PERMUTATIONS: List[Perm] = sorted(itertools.permutations(range(3)))

# Rotation and reflection of a square with vertices 0..3.
D4_PERMUTATIONS: List[Perm] = generated_permutations([(1, 2, 3, 0), (0, 3, 2, 1)])


def quaternion_group() -> FiniteGroup:
    # Element 2 * u + s is (-1)^s * unit u, units 1, i, j, k.
    units = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    table = [[0] * 8 for _ in range(8)]
    for x in range(8):
        for y in range(8):
            sign, unit = units[(x // 2, y // 2)]
            table[x][y] = 2 * unit + ((x % 2) ^ (y % 2) ^ sign)
    return validate_group(table, name="Q8")


@functools.lru_cache(maxsize=None)
def builtin_groups() -> Tuple[FiniteGroup, ...]:
    z2 = cyclic(2)
    z4 = cyclic(4)
    z2z2 = direct_product(z2, z2)
    return (
        cyclic(1),
        z2,
        cyclic(3),
        z4,
        z2z2,
        cyclic(5),
        cyclic(6),
        permutation_group(S3_PERMUTATIONS, name="S3"),
        cyclic(7),
        cyclic(8),
        direct_product(z2, z4),
        direct_product(z2z2, z2, name="Z2xZ2xZ2"),
        permutation_group(D4_PERMUTATIONS, name="D4"),
        quaternion_group(),
    )


def groups_up_to(max_order: int) -> List[FiniteGroup]:
    return [g for g in builtin_groups() if g.order <= max_order]


def group_named(name: str) -> FiniteGroup:
    for g in builtin_groups():
        if g.name == name:
            return g
    raise KeyError(f"Unknown built-in group '{name}'.")
