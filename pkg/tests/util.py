"""Shared oracles and hand-entered fixture tables for the test suite.

Oracles here deliberately avoid the library's production code paths: element
orders by repeated multiplication, automorphisms by scanning all bijections,
isomorphism by backtracking bijection search, and the triple identity by a
scalar loop.
"""

from __future__ import annotations

from itertools import permutations

from gwa.action import GroupWithAction
from gwa.groups import Group


def brute_element_orders(G: Group) -> dict[int, int]:
    counts: dict[int, int] = {}
    for g in range(G.order):
        k, x = 1, g
        while x != 0:
            x = G.cayley[x][g]
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return counts


def brute_automorphisms(G: Group) -> list[tuple[int, ...]]:
    """All bijections fixing 0 that preserve the table; feasible for order <= 8."""
    n = G.order
    found = []
    for rest in permutations(range(1, n)):
        p = (0,) + rest
        if all(p[G.cayley[a][b]] == G.cayley[p[a]][p[b]] for a in range(n) for b in range(n)):
            found.append(p)
    return found


def brute_condition1(A: GroupWithAction) -> bool:
    """Scalar triple loop for the additive identity."""
    G = A.group
    act = A.action

    def plus(*xs: int) -> int:
        out = 0
        for x in xs:
            out = G.cayley[out][x]
        return out

    neg = G.inverse
    n = G.order
    for x in range(n):
        for y in range(n):
            for z in range(n):
                zx = act[z][x]
                value = plus(
                    x,
                    neg[act[x][zx]],
                    act[x][plus(y, zx)],
                    neg[x],
                    act[x][z],
                    neg[act[x][plus(z, act[y][z])]],
                )
                if value != 0:
                    return False
    return True


def brute_gwa_isomorphic(a: GroupWithAction, b: GroupWithAction) -> bool:
    """Backtracking bijection search for a map respecting both tables.

    Independent of the automorphism-orbit classifier: images are assigned
    element by element with unit propagation through both Cayley and action
    tables, pruned by per-element signatures.
    """
    n = a.group.order
    if n != b.group.order:
        return False
    cay_a, cay_b = a.group.cayley, b.group.cayley
    act_a, act_b = a.action, b.action

    def signature(G, act, g):
        column = tuple(sorted(act[x][g] == x for x in range(n)))
        return (
            G.orders[g],
            act[g][g] == g,
            column.count(True),
        )

    sig_a = [signature(a.group, act_a, g) for g in range(n)]
    sig_b = [signature(b.group, act_b, g) for g in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return False

    mapping = [-1] * n
    used = [False] * n

    def assign(g: int, w: int, trail: list[int]) -> bool:
        if mapping[g] >= 0:
            return mapping[g] == w
        if used[w] or sig_a[g] != sig_b[w]:
            return False
        mapping[g] = w
        used[w] = True
        trail.append(g)
        return True

    def propagate(trail: list[int]) -> bool:
        # close the partial map under both operations
        changed = True
        while changed:
            changed = False
            known = [g for g in range(n) if mapping[g] >= 0]
            for x in known:
                mx = mapping[x]
                for y in known:
                    my = mapping[y]
                    before = len(trail)
                    if not assign(cay_a[x][y], cay_b[mx][my], trail):
                        return False
                    if not assign(act_a[x][y], act_b[mx][my], trail):
                        return False
                    if len(trail) != before:
                        changed = True
        return True

    def undo(trail: list[int], depth: int) -> None:
        while len(trail) > depth:
            g = trail.pop()
            used[mapping[g]] = False
            mapping[g] = -1

    def search() -> bool:
        try:
            g = mapping.index(-1)
        except ValueError:
            return all(
                mapping[cay_a[x][y]] == cay_b[mapping[x]][mapping[y]]
                and mapping[act_a[x][y]] == act_b[mapping[x]][mapping[y]]
                for x in range(n)
                for y in range(n)
            )
        for w in range(n):
            if used[w] or sig_a[g] != sig_b[w]:
                continue
            trail: list[int] = []
            if assign(g, w, trail) and propagate(trail) and search():
                return True
            undo(trail, 0)
        return False

    trail: list[int] = []
    if not (assign(0, 0, trail) and propagate(trail)):
        return False
    return search()


def brute_iso_partition(objects: list[GroupWithAction]) -> list[list[int]]:
    """Partition by pairwise brute-force isomorphism against representatives."""
    families: list[list[int]] = []
    for i, obj in enumerate(objects):
        for family in families:
            if brute_gwa_isomorphic(obj, objects[family[0]]):
                family.append(i)
                break
        else:
            families.append([i])
    return families


# ---------------------------------------------------------------------------
# hand-entered action tables (actor on rows, as printed)


KLEIN_LABELS = ["e", "a", "b", "ab"]

# the four actions on the Klein four-group that satisfy the triple identity
KLEIN_PRINTED = {
    "eps1": [
        "e a b ab",
        "e a b ab",
        "e a ab b",
        "e a ab b",
    ],
    "eps2": [
        "e a b ab",
        "e a b ab",
        "e a b ab",
        "e a b ab",
    ],
    "eps3": [
        "e a b ab",
        "e ab b a",
        "e a b ab",
        "e ab b a",
    ],
    "eps4": [
        "e a b ab",
        "e b a ab",
        "e b a ab",
        "e a b ab",
    ],
}

# quaternion-group action table over labels e,a,b,c,ab,ac,bc,abc
Q8_LABELS = ["e", "a", "b", "c", "ab", "ac", "bc", "abc"]
Q8_PRINTED = [
    "e a b c ab ac bc abc",
    "e a b c ab ac bc abc",
    "e ac abc c bc a ab b",
    "e a b c ab ac bc abc",
    "e ac abc c bc a ab b",
    "e a b c ab ac bc abc",
    "e ac abc c bc a ab b",
    "e ac abc c bc a ab b",
]
# binding of the labels to dicyclic(2) element indices: a = x, b = y, c = x^2
Q8_BINDING = {"e": 0, "a": 1, "b": 4, "c": 2, "ab": 5, "ac": 3, "bc": 6, "abc": 7}

# order-6 session object: actors a, ab, ab2 swap b and b2
S3_LABELS = ["e", "a", "b", "ab", "b2", "ab2"]
S3_PRINTED = [
    "e a b ab b2 ab2",
    "e a b2 ab2 b ab",
    "e a b ab b2 ab2",
    "e a b2 ab2 b ab",
    "e a b ab b2 ab2",
    "e a b2 ab2 b ab",
]


def gwa_from_printed(
    group: Group,
    labels: list[str],
    printed_rows: list[str],
    binding: dict[str, int],
) -> GroupWithAction:
    """Build the stored object from an actor-on-rows text table.

    Printed entry (i, j) is the action of labels[i] on labels[j]; storage is
    the transpose, indexed through the label binding.
    """
    n = group.order
    action = [[0] * n for _ in range(n)]
    for i, row in enumerate(printed_rows):
        cells = row.split()
        assert len(cells) == n
        for j, cell in enumerate(cells):
            action[binding[labels[j]]][binding[labels[i]]] = binding[cell]
    return GroupWithAction(group=group, action=tuple(tuple(r) for r in action))


def klein_binding(group: Group) -> dict[str, int]:
    """e,a,b,ab onto the direct-product indexing of the Klein four-group."""
    return {"e": 0, "a": 1, "b": 2, "ab": 3}


def s3_binding(group: Group) -> dict[str, int]:
    """Bind e,a,b,... to the order-6 group: a is an involution, b has order 3."""
    a = next(g for g in range(6) if group.orders[g] == 2)
    b = next(g for g in range(6) if group.orders[g] == 3)
    ab = group.cayley[a][b]
    b2 = group.cayley[b][b]
    ab2 = group.cayley[a][b2]
    return {"e": 0, "a": a, "b": b, "ab": ab, "b2": b2, "ab2": ab2}
