"""Groups with a right action on themselves.

The action table stores ``action[g][h] = g^h`` (the element g acted on by h),
so column h, read as a permutation of the acted-upon index, is the
automorphism by which h acts.  Printed tables put the actor on rows, which is
the transpose of this storage.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, NotIntoAut
from .groups import (
    Group,
    Homomorphism,
    Permutation,
    aut_group,
    group_from_dict,
    group_to_dict,
    homomorphisms,
)

__all__ = [
    "GroupWithAction",
    "GwaMorphism",
    "is_gwa",
    "gwa_violation",
    "gwa_from_hom",
    "all_gwa_on_group",
    "trivial_gwa",
    "conjugation_gwa",
    "act",
    "bracket",
    "comm",
    "action_table_render",
    "gwa_to_dict",
    "gwa_from_dict",
]


@dataclass(frozen=True)
class GroupWithAction:
    """A group together with a self-action table satisfying the action axioms."""

    group: Group
    action: tuple[tuple[int, ...], ...]

    @cached_property
    def act_table(self) -> np.ndarray:
        arr = np.array(self.action, dtype=np.int16)
        arr.flags.writeable = False
        return arr

    @cached_property
    def actor_perms(self) -> tuple[Permutation, ...]:
        """actor_perms[h] is the permutation g -> g^h (column h of the table)."""
        cols = self.act_table.T
        return tuple(Permutation(tuple(int(v) for v in col)) for col in cols)

    @cached_property
    def kernel(self) -> frozenset[int]:
        """Actors that act as the identity."""
        idx = np.arange(self.group.order, dtype=np.int16)
        return frozenset(
            h for h in range(self.group.order) if np.array_equal(self.act_table[:, h], idx)
        )

    @cached_property
    def bracket_table(self) -> np.ndarray:
        """B[g, h] = -g + g^h."""
        cay = np.asarray(self.group.table, dtype=np.int64)
        inv = np.asarray(self.group.inv, dtype=np.int64)
        arr = cay[inv[:, None], np.asarray(self.act_table, dtype=np.int64)]
        arr.flags.writeable = False
        return arr

    @property
    def order(self) -> int:
        return self.group.order

    def __repr__(self) -> str:
        return f"GroupWithAction({self.group.name or '?'}, order={self.group.order})"


@dataclass(frozen=True)
class GwaMorphism:
    """A map of groups-with-action: additive and intertwines the actions."""

    source: GroupWithAction
    target: GroupWithAction
    mapping: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.mapping[g]


def _action_array(group: Group, action) -> np.ndarray:
    arr = np.asarray(action, dtype=np.int64)
    n = group.order
    if arr.shape != (n, n):
        raise DimensionMismatch(f"action table shape {arr.shape} does not match order {n}")
    if ((arr < 0) | (arr >= n)).any():
        raise DimensionMismatch("action table entries outside element range")
    return arr


def gwa_violation(group: Group, action) -> tuple[str, tuple[int, ...]] | None:
    """First violated action axiom as (axiom, witness), or None if valid.

    Axioms, in reporting order: g^(h+h') = (g^h)^h'; g^0 = g;
    (g+g')^h = g^h + g'^h; 0^h = 0.
    """
    arr = _action_array(group, action)
    cay = np.asarray(group.table, dtype=np.int64)
    n = group.order
    # composition: act[g, h+h'] == act[act[g,h], h']
    lhs = arr[:, cay]  # [g,h,h'] = act[g, cay[h,h']]
    rhs = arr[arr, :]  # [g,h,h'] = act[act[g,h], h']
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        g, h, hp = (int(v) for v in bad[0])
        return ("composition", (g, h, hp))
    bad = np.flatnonzero(arr[:, 0] != np.arange(n))
    if len(bad):
        return ("identity_actor", (int(bad[0]),))
    # additivity: act[cay[g,g'], h] == cay[act[g,h], act[g',h]]
    lhs = arr[cay, :]  # [g,g',h]
    rhs = cay[arr[:, None, :], arr[None, :, :]]  # [g,g',h]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        g, gp, h = (int(v) for v in bad[0])
        return ("additivity", (g, gp, h))
    bad = np.flatnonzero(arr[0, :] != 0)
    if len(bad):
        return ("zero_fixed", (int(bad[0]),))
    return None


def is_gwa(group: Group, action) -> bool:
    """True iff the table satisfies all four action axioms."""
    return gwa_violation(group, action) is None


def _wrap(group: Group, arr: np.ndarray) -> GroupWithAction:
    return GroupWithAction(
        group=group, action=tuple(tuple(int(v) for v in row) for row in arr)
    )


def gwa_from_hom(G: Group, v: Homomorphism) -> GroupWithAction:
    """Group with action from a homomorphism v into Aut(G): g^h = v(h)(g)."""
    data = aut_group(G)
    if v.target.cayley != data.group.cayley:
        raise NotIntoAut("homomorphism target is not the automorphism group of G")
    n = G.order
    arr = np.empty((n, n), dtype=np.int64)
    for h in range(n):
        arr[:, h] = data.perms[v.mapping[h]].image
    return _wrap(G, arr)


def all_gwa_on_group(G: Group) -> list[GroupWithAction]:
    """One object per homomorphism G -> Aut(G), in enumeration order."""
    data = aut_group(G)
    return [gwa_from_hom(G, v) for v in homomorphisms(G, data.group)]


def trivial_gwa(G: Group) -> GroupWithAction:
    """g^h = g for all h."""
    n = G.order
    arr = np.repeat(np.arange(n, dtype=np.int64)[:, None], n, axis=1)
    return _wrap(G, arr)


def conjugation_gwa(G: Group) -> GroupWithAction:
    """g^h = -h + g + h."""
    n = G.order
    arr = np.empty((n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            arr[g, h] = G.conj(g, h)
    return _wrap(G, arr)


def _check_range(A: GroupWithAction, *indices: int) -> None:
    for i in indices:
        if not 0 <= i < A.group.order:
            raise IndexOutOfRange(f"element index {i} outside 0..{A.group.order - 1}")


def act(A: GroupWithAction, g: int, h: int) -> int:
    """g^h."""
    _check_range(A, g, h)
    return A.action[g][h]


def bracket(A: GroupWithAction, g: int, h: int) -> int:
    """-g + g^h."""
    _check_range(A, g, h)
    G = A.group
    return G.cayley[G.inverse[g]][A.action[g][h]]


def comm(A: GroupWithAction, g: int, h: int) -> int:
    """-g - h + g + h."""
    _check_range(A, g, h)
    G = A.group
    return G.cayley[G.cayley[G.cayley[G.inverse[g]][G.inverse[h]]][g]][h]


def action_table_render(A: GroupWithAction, labels: Sequence[str] | None = None) -> list[list[str]]:
    """Text matrix with the actor on rows: body entry (i, j) names a_j^(a_i).

    Output includes a header row and a leading label column; corner is blank.
    """
    n = A.group.order
    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise DimensionMismatch(f"need {n} labels, got {len(labels)}")
    rows = [[""] + list(labels)]
    for i in range(n):
        rows.append([labels[i]] + [labels[A.action[j][i]] for j in range(n)])
    return rows


# ---------------------------------------------------------------------------
# serialization


def gwa_to_dict(A: GroupWithAction) -> dict:
    return {"group": group_to_dict(A.group), "action": [list(row) for row in A.action]}


def gwa_from_dict(data: dict) -> GroupWithAction:
    """Rebuild from JSON, revalidating both the group and the action axioms."""
    group = group_from_dict(data["group"])
    violation = gwa_violation(group, data["action"])
    if violation is not None:
        axiom, witness = violation
        raise DimensionMismatch(
            f"action table is not a valid self-action: {axiom} fails at {witness}"
        )
    arr = _action_array(group, data["action"])
    return _wrap(group, arr)
