"""Subobjects and ideals of a group with action.

A subobject is a subgroup closed under the restricted action; an ideal is a
normal subgroup A with a^g in A for all g, absorbing every defect -g + g^a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .action import GroupWithAction, GwaMorphism, gwa_violation
from .errors import (
    InducedActionIllDefined,
    NotAnIdeal,
    SeedOutsideAmbient,
)
from .groups import Group, normal_subgroups, quotient_group, _closure

__all__ = [
    "Subobject",
    "subobject",
    "whole_subobject",
    "trivial_subobject",
    "subobject_generated",
    "is_subobject",
    "is_ideal",
    "ideal_closure",
    "all_ideals",
    "count_ideals",
    "ideal_sum",
    "quotient_gwa",
]


@dataclass(frozen=True)
class Subobject:
    """An element-index set inside a group with action.

    Identity is the element set: two subobjects with equal sets over the same
    parent compare equal regardless of how they were built.
    """

    parent: GroupWithAction
    elements: tuple[int, ...]
    is_ideal_flag: bool | None = field(default=None, compare=False)

    @property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.as_set

    @property
    def is_trivial(self) -> bool:
        return self.elements == (0,)

    @property
    def is_whole(self) -> bool:
        return len(self.elements) == self.parent.group.order

    def __repr__(self) -> str:
        return f"Subobject({list(self.elements)})"


def _sorted_tuple(elements: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(e) for e in elements)))


def is_subobject(A: GroupWithAction, S: Iterable[int]) -> bool:
    """Subgroup closed under the action restricted to itself."""
    sset = frozenset(S)
    if not sset or _closure(A.group, sset) != sset:
        return False
    sl = np.fromiter(sorted(sset), dtype=np.int64)
    mask = np.zeros(A.group.order, dtype=bool)
    mask[sl] = True
    return bool(mask[A.act_table[np.ix_(sl, sl)]].all())


def is_ideal(A: GroupWithAction, S: Iterable[int]) -> bool:
    """Normal subgroup, action-closed, absorbing all defects -g + g^a."""
    sset = frozenset(S)
    if not sset or _closure(A.group, sset) != sset:
        return False
    G = A.group
    if not all(G.conj(x, g) in sset for x in sset for g in range(G.order)):
        return False
    sl = np.fromiter(sorted(sset), dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[sl] = True
    if not mask[A.act_table[sl, :]].all():
        return False
    return bool(mask[A.bracket_table[:, sl]].all())


def subobject(A: GroupWithAction, elements: Iterable[int]) -> Subobject:
    """Wrap a verified subobject; raises ValueError if the set is not one."""
    elems = _sorted_tuple(elements)
    if not is_subobject(A, elems):
        raise ValueError(f"{list(elems)} is not a subobject")
    return Subobject(parent=A, elements=elems)


def whole_subobject(A: GroupWithAction) -> Subobject:
    return Subobject(parent=A, elements=tuple(range(A.group.order)), is_ideal_flag=True)


def trivial_subobject(A: GroupWithAction) -> Subobject:
    return Subobject(parent=A, elements=(0,), is_ideal_flag=True)


def subobject_generated(
    A: GroupWithAction, seed: Iterable[int], within: Subobject | None = None
) -> Subobject:
    """Smallest subobject containing seed: close under the group operation and
    the internal action a^b."""
    G = A.group
    allowed = within.as_set if within is not None else None
    current = frozenset({0}) | frozenset(seed)
    if allowed is not None and not current <= allowed:
        raise SeedOutsideAmbient("seed is not contained in the ambient subobject")
    while True:
        new = _closure(G, current)
        new = new | {A.action[a][b] for a in new for b in new}
        if new == current:
            break
        current = new
    return Subobject(parent=A, elements=_sorted_tuple(current))


def ideal_closure(
    A: GroupWithAction, seed: Iterable[int], ambient: Subobject | None = None
) -> Subobject:
    """Smallest subset of ambient containing seed that is an ideal of the
    ambient subobject with its induced action.

    Fixed-point iteration over the three ideal conditions plus subgroup
    closure; quantifiers range over the ambient's elements.
    """
    if ambient is None:
        ambient = whole_subobject(A)
    amb = sorted(ambient.as_set)
    seed_set = frozenset(int(s) for s in seed)
    if not seed_set <= ambient.as_set:
        raise SeedOutsideAmbient("seed is not contained in the ambient subobject")
    G = A.group
    action = A.action
    current = _closure(G, seed_set | {0})
    while True:
        new = set(current)
        for x in current:
            for g in amb:
                new.add(G.conj(x, g))  # normality in the ambient
                new.add(action[x][g])  # a^g stays inside
        for g in amb:
            row = action[g]
            neg = G.inverse[g]
            for x in current:
                new.add(G.cayley[neg][row[x]])  # -g + g^a
        closed = _closure(G, new)
        if closed == current:
            break
        current = closed
    flag = True if ambient.is_whole else None
    return Subobject(parent=A, elements=_sorted_tuple(current), is_ideal_flag=flag)


@lru_cache(maxsize=None)
def _normal_subgroup_masks(G: Group) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """(sorted element array, boolean mask) per normal subgroup, reused across
    every action on the same group."""
    out = []
    for S in normal_subgroups(G):
        sl = np.fromiter(sorted(S), dtype=np.int64)
        mask = np.zeros(G.order, dtype=bool)
        mask[sl] = True
        sl.flags.writeable = False
        mask.flags.writeable = False
        out.append((sl, mask))
    return tuple(out)


def all_ideals(A: GroupWithAction) -> list[Subobject]:
    """Every ideal exactly once, sorted by size then lexicographically."""
    act = A.act_table
    B = A.bracket_table
    out = []
    for sl, mask in _normal_subgroup_masks(A.group):
        if mask[act[sl, :]].all() and mask[B[:, sl]].all():
            out.append(
                Subobject(
                    parent=A,
                    elements=tuple(int(v) for v in sl),
                    is_ideal_flag=True,
                )
            )
    return out


def count_ideals(A: GroupWithAction) -> int:
    act = A.act_table
    B = A.bracket_table
    return sum(
        1
        for sl, mask in _normal_subgroup_masks(A.group)
        if mask[act[sl, :]].all() and mask[B[:, sl]].all()
    )


def _require_ideal(A: GroupWithAction, I: Subobject) -> None:
    if I.is_ideal_flag is True:
        return
    if not is_ideal(A, I.elements):
        raise NotAnIdeal(f"{list(I.elements)} is not an ideal")


def ideal_sum(A: GroupWithAction, I: Subobject, J: Subobject) -> Subobject:
    """Elementwise sum of two ideals; the result is again an ideal and equals
    the subobject generated by their union."""
    _require_ideal(A, I)
    _require_ideal(A, J)
    G = A.group
    total = {G.cayley[a][b] for a in I.elements for b in J.elements}
    result = Subobject(parent=A, elements=_sorted_tuple(total), is_ideal_flag=True)
    if not is_ideal(A, result.elements):
        raise NotAnIdeal("sum of ideals failed the ideal conditions")
    if result.as_set != subobject_generated(A, I.as_set | J.as_set).as_set:
        raise NotAnIdeal("sum of ideals differs from the generated subobject")
    return result


def quotient_gwa(A: GroupWithAction, I: Subobject) -> tuple[GroupWithAction, GwaMorphism]:
    """Coset object with the induced action, plus the projection morphism.

    Well-definedness of the induced action is checked explicitly; a failure
    signals an internal bug because it is impossible for true ideals.
    """
    _require_ideal(A, I)
    G = A.group
    Q, proj = quotient_group(G, I.as_set)
    p = np.fromiter(proj.mapping, dtype=np.int64)
    k = Q.order
    act = np.asarray(A.act_table, dtype=np.int64)
    rep_of = np.zeros(k, dtype=np.int64)
    for g in range(G.order - 1, -1, -1):
        rep_of[p[g]] = g
    q_act = p[act[np.ix_(rep_of, rep_of)]]
    if not np.array_equal(p[act], q_act[p[:, None], p[None, :]]):
        raise InducedActionIllDefined("quotient action depends on representatives")
    violation = gwa_violation(Q, q_act)
    if violation is not None:
        raise InducedActionIllDefined(f"induced action violates axiom {violation[0]}")
    B = GroupWithAction(group=Q, action=tuple(tuple(int(v) for v in row) for row in q_act))
    return B, GwaMorphism(source=A, target=B, mapping=tuple(int(v) for v in p))
