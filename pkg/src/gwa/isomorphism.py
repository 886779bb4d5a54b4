"""Morphisms and isomorphism of groups with action; partitioning an
enumerated family into isomorphism classes via automorphism-group orbits."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .action import GroupWithAction
from .errors import InvariantViolation, LengthMismatch, MixedUnderlyingGroups
from .groups import Group, Permutation, automorphisms, isomorphisms_between
from .ideals import count_ideals
from .structure import center

__all__ = [
    "IsoPartition",
    "is_gwa_morphism",
    "transport",
    "is_isomorphic_gwa",
    "fingerprint",
    "iso_families",
]


@dataclass(frozen=True)
class IsoPartition:
    """Partition of an enumerated family into isomorphism classes."""

    members: tuple[GroupWithAction, ...]
    families: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(f[0] for f in self.families)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.families)

    def family_of(self, index: int) -> tuple[int, ...]:
        for fam in self.families:
            if index in fam:
                return fam
        raise IndexError(index)

    def to_dict(self) -> dict:
        return {"families": [list(f) for f in self.families], "sizes": list(self.sizes)}


def is_gwa_morphism(src: GroupWithAction, dst: GroupWithAction, mapping) -> bool:
    """Both the additive and the action-intertwining conditions on all pairs."""
    f = np.asarray(tuple(mapping), dtype=np.int64)
    if len(f) != src.group.order:
        raise LengthMismatch(f"map length {len(f)} != source order {src.group.order}")
    if ((f < 0) | (f >= dst.group.order)).any():
        return False
    if f[0] != 0:
        return False
    src_cay = np.asarray(src.group.table, dtype=np.int64)
    dst_cay = np.asarray(dst.group.table, dtype=np.int64)
    if not np.array_equal(f[src_cay], dst_cay[np.ix_(f, f)]):
        return False
    src_act = np.asarray(src.act_table, dtype=np.int64)
    dst_act = np.asarray(dst.act_table, dtype=np.int64)
    return bool(np.array_equal(f[src_act], dst_act[np.ix_(f, f)]))


def transport(A: GroupWithAction, alpha: Permutation) -> GroupWithAction:
    """Relabel an action along an automorphism of the underlying group."""
    return GroupWithAction(group=A.group, action=_transport_tuple(A.act_table, alpha))


def _transport_tuple(act: np.ndarray, alpha: Permutation) -> tuple[tuple[int, ...], ...]:
    img = np.asarray(alpha.image, dtype=np.int64)
    inv = np.asarray(alpha.inverse().image, dtype=np.int64)
    out = img[np.asarray(act, dtype=np.int64)[np.ix_(inv, inv)]]
    return tuple(tuple(int(v) for v in row) for row in out)


def fingerprint(A: GroupWithAction) -> tuple:
    """Isomorphism-invariant tuple: kernel and image sizes of the actor map,
    the multiset of (element order, actor cycle type) pairs, center size and
    ideal count."""
    perms = A.actor_perms
    ker = sum(1 for p in perms if p.is_identity)
    image_size = len({p.image for p in perms})
    pairs = tuple(
        sorted((A.group.orders[h], perms[h].cycle_type()) for h in range(A.group.order))
    )
    return (ker, image_size, pairs, len(center(A)), count_ideals(A))


def _same_group(a: GroupWithAction, b: GroupWithAction) -> bool:
    return a.group.cayley == b.group.cayley


def is_isomorphic_gwa(a: GroupWithAction, b: GroupWithAction) -> bool:
    """True iff a bijective morphism of groups-with-action exists."""
    if a.group.order != b.group.order:
        return False
    if a.action == b.action and _same_group(a, b):
        return True
    if fingerprint(a) != fingerprint(b):
        return False
    if _same_group(a, b):
        key = np.asarray(b.act_table, dtype=np.int16).tobytes()
        a_table = np.asarray(a.act_table, dtype=np.int16)
        for alpha in automorphisms(a.group):
            img = np.asarray(alpha.image, dtype=np.int16)
            inv = np.asarray(alpha.inverse().image, dtype=np.int16)
            if img[a_table[np.ix_(inv, inv)]].tobytes() == key:
                return True
        return False
    a_act = np.asarray(a.act_table, dtype=np.int64)
    b_act = np.asarray(b.act_table, dtype=np.int64)
    for phi in isomorphisms_between(a.group, b.group):
        f = np.asarray(phi.image, dtype=np.int64)
        if np.array_equal(f[a_act], b_act[np.ix_(f, f)]):
            return True
    return False


def _perm_span(gens: list[Permutation], n: int) -> set[tuple[int, ...]]:
    have = {tuple(range(n))}
    frontier = list(have)
    while frontier:
        q = frontier.pop()
        for g in gens:
            r = tuple(g.image[x] for x in q)
            if r not in have:
                have.add(r)
                frontier.append(r)
    return have


@lru_cache(maxsize=None)
def _aut_generators(G: Group) -> tuple[Permutation, ...]:
    """Small generating set of Aut(G), greedy in enumeration order."""
    auts = automorphisms(G)
    gens: list[Permutation] = []
    have = _perm_span(gens, G.order)
    for p in auts:
        if p.image in have:
            continue
        gens.append(p)
        have = _perm_span(gens, G.order)
        if len(have) == len(auts):
            break
    return tuple(gens)


def iso_families(members: list[GroupWithAction]) -> IsoPartition:
    """Partition into orbits of the automorphism action on self-actions,
    cross-checked against fingerprint constancy inside every family."""
    if not members:
        return IsoPartition(members=(), families=())
    G = members[0].group
    if any(not _same_group(m, members[0]) for m in members[1:]):
        raise MixedUnderlyingGroups("iso_families requires one underlying group")
    gens = [
        (np.asarray(p.image, dtype=np.int16), np.asarray(p.inverse().image, dtype=np.int16))
        for p in _aut_generators(G)
    ]
    key_of = [np.asarray(m.act_table, dtype=np.int16).tobytes() for m in members]
    where: dict[bytes, list[int]] = {}
    for i, key in enumerate(key_of):
        where.setdefault(key, []).append(i)
    assigned: set[bytes] = set()
    families: list[tuple[int, ...]] = []
    for i, start in enumerate(key_of):
        if start in assigned:
            continue
        table = np.asarray(members[i].act_table, dtype=np.int16)
        orbit = {start}
        frontier = [table]
        while frontier:
            table = frontier.pop()
            for img, inv in gens:
                moved = img[table[np.ix_(inv, inv)]]
                key = moved.tobytes()
                if key not in orbit:
                    orbit.add(key)
                    frontier.append(moved)
        hit = sorted(idx for key in orbit for idx in where.get(key, ()))
        assigned |= orbit
        families.append(tuple(hit))
    partition = IsoPartition(members=tuple(members), families=tuple(families))
    for fam in partition.families:
        marks = {fingerprint(members[i]) for i in fam}
        if len(marks) != 1:
            raise InvariantViolation("fingerprint varies inside an orbit family")
    return partition
