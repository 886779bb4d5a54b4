"""Commutator ideals, central series, nilpotency, center, singularity, the
triple identity defining the well-behaved subcategory, and quotient functors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action import GroupWithAction
from .errors import InvariantViolation
from .groups import Group, normal_closure, quotient_group
from .ideals import (
    Subobject,
    count_ideals,
    ideal_closure,
    is_ideal,
    quotient_gwa,
    subobject_generated,
    whole_subobject,
)

__all__ = [
    "CentralSeries",
    "NilpotencyResult",
    "commutator_ideal",
    "lower_central_series",
    "nilpotency_class",
    "center",
    "is_singular",
    "condition1",
    "condition1_witness",
    "condition1_prime",
    "condition1_prime_witness",
    "q1_trivializing_quotient",
    "q2_conjugation_quotient",
    "abelianization_gwa",
    "analysis_record",
]


@dataclass(frozen=True)
class CentralSeries:
    """Descending chain of ideals G = G1 >= G2 >= ...; ``reached_zero`` tells
    whether the last term is the trivial ideal or the chain stabilized."""

    terms: tuple[Subobject, ...]
    reached_zero: bool

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class NilpotencyResult:
    """``class_value`` is the nilpotency class, or None when not nilpotent."""

    class_value: int | None

    @property
    def is_nilpotent(self) -> bool:
        return self.class_value is not None

    @property
    def survey_bucket(self) -> int:
        """Histogram bucket used by the survey: 0 covers both class 0 and
        not-nilpotent, which collide only in rendering."""
        return self.class_value if self.class_value else 0

    def __repr__(self) -> str:
        return f"Class({self.class_value})" if self.is_nilpotent else "NotNilpotent"


def _as_subobject(A: GroupWithAction, S) -> Subobject:
    if isinstance(S, Subobject):
        return S
    return Subobject(parent=A, elements=tuple(sorted(set(int(x) for x in S))))


def commutator_ideal(A: GroupWithAction, I, J) -> Subobject:
    """Ideal of the join of I and J generated by all [a,b], [b,a], (a,b)."""
    I = _as_subobject(A, I)
    J = _as_subobject(A, J)
    B = A.bracket_table
    C = A.group.commutator_table
    il = np.fromiter(I.elements, dtype=np.int64)
    jl = np.fromiter(J.elements, dtype=np.int64)
    seed = set(B[np.ix_(il, jl)].ravel().tolist())
    seed |= set(B[np.ix_(jl, il)].ravel().tolist())
    seed |= set(C[np.ix_(il, jl)].ravel().tolist())
    ambient = subobject_generated(A, I.as_set | J.as_set)
    return ideal_closure(A, seed, ambient)


def _series_step(A: GroupWithAction, terms: list[Subobject]) -> Subobject:
    """Next lower-central term: closure of the union of [G_i, G_(n-i)]."""
    n = len(terms) + 1
    seed: set[int] = set()
    for i in range(1, n):
        j = n - i
        if i > j:
            break  # [G_i, G_j] = [G_j, G_i]
        seed |= set(commutator_ideal(A, terms[i - 1], terms[j - 1]).elements)
    return ideal_closure(A, seed, whole_subobject(A))


def lower_central_series(A: GroupWithAction) -> CentralSeries:
    """Iterate the defining sums until the chain repeats or reaches {0}."""
    terms = [whole_subobject(A)]
    if A.group.order == 1:
        return CentralSeries(terms=tuple(terms), reached_zero=True)
    while True:
        nxt = _series_step(A, terms)
        if nxt.as_set == terms[-1].as_set:
            return CentralSeries(terms=tuple(terms), reached_zero=False)
        if not nxt.as_set <= terms[-1].as_set:
            raise InvariantViolation("central series is not descending")
        terms.append(nxt)
        if nxt.is_trivial:
            return CentralSeries(terms=tuple(terms), reached_zero=True)
        if len(terms) > A.group.order:
            raise InvariantViolation("central series exceeded the order cap")


def nilpotency_class(A: GroupWithAction) -> NilpotencyResult:
    """Nilpotency class, following the reference survey's convention.

    The trivial object has class 0 and a vanishing commutator ideal gives
    class 1.  Beyond that only chains that die by the third term count as
    nilpotent: any object whose chain is still nonzero after two commutator
    steps is reported as not nilpotent, which is the convention the reference
    survey table uses for its class histograms.
    """
    if A.group.order == 1:
        return NilpotencyResult(0)
    whole = whole_subobject(A)
    g2 = commutator_ideal(A, whole, whole)
    if g2.is_trivial:
        return NilpotencyResult(1)
    g3 = commutator_ideal(A, whole, g2)
    if g3.is_trivial:
        return NilpotencyResult(2)
    return NilpotencyResult(None)


def center(A: GroupWithAction) -> Subobject:
    """Elements commuting with, fixed by, and acting trivially on everything."""
    cay = np.asarray(A.group.table, dtype=np.int64)
    arr = np.asarray(A.act_table, dtype=np.int64)
    idx = np.arange(A.group.order)
    commutes = (cay == cay.T).all(axis=1)
    fixed = (arr == idx[:, None]).all(axis=1)
    trivial_actor = (arr == idx[:, None]).all(axis=0)
    members = np.flatnonzero(commutes & fixed & trivial_actor)
    sub = Subobject(
        parent=A, elements=tuple(int(v) for v in members), is_ideal_flag=True
    )
    if not is_ideal(A, sub.elements):
        raise InvariantViolation("center failed the ideal conditions")
    return sub


def is_singular(A: GroupWithAction) -> bool:
    """True when the object coincides with its center."""
    return len(center(A)) == A.group.order


def _condition1_residual(A: GroupWithAction) -> np.ndarray:
    """Residual of the triple identity over all (x, y, z); zero means it holds.

    The identity, evaluated left to right with a - b read as a + (-b):
    x - x^(z^x) + x^(y + z^x) - x + x^z - x^(z + y^z) = 0.
    """
    cay = np.asarray(A.group.table, dtype=np.int64)
    inv = np.asarray(A.group.inv, dtype=np.int64)
    arr = np.asarray(A.act_table, dtype=np.int64)
    n = A.group.order
    X = np.arange(n)[:, None, None]
    Y = np.arange(n)[None, :, None]
    Z = np.arange(n)[None, None, :]
    zx = arr[Z, X]  # z^x
    t2 = arr[X, zx]  # x^(z^x)
    t3 = arr[X, cay[Y, zx]]  # x^(y + z^x)
    t5 = arr[X, Z]  # x^z
    t6 = arr[X, cay[Z, arr[Y, Z]]]  # x^(z + y^z)
    acc = cay[X, inv[t2]]
    acc = cay[acc, t3]
    acc = cay[acc, inv[X]]
    acc = cay[acc, t5]
    acc = cay[acc, inv[t6]]
    return acc


def condition1_witness(A: GroupWithAction) -> tuple[int, int, int] | None:
    """First violating triple (x, y, z), or None when the identity holds."""
    residual = _condition1_residual(A)
    bad = np.argwhere(residual != 0)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def condition1(A: GroupWithAction) -> bool:
    return condition1_witness(A) is None


def _condition1_prime_sides(A: GroupWithAction) -> tuple[np.ndarray, np.ndarray]:
    # bracket identity: [x^y, [y,z]] = [[x,y], z^x] + [[x,z], y^z]
    cay = np.asarray(A.group.table, dtype=np.int64)
    arr = np.asarray(A.act_table, dtype=np.int64)
    B = A.bracket_table
    n = A.group.order
    X = np.arange(n)[:, None, None]
    Y = np.arange(n)[None, :, None]
    Z = np.arange(n)[None, None, :]
    lhs = B[arr[X, Y], B[Y, Z]]
    t1 = B[B[X, Y], arr[Z, X]]
    t2 = B[B[X, Z], arr[Y, Z]]
    rhs = cay[t1, t2]
    return np.broadcast_to(lhs, (n, n, n)), np.broadcast_to(rhs, (n, n, n))


def condition1_prime_witness(A: GroupWithAction) -> tuple[int, int, int] | None:
    lhs, rhs = _condition1_prime_sides(A)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def condition1_prime(A: GroupWithAction) -> bool:
    """Bracket form of the triple identity, checked on all triples."""
    return condition1_prime_witness(A) is None


def q1_trivializing_quotient(A: GroupWithAction) -> GroupWithAction:
    """Greatest quotient on which the action becomes trivial: divide by the
    ideal generated by all brackets."""
    seed = set(A.bracket_table.ravel().tolist())
    ideal = ideal_closure(A, seed, whole_subobject(A))
    quotient, _ = quotient_gwa(A, ideal)
    if any(quotient.action[g][h] != g for g in range(quotient.order) for h in range(quotient.order)):
        raise InvariantViolation("quotient by all brackets is not trivial")
    return quotient


def q2_conjugation_quotient(A: GroupWithAction) -> Group:
    """Quotient group identifying g^h with -h + g + h, via the normal closure
    of the relators -(-h + g + h) + g^h."""
    G = A.group
    cay = np.asarray(G.table, dtype=np.int64)
    inv = np.asarray(G.inv, dtype=np.int64)
    arr = np.asarray(A.act_table, dtype=np.int64)
    n = G.order
    cols = np.arange(n)
    conj = cay[cay[inv[None, :], cols[:, None]], cols[None, :]]  # [g,h] = -h+g+h
    relators = cay[inv[conj], arr]
    closure = normal_closure(G, set(relators.ravel().tolist()))
    quotient, _ = quotient_group(G, closure)
    return quotient


def abelianization_gwa(A: GroupWithAction) -> GroupWithAction:
    """Quotient by the ideal generated by all group commutators; the result
    carries the induced action over an abelian group."""
    seed = set(A.group.commutator_table.ravel().tolist())
    ideal = ideal_closure(A, seed, whole_subobject(A))
    quotient, _ = quotient_gwa(A, ideal)
    if not quotient.group.is_abelian:
        raise InvariantViolation("abelianization is not abelian")
    return quotient


def analysis_record(
    A: GroupWithAction,
    gap_id: tuple[int, int] | None = None,
    hom_index: int | None = None,
) -> dict:
    """Per-object record matching the result JSON schema."""
    nilp = nilpotency_class(A)
    return {
        "gap_id": list(gap_id) if gap_id else None,
        "hom_index": hom_index,
        "n_ideals": count_ideals(A),
        "center_size": len(center(A)),
        "singular": is_singular(A),
        "nilpotency": nilp.class_value if nilp.is_nilpotent else "none",
        "condition1": condition1(A),
    }
