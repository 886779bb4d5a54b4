"""Finite groups as explicit Cayley tables.

Elements are indices 0..n-1 with the identity pinned at index 0 and the
operation written additively: ``g + h`` is ``cayley[g][h]`` and ``-g`` is
``inverse[g]``.  Includes constructors for every group of order < 32, a
catalog keyed by small-group id, and enumeration of automorphisms and
homomorphisms.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    MissingInverse,
    NoIdentityAtZero,
    NotAssociative,
    NotClosed,
    NotNormalSubgroup,
    TwistNotAutomorphism,
    TwistNotHomomorphism,
    UnknownId,
    UnsupportedHeavy,
)

__all__ = [
    "Group",
    "Permutation",
    "Homomorphism",
    "validate_group",
    "cyclic",
    "direct_product",
    "dihedral",
    "dicyclic",
    "semidirect",
    "catalog",
    "catalog_ids",
    "HEAVY_IDS",
    "element_orders",
    "automorphisms",
    "isomorphisms_between",
    "aut_group",
    "homomorphisms",
    "generating_set",
    "subgroups",
    "normal_subgroups",
    "normal_closure",
    "quotient_group",
    "group_center",
    "group_to_dict",
    "group_from_dict",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..n-1, stored as its image array."""

    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other."""
        return Permutation(tuple(other.image[x] for x in self.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, x in enumerate(self.image):
            inv[x] = i
        return Permutation(tuple(inv))

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted multiset of cycle lengths."""
        seen = [False] * len(self.image)
        lengths = []
        for start in range(len(self.image)):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.image[x]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))

    @property
    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))


@dataclass(frozen=True)
class Group:
    """Finite group over element indices 0..order-1 with identity 0."""

    order: int
    cayley: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    name: str = ""
    gap_id: tuple[int, int] | None = None

    @cached_property
    def table(self) -> np.ndarray:
        arr = np.array(self.cayley, dtype=np.int16)
        arr.flags.writeable = False
        return arr

    @cached_property
    def inv(self) -> np.ndarray:
        arr = np.array(self.inverse, dtype=np.int16)
        arr.flags.writeable = False
        return arr

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def neg(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, g: int) -> int:
        """-g + x + g."""
        return self.cayley[self.cayley[self.inverse[g]][x]][g]

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.cayley[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, g: int) -> int:
        return self.orders[g]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """C[g, h] = -g - h + g + h."""
        cay = np.asarray(self.table, dtype=np.int64)
        inv = np.asarray(self.inv, dtype=np.int64)
        idx = np.arange(self.order)
        out = cay[cay[cay[inv[:, None], inv[None, :]], idx[:, None]], idx[None, :]]
        out.flags.writeable = False
        return out

    def __repr__(self) -> str:
        tag = f", gap_id={self.gap_id}" if self.gap_id else ""
        return f"Group({self.name or '?'}, order={self.order}{tag})"


@dataclass(frozen=True)
class Homomorphism:
    """A group homomorphism given by the image of every source element."""

    source: Group
    target: Group
    mapping: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.mapping[g]

    def is_valid(self) -> bool:
        f = np.array(self.mapping, dtype=np.int16)
        if f[0] != 0:
            return False
        return bool(
            np.array_equal(f[self.source.table], self.target.table[np.ix_(f, f)])
        )

    @property
    def kernel(self) -> frozenset[int]:
        return frozenset(g for g, img in enumerate(self.mapping) if img == 0)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)


def _as_table(table: Sequence[Sequence[int]] | np.ndarray) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotClosed(f"table is not square: shape {arr.shape}")
    return arr


def validate_group(
    table: Sequence[Sequence[int]] | np.ndarray,
    name: str = "",
    gap_id: tuple[int, int] | None = None,
) -> Group:
    """Check the group axioms on a candidate Cayley table and wrap it.

    Raises NotClosed / NoIdentityAtZero / NotAssociative / MissingInverse,
    naming the first violating tuple.
    """
    arr = _as_table(table)
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        g, h = (int(v) for v in bad[0])
        raise NotClosed(f"entry ({g},{h}) = {int(arr[g, h])} is not an element index")
    for h in range(n):
        if arr[0, h] != h:
            raise NoIdentityAtZero(f"0 + {h} = {int(arr[0, h])} != {h}")
    for g in range(n):
        if arr[g, 0] != g:
            raise NoIdentityAtZero(f"{g} + 0 = {int(arr[g, 0])} != {g}")
    left = arr[arr, :]  # left[g,h,k] = (g+h)+k
    right = arr[:, arr]  # right[g,h,k] = g+(h+k)
    bad = np.argwhere(left != right)
    if len(bad):
        g, h, k = (int(v) for v in bad[0])
        raise NotAssociative(f"({g}+{h})+{k} != {g}+({h}+{k})")
    inverse = []
    for g in range(n):
        hs = np.flatnonzero(arr[g] == 0)
        if len(hs) == 0 or arr[int(hs[0]), g] != 0:
            raise MissingInverse(f"element {g} has no two-sided inverse")
        inverse.append(int(hs[0]))
    return Group(
        order=n,
        cayley=tuple(tuple(int(v) for v in row) for row in arr.tolist()),
        inverse=tuple(inverse),
        name=name,
        gap_id=gap_id,
    )


def renamed(G: Group, name: str, gap_id: tuple[int, int] | None = None) -> Group:
    return Group(G.order, G.cayley, G.inverse, name=name, gap_id=gap_id)


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int, name: str | None = None) -> Group:
    """Cyclic group C_n, g + h = (g + h) mod n."""
    if n < 1:
        raise ValueError(f"cyclic order must be >= 1, got {n}")
    table = [[(g + h) % n for h in range(n)] for g in range(n)]
    return validate_group(table, name=name or f"C{n}")


def direct_product(G: Group, H: Group, name: str | None = None) -> Group:
    """Componentwise product; pair (g, h) has index g*|H| + h."""
    m = H.order
    n = G.order * m
    table = [[0] * n for _ in range(n)]
    for g1 in range(G.order):
        for h1 in range(m):
            a = g1 * m + h1
            for g2 in range(G.order):
                for h2 in range(m):
                    table[a][g2 * m + h2] = G.cayley[g1][g2] * m + H.cayley[h1][h2]
    return validate_group(table, name=name or f"{G.name}x{H.name}")


def dihedral(m: int, name: str | None = None) -> Group:
    """Dihedral group of order 2m: r^m = s^2 = 0 and s + r + s = -r.

    Element r^i s^j has index i + m*j.
    """
    if m < 1:
        raise ValueError(f"dihedral parameter must be >= 1, got {m}")
    n = 2 * m

    def idx(i: int, j: int) -> int:
        return i % m + m * (j % 2)

    table = [[0] * n for _ in range(n)]
    for i in range(m):
        for j in range(2):
            for k in range(m):
                for l in range(2):
                    if j == 0:
                        table[idx(i, j)][idx(k, l)] = idx(i + k, l)
                    else:
                        table[idx(i, j)][idx(k, l)] = idx(i - k, 1 + l)
    return validate_group(table, name=name or f"D{n}")


def dicyclic(m: int, name: str | None = None) -> Group:
    """Dicyclic group of order 4m: x^(2m) = 0, y^2 = x^m, -y + x + y = -x.

    Element x^i y^j has index i + 2m*j; x^m is the unique involution.
    """
    if m < 2:
        raise ValueError(f"dicyclic parameter must be >= 2, got {m}")
    w = 2 * m
    n = 4 * m

    def idx(i: int, j: int) -> int:
        return i % w + w * (j % 2)

    table = [[0] * n for _ in range(n)]
    for i in range(w):
        for j in range(2):
            for k in range(w):
                for l in range(2):
                    if j == 0:
                        table[idx(i, j)][idx(k, l)] = idx(i + k, l)
                    elif l == 0:
                        table[idx(i, j)][idx(k, l)] = idx(i - k, 1)
                    else:
                        table[idx(i, j)][idx(k, l)] = idx(i - k + m, 0)
    return validate_group(table, name=name or f"Q{n}")


def _is_automorphism_of(N: Group, p: Permutation) -> bool:
    img = np.array(p.image, dtype=np.int16)
    if len(img) != N.order or len(set(p.image)) != N.order or img[0] != 0:
        return False
    return bool(np.array_equal(img[N.table], N.table[np.ix_(img, img)]))


def semidirect(
    N: Group,
    H: Group,
    twist: Sequence[Permutation],
    name: str | None = None,
) -> Group:
    """Semidirect product N x| H for a homomorphism H -> Aut(N).

    ``twist[h]`` is the automorphism of N by which h acts; the product rule is
    (n1, h1) + (n2, h2) = (n1 + twist[h1](n2), h1 + h2), with pair (n, h)
    at index n*|H| + h.
    """
    if len(twist) != H.order:
        raise TwistNotHomomorphism(f"need {H.order} twist entries, got {len(twist)}")
    for h, p in enumerate(twist):
        if not _is_automorphism_of(N, p):
            raise TwistNotAutomorphism(f"twist[{h}] is not an automorphism of N")
    for h1 in range(H.order):
        for h2 in range(H.order):
            combined = twist[H.cayley[h1][h2]]
            if any(
                combined.image[x] != twist[h1].image[twist[h2].image[x]]
                for x in range(N.order)
            ):
                raise TwistNotHomomorphism(f"twist({h1}+{h2}) != twist({h1}) o twist({h2})")
    m = H.order
    size = N.order * m
    table = [[0] * size for _ in range(size)]
    for n1 in range(N.order):
        for h1 in range(m):
            a = n1 * m + h1
            for n2 in range(N.order):
                for h2 in range(m):
                    prod_n = N.cayley[n1][twist[h1].image[n2]]
                    table[a][n2 * m + h2] = prod_n * m + H.cayley[h1][h2]
    return validate_group(table, name=name or f"{N.name}:{H.name}")


def _from_elements(elements: list, op: Callable, name: str) -> Group:
    """Cayley table of a concrete element list under op; identity must be first."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return validate_group(table, name=name)


def _perm_group(perms: list[tuple[int, ...]], name: str) -> Group:
    identity = tuple(range(len(perms[0])))
    elements = [identity] + sorted(p for p in perms if p != identity)

    def op(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(q[x] for x in p)

    return _from_elements(elements, op, name)


def _alternating4() -> Group:
    from itertools import permutations

    def parity(p: tuple[int, ...]) -> int:
        inversions = sum(
            1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]
        )
        return inversions % 2

    return _perm_group([p for p in permutations(range(4)) if parity(p) == 0], "A4")


def _symmetric4() -> Group:
    from itertools import permutations

    return _perm_group(list(permutations(range(4))), "S4")


def _sl23() -> Group:
    mats = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if (a * d - b * c) % 3 == 1:
                        mats.append((a, b, c, d))
    identity = (1, 0, 0, 1)
    elements = [identity] + sorted(m for m in mats if m != identity)

    def op(m1: tuple[int, ...], m2: tuple[int, ...]) -> tuple[int, ...]:
        a1, b1, c1, d1 = m1
        a2, b2, c2, d2 = m2
        return (
            (a1 * a2 + b1 * c2) % 3,
            (a1 * b2 + b1 * d2) % 3,
            (c1 * a2 + d1 * c2) % 3,
            (c1 * b2 + d1 * d2) % 3,
        )

    return _from_elements(elements, op, "SL(2,3)")


# ---------------------------------------------------------------------------
# catalog of all groups of order < 32


def _mult_twist(n: int, k: int) -> Permutation:
    """x -> k*x on C_n; automorphism when gcd(k, n) = 1."""
    return Permutation(tuple((k * x) % n for x in range(n)))


def _inversion_twist(N: Group) -> Permutation:
    return Permutation(N.inverse)


def _cyclic_twist(h_order: int, p: Permutation) -> list[Permutation]:
    """Twist list for cyclic H generated by p: h acts by p^h."""
    out = [Permutation(tuple(range(len(p.image))))]
    for _ in range(h_order - 1):
        out.append(out[-1].then(p))
    return out


def _heisenberg_shear() -> Permutation:
    # (a, b) -> (a + b, b) on C3 x C3 with index a*3 + b
    return Permutation(tuple(((a + b) % 3) * 3 + b for a in range(3) for b in range(3)))


def _klein_half_twist(which: str) -> Permutation:
    # automorphisms of C4 x C2 (index a*2 + b) of order 2 used by the
    # two nonabelian order-16 extensions named (C4xC2):C2
    if which == "a->ab":
        return Permutation(tuple((a % 4) * 2 + (a + b) % 2 for a in range(4) for b in range(2)))
    if which == "b->a2b":
        return Permutation(tuple(((a + 2 * b) % 4) * 2 + b % 2 for a in range(4) for b in range(2)))
    raise ValueError(which)


def _d8_klein_kernel_twist() -> list[Permutation]:
    # H = dihedral(4) acting on C3: r inverts, s acts trivially, so the
    # kernel is the Klein subgroup <r^2, s>.  dihedral index is i + 4*j.
    inv = _inversion_twist(cyclic(3))
    ident = Permutation((0, 1, 2))
    return [inv if (h % 4) % 2 else ident for h in range(8)]


HEAVY_IDS: frozenset[tuple[int, int]] = frozenset({(16, 14), (27, 5)})


def _recipes() -> dict[tuple[int, int], tuple[str, Callable[[], Group]]]:
    c = cyclic
    dp = direct_product
    r: dict[tuple[int, int], tuple[str, Callable[[], Group]]] = {
        (1, 1): ("I", lambda: c(1)),
        (2, 1): ("C2", lambda: c(2)),
        (3, 1): ("C3", lambda: c(3)),
        (4, 1): ("C4", lambda: c(4)),
        (4, 2): ("C2xC2", lambda: dp(c(2), c(2))),
        (5, 1): ("C5", lambda: c(5)),
        (6, 1): ("S3", lambda: dihedral(3)),
        (6, 2): ("C6", lambda: c(6)),
        (7, 1): ("C7", lambda: c(7)),
        (8, 1): ("C8", lambda: c(8)),
        (8, 2): ("C4xC2", lambda: dp(c(4), c(2))),
        (8, 3): ("D8", lambda: dihedral(4)),
        (8, 4): ("Q8", lambda: dicyclic(2)),
        (8, 5): ("C2xC2xC2", lambda: dp(dp(c(2), c(2)), c(2))),
        (9, 1): ("C9", lambda: c(9)),
        (9, 2): ("C3xC3", lambda: dp(c(3), c(3))),
        (10, 1): ("D10", lambda: dihedral(5)),
        (10, 2): ("C10", lambda: c(10)),
        (11, 1): ("C11", lambda: c(11)),
        (12, 1): ("C3:C4", lambda: dicyclic(3)),
        (12, 2): ("C12", lambda: c(12)),
        (12, 3): ("A4", _alternating4),
        (12, 4): ("D12", lambda: dihedral(6)),
        (12, 5): ("C6xC2", lambda: dp(c(6), c(2))),
        (13, 1): ("C13", lambda: c(13)),
        (14, 1): ("D14", lambda: dihedral(7)),
        (14, 2): ("C14", lambda: c(14)),
        (15, 1): ("C15", lambda: c(15)),
        (16, 1): ("C16", lambda: c(16)),
        (16, 2): ("C4xC4", lambda: dp(c(4), c(4))),
        (16, 3): (
            "(C4xC2):C2",
            lambda: semidirect(dp(c(4), c(2)), c(2), _cyclic_twist(2, _klein_half_twist("a->ab"))),
        ),
        (16, 4): (
            "C4:C4",
            lambda: semidirect(c(4), c(4), [_mult_twist(4, 3 if h % 2 else 1) for h in range(4)]),
        ),
        (16, 5): ("C8xC2", lambda: dp(c(8), c(2))),
        (16, 6): (
            "C8:C2",
            lambda: semidirect(c(8), c(2), [_mult_twist(8, 5 if h else 1) for h in range(2)]),
        ),
        (16, 7): ("D16", lambda: dihedral(8)),
        (16, 8): (
            "QD16",
            lambda: semidirect(c(8), c(2), [_mult_twist(8, 3 if h else 1) for h in range(2)]),
        ),
        (16, 9): ("Q16", lambda: dicyclic(4)),
        (16, 10): ("C4xC2xC2", lambda: dp(dp(c(4), c(2)), c(2))),
        (16, 11): ("C2xD8", lambda: dp(c(2), dihedral(4))),
        (16, 12): ("C2xQ8", lambda: dp(c(2), dicyclic(2))),
        (16, 13): (
            "(C4xC2):C2",
            lambda: semidirect(dp(c(4), c(2)), c(2), _cyclic_twist(2, _klein_half_twist("b->a2b"))),
        ),
        (16, 14): ("C2xC2xC2xC2", lambda: dp(dp(dp(c(2), c(2)), c(2)), c(2))),
        (17, 1): ("C17", lambda: c(17)),
        (18, 1): ("D18", lambda: dihedral(9)),
        (18, 2): ("C18", lambda: c(18)),
        (18, 3): ("C3xS3", lambda: dp(c(3), dihedral(3))),
        (18, 4): (
            "(C3xC3):C2",
            lambda: semidirect(dp(c(3), c(3)), c(2), _cyclic_twist(2, _inversion_twist(dp(c(3), c(3))))),
        ),
        (18, 5): ("C6xC3", lambda: dp(c(6), c(3))),
        (19, 1): ("C19", lambda: c(19)),
        (20, 1): ("Q20", lambda: dicyclic(5)),
        (20, 2): ("C20", lambda: c(20)),
        (20, 3): ("C5:C4", lambda: semidirect(c(5), c(4), _cyclic_twist(4, _mult_twist(5, 2)))),
        (20, 4): ("D20", lambda: dihedral(10)),
        (20, 5): ("C10xC2", lambda: dp(c(10), c(2))),
        (21, 1): ("C7:C3", lambda: semidirect(c(7), c(3), _cyclic_twist(3, _mult_twist(7, 2)))),
        (21, 2): ("C21", lambda: c(21)),
        (22, 1): ("D22", lambda: dihedral(11)),
        (22, 2): ("C22", lambda: c(22)),
        (23, 1): ("C23", lambda: c(23)),
        (24, 1): (
            "C3:C8",
            lambda: semidirect(c(3), c(8), [_mult_twist(3, 2 if h % 2 else 1) for h in range(8)]),
        ),
        (24, 2): ("C24", lambda: c(24)),
        (24, 3): ("SL(2,3)", _sl23),
        (24, 4): ("C3:Q8", lambda: dicyclic(6)),
        (24, 5): ("C4xS3", lambda: dp(c(4), dihedral(3))),
        (24, 6): ("D24", lambda: dihedral(12)),
        (24, 7): ("C2x(C3:C4)", lambda: dp(c(2), dicyclic(3))),
        (24, 8): (
            "(C6xC2):C2",
            lambda: semidirect(c(3), dihedral(4), _d8_klein_kernel_twist()),
        ),
        (24, 9): ("C12xC2", lambda: dp(c(12), c(2))),
        (24, 10): ("C3xD8", lambda: dp(c(3), dihedral(4))),
        (24, 11): ("C3xQ8", lambda: dp(c(3), dicyclic(2))),
        (24, 12): ("S4", _symmetric4),
        (24, 13): ("C2xA4", lambda: dp(c(2), _alternating4())),
        (24, 14): ("C2xC2xS3", lambda: dp(dp(c(2), c(2)), dihedral(3))),
        (24, 15): ("C6xC2xC2", lambda: dp(dp(c(6), c(2)), c(2))),
        (25, 1): ("C25", lambda: c(25)),
        (25, 2): ("C5xC5", lambda: dp(c(5), c(5))),
        (26, 1): ("D26", lambda: dihedral(13)),
        (26, 2): ("C26", lambda: c(26)),
        (27, 1): ("C27", lambda: c(27)),
        (27, 2): ("C9xC3", lambda: dp(c(9), c(3))),
        (27, 3): (
            "(C3xC3):C3",
            lambda: semidirect(dp(c(3), c(3)), c(3), _cyclic_twist(3, _heisenberg_shear())),
        ),
        (27, 4): ("C9:C3", lambda: semidirect(c(9), c(3), _cyclic_twist(3, _mult_twist(9, 4)))),
        (27, 5): ("C3xC3xC3", lambda: dp(dp(c(3), c(3)), c(3))),
        (28, 1): ("C7:C4", lambda: dicyclic(7)),
        (28, 2): ("C28", lambda: c(28)),
        (28, 3): ("D28", lambda: dihedral(14)),
        (28, 4): ("C14xC2", lambda: dp(c(14), c(2))),
        (29, 1): ("C29", lambda: c(29)),
        (30, 1): ("C5xS3", lambda: dp(c(5), dihedral(3))),
        (30, 2): ("C3xD10", lambda: dp(c(3), dihedral(5))),
        (30, 3): ("D30", lambda: dihedral(15)),
        (30, 4): ("C30", lambda: c(30)),
        (31, 1): ("C31", lambda: c(31)),
    }
    return r


_RECIPES = _recipes()


@lru_cache(maxsize=None)
def _catalog_cached(order: int, index: int) -> Group:
    name, build = _RECIPES[(order, index)]
    return renamed(build(), name=name, gap_id=(order, index))


def catalog(order: int, index: int, allow_heavy: bool = False) -> Group:
    """Group for a small-group id (order, index), annotated with id and name.

    The elementary abelian entries (16, 14) and (27, 5) are gated behind
    ``allow_heavy`` because their action enumerations are out of desk scale.
    """
    if (order, index) not in _RECIPES:
        raise UnknownId(f"no catalog entry for ({order}, {index})")
    if (order, index) in HEAVY_IDS and not allow_heavy:
        raise UnsupportedHeavy(
            f"catalog entry ({order}, {index}) is gated; pass allow_heavy=True to build it"
        )
    return _catalog_cached(order, index)


def catalog_ids(max_order: int = 31, include_heavy: bool = False) -> list[tuple[int, int]]:
    """All catalog ids with order <= max_order, sorted."""
    ids = [
        key
        for key in sorted(_RECIPES)
        if key[0] <= max_order and (include_heavy or key not in HEAVY_IDS)
    ]
    return ids


# ---------------------------------------------------------------------------
# element-level queries


def element_orders(G: Group) -> Counter[int]:
    """Multiset {order(g) : g in G}."""
    return Counter(G.orders)


def group_center(G: Group) -> frozenset[int]:
    """Elements commuting with the whole group."""
    commutes = G.table == G.table.T
    return frozenset(int(g) for g in np.flatnonzero(commutes.all(axis=1)))


def _closure(G: Group, seed: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by seed."""
    elems = {0, *seed}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for y in list(elems):
            for z in (G.cayley[x][y], G.cayley[y][x]):
                if z not in elems:
                    elems.add(z)
                    frontier.append(z)
    return frozenset(elems)


def generating_set(G: Group) -> list[int]:
    """Greedy small generating set: repeatedly add the element whose closure
    with the current set grows fastest (smallest index breaks ties)."""
    gens: list[int] = []
    covered = _closure(G, gens)
    while len(covered) < G.order:
        best, best_cover = None, None
        for g in range(G.order):
            if g in covered:
                continue
            cover = _closure(G, [*gens, g])
            if best_cover is None or len(cover) > len(best_cover):
                best, best_cover = g, cover
        gens.append(best)
        covered = best_cover
    return gens


@lru_cache(maxsize=None)
def subgroups(G: Group) -> tuple[frozenset[int], ...]:
    """Every subgroup, sorted by size then by sorted element tuple."""
    trivial = frozenset({0})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        S = frontier.pop()
        for g in range(G.order):
            if g in S:
                continue
            T = _closure(G, S | {g})
            if T not in seen:
                seen.add(T)
                frontier.append(T)
    return tuple(sorted(seen, key=lambda s: (len(s), sorted(s))))


def _is_normal(G: Group, S: frozenset[int]) -> bool:
    return all(G.conj(x, g) in S for x in S for g in range(G.order))


@lru_cache(maxsize=None)
def normal_subgroups(G: Group) -> tuple[frozenset[int], ...]:
    return tuple(S for S in subgroups(G) if _is_normal(G, S))


def normal_closure(G: Group, seed: Iterable[int]) -> frozenset[int]:
    """Smallest normal subgroup containing seed: alternate subgroup closure
    and conjugation closure to a fixed point."""
    current = _closure(G, seed)
    while True:
        conjugates = {G.conj(x, g) for x in current for g in range(G.order)}
        if conjugates <= current:
            return current
        current = _closure(G, current | conjugates)


def quotient_group(G: Group, N: Iterable[int]) -> tuple[Group, Homomorphism]:
    """Coset group G/N with the projection homomorphism; N must be normal."""
    Nset = frozenset(N)
    if _closure(G, Nset) != Nset or not _is_normal(G, Nset):
        raise NotNormalSubgroup(f"{sorted(Nset)} is not a normal subgroup")
    coset_rep = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_rep[g] >= 0:
            continue
        members = sorted(G.cayley[g][x] for x in Nset)
        rep = members[0]
        reps.append(rep)
        for m in members:
            coset_rep[m] = rep
    reps.sort()
    rep_index = {rep: i for i, rep in enumerate(reps)}
    k = len(reps)
    table = [[rep_index[coset_rep[G.cayley[reps[i]][reps[j]]]] for j in range(k)] for i in range(k)]
    Q = validate_group(table, name=f"{G.name}/N{len(Nset)}" if G.name else "")
    proj = Homomorphism(G, Q, tuple(rep_index[coset_rep[g]] for g in range(G.order)))
    return Q, proj


# ---------------------------------------------------------------------------
# automorphisms and homomorphisms


def _bfs_levels(G: Group, gens: list[int]):
    """Per-prefix closure data for generator-image search.

    For each generator prefix, yields (elements, recipes) where recipes list
    (new, x, y) products that define each new element from earlier ones; the
    generator itself appears as (g, None, None).
    """
    levels = []
    current: list[int] = [0]
    for g in gens:
        elems = list(current)
        eset = set(elems)
        recipes: list[tuple[int, int | None, int | None]] = []
        if g not in eset:
            elems.append(g)
            eset.add(g)
            recipes.append((g, None, None))
        while True:
            added = False
            for x in list(elems):
                for y in list(elems):
                    z = G.cayley[x][y]
                    if z not in eset:
                        eset.add(z)
                        elems.append(z)
                        recipes.append((z, x, y))
                        added = True
            if not added:
                break
        levels.append((elems, recipes))
        current = elems
    return levels


def _hom_candidates(G: Group, H: Group, gens: list[int], exact_order: bool) -> list[list[int]]:
    cands = []
    for g in gens:
        og = G.orders[g]
        if exact_order:
            cands.append([h for h in range(H.order) if H.orders[h] == og])
        else:
            cands.append([h for h in range(H.order) if og % H.orders[h] == 0])
    return cands


def _search_maps(G: Group, H: Group, exact_order: bool, bijective: bool) -> list[tuple[int, ...]]:
    """All homomorphism maps G -> H via generator-image backtracking.

    Candidates per generator are filtered by element order; each prefix level
    is verified to be a partial homomorphism before descending.  Results come
    out in lexicographic order of the generator-image tuple.
    """
    gens = generating_set(G)
    if not gens:  # trivial source group
        return [(0,)] if (not bijective or H.order == 1) else []
    levels = _bfs_levels(G, gens)
    cands = _hom_candidates(G, H, gens, exact_order)
    Ht = H.table
    results: list[tuple[int, ...]] = []
    fmap = np.zeros(G.order, dtype=np.int16)

    def check_level(j: int) -> bool:
        elems, _ = levels[j]
        if j + 1 == len(levels):
            f = fmap
            return bool(np.array_equal(f[G.table], Ht[np.ix_(f, f)]))
        cay = G.cayley
        for x in elems:
            fx = fmap[x]
            row = cay[x]
            for y in elems:
                if fmap[row[y]] != Ht[fx, fmap[y]]:
                    return False
        return True

    def descend(j: int) -> None:
        if j == len(gens):
            f = tuple(int(v) for v in fmap)
            if bijective and len(set(f)) != G.order:
                return
            results.append(f)
            return
        _, recipes = levels[j]
        for cand in cands[j]:
            for z, x, y in recipes:
                if x is None:
                    fmap[z] = cand
                else:
                    fmap[z] = Ht[fmap[x], fmap[y]]
            if check_level(j):
                descend(j + 1)

    descend(0)
    return results


def homomorphisms(G: Group, H: Group) -> list[Homomorphism]:
    """All homomorphisms G -> H, in lexicographic generator-image order."""
    if G.order == 1:
        return [Homomorphism(G, H, (0,))]
    return [Homomorphism(G, H, f) for f in _search_maps(G, H, exact_order=False, bijective=False)]


def isomorphisms_between(G: Group, H: Group) -> list[Permutation]:
    """All group isomorphisms G -> H as permutation-style maps."""
    if G.order != H.order:
        return []
    if G.order == 1:
        return [Permutation((0,))]
    maps = _search_maps(G, H, exact_order=True, bijective=True)
    return sorted((Permutation(f) for f in maps), key=lambda p: p.image)


def automorphisms(G: Group) -> list[Permutation]:
    """All automorphisms, sorted lexicographically by image array (identity first)."""
    return isomorphisms_between(G, G)


@dataclass(frozen=True)
class AutData:
    """Automorphism group realized as a Group: element i is ``perms[i]`` and
    the operation composes left-to-right (apply perms[p] first)."""

    group: Group
    perms: tuple[Permutation, ...]

    def index_of(self, p: Permutation) -> int:
        return self._index[p.image]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {p.image: i for i, p in enumerate(self.perms)}


@lru_cache(maxsize=None)
def aut_group(G: Group) -> AutData:
    perms = tuple(automorphisms(G))
    index = {p.image: i for i, p in enumerate(perms)}
    k = len(perms)
    table = [[index[perms[a].then(perms[b]).image] for b in range(k)] for a in range(k)]
    group = validate_group(table, name=f"Aut({G.name})" if G.name else "Aut")
    return AutData(group=group, perms=perms)


# ---------------------------------------------------------------------------
# serialization


def group_to_dict(G: Group) -> dict:
    return {
        "order": G.order,
        "name": G.name,
        "gap_id": list(G.gap_id) if G.gap_id else None,
        "cayley": [list(row) for row in G.cayley],
    }


def group_from_dict(data: dict) -> Group:
    """Rebuild a Group from its JSON form, revalidating the table."""
    gap_id = tuple(data["gap_id"]) if data.get("gap_id") else None
    return validate_group(data["cayley"], name=data.get("name", ""), gap_id=gap_id)
