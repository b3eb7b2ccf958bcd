"""Characteristic quotients F3/K and the action of mapping classes on them.

Two families of characteristic kernels are provided:

* ``K_i``: the intersection of all subgroups of index <= i, realized as the
  image of F3 in the product of the coset actions of one subgroup per
  conjugacy class (the product of the cores is the same intersection).
* verbal kernels ``K_T``: the intersection of the kernels of all maps F3 -> T
  for a small group T.  Automorphisms of F3 permute those maps, so the
  kernel is characteristic.

Either way the quotient is a permutation group generated by the images of
x, y, z.  When it is small enough a full table is built and outer
automorphism orders are computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

import numpy as np

from ..fgroup import LETTER_AUTOMORPHISMS, FreeAutomorphism
from ..mcg import parse_monodromy
from ..torus import GroupPresentation
from .groups import FiniteGroupTable, GroupTooLargeError, build_group
from .homs import QuotientBudgetError, _search, _Budget
from .lowindex import quot_low_index_subgroups

F3 = GroupPresentation(("x1", "x2", "x3"), ())

# Innerness is decided by exhaustive search over the quotient.
INNER_SEARCH_LIMIT = 10_000
TABLE_LIMIT = 4096

VERBAL_TARGETS = {
    "C2": ("cyclic", (2,)),
    "C3": ("cyclic", (3,)),
    "C4": ("cyclic", (4,)),
    "D4": ("dihedral", (4,)),
    "Q8": ("quaternion", ()),
    "Heis3": ("heisenberg", (3,)),
}


@dataclass
class CharacteristicKernelData:
    name: str
    gen_perms: list[tuple[int, ...]]
    order: int
    quotient: Optional[FiniteGroupTable]

    @property
    def degree(self) -> int:
        return len(self.gen_perms[0])

    def require_table(self) -> FiniteGroupTable:
        if self.quotient is None or self.order > INNER_SEARCH_LIMIT:
            raise QuotientBudgetError(
                f"F3/{self.name} has order {self.order}; exact outer-automorphism work is limited to "
                f"{min(INNER_SEARCH_LIMIT, TABLE_LIMIT)} elements"
            )
        return self.quotient


def _perm_group_order(perms: Sequence[tuple[int, ...]]) -> int:
    from sympy.combinatorics import Permutation, PermutationGroup

    return int(PermutationGroup([Permutation(list(p)) for p in perms]).order())


def _from_actions(name: str, actions: list[list[tuple[int, ...]]]) -> CharacteristicKernelData:
    """Combine per-action generator permutations into one action on the disjoint union."""
    gen_perms = []
    for g in range(3):
        perm: list[int] = []
        for act in actions:
            off = len(perm)
            perm.extend(off + x for x in act[g])
        gen_perms.append(tuple(perm))
    try:
        table = FiniteGroupTable.from_permutations(f"F3/{name}", gen_perms, limit=TABLE_LIMIT)
        return CharacteristicKernelData(name, gen_perms, table.order, table)
    except GroupTooLargeError:
        return CharacteristicKernelData(name, gen_perms, _perm_group_order(gen_perms), None)


@lru_cache(maxsize=None)
def quot_characteristic_quotient(i: int) -> CharacteristicKernelData:
    """F3/K_i with K_i the intersection of all subgroups of index <= i."""
    if i < 1:
        raise ValueError("index bound must be at least 1")
    if i > 3:
        raise QuotientBudgetError("characteristic quotients are limited to index bound 3")
    tables = quot_low_index_subgroups(F3, i)
    actions = [t.generator_permutations() for t in tables]
    return _from_actions(f"K{i}", actions)


@lru_cache(maxsize=None)
def verbal_quotient(target: str) -> CharacteristicKernelData:
    """F3/K_T where K_T is the intersection of the kernels of all maps F3 -> T."""
    kind, params = VERBAL_TARGETS[target]
    T = build_group(kind, params, target)
    # maps up to Aut(T) have the same kernels, so one per orbit suffices
    homs = list(_search(F3, T, T.automorphisms, _Budget(10**8)))
    regular = [tuple(int(x) for x in T.table[:, g]) for g in range(T.order)]
    actions = [[regular[h[g]] for g in range(3)] for h in homs if any(h)]
    return _from_actions(target, actions)


def kernel_by_name(name: str) -> CharacteristicKernelData:
    if name.startswith("K") and name[1:].isdigit():
        return quot_characteristic_quotient(int(name[1:]))
    return verbal_quotient(name)


def default_kernels() -> list[str]:
    return ["K1", "K2", "C3", "C4", "D4", "Q8", "Heis3"]


# --------------------------------------------------------------------------
# induced automorphisms


def _word_codes(w: str) -> list[int]:
    return ["xyzXYZ".index(c) for c in w]


def induced_map(alpha: FreeAutomorphism, K: CharacteristicKernelData) -> np.ndarray:
    """The automorphism of F3/K induced by alpha, as a permutation of table indices."""
    Q = K.require_table()
    gens = list(Q.gens)
    images = [Q.evaluate(_word_codes(w), gens) for w in alpha.images]
    phi = Q.extend_map(images)
    if len(np.unique(phi)) != Q.order or not Q.is_homomorphism(phi, Q):
        raise AssertionError(f"{alpha} does not descend to an automorphism of F3/{K.name}")
    return phi


_LETTER_MAPS: dict[tuple[str, str], np.ndarray] = {}


def word_map(word: str, K: CharacteristicKernelData) -> np.ndarray:
    """Automorphism of F3/K induced by a monodromy word, composed letter by letter.

    Working on the quotient keeps long words cheap; the images in F3 itself
    grow exponentially for pseudo-Anosov words.
    """
    Q = K.require_table()
    phi = np.arange(Q.order)
    for c in parse_monodromy(word):
        key = (K.name, c)
        if key not in _LETTER_MAPS:
            _LETTER_MAPS[key] = induced_map(LETTER_AUTOMORPHISMS[c], K)
        phi = phi[_LETTER_MAPS[key]]
    return phi


def inner_conjugator(phi: np.ndarray, Q: FiniteGroupTable) -> Optional[int]:
    """An element c with phi(g) = c g c^-1 for all g, or None."""
    c = np.arange(Q.order)
    ok = np.ones(Q.order, dtype=bool)
    for g in Q.gens:
        ok &= Q.table[Q.table[c, g], Q.inverse[c]] == phi[g]
    hits = np.nonzero(ok)[0]
    return int(hits[0]) if hits.size else None


def outer_order(phi: np.ndarray, Q: FiniteGroupTable) -> int:
    """Least e >= 1 with phi^e inner."""
    cur = phi.copy()
    e = 1
    while inner_conjugator(cur, Q) is None:
        cur = phi[cur]
        e += 1
        if e > 10**6:
            raise AssertionError("automorphism order unexpectedly large")
    return e


@dataclass(frozen=True)
class CongruenceImage:
    kernel: str
    generator_images: tuple[int, int, int]
    outer_order: int
    aut_order: int  # order of the automorphism itself

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel,
            "generator_images": list(self.generator_images),
            "outer_order": self.outer_order,
            "aut_order": self.aut_order,
        }


def quot_congruence_image(word: str, K: CharacteristicKernelData | str) -> CongruenceImage:
    if isinstance(K, str):
        K = kernel_by_name(K)
    Q = K.require_table()
    phi = word_map(word, K)
    cur, n = phi.copy(), 1
    ident = np.arange(Q.order)
    while not np.array_equal(cur, ident):
        cur = phi[cur]
        n += 1
    imgs = tuple(int(phi[g]) for g in Q.gens)
    return CongruenceImage(K.name, imgs, outer_order(phi, Q), n)  # type: ignore[arg-type]


def order_identity_holds(word: str, K: CharacteristicKernelData | str, m: int) -> bool:
    """Check o(q(phi^m)) = o(q(phi)) / gcd(o(q(phi)), m) on one quotient."""
    o = quot_congruence_image(word, K).outer_order
    om = quot_congruence_image(word * m, K).outer_order
    return om == o // gcd(o, m)


def factors_through(coarse: CharacteristicKernelData, fine: CharacteristicKernelData) -> bool:
    """Whether F3/fine -> F3/coarse is well defined on the generators (fine kernel inside coarse).

    Checked by building the diagonal action of F3 on both permutation domains
    and comparing its order with that of the finer quotient.
    """
    joint = [a + tuple(len(a) + x for x in b) for a, b in zip(fine.gen_perms, coarse.gen_perms)]
    return _perm_group_order(joint) == fine.order
