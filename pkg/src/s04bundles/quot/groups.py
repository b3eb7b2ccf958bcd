"""Concrete finite groups: Cayley tables built from permutation generators.

Elements are indexed 0..n-1 with 0 the identity.  Products are composed left
to right, so ``table[g, h]`` is "apply g, then h" on the underlying points.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

Perm = tuple[int, ...]

TABLE_LIMIT = 100_000


class GroupTooLargeError(RuntimeError):
    pass


def _compose(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def closure(gens: Sequence[Perm], limit: int = TABLE_LIMIT) -> tuple[list[Perm], list[int], list[int]]:
    """BFS enumeration of the group generated by ``gens``.

    Returns the element list together with, for each element, its BFS parent
    and the generator index used to reach it (``-1`` for the identity).
    """
    if not gens:
        raise ValueError("need at least one generator")
    ident = tuple(range(len(gens[0])))
    elems = [ident]
    index = {ident: 0}
    parent, via = [-1], [-1]
    head = 0
    while head < len(elems):
        g = elems[head]
        for k, s in enumerate(gens):
            h = _compose(g, s)
            if h not in index:
                if len(elems) >= limit:
                    raise GroupTooLargeError(f"group exceeds {limit} elements")
                index[h] = len(elems)
                elems.append(h)
                parent.append(head)
                via.append(k)
        head += 1
    return elems, parent, via


@dataclass
class FiniteGroupTable:
    """A finite group with its full multiplication table.

    ``gens`` are element indices of the defining generators; ``parent`` and
    ``via`` record a spanning tree of the right Cayley graph, which is how
    homomorphisms out of the group are extended from generator images.
    """

    name: str
    table: np.ndarray
    gens: tuple[int, ...]
    parent: np.ndarray
    via: np.ndarray
    perms: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def from_permutations(cls, name: str, gens: Sequence[Perm], limit: int = TABLE_LIMIT) -> "FiniteGroupTable":
        gens = [tuple(g) for g in gens]
        elems, parent, via = closure(gens, limit)
        n = len(elems)
        perms = np.array(elems, dtype=np.int32)
        index = {e: i for i, e in enumerate(elems)}
        gen_idx = tuple(index[g] for g in gens)
        # column h of the table is filled from parent columns: g*h = (g*p)*s
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n)
        right = [np.array([index[_compose(e, s)] for e in elems], dtype=np.int32) for s in gens]
        for h in range(1, n):
            table[:, h] = right[via[h]][table[:, parent[h]]]
        return cls(name, table, gen_idx, np.array(parent), np.array(via), perms)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int32)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        return inv

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int32)
        cur = np.arange(n)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, np.arange(n)]
            k += 1
        return orders

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, t] = t g t^-1``."""
        t = np.arange(self.order)
        return self.table[self.table[t[None, :], np.arange(self.order)[:, None]], self.inverse[t][None, :]]

    def conjugate(self, g: int, t: int) -> int:
        return int(self.table[self.table[t, g], self.inverse[t]])

    @cached_property
    def class_id(self) -> np.ndarray:
        """Conjugacy class label of every element (labels ordered by first element)."""
        n = self.order
        if n > 5000:
            return self._class_id_by_orbits()
        mins = self.conj.min(axis=1)
        _, labels = np.unique(mins, return_inverse=True)
        return labels.astype(np.int32)

    def _class_id_by_orbits(self) -> np.ndarray:
        n = self.order
        labels = np.full(n, -1, dtype=np.int32)
        gens = [int(g) for g in self.gens]
        nxt = 0
        for g in range(n):
            if labels[g] >= 0:
                continue
            orbit = {g}
            frontier = [g]
            while frontier:
                x = frontier.pop()
                for s in gens:
                    y = self.conjugate(x, s)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            labels[list(orbit)] = nxt
            nxt += 1
        return labels

    @property
    def class_count(self) -> int:
        return int(self.class_id.max()) + 1

    def multiply(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def evaluate(self, word: Sequence[int], images: Sequence[int]) -> int:
        """Evaluate a word whose letters index ``images`` (``i >= k`` means inverse of ``i - k``)."""
        k = len(images)
        cur = 0
        for c in word:
            g = images[c] if c < k else int(self.inverse[images[c - k]])
            cur = int(self.table[cur, g])
        return cur

    def evaluate_many(self, word: Sequence[int], images: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorized :meth:`evaluate` over arrays of generator images."""
        k = len(images)
        cur = np.zeros_like(images[0])
        for c in word:
            g = images[c] if c < k else self.inverse[images[c - k]]
            cur = self.table[cur, g]
        return cur

    def subgroup_closure(self, elems: Sequence[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by ``elems``."""
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        gens = sorted({int(e) for e in elems if e != 0})
        frontier = np.array([0])
        while frontier.size:
            new = np.unique(self.table[frontier[:, None], np.array(gens or [0])[None, :]].ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask

    def generates(self, elems: Sequence[int]) -> bool:
        return bool(self.subgroup_closure(elems).all())

    def extend_map(self, images: Sequence[int]) -> np.ndarray:
        """The map on all elements determined by sending ``gens[k]`` to ``images[k]``.

        Built along the spanning tree; the caller checks it is a homomorphism.
        """
        n = self.order
        phi = np.zeros(n, dtype=np.int32)
        for h in range(1, n):
            phi[h] = self.table[phi[self.parent[h]], images[self.via[h]]]
        return phi

    def is_homomorphism(self, phi: np.ndarray, target: "FiniteGroupTable") -> bool:
        for s in self.gens:
            if not np.array_equal(phi[self.table[:, s]], target.table[phi, phi[s]]):
                return False
        return True

    @cached_property
    def small_generators(self) -> tuple[int, ...]:
        """A short generating set, found greedily by element order."""
        order_rank = np.argsort(-self.element_orders, kind="stable")
        chosen: list[int] = []
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        while not mask.all():
            best = None
            for g in order_rank:
                if mask[g]:
                    continue
                trial = self.subgroup_closure(chosen + [int(g)])
                size = int(trial.sum())
                if best is None or size > best[0]:
                    best = (size, int(g), trial)
                if trial.all():
                    break
            assert best is not None
            chosen.append(best[1])
            mask = best[2]
        return tuple(chosen)

    @cached_property
    def automorphisms(self) -> np.ndarray:
        """All automorphisms as an array of shape (|Aut|, n); row 0 is the identity."""
        gens = self.small_generators
        sub = FiniteGroupTable.from_table_generators(self, gens)
        orders = self.element_orders
        cands = [np.nonzero(orders == orders[g])[0] for g in gens]
        found = []
        for imgs in itertools.product(*cands):
            if len(set(imgs)) < len(imgs):
                continue
            phi_sub = sub.extend_map(list(imgs))
            if len(np.unique(phi_sub)) != self.order:
                continue
            phi = np.empty(self.order, dtype=np.int32)
            phi[sub.labels] = phi_sub
            if sub.is_homomorphism(phi_sub, self):
                found.append(phi)
        auts = np.array(found, dtype=np.int32)
        ident = np.nonzero((auts == np.arange(self.order)).all(axis=1))[0][0]
        order = [ident] + [i for i in range(len(auts)) if i != ident]
        return auts[order]

    @classmethod
    def from_table_generators(cls, grp: "FiniteGroupTable", gens: Sequence[int]) -> "_Relabelled":
        return _Relabelled(grp, tuple(int(g) for g in gens))

    def fingerprint(self) -> str:
        """Isomorphism-invariant summary: order and sorted (class size, element order) pairs."""
        sizes = np.bincount(self.class_id)
        pairs = sorted((int(sizes[c]), int(self.element_orders[np.argmax(self.class_id == c)])) for c in range(len(sizes)))
        return f"{self.order}:{pairs}"


class _Relabelled:
    """A BFS spanning tree of ``grp`` with respect to a different generating set."""

    def __init__(self, grp: FiniteGroupTable, gens: tuple[int, ...]):
        self.grp = grp
        self.gens = gens
        n = grp.order
        labels = [0]
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        parent, via = [-1], [-1]
        head = 0
        while head < len(labels):
            g = labels[head]
            for k, s in enumerate(gens):
                h = int(grp.table[g, s])
                if not seen[h]:
                    seen[h] = True
                    labels.append(h)
                    parent.append(head)
                    via.append(k)
            head += 1
        if len(labels) != n:
            raise ValueError("elements do not generate the group")
        self.labels = np.array(labels)
        self.parent = parent
        self.via = via

    def extend_map(self, images: Sequence[int]) -> np.ndarray:
        """Images of ``labels[i]`` for every i (tree order)."""
        table = self.grp.table
        out = np.zeros(len(self.labels), dtype=np.int32)
        for i in range(1, len(self.labels)):
            out[i] = table[out[self.parent[i]], images[self.via[i]]]
        return out

    def is_homomorphism(self, phi_tree: np.ndarray, target: FiniteGroupTable) -> bool:
        phi = np.empty(self.grp.order, dtype=np.int32)
        phi[self.labels] = phi_tree
        table = self.grp.table
        for k, s in enumerate(self.gens):
            if not np.array_equal(phi[table[:, s]], target.table[phi, phi[s]]):
                return False
        return True


# --------------------------------------------------------------------------
# constructors


def cyclic_group(n: int) -> FiniteGroupTable:
    return FiniteGroupTable.from_permutations(f"C{n}", [tuple((i + 1) % n for i in range(n))])


def elementary_abelian(p: int, k: int) -> FiniteGroupTable:
    gens = []
    for j in range(k):
        perm = []
        for x in range(p**k):
            digits = [(x // p**i) % p for i in range(k)]
            digits[j] = (digits[j] + 1) % p
            perm.append(sum(d * p**i for i, d in enumerate(digits)))
        gens.append(tuple(perm))
    return FiniteGroupTable.from_permutations(f"E{p**k}", gens)


def symmetric_group(n: int) -> FiniteGroupTable:
    if n == 1:
        return cyclic_group(1)
    cycle = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return FiniteGroupTable.from_permutations(f"S{n}", [cycle, swap] if n > 2 else [swap])


def alternating_group(n: int) -> FiniteGroupTable:
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0  # 3-cycle (0 1 k)
        gens.append(tuple(p))
    return FiniteGroupTable.from_permutations(f"A{n}", gens)


def dihedral_group(n: int) -> FiniteGroupTable:
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroupTable.from_permutations(f"D{n}", [rot, ref])


def quaternion_group() -> FiniteGroupTable:
    # left regular action on {±1, ±i, ±j, ±k} encoded as 0..7 = 1,i,j,k,-1,-i,-j,-k
    mult = {
        (1, 1): 1, (1, 2): 3, (1, 3): -2, (2, 1): -3, (2, 2): 1, (2, 3): 1,
        (3, 1): 2, (3, 2): -1, (3, 3): 1,
    }

    def unit_mul(a: int, b: int) -> int:
        sa, ia = (1, a) if a < 4 else (-1, a - 4)
        sb, ib = (1, b) if b < 4 else (-1, b - 4)
        if ia == 0:
            s, i = 1, ib
        elif ib == 0:
            s, i = 1, ia
        elif ia == ib:
            s, i = -1, 0
        else:
            m = mult[(ia, ib)]
            s, i = (1, m) if m > 0 else (-1, -m)
        s *= sa * sb
        return i if s > 0 else i + 4

    gens = [tuple(unit_mul(x, g) for x in range(8)) for g in (1, 2)]
    return FiniteGroupTable.from_permutations("Q8", gens)


def psl2_group(p: int) -> FiniteGroupTable:
    """PSL(2,p) acting on the projective line {0..p-1, inf}."""
    inf = p
    translate = tuple([(x + 1) % p for x in range(p)] + [inf])
    inv = [0] * (p + 1)
    for x in range(p + 1):
        if x == inf:
            inv[x] = 0
        elif x == 0:
            inv[x] = inf
        else:
            inv[x] = (-pow(x, -1, p)) % p
    return FiniteGroupTable.from_permutations(f"PSL(2,{p})", [translate, tuple(inv)])


def heisenberg_group(p: int) -> FiniteGroupTable:
    """Upper unitriangular 3x3 matrices over F_p, acting on F_p^3 by right multiplication."""
    pts = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    index = {v: i for i, v in enumerate(pts)}

    def act(m):
        x, y, z = m
        return tuple(index[(a % p, (a * x + b) % p, (a * z + b * y + c) % p)] for a, b, c in pts)

    return FiniteGroupTable.from_permutations(f"Heis{p}", [act((1, 0, 0)), act((0, 1, 0))])


_KINDS = {
    "cyclic": lambda n: cyclic_group(n),
    "elementary": lambda p, k: elementary_abelian(p, k),
    "symmetric": lambda n: symmetric_group(n),
    "alternating": lambda n: alternating_group(n),
    "dihedral": lambda n: dihedral_group(n),
    "quaternion": lambda: quaternion_group(),
    "psl2": lambda p: psl2_group(p),
    "heisenberg": lambda p: heisenberg_group(p),
}


def build_group(kind: str, params: Sequence[int], name: Optional[str] = None) -> FiniteGroupTable:
    try:
        ctor = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown group kind {kind!r}") from None
    grp = ctor(*params)
    if name:
        grp.name = name
    return grp


# --------------------------------------------------------------------------
# catalog

DEFAULT_CATALOG = Path(__file__).resolve().parent.parent / "data" / "catalog.txt"


@dataclass
class Catalog:
    catalog_id: str
    entries: list[tuple[str, str, tuple[int, ...]]]

    def groups(self):
        for name, kind, params in self.entries:
            yield name, _cached_group(kind, params, name)


_GROUP_CACHE: dict[tuple[str, tuple[int, ...], str], FiniteGroupTable] = {}


def _cached_group(kind: str, params: tuple[int, ...], name: str) -> FiniteGroupTable:
    key = (kind, params, name)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = build_group(kind, params, name)
    return _GROUP_CACHE[key]


def load_catalog(path: Optional[Path | str] = None) -> Catalog:
    """Parse a catalog file: one ``name kind params...`` target per line, ``#`` comments."""
    path = Path(path) if path else DEFAULT_CATALOG
    text = path.read_text()
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ValueError(f"{path}:{lineno}: expected 'name kind params'")
        try:
            params = tuple(int(x) for x in parts[2:])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: parameters must be integers") from None
        if parts[1] not in _KINDS:
            raise ValueError(f"{path}:{lineno}: unknown kind {parts[1]!r}")
        entries.append((parts[0], parts[1], params))
    canon = "\n".join(" ".join([n, k, *map(str, p)]) for n, k, p in entries)
    digest = hashlib.sha256(canon.encode()).hexdigest()[:12]
    return Catalog(f"{path.stem}-{digest}", entries)
