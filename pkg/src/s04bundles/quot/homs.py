"""Homomorphisms from finitely presented groups onto finite groups.

The search assigns generator images level by level.  Relators are checked as
soon as all their letters are assigned, and the last free level is handled
for all candidates at once with numpy.  A *stable letter* ``t`` (a generator
occurring in each of its relators exactly as ``t U t^-1 V``) is never
enumerated: its admissible images are read off the conjugation table.

Counting up to automorphisms of the target walks a stabilizer chain of
Aut(T): each level only tries orbit representatives under the stabilizer of
the images chosen so far, and the final level is deduplicated by a canonical
minimum over the remaining stabilizer.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from ..torus import GroupPresentation
from .groups import Catalog, FiniteGroupTable


class QuotientBudgetError(RuntimeError):
    pass


@dataclass
class _Budget:
    work: int
    deadline: Optional[float] = None
    spent: int = 0

    def charge(self, amount: int) -> None:
        self.spent += amount
        if self.spent > self.work:
            raise QuotientBudgetError(f"search budget of {self.work} steps exhausted")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise QuotientBudgetError("time budget exhausted")


def _stable_letter(p: GroupPresentation) -> Optional[tuple[int, list[tuple[list[int], list[int]]]]]:
    """Find a generator t with every relator containing it of the form t U t^-1 V.

    Returns ``(t, [(U, V), ...])`` with 1-based letters, or None.
    """
    n = len(p.generators)
    for t in range(n, 0, -1):
        pairs = []
        ok = False
        for r in p.relators:
            if t not in r and -t not in r:
                continue
            if r.count(t) != 1 or r.count(-t) != 1:
                ok = False
                break
            i = r.index(t)
            rot = list(r[i:] + r[:i])
            j = rot.index(-t)
            pairs.append((rot[1:j], rot[j + 1 :]))
            ok = True
        if ok:
            return t, pairs
    return None


def _word_codes(word: Sequence[int], n: int) -> list[int]:
    """Signed 1-based letters to evaluate() codes (``i`` or ``n + i``)."""
    return [abs(c) - 1 + (0 if c > 0 else n) for c in word]


def _orbit_reps(stab: np.ndarray) -> np.ndarray:
    return np.nonzero(stab.min(axis=0) == np.arange(stab.shape[1]))[0]


def _search(
    p: GroupPresentation,
    T: FiniteGroupTable,
    group: np.ndarray,
    budget: _Budget,
) -> Iterator[tuple[int, ...]]:
    """Yield one homomorphism (tuple of generator images) per orbit of ``group``."""
    n_gens = len(p.generators)
    n = T.order
    stable = _stable_letter(p)
    t_gen = stable[0] - 1 if stable else None
    free = [g for g in range(n_gens) if g != t_gen]
    level_of = {g: k for k, g in enumerate(free)}
    # relators not involving t, grouped by the level at which they become checkable
    checks: dict[int, list[list[int]]] = {}
    for r in p.relators:
        if t_gen is not None and (t_gen + 1 in r or -(t_gen + 1) in r):
            continue
        if not r:
            continue
        lvl = max(level_of[abs(c) - 1] for c in r)
        checks.setdefault(lvl, []).append(_word_codes(r, n_gens))
    stable_pairs = []
    if stable:
        for U, V in stable[1]:
            stable_pairs.append((_word_codes(U, n_gens), _word_codes(V, n_gens)))
    conj = T.conj if stable else None
    last = len(free) - 1

    def images_for(prefix: list[int], cand: np.ndarray) -> list[np.ndarray]:
        imgs = [np.zeros_like(cand)] * n_gens
        for g, val in zip(free, prefix):
            imgs[g] = np.full_like(cand, val)
        if len(prefix) < len(free):
            imgs[free[len(prefix)]] = cand
        return imgs

    def rec(prefix: list[int], stab: np.ndarray) -> Iterator[tuple[int, ...]]:
        lvl = len(prefix)
        cand = np.arange(n) if lvl == last else _orbit_reps(stab)
        if lvl > last:  # no free generators at all
            cand = np.zeros(1, dtype=np.int64)
        budget.charge(len(cand))
        imgs = images_for(prefix, cand)
        keep = np.ones(len(cand), dtype=bool)
        for word in checks.get(lvl, []):
            keep &= T.evaluate_many(word, imgs) == 0
        cand = cand[keep]
        if lvl < last:
            for c in cand:
                c = int(c)
                yield from rec(prefix + [c], stab[stab[:, c] == c])
            return
        imgs = images_for(prefix, cand) if lvl == last else imgs
        if t_gen is None:
            tuples = [tuple(prefix) + (int(c),) for c in cand] if lvl == last else [tuple(prefix)]
            yield from _dedupe(tuples, stab)
            return
        mask = np.ones((len(cand), n), dtype=bool)
        for U, V in stable_pairs:
            u = T.evaluate_many(U, imgs) if U else np.zeros(len(cand), dtype=np.int64)
            v = T.evaluate_many(V, imgs) if V else np.zeros(len(cand), dtype=np.int64)
            mask &= conj[u] == T.inverse[v][:, None]
        budget.charge(int(mask.size))
        rows, ts = np.nonzero(mask)
        order = free + [t_gen]
        tuples = []
        for r, t in zip(rows, ts):
            vals = list(prefix) + ([int(cand[r])] if lvl == last else []) + [int(t)]
            full = [0] * n_gens
            for g, val in zip(order, vals):
                full[g] = val
            tuples.append(tuple(full))
        yield from _dedupe(tuples, stab)

    yield from rec([], group)


def _dedupe(tuples, stab: np.ndarray) -> Iterator[tuple[int, ...]]:
    if stab.shape[0] == 1:
        yield from tuples
        return
    seen = set()
    for tup in tuples:
        arr = stab[:, list(tup)]
        key = min(map(tuple, arr.tolist()))
        if key not in seen:
            seen.add(key)
            yield key


def quot_enumerate_homs(
    p: GroupPresentation,
    T: FiniteGroupTable,
    surjective_only: bool = False,
    budget: int = 10_000_000,
    deadline: Optional[float] = None,
) -> list[tuple[int, ...]]:
    """All homomorphisms (as tuples of generator images), optionally only the surjective ones."""
    ident = np.arange(T.order, dtype=np.int32)[None, :]
    b = _Budget(budget, deadline)
    out = []
    for h in _search(p, T, ident, b):
        if surjective_only and not T.generates(h):
            continue
        out.append(h)
    out.sort()
    return out


def count_surjections_up_to_aut(
    p: GroupPresentation,
    T: FiniteGroupTable,
    budget: int = 10_000_000,
    deadline: Optional[float] = None,
) -> int:
    """Number of Aut(T)-orbits of surjections onto T (orbits counted, never divided out)."""
    b = _Budget(budget, deadline)
    return sum(1 for h in _search(p, T, T.automorphisms, b) if T.generates(h))


def relators_hold(p: GroupPresentation, T: FiniteGroupTable, images: Sequence[int]) -> bool:
    n = len(p.generators)
    return all(T.evaluate(_word_codes(r, n), images) == 0 for r in p.relators)


@dataclass
class QuotientFingerprint:
    catalog_id: str
    counts: dict[str, int | str] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"catalog_id": self.catalog_id, "counts": self.counts}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "QuotientFingerprint":
        data = json.loads(text)
        return cls(data["catalog_id"], dict(data["counts"]))

    def differences(self, other: "QuotientFingerprint") -> list[str]:
        """Targets on which both counts are known and differ."""
        out = []
        for name, c in self.counts.items():
            d = other.counts.get(name)
            if isinstance(c, int) and isinstance(d, int) and c != d:
                out.append(name)
        return out


def quot_fingerprint(
    p: GroupPresentation,
    catalog: Catalog,
    budget: int = 2_000_000,
    deadline: Optional[float] = None,
    targets: Optional[Sequence[str]] = None,
) -> QuotientFingerprint:
    fp = QuotientFingerprint(catalog.catalog_id)
    for name, grp in catalog.groups():
        if targets is not None and name not in targets:
            continue
        try:
            fp.counts[name] = count_surjections_up_to_aut(p, grp, budget, deadline)
        except QuotientBudgetError:
            fp.counts[name] = "unknown"
    return fp
