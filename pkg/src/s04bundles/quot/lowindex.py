"""Low-index subgroups by coset-table backtracking (Sims' algorithm).

A coset table has one row per coset and one column per generator and per
inverse generator.  Tables are filled in row-major order, each undefined
entry becoming either an existing coset or the next new one, so every
complete table produced is standardized.  Relators are scanned after each
choice to force deductions or expose a contradiction.  One table is kept per
conjugacy class of subgroups: the one that is least among all re-rootings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..torus import GroupPresentation
from .homs import QuotientBudgetError


@dataclass(frozen=True)
class CosetTable:
    """Complete standardized coset table; ``rows[c][j]`` for generator column j (inverses at j + k)."""

    rows: tuple[tuple[int, ...], ...]
    n_gens: int

    @property
    def index(self) -> int:
        return len(self.rows)

    def generator_permutations(self) -> list[tuple[int, ...]]:
        """Action of each generator on cosets (coset c goes to rows[c][j])."""
        return [tuple(row[j] for row in self.rows) for j in range(self.n_gens)]

    def rerooted(self, root: int) -> tuple[tuple[int, ...], ...]:
        return _standardize(self.rows, root, self.n_gens)

    def conjugate_count(self) -> int:
        """Number of distinct conjugates of the subgroup (index of its normalizer)."""
        return len({self.rerooted(c) for c in range(self.index)})


def _standardize(rows, root: int, k: int) -> tuple[tuple[int, ...], ...]:
    order = [root]
    label = {root: 0}
    i = 0
    while i < len(order):
        c = order[i]
        for j in range(2 * k):
            d = rows[c][j]
            if d not in label:
                label[d] = len(order)
                order.append(d)
        i += 1
    return tuple(tuple(label[rows[c][j]] for j in range(2 * k)) for c in order)


class _Search:
    def __init__(self, p: GroupPresentation, max_index: int, node_budget: int):
        self.k = len(p.generators)
        self.max_index = max_index
        self.budget = node_budget
        self.nodes = 0
        k = self.k
        # column code per signed letter
        self.rels = []
        for r in p.relators:
            if r:
                self.rels.append([abs(c) - 1 + (0 if c > 0 else k) for c in r])
        self.results: list[CosetTable] = []

    def inv_col(self, j: int) -> int:
        return j + self.k if j < self.k else j - self.k

    def assign(self, table, c: int, j: int, d: int, trail) -> bool:
        jj = self.inv_col(j)
        if table[c][j] is not None or table[d][jj] is not None:
            return table[c][j] == d and table[d][jj] == c
        table[c][j] = d
        table[d][jj] = c
        trail.append((c, j))
        trail.append((d, jj))
        return True

    def deduce(self, table, trail) -> bool:
        changed = True
        while changed:
            changed = False
            for c in range(len(table)):
                for rel in self.rels:
                    # forward scan
                    f, i = c, 0
                    while i < len(rel) and table[f][rel[i]] is not None:
                        f = table[f][rel[i]]
                        i += 1
                    if i == len(rel):
                        if f != c:
                            return False
                        continue
                    # backward scan
                    b, m = c, len(rel) - 1
                    while m >= i and table[b][self.inv_col(rel[m])] is not None:
                        b = table[b][self.inv_col(rel[m])]
                        m -= 1
                    if m < i:
                        if f != b:
                            return False
                    elif m == i:
                        if not self.assign(table, f, rel[i], b, trail):
                            return False
                        changed = True
        return True

    def undo(self, table, trail, mark: int) -> None:
        while len(trail) > mark:
            c, j = trail.pop()
            table[c][j] = None

    def run(self) -> list[CosetTable]:
        table = [[None] * (2 * self.k)]
        self.rec(table, [])
        return self.results

    def rec(self, table, trail) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise QuotientBudgetError(f"low-index search exceeded {self.budget} nodes")
        spot = None
        for c, row in enumerate(table):
            for j, v in enumerate(row):
                if v is None:
                    spot = (c, j)
                    break
            if spot:
                break
        if spot is None:
            self.accept(table)
            return
        c, j = spot
        jj = self.inv_col(j)
        choices = [d for d in range(len(table)) if table[d][jj] is None]
        if len(table) < self.max_index:
            choices.append(len(table))
        for d in choices:
            mark = len(trail)
            grew = d == len(table)
            if grew:
                table.append([None] * (2 * self.k))
            if self.assign(table, c, j, d, trail) and self.deduce(table, trail):
                self.rec(table, trail)
            self.undo(table, trail, mark)
            if grew:
                table.pop()

    def accept(self, table) -> None:
        rows = tuple(tuple(r) for r in table)
        if any(_standardize(rows, c, self.k) < rows for c in range(1, len(rows))):
            return
        self.results.append(CosetTable(rows, self.k))


def quot_low_index_subgroups(
    p: GroupPresentation, max_index: int, node_budget: int = 2_000_000
) -> list[CosetTable]:
    """One coset table per conjugacy class of subgroups of index <= max_index."""
    if max_index < 1:
        raise ValueError("index bound must be at least 1")
    found = _Search(p, max_index, node_budget).run()
    return sorted(found, key=lambda t: (t.index, t.rows))


def subgroup_count(tables: list[CosetTable], index: Optional[int] = None) -> int:
    """Number of subgroups (not classes) represented, optionally of one exact index."""
    return sum(t.conjugate_count() for t in tables if index is None or t.index == index)


def hall_subgroup_counts(rank: int, max_index: int) -> list[int]:
    """Subgroups of each index 1..max_index in a free group of the given rank (Hall's recursion)."""
    fact = [1]
    for n in range(1, max_index + 1):
        fact.append(fact[-1] * n)
    a: list[int] = []
    for n in range(1, max_index + 1):
        val = n * fact[n] ** (rank - 1)
        for k in range(1, n):
            val -= fact[n - k] ** (rank - 1) * a[k - 1]
        a.append(val)
    return a
