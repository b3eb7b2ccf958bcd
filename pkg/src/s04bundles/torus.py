"""Mapping-torus groups F3 x|_phi Z, their first homology, and the fibered norm."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fgroup import GENS, FreeAutomorphism, fg_abelianization, fg_induced

Relator = tuple[int, ...]  # signed 1-based generator indices


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("a presentation needs at least one generator")
        n = len(self.generators)
        rels = []
        for r in self.relators:
            if any(c == 0 or abs(c) > n for c in r):
                raise ValueError(f"relator {r} uses an unknown generator")
            rels.append(reduce_relator(r))
        object.__setattr__(self, "relators", tuple(rels))

    def __str__(self) -> str:
        return f"< {', '.join(self.generators)} | {', '.join(self.relator_text(r) for r in self.relators)} >"

    def relator_text(self, r: Relator) -> str:
        if not r:
            return "1"
        parts = []
        i = 0
        while i < len(r):
            j = i
            while j < len(r) and r[j] == r[i]:
                j += 1
            name = self.generators[abs(r[i]) - 1]
            e = (j - i) * (1 if r[i] > 0 else -1)
            parts.append(name if e == 1 else f"{name}^{e}")
            i = j
        return "*".join(parts)

    def canonical_text(self) -> str:
        """Stable serialization used for hashing."""
        rels = ";".join(",".join(map(str, r)) for r in self.relators)
        return f"{','.join(self.generators)}|{rels}"


def reduce_relator(r: Sequence[int]) -> Relator:
    out: list[int] = []
    for c in r:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def free_word_to_relator(w: str) -> Relator:
    return tuple((GENS.index(c) + 1) if c.islower() else -(GENS.index(c.lower()) + 1) for c in w)


def mapping_torus(phi: FreeAutomorphism) -> GroupPresentation:
    t = 4
    rels = []
    for i, img in enumerate(phi.images, start=1):
        inv_img = tuple(-c for c in reversed(free_word_to_relator(img)))
        rels.append((t, i, -t) + inv_img)
    return GroupPresentation(("x1", "x2", "x3", "t"), tuple(rels))


def torus_presentation(word: str) -> GroupPresentation:
    """Presentation of pi_1 of the bundle: relators t x_i t^-1 phi(x_i)^-1."""
    return mapping_torus(fg_induced(word))


# --------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]

    def __post_init__(self) -> None:
        for c, d in zip(self.torsion, self.torsion[1:]):
            if d % c:
                raise ValueError(f"torsion coefficients {self.torsion} are not a divisibility chain")
        if any(c < 2 for c in self.torsion):
            raise ValueError("torsion coefficients must be at least 2")

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{c}" for c in self.torsion]
        return " + ".join(parts) or "0"


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form (positive, divisibility chain)."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    top = 0
    while top < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(top, rows) for j in range(top, cols) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        while True:
            p = a[top][top]
            done = True
            for i in range(top + 1, rows):
                q = a[i][top] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                if a[i][top]:
                    done = False
            for j in range(top + 1, cols):
                q = a[top][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[top]
                if a[top][j]:
                    done = False
            if done:
                # pivot must divide the rest of the block
                bad = next(
                    ((i, j) for i in range(top + 1, rows) for j in range(top + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[top] = [x + y for x, y in zip(a[top], a[bad[0]])]
                continue
            # move the smallest remaining entry of the cross into the pivot slot
            cross = [(abs(a[i][top]), i, top) for i in range(top + 1, rows) if a[i][top]]
            cross += [(abs(a[top][j]), top, j) for j in range(top + 1, cols) if a[top][j]]
            _, i, j = min(cross)
            if j == top:
                a[top], a[i] = a[i], a[top]
            else:
                for row in a:
                    row[top], row[j] = row[j], row[top]
        diag.append(abs(a[top][top]))
        top += 1
    return diag


def relation_matrix(p: GroupPresentation) -> list[list[int]]:
    n = len(p.generators)
    rows = []
    for r in p.relators:
        row = [0] * n
        for c in r:
            row[abs(c) - 1] += 1 if c > 0 else -1
        rows.append(row)
    return rows


def torus_homology(p: GroupPresentation) -> AbelianInvariants:
    n = len(p.generators)
    rows = relation_matrix(p)
    diag = smith_diagonal(rows) if rows else []
    rank = n - len(diag)
    return AbelianInvariants(rank, tuple(d for d in diag if d > 1))


def monodromy_homology(word: str) -> AbelianInvariants:
    return torus_homology(torus_presentation(word))


def action_on_homology(word: str) -> list[list[int]]:
    """The matrix A of the induced map on H_1 of the fiber (basis x, y, z)."""
    return fg_abelianization(fg_induced(word))


def torus_fibered_norm(punctures: int = 4, genus: int = 0) -> int:
    """Thurston norm of the fiber class, -chi of the fiber (2 for the four-punctured sphere)."""
    chi = 2 - 2 * genus - punctures
    if chi >= 0:
        raise ValueError("fiber must have negative Euler characteristic")
    return -chi
