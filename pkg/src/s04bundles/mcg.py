"""Mod(S_{0,4}) realized as PSL(2,Z) ⋉ (Z/2)^2.

Elements are pairs ``(p, w)`` with ``p`` a :class:`PslWord` and ``w`` a vector
in (Z/2)^2.  The product is

    (p1, w1) * (p2, w2) = (p1 p2, rho(p2)^-1 w1 + w2)

where ``rho`` is reduction of the matrix realization mod 2 acting on column
vectors.  The PSL factor is the stabilizer of the fourth puncture; the vector
factor is the Klein four-group of involutions acting trivially on curves.

Monodromy words use the letters ``a``/``A`` (twist about the curve around
punctures 1,2 and its inverse), ``b``/``B`` (curve around punctures 2,3),
and the involutions ``u``, ``v``.  Whitespace is ignored and ``^n`` repeats
the preceding letter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .pslz import (
    PslWord,
    psl_centralizer_generator,
    psl_conjugate,
    psl_finite_centralizer,
    psl_invert,
    psl_order,
    psl_trace_abs,
)

Vec = tuple[int, int]
Mat2 = tuple[int, int, int, int]


class WordSyntaxError(ValueError):
    pass


def _rho(p: PslWord) -> Mat2:
    return tuple(x % 2 for x in p.matrix)  # type: ignore[return-value]


def _apply(m: Mat2, w: Vec) -> Vec:
    a, b, c, d = m
    return ((a * w[0] + b * w[1]) % 2, (c * w[0] + d * w[1]) % 2)


def _inv2(m: Mat2) -> Mat2:
    a, b, c, d = m
    return (d, b, c, a)  # inverse of a det-1 matrix, mod 2


@dataclass(frozen=True)
class MappingClass:
    psl: PslWord = PslWord()
    vec: Vec = (0, 0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vec", (self.vec[0] % 2, self.vec[1] % 2))

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        v = _apply(_inv2(_rho(other.psl)), self.vec)
        return MappingClass(self.psl * other.psl, (v[0] ^ other.vec[0], v[1] ^ other.vec[1]))

    def __pow__(self, n: int) -> "MappingClass":
        return mcg_power(self, n)

    def is_identity(self) -> bool:
        return self.psl.is_identity() and self.vec == (0, 0)

    def __str__(self) -> str:
        return f"{self.psl}|{self.vec[0]}{self.vec[1]}"

    @classmethod
    def parse(cls, text: str) -> "MappingClass":
        """Inverse of ``str``: ``<psl word>|<two bits>``."""
        psl, _, bits = text.partition("|")
        bits = bits.strip() or "00"
        if len(bits) != 2 or set(bits) - {"0", "1"}:
            raise WordSyntaxError(f"bad vector part {bits!r}")
        return cls(PslWord.parse(psl), (int(bits[0]), int(bits[1])))


IDENTITY = MappingClass()

# PSL parts: a -> [[1,2],[0,1]], b -> [[1,0],[2,1]]
GENERATORS: dict[str, MappingClass] = {
    "a": MappingClass(PslWord("srsr")),
    "A": MappingClass(PslWord("RsRs")),
    "b": MappingClass(PslWord("sRsR")),
    "B": MappingClass(PslWord("rsrs")),
    "u": MappingClass(PslWord(), (1, 0)),
    "v": MappingClass(PslWord(), (0, 1)),
}
INVERSE_LETTER = {"a": "A", "A": "a", "b": "B", "B": "b", "u": "u", "v": "v"}

_TOKEN = re.compile(r"([aAbBuv])(?:\^(-?\d+))?")


def parse_monodromy(text: str) -> str:
    """Expand a monodromy word into a plain letter string (``^n`` resolved)."""
    s = "".join(text.split())
    if s == "1":
        return ""
    out: list[str] = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected {s[pos]!r} at position {pos} in {text!r}")
        letter, exp = m.group(1), m.group(2)
        n = 1 if exp is None else int(exp)
        out.append((letter if n >= 0 else INVERSE_LETTER[letter]) * abs(n))
        pos = m.end()
    return "".join(out)


def invert_monodromy(letters: str) -> str:
    return "".join(INVERSE_LETTER[c] for c in reversed(parse_monodromy(letters)))


def mcg_eval(word: str) -> MappingClass:
    g = IDENTITY
    for c in parse_monodromy(word):
        g = g * GENERATORS[c]
    return g


def mcg_multiply(g: MappingClass, h: MappingClass) -> MappingClass:
    return g * h


def mcg_invert(g: MappingClass) -> MappingClass:
    return MappingClass(psl_invert(g.psl), _apply(_rho(g.psl), g.vec))


def mcg_power(g: MappingClass, n: int) -> MappingClass:
    base = g if n >= 0 else mcg_invert(g)
    result, n = IDENTITY, abs(n)
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def mcg_trace(g: MappingClass) -> int:
    return psl_trace_abs(g.psl)


def mcg_is_pseudo_anosov(g: MappingClass) -> bool:
    return psl_trace_abs(g.psl) > 2


_TO_VEC = {0: (0, 1), 1: (1, 1), 2: (1, 0)}  # involution carrying puncture 3 to i
_FROM_VEC = {v: k for k, v in _TO_VEC.items()}
_KLEIN = {
    (0, 0): (0, 1, 2, 3),
    (1, 0): (1, 0, 3, 2),
    (0, 1): (3, 2, 1, 0),
    (1, 1): (2, 3, 0, 1),
}


def mcg_puncture_permutation(g: MappingClass) -> tuple[int, int, int, int]:
    """Permutation of the punctures 0..3; ``perm[i]`` is the image of puncture ``i``.

    Puncture 3 is fixed by the PSL factor, which permutes 0, 1, 2 through its
    mod-2 action on the nonzero vectors of (Z/2)^2.
    """
    rho = _rho(g.psl)

    def psl_perm(i: int) -> int:
        return 3 if i == 3 else _FROM_VEC[_apply(rho, _TO_VEC[i])]

    klein = _KLEIN[g.vec]
    return tuple(psl_perm(klein[i]) for i in range(4))  # type: ignore[return-value]


def _centralizer_candidates(p: PslWord) -> list[PslWord]:
    """Representatives of the centralizer of ``p`` covering every mod-2 behavior."""
    order = psl_order(p)
    if order is None:
        z = psl_centralizer_generator(p)
        period = 1
        while not (z**period).is_identity() and _rho(z**period) != (1, 0, 0, 1):
            period += 1
        return [z**j for j in range(period)]
    if order == 1:
        reps: dict[Mat2, PslWord] = {}
        for w in ("", "s", "r", "R", "sr", "rs", "srs", "sR", "Rs"):
            reps.setdefault(_rho(PslWord(w)), PslWord(w))
        return list(reps.values())
    return psl_finite_centralizer(p)


_VECTORS: tuple[Vec, ...] = ((0, 0), (1, 0), (0, 1), (1, 1))


def mcg_conjugate(g: MappingClass, h: MappingClass) -> Optional[MappingClass]:
    """A mapping class ``xi`` with ``xi g xi^-1 = h``, or None.

    The PSL(2,Z) parts are conjugated first; all remaining freedom lies in the
    centralizer of ``g.psl``, whose action on (Z/2)^2 is periodic, so finitely
    many candidates are checked directly.
    """
    k0 = psl_conjugate(g.psl, h.psl)
    if k0 is None:
        return None
    for c in _centralizer_candidates(g.psl):
        k = k0 * c
        for x in _VECTORS:
            xi = MappingClass(k, x)
            if xi * g * mcg_invert(xi) == h:
                return xi
    return None


def mcg_conjugate_up_to_inversion(
    g: MappingClass, h: MappingClass
) -> Optional[tuple[int, MappingClass]]:
    xi = mcg_conjugate(g, h)
    if xi is not None:
        return 1, xi
    xi = mcg_conjugate(g, mcg_invert(h))
    if xi is not None:
        return -1, xi
    return None


def mcg_common_conjugate_power(
    g: MappingClass, h: MappingClass, bound: int
) -> Optional[tuple[int, int, MappingClass]]:
    """Smallest ``m <= bound`` with ``g^m`` conjugate to ``h^m`` or ``h^-m``."""
    if not (mcg_is_pseudo_anosov(g) and mcg_is_pseudo_anosov(h)):
        raise ValueError("both mapping classes must be pseudo-Anosov")
    for m in range(1, bound + 1):
        found = mcg_conjugate_up_to_inversion(g**m, h**m)
        if found is not None:
            return m, found[0], found[1]
    return None


_MIRROR = {"s": "s", "r": "sRs", "R": "srs"}


def mcg_mirror(g: MappingClass) -> MappingClass:
    """Conjugation by the reflection of the pillowcase fixing all four punctures.

    On the PSL factor this is conjugation by diag(1, -1); it inverts both
    half twists and acts trivially on (Z/2)^2.
    """
    return MappingClass(PslWord("".join(_MIRROR[c] for c in g.psl.syllables)), g.vec)
