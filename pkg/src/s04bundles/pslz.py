"""Exact arithmetic in PSL(2,Z) = C2 * C3.

Words are strings over the syllables ``s`` (order 2), ``r`` and ``R`` (``R`` is
r^2 = r^-1).  A canonical word alternates between ``s`` and a member of
``{r, R}``.  The identity prints as ``1``.

Matrix realization used throughout the package::

    s -> [[0, -1], [1, 0]]      r -> [[0, -1], [1, 1]]

so that ``sr`` is the elementary matrix [[1, 1], [0, 1]] up to sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

Matrix = tuple[int, int, int, int]  # (a, b, c, d) for [[a, b], [c, d]]

_SYLLABLES = frozenset("srR")
_MATRICES: dict[str, Matrix] = {
    "s": (0, -1, 1, 0),
    "r": (0, -1, 1, 1),
    "R": (-1, -1, 1, 0),
}
_INVERSE = {"s": "s", "r": "R", "R": "r"}
# cyclic-form ordering s < r < R
_ORDER_KEY = str.maketrans("srR", "abc")


class PslSyntaxError(ValueError):
    pass


def _factor(c: str) -> int:
    return 2 if c == "s" else 3


def _merge(x: str, y: str) -> str:
    """Product of two syllables from the same factor ('' for the identity)."""
    if x == "s":
        return ""
    e = (1 if x == "r" else 2) + (1 if y == "r" else 2)
    return ["", "r", "R"][e % 3]


def _canonical(text: str) -> str:
    stack: list[str] = []
    for c in text:
        if c not in _SYLLABLES:
            raise PslSyntaxError(f"unknown PSL(2,Z) syllable {c!r}")
        if stack and _factor(stack[-1]) == _factor(c):
            m = _merge(stack.pop(), c)
            if m:
                stack.append(m)
        else:
            stack.append(c)
    return "".join(stack)


@dataclass(frozen=True)
class PslWord:
    """An element of PSL(2,Z), always stored in canonical form."""

    syllables: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "syllables", _canonical(self.syllables))

    @classmethod
    def parse(cls, text: str) -> "PslWord":
        text = "".join(text.split())
        if text in ("", "1"):
            return cls("")
        return cls(text)

    @property
    def canonical(self) -> bool:
        return True

    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: "PslWord") -> "PslWord":
        return PslWord(self.syllables + other.syllables)

    def __pow__(self, n: int) -> "PslWord":
        base = self if n >= 0 else psl_invert(self)
        result, n = PslWord(), abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return self.syllables or "1"

    @cached_property
    def matrix(self) -> Matrix:
        m: Matrix = (1, 0, 0, 1)
        for c in self.syllables:
            m = mat_mul(m, _MATRICES[c])
        return m


IDENTITY = PslWord()
S = PslWord("s")
R_ = PslWord("r")


def mat_mul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def projective(m: Matrix) -> Matrix:
    """Representative of ±m whose first nonzero entry is positive."""
    for x in m:
        if x:
            return m if x > 0 else tuple(-y for y in m)  # type: ignore[return-value]
    raise ValueError("zero matrix")


def psl_canonicalize(w: PslWord | str) -> PslWord:
    if isinstance(w, PslWord):
        return PslWord(w.syllables)
    return PslWord.parse(w)


def psl_multiply(u: PslWord, v: PslWord) -> PslWord:
    return u * v


def psl_invert(u: PslWord) -> PslWord:
    return PslWord("".join(_INVERSE[c] for c in reversed(u.syllables)))


def psl_to_matrix(w: PslWord) -> Matrix:
    """The projective class of ``w`` as a normalized integer matrix."""
    return projective(w.matrix)


def psl_trace_abs(w: PslWord) -> int:
    a, _, _, d = w.matrix
    return abs(a + d)


def psl_from_matrix(m: Matrix) -> PslWord:
    """Inverse of :func:`psl_to_matrix` (Euclid on the first column)."""
    a, b, c, d = m
    if a * d - b * c != 1:
        raise ValueError(f"determinant of {m} is not 1")
    t_pos, t_neg = "sr", "Rs"  # T = [[1,1],[0,1]] and its inverse
    out: list[str] = []
    while c != 0:
        q = a // c
        # M = T^q * M'  with  M' = T^-q M
        out.append((t_pos if q > 0 else t_neg) * abs(q))
        a, b = a - q * c, b - q * d
        # M' = S * M''  with  M'' = S^-1 M' = [[c, d], [-a, -b]]
        out.append("s")
        a, b, c, d = c, d, -a, -b
    # now M = ±[[1, b'], [0, 1]]
    k = b if a == 1 else -b
    out.append((t_pos if k > 0 else t_neg) * abs(k))
    return PslWord("".join(out))


def psl_order(w: PslWord) -> Optional[int]:
    """Order of ``w`` (1, 2 or 3), or None for infinite order."""
    _, core = cyclic_decomposition(w)
    if not core:
        return 1
    if len(core) == 1:
        return _factor(core)
    return None


def cyclic_decomposition(w: PslWord) -> tuple[PslWord, str]:
    """Return ``(c, core)`` with ``w = c * core * c^-1`` and ``core`` cyclically reduced.

    ``core`` is empty, a single syllable, or an even-length alternating word.
    """
    word = w.syllables
    conj = ""
    while len(word) >= 2 and _factor(word[0]) == _factor(word[-1]):
        first = word[0]
        conj += first
        word = _canonical(_INVERSE[first] + word + first)
    return PslWord(conj), word


def canonical_rotation(core: str) -> str:
    """Lexicographically least rotation of a cyclically reduced word (s < r < R)."""
    if len(core) <= 1:
        return core
    rots = [core[i:] + core[:i] for i in range(len(core))]
    return min(rots, key=lambda x: x.translate(_ORDER_KEY))


def conjugacy_key(w: PslWord) -> str:
    return canonical_rotation(cyclic_decomposition(w)[1])


def psl_conjugate(u: PslWord, v: PslWord) -> Optional[PslWord]:
    """A word ``k`` with ``k u k^-1 = v``, or None when u and v are not conjugate."""
    cu, core_u = cyclic_decomposition(u)
    cv, core_v = cyclic_decomposition(v)
    if len(core_u) != len(core_v):
        return None
    shift: Optional[str] = None
    if len(core_u) <= 1:
        if core_u == core_v:
            shift = ""
    else:
        n = len(core_u)
        for i in range(n):
            if core_u[i:] + core_u[:i] == core_v:
                shift = core_u[:i]
                break
    if shift is None:
        return None
    k = cv * psl_invert(PslWord(shift)) * psl_invert(cu)
    if k * u * psl_invert(k) != v:
        raise AssertionError("conjugacy witness failed verification")
    return k


def psl_primitive_root(u: PslWord) -> tuple[PslWord, int]:
    """``(z, k)`` with ``u = z^k``, ``k >= 1`` and z not a proper power."""
    c, core = cyclic_decomposition(u)
    if len(core) <= 1:
        raise ValueError(f"{u} has finite order; its centralizer is not infinite cyclic")
    n = len(core)
    for p in range(2, n + 1, 2):
        if n % p == 0 and core[:p] * (n // p) == core:
            z = c * PslWord(core[:p]) * psl_invert(c)
            return z, n // p
    raise AssertionError("unreachable")


def psl_centralizer_generator(u: PslWord) -> PslWord:
    return psl_primitive_root(u)[0]


def psl_finite_centralizer(u: PslWord) -> list[PslWord]:
    """All elements of the (finite) centralizer of a nontrivial finite-order ``u``."""
    c, core = cyclic_decomposition(u)
    if len(core) != 1:
        raise ValueError("expected a nontrivial element of finite order")
    x = PslWord(core)
    ci = psl_invert(c)
    return [c * x**j * ci for j in range(_factor(core))]
