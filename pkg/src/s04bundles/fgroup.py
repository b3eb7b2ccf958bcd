"""The fiber group F3 = pi_1(S_{0,4}) and automorphisms induced by mapping classes.

Words are plain strings over ``x y z`` (the loops around punctures 1, 2, 3)
with capitals as inverses; the empty word prints as ``1``.  The fourth
peripheral loop is ``(xyz)^-1``.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .mcg import MappingClass, parse_monodromy

LETTERS = "xyzXYZ"
GENS = "xyz"
_ORDER_KEY = str.maketrans("xyzXYZ", "abcdef")
_UNKEY = str.maketrans("abcdef", "xyzXYZ")
_INV_CHAR = {"x": "X", "y": "Y", "z": "Z", "X": "x", "Y": "y", "Z": "z"}


class FreeWordSyntaxError(ValueError):
    pass


class EnumerationBudgetError(RuntimeError):
    pass


def parse_free_word(text: str) -> str:
    s = "".join(text.split())
    if s == "1":
        return ""
    bad = set(s) - set(LETTERS)
    if bad:
        raise FreeWordSyntaxError(f"unknown letters {sorted(bad)} in {text!r}")
    return fg_reduce(s)


def show(w: str) -> str:
    return w or "1"


def fg_inverse(w: str) -> str:
    return w[::-1].swapcase()


def fg_reduce(w: str) -> str:
    out: list[str] = []
    for c in w:
        if out and out[-1] == _INV_CHAR[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def fg_cyclic_split(w: str) -> tuple[str, str]:
    """``(c, core)`` with ``w = c core c^-1`` after free reduction, core cyclically reduced."""
    w = fg_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == _INV_CHAR[w[j]]:
        i += 1
        j -= 1
    return w[:i], w[i : j + 1]


def fg_cyclic_reduce(w: str) -> str:
    return fg_cyclic_split(w)[1]


def least_rotation(w: str) -> str:
    """Lexicographically least rotation under x < y < z < X < Y < Z (Booth's algorithm)."""
    if len(w) <= 1:
        return w
    s = w.translate(_ORDER_KEY)
    n = len(s)
    ss = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = f[j - k - 1]
        while i != -1 and ss[j] != ss[k + i + 1]:
            if ss[j] < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and ss[j] != ss[k + i + 1]:
            if ss[j] < ss[k + i + 1]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return (ss[k : k + n]).translate(_UNKEY)


def fg_conjugacy_key(w: str) -> str:
    """Canonical representative of the conjugacy class of ``w``."""
    return least_rotation(fg_cyclic_reduce(w))


def fg_is_conjugate(w1: str, w2: str) -> bool:
    a, b = fg_cyclic_reduce(w1), fg_cyclic_reduce(w2)
    return len(a) == len(b) and b in a + a


def is_proper_power(core: str) -> bool:
    n = len(core)
    for p in range(1, n // 2 + 1):
        if n % p == 0 and core[:p] * (n // p) == core:
            return True
    return False


# --------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class FreeAutomorphism:
    """An automorphism of F3 given by the images of x, y, z.

    ``inverse_images`` caches the images of the inverse automorphism.
    """

    images: tuple[str, str, str]
    inverse_images: Optional[tuple[str, str, str]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(fg_reduce(w) for w in self.images))
        if self.inverse_images is None:
            object.__setattr__(self, "inverse_images", _nielsen_inverse(self.images))

    @property
    def letter_map(self) -> dict[str, str]:
        m = dict(zip(GENS, self.images))
        m.update({g.upper(): fg_inverse(w) for g, w in zip(GENS, self.images)})
        return m

    def __call__(self, w: str) -> str:
        return fg_apply(self, w)

    def __str__(self) -> str:
        return ", ".join(f"{g} -> {show(w)}" for g, w in zip(GENS, self.images))


IDENTITY = FreeAutomorphism(("x", "y", "z"), ("x", "y", "z"))


def _apply_images(images: Sequence[str], w: str) -> str:
    m = {
        "x": images[0], "y": images[1], "z": images[2],
        "X": fg_inverse(images[0]), "Y": fg_inverse(images[1]), "Z": fg_inverse(images[2]),
    }
    return fg_reduce("".join(m[c] for c in w))


def fg_apply(alpha: FreeAutomorphism, w: str) -> str:
    return _apply_images(alpha.images, w)


def fg_compose(alpha: FreeAutomorphism, beta: FreeAutomorphism) -> FreeAutomorphism:
    """``alpha ∘ beta`` (apply beta first)."""
    assert alpha.inverse_images is not None and beta.inverse_images is not None
    images = tuple(_apply_images(alpha.images, w) for w in beta.images)
    inverse = tuple(_apply_images(beta.inverse_images, w) for w in alpha.inverse_images)
    return FreeAutomorphism(images, inverse)  # type: ignore[arg-type]


def fg_invert(alpha: FreeAutomorphism) -> FreeAutomorphism:
    assert alpha.inverse_images is not None
    return FreeAutomorphism(alpha.inverse_images, alpha.images)


def fg_power(alpha: FreeAutomorphism, n: int) -> FreeAutomorphism:
    base = alpha if n >= 0 else fg_invert(alpha)
    result = IDENTITY
    for _ in range(abs(n)):
        result = fg_compose(result, base)
    return result


def inner(g: str) -> FreeAutomorphism:
    """Conjugation ``w -> g w g^-1``."""
    g = fg_reduce(g)
    gi = fg_inverse(g)
    return FreeAutomorphism(
        tuple(fg_reduce(g + c + gi) for c in GENS),  # type: ignore[arg-type]
        tuple(fg_reduce(gi + c + g) for c in GENS),  # type: ignore[arg-type]
    )


def _nielsen_inverse(images: Sequence[str]) -> tuple[str, str, str]:
    """Invert an automorphism by Nielsen reduction of its image basis.

    Right-multiplication moves ``y_i -> y_i y_j^±1`` (and the left-handed
    versions) are applied while they shorten the basis; each move is a
    precomposition by an elementary automorphism, which is tracked.
    """
    ys = [fg_reduce(w) for w in images]
    track = ["x", "y", "z"]  # images of the accumulated elementary automorphisms
    for _ in range(10_000):
        total = sum(map(len, ys))
        if total == 3 and all(len(y) == 1 for y in ys):
            break
        best = None
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                for side in (0, 1):
                    for inv in (False, True):
                        yj = fg_inverse(ys[j]) if inv else ys[j]
                        cand = fg_reduce(ys[i] + yj) if side == 0 else fg_reduce(yj + ys[i])
                        gain = len(ys[i]) - len(cand)
                        if gain > 0 and (best is None or gain > best[0]):
                            best = (gain, i, j, side, inv, cand)
        if best is None:
            raise ValueError(f"images {tuple(images)} do not form a Nielsen-reducible basis")
        _, i, j, side, inv, cand = best
        ys[i] = cand
        tj = fg_inverse(track[j]) if inv else track[j]
        track[i] = fg_reduce(track[i] + tj) if side == 0 else fg_reduce(tj + track[i])
    else:
        raise ValueError("Nielsen reduction did not terminate")
    # now alpha ∘ E = P where E = track and P sends generator k to the letter ys[k]
    # so alpha^-1 = E ∘ P^-1
    inv_p: dict[str, str] = {}
    for k, y in enumerate(ys):
        g = GENS[k]
        if y.islower():
            inv_p[y] = g
        else:
            inv_p[y.lower()] = g.upper()
    if len(inv_p) != 3:
        raise ValueError(f"images {tuple(images)} do not generate F3")
    return tuple(_apply_images(track, inv_p[c]) for c in GENS)  # type: ignore[return-value]


# Artin half twists on <x1..x4 | x1x2x3x4> with x4 = (xyz)^-1 eliminated.
_HALF = {
    "h": (("xyX", "x", "z"), ("y", "Yxy", "z")),  # sigma_1 and its inverse
    "k": (("x", "yzY", "y"), ("x", "z", "Zyz")),  # sigma_2 and its inverse
}


def _half_twist(name: str, sign: int) -> FreeAutomorphism:
    fwd, bwd = _HALF[name]
    return FreeAutomorphism(fwd, bwd) if sign > 0 else FreeAutomorphism(bwd, fwd)


SIGMA1 = _half_twist("h", 1)
SIGMA2 = _half_twist("k", 1)
# Involutions of the Klein four-group: sigma_1 sigma_3^-1 and sigma_2 sigma_41^-1.
INVOLUTION_U = FreeAutomorphism(("xyX", "x", "ZYX"))
INVOLUTION_V = FreeAutomorphism(("XZY", "yzY", "y"))

# Orientation-reversing reflection fixing every puncture; conjugating by it
# realizes the mirror of a mapping class.
REFLECTION = FreeAutomorphism(("X", "xYX", "xyZYX"))

LETTER_AUTOMORPHISMS: dict[str, FreeAutomorphism] = {
    "a": fg_compose(SIGMA1, SIGMA1),
    "A": fg_invert(fg_compose(SIGMA1, SIGMA1)),
    "b": fg_invert(fg_compose(SIGMA2, SIGMA2)),
    "B": fg_compose(SIGMA2, SIGMA2),
    "u": INVOLUTION_U,
    "v": INVOLUTION_V,
}
# PSL(2,Z) syllables: s = sigma1 sigma2 sigma1, r = sigma1^-1 sigma2^-1
_S_AUT = fg_compose(fg_compose(SIGMA1, SIGMA2), SIGMA1)
_R_AUT = fg_compose(fg_invert(SIGMA1), fg_invert(SIGMA2))
SYLLABLE_AUTOMORPHISMS: dict[str, FreeAutomorphism] = {
    "s": _S_AUT,
    "r": _R_AUT,
    "R": fg_invert(_R_AUT),
}


def fg_induced(word: str) -> FreeAutomorphism:
    """Automorphism of F3 induced by a monodromy word (letters a A b B u v)."""
    result = IDENTITY
    for c in parse_monodromy(word):
        result = fg_compose(result, LETTER_AUTOMORPHISMS[c])
    return result


def fg_induced_class(g: MappingClass) -> FreeAutomorphism:
    """Automorphism induced by an arbitrary mapping class, well defined up to inner."""
    result = IDENTITY
    for c in g.psl.syllables:
        result = fg_compose(result, SYLLABLE_AUTOMORPHISMS[c])
    if g.vec[0]:
        result = fg_compose(result, INVOLUTION_U)
    if g.vec[1]:
        result = fg_compose(result, INVOLUTION_V)
    return result


def fg_is_inner(alpha: FreeAutomorphism) -> Optional[str]:
    """Return ``g`` with ``alpha = conjugation by g``, or None."""
    c, core = fg_cyclic_split(alpha.images[0])
    if core != "x":
        return None
    ci = fg_inverse(c)
    w = fg_reduce(ci + alpha.images[1] + c)
    # w must be x^k y x^-k
    k = 0
    while k < len(w) and w[k] == w[0] and w[0] in "xX":
        k += 1
    power = w[:k]
    candidate = fg_reduce(c + power)
    if inner(candidate).images == alpha.images:
        return candidate
    return None


def fg_abelianization(alpha: FreeAutomorphism) -> list[list[int]]:
    """Integer matrix of the induced map on Z^3 (columns are images of x, y, z)."""
    cols = []
    for w in alpha.images:
        cols.append([w.count(g) - w.count(g.upper()) for g in GENS])
    return [[cols[j][i] for j in range(3)] for i in range(3)]


# --------------------------------------------------------------------------
# peripheral structure

PERIPHERAL = ("x", "y", "z", "ZYX")  # loops around punctures 1..4


def fg_peripheral_permutation(alpha: FreeAutomorphism) -> Optional[tuple[tuple[int, int], ...]]:
    """For each puncture ``i`` the pair ``(j, sign)`` with alpha(p_i) ~ p_j^sign.

    Returns None when some peripheral loop is not sent to a peripheral class.
    """
    keys = {fg_conjugacy_key(p): (j, 1) for j, p in enumerate(PERIPHERAL)}
    keys.update({fg_conjugacy_key(fg_inverse(p)): (j, -1) for j, p in enumerate(PERIPHERAL)})
    out = []
    for p in PERIPHERAL:
        hit = keys.get(fg_conjugacy_key(fg_apply(alpha, p)))
        if hit is None:
            return None
        out.append(hit)
    return tuple(out)


def peripheral_classes(oriented: bool = True) -> list[str]:
    reps = [fg_conjugacy_key(p) for p in PERIPHERAL]
    if oriented:
        reps += [fg_conjugacy_key(fg_inverse(p)) for p in PERIPHERAL]
    return sorted(reps, key=class_sort_key)


def class_sort_key(w: str) -> tuple[int, str]:
    return len(w), w.translate(_ORDER_KEY)


# --------------------------------------------------------------------------
# fixed conjugacy classes


def _lyndon_words(max_len: int) -> Iterable[str]:
    """Lyndon words over the ordered alphabet a < ... < f (Duval's generation)."""
    k = 6
    w = [-1]
    while w:
        w[-1] += 1
        yield "".join(chr(97 + c) for c in w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


_INV_KEYED = str.maketrans("abcdef", "defabc")


@lru_cache(maxsize=8)
def primitive_classes(max_len: int) -> tuple[str, ...]:
    """Canonical representatives of primitive cyclically reduced classes of length <= max_len.

    Sorted by length, then lexicographically.  Each representative is the least
    rotation, so the list has one entry per conjugacy class.
    """
    out = []
    for w in _lyndon_words(max_len):
        inv = w.translate(_INV_KEYED)
        if any(inv[i] == w[i + 1] for i in range(len(w) - 1)):
            continue
        if len(w) > 1 and inv[-1] == w[0]:
            continue
        out.append(w)
    out.sort(key=lambda s: (len(s), s))
    return tuple(s.translate(_UNKEY) for s in out)


def _filter_homs(n_homs: int, seed: int = 20240601):
    """Seeded random homomorphisms from F3 into small nonabelian groups, used to screen classes."""
    from .quot.groups import alternating_group, psl2_group, symmetric_group

    rng = random.Random(seed)
    out = []
    for grp in (psl2_group(7), alternating_group(5), symmetric_group(4)):
        for _ in range(n_homs):
            out.append((grp, tuple(rng.randrange(grp.order) for _ in range(3))))
    return out


def _evaluate_classes(grp, gens: Sequence[int], classes_arr: np.ndarray) -> np.ndarray:
    """Conjugacy-class ids in ``grp`` of every padded word row of ``classes_arr``."""
    table = grp.table
    imgs = np.array(list(gens) + [int(grp.inverse[g]) for g in gens] + [0], dtype=np.int64)
    prod = np.zeros(classes_arr.shape[0], dtype=np.int64)
    for col in range(classes_arr.shape[1]):
        prod = table[prod, imgs[classes_arr[:, col]]]
    return grp.class_id[prod]


def _word_indices(w: str) -> list[int]:
    return ["xyzXYZ".index(c) for c in w]


def _fixed_exact(fwd: FreeAutomorphism, bwd: FreeAutomorphism, w: str, e: int) -> bool:
    """Exact test of alpha^e(w) ~ w by meeting in the middle on cyclic reductions."""
    e1 = (e + 1) // 2
    e2 = e - e1
    left = w
    for _ in range(e1):
        left = fg_cyclic_reduce(fg_apply(fwd, left))
    right = w
    for _ in range(e2):
        right = fg_cyclic_reduce(fg_apply(bwd, right))
    return len(left) == len(right) and right in left + left


def _exact_chunk(args) -> list[tuple[str, int]]:
    images, inverse_images, words_and_exponents = args
    fwd = FreeAutomorphism(images, inverse_images)
    bwd = fg_invert(fwd)
    out = []
    for w, exps in words_and_exponents:
        for e in exps:
            if _fixed_exact(fwd, bwd, w, e):
                out.append((w, e))
                break
    return out


def fg_fixed_classes(
    alpha: FreeAutomorphism,
    max_len: int = 8,
    powers: int = 6,
    max_classes: int = 2_000_000,
    workers: int = 1,
    filter_homs: int = 12,
) -> list[str]:
    """Primitive conjugacy classes of length <= max_len fixed by alpha^e for some 1 <= e <= powers.

    Classes are oriented: [w] and [w^-1] are reported separately.  Candidates
    are first screened by a necessary condition in finite quotients (the image
    of alpha^e(w) must be conjugate to the image of w under every sampled
    homomorphism), then confirmed exactly in F3.
    """
    if max_len < 1 or powers < 1:
        raise ValueError("length and power bounds must be positive")
    estimate = sum(5**n // n for n in range(1, max_len + 1))  # cyclic words of length n ~ 5^n / n
    if estimate > 2 * max_classes:
        raise EnumerationBudgetError(
            f"about {estimate} classes of length <= {max_len} exceed the budget {max_classes}"
        )
    classes = primitive_classes(max_len)
    if len(classes) > max_classes:
        raise EnumerationBudgetError(f"{len(classes)} classes exceed the budget {max_classes}")

    arr = np.full((len(classes), max_len), 6, dtype=np.int64)
    for i, w in enumerate(classes):
        arr[i, : len(w)] = _word_indices(w)

    alive = {e: np.ones(len(classes), dtype=bool) for e in range(1, powers + 1)}
    for grp, gens in _filter_homs(filter_homs):
        base = _evaluate_classes(grp, gens, arr)
        cur = tuple(gens)
        for e in range(1, powers + 1):
            cur = tuple(grp.evaluate(_word_indices(w), cur) for w in alpha.images)
            alive[e] &= _evaluate_classes(grp, cur, arr) == base

    todo = []
    for i, w in enumerate(classes):
        exps = [e for e in range(1, powers + 1) if alive[e][i]]
        if exps:
            todo.append((w, exps))

    assert alpha.inverse_images is not None
    if workers > 1 and len(todo) > 64:
        size = math.ceil(len(todo) / workers)
        chunks = [
            (alpha.images, alpha.inverse_images, todo[i : i + size])
            for i in range(0, len(todo), size)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [hit for part in pool.map(_exact_chunk, chunks) for hit in part]
    else:
        found = _exact_chunk((alpha.images, alpha.inverse_images, todo))
    return sorted((w for w, _ in found), key=class_sort_key)


def unoriented(classes: Iterable[str]) -> list[str]:
    """Collapse [w] and [w^-1] to a single representative (the smaller key)."""
    seen: dict[str, str] = {}
    for w in classes:
        inv = fg_conjugacy_key(fg_inverse(w))
        key = min(w, inv, key=class_sort_key)
        seen[key] = key
    return sorted(seen, key=class_sort_key)


def fg_nonperipheral_fixed(alpha: FreeAutomorphism, max_len: int = 8, powers: int = 6) -> list[str]:
    periph = set(peripheral_classes())
    return [w for w in fg_fixed_classes(alpha, max_len, powers) if w not in periph]


def primitive_class_count(max_len: int) -> int:
    return len(primitive_classes(max_len))
