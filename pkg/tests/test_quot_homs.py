import itertools
import random

import pytest

from s04bundles.fgroup import fg_induced
from s04bundles.quot.groups import cyclic_group, load_catalog, quaternion_group, symmetric_group
from s04bundles.quot.homs import (
    QuotientBudgetError,
    QuotientFingerprint,
    count_surjections_up_to_aut,
    quot_enumerate_homs,
    quot_fingerprint,
    relators_hold,
)
from s04bundles.mcg import invert_monodromy
from s04bundles.torus import GroupPresentation, torus_presentation

F3 = GroupPresentation(("x1", "x2", "x3"), ())


def brute_homs(p, T):
    return [t for t in itertools.product(range(T.order), repeat=len(p.generators)) if relators_hold(p, T, t)]


def test_free_group_counts():
    assert len(quot_enumerate_homs(F3, cyclic_group(2))) == 8
    assert len(quot_enumerate_homs(F3, cyclic_group(2), surjective_only=True)) == 7
    assert len(quot_enumerate_homs(F3, symmetric_group(3))) == 216


def test_direct_product_counts():
    p = torus_presentation("")
    assert len(quot_enumerate_homs(p, cyclic_group(2))) == 2**4


@pytest.mark.parametrize("word", ["ab", "u", "aBu", "v", "uv"])
def test_against_bruteforce(word):
    p = torus_presentation(word)
    for T in (symmetric_group(3), cyclic_group(4)):
        fast = quot_enumerate_homs(p, T)
        assert fast == brute_homs(p, T)
        for h in fast:
            assert relators_hold(p, T, h)


def test_non_torus_presentation():
    # <a, b | a^2, b^3, (ab)^3> is A4; no stable letter
    p = GroupPresentation(("a", "b"), ((1, 1), (2, 2, 2), (1, 2, 1, 2, 1, 2)))
    T = symmetric_group(4)
    assert quot_enumerate_homs(p, T) == brute_homs(p, T)


def test_orbit_count_matches_division():
    # Aut(T) acts freely on surjections, so the orbit count equals surjections / |Aut|
    for word in ["ab", "aab", "u"]:
        p = torus_presentation(word)
        for T in (symmetric_group(3), quaternion_group(), symmetric_group(4)):
            surj = len(quot_enumerate_homs(p, T, surjective_only=True))
            assert surj % T.automorphisms.shape[0] == 0
            assert count_surjections_up_to_aut(p, T) == surj // T.automorphisms.shape[0]


def test_budget_error():
    with pytest.raises(QuotientBudgetError):
        quot_enumerate_homs(F3, symmetric_group(4), budget=100)


def test_fingerprint_invariant_under_conjugation_and_inversion():
    cat = load_catalog()
    targets = ["C2", "C6", "S3", "S4", "Q8", "A4", "D5"]
    base = quot_fingerprint(torus_presentation("aabab"), cat, targets=targets)
    conj = quot_fingerprint(torus_presentation("bu" + "aabab" + invert_monodromy("bu")), cat, targets=targets)
    inv = quot_fingerprint(torus_presentation(invert_monodromy("aabab")), cat, targets=targets)
    assert base.counts == conj.counts == inv.counts


def _substitute(p, g, h):
    """Tietze-style change of generators: replace generator g by g*h (h != g)."""
    rels = []
    for r in p.relators:
        new = []
        for c in r:
            if c == g:
                new += [g, -h]
            elif c == -g:
                new += [h, -g]
            else:
                new.append(c)
        rels.append(tuple(new))
    return GroupPresentation(p.generators, tuple(rels))


def test_fingerprint_invariant_under_generator_substitution():
    cat = load_catalog()
    targets = ["C4", "S3", "A4", "Q8", "D4"]
    rng = random.Random(1)
    for word in ["ab", "aBu"]:
        p = torus_presentation(word)
        q = _substitute(p, 1, rng.choice([2, 3]))
        assert quot_fingerprint(p, cat, targets=targets).counts == quot_fingerprint(q, cat, targets=targets).counts


def test_fingerprint_json_roundtrip():
    fp = QuotientFingerprint("cat-1", {"C2": 3, "S3": "unknown"})
    assert QuotientFingerprint.from_json(fp.to_json()) == fp
    assert fp.differences(QuotientFingerprint("cat-1", {"C2": 4, "S3": 1})) == ["C2"]


def test_fingerprint_separates_distinct_pairs():
    cat = load_catalog()
    fa = quot_fingerprint(torus_presentation("ab"), cat, targets=["S3", "S4"])
    fb = quot_fingerprint(torus_presentation("abab"), cat, targets=["S3", "S4"])
    assert fa.differences(fb)


def test_unknown_marker_on_budget():
    cat = load_catalog()
    fp = quot_fingerprint(torus_presentation("ab"), cat, budget=50, targets=["C2", "PSL27"])
    assert fp.counts["PSL27"] == "unknown"


def test_induced_automorphism_in_presentation():
    alpha = fg_induced("aB")
    p = torus_presentation("aB")
    assert len(p.relators) == len(alpha.images)
