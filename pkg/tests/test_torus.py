import random

import pytest

from oracles import elementary_divisors, mapping_torus_homology
from s04bundles.mcg import WordSyntaxError, invert_monodromy
from s04bundles.torus import (
    AbelianInvariants,
    GroupPresentation,
    action_on_homology,
    monodromy_homology,
    smith_diagonal,
    torus_fibered_norm,
    torus_homology,
    torus_presentation,
)


def test_identity_presentation():
    p = torus_presentation("")
    assert str(p) == "< x1, x2, x3, t | t*x1*t^-1*x1^-1, t*x2*t^-1*x2^-1, t*x3*t^-1*x3^-1 >"
    assert str(torus_homology(p)) == "Z^4"


def test_relator_shape():
    for w in ["a", "ab", "uBv", "aaaab"]:
        p = torus_presentation(w)
        assert len(p.relators) == 3
        assert p.generators == ("x1", "x2", "x3", "t")
    p = torus_presentation("a")
    # x -> xyxYX under the twist: t x1 t^-1 (x1 x2 x1 x2^-1 x1^-1)^-1
    assert p.relators[0] == (4, 1, -4, 1, 2, -1, -2, -1)
    assert p.relators[2] == (4, 3, -4, -3)


def test_parse_errors_propagate():
    with pytest.raises(WordSyntaxError):
        torus_presentation("aq")


def test_invariants_format_and_validation():
    assert str(AbelianInvariants(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert str(AbelianInvariants(1, ())) == "Z"
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))
    with pytest.raises(ValueError):
        GroupPresentation((), ())


def test_smith_against_minors_oracle():
    rng = random.Random(1)
    for _ in range(100):
        m = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)]
        d = smith_diagonal(m)
        assert d == elementary_divisors(m)
        assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_smith_rectangular():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_diagonal([[0, 0], [0, 0]]) == []
    assert smith_diagonal([[6, 10, 15]]) == [1]


def test_homology_examples():
    assert str(monodromy_homology("ab")) == "Z^4"
    assert str(monodromy_homology("u")) == "Z^2 + Z/2"
    for w in ["", "a", "uv", "abuAv"]:
        assert monodromy_homology(w).rank >= 1


def test_homology_matches_cokernel_oracle():
    rng = random.Random(2)
    for _ in range(30):
        w = "".join(rng.choice("aAbBuv") for _ in range(rng.randint(0, 8)))
        rank, torsion = mapping_torus_homology(action_on_homology(w))
        h = monodromy_homology(w)
        assert (h.rank, h.torsion) == (rank, torsion)


def test_homology_conjugation_and_inversion_invariant():
    rng = random.Random(3)
    for _ in range(30):
        w = "".join(rng.choice("aAbBuv") for _ in range(rng.randint(1, 6)))
        x = "".join(rng.choice("aAbBuv") for _ in range(rng.randint(1, 4)))
        h = monodromy_homology(w)
        assert monodromy_homology(x + w + invert_monodromy(x)) == h
        assert monodromy_homology(invert_monodromy(w)) == h


def test_fibered_norm():
    assert torus_fibered_norm() == 2
    assert torus_fibered_norm(punctures=4, genus=0) == -(2 - 0 - 4)
    with pytest.raises(ValueError):
        torus_fibered_norm(punctures=2)
