import numpy as np
import pytest

from s04bundles.quot.groups import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    heisenberg_group,
    load_catalog,
    psl2_group,
    quaternion_group,
    symmetric_group,
)

AUT_ORDERS = {
    "C2": 1, "C3": 2, "C4": 2, "C5": 4, "C6": 2, "C7": 6, "C8": 4, "C9": 6, "C10": 4, "C11": 10, "C12": 4,
    "V4": 6, "E8": 168, "S3": 6, "S4": 24, "A4": 24, "A5": 120, "D4": 8, "D5": 20, "D6": 12, "Q8": 24,
    "PSL27": 336,
}
CLASS_COUNTS = {"S3": 3, "S4": 5, "A4": 4, "A5": 5, "D4": 5, "D5": 4, "D6": 6, "Q8": 5, "PSL27": 6}


def test_group_axioms():
    for grp in [symmetric_group(4), quaternion_group(), psl2_group(7), heisenberg_group(3)]:
        t = grp.table
        n = grp.order
        assert (t[0] == np.arange(n)).all() and (t[:, 0] == np.arange(n)).all()
        assert (t[np.arange(n), grp.inverse] == 0).all()
        a, b, c = np.random.default_rng(0).integers(0, n, size=(3, 500))
        assert (t[t[a, b], c] == t[a, t[b, c]]).all()
        for row in t:
            assert len(set(row.tolist())) == n


def test_orders():
    assert [g.order for g in (cyclic_group(12), symmetric_group(4), alternating_group(5), dihedral_group(6))] == [
        12, 24, 60, 12
    ]
    assert psl2_group(7).order == 168
    assert heisenberg_group(3).order == 27
    assert sorted(set(quaternion_group().element_orders.tolist())) == [1, 2, 4]


def test_catalog_metadata():
    cat = load_catalog()
    names = [n for n, _ in cat.groups()]
    assert names[0] == "C2" and names[-1] == "PSL27" and len(names) == 22
    for name, grp in cat.groups():
        assert grp.automorphisms.shape[0] == AUT_ORDERS[name], name
        if name in CLASS_COUNTS:
            assert grp.class_count == CLASS_COUNTS[name]
        auts = grp.automorphisms
        assert (auts[0] == np.arange(grp.order)).all()
        for phi in auts[:10]:
            assert grp.is_homomorphism(phi, grp)


def test_catalog_file_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("C2 cyclic 2\nX mystery 3\n")
    with pytest.raises(ValueError):
        load_catalog(bad)
    good = tmp_path / "small.txt"
    good.write_text("# two targets\nC2 cyclic 2\nS3 symmetric 3\n")
    cat = load_catalog(good)
    assert cat.catalog_id.startswith("small-")
    assert [n for n, _ in cat.groups()] == ["C2", "S3"]


def test_conjugation_table():
    g = symmetric_group(3)
    for x in range(6):
        for t in range(6):
            assert g.conj[x, t] == g.table[g.table[t, x], g.inverse[t]]
