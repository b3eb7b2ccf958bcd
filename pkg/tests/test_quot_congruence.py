from math import gcd

import numpy as np
import pytest

from s04bundles.fgroup import LETTER_AUTOMORPHISMS, FreeAutomorphism
from s04bundles.quot.congruence import (
    factors_through,
    induced_map,
    kernel_by_name,
    order_identity_holds,
    quot_characteristic_quotient,
    quot_congruence_image,
    verbal_quotient,
)
from s04bundles.quot.homs import QuotientBudgetError

# Nielsen generators of Aut(F3)
NIELSEN = [
    FreeAutomorphism(("y", "x", "z")),
    FreeAutomorphism(("y", "z", "x")),
    FreeAutomorphism(("X", "y", "z")),
    FreeAutomorphism(("xy", "y", "z")),
]


def test_orders():
    assert quot_characteristic_quotient(1).order == 1
    assert quot_characteristic_quotient(2).order == 8
    assert quot_characteristic_quotient(3).order == 8 * 3**17
    assert verbal_quotient("C3").order == 27
    assert verbal_quotient("Heis3").order == 729


def test_k2_is_elementary_abelian():
    Q = quot_characteristic_quotient(2).quotient
    assert set(Q.element_orders.tolist()) == {1, 2}
    assert (Q.table == Q.table.T).all()


def test_generator_orders_divide_quotient_order():
    for name in ["K2", "C4", "D4", "Q8"]:
        K = kernel_by_name(name)
        for g in K.quotient.gens:
            assert K.order % int(K.quotient.element_orders[g]) == 0


@pytest.mark.parametrize("name", ["K2", "C3", "D4", "Q8", "Heis3"])
def test_kernels_characteristic(name):
    K = kernel_by_name(name)
    for alpha in NIELSEN + list(LETTER_AUTOMORPHISMS.values()):
        phi = induced_map(alpha, K)  # raises unless a well-defined automorphism
        assert len(np.unique(phi)) == K.order


def test_tower_nested():
    K1, K2, K3 = (quot_characteristic_quotient(i) for i in (1, 2, 3))
    assert factors_through(K1, K2)
    assert factors_through(K2, K3)
    assert not factors_through(K3, K2)


def test_identity_image():
    for name in ["K1", "K2", "D4", "Heis3"]:
        img = quot_congruence_image("", name)
        assert img.outer_order == 1 and img.aut_order == 1


def test_lagrange():
    K = kernel_by_name("K2")
    aut = K.quotient.automorphisms.shape[0]
    assert aut == 168
    for w in ["u", "v", "uv", "aub"]:
        assert aut % quot_congruence_image(w, K).aut_order == 0


def test_outer_homomorphism():
    from s04bundles.quot.congruence import inner_conjugator

    for name in ["D4", "Q8", "Heis3"]:
        K = kernel_by_name(name)
        for w1, w2 in [("ab", "uB"), ("aab", "vA"), ("u", "v")]:
            from s04bundles.fgroup import fg_induced

            p12 = induced_map(fg_induced(w1 + w2), K)
            p1, p2 = induced_map(fg_induced(w1), K), induced_map(fg_induced(w2), K)
            composite = p1[p2]
            # discrepancy composite^-1 o p12 must be inner
            inv = np.empty_like(composite)
            inv[composite] = np.arange(len(composite))
            assert inner_conjugator(inv[p12], K.quotient) is not None


def test_power_order_identity():
    for name in ["D4", "Heis3"]:
        for w in ["uab", "aBv"]:
            o = quot_congruence_image(w, name).outer_order
            for m in range(1, 7):
                assert order_identity_holds(w, name, m)
                if o % m == 0:
                    assert quot_congruence_image(w * m, name).outer_order == o // m
                else:
                    assert quot_congruence_image(w * m, name).outer_order == o // gcd(o, m)


def test_k3_is_over_budget_for_exact_work():
    with pytest.raises(QuotientBudgetError):
        quot_congruence_image("ab", "K3")
    with pytest.raises(QuotientBudgetError):
        quot_characteristic_quotient(4)


def test_word_map_matches_direct_induction():
    from s04bundles.fgroup import fg_induced
    from s04bundles.quot.congruence import word_map

    for name in ["K2", "D4", "Heis3"]:
        K = kernel_by_name(name)
        for w in ["", "a", "ab", "uBva", "aabAb"]:
            assert np.array_equal(word_map(w, K), induced_map(fg_induced(w), K))
