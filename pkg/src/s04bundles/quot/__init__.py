"""Finite-quotient engine: homomorphism search, low-index subgroups, characteristic quotients."""

from .congruence import (
    CharacteristicKernelData,
    CongruenceImage,
    quot_characteristic_quotient,
    quot_congruence_image,
    verbal_quotient,
)
from .groups import FiniteGroupTable, load_catalog
from .homs import (
    QuotientBudgetError,
    QuotientFingerprint,
    count_surjections_up_to_aut,
    quot_enumerate_homs,
    quot_fingerprint,
)
from .lowindex import CosetTable, quot_low_index_subgroups
from .witness import quot_separating_witness, replay_certificate

__all__ = [
    "CharacteristicKernelData",
    "CongruenceImage",
    "CosetTable",
    "FiniteGroupTable",
    "QuotientBudgetError",
    "QuotientFingerprint",
    "count_surjections_up_to_aut",
    "load_catalog",
    "quot_characteristic_quotient",
    "quot_congruence_image",
    "quot_enumerate_homs",
    "quot_fingerprint",
    "quot_low_index_subgroups",
    "quot_separating_witness",
    "replay_certificate",
    "verbal_quotient",
]
