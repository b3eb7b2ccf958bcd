"""Search for a finite quotient separating two monodromies, with replayable certificates.

Certificate kinds:

* ``homology``: the mapping-torus groups have different abelianizations.
* ``fingerprint``: different numbers of surjections (up to target
  automorphisms) onto one catalog group.
* ``congruence``: the monodromies have different outer orders on some
  characteristic quotient F3/K.

The first two distinguish the bundle groups themselves.  The third only
shows the monodromies are not conjugate up to inversion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..mcg import mcg_conjugate_up_to_inversion, mcg_eval, mcg_is_pseudo_anosov
from ..torus import monodromy_homology, torus_presentation
from .congruence import default_kernels, quot_congruence_image
from .groups import Catalog, load_catalog
from .homs import QuotientBudgetError, count_surjections_up_to_aut

GROUP_LEVEL_KINDS = ("homology", "fingerprint")
ALL_KINDS = ("homology", "fingerprint", "congruence")


class PreconditionError(ValueError):
    pass


@dataclass
class WitnessResult:
    certificate: Optional[dict]
    status: str  # "found" or "budget exhausted"
    skipped: list[str] = field(default_factory=list)


def _homology_cert(w1: str, w2: str) -> Optional[dict]:
    h1, h2 = monodromy_homology(w1), monodromy_homology(w2)
    if h1 != h2:
        return {"kind": "homology", "invariants": [str(h1), str(h2)]}
    return None


def check_preconditions(w1: str, w2: str) -> None:
    g, h = mcg_eval(w1), mcg_eval(w2)
    for w, x in ((w1, g), (w2, h)):
        if not mcg_is_pseudo_anosov(x):
            raise PreconditionError(f"{w or '1'} is not pseudo-Anosov")
    if mcg_conjugate_up_to_inversion(g, h) is not None:
        raise PreconditionError("the monodromies are conjugate up to inversion")


def quot_separating_witness(
    w1: str,
    w2: str,
    budget_secs: float = 60.0,
    kinds: Sequence[str] = ALL_KINDS,
    catalog: Optional[Catalog] = None,
    kernels: Optional[Sequence[str]] = None,
    work_per_target: int = 20_000_000,
) -> WitnessResult:
    """First separating quotient found, cheapest kinds first.

    Absence of a certificate within the budget proves nothing.
    """
    check_preconditions(w1, w2)
    catalog = catalog or load_catalog()
    deadline = time.monotonic() + budget_secs
    skipped: list[str] = []

    if "homology" in kinds:
        cert = _homology_cert(w1, w2)
        if cert:
            return WitnessResult(cert, "found")

    if "fingerprint" in kinds:
        p1, p2 = torus_presentation(w1), torus_presentation(w2)
        for name, grp in catalog.groups():
            try:
                c1 = count_surjections_up_to_aut(p1, grp, work_per_target, deadline)
                c2 = count_surjections_up_to_aut(p2, grp, work_per_target, deadline)
            except QuotientBudgetError:
                skipped.append(name)
                if time.monotonic() > deadline:
                    return WitnessResult(None, "budget exhausted", skipped)
                continue
            if c1 != c2:
                cert = {
                    "kind": "fingerprint",
                    "catalog_id": catalog.catalog_id,
                    "target": name,
                    "counts": [c1, c2],
                }
                return WitnessResult(cert, "found", skipped)

    if "congruence" in kinds:
        for name in kernels or default_kernels():
            if time.monotonic() > deadline:
                return WitnessResult(None, "budget exhausted", skipped)
            try:
                o1 = quot_congruence_image(w1, name).outer_order
                o2 = quot_congruence_image(w2, name).outer_order
            except QuotientBudgetError:
                skipped.append(name)
                continue
            if o1 != o2:
                return WitnessResult({"kind": "congruence", "kernel": name, "orders": [o1, o2]}, "found", skipped)

    return WitnessResult(None, "budget exhausted", skipped)


def replay_certificate(w1: str, w2: str, cert: dict, catalog: Optional[Catalog] = None) -> bool:
    """Recompute the certified quantities and confirm they match and differ."""
    kind = cert.get("kind")
    if kind == "homology":
        got = [str(monodromy_homology(w1)), str(monodromy_homology(w2))]
        return got == cert["invariants"] and got[0] != got[1]
    if kind == "fingerprint":
        catalog = catalog or load_catalog()
        groups = dict(catalog.groups())
        if catalog.catalog_id != cert["catalog_id"] or cert["target"] not in groups:
            return False
        grp = groups[cert["target"]]
        got = [count_surjections_up_to_aut(torus_presentation(w), grp, 10**9) for w in (w1, w2)]
        return got == cert["counts"] and got[0] != got[1]
    if kind == "congruence":
        got = [quot_congruence_image(w, cert["kernel"]).outer_order for w in (w1, w2)]
        return got == cert["orders"] and got[0] != got[1]
    raise ValueError(f"unknown certificate kind {kind!r}")
