"""Command-line front end.

Exit codes: 0 for a definite answer, 1 when an input fails a precondition
(for example a monodromy that is not pseudo-Anosov), 2 for malformed input,
3 when a search budget runs out.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from .fgroup import (
    EnumerationBudgetError,
    FreeWordSyntaxError,
    fg_abelianization,
    fg_fixed_classes,
    fg_induced,
    fg_peripheral_permutation,
    peripheral_classes,
    unoriented,
)
from .mcg import (
    WordSyntaxError,
    mcg_conjugate_up_to_inversion,
    mcg_eval,
    mcg_is_pseudo_anosov,
    mcg_mirror,
    mcg_puncture_permutation,
    mcg_trace,
    parse_monodromy,
)
from .pslz import PslSyntaxError, PslWord
from .quot.groups import load_catalog
from .quot.homs import QuotientBudgetError, QuotientFingerprint, quot_fingerprint
from .quot.witness import GROUP_LEVEL_KINDS, PreconditionError, quot_separating_witness
from .torus import torus_homology, torus_presentation

CACHE_ENV = "S04BUNDLES_CACHE"
SCHEMA = 1

EXIT_OK, EXIT_PRECONDITION, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    words: list[str]
    length: int = 8
    powers: int = 6
    index: int = 2
    catalog: Optional[str] = None
    budget_secs: float = 120.0
    json: bool = False
    stable: bool = False
    cache: Optional[str] = None

    def __post_init__(self) -> None:
        for name in ("length", "powers", "index", "budget_secs"):
            if getattr(self, name) <= 0:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")

    def cache_dir(self) -> Path:
        if self.cache:
            return Path(self.cache)
        if os.environ.get(CACHE_ENV):
            return Path(os.environ[CACHE_ENV])
        return Path.home() / ".cache" / "s04bundles"


@dataclass
class Verdict:
    verdict: str  # HOMEOMORPHIC, DISTINCT, INCONCLUSIVE, NOT_PSEUDO_ANOSOV
    detail: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return {
            "HOMEOMORPHIC": EXIT_OK,
            "DISTINCT": EXIT_OK,
            "INCONCLUSIVE": EXIT_BUDGET,
            "NOT_PSEUDO_ANOSOV": EXIT_PRECONDITION,
        }[self.verdict]


def cli_distinguish(w1: str, w2: str, config: Optional[RunConfig] = None) -> Verdict:
    """Decide whether the bundles with monodromies w1, w2 are homeomorphic.

    HOMEOMORPHIC comes from a conjugacy (up to inversion, possibly after the
    orientation-reversing mirror), verified by multiplication.  DISTINCT is
    only returned with a certificate that separates the bundle groups.
    """
    config = config or RunConfig("distinguish", [w1, w2])
    g, h = mcg_eval(w1), mcg_eval(w2)
    bad = [w or "1" for w, x in ((w1, g), (w2, h)) if not mcg_is_pseudo_anosov(x)]
    if bad:
        return Verdict("NOT_PSEUDO_ANOSOV", {"words": bad})
    found = mcg_conjugate_up_to_inversion(g, h)
    if found is not None:
        sign, xi = found
        return Verdict("HOMEOMORPHIC", {"sign": sign, "witness": str(xi), "orientation": "preserving"})
    found = mcg_conjugate_up_to_inversion(g, mcg_mirror(h))
    if found is not None:
        sign, xi = found
        return Verdict("HOMEOMORPHIC", {"sign": sign, "witness": str(xi), "orientation": "reversing"})
    catalog = load_catalog(config.catalog)
    result = quot_separating_witness(
        w1, w2, budget_secs=config.budget_secs, kinds=GROUP_LEVEL_KINDS, catalog=catalog
    )
    if result.certificate is not None:
        return Verdict("DISTINCT", {"certificate": result.certificate})
    return Verdict(
        "INCONCLUSIVE",
        {"status": result.status, "budget_secs": config.budget_secs, "skipped": result.skipped},
    )


# --------------------------------------------------------------------------
# spectrum cache


def spectrum_cache_key(word: str, catalog_id: str) -> str:
    text = torus_presentation(word).canonical_text() + "\n" + catalog_id
    return hashlib.sha256(text.encode()).hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def spectrum(word: str, config: RunConfig) -> tuple[QuotientFingerprint, bool]:
    """Fingerprint of the bundle group, read from or written to the cache. Returns (fp, hit)."""
    catalog = load_catalog(config.catalog)
    path = config.cache_dir() / f"{spectrum_cache_key(word, catalog.catalog_id)}.json"
    if path.exists():
        return QuotientFingerprint.from_json(path.read_text()), True
    deadline = time.monotonic() + config.budget_secs
    fp = quot_fingerprint(torus_presentation(word), catalog, budget=50_000_000, deadline=deadline)
    if all(isinstance(c, int) for c in fp.counts.values()):
        _atomic_write(path, fp.to_json())
    return fp, False


# --------------------------------------------------------------------------
# subcommands


def _out(config: RunConfig, payload: dict, lines: Sequence[str]) -> None:
    if config.json:
        doc = {"schema": SCHEMA, "command": config.command, **payload}
        if not config.stable:
            doc["timestamp"] = datetime.now(timezone.utc).isoformat()
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _cmd_nf(config: RunConfig) -> int:
    word = config.words[0]
    if set(word) <= set("srR1 ") and word.strip():
        nf = str(PslWord.parse(word))
    else:
        nf = str(mcg_eval(word))
    _out(config, {"input": word, "normal_form": nf}, [nf])
    return EXIT_OK


def _cmd_conj(config: RunConfig) -> int:
    g, h = (mcg_eval(w) for w in config.words)
    found = mcg_conjugate_up_to_inversion(g, h)
    if found is None:
        _out(config, {"conjugate": False}, ["not conjugate up to inversion"])
    else:
        sign, xi = found
        s = "+" if sign > 0 else "-"
        _out(config, {"conjugate": True, "sign": sign, "witness": str(xi)}, [f"conjugate ({s}) by {xi}"])
    return EXIT_OK


def _cmd_pa(config: RunConfig) -> int:
    g = mcg_eval(config.words[0])
    pa = mcg_is_pseudo_anosov(g)
    perm = mcg_puncture_permutation(g)
    _out(
        config,
        {"class": str(g), "trace": mcg_trace(g), "pseudo_anosov": pa, "punctures": list(perm)},
        [f"class {g}", f"|trace| {mcg_trace(g)}", f"pseudo-Anosov {'yes' if pa else 'no'}",
         f"punctures {' '.join(map(str, perm))}"],
    )
    return EXIT_OK


def _cmd_aut(config: RunConfig) -> int:
    alpha = fg_induced(config.words[0])
    perm = fg_peripheral_permutation(alpha)
    ab = fg_abelianization(alpha)
    images = {g: (w or "1") for g, w in zip("xyz", alpha.images)}
    lines = [f"{g} -> {w}" for g, w in images.items()]
    lines.append("peripheral " + " ".join(f"{j}{'+' if s > 0 else '-'}" for j, s in (perm or [])))
    lines.append("homology " + "; ".join(" ".join(map(str, row)) for row in ab))
    _out(config, {"images": images, "peripheral": perm, "homology_matrix": ab}, lines)
    return EXIT_OK


def _cmd_fixed(config: RunConfig) -> int:
    alpha = fg_induced(config.words[0])
    classes = fg_fixed_classes(alpha, config.length, config.powers)
    periph = set(peripheral_classes())
    extra = [c for c in classes if c not in periph]
    summary = {
        "classes": classes,
        "oriented": len(classes),
        "unoriented": len(unoriented(classes)),
        "non_peripheral": len(extra),
    }
    lines = list(classes) + [
        f"# {len(classes)} oriented, {len(unoriented(classes))} unoriented, {len(extra)} non-peripheral"
    ]
    _out(config, summary, lines)
    return EXIT_OK


def _cmd_torus(config: RunConfig) -> int:
    p = torus_presentation(config.words[0])
    h = torus_homology(p)
    _out(config, {"presentation": str(p), "homology": str(h)}, [str(p), str(h)])
    return EXIT_OK


def _cmd_spectrum(config: RunConfig) -> int:
    fp, _ = spectrum(config.words[0], config)
    lines = [f"catalog {fp.catalog_id}"] + [f"{k} {v}" for k, v in fp.counts.items()]
    _out(config, {"catalog_id": fp.catalog_id, "counts": fp.counts}, lines)
    unknown = any(not isinstance(c, int) for c in fp.counts.values())
    return EXIT_BUDGET if unknown else EXIT_OK


def _cmd_witness(config: RunConfig) -> int:
    w1, w2 = config.words
    try:
        result = quot_separating_witness(
            w1, w2, budget_secs=config.budget_secs, catalog=load_catalog(config.catalog),
            kernels=[f"K{i}" for i in range(1, min(config.index, 3) + 1)] + ["C3", "C4", "D4", "Q8", "Heis3"],
        )
    except PreconditionError as exc:
        _out(config, {"rejected": str(exc)}, [f"rejected: {exc}"])
        return EXIT_PRECONDITION
    if result.certificate is None:
        _out(config, {"status": result.status, "skipped": result.skipped},
             [f"no witness: {result.status}"])
        return EXIT_BUDGET
    _out(config, {"status": result.status, "certificate": result.certificate},
         [json.dumps(result.certificate, sort_keys=True)])
    return EXIT_OK


def _cmd_distinguish(config: RunConfig) -> int:
    v = cli_distinguish(config.words[0], config.words[1], config)
    lines = [v.verdict] + [f"{k}: {json.dumps(val, sort_keys=True)}" for k, val in v.detail.items()]
    _out(config, {"verdict": v.verdict, **v.detail}, lines)
    return v.exit_code


COMMANDS = {
    "nf": (_cmd_nf, 1, "normal form of a PSL(2,Z) word or a monodromy"),
    "conj": (_cmd_conj, 2, "conjugacy up to inversion in Mod(S_{0,4})"),
    "pa": (_cmd_pa, 1, "trace, pseudo-Anosov test and puncture permutation"),
    "aut": (_cmd_aut, 1, "induced automorphism of F3"),
    "fixed": (_cmd_fixed, 1, "primitive conjugacy classes fixed by a power"),
    "torus": (_cmd_torus, 1, "mapping-torus presentation and first homology"),
    "spectrum": (_cmd_spectrum, 1, "finite-quotient fingerprint (cached)"),
    "witness": (_cmd_witness, 2, "finite quotient separating two monodromies"),
    "distinguish": (_cmd_distinguish, 2, "decide whether two bundles are homeomorphic"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--len", dest="length", type=int, default=8)
    common.add_argument("--powers", type=int, default=6)
    common.add_argument("--index", type=int, default=2)
    common.add_argument("--catalog", metavar="PATH")
    common.add_argument("--budget-secs", type=float, default=120.0)
    common.add_argument("--json", action="store_true")
    common.add_argument("--stable", action="store_true", help="omit timestamps from JSON")
    common.add_argument("--cache", metavar="DIR", help=f"cache directory (default ${CACHE_ENV})")
    parser = argparse.ArgumentParser(prog="s04bundles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, nargs, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("words", nargs=nargs, metavar="WORD")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        config = RunConfig(
            args.command, list(args.words), args.length, args.powers, args.index,
            args.catalog, args.budget_secs, args.json, args.stable, args.cache,
        )
        for w in config.words if args.command != "nf" else []:
            parse_monodromy(w)
        handler = COMMANDS[args.command][0]
        return handler(config)
    except (WordSyntaxError, PslSyntaxError, FreeWordSyntaxError, ValueError) as exc:
        if isinstance(exc, PreconditionError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (QuotientBudgetError, EnumerationBudgetError) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
