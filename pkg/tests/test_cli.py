import json

import pytest

from s04bundles.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PRECONDITION,
    RunConfig,
    cli_distinguish,
    main,
    spectrum,
    spectrum_cache_key,
)
from s04bundles.quot.groups import load_catalog


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nf(capsys):
    assert run(capsys, "nf", "ss")[:2] == (EXIT_OK, "1\n")
    assert run(capsys, "nf", "rrr")[:2] == (EXIT_OK, "1\n")
    code, out, _ = run(capsys, "nf", "uu")
    assert code == EXIT_OK and out.strip() == "1|00"


def test_torus_identity(capsys):
    code, out, _ = run(capsys, "torus", "")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "Z^4"


def test_fixed_summary(capsys):
    code, out, _ = run(capsys, "fixed", "ab", "--len", "6")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "# 8 oriented, 4 unoriented, 0 non-peripheral"


def test_conj(capsys):
    code, out, _ = run(capsys, "conj", "ab", "ba")
    assert code == EXIT_OK and out.startswith("conjugate (+)")
    code, out, _ = run(capsys, "conj", "a", "b")
    assert out.startswith("conjugate (-)")
    code, out, _ = run(capsys, "conj", "ab", "aab")
    assert out.strip() == "not conjugate up to inversion"


def test_pa(capsys):
    code, out, _ = run(capsys, "pa", "ab", "--json", "--stable")
    doc = json.loads(out)
    assert doc["pseudo_anosov"] is True and doc["trace"] == 6


@pytest.mark.parametrize(
    "argv, code",
    [
        (["nf", "aq"], EXIT_PARSE),
        (["torus", "ab("], EXIT_PARSE),
        (["nosuch", "ab"], EXIT_PARSE),
        (["conj", "ab"], EXIT_PARSE),
        (["fixed", "ab", "--len", "0"], EXIT_PARSE),
        (["distinguish", "a", "ab"], EXIT_PRECONDITION),
        (["witness", "ab", "ba"], EXIT_PRECONDITION),
        (["fixed", "ab", "--len", "30"], EXIT_BUDGET),
        (["distinguish", "ab", "ba"], EXIT_OK),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_json_schema_and_stable(capsys):
    _, out1, _ = run(capsys, "torus", "aB", "--json", "--stable")
    _, out2, _ = run(capsys, "torus", "aB", "--json", "--stable")
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["schema"] == 1 and doc["command"] == "torus" and "timestamp" not in doc
    _, out3, _ = run(capsys, "torus", "aB", "--json")
    assert "timestamp" in json.loads(out3)


def test_distinguish_verdicts():
    v = cli_distinguish("aab", "abb")
    assert v.verdict == "HOMEOMORPHIC" and v.detail["sign"] == -1
    v = cli_distinguish("aabbbabb", "AABBBABB")
    assert v.verdict == "HOMEOMORPHIC" and v.detail["orientation"] == "reversing"
    v = cli_distinguish("ab", "uab")
    assert v.verdict == "DISTINCT" and v.detail["certificate"]["kind"] == "homology"
    assert cli_distinguish("a", "ab").verdict == "NOT_PSEUDO_ANOSOV"


def test_distinguish_inconclusive_on_tiny_budget(tmp_path):
    cat = tmp_path / "c2.txt"
    cat.write_text("C2 cyclic 2\n")
    v = cli_distinguish("ab", "aab", RunConfig("distinguish", ["ab", "aab"], catalog=str(cat)))
    assert v.verdict == "INCONCLUSIVE" and v.exit_code == EXIT_BUDGET


def test_spectrum_cache(tmp_path, capsys):
    argv = ["spectrum", "aabab", "--json", "--stable", "--cache", str(tmp_path)]
    code1, out1, _ = run(capsys, *argv)
    files = list(tmp_path.glob("*.json"))
    assert code1 == EXIT_OK and len(files) == 1
    key = spectrum_cache_key("aabab", load_catalog().catalog_id)
    assert files[0].name == key + ".json"
    code2, out2, _ = run(capsys, *argv)
    assert (code2, out2) == (code1, out1)
    files[0].unlink()
    code3, out3, _ = run(capsys, *argv)
    assert out3 == out1


def test_spectrum_hit_flag_and_env(tmp_path, monkeypatch):
    monkeypatch.setenv("S04BUNDLES_CACHE", str(tmp_path / "env"))
    cfg = RunConfig("spectrum", ["ab"])
    fp1, hit1 = spectrum("ab", cfg)
    fp2, hit2 = spectrum("ab", cfg)
    assert (hit1, hit2) == (False, True) and fp1 == fp2
    assert len(list((tmp_path / "env").glob("*.json"))) == 1


def test_witness_prints_certificate(capsys):
    code, out, _ = run(capsys, "witness", "ab", "aab", "--json", "--stable")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["certificate"]["kind"] in ("homology", "fingerprint")
