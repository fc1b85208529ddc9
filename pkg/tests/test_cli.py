# -*- coding: utf-8 -*-

import json

import pytest
from click.testing import CliRunner

from sporcalc.cli import cli
from sporcalc.config import CONFIG_ENV


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    monkeypatch.delenv(CONFIG_ENV, raising=False)
    monkeypatch.delenv("SPORCALC_CAP", raising=False)
    monkeypatch.setenv("HOME", str(tmp_path))
    return tmp_path


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, **kwargs):
        return runner.invoke(cli, list(args), **kwargs)

    return invoke


def doc(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_classify_power_case(run):
    out = doc(run("classify", "--non-orientable", "3", "--relator", "a b", "--json"))
    assert out["case"] == "power(ii)"
    assert out["chi"] == "-1/2"
    assert out["l2"] == [0, "1/2", 0]
    assert out["m_double_prime"] == 2


def test_classify_annotations_cite_their_source(run):
    out = doc(run("classify", "--non-orientable", "3", "--relator", "a b", "--json"))
    assert out["annotations"]
    for note in out["annotations"]:
        assert sorted(note) == ["claim", "paper_ref"]
        assert note["paper_ref"].startswith('"')
    refs = {n["claim"]: n["paper_ref"] for n in out["annotations"]}
    assert "C∞ ∗ C2" in refs["G ≅ C∞ ∗ C_2"]


def test_classify_hempel_case(run):
    out = doc(run("classify", "--non-orientable", "3", "--relator", "a b c", "--json"))
    assert out["case"] == "hempel"
    assert out["chi"] == "0"
    assert out["l2"] == [0, 0, 0]


def test_classify_from_file(run, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("< a, b, c | a^2 b^2 c^2, a b c >", encoding="utf-8")
    out = doc(run("classify", str(path), "--json"))
    assert out["case"] == "hempel"


def test_classify_input_already_in_commutator_form(run):
    out = doc(run("classify", "--presentation", "< x, y, z1 | [x,y] z1^2, z1 y x y^-1 >", "--json"))
    assert out["case"] == "hempel"
    assert out["relator"] == "x@1 z1@0"


def test_classify_trace(run):
    out = doc(run("classify", "--non-orientable", "3", "--relator", "a b c", "--trace", "--json"))
    assert out["trace"][0]["action"] == "lift"
    assert "certificate" in out


def test_text_output(run):
    result = run("euler", "--orientable", "2")
    assert result.exit_code == 0
    assert result.stdout == "chi: -2\n"


def test_l2(run):
    out = doc(run("l2", "--non-orientable", "4", "--json"))
    assert out == {"chi": "-2", "l2": [0, 2, 0]}


def test_normalize(run):
    out = doc(run("normalize", "--non-orientable", "3", "--relator", "a b", "--json"))
    assert out["result"] == {"kind": "power", "m": 1}
    assert out["form"]["r"] == "y"


def test_runs_are_byte_identical(run):
    args = ("classify", "--non-orientable", "5", "--relator", "a b^-1 c d", "--json")
    first, second = run(*args), run(*args)
    assert first.exit_code == 0
    assert first.stdout == second.stdout


def test_root(run):
    assert doc(run("root", "--word", "a b a b", "--json")) == {"log": 2, "root": "a b"}
    assert doc(run("root", "--word", "1", "--json")) == {"log": "inf", "root": ""}


def test_fox(run):
    out = doc(run("fox", "--non-orientable", "3", "--relator", "a b", "--json"))
    assert out["generators"] == ["a", "b", "c"]
    assert len(out["relators"]) == 2
    assert all(r["fundamental_identity"] for r in out["relators"])
    assert out["relators"][1]["derivatives"]["b"] == [["a", 1]]


def test_complex_with_checks(run):
    out = doc(run("complex", "--non-orientable", "3", "--relator", "a b c", "--check"))
    assert out["generators"] == ["x", "y", "z1"]
    assert out["checks"]
    assert all(c["d1_d2_zero"] for c in out["checks"])

    result = run("complex", "--non-orientable", "3", "--relator", "a b c", "--emit", "text")
    assert result.exit_code == 0
    assert "d2 row 2 (averaged over C_1):" in result.stdout


def test_complex_needs_hempel_case(run):
    assert run("complex", "--non-orientable", "3", "--relator", "a b").exit_code == 1


def test_hnn(run):
    out = doc(run("hnn", "--non-orientable", "3", "--relator", "a b c", "--json"))
    assert out["nu"] == 0
    assert out["torsion"]["m"] == 1


def test_stagger(run):
    out = doc(run("stagger", "--presentation", "< x1, x2, x3 | x1 x2 x3, x2 >", "--json"))
    assert out == {"staggerable": False, "order": None}
    out = doc(run("stagger", "--presentation", "< x1, x2, x3 | x1 x2, x2 x3 >", "--json"))
    assert out == {"staggerable": True, "order": ["x1", "x2", "x3"]}


def test_fproot(run):
    out = doc(run("fproot", "--a", "1", "--b", "1", "--word", "A(a1) B(b1) A(a1) B(b1)", "--json"))
    assert out["fixes_vertex"] is False
    assert out["log"] == 2
    assert out["root"] == "(A: a1) (B: b1)"

    out = doc(run("fproot", "--a", "2", "--b", "1", "--word", "A(a2)", "--json"))
    assert out == {"fixes_vertex": True, "conjugator": "1", "tag": "A"}

    assert run("fproot", "--a", "1", "--b", "1", "--word", "A(a1) C(c1)").exit_code == 2
    assert run("fproot", "--a", "1", "--b", "1", "--word", "A(a2)").exit_code == 2


def test_potency(run):
    out = doc(run("potency", "--d", "1", "--u", "z1 z1", "--element", "z1", "--prime", "2", "--json"))
    assert out["image_nontrivial"] is True
    assert out["witness_monomial"] == "b_z1_0"

    out = doc(run("potency", "--d", "1", "--u", "z1 z1", "--element", "x", "--json"))
    assert (out["prime"], out["n"]) == (2, 1)


def test_potency_degree_is_capped_below_q(run):
    base = ("potency", "--d", "1", "--u", "z1 z1", "--element", "x", "--prime", "2", "--n", "1")
    assert doc(run(*base, "--degree", "1", "--json"))["degree"] == 1
    result = run(*base, "--degree", "2")
    assert result.exit_code == 1
    assert "below p^n = 2" in result.output

    help_text = " ".join(run("potency", "--help").output.split())
    assert "Capped below p^n" in help_text


def test_cap_help_names_every_cap(run):
    for command in ("classify", "stagger", "potency", "complex"):
        help_text = " ".join(run(command, "--help").output.split())
        assert "normalize steps, stagger nodes, potency monomials" in help_text


def test_parse_error_exit_code(run):
    result = run("classify", "--presentation", "< a, b | a $ >")
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_unknown_generator_exit_code(run):
    assert run("classify", "--presentation", "< a, b | a c >").exit_code == 2


def test_unsupported_exit_code(run):
    result = run("classify", "--orientable", "1")
    assert result.exit_code == 3
    assert "unsupported" in result.output


def test_cap_exit_code(run):
    args = ("normalize", "--presentation", "< x, y, z1 | [x,y] z1^2, y^-3 z1 y^3 x >")
    assert run(*args, "--cap", "1").exit_code == 4
    assert run(*args, env={"SPORCALC_CAP": "1"}).exit_code == 4
    assert run(*args).exit_code == 0


def test_usage_errors(run):
    assert run("classify").exit_code == 2
    assert run("classify", "--orientable", "2", "--non-orientable", "3").exit_code == 2
    assert run("classify", "--presentation", "< a | a >", "--relator", "a").exit_code == 2


def test_config_file_caps(run, tmp_path):
    path = tmp_path / "caps.yaml"
    path.write_text("stagger:\n  cap: 1\n", encoding="utf-8")
    args = ("stagger", "--presentation", "< x1, x2, x3 | x1 x2 x3, x2 >")
    assert run("--config", str(path), *args).exit_code == 4
    assert run(*args).exit_code == 0


def test_bad_config_file(run, tmp_path):
    path = tmp_path / "caps.yaml"
    path.write_text("render:\n  cap: 1\n", encoding="utf-8")
    assert run("--config", str(path), "root", "--word", "a").exit_code == 1


def test_version(run):
    result = run("--version")
    assert result.exit_code == 0
    assert "sporcalc" in result.output
