import json

import pytest

from multfree.catalog import (YoungDiagram, diagrams, registry_load, registry_parse, run_verify,
                              spectrum_s2_analysis, strip_wall_time)
from multfree.characters import decompose_polynomials, multiplicity_free_check
from multfree.cli import main
from multfree.errors import RegistryError

from conftest import realization


def test_builtin_registry():
    entries = registry_load()
    assert len(entries) >= 13
    assert sum(e.is_capelli for e in entries) == 11
    assert len({e.name for e in entries}) == len(entries)
    meta = {e.name for e in entries if not e.supported}
    assert meta == {"U4_Sp4_on_C4C8", "Spin7_on_C8", "Spin10_on_C16", "G2_on_C7"}
    assert all(e.expected_mf is None for e in entries if not e.supported)
    assert sum(e.supported for e in entries) >= 9


def test_registry_expectations_match():
    for e in registry_load():
        if e.expected_mf is not None:
            assert multiplicity_free_check(e.realization(), 4).multiplicity_free is e.expected_mf, e.name


def test_empty_registry(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    assert registry_load(f) == []
    assert registry_parse("# only a comment\n\n") == []


def test_registry_errors():
    with pytest.raises(RegistryError, match="'Bad'"):
        registry_parse("name: Bad\ngroup: U(2) x E8\n")
    with pytest.raises(RegistryError, match="duplicate name"):
        registry_parse("name: A\ngroup: U(1)\n\nname: A\ngroup: U(2)\n")
    with pytest.raises(RegistryError, match="line 2"):
        registry_parse("name: A\nthis line has no separator\n")
    with pytest.raises(RegistryError, match="unknown key"):
        registry_parse("name: A\ngroup: U(1)\ncolour: red\n")
    with pytest.raises(RegistryError, match="missing required key"):
        registry_parse("name: A\n")
    with pytest.raises(RegistryError, match="no expected results"):
        registry_parse("name: A\ngroup: T x G2\nsupported: false\nexpected_mf: true\n")
    with pytest.raises(RegistryError, match="cannot be constructed"):
        registry_parse("name: A\ngroup: T x G2\nsupported: true\n")


def test_registry_roundtrip_custom(tmp_path):
    f = tmp_path / "reg.txt"
    f.write_text("name: circle\ngroup: U(1)\nrep: std\nexpected_mf: true\nnotes: scalars\n")
    (e,) = registry_load(f)
    assert e.supported and e.expected_mf and e.realization().dimV == 1


def test_young_diagram_basics():
    empty = YoungDiagram(())
    assert empty.size == 0 and empty.tag() == "both" and str(empty) == "()"
    d = YoungDiagram((3, 1))
    assert d.size == 4 and d.even_size and not d.all_rows_even and d.tag() == "in_tau_image"
    assert YoungDiagram((2, 1)).tag() == "neither"
    assert d.label(2) == (-1, -3) and YoungDiagram.from_label((-1, -3)) == d
    with pytest.raises(ValueError):
        YoungDiagram((1, 2))


def test_diagram_enumeration():
    ds = diagrams(2, 4)
    assert all(d.rows <= 2 and d.size <= 4 for d in ds)
    assert len(ds) == 1 + 1 + 2 + 2 + 3


def test_spectrum_small():
    rep = spectrum_s2_analysis(2, 4, starts=8)
    assert set(rep.in_spectrum()) == {"()", "(2)", "(4)", "(2,2)"}
    assert set(rep.image_not_spectrum()) == {"(1,1)", "(3,1)"}
    assert not rep.unreached


def test_spectrum_degree_two_labels():
    dec = decompose_polynomials(realization("U(2)", "S2"), 2)
    assert {str(YoungDiagram.from_label(l)) for l in dec.by_degree[2]} == {"(4)", "(2,2)"}


def test_spectrum_range_checks():
    with pytest.raises(ValueError):
        spectrum_s2_analysis(1, 4)
    with pytest.raises(ValueError):
        spectrum_s2_analysis(2, 14)


def test_spectrum_n3_exhaustive():
    rep = spectrum_s2_analysis(3, 6, starts=8)
    assert "(2,2,2)" in rep.in_spectrum() and "(1,1)" in rep.image_not_spectrum()
    assert not rep.unreached


def test_cli_exit_codes(capsys):
    assert main(["verify", "--action", "Spin7_on_C8"]) == 2
    assert "unsupported factor" in capsys.readouterr().err
    assert main(["verify", "--action", "U2_on_C2", "--max-degree", "4", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["reports"][0]["crosscheck"]["agree"] is True
    assert main(["verify", "--action", "SO3_on_C3"]) == 0
    assert main(["mfcheck", "--action", "no_such_action"]) == 2


def test_cli_commands(capsys, tmp_path):
    assert main(["actions", "list", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["actions"]) >= 13
    assert main(["mfcheck", "--action", "SO3_on_C3"]) == 0
    assert "violation" in capsys.readouterr().out
    assert main(["momentrank", "--action", "T_SO3_on_C3", "--samples", "16"]) == 0
    assert main(["capelli", "--action", "U2_on_C2"]) == 0
    assert main(["orbit-check", "--action", "U2_on_C2", "--starts", "4"]) == 0
    assert main(["spectrum", "--n", "2", "--max-size", "4"]) == 0
    assert main(["heis-test", "--action", "U2_on_C2", "--starts", "4"]) == 0
    f = tmp_path / "reg.txt"
    f.write_text("name: wrong\ngroup: SO(3)\nexpected_mf: true\n")
    assert main(["mfcheck", "--action", "wrong", "--registry", str(f)]) == 1


def test_verify_reports_deterministic(tmp_path):
    kw = dict(max_degree=3, samples=16, starts=8, seed=3)
    run_verify(["T_SO3_on_C3"], out=tmp_path / "a", **kw)
    run_verify(["T_SO3_on_C3"], out=tmp_path / "b", **kw)
    for name in ("T_SO3_on_C3.json", "index.json"):
        a, b = (tmp_path / d / name for d in "ab")
        assert strip_wall_time(a.read_text()) == strip_wall_time(b.read_text())
    report = json.loads((tmp_path / "a" / "T_SO3_on_C3.json").read_text())
    assert list(report)[-1] == "wall_time"
    assert report["rank"]["rank_rtol"] == 1e-8
