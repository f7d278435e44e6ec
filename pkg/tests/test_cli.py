import json

import pytest
from hypothesis import given

from conftest import complexes
from zkmorse.cli import main
from zkmorse.complex import skeleton_complex
from zkmorse.io import ComplexFormatError, complex_from_json, complex_to_json, load_complex


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    lines = [json.loads(line) for line in out.splitlines() if line.strip()]
    return code, lines, err


@pytest.fixture
def files(tmp_path):
    return {
        "fig1": write(tmp_path, "fig1.json", {"m": 4, "facets": [[1, 3], [2, 4]]}),
        "cycle": write(tmp_path, "cycle.json", {"m": 4, "facets": [[1, 2], [1, 4], [2, 3], [3, 4]]}),
        "gon": write(tmp_path, "gon.json", {"m": 4, "facets": [[1, 3], [1, 4], [2, 3], [2, 4]]}),
        "tree": write(tmp_path, "tree.json", {"m": 5, "facets": [[1, 3], [2, 4], [3, 4], [4, 5]]}),
        "gap": write(tmp_path, "gap.json", {"m": 5, "facets": [[1, 4], [2, 3], [3, 4]]}),
    }


# -- io ------------------------------------------------------------------


@given(complexes(max_m=8))
def test_json_round_trip(K):
    assert complex_from_json(complex_to_json(K)) == K


def test_void_round_trip():
    K = complex_from_json({"m": 3, "facets": [], "void": True})
    assert K.void and complex_to_json(K) == {"m": 3, "facets": [], "void": True}
    assert complex_from_json({"m": 3, "facets": [[]]}).facet_lists() == [[]]


@pytest.mark.parametrize(
    "data, message",
    [
        ({"m": 3, "facets": [[1, 4]]}, "out of range"),
        ({"m": 0, "facets": [[1]]}, "invalid complex"),
        ({"m": 3}, "invalid complex"),
        ({"m": 3, "facets": []}, "void"),
        ({"m": 3, "facets": [[1]], "void": True}, "void"),
        ({"m": 3, "facets": [[1]], "extra": 1}, "invalid complex"),
    ],
)
def test_schema_errors(data, message):
    with pytest.raises(ComplexFormatError, match=message):
        complex_from_json(data)


def test_malformed_json(tmp_path):
    with pytest.raises(ComplexFormatError, match="malformed JSON"):
        load_complex(write(tmp_path, "bad.json", "{not json"))


# -- commands ------------------------------------------------------------


def test_dual(capsys, files):
    code, [rep], _ = run(capsys, "dual", files["fig1"])
    assert code == 0
    assert rep["schema_version"] == 1
    assert rep["facets"] == [[1, 2], [1, 4], [2, 3], [3, 4]]


def test_vd_commands(capsys, files):
    _, [rep], _ = run(capsys, "vd", "check", files["cycle"])
    assert rep["vertex_decomposable"] is True
    _, [rep], _ = run(capsys, "vd", "sequence", files["fig1"])
    assert rep == {**rep, "vertex_decomposable": False, "sequence": None}
    _, [rep], _ = run(capsys, "vd", "verify", "--order", "1,2,3,4", files["cycle"])
    assert rep["valid"] is True
    _, [rep], _ = run(capsys, "vd", "verify", "--order", "1,3,2,4", files["cycle"])
    assert rep["valid"] is False


def test_vd_lax_mode(capsys, tmp_path):
    path = write(tmp_path, "k.json", {"m": 3, "facets": [[1], [2, 3]]})
    _, [strict], _ = run(capsys, "vd", "verify", "--order", "1,2", path)
    _, [lax], _ = run(capsys, "vd", "verify", "--order", "1,2", "--no-strict-shedding", path)
    assert strict["valid"] is False and lax["valid"] is True


def test_vd_verify_errors(capsys, files):
    code, _, err = run(capsys, "vd", "verify", files["cycle"])
    assert code == 1 and "--order" in err
    code, _, err = run(capsys, "vd", "verify", "--order", "1,9", files["cycle"])
    assert code == 1 and "invalid order" in err


def test_crit(capsys, files):
    code, [rep], _ = run(capsys, "crit", "--method", "both", files["gon"])
    assert code == 0
    assert rep["critical"] == ["+*+*", "+*--", "--+*", "----"]
    assert rep["dims"] == {"0": 1, "3": 2, "6": 1}
    assert rep["routes_agree"] is True


def test_betti_and_wedge(capsys, files):
    _, [rep], _ = run(capsys, "betti", "--n", "2", "--p", "3", files["gon"])
    assert rep["betti"] == {"0": 1, "3": 2, "6": 1}
    assert rep["chi"] == 0
    _, [rep], _ = run(capsys, "wedge", files["gon"])
    assert rep["spheres"] == {"3": 2, "6": 1}
    assert rep["hypothesis"] is False


def test_verify_four_gon(capsys, files):
    code, [rep], _ = run(capsys, "verify", "--n", "2", "--p", "2", files["gon"])
    assert code == 0
    assert rep["triangle"]["equal"] is True
    assert rep["hypothesis_not_met"] is True


def test_verify_exit_codes(capsys, files):
    code, [rep], _ = run(capsys, "verify", files["gap"])
    assert code == 2 and rep["hypothesis_not_met"] is True
    assert rep["triangle"]["oracle_equals_wedge"] is True
    # the hypothesis holds but the coordinate order is not a shedding order
    code, [rep], _ = run(capsys, "verify", files["tree"])
    assert code == 3
    assert rep["hypothesis_not_met"] is False and rep["shedding_compatible"] is False


def test_matching_dump(capsys, files, tmp_path):
    dump = tmp_path / "edges.json"
    code, [rep], _ = run(capsys, "matching", files["gon"], "--dump", str(dump))
    assert code == 0
    assert rep["acyclic"] is True and rep["l_monotone"] is True
    assert rep["cells"] == 576 and rep["matched_pairs"] == 286
    edges = json.loads(dump.read_text())["edges"]
    assert len(edges) == 286


def test_gen(capsys, tmp_path):
    assert main(["gen", "--skeleton", "5", "2"]) == 0
    out = capsys.readouterr().out
    assert complex_from_json(json.loads(out)) == skeleton_complex(5, 2)
    target = tmp_path / "b.json"
    assert main(["gen", "--boundary", "3", "-o", str(target)]) == 0
    assert load_complex(target).facet_lists() == [[1, 2], [1, 3], [2, 3]]
    assert main(["gen", "--random", "4", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--random", "4", "--seed", "7"]) == 0
    assert capsys.readouterr().out == first
    assert main(["gen", "--skeleton", "3", "5"]) == 1


def test_errors_have_distinct_messages(capsys, tmp_path, files):
    bad_json = write(tmp_path, "bad.json", "{")
    bad_vertex = write(tmp_path, "v.json", {"m": 2, "facets": [[3]]})
    missing = str(tmp_path / "nope.json")
    messages = []
    for path in (bad_json, bad_vertex, missing):
        code, _, err = run(capsys, "betti", path)
        assert code == 1
        messages.append(err)
    code, _, err = run(capsys, "betti", "--budget-cells", "5", files["gon"])
    assert code == 1
    messages.append(err)
    assert "malformed JSON" in messages[0]
    assert "out of range" in messages[1]
    assert "I/O error" in messages[2]
    assert "budget exceeded" in messages[3]


def test_bad_flags(capsys, files):
    with pytest.raises(SystemExit):
        main(["betti", "--p", "4", files["gon"]])
    code, _, err = run(capsys, "betti", "--n", "0", files["gon"])
    assert code == 1 and "--n" in err


def test_fan_out_keeps_order_and_is_deterministic(capsys, files, monkeypatch):
    monkeypatch.setenv("ZKMORSE_THREADS", "3")
    inputs = [files["gon"], files["fig1"], files["cycle"], files["tree"]]
    main(["crit", *inputs])
    first = capsys.readouterr().out
    reps = [json.loads(line) for line in first.splitlines()]
    assert [r["input"] for r in reps] == inputs
    monkeypatch.setenv("ZKMORSE_THREADS", "1")
    main(["crit", *inputs])
    assert capsys.readouterr().out == first


def test_bad_thread_count(capsys, files, monkeypatch):
    monkeypatch.setenv("ZKMORSE_THREADS", "zero")
    code, _, err = run(capsys, "crit", files["gon"])
    assert code == 1 and "ZKMORSE_THREADS" in err


def test_table_format(capsys, files):
    assert main(["crit", "--format", "table", files["gon"]]) == 0
    out = capsys.readouterr().out
    assert "critical" in out and "0:1 3:2 6:1" in out
