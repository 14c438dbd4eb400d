import csv
import io
import json

import pytest

from qhk.alexander import phi_family
from qhk.cli import main
from qhk.io import ParseError, parse_table, quandle_from_json, quandle_to_json, spec_from_json, spec_to_json
from qhk.quandle import QuandleAxiomError, alexander, dihedral, transposition_quandle, trivial_quandle


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_quandle(path, q):
    path.write_text(quandle_to_json(q))
    return str(path)


def test_quandle_round_trip_bytes():
    q = alexander(phi_family(2, 3))
    text = quandle_to_json(q)
    assert quandle_to_json(quandle_from_json(text)) == text
    assert json.loads(text)["schema"] == 1


def test_spec_round_trip_bytes():
    spec = phi_family(2, 5)
    text = spec_to_json(spec)
    assert spec_from_json(text) == spec
    assert spec_to_json(spec_from_json(text)) == text


def test_reader_accepts_missing_schema():
    q = quandle_from_json('{"order": 3, "table": [[0,2,1],[2,1,0],[1,0,2]]}')
    assert q == dihedral(3)


@pytest.mark.parametrize("text", [
    "{", "[]", '{"order": 2}', '{"schema": 2, "table": [[0]]}', '{"order": 2, "table": [[0]]}',
    '{"table": [[0, 1]]}', '{"table": [[0, 7], [1, 1]]}', '{"table": [[0, "a"], [1, 1]]}', '{"table": []}',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_table(text)


def test_axiom_error_from_reader():
    with pytest.raises(QuandleAxiomError):
        quandle_from_json('{"table": [[1, 0], [0, 1]]}')


def test_check_r3(tmp_path, capsys):
    f = write_quandle(tmp_path / "r3.json", dihedral(3))
    code, out, _ = run(capsys, "check", f, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["connected"] and data["quasigroup"]
    assert data["type"] == 2 and data["inn_order"] == 6 and data["stab_order"] == 2


def test_check_trivial(tmp_path, capsys):
    f = write_quandle(tmp_path / "t3.json", trivial_quandle(3))
    code, out, _ = run(capsys, "check", f, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["orbits"] == 3 and not data["quasigroup"] and data["type"] == 1


def test_check_corrupted(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"order": 3, "table": [[0, 2, 1], [2, 1, 0], [1, 2, 2]]}')
    code, out, _ = run(capsys, "check", str(f), "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["axioms"] == "fail" and data["witness"]


def test_check_parse_error(tmp_path, capsys):
    f = tmp_path / "junk.json"
    f.write_text("{not json")
    assert run(capsys, "check", str(f))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2


def test_h2_commands(tmp_path, capsys):
    code, _, _ = run(capsys, "family", "--family", "conj-transpositions", "-n", "4",
                     "-o", str(tmp_path / "s4.json"))
    assert code == 0
    code, out, _ = run(capsys, "h2", str(tmp_path / "s4.json"), "--format", "json")
    assert code == 0 and json.loads(out)["h2"] == "Z/2"
    f = write_quandle(tmp_path / "one.json", trivial_quandle(1))
    code, out, _ = run(capsys, "h2", f, "--rack", "--format", "json")
    assert json.loads(out)["h2"] == "Z^1"
    run(capsys, "family", "--family", "phi", "-p", "2", "-n", "5", "-o", str(tmp_path / "p.json"))
    code, out, _ = run(capsys, "h2", str(tmp_path / "p.json"), "--ell", "2", "--format", "json")
    data = json.loads(out)
    assert data["h2"] == "Z/2 + Z/2" and data["h2q_cohomology_dim"] == 2


def test_h2_gate(tmp_path, capsys, monkeypatch):
    run(capsys, "family", "--family", "phi", "-p", "3", "-n", "4", "-o", str(tmp_path / "big.json"))
    code, _, err = run(capsys, "h2", str(tmp_path / "big.json"))
    assert code == 3 and "bound is 20" in err
    monkeypatch.setenv("QHK_MAX_ORDER", "27")
    code, out, _ = run(capsys, "h2", str(tmp_path / "big.json"), "--format", "json")
    assert code == 0 and json.loads(out)["h2"] == "Z/3"


def test_json_and_table_carry_the_same_fields(tmp_path, capsys):
    f = write_quandle(tmp_path / "f4.json", alexander(phi_family(2, 3)))
    _, js, _ = run(capsys, "h2", f, "--ell", "2", "--format", "json")
    _, table, _ = run(capsys, "h2", f, "--ell", "2")
    data = json.loads(js)
    rows = dict(line.split(None, 1) for line in table.splitlines())
    assert set(rows) == set(data)
    assert rows["h2"] == data["h2"] and int(rows["h2q_cohomology_dim"]) == data["h2q_cohomology_dim"]


def test_family_outputs(tmp_path, capsys):
    out = tmp_path / "f4.json"
    assert run(capsys, "family", "--family", "phi", "-p", "2", "-n", "3", "-o", str(out))[0] == 0
    assert json.loads(out.read_text())["order"] == 4
    assert spec_from_json((tmp_path / "f4.spec.json").read_text()) == phi_family(2, 3)
    code, stdout, _ = run(capsys, "family", "--family", "dihedral", "-n", "3")
    assert code == 0 and quandle_from_json(stdout) == dihedral(3)
    code, _, err = run(capsys, "family", "--family", "phi", "-p", "2", "-n", "4")
    assert code == 2 and "gcd" in err
    assert run(capsys, "family", "--family", "dihedral")[0] == 2
    assert run(capsys, "family", "--family", "phi", "-p", "4", "-n", "3")[0] == 2


def test_family_round_trip_through_check(tmp_path, capsys):
    for args in (["--family", "dihedral", "-n", "5"], ["--family", "takasaki", "--factors", "3,3"],
                 ["--family", "conj-transpositions", "-n", "4"], ["--family", "phi", "-p", "3", "-n", "2"]):
        out = tmp_path / "q.json"
        assert run(capsys, "family", *args, "-o", str(out))[0] == 0
        text = out.read_text()
        assert run(capsys, "check", str(out))[0] == 0
        assert quandle_to_json(quandle_from_json(text)) == text


def test_family_alexander_from_spec(tmp_path, capsys):
    spec = tmp_path / "s.json"
    spec.write_text(spec_to_json(phi_family(2, 3)))
    code, out, _ = run(capsys, "family", "--family", "alexander", "--spec", str(spec))
    assert code == 0 and quandle_from_json(out) == alexander(phi_family(2, 3))


def test_verify_commands(tmp_path, capsys):
    spec = tmp_path / "f4.spec.json"
    spec.write_text(spec_to_json(phi_family(2, 3)))
    code, out, _ = run(capsys, "verify", "--theorem", "thm4", "--spec", str(spec), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "PASS" and data["data"]["h2_quandle"] == "Z/2"
    code, out, _ = run(capsys, "verify", "--theorem", "prop5", "-p", "2", "-n", "5", "--format", "json")
    assert code == 0 and json.loads(out)["data"]["h2_quandle"] == "Z/2 + Z/2"
    code, out, _ = run(capsys, "verify", "--theorem", "thm5", "--spec", str(spec), "--ell", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["data"]["h2_quandle_dim"] == data["data"]["h2_relative_dim"] == 1
    code, out, _ = run(capsys, "verify", "--theorem", "thm5", "--spec", str(spec), "--ell", "3")
    assert code == 1 and "INAPPLICABLE" in out
    for thm in ("thm6", "cor8", "brackets"):
        assert run(capsys, "verify", "--theorem", thm, "--spec", str(spec))[0] == 0
    assert run(capsys, "verify", "--theorem", "prop9", "-p", "2")[0] == 0
    assert run(capsys, "verify", "--theorem", "thm4", "-p", "2", "-n", "3")[0] == 0


def test_verify_input_errors(tmp_path, capsys):
    assert run(capsys, "verify", "--theorem", "thm4")[0] == 2
    assert run(capsys, "verify", "--theorem", "thm5", "-p", "2", "-n", "3", "--ell", "4")[0] == 2
    assert run(capsys, "verify", "--theorem", "prop5", "-p", "2", "-n", "4")[0] == 2
    assert run(capsys, "verify", "--theorem", "nonsense")[0] == 2


def test_verify_thm5_on_quandle_file(tmp_path, capsys):
    f = write_quandle(tmp_path / "s4.json", transposition_quandle(4))
    code, out, _ = run(capsys, "verify", "--theorem", "thm5", "--quandle", f, "--ell", "3", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_census_formats(capsys):
    code, js, _ = run(capsys, "census", "--max-order", "9", "--families", "dihedral,phi", "--format", "json")
    assert code == 0
    data = json.loads(js)
    assert data["schema"] == 1
    rows = data["rows"]
    names = [(r["family"], r["params"]) for r in rows]
    assert ("dihedral", {"n": 3}) in names and ("phi", {"p": 2, "n": 3}) in names
    by = {(r["family"], json.dumps(r["params"])): r for r in rows}
    assert by[("dihedral", '{"n": 3}')]["h2_quandle"] == "0"
    assert by[("phi", '{"p": 2, "n": 3}')]["h2_quandle"] == "Z/2"
    _, csv_text, _ = run(capsys, "census", "--max-order", "9", "--families", "dihedral,phi", "--format", "csv")
    parsed = list(csv.DictReader(io.StringIO(csv_text)))
    assert [r["h2_quandle"] for r in parsed] == [r["h2_quandle"] for r in rows]
    _, table, _ = run(capsys, "census", "--max-order", "9", "--families", "dihedral,phi")
    assert len(table.splitlines()) == len(rows) + 2
    # stable order
    assert run(capsys, "census", "--max-order", "9", "--families", "dihedral,phi", "--format", "json")[1] == js


def test_census_trivial_family(capsys):
    _, js, _ = run(capsys, "census", "--max-order", "4", "--families", "trivial", "--format", "json")
    for r in json.loads(js)["rows"]:
        assert r["h2_rack"] == f"Z^{r['order'] ** 2}"
        assert r["orbits"] == r["order"]


def test_census_phi_16(capsys):
    _, js, _ = run(capsys, "census", "--max-order", "16", "--families", "phi", "--format", "json")
    rows = {(r["params"]["p"], r["params"]["n"]): r for r in json.loads(js)["rows"]}
    assert rows[(2, 5)]["h2_quandle"] == "Z/2 + Z/2"
    assert rows[(2, 5)]["thm4"] == "PASS"


def test_census_errors(capsys):
    assert run(capsys, "census", "--max-order", "9", "--families", "bogus")[0] == 2
    assert run(capsys, "census", "--max-order", "40")[0] == 3
    assert run(capsys, "census", "--max-order", "0")[0] == 2


def test_census_records_row_failures(capsys, monkeypatch):
    import qhk.cli as cli

    def boom(q, limits=None):
        raise cli.ResourceLimitError("max_group_order", 1, 2)

    monkeypatch.setattr(cli, "inn_group", boom)
    code, js, _ = run(capsys, "census", "--max-order", "4", "--families", "dihedral", "--format", "json")
    rows = json.loads(js)["rows"]
    assert code == 0 and len(rows) == 2 and all(r["error"] for r in rows)


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["h2"]) == 2
