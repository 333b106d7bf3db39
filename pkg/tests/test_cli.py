import json

import pytest

from orbichi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,value", [
    (["--group", "symmetric:3", "--A", "free-abelian:1"], "1"),
    (["--group", "symmetric:3", "--A", "free-abelian:2"], "3"),
    (["--group", "cyclic:2", "--A", "product(free-abelian:1,cyclic:2)"], "2"),
    (["--group", "symmetric:3", "--A", "cyclic:2"], "2/3"),
])
def test_chi(capsys, argv, value):
    code, out, _ = run(capsys, "chi", *argv)
    assert code == 0
    data = json.loads(out)
    assert data["value"] == value and data["engine"] == "homs"


def test_chi_engines_agree(capsys):
    argv = ["chi", "--group", "dihedral:4", "--space", "free+pt", "--A", "free-abelian:3"]
    values = set()
    for engine in ("homs", "recursive"):
        code, out, _ = run(capsys, *argv, "--engine", engine)
        data = json.loads(out)
        assert code == 0 and data["integer"] is True
        values.add(data["value"])
    assert len(values) == 1


def test_chi_auto_falls_back_on_budget(capsys):
    code, out, _ = run(capsys, "chi", "--group", "symmetric:4", "--A", "free-abelian:3", "--budget", "1000")
    assert code == 0
    data = json.loads(out)
    assert data["engine"] == "recursive"
    code, out2, _ = run(capsys, "chi", "--group", "symmetric:4", "--A", "free-abelian:3")
    assert json.loads(out2)["value"] == data["value"]


def test_chi_product_engine(capsys):
    code, out, _ = run(capsys, "chi", "--group", "symmetric:3", "--A", "product(free-abelian:1,cyclic:2)",
                       "--engine", "product")
    assert code == 0 and json.loads(out)["engine"] == "product"
    assert run(capsys, "chi", "--A", "cyclic:2", "--engine", "product")[0] == 2


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "chi", "--group", "symmetric:4", "--A", "cyclic:2", "--engine", "homs",
                       "--budget", "5")
    assert code == 3 and "budget" in err


@pytest.mark.parametrize("argv,coeffs", [
    (["--group", "cyclic:2", "--A", "cyclic:2", "--N", "2"], ["1", "1", "3/4"]),
    (["--A", "free-abelian:1", "--N", "3"], ["1", "1", "1", "1"]),
    (["--A", "free-abelian:2", "--N", "4"], ["1", "1", "2", "3", "5"]),
    (["--space", "virtual:-1", "--A", "free-abelian:1", "--N", "3"], ["1", "-1", "0", "0"]),
])
@pytest.mark.parametrize("engine", ["direct", "cellwise", "both"])
def test_zeta(capsys, argv, coeffs, engine):
    code, out, _ = run(capsys, "zeta", *argv, "--engine", engine)
    assert code == 0
    data = json.loads(out)
    assert data["coefficients"] == coeffs and data["N"] == len(coeffs) - 1
    if engine == "both":
        assert data["agree"] is True


def test_output_is_deterministic_and_compact(capsys, tmp_path):
    argv = ["zeta", "--group", "symmetric:3", "--space", "cosets:1+pt", "--A", "cyclic:2", "--N", "2"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second and "\n" not in first.strip()
    pretty = run(capsys, *argv, "--pretty")[1]
    assert json.loads(pretty) == json.loads(first) and pretty.count("\n") > 1
    target = tmp_path / "out.json"
    assert main(argv + ["--output", str(target)]) == 0
    assert json.loads(target.read_text()) == json.loads(first)


@pytest.mark.parametrize("argv", [
    ["verify", "tamanoi", "--group", "symmetric:3", "--k", "2", "--N", "4"],
    ["verify", "macdonald", "--chi", "-3", "--N", "8"],
    ["verify", "macdonald", "--space", "virtual:2", "--N", "4"],
    ["verify", "bryan-fulman", "--chi", "2", "--A", "cyclic:2", "--N", "3"],
    ["verify", "induction", "--group", "cyclic:2", "--into", "symmetric:3", "--into", "symmetric:4",
     "--A", "free-abelian:2"],
    ["verify", "induction", "--group", "cyclic:2", "--space", "free", "--into", "cyclic:4", "--A", "cyclic:2"],
    ["verify", "prop-product", "--group", "symmetric:3", "--A1", "free-abelian:1", "--A2", "free-abelian:1"],
    ["verify", "lemma3", "--group", "cyclic:4", "--subgroup", "2", "--a", "1", "--k", "2"],
    ["verify", "counterexamples"],
    ["verify", "conjugacy-types", "--group", "cyclic:3", "--n", "2"],
    ["verify", "engines", "--group", "symmetric:3", "--space", "free", "--A", "cyclic:2", "--N", "2"],
    ["verify", "definitions", "--group", "dihedral:4", "--space", "pt+free", "--k", "2"],
    ["counterexample"],
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert code == 0 and data["overall"] == "pass", data


def test_verify_failure_exit_code(capsys):
    # a transposition is not central over the 3-cycles, so the hypotheses fail
    code, out, _ = run(capsys, "verify", "lemma3", "--group", "symmetric:3", "--subgroup", "3", "--a", "1")
    assert code == 1 and json.loads(out)["overall"] == "fail"


@pytest.mark.parametrize("argv", [
    ["verify", "bogus"],
    ["verify", "macdonald"],
    ["verify", "bryan-fulman", "--chi", "1"],
    ["chi", "--group", "cyclic:0", "--A", "free-abelian:1"],
    ["chi", "--group", "symmetric:3", "--space", "cosets:77", "--A", "free-abelian:1"],
    ["chi", "--A", "free-abelian:x"],
    ["chi", "--A", "cyclic:2", "--engine", "recursive"],
    ["zeta", "--A", "free-abelian:1", "--N", "-1"],
    ["verify", "induction", "--group", "cyclic:4", "--into", "symmetric:3", "--A", "cyclic:2"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("orbichi: error:")


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["zeta", "--A", "free-abelian:1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["chi", "--A", "free-abelian:1", "--budget", "0"])
    assert exc.value.code == 2


def test_group_command(capsys):
    code, out, _ = run(capsys, "group", "symmetric:3", "--wreath", "2")
    data = json.loads(out)
    assert code == 0 and data["order"] == 6 and not data["abelian"]
    assert sorted(c["size"] for c in data["classes"]) == [1, 2, 3]
    assert len(data["wreath"]["types"]) == 9
    assert sum(t["class_size"] for t in data["wreath"]["types"]) == 72


def test_group_from_table_file(capsys, tmp_path):
    path = tmp_path / "z3.json"
    path.write_text(json.dumps({"order": 3, "mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
    code, out, _ = run(capsys, "chi", "--group", f"table:{path}", "--A", "free-abelian:2")
    assert code == 0 and json.loads(out)["value"] == "3"


def test_cap_flag(capsys):
    code, _, err = run(capsys, "group", "symmetric:5", "--cap", "100")
    assert code == 3 and "cap" in err
    import orbichi.groups
    assert orbichi.groups.ORDER_CAP == 200_000


def test_cap_applies_to_wreath_groups(capsys):
    code, _, _ = run(capsys, "zeta", "--group", "cyclic:2", "--A", "cyclic:2", "--N", "3", "--engine", "direct",
                     "--cap", "10")
    assert code == 3
