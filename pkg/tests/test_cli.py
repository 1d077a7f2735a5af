import json

from click.testing import CliRunner

from edslab.cli import main

E37 = "[0,0,1,-1,0]"
ORIGIN = "(0,0)"


def run(*args, stdin=None):
    return CliRunner().invoke(main, list(args), input=stdin)


def test_divset_e37():
    result = run("divset", "--curve", E37, "--point", ORIGIN, "--bound", "500")
    assert result.exit_code == 0
    assert result.output.strip() == "1 40 53 63 80 127 160 189 200 320 400 441 443"


def test_divset_json_and_jobs():
    seq = run("divset", "--curve", E37, "--point", ORIGIN, "--bound", "120",
              "--format", "json")
    par = run("divset", "--curve", E37, "--point", ORIGIN, "--bound", "120",
              "--format", "json", "--jobs", "2")
    assert seq.exit_code == 0 and par.exit_code == 0
    assert json.loads(seq.output) == json.loads(par.output)


def test_anomalous():
    result = run("anomalous", "--curve", E37, "--bound", "500")
    assert result.exit_code == 0
    assert result.output.strip() == "53 127 443"


def test_eds_terms_and_mod():
    result = run("eds", "--curve", E37, "--point", ORIGIN, "--bound", "5")
    assert result.exit_code == 0
    assert result.output.splitlines() == ["1\t1", "2\t1", "3\t1", "4\t1", "5\t2"]
    modded = run("eds", "--curve", "[2,1,1,7,4]", "--point", "(4,7)",
                 "--bound", "30", "--mod", "30")
    assert modded.exit_code == 0
    assert modded.output.splitlines()[29] == "30\t0"


def test_info_json():
    result = run("info", "--curve", E37, "--point", ORIGIN, "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["disc"] == 37
    assert data["bad_primes"] == {"37": "nonsplit_multiplicative"}
    assert data["regularity"]["regular"] is True


def test_classify():
    result = run("classify", "--curve", "[2,1,1,7,4]", "--point", "(4,7)",
                 "1", "30", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["kind"] == "nonstandard"
    assert data["t"] == 1 and data["p0"] == 2 and data["lhs"] == [3, 1]


def test_arrows_dot_round_trip():
    result = run("arrows", "--curve", E37, "--point", ORIGIN, "--bound", "200",
                 "--format", "dot")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "digraph S {" and lines[-1] == "}"
    assert '  1 -> 40 [label="w=40"];' in lines


def test_arrows_json_schema():
    result = run("arrows", "--curve", E37, "--point", ORIGIN, "--bound", "200",
                 "--format", "json")
    data = json.loads(result.output)
    assert set(data) == {"bound", "elements", "arrows", "cycles", "anomalous"}


def test_aliquot_generalized_singular():
    result = run("aliquot", "--curve", "[3,2,3,1,0]", "--point", ORIGIN,
                 "--bound", "20", "--generalized", "--singular")
    assert result.exit_code == 0
    assert result.output.splitlines() == ["(2,3)", "(5)"]


def test_lucas_divset():
    result = run("lucas", "-a", "3", "-b", "1", "--bound", "84")
    assert result.exit_code == 0
    assert result.output.strip() == "1 5 6 12 18 24 25 30 36 48 54 55 60 72 84"


def test_lucas_compare():
    result = run("lucas", "-a", "1", "-b", "-1", "--bound", "100",
                 "--what", "compare")
    assert result.exit_code == 0
    assert result.output.strip() == "empty diff"


def test_construct_from_stdin():
    result = run("construct", "--format", "json",
                 stdin="5 7 1\n7 11 1\n11 17 1\n17 25 1\n")
    assert result.exit_code == 0
    data = json.loads(result.output.splitlines()[-1])
    assert data["verification"]["d"] == 32725
    assert data["verification"]["ok"]


def test_verify_paper_filter():
    result = run("verify-paper", "--filter", "disc37")
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l.startswith("PASS")]
    assert len(lines) == 5


def test_exit_code_precondition():
    bad_literal = run("divset", "--curve", "[1,2,3]", "--point", ORIGIN)
    assert bad_literal.exit_code == 2
    torsion = run("eds", "--curve", "[0,0,0,-1,0]", "--point", ORIGIN,
                  "--bound", "3")
    assert torsion.exit_code == 2
    off_curve = run("eds", "--curve", E37, "--point", "(2,3)", "--bound", "3")
    assert off_curve.exit_code == 2


def test_unknown_filter_is_precondition():
    result = run("verify-paper", "--filter", "no-such-check")
    assert result.exit_code == 2
