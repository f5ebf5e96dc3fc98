import json

import pytest

from quartic_hasse.cli import main
from quartic_hasse import jsonio
from quartic_hasse.forms import BinaryQuarticForm, invariants


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_invariants(capsys):
    code, doc = run(capsys, "invariants", "1,0,0,0,1")
    assert code == 0
    assert doc["I"] == 12 and doc["J"] == 0 and doc["D"] == 256
    assert doc["schema"] == "document/v1"


def test_admissible_exit_codes(capsys):
    code, doc = run(capsys, "admissible", "-3", "27")
    assert code == 0 and doc["admissible"]
    assert doc["form"]["coeffs"] == [0, 1, 0, 1, 1]
    code, doc = run(capsys, "admissible", "1", "1")
    assert code == 1 and not doc["admissible"]


def test_split(capsys):
    code, doc = run(capsys, "split", "1,-10,35,-50,24", "-p", "5")
    assert code == 0 and doc["splits"]
    assert doc["split"]["roots"] == ["1", "2", "3", "4"]
    code, doc = run(capsys, "split", "1,0,0,0,1", "-p", "5")
    assert code == 1


def test_descend(capsys):
    code, doc = run(capsys, "descend", "1,-10,35,-50,24", "-p", "5", "-b", "1")
    assert code == 0
    g = BinaryQuarticForm(*[int(c) for c in doc["descended"]["coeffs"]])
    assert 5 * g(0, 1) == BinaryQuarticForm(1, -10, 35, -50, 24)(1, 1)


def test_local_h_flag_is_target_value(capsys):
    # -h is the Thue value, not help
    code, doc = run(capsys, "local", "1,0,0,0,1", "-h", "2", "-p", "5")
    assert code == 0 and doc["verdict"] == "soluble"
    code, doc = run(capsys, "local", "1,0,0,0,1", "-h", "3", "-p", "2")
    assert code == 1 and doc["verdict"] == "insoluble"


def test_search(capsys):
    code, doc = run(capsys, "search", "1,0,0,0,1", "-m", "2", "-B", "5")
    assert code == 0
    assert sorted(map(tuple, doc["solutions"])) \
        == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    code, _ = run(capsys, "search", "1,0,0,0,1", "-m", "3", "-B", "5")
    assert code == 1


def test_density(capsys):
    code, doc = run(capsys, "density", "-p", "5")
    assert code == 0 and doc["lambda"] == "3041/3125"
    code, doc = run(capsys, "density", "--mu", "-h", "1", "--cutoff", "100")
    assert code == 0 and doc["primes"] == [5, 7, 11]
    lo = doc["mu"]["lower"]
    assert "/" in lo


def test_usage_errors(capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
    assert main(["density"]) == 2          # needs -p or --mu
    capsys.readouterr()
    assert main(["family", "1,0,0,0,1", "-P", "5,7"]) == 2
    capsys.readouterr()


def test_output_file(tmp_path, capsys):
    out = tmp_path / "inv.json"
    code = main(["-o", str(out), "invariants", "1,2,3,4,5"])
    capsys.readouterr()
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["I"] == invariants(BinaryQuarticForm(1, 2, 3, 4, 5)).I


def test_output_flag_after_subcommand(tmp_path, capsys):
    out = tmp_path / "inv.json"
    code = main(["invariants", "1,2,3,4,5", "-o", str(out)])
    capsys.readouterr()
    assert code == 0 and out.exists()


def test_json_big_int_round_trip():
    n = 2 ** 200 + 17
    assert jsonio.encode_int(n) == str(n)
    assert jsonio.encode_int(7) == 7
    doc = json.loads(jsonio.dumps({"n": jsonio.encode_int(n)}))
    assert int(doc["n"]) == n


def test_parse_form_accepts_encoded_ints():
    f = jsonio.parse_form({"coeffs": ["1", -2, "3", 4, "5"]})
    assert f.coeffs() == (1, -2, 3, 4, 5)
