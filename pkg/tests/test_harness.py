import json
import subprocess
import sys

import jsonschema
import pytest

from otcodes.betti import koszul_betti
from otcodes.codes import LinearCode, ghw_wei, min_distance, parity_check
from otcodes.errors import InputError
from otcodes.harness import (
    ASSERTED_CHECKS,
    CHECK_NAMES,
    REPORT_SCHEMA,
    fixture_names,
    fixture_path,
    load,
    parse_order,
    random_code,
    verify,
)
from otcodes.cli import main
from otcodes.orlikterao import alpha, check_proudfoot_speyer, ot_ideal
from otcodes.polyring import TermOrder

from conftest import FIXTURES


def write(tmp_path, obj, name="code.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


def statuses(report):
    return {c["name"]: c["status"] for c in report.checks}


def test_bundled_fixtures_present():
    assert fixture_names() == sorted(FIXTURES)


def test_load_generator_and_parity_check():
    C, cf = load("ternary_7_3")
    assert (C.n, C.k, C.p) == (7, 3, 3)
    C36, cf36 = load(fixture_path("quinary_6_3"))
    assert (C36.n, C36.k, C36.p) == (6, 3, 5) and cf36.kind == "parity_check"


@pytest.mark.parametrize("obj,msg", [
    ({"field": 4, "matrix": [[1, 1]]}, "prime"),
    ({"field": 3, "matrix": [[1, 1], [2, 2]]}, "rank"),
    ({"field": 3, "matrix": [[1, 1], [1]]}, "same length"),
    ({"field": 3, "matrix": []}, "nonempty"),
    ({"field": 3, "matrix": [[1, "a"]]}, "integer"),
    ({"field": "3", "matrix": [[1]]}, "'field'"),
    ({"field": 3, "matrix": [[1, 0]], "kind": "dual"}, "'kind'"),
    ({"field": 3, "matrix": [[1, 0]], "order": [1, 1]}, "permutation"),
    ({"field": 3, "matrix": [[1, 0]], "colour": 1}, "unknown"),
    ({"field": 3, "kind": "parity_check", "matrix": [[1, 0], [0, 1]]}, "trivial kernel"),
    ([1, 2], "object"),
])
def test_load_rejects_bad_input(tmp_path, obj, msg):
    with pytest.raises(InputError, match=msg):
        load(write(tmp_path, obj))


def test_load_rejects_missing_and_invalid_json(tmp_path):
    with pytest.raises(InputError, match="no such file"):
        load(tmp_path / "absent.json")
    with pytest.raises(InputError, match="invalid JSON"):
        load(write(tmp_path, "{not json"))


def test_entries_reduced_mod_field(tmp_path):
    C, _ = load(write(tmp_path, {"field": 3, "matrix": [[4, -2, 3]]}))
    assert C.G.rows == ((1, 1, 0),)


def test_parse_order():
    assert parse_order("1,2,3,4,6,7,5", 7).priority == (0, 1, 2, 3, 5, 6, 4)
    assert parse_order([2, 1], 2).priority == (1, 0)
    with pytest.raises(InputError):
        parse_order("1,2,2", 3)
    with pytest.raises(InputError):
        parse_order("a,b", 2)


def test_random_code_deterministic():
    a, b = random_code(1, 8, 3, 3), random_code(1, 8, 3, 3)
    assert a.G == b.G and (a.n, a.k, a.p) == (8, 3, 3)
    assert random_code(2, 8, 3, 3).G != a.G


@pytest.mark.parametrize("args", [(0, 4, 4, 3), (0, 13, 2, 3), (0, 5, 0, 3), (0, 5, 2, 11)])
def test_random_code_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        random_code(*args)


@pytest.mark.parametrize("name", FIXTURES)
def test_golden_reports(name):
    C, cf = load(name)
    report = verify(C, cf.order, name=cf.name)
    golden = fixture_path("golden/" + name).read_text()
    assert report.to_json() == golden
    data = json.loads(golden)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert json.dumps(data, indent=2) + "\n" == golden
    assert [c["name"] for c in data["checks"]] == list(CHECK_NAMES)
    assert not report.failed()


def test_sample_report_expectations():
    C, _ = load("quinary_6_3")
    r = verify(C)
    assert r.check("thm_3_4")["status"] == "pass" and "upper" in r.check("thm_3_4")["details"]
    C, _ = load("ternary_7_3_split")
    r = verify(C)
    assert r.ot["t"] == [1, 3, 5] and r.params["ghw"] == [2, 4, 7]
    assert "['+1', '+1', '+2']" in r.check("conjecture")["details"]
    C, _ = load("ternary_7_3")
    r = verify(C)
    assert "['+1', '+1', '+1']" in r.check("conjecture")["details"]


def test_degenerate_dual_skips_ot_checks():
    C = LinearCode.from_rows(3, [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 0]])
    r = verify(C)
    st = statuses(r)
    assert r.params["d"] == 1 and r.ot is None
    for name in ("thm_2_3", "thm_3_4", "prs_universal", "macaulay_hs", "reg_identity", "cm_pdim",
                 "conjecture", "mult_conj"):
        assert st[name] == "skipped"
        assert "DegenerateDual" in r.check(name)["details"]
    for name in ("ghw_consistency", "jove_identity", "dk_identity"):
        assert st[name] == "pass"
    jsonschema.validate(json.loads(r.to_json()), REPORT_SCHEMA)


def test_whole_space_code():
    r = verify(LinearCode.from_rows(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert r.params["ghw"] == [1, 2, 3] and r.circuits == [[1], [2], [3]] and not r.failed()


def test_one_dimensional_code_skips_second_weight():
    r = verify(LinearCode.from_rows(3, [[1, 1, 1, 1]]))
    assert statuses(r)["thm_3_4"] == "skipped"
    assert not r.failed()


def test_degenerate_code_top_weight_is_support():
    # d = 2 but coordinate 3 is zero on every codeword
    r = verify(LinearCode.from_rows(3, [[1, 1, 0]]))
    assert r.params["ghw"] == [2]
    dk = r.check("dk_identity")
    assert dk["status"] == "pass" and "n-|loops(H)|=3" in dk["details"]
    assert statuses(r)["reg_identity"] == "pass"


def test_verify_records_order_and_seed():
    C, _ = load("ternary_7_3")
    r = verify(C, [1, 2, 3, 4, 6, 7, 5], jmax=10, seed=5)
    assert r.order == [1, 2, 3, 4, 6, 7, 5] and r.jmax == 10 and r.seed == 5
    assert r.ot["initial_ideal"][:2] == ["y2*y6", "y3*y6"] or set(r.ot["initial_ideal"]) == {
        "y3*y6", "y2*y6", "y2*y3*y7", "y1*y2*y4", "y1*y4*y6*y7", "y1*y3*y4*y7"}


def test_truncated_tables_fail_loudly():
    C, _ = load("ternary_7_3")
    r = verify(C, jmax=5)
    assert "cm_pdim" in r.failed()


def test_random_corpus_initial_degree():
    for seed in range(100):
        C = random_code(seed, 8, 3, 3)
        assert alpha(ot_ideal(C)) + 1 == min_distance(C), seed


def test_random_corpus_second_weight_bounds():
    for seed in range(100):
        C = random_code(seed, 8, 4, 2)
        G = check_proudfoot_speyer(ot_ideal(C), TermOrder.grevlex(8)).basis
        t2 = koszul_betti(G, i_max=2).t(2)
        d2 = ghw_wei(parity_check(C), 2)
        assert t2 + 1 <= d2 <= t2 + 2, seed


# --- command line -------------------------------------------------------------


@pytest.mark.parametrize("cmd", ["info", "circuits", "ot", "sr", "betti", "hilbert", "verify"])
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_cli_subcommands(capsys, cmd, fmt):
    assert main([cmd, "ternary_7_3", "--format", fmt]) == 0
    out = capsys.readouterr().out
    assert out.strip()
    if fmt == "json":
        json.loads(out)


def test_cli_order_flag(capsys):
    assert main(["sr", "ternary_7_3", "--order", "1,2,3,4,6,7,5", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data["broken_circuit_ideal"]) == {"y3*y6", "y2*y6", "y2*y3*y7", "y1*y2*y4", "y1*y4*y6*y7",
                                                 "y1*y3*y4*y7"}


def test_cli_betti_ideals(capsys):
    assert main(["betti", "ternary_7_3_split", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["betti"] == [[0, 0, 1], [1, 1, 1], [1, 2, 2], [2, 3, 2],
                                                            [2, 4, 1], [3, 5, 1]]
    assert main(["betti", "ternary_7_3", "--ideal", "sr", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["t"] == [3, 5, 7]


def test_cli_hilbert(capsys):
    assert main(["hilbert", "ternary_7_3_y5_last", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["h_vector"] == [1, 3, 4, 3] and data["dimension"] == 4


def test_cli_input_error_exit_code(tmp_path, capsys):
    assert main(["verify", str(write(tmp_path, {"field": 4, "matrix": [[1, 1]]}))]) == 2
    assert "input error" in capsys.readouterr().err
    assert main(["verify", "ternary_7_3", "--order", "1,2"]) == 2


def test_cli_failure_exit_code(capsys):
    assert main(["verify", "ternary_7_3", "--jmax", "5"]) == 1


def test_cli_degenerate_dual_exit_code(tmp_path, capsys):
    path = write(tmp_path, {"field": 2, "matrix": [[1, 0, 0], [0, 1, 1]]})
    assert main(["verify", str(path)]) == 0
    assert main(["ot", str(path)]) == 2


def test_console_script_runs():
    out = subprocess.run([sys.executable, "-m", "otcodes.cli", "verify", "quinary_6_3", "--format", "json"],
                         capture_output=True, text=True, check=True).stdout
    assert out == fixture_path("golden/quinary_6_3").read_text()


def test_asserted_checks_are_first_nine():
    assert ASSERTED_CHECKS == CHECK_NAMES[:9]
    assert CHECK_NAMES[9:] == ("conjecture", "mult_conj")
