import io
import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema

from globalfields import cli

SCHEMA_DIR = Path(cli.__file__).parent / "schemas"


def run_cli(argv):
    out = io.StringIO()
    code = cli.main(argv, stdout=out)
    return code, out.getvalue()


def run_json(argv):
    code, text = run_cli(argv)
    assert code == 0, text
    return json.loads(text)


def validate(record, name):
    schema = json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())
    jsonschema.validate(record, schema)


# ---------------------------------------------------------------------------
# Subcommand reports and schemas
# ---------------------------------------------------------------------------


def test_residue_example():
    record = run_json(["residue", "--q", "2", "--g", "T^2+T+1"])
    assert record["count"] == "4"
    validate(record, "residue")


def test_residue_nonprime_power_rejected():
    code, _ = run_cli(["residue", "--q", "6", "--g", "T"])
    assert code == 1


def test_torsion_report_with_cyclic_block():
    record = run_json([
        "torsion", "--q", "2", "--a", "T^2+T+1", "--place", "T", "--check-cyclic",
    ])
    assert record["cardinality"] == 4
    assert record["cyclic"]["cyclic"] is True
    validate(record, "torsion")


def test_torsion_symbolic_default():
    record = run_json(["torsion", "--q", "2", "--a", "T"])
    assert record["place"] == "symbolic"
    assert sorted(record["roots"]) == ["0", "T"]
    validate(record, "torsion")


def test_classnum_single():
    record = run_json(["classnum", "--D", "-23"])
    assert record["h"] == 3
    validate(record, "classnum")


def test_classnum_range():
    record = run_json(["classnum", "--range=-30..-3"])
    assert {"D": -23, "h": 3} in record["entries"]
    validate(record, "classnum")


def test_unit_report():
    record = run_json(["unit", "--d", "5"])
    assert record["epsilon"] == "(1 + 1*sqrt(5))/2"
    assert record["norm"] == -1
    validate(record, "unit")


def test_j_report():
    record = run_json(["j", "--tau", "i"])
    assert record["value"].split("+")[0].rstrip("0").rstrip(".") == "1728"
    validate(record, "j")


def test_j_rejects_lower_half_plane():
    code, _ = run_cli(["j", "--tau", "1-2i"])
    assert code == 1


def test_hcp_report():
    record = run_json(["hcp", "--D", "-8"])
    assert record["coefficients"] == ["-8000", "1"]
    validate(record, "hcp")


def test_gen_exp_formula():
    record = run_json(["gen", "--formula", "4.3", "--d", "2", "--precision", "256"])
    assert record["epsilon"] == "1 + 1*sqrt(2)"
    assert isinstance(record["relation_found"], bool)
    assert record["degree_scan"]
    validate(record, "gen")


def test_gen_cm_formula():
    record = run_json(["gen", "--formula", "4.0", "--d", "1"])
    assert record["candidate_polynomial"] == "x - 1728"
    validate(record, "gen")


def test_gen_poly_formula():
    record = run_json(["gen", "--formula", "4.4", "--coeffs", "0,2"])
    direct = run_json(["gen", "--formula", "4.3", "--d", "2"])
    assert record["value"] == direct["value"]
    validate(record, "gen")


def test_resolve_example():
    record = run_json(["resolve", "--curve", "y^2-x^3-x^2", "--p", "2"])
    assert record["count"] == 1
    assert record["tower"] == ["2"]
    assert record["smooth"] is True
    validate(record, "resolve")


def test_resolve_tacnode_counts_two():
    record = run_json(["resolve", "--curve", "y^2-x^4", "--p", "3"])
    assert record["count"] == 2
    assert record["tower"] == ["3", "9"]
    assert record["delta_remaining"] == [1, 0]
    validate(record, "resolve")


# ---------------------------------------------------------------------------
# Exit codes and configuration
# ---------------------------------------------------------------------------


def test_syntax_error_exits_two():
    code, _ = run_cli(["residue", "--q", "2", "--g", "T^^2"])
    assert code == 2
    code, _ = run_cli(["resolve", "--curve", "y^^2"])
    assert code == 2


def test_domain_error_exits_one():
    code, _ = run_cli(["unit", "--d", "4"])
    assert code == 1
    code, _ = run_cli(["classnum", "--D", "-6"])
    assert code == 1


def test_missing_argument_exits_two():
    code, _ = run_cli(["gen", "--formula", "4.3"])
    assert code == 2
    code, _ = run_cli(["gen", "--formula", "4.4"])
    assert code == 2


def test_env_var_precision(monkeypatch):
    monkeypatch.setenv("GF_PRECISION", "128")
    record = run_json(["unit", "--d", "2"])
    assert record["config"]["precision"] == 128


def test_config_file_and_flag_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "gf.conf"
    cfg.write_text("precision=300\nseed=7\n")
    record = run_json(["--config", str(cfg), "unit", "--d", "2"])
    assert record["config"]["precision"] == 300
    assert record["config"]["seed"] == 7
    # flags override the config file
    record2 = run_json(["--config", str(cfg), "--precision", "192", "unit", "--d", "2"])
    assert record2["config"]["precision"] == 192


def test_global_flags_accepted_after_subcommand():
    record = run_json(["unit", "--d", "2", "--precision", "192"])
    assert record["config"]["precision"] == 192


def test_output_file(tmp_path):
    out = tmp_path / "report.json"
    code, text = run_cli(["residue", "--q", "3", "--g", "T", "--output", str(out)])
    assert code == 0 and text == ""
    assert json.loads(out.read_text())["count"] == "3"


def test_csv_and_text_formats():
    code, text = run_cli(["residue", "--q", "2", "--g", "T", "--format", "csv"])
    assert code == 0
    header, row = text.strip().splitlines()
    assert "count" in header.split(",")
    code, text = run_cli(["residue", "--q", "2", "--g", "T", "--format", "text"])
    assert code == 0 and "count: 2" in text


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def test_sweep_writes_json_lines_and_resumes(tmp_path):
    out = tmp_path / "sweep.jsonl"
    code, _ = run_cli(["gen", "--formula", "4.3", "--d-range", "2..6",
                       "--output", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert [json.loads(l)["d"] for l in lines] == [2, 3, 5, 6]
    schema = json.loads((SCHEMA_DIR / "gen-sweep-line.schema.json").read_text())
    for line in lines:
        jsonschema.validate(json.loads(line), schema)
    # resuming skips completed d and appends only the new ones
    code, _ = run_cli(["gen", "--formula", "4.3", "--d-range", "2..10",
                       "--output", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert [json.loads(l)["d"] for l in lines] == [2, 3, 5, 6, 7, 10]


def test_sweep_to_stdout():
    code, text = run_cli(["gen", "--formula", "4.3", "--d-range", "2..3"])
    assert code == 0
    assert len(text.strip().splitlines()) == 2


# ---------------------------------------------------------------------------
# Determinism and the installed entry point
# ---------------------------------------------------------------------------


def _full_sweep_bytes(tmp_path, tag):
    chunks = []
    for argv in (
        ["residue", "--q", "2", "--g", "T^2+T+1"],
        ["torsion", "--q", "2", "--a", "T^2+T+1", "--place", "T", "--check-cyclic"],
        ["classnum", "--range=-40..-3"],
        ["unit", "--d", "13"],
        ["j", "--tau", "0.25+1.5i"],
        ["hcp", "--D", "-23"],
        ["gen", "--formula", "4.3", "--d", "2"],
        ["resolve", "--curve", "y^2-x^4", "--p", "2"],
    ):
        code, text = run_cli(argv)
        assert code == 0
        chunks.append(text)
    sweep = tmp_path / f"sweep-{tag}.jsonl"
    code, _ = run_cli(["gen", "--formula", "4.3", "--d-range", "2..10",
                       "--output", str(sweep)])
    assert code == 0
    chunks.append(sweep.read_text())
    return "".join(chunks).encode()


def test_reports_are_byte_identical_across_runs(tmp_path):
    first = _full_sweep_bytes(tmp_path, "a")
    second = _full_sweep_bytes(tmp_path, "b")
    assert first == second


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "globalfields.cli", "residue", "--q", "2", "--g", "T"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == "2"
