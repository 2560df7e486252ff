import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from fermat2310.cli import main, run

ROOT = Path(__file__).resolve().parents[1]
SCHEMAS = ROOT / "docs" / "schemas"

INVOCATIONS = [
    ["search", "--z-bound", "3", "--y-bound", "10000"],
    ["verify", "--triple", "3,-2,1"],
    ["verify", "--triple", "1,-1,0"],
    ["torsion", "--delta", "-1728"],
    ["torsion", "--ab=-1,0"],
    ["local-test", "--p", "5", "--map", "builtin:torsion-j"],
    ["local-test", "--p", "5", "--map", "builtin:j5", "--depth", "8"],
    ["j-image", "--p", "3", "--depth", "8"],
    ["identities"],
    ["fields", "--poly", "x^3-6x-6", "--bound", "100", "--compare", "x^3-2"],
    ["genus2", "--k", "243", "--height", "50"],
    ["moebius", "--curve", "x^3-6x-6"],
    ["padic", "--poly", "x^2+1", "--p", "5", "--depth", "4", "--hensel", "2"],
    ["catalog"],
]


def _report(argv):
    report, code = run(argv + ["--json"])
    return report, code


@pytest.mark.parametrize("argv", INVOCATIONS, ids=lambda a: " ".join(a))
def test_reports_validate_against_schema(argv):
    report, code = _report(argv)
    schema = json.loads((SCHEMAS / f"{argv[0]}.schema.json").read_text())
    jsonschema.validate(report, schema)
    assert code == 0


def test_every_subcommand_has_a_schema():
    from fermat2310.cli import COMMANDS
    assert {p.name.removesuffix(".schema.json") for p in SCHEMAS.glob("*.schema.json")} == set(COMMANDS)


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


@pytest.mark.parametrize("argv", INVOCATIONS[:6], ids=lambda a: a[0])
def test_reports_are_deterministic(argv, capsys):
    outs = []
    for _ in range(2):
        assert main(argv + ["--json"]) == 0
        rep = json.loads(capsys.readouterr().out)
        rep.pop("timing_ms")
        outs.append(json.dumps(rep))
        assert _no_floats(rep)
    assert outs[0] == outs[1]


def test_torsion_images():
    report, _ = _report(["torsion", "--delta", "-1728"])
    assert report["result"]["order"] == "6"
    assert report["result"]["j_images"] == ["-102400/3", "20480/243", "inf"]


def test_local_test_verdicts():
    report, code = _report(["local-test", "--p", "5", "--map", "builtin:torsion-j"])
    assert [r["verdict"] for r in report["result"]["reports"]] == ["disjoint", "disjoint"]
    assert code == 0


def test_inconclusive_exits_1():
    # with a tiny depth the triple side cannot be completed for this window
    report, code = _report(["local-test", "--p", "5", "--map", "const:-102400/3", "--m", "2", "--depth", "2"])
    verdicts = [r["verdict"] for r in report["result"]["reports"]]
    assert code == (1 if "inconclusive" in verdicts else 0)


def test_search_mismatch_is_impossible_but_reported():
    report, code = _report(["search", "--z-bound", "1", "--y-bound", "1"])
    assert report["result"]["count"] == "8" and code == 0


def test_map_file(tmp_path):
    f = tmp_path / "maps.json"
    f.write_text(json.dumps({"maps": [{"name": "square", "numerator": ["0", "0", "1"], "denominator": ["1"]}]}))
    report, code = _report(["local-test", "--p", "3", "--map", str(f), "--depth", "6"])
    assert report["result"]["reports"][0]["map"] == "square"
    assert code in (0, 1)


def test_moebius_map_file(tmp_path):
    # y^2 = x^3 - x has rational 2-torsion; g(z) = z^2 marked at the roots descends trivially
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"numerator": ["0", "0", "1"], "denominator": ["1"], "degree": 2,
                             "marked": ["-1", "0", "1"]}))
    report, code = _report(["moebius", "--curve", "x^3-x", "--map", str(f)])
    assert code == 0
    assert report["result"]["descended"]["numerator"] == ["0", "0", "1"]


@pytest.mark.parametrize("argv", [
    ["search", "--bogus"],
    ["nonsense"],
    ["verify", "--triple", "1,1,1"],
    ["fields", "--poly", "x^2-4"],
    ["local-test", "--p", "4", "--map", "builtin:j5"],
    ["local-test", "--p", "5", "--map", "/nonexistent.json"],
    ["torsion", "--delta", "0.5"],
    ["moebius", "--curve", "x^2+1"],
])
def test_invalid_input_exits_2(argv):
    proc = subprocess.run([sys.executable, "-m", "fermat2310", *argv], capture_output=True, text=True)
    assert proc.returncode == 2, proc.stderr


def test_malformed_map_file(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"numerator": ["1"]}))
    proc = subprocess.run([sys.executable, "-m", "fermat2310", "local-test", "--p", "5", "--map", str(f)],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "malformed" in proc.stderr


def test_human_output(capsys):
    assert main(["verify", "--triple", "3,-2,1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("verify") and "pass" in out


def test_worker_env(monkeypatch):
    monkeypatch.setenv("FERMAT2310_WORKERS", "2")
    report, _ = _report(["genus2", "--k", "243", "--height", "50"])
    assert report["result"]["points"] == [["3", "0"]]
