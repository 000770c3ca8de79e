import io
import json

import pytest

from dcaq import cli
from dcaq.scenario_io import document_to_dict, load_document, render_document


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def machine(*argv):
    code, out, err = run(*argv, "--output", "machine")
    assert code == 0, err
    return json.loads(out), out


def test_compute_illustration1_human():
    code, out, _ = run("compute", "illustration1")
    assert code == 0
    assert "2883.5756" in out
    stage_rows = [line for line in out.splitlines() if line.strip().split(" ")[0] in ("t1", "t2", "t3", "t4")]
    assert [r.split()[0] for r in stage_rows] == ["t1", "t2", "t3"]
    assert "83230 ns = 83.23 us" in out
    assert "good organizedness, high responsiveness" in out


def test_compute_illustration2_table():
    code, out, _ = run("compute", "illustration2")
    assert code == 0
    rows = {line.split()[0]: line.split() for line in out.splitlines()
            if line.strip()[:2] in ("t1", "t2", "t3", "t4", "t5", "t6")}
    assert sorted(rows) == ["t1", "t2", "t3", "t4", "t5", "t6"]
    assert rows["t5"][:3] == ["t5", "4096", "0.1"] and rows["t5"][6] == "40960"
    assert rows["t3"][6] == "17.2"
    assert "147217.2 ns" in out and "203.78054" in out
    assert "override 3 ns applied" in out


def test_compute_without_override_flags_deviation():
    code, out, _ = run("compute", "illustration2", "--no-ts-override")
    assert code == 0
    assert "20.378054" in out
    assert "ignored" in out and "deviates" in out


def test_global_flag_before_subcommand():
    code, out, _ = run("--no-ts-override", "compute", "illustration2")
    assert code == 0 and "20.378054" in out


def test_compute_machine_fields():
    data, text = machine("compute", "illustration1")
    assert data["result.dcaq"] == pytest.approx(2883.5756337858943)
    assert data["result.stage.t1_ns"] == 1280
    assert data["result.ts_nanoseconds"] == pytest.approx(1.2)
    assert data["result.classification.organizedness"] == "good"
    assert data["input.component.bits"] == 4096
    # 17 significant digits
    assert '"input.doocl.iteration_time_ns": 0.29999999999999999' in text


def test_compute_machine_without_override():
    data, _ = machine("compute", "illustration2", "--no-ts-override")
    assert data["result.ts_override_ignored"] is True
    assert data["result.declared_ts_override_ns"] == 3
    assert data["result.dcaq"] == pytest.approx(20.378, abs=1e-3)


def test_compute_parse_error_exit_code(tmp_path):
    data = document_to_dict(load_document("illustration1"))
    data["environment"]["client"]["hit_ratio"] = 1.3
    import yaml
    bad = tmp_path / "bad.yaml"
    bad.write_text(yaml.safe_dump(data))
    code, out, err = run("compute", str(bad))
    assert code == 2 and out == ""
    assert "environment.client.hit_ratio" in err


def test_missing_file_is_parse_error():
    code, _, err = run("compute", "definitely-missing.yaml")
    assert code == 2 and "no such scenario" in err


@pytest.mark.parametrize("argv", [[], ["bogus"], ["compute"], ["compare", "illustration1"],
                                  ["simulate", "illustration2", "--trials", "x"]])
def test_usage_errors_exit_1(argv):
    code, _, _ = run(*argv)
    assert code == 1


def test_compare_ranks_local_first():
    code, out, _ = run("compare", "illustration2", "illustration1")
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line.strip()[:1].isdigit()]
    assert [r[1] for r in rows] == ["illustration1", "illustration2"]


def test_compare_identical_scenarios_prints_both():
    code, out, _ = run("compare", "illustration1", "illustration1")
    assert code == 0
    assert out.count("illustration1") == 2


def test_compare_ranks_by_sublibrary_count(tmp_path):
    import yaml
    paths = []
    for n_s in (10, 1, 5):
        data = document_to_dict(load_document("illustration1"))
        data["label"] = f"ns{n_s:02d}"
        data["doocl"]["sublibrary_count"] = n_s
        p = tmp_path / f"ns{n_s}.yaml"
        p.write_text(yaml.safe_dump(data))
        paths.append(str(p))
    data, _ = machine("compare", *paths)
    assert [data[f"rank.{i}.label"] for i in (1, 2, 3)] == ["ns01", "ns05", "ns10"]


def test_simulate_is_byte_identical():
    _, a = machine("simulate", "illustration2_uniform", "--trials", "1000", "--seed", "1")
    _, b = machine("simulate", "illustration2_uniform", "--trials", "1000", "--seed", "1")
    assert a == b
    _, c = machine("simulate", "illustration2_uniform", "--trials", "1000", "--seed", "2")
    assert a != c


def test_simulate_fixed_rate_warns():
    code, out, err = run("simulate", "illustration2", "--trials", "20")
    assert code == 0
    assert "warning" in err and "identical" in err
    assert "stddev 0" in out


def test_simulate_human():
    code, out, _ = run("simulate", "illustration2_uniform", "--trials", "200", "--seed", "4")
    assert code == 0 and "p95" in out and "seed 4" in out


def test_validate_small_run():
    code, out, _ = run("validate", "--max-n", "32", "--replay-cases", "100")
    assert code == 0
    assert out.count("PASS") == 4


def test_validate_injected_fault_exits_3(monkeypatch):
    from dcaq import organizedness
    real = organizedness.search_iterations
    monkeypatch.setattr(organizedness, "search_iterations", lambda org, n: real(org, n) + (n == 17))
    code, out, _ = run("validate", "--max-n", "20", "--replay-cases", "10")
    assert code == 3
    assert "FAIL" in out


def test_validate_machine():
    data, _ = machine("validate", "--max-n", "8", "--replay-cases", "10")
    assert data["passed"] is True
    assert data["suite.search-count/sorted_sequential_list.checked"] == 8


def test_render_round_trip_via_file(tmp_path):
    p = tmp_path / "copy.yaml"
    p.write_text(render_document(load_document("illustration2")))
    code, out, _ = run("compute", str(p))
    assert code == 0 and "203.78054" in out


def test_dump_machine_formats():
    text = cli.dump_machine([("a", 0.1), ("b", 3), ("c", None), ("d", True), ("e", "x")])
    assert text == '{\n  "a": 0.10000000000000001,\n  "b": 3,\n  "c": null,\n  "d": true,\n  "e": "x"\n}\n'
