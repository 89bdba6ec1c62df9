import json

import numpy as np
import pytest

from fracsub import Cardinality, Knapsack, MMNLInstance, MultiRatioInstance, PChoiceInstance, Ratio
from fracsub.assortment import check_revenue_spread
from fracsub.cli import main
from fracsub.generate import random_mmnl, random_multiratio, random_pchoice
from fracsub import instance_io


def write_instance(path, inst):
    instance_io.save(path, inst)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_round_trip_is_bit_exact(tmp_path):
    rng = np.random.default_rng(3)
    cases = [
        random_multiratio(rng, 7, 3, "knapsack"),
        random_multiratio(rng, 5, 2, "cardinality"),
        random_mmnl(rng, 6, 3, region="cardinality"),
        random_pchoice(rng, 6, 2, 3, delta=0.3),
        # values that shortest-repr printing must not perturb
        MultiRatioInstance((Ratio([0.1, 1 / 3, 2 ** -40], 1e-300, [np.nextafter(1.0, 2.0), 7.0, 1e300]),),
                           Knapsack([0.1, 0.2, 0.3], 0.6)),
    ]
    for k, inst in enumerate(cases):
        path = tmp_path / f"i{k}.json"
        instance_io.save(path, inst)
        back = instance_io.load(path).instance
        assert back == inst if not isinstance(inst, MultiRatioInstance) else _same(back, inst)
        assert instance_io.dumps(instance_io.load(path)) == path.read_text()


def _same(x, y):
    assert x.region == y.region
    for r, s in zip(x.ratios, y.ratios, strict=True):
        assert r.a.tobytes() == s.a.tobytes()
        assert r.b.tobytes() == s.b.tobytes()
        assert r.b0 == s.b0
    return True


def test_certify_example(tmp_path, capsys):
    path = write_instance(tmp_path / "ex.json", MultiRatioInstance((Ratio([3, 2, 1], 2, [1, 1, 1]),)))
    code, out, _ = run(["certify", path], capsys)
    assert code == 0
    assert json.loads(out)["certification"]["summary"] == "submodular, not monotone"


def test_certify_homogeneous_obstruction(tmp_path, capsys):
    path = write_instance(tmp_path / "h.json", MultiRatioInstance((Ratio([1, 1, 1], 0, [1, 2, 4]),)))
    out_path = tmp_path / "report.json"
    code, out, _ = run(["certify", path, "--output", str(out_path)], capsys)
    assert code == 2 and out == ""
    rep = json.loads(out_path.read_text())["certification"]["ratios"][0]
    assert rep["verdict"] == "not_submodular"
    assert rep["witness"] is not None


def test_certify_zero_denominator_coefficient(tmp_path, capsys):
    doc = {"format_version": "1.0", "kind": "multiratio",
           "payload": {"ratios": [{"a": [1, 1], "b0": 1, "b": [1, 0]}]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["certify", str(path)], capsys)
    assert code == 1
    assert "payload.ratios[0]" in err and "b[2]" in err and "strictly positive" in err


def test_parse_error_reports_line(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "format_version": "1.0",\n  "kind": "multiratio"\n  "payload": {}\n}\n')
    code, _, err = run(["certify", str(path)], capsys)
    assert code == 1 and "line 4" in err


def test_missing_field_is_named(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"format_version": "1.0", "kind": "mmnl", "payload": {"p": [1]}}))
    code, _, err = run(["certify", str(path)], capsys)
    assert code == 1 and "'v0'" in err


def test_solve_example_both(tmp_path, capsys):
    path = write_instance(tmp_path / "ex.json", MultiRatioInstance((Ratio([3, 2, 1], 2, [1, 1, 1]),)))
    code, out, _ = run(["solve", path, "--method", "both"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["greedy"]["set"] == [1, 2]
    assert rep["greedy"]["value"] == pytest.approx(1.25, rel=1e-12)
    assert rep["greedy"]["trace"]["final_set"] == [1, 2, 3]
    assert rep["brute"]["value"] == pytest.approx(1.25, rel=1e-12)
    assert rep["empirical_ratio"] == 1.0
    assert rep["greedy"]["bound"] is None


def test_solve_single_item(tmp_path, capsys):
    path = write_instance(tmp_path / "one.json", MultiRatioInstance((Ratio([2.0], 1.0, [3.0]),)))
    rep = json.loads(run(["solve", path], capsys)[1])
    assert rep["greedy"]["set"] == rep["brute"]["set"] == [1]
    assert rep["empirical_ratio"] == 1.0


def test_solve_brute_guard(tmp_path, capsys):
    path = write_instance(tmp_path / "big.json", MultiRatioInstance((Ratio(np.ones(25), 1, np.ones(25)),)))
    code, _, err = run(["solve", path, "--method", "brute"], capsys)
    assert code == 1 and "n <= 24" in err
    assert run(["solve", path, "--method", "greedy"], capsys)[0] == 0


def test_solve_pchoice_and_mmnl(tmp_path, capsys):
    pc = write_instance(tmp_path / "pc.json", PChoiceInstance([1.0], [[1.0, 1.2, 1.1]], [1.0, 1.1, 1.05], 2))
    rep = json.loads(run(["solve", pc, "--delta", "0.8"], capsys)[1])
    assert rep["kind"] == "pchoice" and len(rep["result"]["set"]) == 2
    mm = write_instance(tmp_path / "mm.json", MMNLInstance([1.0], [9.0], [[1, 1, 1]], [1, 3, 5], Cardinality(2)))
    rep = json.loads(run(["solve", mm], capsys)[1])
    assert rep["cardinality_ratio_condition"]["holds"]
    assert rep["greedy"]["bound"]["factor"] == pytest.approx(1 - np.exp(-1))
    assert rep["empirical_ratio"] >= 1 - np.exp(-1)


def test_generate_is_deterministic(tmp_path, capsys):
    argv = ["generate", "mmnl", "--n", "6", "--m", "2", "--seed", "11", "--preset", "competitive"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second
    doc = json.loads(first)
    assert doc["generator"]["seed"] == 11 and doc["generator"]["rng"] == "numpy.random.PCG64"
    assert instance_io.loads(first).instance.n == 6
    assert run(["generate", "mmnl", "--n", "6", "--seed", "12"], capsys)[1] != first


def test_generate_pchoice_needs_p(capsys):
    assert run(["generate", "pchoice", "--n", "4", "--seed", "1"], capsys)[0] == 1


def test_generate_invalid_range(capsys):
    with pytest.raises(SystemExit):
        main(["generate", "mmnl", "--n", "4", "--v-range", "2,1"])
    capsys.readouterr()


def _spread_pass_rate(preset):
    passed = 0
    for seed in range(100):
        inst = random_mmnl(np.random.default_rng(seed), 10, 1, preset=preset)
        passed += check_revenue_spread(inst, 0).holds
    return passed / 100


def test_competitive_preset_mostly_passes_spread_check():
    assert _spread_pass_rate("competitive") >= 0.9


def test_monopoly_preset_mostly_fails_spread_check():
    assert _spread_pass_rate("monopoly") <= 0.1


def test_batch_exit_codes_match_verdicts(tmp_path, capsys):
    out = tmp_path / "runs"
    code, _, _ = run(["batch", "multiratio", "--n", "5", "--count", "12", "--seed", "40",
                      "--region", "cardinality", "--output", str(out)], capsys)
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert len(summary["runs"]) == 12
    seen = set()
    for row in summary["runs"]:
        path = out / f"multiratio-{row['seed']:06d}.json"
        code, _, _ = run(["certify", str(path)], capsys)
        assert code == row["exit_code"]
        assert code == {"submodular": 0, "monotone_submodular": 0, "not_submodular": 2, "inconclusive": 3}[row["verdict"]]
        seen.add(code)
        result = json.loads((out / f"multiratio-{row['seed']:06d}.result.json").read_text())
        assert result["certify"]["certification"]["verdict"] == row["verdict"]
    assert len(seen) > 1


def test_batch_mmnl_ratio_condition_bound(tmp_path, capsys):
    out = tmp_path / "mm"
    run(["batch", "mmnl", "--n", "6", "--count", "10", "--seed", "0", "--preset", "competitive",
         "--region", "cardinality", "--p", "3", "--output", str(out)], capsys)
    checked = 0
    for row in json.loads((out / "summary.json").read_text())["runs"]:
        res = json.loads((out / f"mmnl-{row['seed']:06d}.result.json").read_text())["solve"]
        if res["cardinality_ratio_condition"]["holds"]:
            checked += 1
            assert row["empirical_ratio"] >= 1 - np.exp(-1)
    assert checked > 0
