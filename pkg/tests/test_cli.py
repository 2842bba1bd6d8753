"""Command-line interface and CSV round-trips."""

import json
import os

import numpy as np
import pytest

from rankenv import CurveSet, GpConfig, detect_first, extract, inject_outlier, simulate_gp
from rankenv.cli import main
from rankenv.csvio import read_curves, read_envelope, read_study, write_curves
from rankenv.errors import InvalidInputError


def _write_iid_curves(path, seed=1, s=20, d=20, shift=None):
    pool = simulate_gp(GpConfig(scale=0.0, seed=seed), s)
    cs = extract(pool, s, d)
    if shift is not None:
        v = cs.values.copy()
        v[0] += shift
        cs = CurveSet(v, cs.grid)
    write_curves(path, cs)
    return cs


# --- curve CSV round-trip ---------------------------------------------------

def test_curves_roundtrip_is_exact(tmp_path):
    path = tmp_path / "curves.csv"
    cs = _write_iid_curves(path, seed=7, s=9, d=25)
    back = read_curves(path)
    assert np.array_equal(back.values, cs.values)
    assert np.array_equal(back.grid, cs.grid)


def test_read_curves_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,header\n1,2,3\n")
    with pytest.raises(InvalidInputError):
        read_curves(bad)
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("x,0.5,1.0\ncurve_1,1.0,2.0\ncurve_2,3.0\n")
    with pytest.raises(InvalidInputError):
        read_curves(ragged)
    words = tmp_path / "words.csv"
    words.write_text("x,0.5,1.0\ncurve_1,one,two\n")
    with pytest.raises(InvalidInputError):
        read_curves(words)


# --- envelope command -------------------------------------------------------

def test_envelope_exit_zero_and_summary(tmp_path, capsys):
    src = tmp_path / "curves.csv"
    out = tmp_path / "env.csv"
    _write_iid_curves(src, seed=1)
    code = main(["envelope", str(src), "--measure", "erl", "--output", str(out)])
    summary = json.loads(capsys.readouterr().out)
    assert code in (0, 2)
    assert summary["measure"] == "erl"
    assert summary["alpha"] == 0.05
    assert summary["s"] == 20 and summary["d"] == 20
    assert len(summary["extreme_indices"]) <= 1  # alpha*s = 1
    assert (code == 2) == (1 in summary["extreme_indices"])
    x, lower, upper, central = read_envelope(out)
    assert np.all(lower <= central) and np.all(central <= upper)
    assert x.tolist() == pytest.approx((np.arange(1, 21) / 20).tolist())


@pytest.mark.parametrize("measure", ["erl", "cont", "area", "qdir"])
def test_envelope_dominant_outlier_exits_two(tmp_path, capsys, measure):
    src = tmp_path / "curves.csv"
    _write_iid_curves(src, seed=2, shift=100.0)
    code = main(["envelope", str(src), "--measure", measure])
    summary = json.loads(capsys.readouterr().out)
    assert code == 2
    assert 1 in summary["extreme_indices"]


def test_envelope_rank_stays_conservative_on_upward_outlier(tmp_path, capsys):
    # curve 1 shares extreme rank 1 with every pointwise-minimum curve, so
    # the weakly ordered rank measure cannot single it out at alpha*s = 1
    src = tmp_path / "curves.csv"
    _write_iid_curves(src, seed=2, shift=100.0)
    code = main(["envelope", str(src), "--measure", "rank"])
    summary = json.loads(capsys.readouterr().out)
    assert code == 0
    assert summary["extreme_indices"] == []


def test_envelope_error_exits_one(tmp_path, capsys):
    code = main(["envelope", str(tmp_path / "nope.csv")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_bad_flags_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["envelope", "x.csv", "--measure", "banana"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["study", "--output", "x.csv"])  # --seed is required
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


# --- simulate command -------------------------------------------------------

def test_simulate_writes_expected_shape(tmp_path):
    out = tmp_path / "sim.csv"
    code = main(["simulate", "--s", "20", "--d", "20", "--scale", "0",
                 "--outlier", "none", "--seed", "1", "--output", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 21
    assert lines[0].startswith("x,")
    assert lines[1].startswith("curve_1,")


def test_simulate_deterministic_files(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["simulate", "--s", "6", "--d", "100", "--scale", "0.1",
            "--outlier", "maximum", "--seed", "33"]
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_outlier_difference(tmp_path):
    base, spiked = tmp_path / "base.csv", tmp_path / "spiked.csv"
    common = ["simulate", "--s", "5", "--d", "50", "--scale", "0", "--seed", "4"]
    main(common + ["--outlier", "none", "--output", str(base)])
    main(common + ["--outlier", "integral", "--output", str(spiked)])
    a, b = read_curves(base), read_curves(spiked)
    x = a.grid
    np.testing.assert_array_equal(b.values[0], a.values[0] + 5 * x * (1 - x))
    assert np.array_equal(b.values[1:], a.values[1:])


def test_simulate_without_seed_reports_it(tmp_path, capsys):
    out = tmp_path / "sim.csv"
    code = main(["simulate", "--s", "3", "--d", "10", "--output", str(out)])
    assert code == 0
    assert "seed:" in capsys.readouterr().err
    assert out.exists()


def test_simulate_rejects_bad_resolution(tmp_path, capsys):
    code = main(["simulate", "--s", "3", "--d", "33", "--seed", "1",
                 "--output", str(tmp_path / "x.csv")])
    assert code == 1
    assert not (tmp_path / "x.csv").exists()


# --- pipeline equivalence ---------------------------------------------------

def test_simulate_envelope_pipeline_matches_detect_first(tmp_path, capsys):
    """The file-based route and the in-memory harness route agree."""
    for seed in (5, 6, 7, 8):
        src = tmp_path / f"sim{seed}.csv"
        main(["simulate", "--s", "20", "--d", "100", "--scale", "0.1",
              "--outlier", "integral", "--seed", str(seed), "--output", str(src)])
        pool = simulate_gp(GpConfig(scale=0.1, seed=seed), 20)
        cell = extract(inject_outlier(pool, "integral"), 20, 100)
        for measure in ("erl", "qdir"):
            code = main(["envelope", str(src), "--measure", measure])
            capsys.readouterr()
            assert (code == 2) == detect_first(cell, measure, 0.05)


# --- study command ----------------------------------------------------------

def test_study_writes_full_grid(tmp_path, capsys):
    out = tmp_path / "study.csv"
    code = main(["study", "--seed", "3", "--output", str(out),
                 "--s-list", "10,20", "--d-list", "20", "--scale-list", "0",
                 "--outliers", "none", "--measures", "rank,erl", "--reps", "3"])
    assert code == 0
    assert "progress" in capsys.readouterr().err
    rows = read_study(out)
    assert len(rows) == 2 * 1 * 1 * 1 * 2
    assert {r["master_seed"] for r in rows} == {3}
    assert {r["alpha"] for r in rows} == {0.05}
    for r in rows:
        assert r["power"] == r["detections"] / r["reps"]


def test_study_desk_profile(tmp_path, capsys):
    out = tmp_path / "desk.csv"
    code = main(["study", "--seed", "5", "--output", str(out), "--profile", "desk",
                 "--reps", "1", "--measures", "rank", "--outliers", "none",
                 "--scale-list", "0"])
    assert code == 0
    capsys.readouterr()
    rows = read_study(out)
    assert {r["s"] for r in rows} == {20, 40, 80, 160, 320, 640}
    assert {r["d"] for r in rows} == {20, 100, 500}
    assert {r["reps"] for r in rows} == {1}


def test_study_threads_do_not_change_bytes(tmp_path, capsys):
    common = ["study", "--seed", "9", "--s-list", "8,12", "--d-list", "25",
              "--scale-list", "0,0.1", "--outliers", "integral",
              "--measures", "erl,qdir", "--reps", "4"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(common + ["--output", str(a), "--threads", "1"]) == 0
    assert main(common + ["--output", str(b), "--threads", "2"]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_study_output_is_atomic(tmp_path, capsys):
    target = tmp_path / "isdir.csv"
    target.mkdir()
    code = main(["study", "--seed", "1", "--output", str(target),
                 "--s-list", "5", "--d-list", "10", "--scale-list", "0",
                 "--outliers", "none", "--measures", "rank", "--reps", "1"])
    assert code == 1
    # no stray temp files left behind
    assert [p.name for p in tmp_path.iterdir()] == ["isdir.csv"]
    capsys.readouterr()


# --- summarize command ------------------------------------------------------

@pytest.fixture()
def study_csv(tmp_path):
    out = tmp_path / "study.csv"
    main(["study", "--seed", "21", "--output", str(out),
          "--s-list", "10,20", "--d-list", "20,50", "--scale-list", "0,0.1",
          "--outliers", "none,integral", "--measures", "rank,erl", "--reps", "2"])
    return out


def test_summarize_blocks_and_filters(study_csv, capsys):
    assert main(["summarize", str(study_csv)]) == 0
    full = capsys.readouterr().out
    assert full.count("outlier=") == 2 * 2 * 2 * 2  # (outlier, d, scale, measure)
    assert main(["summarize", str(study_csv), "--outlier", "integral",
                 "--d", "50", "--measure", "erl"]) == 0
    filtered = capsys.readouterr().out
    assert filtered.count("outlier=") == 2  # two scales remain
    assert "measure=rank" not in filtered


def test_summarize_json(study_csv, capsys):
    assert main(["summarize", str(study_csv), "--json", "--scale", "0.1"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 2 * 2 * 1 * 2 * 2
    assert all(r["scale"] == 0.1 for r in rows)
    # deterministic ordering: outlier, d, scale, measure, s
    keys = [(r["outlier"], r["d"], r["scale"], r["measure"], r["s"]) for r in rows]
    assert keys == sorted(keys, key=lambda t: (("none", "integral", "maximum").index(t[0]),
                                               t[1], t[2],
                                               ("rank", "erl", "cont", "area", "qdir").index(t[3]),
                                               t[4]))


def test_summarize_rejects_malformed_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("just,some,columns\n1,2,3\n")
    assert main(["summarize", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_summarize_is_pure(study_csv, capsys):
    main(["summarize", str(study_csv)])
    first = capsys.readouterr().out
    main(["summarize", str(study_csv)])
    assert capsys.readouterr().out == first
