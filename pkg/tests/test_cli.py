"""Command-line interface: exit codes, JSON artifacts, determinism."""

import json
import os
import subprocess
import sys

import pytest


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "immobilize2d", *args],
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.fixture()
def square_files(tmp_path):
    body = tmp_path / "square.json"
    r = run_cli("fixture", "--name", "square", "--body-out", str(body))
    assert r.returncode == 0
    corners = tmp_path / "corners.json"
    corners.write_text(json.dumps([
        {"element": 0, "param": "0"},
        {"element": 2, "param": "0"},
    ]))
    mids = tmp_path / "mids.json"
    mids.write_text(json.dumps([
        {"element": i, "param": "1/2"} for i in range(4)
    ]))
    return body, corners, mids


@pytest.fixture()
def remark_files(tmp_path):
    body = tmp_path / "remark_body.json"
    points = tmp_path / "remark_points.json"
    r = run_cli("fixture", "--name", "remark", "--body-out", str(body), "--points-out", str(points))
    assert r.returncode == 0
    summary = json.loads(r.stdout)
    assert summary["name"] == "remark"
    return body, points


def test_classify_exit_codes_cover_the_trichotomy(square_files, remark_files):
    sq, corners, _ = square_files
    remark_body, remark_points = remark_files

    r = run_cli("classify", "--mode", "fix", "--body", str(remark_body), "--points", str(remark_points), "--exact")
    assert r.returncode == 20
    doc = json.loads(r.stdout)
    assert doc["status"] == "FIRST_ORDER_INDETERMINATE"

    r = run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact")
    assert r.returncode == 10
    doc = json.loads(r.stdout)
    assert doc["status"] == "NOT_WEAKLY_FIX"
    assert doc["witness"]["kind"] == "rotation_center"

    r = run_cli("classify", "--mode", "almost", "--body", str(sq), "--points", str(corners), "--exact")
    assert r.returncode == 0
    assert json.loads(r.stdout)["status"] == "POSITIVE"


def test_classify_writes_out_file(square_files, tmp_path):
    sq, corners, _ = square_files
    out = tmp_path / "verdict.json"
    r = run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact", "--out", str(out))
    assert r.returncode == 10
    assert json.loads(out.read_text())["status"] == "NOT_WEAKLY_FIX"


def test_classify_timings_flag_adds_durations(square_files):
    sq, corners, _ = square_files
    plain = run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact")
    timed = run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact", "--timings")
    assert "durations" not in json.loads(plain.stdout)["metadata"]
    assert "durations" in json.loads(timed.stdout)["metadata"]


def test_exact_and_tol_are_mutually_exclusive(square_files):
    sq, corners, _ = square_files
    r = run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact", "--tol", "1/10")
    assert r.returncode == 2


def test_refine_exit_codes(square_files, remark_files):
    sq, corners, _ = square_files
    remark_body, remark_points = remark_files

    r = run_cli("refine", "--body", str(sq), "--points", str(corners), "--epsilon", "1/5")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["placement"]["delta"] == "1/10"
    assert doc["verdict"]["status"] == "POSITIVE"

    r = run_cli("refine", "--body", str(remark_body), "--points", str(remark_points), "--epsilon", "1/5")
    assert r.returncode == 11


def test_escape_reports_the_sliding_family(remark_files):
    body, points = remark_files
    r = run_cli("escape", "--body", str(body), "--points", str(points), "--samples", "300")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["escape"]["family"] == "translation"
    assert doc["escape"]["direction"]["y"] == "0"


def test_escape_exhausted_is_its_own_exit(square_files):
    sq, _, mids = square_files
    r = run_cli("escape", "--body", str(sq), "--points", str(mids), "--samples", "240")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["escape"] is None
    assert doc["body_is_disc"] is False


def test_fuzz_accepts_zero_and_rejects_out_of_range():
    assert run_cli("fuzz", "--trials", "0").returncode == 0
    r = run_cli("fuzz", "--trials", "-1")
    assert r.returncode == 1
    assert "OUT_OF_RANGE" in r.stderr
    r = run_cli("fuzz", "--trials", "100001")
    assert r.returncode == 1


def test_fuzz_small_run_is_clean_and_thread_invariant(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    r1 = run_cli("fuzz", "--trials", "20", "--seed", "5", "--out", str(out1), env_extra={"IMMOBILIZE2D_THREADS": "1"})
    r2 = run_cli("fuzz", "--trials", "20", "--seed", "5", "--out", str(out2), env_extra={"IMMOBILIZE2D_THREADS": "4"})
    assert r1.returncode == 0 and r2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert doc["trials"] == 20
    assert doc["violations"] == []


def test_render_produces_svg(square_files, tmp_path):
    sq, corners, _ = square_files
    verdict = tmp_path / "v.json"
    run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact", "--out", str(verdict))
    svg = tmp_path / "scene.svg"
    r = run_cli("render", "--body", str(sq), "--points", str(corners), "--verdict", str(verdict), "--svg", str(svg))
    assert r.returncode == 0
    text = svg.read_text()
    assert text.startswith("<svg")
    assert 'class="body"' in text
    assert 'class="contact"' in text
    assert 'class="witness"' in text


def test_render_window_validation(square_files, tmp_path):
    sq, _, _ = square_files
    svg = tmp_path / "x.svg"
    r = run_cli("render", "--body", str(sq), "--svg", str(svg), "--window", "1,2,3")
    assert r.returncode == 1 and "OUT_OF_RANGE" in r.stderr
    r = run_cli("render", "--body", str(sq), "--svg", str(svg), "--window", "2,0,1,1")
    assert r.returncode == 1 and "positive extent" in r.stderr


def test_missing_input_file_is_a_plain_error(square_files, tmp_path):
    sq, corners, _ = square_files
    r = run_cli("classify", "--mode", "fix", "--body", str(tmp_path / "nope.json"), "--points", str(corners), "--exact")
    assert r.returncode == 1
    assert "error" in r.stderr


def test_invalid_body_reports_validation_code(tmp_path, square_files):
    _, corners, _ = square_files
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "mode": "exact_polygon",
        "elements": [
            {"type": "segment", "a": {"x": "0", "y": "0"}, "b": {"x": "0", "y": "1"}},
            {"type": "segment", "a": {"x": "0", "y": "1"}, "b": {"x": "1", "y": "1"}},
            {"type": "segment", "a": {"x": "1", "y": "1"}, "b": {"x": "1", "y": "0"}},
            {"type": "segment", "a": {"x": "1", "y": "0"}, "b": {"x": "0", "y": "0"}},
        ],
    }))
    r = run_cli("classify", "--mode", "fix", "--body", str(bad), "--points", str(corners), "--exact")
    assert r.returncode == 1
    assert "NOT_CCW" in r.stderr


def test_repeated_runs_are_byte_identical(square_files, remark_files, tmp_path):
    sq, corners, _ = square_files
    remark_body, remark_points = remark_files

    v1 = run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact")
    v2 = run_cli("classify", "--mode", "fix", "--body", str(sq), "--points", str(corners), "--exact")
    assert v1.stdout == v2.stdout

    e1 = run_cli("escape", "--body", str(remark_body), "--points", str(remark_points), "--samples", "300", "--seed", "7")
    e2 = run_cli("escape", "--body", str(remark_body), "--points", str(remark_points), "--samples", "300", "--seed", "7")
    assert e1.stdout == e2.stdout

    s1 = tmp_path / "r1.svg"
    s2 = tmp_path / "r2.svg"
    run_cli("render", "--body", str(sq), "--points", str(corners), "--svg", str(s1))
    run_cli("render", "--body", str(sq), "--points", str(corners), "--svg", str(s2))
    assert s1.read_bytes() == s2.read_bytes()


def test_fixture_export_random_body_is_seed_stable(tmp_path):
    a = tmp_path / "ra.json"
    b = tmp_path / "rb.json"
    assert run_cli("fixture", "--name", "random", "--k", "6", "--seed", "9", "--body-out", str(a)).returncode == 0
    assert run_cli("fixture", "--name", "random", "--k", "6", "--seed", "9", "--body-out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()
