import subprocess
import sys

import pytest

from nbmine import canonical_key, frequent_paths
from nbmine.cli import run
from nbmine.oracle import toy_db_tsv
from nbmine.pattern import parse_patterns


@pytest.fixture
def toy_files(tmp_path):
    vl, ed = toy_db_tsv()
    vp = tmp_path / "labels.tsv"
    ep = tmp_path / "edges.tsv"
    vp.write_text(vl)
    ep.write_text(ed)
    return str(vp), str(ep)


def parse(text, g):
    return parse_patterns(
        text,
        {n: i for i, n in enumerate(g.vertex_label_vocab)},
        {n: i for i, n in enumerate(g.edge_label_vocab)},
    )


def test_ratio_output(toy_files, tmp_path, toy, tp):
    out = tmp_path / "out.txt"
    stats = tmp_path / "stats.txt"
    argv = [*toy_files, "--min-ratio", "0.5", "--pivot-label", "Author", "--max-size", "3"]
    assert run(argv + ["--output", str(out), "--stats", str(stats)]) == 0
    got = {canonical_key(pp.pattern): pp.ratio for pp in parse(out.read_text(), toy)}
    assert got[canonical_key(tp.self_cite)] == 0.5
    assert got[canonical_key(tp.two_papers)] == 0.75
    assert "P 3 2 0.500" in out.read_text()
    lines = stats.read_text().splitlines()
    assert lines[1].startswith("level=1 candidates=")
    assert any(l.startswith("level=3 ") for l in lines)
    assert lines[-1].startswith("path=")


def test_threshold_modes_are_exclusive(toy_files, capsys):
    assert run([*toy_files, "--min-support", "2", "--min-ratio", "0.5"]) == 2
    assert "not allowed" in capsys.readouterr().err


def test_threshold_required(toy_files):
    assert run(list(toy_files)) == 2


@pytest.mark.parametrize("flag", [["--max-size", "0"], ["--vid", "maybe"], ["--min-ratio", "1.5"]])
def test_bad_values(toy_files, flag):
    argv = [*toy_files] + (flag if "--min-ratio" in flag else ["--min-support", "2"] + flag)
    assert run(argv) == 2


def test_unknown_pivot_label(toy_files):
    assert run([*toy_files, "--min-ratio", "0.5", "--pivot-label", "Venue"]) == 2


def test_loop_edge_is_exit_1(tmp_path, capsys):
    vp = tmp_path / "l.tsv"
    ep = tmp_path / "e.tsv"
    vp.write_text("a\tX\n")
    ep.write_text("a\tb\tr\nb\tb\tr\n")
    assert run([str(vp), str(ep), "--min-support", "1"]) == 1
    assert "e.tsv:2:" in capsys.readouterr().err


def test_missing_file_is_exit_1(tmp_path):
    assert run([str(tmp_path / "no"), str(tmp_path / "pe"), "--min-support", "1"]) == 1


def test_paths_mode(toy_files, tmp_path, toy):
    out = tmp_path / "out.txt"
    assert run([*toy_files, "--min-support", "2", "--mode", "paths", "--output", str(out)]) == 0
    got = {(canonical_key(pp.pattern), pp.support) for pp in parse(out.read_text(), toy)}
    want = {(canonical_key(p.to_pattern()), len(v)) for p, v in frequent_paths(toy, 2, 4)}
    assert got == want


def test_vid_flag_same_output(toy_files, capsys):
    assert run([*toy_files, "--min-support", "1", "--vid", "on"]) == 0
    on = capsys.readouterr().out
    assert run([*toy_files, "--min-support", "1", "--vid", "off"]) == 0
    assert capsys.readouterr().out == on


def test_deterministic_subprocess(toy_files):
    cmd = [sys.executable, "-m", "nbmine", *toy_files, "--min-support", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"P 1 ")
