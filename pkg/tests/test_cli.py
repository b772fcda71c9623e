import json
import time

import pytest

from polynorm.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VIOLATION,
    cache_key,
    csv_header,
    main,
    run_check_suite,
)
from polynorm.catalog import bruns_gubeladze, cube


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_table_default(self, capsys):
        code, out, _ = run(capsys, "analyze", "bruns:4")
        assert code == EXIT_OK
        assert "k_P" in out and "regularity" in out
        assert "bounds k_P" in out

    def test_json_cube(self, capsys):
        code, out, _ = run(capsys, "analyze", "cube:3", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["k_P"] == 1
        assert data["volume_normalized"] == 6
        assert data["bound_targets"]["theorem"] == "k_P"

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "analyze", "cube:2", "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == ",".join(csv_header())
        assert lines[1].startswith("cube:2,2,4,4,2,")

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "analyze", "./missing.json")
        assert code == EXIT_INPUT
        assert "missing.json" in err

    def test_bad_family_parameters(self, capsys):
        code, _, err = run(capsys, "analyze", "bruns:2")
        assert code == EXIT_INPUT

    def test_require_kp_on_reeve(self, capsys):
        code, out, err = run(capsys, "analyze", "reeve", "--require-kp")
        assert code == EXIT_VIOLATION
        assert "not very ample" in err

    def test_file_inputs(self, capsys, tmp_path):
        jpath = tmp_path / "square.json"
        jpath.write_text('{"name": "sq", "vertices": [[0,0],[1,0],[0,1],[1,1]]}')
        code, out, _ = run(capsys, "analyze", str(jpath), "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["name"] == "sq"
        tpath = tmp_path / "square.txt"
        tpath.write_text("# square\n0 0\n1 0\n0 1\n1 1\n")
        code, out, _ = run(capsys, "analyze", str(tpath), "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["num_vertices"] == 4

    def test_non_full_dim_file(self, capsys, tmp_path):
        path = tmp_path / "flat.txt"
        path.write_text("0 0 0\n1 0 0\n0 1 0\n")
        code, _, err = run(capsys, "analyze", str(path))
        assert code == EXIT_INPUT
        assert "full-dimensional" in err


class TestCache:
    def test_transparent_and_byte_identical(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        _, plain, _ = run(capsys, "analyze", "bruns:4", "--format", "json")
        _, first, _ = run(capsys, "analyze", "bruns:4", "--format", "json",
                          "--cache-dir", str(cache))
        _, second, _ = run(capsys, "analyze", "bruns:4", "--format", "json",
                           "--cache-dir", str(cache))
        assert plain == first == second
        files = list(cache.glob("*.json"))
        assert len(files) == 1
        assert files[0].stem == cache_key(bruns_gubeladze(4))

    def test_version_mismatch_recomputes(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        run(capsys, "analyze", "cube:2", "--format", "json", "--cache-dir", str(cache))
        entry = next(cache.glob("*.json"))
        stored = json.loads(entry.read_text())
        stored["tool_version"] = "0.0.0"
        stored["value"]["k_P"] = 99
        entry.write_text(json.dumps(stored))
        _, out, _ = run(capsys, "analyze", "cube:2", "--format", "json",
                        "--cache-dir", str(cache))
        assert json.loads(out)["k_P"] == 1

    def test_env_cache_dir(self, capsys, tmp_path, monkeypatch):
        cache = tmp_path / "envcache"
        monkeypatch.setenv("POLYNORM_CACHE", str(cache))
        run(capsys, "analyze", "cube:2", "--format", "json")
        assert len(list(cache.glob("*.json"))) == 1


class TestMaxK:
    def test_env_cap_hit(self, capsys, monkeypatch):
        monkeypatch.setenv("POLYNORM_MAX_K", "2")
        code, _, err = run(capsys, "analyze", "bruns:6")
        assert code == EXIT_VIOLATION
        assert "max_k" in err

    def test_flag_overrides_env(self, capsys, monkeypatch):
        monkeypatch.setenv("POLYNORM_MAX_K", "2")
        code, _, _ = run(capsys, "analyze", "bruns:6", "--max-k", "30")
        assert code == EXIT_OK


class TestHoles:
    def test_bruns(self, capsys):
        code, out, _ = run(capsys, "holes", "bruns:4")
        assert code == EXIT_OK
        assert "k=2: 1 hole(s): (1, 1, 3)" in out

    def test_higashitani_counts(self, capsys):
        code, out, _ = run(capsys, "holes", "higashitani:3,2")
        assert "k=2: 2 hole(s)" in out

    def test_cube_no_holes(self, capsys):
        code, out, _ = run(capsys, "holes", "cube:3")
        assert code == EXIT_OK
        assert "hole(s)" not in out
        assert "no holes" in out

    def test_extended_range(self, capsys):
        code, out, _ = run(capsys, "holes", "cube:2", "--max-k", "4")
        assert out.count("no holes") == 4

    def test_non_very_ample_window(self, capsys):
        code, out, _ = run(capsys, "holes", "reeve")
        assert code == EXIT_OK
        assert "k_P = undefined" in out
        assert "k=2: 1 hole(s): (1, 1, 1)" in out


class TestCheck:
    def test_bruns5_all_pass(self, capsys):
        code, out, _ = run(capsys, "check", "bruns:5")
        assert code == EXIT_OK
        assert "FAIL" not in out

    def test_reeve_skips_kp_checks(self, capsys):
        code, out, _ = run(capsys, "check", "reeve")
        assert code == EXIT_OK
        assert "not very ample" in out
        assert "SKIP" in out

    def test_cube4_under_a_minute(self, capsys):
        start = time.monotonic()
        code, out, _ = run(capsys, "check", "cube:4")
        assert code == EXIT_OK
        assert time.monotonic() - start < 60

    def test_suite_importable(self, poly):
        results, ok = run_check_suite(poly("higashitani:3,1"))
        assert ok
        names = [name for _, name, _ in results]
        assert "theorem_equality_iff_normal" in names


class TestExplore:
    def test_dim2_zero_flags(self, capsys, tmp_path):
        store = tmp_path / "records.jsonl"
        code, out, _ = run(capsys, "explore", "--dim", "2", "--count", "25",
                           "--seed", "11", "--store", str(store))
        assert code == EXIT_OK
        assert "flagged=0" in out
        assert "reverify_failures=0" in out
        assert not store.exists()

    def test_deterministic_stream(self, capsys, tmp_path):
        args = ("explore", "--dim", "3", "--count", "10", "--seed", "1",
                "--bound", "2", "--store", str(tmp_path / "r.jsonl"))
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_bad_dim(self, capsys):
        code, _, err = run(capsys, "explore", "--dim", "5", "--count", "1")
        assert code == EXIT_INPUT


class TestGen:
    def test_roundtrip_through_analyze(self, capsys, tmp_path):
        code, out, _ = run(capsys, "gen", "bruns:4")
        assert code == EXIT_OK
        path = tmp_path / "bruns.txt"
        path.write_text(out)
        code, out2, _ = run(capsys, "analyze", str(path), "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out2)
        assert data["k_P"] == 3 and data["num_lattice_points"] == 8

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "gen", "dodecahedron:12")
        assert code == EXIT_INPUT
