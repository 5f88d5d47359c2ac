import json
import subprocess
import sys

import pytest

from qsurf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_torus_human(self, capsys):
        code, out, _ = run(capsys, "classify", "abAB")
        assert code == 0
        assert out == "orientable genus 1, invariant (2,0), chi=0, vertex classes 1\n"

    def test_projective_plane_json(self, capsys):
        code, out, _ = run(capsys, "classify", "aa", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["kind"] == "non-orientable"
        assert (data["n"], data["k"]) == (1, 1)
        assert data["invariant"] == [1, 1]

    def test_sphere(self, capsys):
        code, out, _ = run(capsys, "classify", "aA", "--json")
        assert json.loads(out)["invariant"] == [1, -1]

    def test_unsupported_exit_2(self, capsys):
        code, _, err = run(capsys, "classify", "abab")
        assert code == 2
        assert "2 vertex classes" in err

    def test_parse_error_exit_1(self, capsys):
        code, _, err = run(capsys, "classify", "a#b")
        assert code == 1
        assert "offset 1" in err

    def test_not_paired_exit_2(self, capsys):
        code, _, err = run(capsys, "classify", "aba")
        assert code == 2


class TestKgroups:
    def test_torus(self, capsys):
        code, out, _ = run(capsys, "kgroups", "abAB")
        assert code == 0
        data = json.loads(out)
        assert data["k0"] == {"free_rank": 2, "torsion": []}
        assert data["k1"] == {"free_rank": 2, "torsion": []}
        assert len(data["k1_generators"]) == 2

    def test_sphere(self, capsys):
        code, out, _ = run(capsys, "kgroups", "aA")
        data = json.loads(out)
        assert data["k0"] == {"free_rank": 2, "torsion": []}
        assert data["k1"] == {"free_rank": 0, "torsion": []}

    def test_three_pairs(self, capsys):
        code, out, _ = run(capsys, "kgroups", "aabcbC")
        data = json.loads(out)
        assert data["k0"] == {"free_rank": 1, "torsion": [2]}
        assert data["k1"] == {"free_rank": 2, "torsion": []}

    def test_unsupported(self, capsys):
        code, _, _ = run(capsys, "kgroups", "abab")
        assert code == 2


class TestIso:
    def test_quantum_true(self, capsys):
        code, out, _ = run(capsys, "iso", "abaB", "abAb")
        assert (code, out) == (0, "true\n")

    def test_quantum_false_classical_true(self, capsys):
        _, out, _ = run(capsys, "iso", "aabb", "abaB")
        assert out == "false\n"
        _, out, _ = run(capsys, "iso", "aabb", "abaB", "--classical")
        assert out == "true\n"

    def test_json(self, capsys):
        _, out, _ = run(capsys, "iso", "abAB", "baBA", "--json")
        data = json.loads(out)
        assert data["mode"] == "quantum"
        assert data["invariants"] == [[2, 0], [2, 0]]
        assert data["isomorphic"] is True


class TestWindings:
    def test_combinatorial(self, capsys):
        code, out, _ = run(capsys, "windings", "abaB")
        assert code == 0
        assert out == "per_circle (2, 0)\naround_zero 2\n"

    def test_numeric_match(self, capsys):
        code, out, _ = run(capsys, "windings", "aabb", "--samples", "1024", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["numeric_per_circle"] == [2, 2]
        assert data["match"] is True

    def test_bad_samples_exit_4(self, capsys):
        code, _, _ = run(capsys, "windings", "aa", "--samples", "4")
        assert code == 4

    def test_unsupported(self, capsys):
        code, _, _ = run(capsys, "windings", "abab")
        assert code == 2


class TestSpectrum:
    def test_torus_csv(self, capsys, tmp_path):
        out_path = tmp_path / "s.csv"
        code, out, _ = run(capsys, "spectrum", "abAB", "--dim", "64", "--out", str(out_path))
        assert code == 0
        dev = float(out.splitlines()[0].split()[1])
        assert dev <= 1e-9
        lines = out_path.read_text().splitlines()
        assert lines[0] == "re,im,block,deviation,kind"
        kinds = {line.split(",")[-1] for line in lines[1:]}
        assert kinds == {"eigenvalue", "symbol"}

    def test_crosscap_artifacts_flagged(self, capsys, tmp_path):
        out_path = tmp_path / "s.csv"
        code, _, _ = run(capsys, "spectrum", "aa", "--dim", "16", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()[1:]
        artifact = [l for l in lines if l.endswith(",artifact")]
        assert len(artifact) == 16
        assert all(l.split(",")[3] == "" for l in artifact)
        assert any(l.endswith(",symbol") for l in lines)

    def test_low_dim_exit_4(self, capsys, tmp_path):
        code, _, _ = run(capsys, "spectrum", "abAB", "--dim", "2", "--out", str(tmp_path / "s.csv"))
        assert code == 4

    def test_multi_vertex_exit_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "spectrum", "abab", "--dim", "8", "--out", str(tmp_path / "s.csv"))
        assert code == 2

    def test_sphere_exit_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "spectrum", "aA", "--dim", "8", "--out", str(tmp_path / "s.csv"))
        assert code == 2


class TestVerify:
    def test_small_run_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "32")
        assert code == 0
        assert "24/24 checks passed" in out.splitlines()[-1]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "16", "--json")
        data = json.loads(out)
        assert data["passed"] is True
        assert len(data["checks"]) == 24

    def test_low_dim_exit_4(self, capsys):
        code, _, _ = run(capsys, "verify", "--dim", "2")
        assert code == 4

    def test_forced_failure_exit_3(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "16", "--corrupt-weight")
        assert code == 3
        assert any(line.startswith("FAIL") and "Bergman" in line for line in out.splitlines())


class TestHarness:
    def test_unknown_flag_exit_4(self, capsys):
        code, _, err = run(capsys, "classify", "aa", "--frobnicate")
        assert code == 4

    def test_deterministic_stdout(self, capsys):
        _, out1, _ = run(capsys, "kgroups", "aabb")
        _, out2, _ = run(capsys, "kgroups", "aabb")
        assert out1 == out2
        _, out1, _ = run(capsys, "verify", "--dim", "16")
        _, out2, _ = run(capsys, "verify", "--dim", "16")
        assert out1 == out2

    def test_fast_on_long_words(self, capsys):
        import time

        from qsurf.words import render, standard_word

        word = render(standard_word(100, 50))  # 200 occurrences
        start = time.perf_counter()
        for argv in (
            ["classify", word],
            ["kgroups", word],
            ["iso", word, word],
            ["windings", word],
        ):
            assert main(argv) == 0
        capsys.readouterr()
        assert time.perf_counter() - start < 1.0

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qsurf", "classify", "abAB"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "orientable genus 1" in proc.stdout

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
