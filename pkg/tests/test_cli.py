"""End-to-end tests of the command-line front end.

Everything drives census.cli.main() in-process (capsys catches the
streams); one subprocess smoke test checks the installed entry point.
"""

import json
import subprocess
import sys

import pytest

import census.pipeline as pipeline
import census.zeta as zeta
from census.cli import main
from census.pipeline import ENGINE_VERSION, KacResult
from census.ring import FactoredRat
from fractions import Fraction


@pytest.fixture(autouse=True)
def _isolated(monkeypatch):
    # the suite must not pick up a developer's cache via the environment,
    # and main() mutates the module-level jobs bound
    monkeypatch.delenv("CENSUS_CACHE", raising=False)
    yield
    pipeline.set_jobs(1)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_curve(tmp_path, name="curve.json",
                blob={"q": 2, "genus": 1, "point_counts": [3]}):
    path = tmp_path / name
    path.write_text(json.dumps(blob))
    return str(path)


class TestGoldens:
    def test_rank1_latex(self, capsys):
        code, out, err = run_cli(capsys, "--format", "latex", "kac",
                                 "--genus", "1", "--rank", "1",
                                 "--degree", "0")
        assert code == 0
        assert out == "(1-\\alpha_1)(1-\\alpha_2)\n"
        assert err == ""

    def test_constant_term_value(self, capsys):
        code, out, _ = run_cli(capsys, "constant-term", "--genus", "3",
                               "--rank", "3", "--degree", "1")
        assert code == 0
        assert out == "15\n"

    def test_count_elliptic(self, capsys, tmp_path):
        path = write_curve(tmp_path)
        code, out, _ = run_cli(capsys, "count", "--rank", "1",
                               "--degree", "0", "--curve", path)
        assert code == 0
        assert out == "indecomposables 3\nhiggs_points 6\n"

    def test_entry_point(self):
        proc = subprocess.run(
            ["census", "--format", "latex", "kac", "-g", "1", "-r", "1"],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
        assert proc.stdout == "(1-\\alpha_1)(1-\\alpha_2)\n"


class TestJson:
    def test_kac_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "kac",
                               "-g", "1", "-r", "2", "-d", "1")
        assert code == 0
        blob = json.loads(out)
        assert blob["provenance"]["engine"] == ENGINE_VERSION
        res = KacResult.from_json(blob)
        assert res.to_json() == blob
        direct = pipeline.kac_polynomial(1, 2, 1)
        assert res.value == direct.value
        assert res.lifted == direct.lifted
        assert res.is_d_independent == direct.is_d_independent

    def test_degree_reduced_mod_rank(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "kac",
                               "-g", "1", "-r", "2", "-d", "5")
        assert code == 0
        assert json.loads(out)["degree_class"] == 1

    def test_constant_term_json(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "constant-term",
                               "-g", "2", "-r", "2", "-d", "0")
        assert code == 0
        blob = json.loads(out)
        assert Fraction(blob["constant_term"]) == pipeline.constant_term(2, 2, 0)

    def test_betti_json_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "betti",
                               "-g", "1", "-r", "1", "-d", "0")
        assert code == 0
        blob = json.loads(out)
        assert blob["polynomial"]["kind"] == "polynomial"
        p = pipeline.poly_from_json(blob["polynomial"])
        assert p == pipeline.betti_polynomial(1, 1, 0)

    def test_count_json(self, capsys, tmp_path):
        path = write_curve(tmp_path)
        code, out, _ = run_cli(capsys, "--format", "json", "count",
                               "-r", "1", "-d", "0", "--curve", path)
        assert code == 0
        blob = json.loads(out)
        assert blob["indecomposables"] == 3
        assert blob["higgs_points"] == 6

    def test_count_json_omits_higgs_when_not_coprime(self, capsys, tmp_path):
        path = write_curve(tmp_path)
        code, out, _ = run_cli(capsys, "--format", "json", "count",
                               "-r", "2", "-d", "0", "--curve", path)
        assert code == 0
        assert "higgs_points" not in json.loads(out)


class TestCache:
    def test_warm_run_byte_identical(self, capsys, tmp_path, monkeypatch):
        args = ("--format", "json", "--cache-dir", str(tmp_path),
                "kac", "-g", "1", "-r", "1", "-d", "0")
        code, cold, _ = run_cli(capsys, *args)
        assert code == 0
        assert (tmp_path / "kac_g1_r1_d0.json").exists()

        def bomb(*a, **k):
            raise AssertionError("cache miss on a warm run")

        monkeypatch.setattr(pipeline, "kac_polynomial", bomb)
        code, warm, _ = run_cli(capsys, *args)
        assert code == 0
        assert warm == cold

    def test_warm_run_byte_identical_text(self, capsys, tmp_path, monkeypatch):
        args = ("--cache-dir", str(tmp_path),
                "kac", "-g", "0", "-r", "1", "-d", "0")
        code, cold, _ = run_cli(capsys, *args)
        assert code == 0
        monkeypatch.setattr(pipeline, "kac_polynomial",
                            lambda *a: pytest.fail("recomputed"))
        code, warm, _ = run_cli(capsys, *args)
        assert code == 0
        assert warm == cold

    def test_env_var_overrides_flag(self, capsys, tmp_path, monkeypatch):
        env_dir = tmp_path / "env"
        flag_dir = tmp_path / "flag"
        env_dir.mkdir()
        flag_dir.mkdir()
        monkeypatch.setenv("CENSUS_CACHE", str(env_dir))
        code, _, _ = run_cli(capsys, "--cache-dir", str(flag_dir),
                             "kac", "-g", "1", "-r", "1")
        assert code == 0
        assert (env_dir / "kac_g1_r1_d0.json").exists()
        assert not list(flag_dir.iterdir())

    def test_stale_engine_stamp_forces_recompute(self, capsys, tmp_path):
        path = tmp_path / "kac_g1_r1_d0.json"
        path.write_text(json.dumps({"engine": "0.0",
                                    "result": {"genus": 99}}))
        code, out, _ = run_cli(capsys, "--format", "json",
                               "--cache-dir", str(tmp_path),
                               "kac", "-g", "1", "-r", "1")
        assert code == 0
        assert json.loads(out)["genus"] == 1
        assert json.loads(path.read_text())["engine"] == ENGINE_VERSION

    def test_corrupt_cache_file_recomputes(self, capsys, tmp_path):
        path = tmp_path / "kac_g1_r1_d0.json"
        path.write_text("{not json")
        code, out, _ = run_cli(capsys, "--format", "json",
                               "--cache-dir", str(tmp_path),
                               "kac", "-g", "1", "-r", "1")
        assert code == 0
        assert json.loads(out)["genus"] == 1

    def test_cache_keyed_by_degree_class(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "--cache-dir", str(tmp_path),
                             "kac", "-g", "1", "-r", "2", "-d", "3")
        assert code == 0
        assert (tmp_path / "kac_g1_r2_d1.json").exists()


class TestReports:
    def test_check_text(self, capsys):
        code, out, _ = run_cli(capsys, "check", "-g", "1", "-r", "2")
        assert code == 0
        assert out.strip()

    def test_check_json(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json",
                               "check", "-g", "1", "-r", "2")
        assert code == 0
        blob = json.loads(out)
        assert blob["clears_power"] is True
        assert blob["is_d_independent"] is True

    def test_identities_pass(self, capsys):
        code, out, _ = run_cli(capsys, "identities", "-g", "0", "-L", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4
        assert all(line.startswith("pass ") for line in lines)

    def test_identities_fault_injection(self, capsys, monkeypatch):
        real = zeta.zeta_at

        def corrupted(g, coeff, monomial):
            return real(g, coeff, monomial) * FactoredRat.from_const(
                Fraction(101, 100))

        monkeypatch.setattr(zeta, "zeta_at", corrupted)
        code, out, err = run_cli(capsys, "identities", "-g", "1", "-L", "4")
        assert code == 1
        assert "FAIL" in out
        assert "IdentityViolation" in err

    def test_identities_json(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json",
                               "identities", "-g", "1", "-L", "3")
        assert code == 0
        blob = json.loads(out)
        assert all(blob["identities"].values())


class TestExitCodes:
    def test_no_subcommand(self, capsys):
        code, _, err = run_cli(capsys)
        assert code == 2
        assert "usage error" in err

    def test_missing_required_flag(self, capsys):
        code, _, err = run_cli(capsys, "kac", "-r", "1")
        assert code == 2
        assert "usage error" in err

    def test_bad_format_choice(self, capsys):
        code, _, err = run_cli(capsys, "--format", "yaml",
                               "kac", "-g", "1", "-r", "1")
        assert code == 2

    def test_domain_error_is_one(self, capsys):
        code, _, err = run_cli(capsys, "kac", "-g", "1", "-r", "0")
        assert code == 1
        assert "ValueError" in err

    def test_missing_curve_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "count", "-r", "1",
                               "--curve", str(tmp_path / "nope.json"))
        assert code == 1

    def test_bad_curve_counts(self, capsys, tmp_path):
        path = write_curve(tmp_path, blob={"q": 2, "genus": 1,
                                           "point_counts": [-3]})
        code, _, err = run_cli(capsys, "count", "-r", "1", "--curve", path)
        assert code == 1

    def test_negative_genus(self, capsys):
        code, _, err = run_cli(capsys, "kac", "-g", "-1", "-r", "1")
        assert code == 1
        assert "ValueError" in err
