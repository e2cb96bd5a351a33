import json

import pytest

from app.config import build_settings
from app.main import main
from app.modules import generate, parse_family_spec, write_graph6
from app.modules.orchestration import SweepService
from app.routers import commands
from app.routers.commands import EXIT_BRACKETED, EXIT_ERROR, EXIT_OK, EXIT_VIOLATIONS, sweep_determinism
from app.schemas import Determinism


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestGen:
    def test_grid_as_graph6(self, capsys):
        code, out = run(capsys, "gen", "cycle:4..6")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 3
        assert lines[0] == write_graph6(generate(parse_family_spec("cycle:4"))).decode("ascii")

    def test_edge_list(self, capsys):
        code, out = run(capsys, "gen", "wheel:4", "--format", "edgelist")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "5 8"
        assert len(lines) == 9

    def test_bad_family(self, capsys):
        code, payload = run_json(capsys, "gen", "cycle:2")
        assert code == EXIT_ERROR
        assert payload["success"] is False
        assert payload["error"] == "FamilySpecError"


class TestSolve:
    def test_exact(self, capsys):
        code, payload = run_json(capsys, "solve", "complete:4", "--param", "prc")
        assert code == EXIT_OK
        assert payload["value"] == 3
        assert payload["exact"] is True
        assert payload["certificate"]["k"] == 3

    def test_graph6_input(self, capsys):
        code, payload = run_json(capsys, "solve", "Bw", "--param", "chi")
        assert code == EXIT_OK
        assert payload["value"] == 3

    def test_budget_exhaustion_brackets(self, capsys):
        code, payload = run_json(capsys, "solve", "cycle:9", "--param", "rc", "--budget-nodes", "5")
        assert code == EXIT_BRACKETED
        assert payload["exact"] is False
        assert payload["stats"]["lower_bound"] == 4

    def test_disconnected_graph(self, capsys):
        code, payload = run_json(capsys, "solve", "C?", "--param", "rc")
        assert code == EXIT_ERROR
        assert payload["error"] == "SolverError"

    def test_edge_list_file(self, capsys, tmp_path):
        path = tmp_path / "c5.txt"
        path.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        code, payload = run_json(capsys, "solve", str(path), "--param", "prc")
        assert code == EXIT_OK
        assert payload["value"] == 3


class TestColorAndVerify:
    def test_constructed_certificate_verifies(self, capsys, tmp_path):
        code, cert = run_json(capsys, "color", "--method", "cycle", "--n", "6")
        assert code == EXIT_OK
        assert cert["k"] == 3
        path = tmp_path / "c6.json"
        path.write_text(json.dumps(cert))

        code, report = run_json(capsys, "verify", "cycle:6", str(path))
        assert code == EXIT_OK
        assert report["is_prc_certificate"] is True
        assert report["witness"] is None

    def test_full_witness(self, capsys):
        _, cert = run_json(capsys, "color", "--method", "gkt", "--k", "1", "--t", "1")
        assert cert["k"] == 5
        code, report = run_json(capsys, "verify", "g_11", json.dumps(cert), "--full-witness")
        assert code == EXIT_OK
        assert len(report["witness"]["pairs"]) == 15

    def test_rejected_certificate(self, capsys):
        cert = json.dumps({"n": 3, "edges": [[0, 1, 1], [1, 2, 1]], "k": 1})
        code, report = run_json(capsys, "verify", "path:3", cert)
        assert code == EXIT_ERROR
        assert report["is_proper"] is False
        assert report["is_prc_certificate"] is False

    def test_certificate_for_wrong_graph(self, capsys):
        cert = json.dumps({"n": 3, "edges": [[0, 1, 1], [1, 2, 2]], "k": 2})
        code, payload = run_json(capsys, "verify", "cycle:4", cert)
        assert code == EXIT_ERROR
        assert payload["error"] == "ColouringError"

    def test_star(self, capsys):
        code, cert = run_json(capsys, "color", "petersen", "--method", "star")
        assert code == EXIT_OK
        # chi' + n - 1 - max degree
        assert cert["k"] == 4 + 10 - 1 - 3

    def test_clique_rc(self, capsys):
        code, cert = run_json(capsys, "color", "wheel:5", "--method", "clique-rc", "--clique", "0,1,5")
        assert code == EXIT_OK
        assert cert["k"] == 6 + 1 - 3

    @pytest.mark.parametrize("argv", [
        ["color", "--method", "star"],
        ["color", "petersen", "--method", "hamcomp", "--cycle", "2,3,8,6,9,7"],
        ["color", "petersen", "--method", "hamcomp", "--hub", "0", "--cycle", "2,x"],
        ["color", "--method", "wheel"],
    ])
    def test_missing_or_bad_method_arguments(self, capsys, argv):
        code, payload = run_json(capsys, *argv)
        assert code == EXIT_ERROR
        assert payload["error"] == "CommandError"

    def test_construction_error(self, capsys):
        code, payload = run_json(capsys, "color", "--method", "cycle", "--n", "3")
        assert code == EXIT_ERROR
        assert payload["error"] == "ConstructionError"


class TestBounds:
    def test_clean_pass(self, capsys):
        code, payload = run_json(capsys, "bounds", "complete:5", "--solve")
        assert code == EXIT_OK
        claims = payload["report"]["claims"]
        assert claims["complete_graph_value"]["satisfied"] is True
        assert payload["extremal"]["predicted"] is not None
        assert "fired_rules" in payload

    def test_even_complete_graph_violates_clique_gap(self, capsys):
        code, payload = run_json(capsys, "bounds", "complete:4", "--solve")
        assert code == EXIT_VIOLATIONS
        assert payload["report"]["claims"]["clique_gap"]["satisfied"] is False

    def test_supplied_values(self, capsys):
        code, payload = run_json(
            capsys, "bounds", "cycle:6", "--rc", "3", "--prc", "3", "--claims", "cycle_value"
        )
        assert code == EXIT_OK
        assert list(payload["report"]["claims"]) == ["cycle_value"]

    def test_supplied_values_can_violate(self, capsys):
        code, _ = run_json(capsys, "bounds", "cycle:6", "--rc", "3", "--prc", "2", "--claims", "cycle_value")
        assert code == EXIT_VIOLATIONS

    def test_family_context_from_spec(self, capsys):
        code, payload = run_json(
            capsys, "bounds", "clique_product:3,3", "--prc", "4", "--claims", "clique_product_range"
        )
        assert code == EXIT_OK
        assert payload["report"]["claims"]["clique_product_range"]["details"]["upper"] == 6

    def test_bracketed_solve(self, capsys):
        code, _ = run_json(
            capsys, "bounds", "cycle:9", "--solve", "--claims", "cycle_value", "--budget-nodes", "5"
        )
        assert code == EXIT_BRACKETED

    def test_disconnected_graph_has_no_extremal_section(self, capsys):
        code, payload = run_json(capsys, "bounds", "C?", "--claims", "vizing")
        assert code == EXIT_OK
        assert "extremal" not in payload

    def test_unknown_claim(self, capsys):
        code, payload = run_json(capsys, "bounds", "cycle:5", "--claims", "nope")
        assert code == EXIT_ERROR
        assert payload["error"] == "BoundsError"


class TestSweep:
    def test_family_sweep(self, capsys, tmp_path):
        code, summary = run_json(capsys, "sweep", "--family", "cycle:4..6", "--output", str(tmp_path))
        assert code == EXIT_OK
        assert summary["processed"] == 3
        assert summary["violations"] == []
        assert (tmp_path / "summary.csv").exists()

    def test_violations_exit_three(self, capsys, tmp_path):
        code, summary = run_json(
            capsys, "sweep", "--family", "complete:2..5", "--claims", "clique_gap", "--output", str(tmp_path)
        )
        assert code == EXIT_VIOLATIONS
        assert [v["index"] for v in summary["violations"]] == [0, 2]
        assert summary["violations"][0]["reproduce"].startswith("python -m app bounds 'complete:2'")

    def test_random_sweep_uses_seed(self, capsys, tmp_path):
        argv = ["sweep", "--random", "gnp:n=5,p=0.6,count=3", "--claims", "vizing", "--seed", "7"]
        _, first = run_json(capsys, *argv, "--output", str(tmp_path / "a"))
        _, second = run_json(capsys, *argv, "--output", str(tmp_path / "b"))
        assert first["seed"] == 7
        assert (tmp_path / "a" / "summary.csv").read_text() == (tmp_path / "b" / "summary.csv").read_text()

    def test_missing_input(self, capsys, tmp_path):
        code, payload = run_json(capsys, "sweep", "--input", str(tmp_path / "none.g6"), "--output", str(tmp_path))
        assert code == EXIT_ERROR
        assert payload["error"] == "SweepError"

    @pytest.mark.parametrize("extra,determinism,workers", [
        ([], Determinism.PARALLEL, 2),
        (["--determinism", "sequential-canonical"], Determinism.SEQUENTIAL, 1),
    ])
    def test_determinism_default(self, capsys, tmp_path, monkeypatch, extra, determinism, workers):
        monkeypatch.delenv("PRCLAB_DETERMINISM", raising=False)
        services = []

        class RecordingService(SweepService):
            def __init__(self, job, settings=None):
                super().__init__(job, settings)
                services.append(self)

        monkeypatch.setattr(commands, "SweepService", RecordingService)
        code, _ = run_json(
            capsys, "sweep", "--family", "cycle:4..5", "--claims", "vizing",
            "--jobs", "2", "--output", str(tmp_path), *extra,
        )
        assert code == EXIT_OK
        assert services[0].job.determinism == determinism
        assert services[0].workers == workers

    def test_determinism_from_environment(self, monkeypatch):
        monkeypatch.setenv("PRCLAB_DETERMINISM", "sequential-canonical")
        assert sweep_determinism(build_settings()) == Determinism.SEQUENTIAL
        monkeypatch.delenv("PRCLAB_DETERMINISM")
        assert sweep_determinism(build_settings()) == Determinism.PARALLEL


class TestUsage:
    def test_usage_error_is_exit_one(self, capsys):
        assert main(["solve", "cycle:5"]) == EXIT_ERROR
        assert capsys.readouterr().out == ""

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == EXIT_ERROR

    def test_sources_are_exclusive(self, capsys):
        assert main(["sweep", "--family", "cycle:4", "--random", "gnp:n=4,p=1,count=1"]) == EXIT_ERROR

    def test_version(self, capsys):
        assert main(["--version"]) == EXIT_OK
        assert "prclab" in capsys.readouterr().out

    def test_flag_validation_is_reported(self, capsys):
        code, payload = run_json(capsys, "solve", "cycle:5", "--param", "rc", "--budget-nodes", "0")
        assert code == EXIT_ERROR
        assert payload["error"] == "ValidationError"


class TestCertificateExamples:
    def test_wheel_certificate_and_a_tampered_copy(self, capsys):
        _, cert = run_json(capsys, "color", "--method", "wheel", "--n", "7")
        code, _ = run_json(capsys, "verify", "wheel:7", json.dumps(cert))
        assert code == EXIT_OK

        # copy the colour of one rim edge onto its neighbour so they clash at vertex 1
        colours = {(u, v): c for u, v, c in cert["edges"]}
        colours[(1, 2)] = colours[(0, 1)]
        cert["edges"] = [[u, v, c] for (u, v), c in colours.items()]
        code, report = run_json(capsys, "verify", "wheel:7", json.dumps(cert))
        assert code == EXIT_ERROR
        assert report["is_proper"] is False
        assert report["proper_violation"] is not None

    def test_gkt_certificate_is_rainbow_but_rejected(self, capsys):
        _, cert = run_json(capsys, "color", "--method", "gkt", "--k", "2", "--t", "2")
        code, report = run_json(capsys, "verify", "g_kt:2,2", json.dumps(cert))
        assert code == EXIT_ERROR
        assert report["is_rainbow_connected"] is True
        assert report["is_proper"] is False
