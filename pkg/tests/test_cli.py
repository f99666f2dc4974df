import json
import shutil
import subprocess

import numpy as np
import pytest

from fpcentral.cli import main

K3_EDGES = "0 1 1\n1 0 1\n1 2 1\n2 1 1\n2 0 1\n0 2 1\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


@pytest.fixture
def k3(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text(K3_EDGES)
    return str(path)


class TestCentrality:
    def test_k3_pagerank(self, capsys, k3):
        code, payload, _ = run_json(
            capsys, "centrality", k3, "--family", "pagerank", "--alpha", "0.85"
        )
        assert code == 0
        assert np.allclose(payload["rho"], [1.0 / 3.0] * 3, atol=1e-8)
        assert payload["manifest"]["parameters"]["family"] == "pagerank"
        assert payload["manifest"]["inputs"][0]["sha256"]

    def test_zero_edge_two_node_katz(self, capsys, tmp_path):
        path = tmp_path / "empty2.txt"
        path.write_text("0\n1\n")
        code, payload, _ = run_json(
            capsys, "centrality", str(path), "--family", "katz", "--alpha", "0.5"
        )
        assert code == 0
        assert np.allclose(payload["rho"], [1.0, 1.0], atol=1e-10)

    def test_malformed_line_exits_4_with_line_number(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("a b\n")
        code, out, err = run(
            capsys, "centrality", str(path), "--family", "katz", "--alpha", "0.5"
        )
        assert code == 4
        assert "line 1" in err

    def test_missing_file_exits_4(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "centrality", str(tmp_path / "nope.txt"),
            "--family", "katz", "--alpha", "0.5",
        )
        assert code == 4

    def test_katz_without_alpha_exits_2(self, capsys, k3):
        code, _, err = run(capsys, "centrality", k3, "--family", "katz")
        assert code == 2
        assert "--alpha" in err

    def test_eigen_with_alpha_exits_2(self, capsys, k3):
        code, _, err = run(
            capsys, "centrality", k3, "--family", "eigen", "--alpha", "0.5"
        )
        assert code == 2

    def test_eigen_on_k3(self, capsys, k3):
        code, payload, _ = run_json(capsys, "centrality", k3, "--family", "eigen")
        assert code == 0
        assert np.allclose(payload["rho"], [1.0 / np.sqrt(3.0)] * 3, atol=1e-8)

    def test_mixed_sign_eigenvector_needs_normalizer(self, capsys, tmp_path):
        path = tmp_path / "neg.txt"
        path.write_text("0 1 -1\n1 0 -1\n")
        code, _, err = run(capsys, "centrality", str(path), "--family", "eigen")
        assert code == 2
        assert "--normalizer" in err
        code, payload, _ = run_json(
            capsys, "centrality", str(path), "--family", "eigen",
            "--normalizer", "abs",
        )
        assert code == 0
        assert np.allclose(payload["rho"], [0.5, 0.5], atol=1e-10)

    def test_normalizer_exp_neg_spelling(self, capsys, k3):
        code, payload, _ = run_json(
            capsys, "centrality", k3, "--family", "pagerank", "--alpha", "0.85",
            "--normalizer", "exp-neg",
        )
        assert code == 0
        assert sum(payload["rho"]) == pytest.approx(1.0)

    def test_nonconvergence_exits_3(self, capsys, tmp_path):
        path = tmp_path / "slow.txt"
        path.write_text("0 1 1\n1 0 1\n")
        code, _, err = run(
            capsys, "centrality", str(path), "--family", "katz",
            "--alpha", "0.9999999",
        )
        assert code == 3

    def test_output_file_and_csv(self, capsys, k3, tmp_path):
        out_path = tmp_path / "result.json"
        code, stdout, _ = run(
            capsys, "centrality", k3, "--family", "pagerank", "--alpha", "0.85",
            "-o", str(out_path), "--csv",
        )
        assert code == 0
        assert stdout == ""
        payload = json.loads(out_path.read_text())
        assert len(payload["rho"]) == 3
        csv_text = (tmp_path / "result.csv").read_text()
        assert csv_text.startswith("node,rho,feature_x\n")
        assert len(csv_text.strip().splitlines()) == 4

    def test_csv_to_stdout(self, capsys, k3):
        code, out, _ = run(
            capsys, "centrality", k3, "--family", "pagerank", "--alpha", "0.85",
            "--csv",
        )
        assert code == 0
        assert "\n}\nnode,rho,feature_x\n" in out

    def test_deterministic_output_modulo_timestamp(self, capsys, k3):
        args = ("centrality", k3, "--family", "pagerank", "--alpha", "0.85")
        _, first, _ = run_json(capsys, *args)
        _, second, _ = run_json(capsys, *args)
        first["manifest"].pop("timestamp")
        second["manifest"].pop("timestamp")
        assert first == second


class TestCompare:
    def test_identical_files_hold_with_zero_slack(self, capsys, k3):
        code, payload, _ = run_json(
            capsys, "compare", k3, k3, "--family", "katz", "--alpha", "0.2"
        )
        assert code == 0
        assert payload["holds"] is True
        assert payload["slack"] == pytest.approx(0.0, abs=1e-12)
        assert payload["bound"] == pytest.approx(0.0, abs=1e-12)

    def test_c6_vs_perturbed_c6(self, capsys, tmp_path):
        lines_a = []
        lines_b = []
        for i in range(6):
            j = (i + 1) % 6
            w = "0.9" if i == 0 else "1"
            lines_a += [f"{i} {j} 1", f"{j} {i} 1"]
            lines_b += [f"{i} {j} {w}", f"{j} {i} {w}"]
        pa = tmp_path / "c6.txt"
        pb = tmp_path / "c6p.txt"
        pa.write_text("\n".join(lines_a) + "\n")
        pb.write_text("\n".join(lines_b) + "\n")
        code, payload, _ = run_json(
            capsys, "compare", str(pa), str(pb), "--family", "katz",
            "--alpha", "0.25", "--bound", "theorem1",
        )
        assert code == 0
        assert payload["holds"] is True
        assert payload["certified"] is True
        assert set(payload["constants"]) == {"L0", "L1", "Lg", "R", "method"}

    def test_size_mismatch_exits_2(self, capsys, k3, tmp_path):
        small = tmp_path / "k2.txt"
        small.write_text("0 1 1\n1 0 1\n")
        code, _, err = run(
            capsys, "compare", k3, str(small), "--family", "katz", "--alpha", "0.2"
        )
        assert code == 2

    def test_prop6_and_prop7(self, capsys, k3, tmp_path):
        other = tmp_path / "p3.txt"
        other.write_text("0 1 1\n1 0 1\n1 2 1\n2 1 1\n")
        for bound in ("prop6", "prop7"):
            code, payload, _ = run_json(
                capsys, "compare", k3, str(other), "--family", "katz",
                "--alpha", "0.2", "--bound", bound,
            )
            assert code == 0
            assert payload["holds"] is True

    def test_csv_row(self, capsys, k3):
        code, out, _ = run(
            capsys, "compare", k3, k3, "--family", "katz", "--alpha", "0.2", "--csv"
        )
        assert code == 0
        assert "bound,observed,holds,slack,certified" in out


class TestGraphonCommands:
    def test_lift_k2_emits_bare_graphon_json(self, capsys, tmp_path):
        path = tmp_path / "k2.txt"
        path.write_text("0 1 1\n1 0 1\n")
        code, payload, _ = run_json(capsys, "graphon", "lift", str(path))
        assert code == 0
        assert payload == {"c": 1.0, "k": 2, "values": [[0.0, 1.0], [1.0, 0.0]]}

    def test_lift_requires_symmetry(self, capsys, tmp_path):
        path = tmp_path / "arrow.txt"
        path.write_text("0 1 1\n")
        code, _, err = run(capsys, "graphon", "lift", str(path))
        assert code == 2

    def test_constant_graphon_pagerank(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        path.write_text('{"values": [[0.5]]}\n')
        code, payload, _ = run_json(
            capsys, "graphon", "centrality", str(path),
            "--family", "pagerank", "--alpha", "0.85",
        )
        assert code == 0
        assert np.allclose(payload["rho"], [1.0], atol=1e-10)
        assert payload["integral"] == pytest.approx(1.0, abs=1e-10)
        assert payload["non_negative"] is True

    def test_graphon_katz_and_eigen(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        path.write_text('{"values": [[0.5]]}\n')
        code, payload, _ = run_json(
            capsys, "graphon", "centrality", str(path),
            "--family", "katz", "--alpha", "0.5",
        )
        assert code == 0
        assert np.allclose(payload["rho"], [4.0 / 3.0], atol=1e-10)
        code, payload, _ = run_json(
            capsys, "graphon", "centrality", str(path), "--family", "eigen"
        )
        assert code == 0
        assert payload["lambda"] == pytest.approx(0.5, abs=1e-10)

    def test_compare_theorem2(self, capsys, tmp_path):
        pa = tmp_path / "a.json"
        pb = tmp_path / "b.json"
        pa.write_text('{"values": [[0.5]]}\n')
        pb.write_text('{"values": [[0.45]]}\n')
        code, payload, _ = run_json(
            capsys, "graphon", "compare", str(pa), str(pb),
            "--family", "katz", "--alpha", "0.5",
        )
        assert code == 0
        assert payload["holds"] is True
        assert payload["certified"] is True

    def test_compare_prop9_prop10(self, capsys, tmp_path):
        pa = tmp_path / "a.json"
        pb = tmp_path / "b.json"
        pa.write_text('{"values": [[0.6, 0.2], [0.2, 0.6]]}\n')
        pb.write_text('{"values": [[0.5, 0.25], [0.25, 0.6]]}\n')
        for bound in ("prop9", "prop10"):
            code, payload, _ = run_json(
                capsys, "graphon", "compare", str(pa), str(pb),
                "--family", "katz", "--alpha", "0.5", "--bound", bound,
            )
            assert code == 0
            assert payload["holds"] is True
            assert payload["certified"] is False

    def test_mismatched_block_counts_exit_2(self, capsys, tmp_path):
        pa = tmp_path / "a.json"
        pb = tmp_path / "b.json"
        pa.write_text('{"values": [[0.5]]}\n')
        pb.write_text('{"values": [[0.5, 0.5], [0.5, 0.5]]}\n')
        code, _, err = run(
            capsys, "graphon", "compare", str(pa), str(pb),
            "--family", "katz", "--alpha", "0.5",
        )
        assert code == 2
        assert "blocks" in err


class TestNorms:
    def test_identity_operator_norm(self, capsys, tmp_path):
        path = tmp_path / "eye.json"
        path.write_text(json.dumps({"weights": np.eye(5).tolist()}))
        code, payload, _ = run_json(capsys, "norms", str(path), "--norm", "2")
        assert code == 0
        assert payload["value"] == pytest.approx(1.0, abs=1e-9)
        assert payload["kind"] == "2"

    def test_ones_cut_norm_with_witness(self, capsys, tmp_path):
        path = tmp_path / "ones.json"
        path.write_text(json.dumps({"weights": np.ones((3, 3)).tolist()}))
        code, payload, _ = run_json(capsys, "norms", str(path), "--norm", "cut")
        assert code == 0
        assert payload["value"] == 9.0
        assert payload["witness"] == {"S": [0, 1, 2], "T": [0, 1, 2]}

    def test_cut_norm_size_cap_exits_2(self, capsys, tmp_path):
        path = tmp_path / "big.txt"
        path.write_text("22\n")
        code, _, err = run(capsys, "norms", str(path), "--norm", "cut")
        assert code == 2

    def test_heuristic_mode_with_seed(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        rng = np.random.default_rng(60)
        path.write_text(json.dumps({"weights": rng.uniform(-1, 1, (6, 6)).tolist()}))
        code, payload, _ = run_json(
            capsys, "norms", str(path), "--norm", "cut",
            "--mode", "heuristic", "--seed", "3",
        )
        assert code == 0
        exact_code, exact_payload, _ = run_json(
            capsys, "norms", str(path), "--norm", "cut"
        )
        assert payload["value"] <= exact_payload["value"] + 1e-12

    def test_one_and_inf_norms(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"weights": [[1.0, 2.0], [0.0, 1.0]]}))
        code, payload, _ = run_json(capsys, "norms", str(path), "--norm", "1")
        assert payload["value"] == 3.0
        code, payload, _ = run_json(capsys, "norms", str(path), "--norm", "inf")
        assert payload["value"] == 3.0


class TestParser:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "fpc" in capsys.readouterr().out

    def test_unknown_subcommand_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_console_script_is_installed(self):
        exe = shutil.which("fpc")
        assert exe is not None, "fpc console script not on PATH; reinstall the package"
        proc = subprocess.run([exe, "--version"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("fpc ")
