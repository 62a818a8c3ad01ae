from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import DATA

import fieldscope.cli as cli
from fieldscope.cli import main
from fieldscope.oracle import EquivalenceReport, ErfAgreementRow

CHAIN11 = str(DATA / "chain11.net")
CHAIN11_TOML = str(DATA / "chain11.toml")


def write_net(tmp_path, text, name="net.net"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestAnalyze:
    def test_table_on_the_fixture(self, capsys):
        assert main(["analyze", CHAIN11]) == 0
        out = capsys.readouterr().out
        assert out.startswith("network chain11 (conv)")
        assert "400x400" in out
        assert "projective field sizes" in out
        assert out.count("\n") > 15

    def test_json_for_a_unit_network(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv 1 s1\n")
        assert main(["analyze", path, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["direction"] == "conv"
        assert payload["layers"][0]["erf"] == [1, 1]
        assert payload["pf"] == [{"boundary": 0, "sizes": [[1, 1]], "uniform": True}]

    def test_json_is_byte_stable_and_matches_the_golden(self, capsys):
        assert main(["analyze", CHAIN11, "--format", "json"]) == 0
        first = capsys.readouterr().out
        assert main(["analyze", CHAIN11, "--format", "json"]) == 0
        second = capsys.readouterr().out
        assert first == second
        golden = (DATA / "chain11_analysis.json").read_text()
        assert first == golden

    def test_both_input_formats_render_identically(self, capsys):
        assert main(["analyze", CHAIN11, "--format", "json"]) == 0
        from_dsl = capsys.readouterr().out
        assert main(["analyze", CHAIN11_TOML, "--format", "json"]) == 0
        from_manifest = capsys.readouterr().out
        assert from_dsl == from_manifest

    def test_deconv_swaps_the_labels(self, capsys):
        assert main(["analyze", CHAIN11, "--deconv"]) == 0
        out = capsys.readouterr().out
        assert "(deconv)" in out
        assert "pf extent" in out
        assert "effective receptive field sizes" in out
        assert "400x400" in out  # numbers do not move

    def test_parse_failure_exits_2_with_position(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv nine s1\n")
        assert main(["analyze", path]) == 2
        err = capsys.readouterr().err
        assert "line 1" in err
        assert "integer expected" in err

    def test_invalid_network_exits_2(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv 0 s1\n")
        assert main(["analyze", path]) == 2
        err = capsys.readouterr().err
        assert "layer 1" in err
        assert "filter must be >= 1" in err

    def test_missing_file_exits_2(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path / "absent.net")]) == 2
        assert "error" in capsys.readouterr().err

    def test_overflow_exits_3(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv 3 s4\n" * 40)
        assert main(["analyze", path]) == 3
        assert "exceeds" in capsys.readouterr().err

    def test_manifest_warnings_reach_stderr(self, tmp_path, capsys):
        path = tmp_path / "net.toml"
        path.write_text('[[layer]]\nkind = "conv"\nfilter = 3\nstride = 1\npad = 1\n')
        assert main(["analyze", str(path)]) == 0
        assert "pad" in capsys.readouterr().err

    def test_coverage_gap_warning_reaches_stderr(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv 2 s3\n")
        assert main(["analyze", path]) == 0
        assert "stride exceeds filter" in capsys.readouterr().err


class TestTopdown:
    def test_fixture_projection(self, capsys):
        assert main(["topdown", CHAIN11, "--layer", "11"]) == 0
        out = capsys.readouterr().out
        assert "top-down projection of layer 11" in out
        assert "392x392" in out
        assert out.rstrip().endswith("400x400")

    def test_layer_zero_is_a_single_unit_row(self, capsys):
        assert main(["topdown", CHAIN11, "--layer", "0"]) == 0
        out = capsys.readouterr().out
        body = [line for line in out.splitlines() if line and "layer" not in line]
        assert body == ["0      1x1"]

    def test_json_shape(self, capsys):
        assert main(["topdown", CHAIN11, "--layer", "2", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["target_layer"] == 2
        assert payload["values"][0] == {"layer": 2, "rf": [1, 1]}
        assert payload["values"][-1] == {"layer": 0, "rf": [10, 10]}

    def test_out_of_range_layer_exits_2(self, capsys):
        assert main(["topdown", CHAIN11, "--layer", "12"]) == 2
        assert "out of range" in capsys.readouterr().err


class TestVerify:
    def test_fixture_passes(self, capsys):
        assert main(["verify", CHAIN11]) == 0
        out = capsys.readouterr().out
        assert "overall: PASS" in out
        assert "MISMATCH" not in out

    def test_random_stream_passes(self, capsys):
        assert main(["verify", "--random", "--trials", "50", "--seed", "42"]) == 0
        out = capsys.readouterr().out
        assert "50 random networks verified (seed 42): PASS" in out

    def test_mismatch_exits_1(self, capsys, monkeypatch):
        broken = ErfAgreementRow(
            layer=1,
            bottom_up=(3, 3),
            top_down=(3, 3),
            oracle_span=(4, 4),
            oracle_cardinality=(4, 4),
        )
        fake = EquivalenceReport(
            network_name="chain11", erf_rows=(broken,), pf_rows=(), pf_skipped=()
        )
        monkeypatch.setattr(cli, "check_equivalence", lambda network: fake)
        assert main(["verify", CHAIN11]) == 1
        out = capsys.readouterr().out
        assert "MISMATCH" in out
        assert "overall: FAIL" in out

    def test_random_mismatch_exits_1_and_names_the_trial(self, capsys, monkeypatch):
        broken = ErfAgreementRow(
            layer=0,
            bottom_up=(1, 1),
            top_down=(1, 1),
            oracle_span=(2, 2),
            oracle_cardinality=(2, 2),
        )
        fake = EquivalenceReport(
            network_name="trial-0", erf_rows=(broken,), pf_rows=(), pf_skipped=()
        )
        monkeypatch.setattr(cli, "check_equivalence", lambda network: fake)
        assert main(["verify", "--random", "--trials", "3", "--seed", "7"]) == 1
        assert "mismatch at trial 0 (seed 7):" in capsys.readouterr().out

    def test_file_and_random_together_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["verify", CHAIN11, "--random"])
        assert excinfo.value.code == 2

    def test_neither_file_nor_random_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["verify"])
        assert excinfo.value.code == 2

    def test_gapped_network_still_passes_with_notes(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv 2 s3\nconv 2 s1\n")
        assert main(["verify", path]) == 0
        out = capsys.readouterr().out
        assert "coverage gaps" in out
        assert "skipped at boundary 0" in out
        assert "overall: PASS" in out


class TestFootprint:
    def test_doubling_pools_draw_nested_bars(self, tmp_path, capsys):
        path = write_net(tmp_path, "pool 2 s2\npool 2 s2\n")
        assert main(["footprint", path, "--layer", "2"]) == 0
        out = capsys.readouterr().out
        assert "layer 2  extent 1  | #  |" in out
        assert "layer 1  extent 2  | ## |" in out
        assert "layer 0  extent 4  |####|" in out

    def test_layer_zero(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv 3 s1\n")
        assert main(["footprint", path, "--layer", "0"]) == 0
        assert "layer 0  extent 1  |#|" in capsys.readouterr().out

    def test_wide_extents_fall_back_to_numbers(self, capsys):
        assert main(["footprint", CHAIN11, "--layer", "11"]) == 0
        out = capsys.readouterr().out
        assert "extent 400 exceeds max width 120; printing values only" in out
        assert "layer 11: 1" in out
        assert "layer 0: 400" in out
        assert "#" not in out

    def test_max_width_raises_the_bar_budget(self, capsys):
        assert main(["footprint", CHAIN11, "--layer", "11", "--max-width", "400"]) == 0
        out = capsys.readouterr().out
        assert "|" + "#" * 400 + "|" in out

    def test_anisotropic_networks_note_the_height_only_view(self, tmp_path, capsys):
        path = write_net(tmp_path, "conv 5x3 s1\n")
        assert main(["footprint", path, "--layer", "1"]) == 0
        out = capsys.readouterr().out
        assert "width axis differs from height axis" in out
        assert "layer 0  extent 5  |#####|" in out


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "fieldscope", "analyze", CHAIN11],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "400x400" in proc.stdout
