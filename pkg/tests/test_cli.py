"""Command-line interface: exit codes, output formats, stage dispatch."""

import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from scicorpus.cli import EXIT_DATA, EXIT_OK, EXIT_STAGE, EXIT_USAGE, main
from scicorpus.metrics import bleu, chrf2pp


@pytest.fixture()
def pipeline_config(tmp_path):
    payload = {
        "repos_dir": str(FIXTURES / "pages"),
        "configs_dir": str(FIXTURES / "configs"),
        "output_dir": str(tmp_path / "out"),
        "benchmarks": [
            {"domain": "energy", "lang_pair": ["en", "pt"], "records_to_sample": 4}
        ],
    }
    path = tmp_path / "pipeline.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


@pytest.fixture()
def score_files(tmp_path):
    hyp = tmp_path / "hyp.txt"
    ref = tmp_path / "ref.txt"
    hyp.write_text(
        "The cat sat on the mat.\n"
        "Renewable energy systems reduce emissions in coastal regions.\n",
        encoding="utf-8",
    )
    ref.write_text(
        "The cat sat on the mat.\n"
        "Renewable energy systems lower emissions in coastal areas.\n",
        encoding="utf-8",
    )
    return hyp, ref


class TestPipelineCommands:
    def test_stages_run_in_order(self, pipeline_config, capsys):
        for stage, key in (
            ("extract", "pages"),
            ("classify", "domains"),
            ("mine", "pairs"),
            ("filter", "accepted_pairs"),
            ("benchmark", "splits"),
        ):
            code = main(["--config", str(pipeline_config), stage])
            out = capsys.readouterr().out
            assert code == EXIT_OK
            manifest = json.loads(out)
            assert manifest["stage"] == stage
            assert key in manifest

        assert main(["--config", str(pipeline_config), "stats"]) == EXIT_OK
        tables = capsys.readouterr().out
        assert tables.startswith("Parallel corpora sizes (sentence pairs)")
        assert "Monolingual corpora sizes (sentences)" in tables

    def test_stage_failure_exits_three(self, pipeline_config, capsys):
        code = main(["--config", str(pipeline_config), "benchmark"])
        assert code == EXIT_STAGE
        assert "stage failure" in capsys.readouterr().err

    def test_config_flag_is_required_for_stages(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["extract"])
        assert info.value.code == EXIT_USAGE
        assert "--config is required" in capsys.readouterr().err

    def test_malformed_config_exits_two(self, tmp_path, capsys):
        broken = tmp_path / "broken.json"
        broken.write_text("{not json", encoding="utf-8")
        assert main(["--config", str(broken), "extract"]) == EXIT_DATA
        assert "data error" in capsys.readouterr().err

    def test_config_missing_key_exits_two(self, tmp_path, capsys):
        partial = tmp_path / "partial.json"
        partial.write_text(json.dumps({"repos_dir": "pages"}), encoding="utf-8")
        assert main(["--config", str(partial), "extract"]) == EXIT_DATA
        assert "configs_dir" in capsys.readouterr().err


class TestScoreCommand:
    def test_bleu_point_score(self, score_files, capsys):
        hyp, ref = score_files
        code = main(["score", "--hyp", str(hyp), "--ref", str(ref)])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        expected = bleu(
            hyp.read_text("utf-8").splitlines(), ref.read_text("utf-8").splitlines()
        )
        assert lines[0] == f"BLEU = {expected:.1f}"
        assert lines[1] == "nrefs:1|case:mixed|eff:no|tok:13a|smooth:exp|version:0.1.0"

    def test_chrf_point_score(self, score_files, capsys):
        hyp, ref = score_files
        code = main(["score", "--metric", "chrf2pp", "--hyp", str(hyp), "--ref", str(ref)])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        expected = chrf2pp(
            hyp.read_text("utf-8").splitlines(), ref.read_text("utf-8").splitlines()
        )
        assert lines[0] == f"chrF2++ = {expected:.1f}"
        assert lines[1] == "nrefs:1|case:mixed|eff:yes|nc:6|nw:2|space:no|version:0.1.0"

    def test_bootstrap_reports_interval_and_seed(self, score_files, capsys):
        hyp, ref = score_files
        code = main(["score", "--hyp", str(hyp), "--ref", str(ref), "--bootstrap", "50"])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert lines[0].startswith("BLEU = ")
        assert "+/-" in lines[0]
        assert "|bs:50|seed:12345|" in lines[1]

    def test_seed_flag_reaches_bootstrap(self, score_files, capsys):
        hyp, ref = score_files
        code = main(
            ["--seed", "7", "score", "--hyp", str(hyp), "--ref", str(ref), "--bootstrap", "20"]
        )
        assert code == EXIT_OK
        assert "|bs:20|seed:7|" in capsys.readouterr().out.splitlines()[1]

    def test_missing_file_exits_two(self, tmp_path, capsys):
        ref = tmp_path / "ref.txt"
        ref.write_text("a line\n", encoding="utf-8")
        code = main(["score", "--hyp", str(tmp_path / "absent.txt"), "--ref", str(ref)])
        assert code == EXIT_DATA
        assert "data error" in capsys.readouterr().err

    def test_mismatched_line_counts_exit_two(self, tmp_path, capsys):
        hyp = tmp_path / "hyp.txt"
        ref = tmp_path / "ref.txt"
        hyp.write_text("one\ntwo\n", encoding="utf-8")
        ref.write_text("one\n", encoding="utf-8")
        assert main(["score", "--hyp", str(hyp), "--ref", str(ref)]) == EXIT_DATA
        assert "hypotheses vs" in capsys.readouterr().err

    def test_empty_files_exit_two(self, tmp_path, capsys):
        hyp = tmp_path / "hyp.txt"
        ref = tmp_path / "ref.txt"
        hyp.write_text("", encoding="utf-8")
        ref.write_text("", encoding="utf-8")
        assert main(["score", "--hyp", str(hyp), "--ref", str(ref)]) == EXIT_DATA


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["unknown-command"],
            ["score"],
            ["score", "--hyp", "x"],
            ["score", "--metric", "ter", "--hyp", "x", "--ref", "y"],
            ["--workers", "many", "extract"],
        ],
    )
    def test_usage_problems_exit_one(self, argv, capsys):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == EXIT_USAGE
        capsys.readouterr()


class TestModuleEntryPoint:
    def test_python_dash_m_runs(self, score_files):
        hyp, ref = score_files
        result = subprocess.run(
            [
                sys.executable,
                "-m",
                "scicorpus",
                "score",
                "--hyp",
                str(hyp),
                "--ref",
                str(ref),
            ],
            capture_output=True,
            text=True,
        )
        assert result.returncode == EXIT_OK
        assert result.stdout.startswith("BLEU = ")
