"""Shared fixtures: paths into tests/fixtures and pipeline configs."""

from __future__ import annotations

from pathlib import Path

import pytest

from scicorpus.benchmark import BenchmarkSpec
from scicorpus.pipeline import PipelineConfig

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def pages_dir() -> Path:
    return FIXTURES / "pages"


@pytest.fixture(scope="session")
def configs_dir() -> Path:
    return FIXTURES / "configs"


def make_config(out_dir: Path, workers: int = 1, seed: int = 0) -> PipelineConfig:
    """Pipeline config over the committed page fixtures."""
    return PipelineConfig(
        repos_dir=FIXTURES / "pages",
        configs_dir=FIXTURES / "configs",
        output_dir=out_dir,
        workers=workers,
        seed=seed,
        benchmarks=(
            BenchmarkSpec(domain="energy", lang_pair=("en", "pt"), records_to_sample=4),
        ),
    )


@pytest.fixture(scope="session")
def pipeline_output(tmp_path_factory) -> Path:
    """One full pipeline run shared by read-only tests."""
    from scicorpus.pipeline import run_all

    out = tmp_path_factory.mktemp("pipeline") / "out"
    run_all(make_config(out))
    return out
