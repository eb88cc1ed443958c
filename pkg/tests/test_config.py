"""Tests for configuration loading and validation."""

import pytest
from pydantic import ValidationError

from shellergm.config.schema import (
    ChainConfig,
    GOFConfig,
    OutputConfig,
    ShellERGMConfig,
    load_config,
)
from shellergm.domain.enums import Correction


class TestLoadConfig:
    """YAML loading."""

    def test_packaged_defaults(self):
        config = load_config()
        assert config == ShellERGMConfig()
        assert config.chain.steps == 20000
        assert config.chain.k == 5
        assert config.chain.correction is Correction.PAPER
        assert config.estimator.alpha == 0.2
        assert config.fiber.count == 10000
        assert config.gof.max_lag == 50
        assert config.logging.file == "shellergm.log"

    def test_partial_file_keeps_other_defaults(self, tmp_path):
        path = tmp_path / "config.yml"
        path.write_text(
            "chain:\n  steps: 500\n  correction: hastings\nestimator:\n  alpha: [0.1, 0.2, 0.3]\n",
            encoding="utf-8",
        )
        config = load_config(path)
        assert config.chain.steps == 500
        assert config.chain.correction is Correction.HASTINGS
        assert config.chain.k == 5
        assert config.estimator.alpha == [0.1, 0.2, 0.3]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yml"
        path.write_text("", encoding="utf-8")
        assert load_config(path) == ShellERGMConfig()

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="Configuration file not found"):
            load_config(tmp_path / "nope.yml")

    def test_unknown_section_rejected(self, tmp_path):
        path = tmp_path / "bad.yml"
        path.write_text("sampler:\n  runs: 3\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            load_config(path)


class TestValidation:
    """Field constraints."""

    def test_chain_bounds(self):
        with pytest.raises(ValidationError):
            ChainConfig(steps=0)
        with pytest.raises(ValidationError):
            ChainConfig(thin=0)
        with pytest.raises(ValidationError):
            ChainConfig(seed=2**64)
        with pytest.raises(ValidationError):
            ChainConfig(correction="gibbs")

    def test_chain_assignment_validated(self):
        cfg = ChainConfig()
        cfg.correction = "hastings"
        assert cfg.correction is Correction.HASTINGS
        with pytest.raises(ValidationError):
            cfg.k = 0

    def test_recorded_steps(self):
        assert ChainConfig(steps=100, burn_in=10, thin=3).recorded_steps == 30
        assert ChainConfig(steps=10, burn_in=10).recorded_steps == 0

    def test_output_format(self):
        assert OutputConfig(format="CSV").format == "csv"
        with pytest.raises(ValidationError):
            OutputConfig(format="parquet")

    def test_quantile_levels_sorted_and_bounded(self):
        assert GOFConfig(quantile_levels=[0.9, 0.1]).quantile_levels == [0.1, 0.9]
        with pytest.raises(ValidationError):
            GOFConfig(quantile_levels=[1.5])

    def test_negative_alpha(self):
        with pytest.raises(ValidationError):
            ShellERGMConfig(estimator={"alpha": -0.1})

    def test_enumeration_caps(self):
        with pytest.raises(ValidationError):
            ShellERGMConfig(enumeration={"partition_max_n": 8})
