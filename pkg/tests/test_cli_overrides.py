"""Tests for applying CLI overrides to the runtime configuration."""

from pathlib import Path

from shellergm.cli.main import (
    OUTPUT_DIR_ENV,
    _apply_overrides,
    _collect_overrides,
    create_argument_parser,
    resolve_output_dir,
)
from shellergm.config.schema import ShellERGMConfig
from shellergm.domain.enums import Correction


def _parse_args(args):
    parser = create_argument_parser()
    return parser.parse_args(args)


def test_simulate_overrides_chain_settings(tmp_path):
    """Chain flags should update the config without mutating the original."""

    config = ShellERGMConfig()
    args = _parse_args(
        [
            "simulate",
            "--sampson",
            "--out",
            str(tmp_path / "out"),
            "--steps",
            "500",
            "--k",
            "3",
            "--burn-in",
            "50",
            "--thin",
            "2",
            "--seed",
            "17",
            "--correction",
            "hastings",
            "--format",
            "csv",
        ]
    )

    updated = _apply_overrides(config, args)

    assert updated is not config
    assert updated.chain.steps == 500
    assert updated.chain.k == 3
    assert updated.chain.burn_in == 50
    assert updated.chain.thin == 2
    assert updated.chain.seed == 17
    assert updated.chain.correction is Correction.HASTINGS
    assert updated.output.format == "csv"
    # Original configuration should remain unchanged
    assert config.chain.steps == 20000
    assert config.chain.seed is None
    assert config.output.format == "json"


def test_alpha_scalar_and_vector():
    config = ShellERGMConfig()
    scalar = _apply_overrides(config, _parse_args(["simulate", "--sampson", "--alpha", "0.5"]))
    vector = _apply_overrides(config, _parse_args(["simulate", "g.edges", "--alpha", "0.1,0.2,0.3"]))
    assert scalar.estimator.alpha == 0.5
    assert vector.estimator.alpha == [0.1, 0.2, 0.3]


def test_sample_fiber_count_and_seed():
    args = _parse_args(["sample-fiber", "0,2,1,4,0,0,0", "--count", "25", "--seed", "3", "--no-labeled"])
    updated = _apply_overrides(ShellERGMConfig(), args)
    assert updated.fiber.count == 25
    assert updated.chain.seed == 3
    assert args.labeled is False


def test_collect_overrides_lists_only_given_flags():
    args = _parse_args(["simulate", "--sampson", "--steps", "100", "--seed", "9"])
    assert _collect_overrides(args) == {"steps": 100, "seed": 9}


def test_output_dir_resolution(tmp_path, monkeypatch):
    config = ShellERGMConfig()
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)

    args = _parse_args(["cores", "--sampson"])
    assert resolve_output_dir(args, config, required=False) is None
    assert resolve_output_dir(args, config, required=True) == Path("runs")

    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "env"))
    assert resolve_output_dir(args, config, required=False) == tmp_path / "env"

    args = _parse_args(["cores", "--sampson", "--out", str(tmp_path / "flag")])
    assert resolve_output_dir(args, config, required=True) == tmp_path / "flag"
