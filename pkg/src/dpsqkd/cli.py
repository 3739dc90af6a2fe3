"""Command-line interface.

Subcommands: keyrate, simulate, sweep-alpha, verify-subadd. Configuration
comes from a flat JSON file (--config) overridden by same-named flags; every
command is deterministic given its configuration including the seed.

Exit codes: 0 success, 2 invalid configuration, 3 internal numerical
failure, 4 verification failure.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np

from . import keyrate, plots, protocol, subadditivity
from .config import SimulationConfig
from .entropy import source_entropy
from .errors import (
    ConfigError,
    DimensionBudgetError,
    EigensolverError,
    InconsistentStatisticsError,
)
from .optics import honest_click_rate
from .output import dumps_csv, dumps_json, record_to_csv, write_output

EXIT_INVALID_CONFIG = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_VERIFICATION_FAILURE = 4

_NUMERICAL_ERRORS = (
    EigensolverError,
    InconsistentStatisticsError,
    np.linalg.LinAlgError,
    FloatingPointError,
)


def _config_options(f):
    options = [
        click.option("--config", "config_path", type=click.Path(), default=None,
                     help="Flat JSON file with config fields; flags win."),
        click.option("--n-pulses", type=int, default=None, help="Block length N."),
        click.option("--n-blocks", type=int, default=None, help="Monte Carlo blocks."),
        click.option("--alpha", type=float, default=None, help="Pulse amplitude."),
        click.option("--eta", type=float, default=None, help="Channel transmission."),
        click.option("--seed", type=int, default=None, help="64-bit master seed."),
        click.option("--overlap-convention",
                     type=click.Choice(["paper", "standard"]), default=None,
                     help="Coherent-state overlap exponent convention."),
        click.option("--publish-fraction", type=float, default=None,
                     help="Fraction of sifted pairs published for the BER test."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _output_options(default_format="json"):
    def wrap(f):
        f = click.option("--plot", is_flag=True, default=False,
                         help="Also render a figure next to the output.")(f)
        f = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                         default=default_format, show_default=True)(f)
        f = click.option("--out", type=click.Path(), default=None,
                         help="Output path (stdout when omitted).")(f)
        return f

    return wrap


def _load_config(config_path: str | None, **flags) -> SimulationConfig:
    base = (
        SimulationConfig.from_file(config_path)
        if config_path is not None
        else SimulationConfig()
    )
    return base.replace(**flags)


def _fail_config(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(EXIT_INVALID_CONFIG)


def _fail_numerical(exc: Exception) -> None:
    click.echo(f"numerical failure: {exc}", err=True)
    sys.exit(EXIT_NUMERICAL_FAILURE)


def _figure_path(out: str | None, command: str) -> Path:
    if out is None:
        return Path(f"{command}.png")
    return Path(out).with_suffix(".png")


@click.group()
@click.version_option(package_name="dpsqkd")
def main() -> None:
    """Pulse-level DPS QKD simulator and key-rate lower-bound calculator."""


@main.command(name="keyrate")
@_config_options
@_output_options()
def cmd_keyrate(config_path, out, fmt, plot, **flags) -> None:
    """Key-rate bound from the exact binomial count distribution."""
    try:
        config = _load_config(config_path, **flags)
    except ConfigError as exc:
        _fail_config(exc)
    try:
        r = honest_click_rate(config.alpha, config.eta)
        dist = protocol.exact_count_distribution(config.n_pulses, r)
        report = keyrate.evaluate(
            dist,
            config.alpha,
            config.eta,
            convention=config.overlap_convention,
            distribution_source="exact",
        )
    except _NUMERICAL_ERRORS as exc:
        _fail_numerical(exc)
    record = {"overlap_convention": config.overlap_convention, **report.to_dict()}
    if fmt == "json":
        write_output(dumps_json(record), out)
    else:
        write_output(record_to_csv(record), out)
    if plot:
        fig = plots.save_count_distribution(
            dist.weights, report.w0, _figure_path(out, "keyrate")
        )
        click.echo(f"figure written to {fig}", err=True)


@main.command(name="simulate")
@_config_options
@_output_options()
def cmd_simulate(config_path, out, fmt, plot, **flags) -> None:
    """Monte Carlo run; key rate evaluated on the empirical distribution."""
    try:
        config = _load_config(config_path, **flags)
    except ConfigError as exc:
        _fail_config(exc)
    try:
        blocks = protocol.simulate_run(config)
        stats = protocol.estimate_statistics(
            blocks,
            publish_fraction=config.publish_fraction,
            rng=protocol.publish_rng(config.seed),
        )
        report = keyrate.evaluate(
            stats.count_histogram,
            config.alpha,
            config.eta,
            convention=config.overlap_convention,
            i_ab=stats.i_ab,
            distribution_source="empirical",
        )
    except _NUMERICAL_ERRORS as exc:
        _fail_numerical(exc)
    scalars = {
        **config.to_dict(),
        "ber": stats.ber,
        "i_ab": stats.i_ab,
        "mean_w": stats.mean_w,
        **{k: v for k, v in report.to_dict().items() if k not in ("n_pulses",)},
    }
    if fmt == "json":
        payload = {
            "config": config.to_dict(),
            "statistics": {
                "n_blocks": stats.n_blocks,
                "ber": stats.ber,
                "i_ab": stats.i_ab,
                "mean_w": stats.mean_w,
                "count_histogram": [float(p) for p in stats.count_histogram.weights],
            },
            "keyrate": report.to_dict(),
        }
        write_output(dumps_json(payload), out)
    else:
        # The count histogram is available in the JSON format only.
        write_output(record_to_csv(scalars), out)
    if plot:
        exact = protocol.exact_count_distribution(
            config.n_pulses, honest_click_rate(config.alpha, config.eta)
        )
        fig = plots.save_histogram_comparison(
            stats.count_histogram.weights, exact.weights,
            _figure_path(out, "simulate"),
        )
        click.echo(f"figure written to {fig}", err=True)


@main.command(name="sweep-alpha")
@_config_options
@_output_options(default_format="csv")
@click.option("--alpha-min", type=float, default=0.05, show_default=True)
@click.option("--alpha-max", type=float, default=1.0, show_default=True)
@click.option("--steps", type=int, default=200, show_default=True)
def cmd_sweep_alpha(config_path, out, fmt, plot, alpha_min, alpha_max, steps,
                    **flags) -> None:
    """Asymptotic rate over an amplitude grid, plus the refined optimum."""
    try:
        config = _load_config(config_path, **flags)
        if not alpha_min < alpha_max:
            raise ConfigError(
                f"alpha-min must be below alpha-max, got [{alpha_min}, {alpha_max}]"
            )
        if steps < 2:
            raise ConfigError(f"steps must be >= 2, got {steps}")
    except ConfigError as exc:
        _fail_config(exc)
    try:
        alphas = np.linspace(alpha_min, alpha_max, steps)
        rows = []
        for a in alphas:
            rows.append(
                (
                    float(a),
                    source_entropy(float(a), config.overlap_convention),
                    keyrate.asymptotic_rate(float(a), config.eta,
                                            config.overlap_convention),
                )
            )
        alpha_star, g_star = keyrate.optimize_amplitude(
            config.eta, config.overlap_convention,
            lo=alpha_min, hi=alpha_max,
        )
        s_a_star = source_entropy(alpha_star, config.overlap_convention)
    except _NUMERICAL_ERRORS as exc:
        _fail_numerical(exc)
    if fmt == "json":
        payload = {
            "eta": config.eta,
            "overlap_convention": config.overlap_convention,
            "rows": [
                {"alpha": a, "s_a": s, "g_pulse_asymptotic": g} for a, s, g in rows
            ],
            "argmax": {
                "alpha": alpha_star, "s_a": s_a_star, "g_pulse_asymptotic": g_star,
            },
        }
        write_output(dumps_json(payload), out)
    else:
        header = ["kind", "alpha", "s_a", "g_pulse_asymptotic"]
        body = [("grid", a, s, g) for a, s, g in rows]
        body.append(("argmax", alpha_star, s_a_star, g_star))
        write_output(dumps_csv(header, body), out)
    if plot:
        fig = plots.save_sweep(
            alphas, np.array([g for _, _, g in rows]), alpha_star, g_star,
            _figure_path(out, "sweep-alpha"),
        )
        click.echo(f"figure written to {fig}", err=True)


@main.command(name="verify-subadd")
@_output_options()
@click.option("--n-max", type=int, default=4, show_default=True,
              help="Largest number of qubit subsystems (at most 4).")
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=12345, show_default=True)
def cmd_verify_subadd(out, fmt, plot, n_max, trials, seed) -> None:
    """Check the conditional-entropy inequality on random states."""
    try:
        report = subadditivity.full_report(n_max=n_max, trials=trials, seed=seed)
    except (ValueError, DimensionBudgetError) as exc:
        _fail_config(exc)
    except _NUMERICAL_ERRORS as exc:
        _fail_numerical(exc)
    if fmt == "json":
        write_output(dumps_json(report), out)
    else:
        header = ["record", "n", "m", "trials", "min_slack", "passed"]
        body = [
            ("pair", p["n"], p["m"], p["trials"], p["min_slack"], p["passed"])
            for p in report["pairs"]
        ]
        body.append(
            (
                "coefficient_identity",
                report["coefficient_identity"]["max_n"],
                "",
                "",
                "",
                report["coefficient_identity"]["ok"],
            )
        )
        write_output(dumps_csv(header, body), out)
    if plot:
        fig = plots.save_slack_chart(
            report["pairs"], report["slack_tolerance"],
            _figure_path(out, "verify-subadd"),
        )
        click.echo(f"figure written to {fig}", err=True)
    if not report["all_passed"]:
        click.echo("verification failed: slack below tolerance", err=True)
        sys.exit(EXIT_VERIFICATION_FAILURE)


if __name__ == "__main__":
    main()
