"""Command line interface.

Two subcommands:

* ``simulate`` runs a sweep (a named preset or a custom parameter set),
  writes deterministic CSV, prints per-series event summaries, and renders
  a figure unless told not to;
* ``validate`` checks a parameter set without running anything: reservoir
  regime, amplitude zeros, pulse protection, and whether the initial state
  is a valid Bell-diagonal state with a sudden change to expect.

Exit codes: 0 on success, 2 for malformed usage (unknown keys, unparsable
values, missing initial state), 3 for mathematically out-of-domain values
(negative rates, correlations outside the physical region).
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

import click
import numpy as np

from . import __version__
from .decoherence import (
    PulseSchedule,
    Regime,
    ReservoirParams,
    discord_zero_times,
    pt_analytic,
)
from .errors import DomainError
from .evolution import BellDiagonalParams
from .sweep import SweepConfig, preset_config, run_sweep, write_csv

_CONFIG_KEYS = ("preset", "gamma0", "lambda", "pulse_T", "c", "werner_r", "tmax", "dt")


def _float(text, what: str) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise click.UsageError(f"{what} must be a number, got {text!r}") from None


def _maybe_float(value, what: str):
    if value is None or isinstance(value, float):
        return value
    return _float(value, what)


def _parse_c(text: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise click.UsageError(f"c expects three comma-separated numbers, got {text!r}")
    return tuple(_float(p, "c component") for p in parts)


def _parse_intervals(text: str) -> tuple[float | None, ...]:
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if part.lower() in ("none", "off", "free"):
            out.append(None)
        else:
            out.append(_float(part, "pulse_T"))
    if not out:
        raise click.UsageError(f"pulse_T expects intervals or 'none', got {text!r}")
    return tuple(out)


def _read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key or not value:
                raise click.UsageError(f"{path}:{lineno}: expected key=value")
            if key not in _CONFIG_KEYS:
                known = ", ".join(_CONFIG_KEYS)
                raise click.UsageError(
                    f"{path}:{lineno}: unknown key {key!r} (known keys: {known})"
                )
            values[key] = value
    return values


@click.group()
@click.version_option(__version__, prog_name="bangbang")
def main():
    """Correlation dynamics of two qubits in lossy cavities, with and
    without bang-bang decoupling pulses."""


@main.command()
@click.option("--preset", default=None, help="Named sweep (fig1a..fig7b) or 'custom'.")
@click.option("--gamma0", type=float, default=None, help="Qubit decay rate.")
@click.option("--lambda", "lam", type=float, default=None, help="Reservoir spectral width.")
@click.option(
    "--pulse-T",
    "pulse_t",
    default=None,
    help="Comma-separated pulse intervals; 'none' for free evolution.",
)
@click.option("--c", "c_text", default=None, help="Initial Bell-diagonal triple c1,c2,c3.")
@click.option("--werner-r", type=float, default=None, help="Initial Werner mixing in [0, 1].")
@click.option("--tmax", type=float, default=None, help="Window length.")
@click.option("--dt", type=float, default=None, help="Time step.")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="key=value file; command-line flags override it.",
)
@click.option("--out", default="-", help="CSV path, or '-' for stdout.", show_default=True)
@click.option("--plot", "plot_path", default=None, help="Figure path (PNG/PDF/SVG).")
@click.option("--no-plot", is_flag=True, help="Skip figure rendering.")
def simulate(
    preset,
    gamma0,
    lam,
    pulse_t,
    c_text,
    werner_r,
    tmax,
    dt,
    config_path,
    out,
    plot_path,
    no_plot,
):
    """Run a sweep and write CSV, event summaries, and a figure."""
    file_values = _read_config_file(config_path) if config_path else {}

    def pick(flag, key):
        return flag if flag is not None else file_values.get(key)

    preset_name = pick(preset, "preset") or "custom"
    if preset_name == "custom":
        config = SweepConfig()
    else:
        try:
            config = preset_config(preset_name)
        except DomainError as exc:
            raise click.UsageError(str(exc)) from None

    changes = {"preset": preset_name}
    value = _maybe_float(pick(gamma0, "gamma0"), "gamma0")
    if value is not None:
        changes["gamma0"] = value
    value = _maybe_float(pick(lam, "lambda"), "lambda")
    if value is not None:
        changes["lam"] = value
    value = _maybe_float(pick(tmax, "tmax"), "tmax")
    if value is not None:
        changes["t_max"] = value
    value = _maybe_float(pick(dt, "dt"), "dt")
    if value is not None:
        changes["dt"] = value
    value = pick(pulse_t, "pulse_T")
    if value is not None:
        changes["intervals"] = _parse_intervals(value)
    c_value = pick(c_text, "c")
    r_value = _maybe_float(pick(werner_r, "werner_r"), "werner_r")
    if c_value is not None:
        changes.update(c=_parse_c(c_value), r=None, r_values=None)
    elif r_value is not None:
        changes.update(r=r_value, c=None, r_values=None)
    config = dataclasses.replace(config, **changes)

    if config.c is None and config.r is None and config.r_values is None:
        raise click.UsageError(
            "custom simulations need an initial state: pass --c or --werner-r"
        )

    try:
        result = run_sweep(config)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(3) from None

    to_stdout = out == "-"
    if to_stdout:
        write_csv(result, click.get_text_stream("stdout"))
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_csv(result, fh)
    for line in result.summary:
        click.echo(line, err=to_stdout)
    if not to_stdout:
        click.echo(f"wrote {out}")

    figure_path = plot_path
    if figure_path is None and not to_stdout and not no_plot:
        figure_path = str(Path(out).with_suffix(".png"))
    if figure_path is not None and not no_plot:
        from .plotting import render

        render(result, figure_path)
        click.echo(f"wrote {figure_path}", err=to_stdout)


@main.command()
@click.option("--gamma0", type=float, default=1.0, show_default=True)
@click.option("--lambda", "lam", type=float, default=0.1, show_default=True)
@click.option("--pulse-T", "pulse_t", default=None, help="Single interval or 'none'.")
@click.option("--c", "c_text", default=None, help="Bell-diagonal triple c1,c2,c3.")
@click.option("--werner-r", type=float, default=None, help="Werner mixing in [0, 1].")
def validate(gamma0, lam, pulse_t, c_text, werner_r):
    """Check parameters without simulating: regime, zeros, state validity."""
    try:
        reservoir = ReservoirParams(gamma0=gamma0, lam=lam)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(3) from None

    regime = reservoir.regime
    if regime is Regime.NON_MARKOVIAN:
        click.echo("regime: non-Markovian (gamma0 > lam/2)")
        zeros = discord_zero_times(reservoir, n_max=3)
        click.echo(
            "amplitude zeros: " + ", ".join(format(t, ".6g") for t in zeros)
        )
    elif regime is Regime.MARKOVIAN:
        click.echo("regime: Markovian (gamma0 < lam/2)")
        click.echo("amplitude zeros: none (monotonic decay)")
    else:
        click.echo("regime: boundary (gamma0 = lam/2)")
        click.echo("amplitude zeros: none (critically damped)")

    if pulse_t is not None:
        intervals = _parse_intervals(pulse_t)
        if len(intervals) != 1:
            raise click.UsageError("validate takes a single pulse interval")
        interval = intervals[0]
        if interval is None:
            click.echo("pulses: none (free evolution)")
        else:
            try:
                schedule = PulseSchedule(interval)
                grid = np.arange(0.0, 10.0 + 1e-9, 0.005)
                p_min = float(pt_analytic(reservoir, schedule, grid).min())
            except DomainError as exc:
                click.echo(f"error: {exc}", err=True)
                raise SystemExit(3) from None
            click.echo(
                f"pulses every {format(interval, 'g')}: "
                f"min population on [0, 10] is {p_min:.6g}"
            )

    if c_text is not None or werner_r is not None:
        if c_text is not None:
            triple = _parse_c(c_text)
        else:
            triple = (-werner_r, -werner_r, -werner_r)
        try:
            state = BellDiagonalParams(*triple)
        except DomainError as exc:
            click.echo(f"initial state: invalid ({exc})", err=True)
            raise SystemExit(3) from None
        c1, c2, c3 = state.triple
        click.echo(
            "initial state: valid Bell-diagonal, c = ("
            + ", ".join(format(v, "g") for v in (c1, c2, c3))
            + ")"
        )
        if abs(c3) > max(abs(c1), abs(c2)):
            click.echo("sudden change expected: yes (|c3| > max(|c1|, |c2|))")
        else:
            click.echo("sudden change expected: no (|c3| <= max(|c1|, |c2|))")
