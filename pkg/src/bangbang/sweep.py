"""Parameter sweeps, figure presets, and delimited output.

A sweep runs one trajectory per series, where a series is a combination of
pulse interval and (optionally) one swept parameter: the Werner mixing r,
the reservoir correlation time 1/lam, or the qubit lifetime 1/gamma0.
Results are written as CSV with '#'-prefixed configuration lines, twelve
significant digits, and a fixed column order, so identical configurations
produce byte-identical files.

Built-in presets cover the standard windows: free and pulsed correlation
dynamics of Bell-diagonal states, Werner sweeps, pulse-interval maps, and
discord-loss sweeps over reservoir parameters.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .decoherence import PulseSchedule, ReservoirParams, pt_analytic
from .detect import EventList, Trajectory, find_events, simulate_trajectory
from .errors import DomainError
from .evolution import BellDiagonalParams

__all__ = [
    "SweepConfig",
    "SeriesResult",
    "SweepResult",
    "PRESETS",
    "preset_config",
    "run_sweep",
    "write_csv",
]


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


@dataclass(frozen=True)
class SweepConfig:
    """Everything needed to reproduce one sweep.

    Exactly one of ``c`` (Bell-diagonal triple), ``r`` (Werner mixing), or
    ``r_values`` (swept Werner mixing) selects the initial state.  At most
    one of ``r_values``, ``lam_inv_values``, ``gamma0_inv_values`` may be
    set; the latter two override ``lam`` / ``gamma0`` per series.
    """

    preset: str = "custom"
    gamma0: float = 1.0
    lam: float = 0.1
    intervals: tuple[float | None, ...] = (None,)
    c: tuple[float, float, float] | None = None
    r: float | None = None
    r_values: tuple[float, ...] | None = None
    lam_inv_values: tuple[float, ...] | None = None
    gamma0_inv_values: tuple[float, ...] | None = None
    t_max: float = 20.0
    dt: float = 0.01
    delta_q: bool = False

    def sweep_name(self) -> str | None:
        """Name of the swept column, or None for plain sweeps."""
        if self.r_values is not None:
            return "r"
        if self.lam_inv_values is not None:
            return "lambda_inv"
        if self.gamma0_inv_values is not None:
            return "gamma0_inv"
        return None

    def has_interval_column(self) -> bool:
        return len(self.intervals) > 1 or self.intervals[0] is not None

    def validate(self) -> None:
        n_initial = sum(v is not None for v in (self.c, self.r, self.r_values))
        if n_initial != 1:
            raise DomainError(
                "exactly one of c, r, r_values must select the initial state"
            )
        n_sweep = sum(
            v is not None
            for v in (self.r_values, self.lam_inv_values, self.gamma0_inv_values)
        )
        if n_sweep > 1:
            raise DomainError("at most one parameter may be swept")
        if not self.intervals:
            raise DomainError("intervals must not be empty")
        for interval in self.intervals:
            if interval is not None and not interval > 0.0:
                raise DomainError(f"pulse interval must be positive, got {interval}")
        if not self.dt > 0.0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        if self.t_max < self.dt:
            raise DomainError("t_max must be at least one time step")
        for name in ("lam_inv_values", "gamma0_inv_values"):
            values = getattr(self, name)
            if values is not None and any(not v > 0.0 for v in values):
                raise DomainError(f"{name} must be positive")
        if self.r_values is not None and any(
            not 0.0 <= v <= 1.0 for v in self.r_values
        ):
            raise DomainError("r_values must lie in [0, 1]")


def _r_grid() -> tuple[float, ...]:
    return tuple(round(0.02 * k, 10) for k in range(51))


def _interval_grid() -> tuple[float | None, ...]:
    return (None,) + tuple(round(0.05 * k, 10) for k in range(1, 21))


PRESETS = {
    "fig1a": lambda: SweepConfig(preset="fig1a", c=(0.9, -0.9, 1.0), t_max=20.0),
    "fig1b": lambda: SweepConfig(preset="fig1b", c=(0.9, -0.9, 0.8), t_max=20.0),
    "fig2": lambda: SweepConfig(
        preset="fig2", c=(0.9, -0.9, 1.0), intervals=(None, 0.4, 0.2, 0.1), t_max=20.0
    ),
    "fig3": lambda: SweepConfig(preset="fig3", r_values=_r_grid(), t_max=30.0),
    "fig4": lambda: SweepConfig(
        preset="fig4", r=1.0, intervals=(None, 0.6, 0.2, 0.01), t_max=20.0
    ),
    "fig5": lambda: SweepConfig(
        preset="fig5", r=0.5, intervals=(None, 0.6, 0.2, 0.01), t_max=30.0
    ),
    "fig6": lambda: SweepConfig(
        preset="fig6", r=1.0, intervals=_interval_grid(), t_max=15.0
    ),
    "fig7a": lambda: SweepConfig(
        preset="fig7a",
        r=1.0,
        intervals=(0.01,),
        lam_inv_values=tuple(float(k) for k in range(1, 21)),
        t_max=10.0,
        delta_q=True,
    ),
    "fig7b": lambda: SweepConfig(
        preset="fig7b",
        r=1.0,
        intervals=(0.01,),
        gamma0_inv_values=tuple(0.5 * k for k in range(1, 11)),
        t_max=10.0,
        delta_q=True,
    ),
}


def preset_config(name: str) -> SweepConfig:
    """The built-in configuration for ``name`` (DomainError if unknown)."""
    try:
        builder = PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise DomainError(f"unknown preset {name!r}; known presets: {known}") from None
    return builder()


@dataclass(frozen=True, eq=False)
class SeriesResult:
    """One trajectory's worth of sweep output."""

    label: str
    interval: float | None
    sweep_value: float | None
    times: np.ndarray
    population: np.ndarray
    mutual_info: np.ndarray
    classical: np.ndarray
    discord: np.ndarray
    branch: tuple[str, ...]
    concurrence: np.ndarray
    q1: np.ndarray
    q2: np.ndarray
    delta_q: np.ndarray | None
    events: EventList


@dataclass(frozen=True, eq=False)
class SweepResult:
    """All series of one sweep plus human-readable event summaries."""

    config: SweepConfig
    series: tuple[SeriesResult, ...]
    summary: tuple[str, ...]

    def columns(self) -> tuple[str, ...]:
        cols = ["t"]
        if self.config.has_interval_column():
            cols.append("T")
        sweep = self.config.sweep_name()
        if sweep is not None:
            cols.append(sweep)
        cols += ["P", "I", "C", "Q", "branch", "C_E", "Q1", "Q2"]
        if self.config.delta_q:
            cols.append("dQ")
        return tuple(cols)


def _time_grid(t_max: float, dt: float) -> np.ndarray:
    n = int(np.floor(t_max / dt + 1e-9))
    return np.arange(n + 1) * dt


def _initial_state(config: SweepConfig, sweep_value: float | None) -> BellDiagonalParams:
    if config.c is not None:
        return BellDiagonalParams(*config.c)
    r = config.r if config.r is not None else sweep_value
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"Werner mixing r must lie in [0, 1], got {r}")
    return BellDiagonalParams(-r, -r, -r)


def _reservoir(config: SweepConfig, sweep_value: float | None) -> ReservoirParams:
    gamma0, lam = config.gamma0, config.lam
    name = config.sweep_name()
    if name == "lambda_inv":
        lam = 1.0 / sweep_value
    elif name == "gamma0_inv":
        gamma0 = 1.0 / sweep_value
    return ReservoirParams(gamma0=gamma0, lam=lam)


def _series_label(config: SweepConfig, interval: float | None, sweep_value) -> str:
    parts = []
    if config.has_interval_column():
        parts.append("T=none" if interval is None else f"T={_fmt(interval)}")
    name = config.sweep_name()
    if name is not None:
        parts.append(f"{name}={_fmt(sweep_value)}")
    return " ".join(parts) if parts else "free"


def _summarize(label: str, events: EventList) -> str:
    sc = ", ".join(f"{t:.4f}" for t in events.sudden_changes) or "none"
    if events.esd.time is not None:
        esd = f"{events.esd.time:.4f}"
    elif events.esd.identically_zero:
        esd = "never entangled"
    else:
        esd = "none (entangled at window end)"
    dz = ", ".join(f"{t:.4f}" for t in events.discord_zeros) or "none"
    return f"[{label}] sudden changes: {sc}; esd: {esd}; discord zeros: {dz}"


def _run_series(
    config: SweepConfig, interval: float | None, sweep_value: float | None
) -> SeriesResult:
    reservoir = _reservoir(config, sweep_value)
    schedule = PulseSchedule(interval)
    initial = _initial_state(config, sweep_value)
    times = _time_grid(config.t_max, config.dt)
    traj = simulate_trajectory(reservoir, schedule, initial, times)
    discord = traj.column("discord")
    return SeriesResult(
        label=_series_label(config, interval, sweep_value),
        interval=interval,
        sweep_value=sweep_value,
        times=times,
        population=pt_analytic(reservoir, schedule, times),
        mutual_info=traj.column("mutual_info"),
        classical=traj.column("classical"),
        discord=discord,
        branch=tuple(r.branch.value for r in traj.reports),
        concurrence=traj.column("concurrence"),
        q1=traj.column("q1"),
        q2=traj.column("q2"),
        delta_q=(discord[0] - discord) if config.delta_q else None,
        events=find_events(traj),
    )


def run_sweep(config: SweepConfig) -> SweepResult:
    """Run every series of ``config`` and collect results and summaries."""
    config.validate()
    sweep_values: tuple = (None,)
    name = config.sweep_name()
    if name == "r":
        sweep_values = config.r_values
    elif name == "lambda_inv":
        sweep_values = config.lam_inv_values
    elif name == "gamma0_inv":
        sweep_values = config.gamma0_inv_values
    series = tuple(
        _run_series(config, interval, value)
        for value in sweep_values
        for interval in config.intervals
    )
    summary = tuple(_summarize(s.label, s.events) for s in series)
    return SweepResult(config=config, series=series, summary=summary)


def _header_lines(config: SweepConfig) -> list[str]:
    if config.lam_inv_values is not None:
        lam = "swept"
    else:
        lam = _fmt(config.lam)
    if config.gamma0_inv_values is not None:
        gamma0 = "swept"
    else:
        gamma0 = _fmt(config.gamma0)
    if config.c is not None:
        initial = "c:" + ",".join(_fmt(v) for v in config.c)
    elif config.r is not None:
        initial = f"r:{_fmt(config.r)}"
    else:
        initial = "r:swept"
    intervals = ",".join(
        "none" if v is None else _fmt(v) for v in config.intervals
    )
    return [
        "# bangbang 0.1.0",
        f"# preset={config.preset}",
        f"# gamma0={gamma0}",
        f"# lam={lam}",
        f"# initial={initial}",
        f"# intervals={intervals}",
        f"# t_max={_fmt(config.t_max)}",
        f"# dt={_fmt(config.dt)}",
    ]


def write_csv(result: SweepResult, fh) -> None:
    """Write the sweep as deterministic CSV to a text stream."""
    config = result.config
    for line in _header_lines(config):
        fh.write(line + "\n")
    columns = result.columns()
    fh.write(",".join(columns) + "\n")
    has_t_col = config.has_interval_column()
    sweep = config.sweep_name()
    for s in result.series:
        t_cell = "" if s.interval is None else _fmt(s.interval)
        sweep_cell = None if sweep is None else _fmt(s.sweep_value)
        for i in range(s.times.size):
            cells = [_fmt(s.times[i])]
            if has_t_col:
                cells.append(t_cell)
            if sweep_cell is not None:
                cells.append(sweep_cell)
            cells += [
                _fmt(s.population[i]),
                _fmt(s.mutual_info[i]),
                _fmt(s.classical[i]),
                _fmt(s.discord[i]),
                s.branch[i],
                _fmt(s.concurrence[i]),
                _fmt(s.q1[i]),
                _fmt(s.q2[i]),
            ]
            if s.delta_q is not None:
                cells.append(_fmt(s.delta_q[i]))
            fh.write(",".join(cells) + "\n")
