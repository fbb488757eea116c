"""Trajectories and the events along them.

A trajectory samples the correlation measures of an evolving Bell-diagonal
state on a time grid.  Three kinds of events are located and refined by
bisection on the underlying continuous quantities (never on the sampled
grid alone):

* sudden changes: instants where the active discord branch switches, i.e.
  roots of Q1(t) - Q2(t);
* entanglement sudden death (ESD): the instant after which the concurrence
  stays zero to the end of the window, i.e. the last positive-to-zero
  crossing of the concurrence margin;
* discord zeros: roots of the amplitude g(t), where the state becomes
  uncorrelated and every measure vanishes.

Grid scanning brackets each event; bisection sharpens it to 1e-8.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import (
    CorrelationReport,
    _BRANCH_BY_CODE,
    _x_discord_pieces,
    x_report_arrays,
)
from .decoherence import PulseSchedule, ReservoirParams, amplitude, pt_analytic
from .errors import DomainError
from .evolution import BellDiagonalParams, _as_bd, _evolve_bd_entries

__all__ = [
    "Trajectory",
    "EsdResult",
    "EventList",
    "simulate_trajectory",
    "find_sudden_changes",
    "find_esd",
    "find_events",
]

_REFINE_TOL = 1e-8
_MIN_GAP = 1e-8


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Correlation reports along a time grid, plus what produced them."""

    times: np.ndarray
    reports: tuple[CorrelationReport, ...]
    reservoir: ReservoirParams
    schedule: PulseSchedule
    initial: BellDiagonalParams

    def column(self, name: str) -> np.ndarray:
        """Array of one report field (e.g. 'discord') over the grid."""
        return np.array([getattr(r, name) for r in self.reports])


@dataclass(frozen=True)
class EsdResult:
    """Outcome of the ESD search.

    ``time`` is None when entanglement never dies inside the window; then
    ``identically_zero`` distinguishes "there was never any entanglement"
    from "entanglement survives to the window end".
    """

    time: float | None
    identically_zero: bool


@dataclass(frozen=True)
class EventList:
    """All events found on one trajectory."""

    sudden_changes: tuple[float, ...]
    esd: EsdResult
    discord_zeros: tuple[float, ...]


def _check_times(times) -> np.ndarray:
    arr = np.asarray(times, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError("times must be a non-empty 1-d array")
    if not np.all(np.isfinite(arr)) or arr[0] < 0.0:
        raise DomainError("times must be finite and non-negative")
    if arr.size > 1 and np.any(np.diff(arr) <= 0.0):
        raise DomainError("times must be strictly increasing")
    return arr


def simulate_trajectory(reservoir, schedule, initial, times) -> Trajectory:
    """Evolve a Bell-diagonal state and report all correlations at ``times``."""
    bd = _as_bd(initial)
    arr = _check_times(times)
    p = pt_analytic(reservoir, schedule, arr)
    a, b, d, z, w = _evolve_bd_entries(bd, p)
    out = x_report_arrays(a, b, d, z, w)
    reports = tuple(
        CorrelationReport(
            mutual_info=float(out["mutual_info"][i]),
            classical=float(out["classical"][i]),
            discord=float(out["discord"][i]),
            branch=_BRANCH_BY_CODE[int(out["branch_code"][i])],
            concurrence=float(out["concurrence"][i]),
            q1=float(out["q1"][i]),
            q2=float(out["q2"][i]),
        )
        for i in range(arr.size)
    )
    return Trajectory(
        times=arr, reports=reports, reservoir=reservoir, schedule=schedule, initial=bd
    )


def _bisect(fn, lo, hi, f_lo, tol=_REFINE_TOL):
    """Root of a sign change of ``fn`` on [lo, hi], to bracket width ``tol``."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _branch_gap_fn(traj: Trajectory):
    """Continuous Q1(t) - Q2(t) rebuilt from the trajectory's ingredients."""

    def gap(t: float) -> float:
        p = pt_analytic(traj.reservoir, traj.schedule, float(t))
        a, b, d, z, w = _evolve_bd_entries(traj.initial, p)
        _, q1, q2 = _x_discord_pieces(a, b, d, abs(z), abs(w))
        return float(q1 - q2)

    return gap


def _concurrence_margin_fn(traj: Trajectory):
    """Continuous signed concurrence margin (positive iff entangled)."""

    def margin(t: float) -> float:
        p = pt_analytic(traj.reservoir, traj.schedule, float(t))
        a, b, d, z, w = _evolve_bd_entries(traj.initial, p)
        a = max(float(a), 0.0)
        d = float(d)
        return 2.0 * max(
            abs(w) - float(b), abs(z) - np.sqrt(a * max(d, 0.0))
        )

    return margin


def _concurrence_margin_array(traj: Trajectory) -> np.ndarray:
    p = pt_analytic(traj.reservoir, traj.schedule, traj.times)
    a, b, d, z, w = _evolve_bd_entries(traj.initial, p)
    return 2.0 * np.maximum(
        np.abs(w) - b,
        np.abs(z) - np.sqrt(np.maximum(a, 0.0) * np.maximum(d, 0.0)),
    )


def find_sudden_changes(traj: Trajectory, *, min_gap: float = _MIN_GAP) -> tuple[float, ...]:
    """Times where the discord branch switches, refined to 1e-8.

    Scans Q1 - Q2 along the grid for strict sign changes and bisects each
    bracket.  Sign flips whose bracket never reaches magnitude ``min_gap``
    are unresolved ties, not events: near an amplitude zero both branches
    collapse to the same value and the sign of their difference is noise.
    """
    if traj.times.size < 2:
        return ()
    gap = np.array([r.q1 - r.q2 for r in traj.reports])
    resolved = np.maximum(np.abs(gap[:-1]), np.abs(gap[1:])) > min_gap
    flips = np.nonzero((gap[:-1] * gap[1:] < 0.0) & resolved)[0]
    fn = _branch_gap_fn(traj)
    return tuple(
        _bisect(fn, float(traj.times[i]), float(traj.times[i + 1]), float(gap[i]))
        for i in flips
    )


def find_esd(traj: Trajectory) -> EsdResult:
    """Entanglement sudden death time, refined to 1e-8.

    ESD is the time after which the concurrence stays zero to the end of
    the window, i.e. the transition following the last entangled sample.
    Returns time=None either when the state is never entangled in-window
    (identically_zero=True) or when entanglement survives to the window
    end (identically_zero=False).
    """
    if traj.times.size < 2:
        return EsdResult(time=None, identically_zero=True)
    margin = _concurrence_margin_array(traj)
    positive = np.nonzero(margin > 0.0)[0]
    if positive.size == 0:
        return EsdResult(time=None, identically_zero=True)
    last = int(positive[-1])
    if last == margin.size - 1:
        return EsdResult(time=None, identically_zero=False)
    fn = _concurrence_margin_fn(traj)
    t_death = _bisect(
        fn, float(traj.times[last]), float(traj.times[last + 1]), float(margin[last])
    )
    return EsdResult(time=t_death, identically_zero=False)


def find_discord_zeros(traj: Trajectory) -> tuple[float, ...]:
    """Roots of the amplitude g(t) inside the window, refined to 1e-8.

    At each root the decoherence function vanishes, the two-qubit state
    collapses to |00><00|, and every correlation measure is zero.  The
    amplitude changes sign at a simple root, so sign scanning on the grid
    brackets them (with or without pulses, in any regime).
    """
    if traj.times.size < 2:
        return ()
    g = amplitude(traj.reservoir, traj.schedule, traj.times)
    flips = np.nonzero(g[:-1] * g[1:] < 0.0)[0]

    def fn(t: float) -> float:
        return amplitude(traj.reservoir, traj.schedule, float(t))

    return tuple(
        _bisect(fn, float(traj.times[i]), float(traj.times[i + 1]), float(g[i]))
        for i in flips
    )


def find_events(traj: Trajectory) -> EventList:
    """All events on the trajectory: branch switches, ESD, discord zeros."""
    return EventList(
        sudden_changes=find_sudden_changes(traj),
        esd=find_esd(traj),
        discord_zeros=find_discord_zeros(traj),
    )
