"""Tuned vs untuned frequency sweeps and their time-domain cross-check."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .frequency import steady_state
from .model import GeneratorParams, MechanicalParams, ParameterError, RlcLoad, WaveForcing
from .simulate import SimConfig, average_powers, harmonic_fit, settle_duration, simulate
from .tuning import tune

DEFAULT_OMEGA_MIN = 0.5
DEFAULT_OMEGA_MAX = 2.7
DEFAULT_POINTS = 45

CSV_FIELDS = (
    "omega", "mode", "tuned_c", "tuned_l", "i_rms", "f_pto_eff", "f_w_eff",
    "s_apparent", "p_active", "p_absorbed", "power_factor",
)


class Mode(enum.Enum):
    TUNED = "Tuned"
    UNTUNED = "Untuned"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        for m in cls:
            if m.value.lower() == text.strip().lower():
                return m
        raise ValueError(f"unknown sweep mode {text!r}; expected Tuned or Untuned")


@dataclass(frozen=True)
class SweepRow:
    omega: float
    mode: Mode
    tuned_c: Optional[float]
    tuned_l: Optional[float]
    i_rms: float
    f_pto_eff: float
    f_w_eff: float
    s_apparent: float
    p_active: float
    p_absorbed: float
    power_factor: float
    resistance: float

    @property
    def load(self) -> RlcLoad:
        return RlcLoad(self.resistance, inductance=self.tuned_l, capacitance=self.tuned_c)


def default_grid(
    n: int = DEFAULT_POINTS, lo: float = DEFAULT_OMEGA_MIN, hi: float = DEFAULT_OMEGA_MAX
) -> np.ndarray:
    if n < 1:
        raise ParameterError(f"grid needs at least one point, got {n}")
    return np.linspace(lo, hi, n)


def sweep(
    mech: MechanicalParams,
    gen: GeneratorParams,
    r: float,
    wave_amp: float,
    omegas: Iterable[float],
    mode: Mode = Mode.TUNED,
) -> list[SweepRow]:
    """Evaluate the steady state at each frequency.

    In tuned mode the LC network is retuned at every point; untuned mode
    uses the resistance alone.
    """
    rows = []
    for w in omegas:
        w = float(w)
        if mode is Mode.TUNED:
            load = tune(mech, gen, w).apply(r)
        else:
            load = RlcLoad(r)
        rep = steady_state(mech, gen, load, WaveForcing(wave_amp, w))
        rows.append(
            SweepRow(
                omega=w,
                mode=mode,
                tuned_c=load.capacitance,
                tuned_l=load.inductance,
                i_rms=rep.curr_rms,
                f_pto_eff=gen.k_t * rep.curr_rms,
                f_w_eff=wave_amp / math.sqrt(2.0),
                s_apparent=rep.s_apparent,
                p_active=rep.p_active,
                p_absorbed=rep.p_absorbed,
                power_factor=rep.power_factor,
                resistance=r,
            )
        )
    return rows


@dataclass(frozen=True)
class OracleDeviation:
    omega: float
    p_active: float
    p_absorbed: float
    i_rms: float

    @property
    def worst(self) -> float:
        return max(self.p_active, self.p_absorbed, self.i_rms)


@dataclass(frozen=True)
class OracleReport:
    rows: tuple[OracleDeviation, ...]

    @property
    def max_p_active(self) -> float:
        return max((d.p_active for d in self.rows), default=0.0)

    @property
    def max_p_absorbed(self) -> float:
        return max((d.p_absorbed for d in self.rows), default=0.0)

    @property
    def max_i_rms(self) -> float:
        return max((d.i_rms for d in self.rows), default=0.0)

    @property
    def max_deviation(self) -> float:
        return max((d.worst for d in self.rows), default=0.0)


def subsample(rows: Sequence[SweepRow], count: int) -> list[SweepRow]:
    """``count`` rows spread evenly over ``rows`` (ends included)."""
    if count <= 0 or not rows:
        return []
    if count >= len(rows):
        return list(rows)
    idx = np.unique(np.round(np.linspace(0, len(rows) - 1, count)).astype(int))
    return [rows[i] for i in idx]


def sweep_oracle_check(
    rows: Sequence[SweepRow],
    mech: MechanicalParams,
    gen: GeneratorParams,
    wave_amp: float,
    sim_cfg: SimConfig = SimConfig(),
    n_periods: int = 5,
) -> OracleReport:
    """Re-run each row through the time-domain simulator and report the
    relative deviation of mean powers and RMS current.

    ``t_end`` is extended per row when ``sim_cfg`` is too short for the
    transient to die out.
    """
    out = []
    for row in rows:
        load = row.load
        wave = WaveForcing(wave_amp, row.omega)
        t_end = max(sim_cfg.t_end, settle_duration(mech, gen, load, wave, n_periods=n_periods))
        trace = simulate(mech, gen, load, wave, replace(sim_cfg, t_end=t_end))
        p_act, p_abs = average_powers(trace, n_periods)
        i_amp, _ = harmonic_fit(trace, "i", n_periods)
        out.append(
            OracleDeviation(
                omega=row.omega,
                p_active=abs(p_act / row.p_active - 1.0),
                p_absorbed=abs(p_abs / row.p_absorbed - 1.0),
                i_rms=abs(i_amp / math.sqrt(2.0) / row.i_rms - 1.0),
            )
        )
    return OracleReport(tuple(out))
