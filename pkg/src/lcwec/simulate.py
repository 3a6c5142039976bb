"""Time-domain integration of the closed-loop oscillator.

The state ``(x, x_dot)`` is advanced with classical fixed-step RK4; all
other signals (acceleration, voltage, branch currents, sub-forces and
instantaneous powers) are recovered algebraically at each sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .model import (
    GeneratorParams,
    MechanicalParams,
    ParameterError,
    RlcLoad,
    WaveForcing,
    closed_loop_coefficients,
    electric_induced,
)

COLUMNS = (
    "t", "x", "x_dot", "x_ddot", "f_w", "f_pto", "f_r_sub", "f_l_sub",
    "f_c_sub", "v", "i", "i_r", "i_l", "i_c", "p_elec", "p_abs",
)

#: growth factor over the reference deflection treated as numerical blow-up
INSTABILITY_FACTOR = 1e6


class IntegrationError(RuntimeError):
    """The integration diverged (step size too large for the dynamics)."""


class TraceTooShortError(ValueError):
    """The trace does not contain the requested number of periods."""


@dataclass(frozen=True)
class SimConfig:
    dt: float = 0.01
    t_end: float = 60.0
    x0: float = 0.0
    v0: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ParameterError(f"dt must be > 0, got {self.dt!r}")
        if not (math.isfinite(self.t_end) and self.t_end >= self.dt):
            raise ParameterError(f"t_end must be >= dt, got t_end={self.t_end!r}")
        if not (math.isfinite(self.x0) and math.isfinite(self.v0)):
            raise ParameterError("initial conditions must be finite")

    @property
    def n_samples(self) -> int:
        # guard against t_end/dt landing just below an integer
        return int(math.floor(self.t_end / self.dt + 1e-9)) + 1


@dataclass(frozen=True, eq=False)
class SimTrace:
    """Uniformly sampled signals; ``data`` has one row per sample and one
    column per entry of :data:`COLUMNS`."""

    data: np.ndarray
    omega: float
    dt: float
    columns: tuple = field(default=COLUMNS)

    def __post_init__(self):
        if self.data.ndim != 2 or self.data.shape[1] != len(self.columns):
            raise ValueError(
                f"data must have shape (n, {len(self.columns)}), got {self.data.shape}"
            )

    def __len__(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    @property
    def t(self) -> np.ndarray:
        return self["t"]

    @classmethod
    def from_columns(cls, omega: float, dt: float, **cols: np.ndarray) -> "SimTrace":
        """Build a trace from named arrays; missing columns are zero-filled."""
        n = len(cols["t"])
        data = np.zeros((n, len(COLUMNS)))
        for name, values in cols.items():
            data[:, COLUMNS.index(name)] = values
        return cls(data=data, omega=omega, dt=dt)


def _rk4(rhs, y0, t0, dt, n):
    """Fixed-step RK4 for a 2-state system on plain floats.

    Returns the list of states at ``t0 + k*dt`` for ``k = 0..n-1``.
    """
    x, v = y0
    out_x = [x]
    out_v = [v]
    h2 = 0.5 * dt
    for k in range(n - 1):
        t = t0 + k * dt
        k1x, k1v = rhs(t, x, v)
        k2x, k2v = rhs(t + h2, x + h2 * k1x, v + h2 * k1v)
        k3x, k3v = rhs(t + h2, x + h2 * k2x, v + h2 * k2v)
        k4x, k4v = rhs(t + dt, x + dt * k3x, v + dt * k3v)
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        out_x.append(x)
        out_v.append(v)
    return np.array(out_x), np.array(out_v)


def simulate(
    mech: MechanicalParams,
    gen: GeneratorParams,
    load: RlcLoad,
    wave: WaveForcing,
    cfg: SimConfig = SimConfig(),
    *,
    force: Optional[Callable[[float], float]] = None,
) -> SimTrace:
    """Integrate ``M x'' + B x' + K x = f_w(t)`` with closed-loop totals.

    ``force`` overrides the wave force ``A_w cos(omega t)``; it exists for
    free-response checks and must be a scalar function of time.
    """
    eind = electric_induced(gen, load)
    m, b, k = closed_loop_coefficients(mech, eind)
    a_w, w = wave.amplitude, wave.omega
    if force is None:
        def force(t):
            return a_w * math.cos(w * t)

    inv_m = 1.0 / m

    def rhs(t, x, v):
        return v, (force(t) - b * v - k * x) * inv_m

    n = cfg.n_samples
    t = np.arange(n) * cfg.dt
    x, xd = _rk4(rhs, (cfg.x0, cfg.v0), 0.0, cfg.dt, n)

    ref = max(a_w / k, abs(cfg.x0), abs(cfg.v0) * math.sqrt(m / k))
    if not (np.all(np.isfinite(x)) and np.max(np.abs(x)) <= INSTABILITY_FACTOR * ref):
        raise IntegrationError(
            f"integration diverged with dt={cfg.dt}; displacement exceeded "
            f"{INSTABILITY_FACTOR:g} x reference deflection {ref:.3g} m"
        )

    f_w = np.array([force(ti) for ti in t])
    xdd = (f_w - b * xd - k * x) * inv_m

    volt = gen.k_e * xd
    i_r = volt / load.resistance
    i_l = gen.k_e * load.inverse_inductance * x
    i_c = load.effective_capacitance * gen.k_e * xdd
    i = i_r + i_l + i_c

    cols = dict(
        t=t, x=x, x_dot=xd, x_ddot=xdd, f_w=f_w,
        f_pto=gen.k_t * i,
        f_r_sub=eind.b_ei * xd,
        f_l_sub=eind.k_ei * x,
        f_c_sub=eind.m_ei * xdd,
        v=volt, i=i, i_r=i_r, i_l=i_l, i_c=i_c,
        p_elec=volt * i,
        p_abs=f_w * xd,
    )
    data = np.column_stack([cols[c] for c in COLUMNS])
    return SimTrace(data=data, omega=w, dt=cfg.dt)


def _tail_window(trace: SimTrace, n_periods: float, omega: float):
    """Sample times and boundary of the last ``n_periods`` full periods."""
    if n_periods <= 0:
        raise ValueError("n_periods must be > 0")
    span = n_periods * 2.0 * math.pi / omega
    t = trace.t
    t_start = t[-1] - span
    if t_start < t[0] - 1e-12:
        raise TraceTooShortError(
            f"trace spans {t[-1] - t[0]:.4g} s, need {span:.4g} s "
            f"for {n_periods} periods at omega={omega:.4g} rad/s"
        )
    return t_start, span


def window_mean(
    trace: SimTrace, values: np.ndarray, n_periods: float = 5, omega: Optional[float] = None
) -> float:
    """Trapezoidal time-average of ``values`` over the last ``n_periods``
    periods; the window start is linearly interpolated between samples."""
    omega = trace.omega if omega is None else omega
    t_start, span = _tail_window(trace, n_periods, omega)
    t = trace.t
    i0 = int(np.searchsorted(t, t_start, side="right"))
    v0 = np.interp(t_start, t, values)
    tt = np.concatenate(([t_start], t[i0:]))
    vv = np.concatenate(([v0], values[i0:]))
    return float(np.trapezoid(vv, tt) / span)


def average_powers(
    trace: SimTrace, n_periods: float = 5, omega: Optional[float] = None
) -> tuple[float, float]:
    """Mean electric power ``v*i`` and mean absorbed power ``f_w*x_dot`` over
    an integer number of periods at the end of the trace."""
    return (
        window_mean(trace, trace["p_elec"], n_periods, omega),
        window_mean(trace, trace["p_abs"], n_periods, omega),
    )


def harmonic_fit(
    trace: SimTrace, signal: str, n_periods: float = 5, omega: Optional[float] = None
) -> tuple[float, float]:
    """Amplitude and phase of the fundamental of ``signal`` over the tail
    window, projected onto ``cos``/``sin`` at the forcing frequency.

    The phase follows the ``A*cos(omega*t + phase)`` convention.
    """
    omega = trace.omega if omega is None else omega
    s = trace[signal]
    t = trace.t
    a = 2.0 * window_mean(trace, s * np.cos(omega * t), n_periods, omega)
    b = 2.0 * window_mean(trace, s * np.sin(omega * t), n_periods, omega)
    return math.hypot(a, b), math.atan2(-b, a)


def settling_time(
    trace: SimTrace,
    signal: str = "x_dot",
    rel_tol: float = 0.02,
    omega: Optional[float] = None,
) -> float:
    """Time after which per-period peaks of ``|signal|`` stay within
    ``rel_tol`` of the last full period's peak.

    Periods are counted from the first sample. The result is the time of the
    last out-of-band peak, or the trace start if no peak is out of band.
    Returns ``math.inf`` when fewer than three full periods follow it.
    """
    omega = trace.omega if omega is None else omega
    period = 2.0 * math.pi / omega
    t = trace.t
    s = np.abs(trace[signal])
    n_periods = int((t[-1] - t[0]) / period + 1e-9)
    if n_periods < 3:
        return math.inf
    idx = np.floor((t - t[0]) / period + 1e-9).astype(int)
    peaks = np.empty(n_periods)
    peak_times = np.empty(n_periods)
    for p in range(n_periods):
        sel = np.nonzero(idx == p)[0]
        j = sel[np.argmax(s[sel])]
        peaks[p], peak_times[p] = s[j], t[j]
    final = peaks[-1]
    if final == 0.0:
        return float(t[0]) if np.all(peaks == 0.0) else math.inf
    outside = np.nonzero(np.abs(peaks - final) > rel_tol * final)[0]
    if outside.size == 0:
        return float(t[0])
    last = int(outside[-1])
    if last > n_periods - 4:
        return math.inf
    return float(peak_times[last])


def decay_rate(mech: MechanicalParams, gen: GeneratorParams, load: RlcLoad) -> float:
    """Envelope decay rate ``B/(2M)`` of the closed-loop free response (1/s)."""
    m, b, _ = closed_loop_coefficients(mech, electric_induced(gen, load))
    return b / (2.0 * m)


def settle_duration(
    mech: MechanicalParams,
    gen: GeneratorParams,
    load: RlcLoad,
    wave: WaveForcing,
    reduction: float = 1e-6,
    n_periods: int = 5,
) -> float:
    """Simulation length for the transient to shrink by ``reduction`` plus
    ``n_periods`` periods of steady state to average over."""
    return math.log(1.0 / reduction) / decay_rate(mech, gen, load) + n_periods * wave.period
