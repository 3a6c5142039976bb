"""Steady-state phasor solution of the closed-loop oscillator.

Phasors use the cosine convention: a signal ``A*cos(omega*t + phi)`` is the
complex number ``A*exp(1j*phi)``. The wave force has phase zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .model import (
    ElectricInduced,
    GeneratorParams,
    MechanicalParams,
    ParameterError,
    RlcLoad,
    WaveForcing,
    closed_loop_coefficients,
    electric_induced,
)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class FrequencyResponse:
    h: complex
    magnitude: float
    phase: float

    @classmethod
    def from_complex(cls, h: complex) -> "FrequencyResponse":
        return cls(h=h, magnitude=abs(h), phase=cmath.phase(h))


def frequency_response(
    mech: MechanicalParams, eind: ElectricInduced, omega: float
) -> FrequencyResponse:
    """Displacement per unit force, ``1 / (K - omega^2 M + j omega B)`` in m/N,
    with the closed-loop totals."""
    if not omega > 0:
        raise ParameterError(f"omega must be > 0, got {omega!r}")
    m, b, k = closed_loop_coefficients(mech, eind)
    return FrequencyResponse.from_complex(1.0 / complex(k - omega**2 * m, omega * b))


@dataclass(frozen=True)
class SteadyStateReport:
    """Full steady-state solution at one wave frequency.

    Amplitudes are peak values unless named ``*_rms``/``*_eff``. Phases are
    in (-pi, pi] against ``cos(omega*t)`` of the wave force, except ``psi``
    which is the current phase relative to the voltage (positive when the
    current leads, i.e. capacitive).
    """

    omega: float
    x_amp: float
    x_phase: float
    v_amp: float
    v_phase: float
    a_amp: float
    volt_rms: float
    curr_rms: float
    psi: float
    power_factor: float
    p_active: float
    s_apparent: float
    q_reactive: float
    p_absorbed: float
    p_radiated: float
    p_generator: float
    f_r_amp: float
    f_l_amp: float
    f_c_amp: float
    f_pto_eff: float

    @property
    def f_pto_amp(self) -> float:
        """Peak PTO force."""
        return SQRT2 * self.f_pto_eff


def steady_state(
    mech: MechanicalParams,
    gen: GeneratorParams,
    load: RlcLoad,
    wave: WaveForcing,
) -> SteadyStateReport:
    w = wave.omega
    eind = electric_induced(gen, load)
    fr = frequency_response(mech, eind, w)

    x = fr.h * wave.amplitude
    xdot = 1j * w * x
    xddot = 1j * w * xdot
    volt = gen.k_e * xdot
    y = load.admittance(w)
    curr = y * volt

    volt_rms = abs(volt) / SQRT2
    curr_rms = abs(curr) / SQRT2
    psi = math.atan2(y.imag, y.real)
    s = volt_rms * curr_rms
    vel2 = abs(xdot) ** 2

    return SteadyStateReport(
        omega=w,
        x_amp=abs(x),
        x_phase=cmath.phase(x),
        v_amp=abs(xdot),
        v_phase=cmath.phase(xdot),
        a_amp=abs(xddot),
        volt_rms=volt_rms,
        curr_rms=curr_rms,
        psi=psi,
        power_factor=math.cos(psi),
        p_active=volt_rms**2 / load.resistance,
        s_apparent=s,
        q_reactive=s * math.sin(psi),
        # mean of f_w * x_dot with f_w real amplitude A_w
        p_absorbed=0.5 * wave.amplitude * xdot.real,
        p_radiated=0.5 * mech.damping * vel2,
        p_generator=0.5 * eind.b_ei * vel2,
        f_r_amp=eind.b_ei * abs(xdot),
        f_l_amp=eind.k_ei * abs(x),
        f_c_amp=eind.m_ei * abs(xddot),
        f_pto_eff=gen.k_t * curr_rms,
    )


class OptimalLoad(NamedTuple):
    r_star: float
    b_ei_star: float
    p_star: float
    p_a_star: float


def optimal_load(
    mech: MechanicalParams, gen: GeneratorParams, wave_amp: float
) -> OptimalLoad:
    """Resistance that maximises generator power under resonance.

    The optimum matches the induced damping to the radiation damping, giving
    ``P* = A_w^2 / (8 B_m)`` at the generator and ``P_a* = 2 P*`` absorbed.
    These hold at every frequency once the LC network is tuned.
    """
    if not wave_amp > 0:
        raise ParameterError(f"wave_amp must be > 0, got {wave_amp!r}")
    b = mech.damping
    return OptimalLoad(
        r_star=gen.coupling / b,
        b_ei_star=b,
        p_star=wave_amp**2 / (8.0 * b),
        p_a_star=wave_amp**2 / (4.0 * b),
    )


def generator_power_at_resonance(
    mech: MechanicalParams, b_ei: float, wave_amp: float
) -> float:
    """Mean power taken by the induced damping when the oscillator resonates,
    ``A_w^2 b_ei / (2 (B_m + b_ei)^2)``."""
    return wave_amp**2 * b_ei / (2.0 * (mech.damping + b_ei) ** 2)
