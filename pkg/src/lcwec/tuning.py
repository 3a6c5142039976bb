"""LC tuning rules that place the closed-loop resonance at the wave frequency."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .model import (
    ElectricInduced,
    GeneratorParams,
    MechanicalParams,
    ParameterError,
    RlcLoad,
)

#: relative band around the natural frequency treated as "no tuning needed"
NATURAL_REL_TOL = 1e-6

#: capacitance (F) above which :func:`tune` emits a LargeCapacitanceWarning
CAPACITANCE_WARN_THRESHOLD = 1.0


class LargeCapacitanceWarning(UserWarning):
    """Tuned capacitance is unusually large (wave frequency far below the
    natural frequency)."""


class Rule(enum.Enum):
    AT_NATURAL = "AtNatural"
    CAPACITOR_TUNED = "CapacitorTuned"
    INDUCTOR_TUNED = "InductorTuned"


@dataclass(frozen=True)
class TuningDecision:
    rule: Rule
    omega: float
    capacitance: Optional[float] = None
    inductance: Optional[float] = None

    def __post_init__(self):
        c, l = self.capacitance, self.inductance
        if self.rule is Rule.AT_NATURAL:
            ok = c is None and l is None
        elif self.rule is Rule.CAPACITOR_TUNED:
            ok = c is not None and c > 0 and l is None
        else:
            ok = l is not None and l > 0 and c is None
        if not ok:
            raise ParameterError(
                f"inconsistent tuning decision: rule={self.rule.value}, C={c}, L={l}"
            )

    @property
    def load_delta(self) -> tuple[Optional[float], Optional[float]]:
        """The prescribed ``(C, L)`` pair; ``None`` marks a disconnected element."""
        return self.capacitance, self.inductance

    def apply(self, resistance: float) -> RlcLoad:
        """Build the tuned load around the given resistance."""
        return RlcLoad(
            resistance=resistance,
            inductance=self.inductance,
            capacitance=self.capacitance,
        )


def natural_frequency(mech: MechanicalParams) -> float:
    """Undamped natural frequency sqrt(K_m / M_m) in rad/s."""
    return math.sqrt(mech.stiffness / mech.mass_total)


def tune(
    mech: MechanicalParams,
    gen: GeneratorParams,
    omega: float,
    *,
    rel_tol: float = NATURAL_REL_TOL,
    warn_capacitance: float = CAPACITANCE_WARN_THRESHOLD,
) -> TuningDecision:
    """Choose C or L so that the oscillator resonates at ``omega``.

    Below the natural frequency the inductor is disconnected and a capacitor
    adds mass ``K_m/omega**2 - M_m``; above it the capacitor is disconnected
    and an inductor adds stiffness ``omega**2*M_m - K_m``. Within ``rel_tol``
    of the natural frequency both are disconnected.
    """
    if not (math.isfinite(omega) and omega > 0):
        raise ParameterError(f"omega must be finite and > 0, got {omega!r}")
    w0 = natural_frequency(mech)
    if abs(omega - w0) <= rel_tol * w0:
        return TuningDecision(Rule.AT_NATURAL, omega)

    kk = gen.coupling
    if omega < w0:
        added_mass = mech.stiffness / omega**2 - mech.mass_total
        c = added_mass / kk
        if c > warn_capacitance:
            warnings.warn(
                f"tuned capacitance {c:.4g} F at omega={omega:.4g} rad/s exceeds "
                f"{warn_capacitance:.4g} F",
                LargeCapacitanceWarning,
                stacklevel=2,
            )
        return TuningDecision(Rule.CAPACITOR_TUNED, omega, capacitance=c)

    added_stiffness = omega**2 * mech.mass_total - mech.stiffness
    return TuningDecision(Rule.INDUCTOR_TUNED, omega, inductance=kk / added_stiffness)


def resonance_residual(
    mech: MechanicalParams, eind: ElectricInduced, omega: float
) -> float:
    """``(K_m + K_ei) - omega**2 * (M_m + M_ei)``; zero at resonance (N/m)."""
    if not omega > 0:
        raise ParameterError(f"omega must be > 0, got {omega!r}")
    return (mech.stiffness + eind.k_ei) - omega**2 * (mech.mass_total + eind.m_ei)
