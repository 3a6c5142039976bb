"""Physical parameters of the heaving oscillator, generator and RLC load.

All quantities are SI. Disconnected tuning elements are represented by
``None`` rather than by 0 or infinity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional


class ParameterError(ValueError):
    """Raised when a parameter set violates its physical invariants."""


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be finite and > 0, got {value!r}")


def _require_nonnegative(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
        raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class MechanicalParams:
    """Lumped oscillator: total mass (incl. added mass), radiation damping
    and hydrostatic stiffness."""

    mass_total: float
    damping: float
    stiffness: float

    def __post_init__(self):
        _require_positive("mass_total", self.mass_total)
        _require_positive("damping", self.damping)
        _require_positive("stiffness", self.stiffness)


@dataclass(frozen=True)
class GeneratorParams:
    """Linear generator constants: ``v = k_e * x_dot`` and ``f = k_t * i``."""

    k_e: float
    k_t: float

    def __post_init__(self):
        _require_positive("k_e", self.k_e)
        _require_positive("k_t", self.k_t)

    @property
    def coupling(self) -> float:
        """Product ``k_t * k_e`` that scales every induced coefficient."""
        return self.k_t * self.k_e


def check_generator(gen: GeneratorParams, rel_tol: float = 1e-9) -> bool:
    """Warn if ``k_t`` and ``k_e`` differ numerically.

    Unequal constants are allowed (sensitivity studies), but then electric
    power ``v*i`` no longer equals the mechanical power taken by the PTO.
    Returns True when the constants agree.
    """
    if math.isclose(gen.k_e, gen.k_t, rel_tol=rel_tol):
        return True
    warnings.warn(
        f"k_t={gen.k_t} differs from k_e={gen.k_e}; electric and PTO "
        "mechanical power will not coincide",
        UserWarning,
        stacklevel=2,
    )
    return False


@dataclass(frozen=True)
class RlcLoad:
    """Resistive load with optional parallel tuning inductor and capacitor.

    ``inductance=None`` means the inductor is disconnected (L -> infinity),
    ``capacitance=None`` means the capacitor is disconnected (C = 0).
    """

    resistance: float
    inductance: Optional[float] = None
    capacitance: Optional[float] = None

    def __post_init__(self):
        _require_positive("resistance", self.resistance)
        if self.inductance is not None:
            _require_positive("inductance", self.inductance)
        if self.capacitance is not None:
            _require_positive("capacitance", self.capacitance)

    @property
    def conductance(self) -> float:
        return 1.0 / self.resistance

    @property
    def inverse_inductance(self) -> float:
        """``1/L``, zero when the inductor is disconnected."""
        return 0.0 if self.inductance is None else 1.0 / self.inductance

    @property
    def effective_capacitance(self) -> float:
        """``C``, zero when the capacitor is disconnected."""
        return 0.0 if self.capacitance is None else self.capacitance

    @property
    def effective_inductance(self) -> float:
        """``L``, infinity when the inductor is disconnected."""
        return math.inf if self.inductance is None else self.inductance

    def susceptance(self, omega: float) -> float:
        """Imaginary part of the load admittance, ``omega*C - 1/(omega*L)``."""
        return omega * self.effective_capacitance - self.inverse_inductance / omega

    def admittance(self, omega: float) -> complex:
        return complex(self.conductance, self.susceptance(omega))


@dataclass(frozen=True)
class ElectricInduced:
    """Mass, damping and stiffness the electrical load reflects onto the
    oscillator (from the capacitor, resistor and inductor currents)."""

    m_ei: float
    b_ei: float
    k_ei: float

    def __post_init__(self):
        _require_nonnegative("m_ei", self.m_ei)
        _require_nonnegative("b_ei", self.b_ei)
        _require_nonnegative("k_ei", self.k_ei)


@dataclass(frozen=True)
class WaveForcing:
    """Regular wave excitation ``f_w(t) = amplitude * cos(omega * t)``."""

    amplitude: float
    omega: float

    def __post_init__(self):
        _require_positive("amplitude", self.amplitude)
        _require_positive("omega", self.omega)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


def electric_induced(gen: GeneratorParams, load: RlcLoad) -> ElectricInduced:
    """Map an RLC load to its induced mechanical coefficients.

    ``m_ei = k_t*k_e*C``, ``b_ei = k_t*k_e/R``, ``k_ei = k_t*k_e/L``.
    """
    kk = gen.coupling
    return ElectricInduced(
        m_ei=kk * load.effective_capacitance,
        b_ei=kk / load.resistance,
        k_ei=kk * load.inverse_inductance,
    )


def load_from_induced(gen: GeneratorParams, eind: ElectricInduced) -> RlcLoad:
    """Inverse of :func:`electric_induced`.

    A zero ``m_ei`` (``k_ei``) maps to a disconnected capacitor (inductor).
    ``b_ei`` must be strictly positive since an open-circuit load is not
    representable.
    """
    if eind.b_ei <= 0:
        raise ParameterError("b_ei must be > 0 to recover a finite resistance")
    kk = gen.coupling
    return RlcLoad(
        resistance=kk / eind.b_ei,
        inductance=kk / eind.k_ei if eind.k_ei > 0 else None,
        capacitance=eind.m_ei / kk if eind.m_ei > 0 else None,
    )


def closed_loop_coefficients(
    mech: MechanicalParams, eind: ElectricInduced
) -> tuple[float, float, float]:
    """Return ``(total_mass, total_damping, total_stiffness)`` of the
    closed-loop oscillator."""
    return (
        mech.mass_total + eind.m_ei,
        mech.damping + eind.b_ei,
        mech.stiffness + eind.k_ei,
    )
