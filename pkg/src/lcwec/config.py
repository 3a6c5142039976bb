"""Scenario description, flat ``key = value`` config files and presets.

Example config::

    # case 2 with a tuned load
    mech.mass_total = 10000
    mech.damping = 4000
    mech.stiffness = 31580
    gen.k_e = 842
    gen.k_t = 842
    load.mode = auto
    wave.amplitude = 10000
    wave.omega = 1.0
    sim.t_end = 200
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Union

from .frequency import optimal_load
from .model import GeneratorParams, MechanicalParams, ParameterError, RlcLoad, WaveForcing
from .simulate import SimConfig
from .sweep import DEFAULT_OMEGA_MAX, DEFAULT_OMEGA_MIN, DEFAULT_POINTS, Mode
from .tuning import natural_frequency, tune


class ConfigError(ValueError):
    """Malformed, incomplete or physically invalid scenario configuration."""


@dataclass(frozen=True)
class AutoLoad:
    """Load resolved by tuning at the wave frequency; ``resistance=None``
    selects the optimal resistance."""

    resistance: Optional[float] = None


@dataclass(frozen=True)
class SweepSettings:
    mode: Mode = Mode.TUNED
    omega_min: float = DEFAULT_OMEGA_MIN
    omega_max: float = DEFAULT_OMEGA_MAX
    points: int = DEFAULT_POINTS


@dataclass(frozen=True)
class Scenario:
    mech: MechanicalParams
    gen: GeneratorParams
    load: Union[RlcLoad, AutoLoad]
    wave: WaveForcing
    sim: SimConfig = SimConfig()
    sweep: SweepSettings = field(default_factory=SweepSettings)

    @property
    def resistance(self) -> float:
        """Load resistance, falling back to the optimum for auto loads."""
        r = self.load.resistance
        if r is None:
            r = optimal_load(self.mech, self.gen, self.wave.amplitude).r_star
        return r

    def resolved_load(self) -> RlcLoad:
        if isinstance(self.load, RlcLoad):
            return self.load
        return tune(self.mech, self.gen, self.wave.omega).apply(self.resistance)

    def with_overrides(
        self,
        omega: Optional[float] = None,
        resistance: Optional[float] = None,
        dt: Optional[float] = None,
        t_end: Optional[float] = None,
        grid: Optional[int] = None,
    ) -> "Scenario":
        try:
            sc = self
            if omega is not None:
                sc = replace(sc, wave=replace(sc.wave, omega=omega))
            if resistance is not None:
                sc = replace(sc, load=replace(sc.load, resistance=resistance))
            if dt is not None or t_end is not None:
                sim = sc.sim
                sim = replace(
                    sim,
                    dt=sim.dt if dt is None else dt,
                    t_end=sim.t_end if t_end is None else t_end,
                )
                sc = replace(sc, sim=sim)
            if grid is not None:
                if grid < 1:
                    raise ConfigError(f"grid must be >= 1, got {grid}")
                sc = replace(sc, sweep=replace(sc.sweep, points=grid))
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc
        return sc


_REQUIRED = (
    "mech.mass_total", "mech.damping", "mech.stiffness",
    "gen.k_e", "gen.k_t", "wave.amplitude", "wave.omega",
)
_OPTIONAL = (
    "load.mode", "load.resistance", "load.inductance", "load.capacitance",
    "sim.dt", "sim.t_end", "sim.x0", "sim.v0",
    "sweep.mode", "sweep.omega_min", "sweep.omega_max", "sweep.points",
)
KNOWN_KEYS = _REQUIRED + _OPTIONAL


def parse_config_text(text: str) -> dict[str, str]:
    """Split config text into a key -> raw value mapping.

    ``#`` starts a comment; blank values mean "not set".
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _num(kv: dict, key: str, default=None) -> Optional[float]:
    raw = kv.get(key, "")
    if raw == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{key}: not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite, got {raw!r}")
    return value


def scenario_from_mapping(kv: dict[str, str]) -> Scenario:
    missing = [k for k in _REQUIRED if kv.get(k, "") == ""]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    try:
        mech = MechanicalParams(
            _num(kv, "mech.mass_total"), _num(kv, "mech.damping"), _num(kv, "mech.stiffness")
        )
        gen = GeneratorParams(_num(kv, "gen.k_e"), _num(kv, "gen.k_t"))
        wave = WaveForcing(_num(kv, "wave.amplitude"), _num(kv, "wave.omega"))

        mode = kv.get("load.mode", "") or "auto"
        r = _num(kv, "load.resistance")
        if mode == "auto":
            if kv.get("load.inductance") or kv.get("load.capacitance"):
                raise ConfigError("load.inductance/capacitance require load.mode = fixed")
            load = AutoLoad(r)
        elif mode == "fixed":
            if r is None:
                raise ConfigError("load.mode = fixed requires load.resistance")
            load = RlcLoad(
                r, _num(kv, "load.inductance"), _num(kv, "load.capacitance")
            )
        else:
            raise ConfigError(f"load.mode must be 'auto' or 'fixed', got {mode!r}")
        if isinstance(load, AutoLoad) and r is not None and not r > 0:
            raise ParameterError(f"resistance must be > 0, got {r!r}")

        d = SimConfig()
        sim = SimConfig(
            dt=_num(kv, "sim.dt", d.dt),
            t_end=_num(kv, "sim.t_end", d.t_end),
            x0=_num(kv, "sim.x0", d.x0),
            v0=_num(kv, "sim.v0", d.v0),
        )

        s = SweepSettings()
        points = _num(kv, "sweep.points", s.points)
        if points != int(points) or points < 1:
            raise ConfigError(f"sweep.points must be a positive integer, got {points!r}")
        sweep = SweepSettings(
            mode=Mode.parse(kv["sweep.mode"]) if kv.get("sweep.mode") else s.mode,
            omega_min=_num(kv, "sweep.omega_min", s.omega_min),
            omega_max=_num(kv, "sweep.omega_max", s.omega_max),
            points=int(points),
        )
        if not 0 < sweep.omega_min <= sweep.omega_max:
            raise ConfigError("sweep range must satisfy 0 < omega_min <= omega_max")
    except (ParameterError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    return Scenario(mech, gen, load, wave, sim, sweep)


def load_config(path: Union[str, Path]) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return scenario_from_mapping(parse_config_text(text))


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def dump_config(sc: Scenario) -> str:
    """Serialise a scenario; :func:`parse_config_text` reads it back exactly."""
    if isinstance(sc.load, AutoLoad):
        load_lines = [("load.mode", "auto"), ("load.resistance", _fmt(sc.load.resistance))]
    else:
        load_lines = [
            ("load.mode", "fixed"),
            ("load.resistance", _fmt(sc.load.resistance)),
            ("load.inductance", _fmt(sc.load.inductance)),
            ("load.capacitance", _fmt(sc.load.capacitance)),
        ]
    pairs = [
        ("mech.mass_total", _fmt(sc.mech.mass_total)),
        ("mech.damping", _fmt(sc.mech.damping)),
        ("mech.stiffness", _fmt(sc.mech.stiffness)),
        ("gen.k_e", _fmt(sc.gen.k_e)),
        ("gen.k_t", _fmt(sc.gen.k_t)),
        *load_lines,
        ("wave.amplitude", _fmt(sc.wave.amplitude)),
        ("wave.omega", _fmt(sc.wave.omega)),
        ("sim.dt", _fmt(sc.sim.dt)),
        ("sim.t_end", _fmt(sc.sim.t_end)),
        ("sim.x0", _fmt(sc.sim.x0)),
        ("sim.v0", _fmt(sc.sim.v0)),
        ("sweep.mode", sc.sweep.mode.value),
        ("sweep.omega_min", _fmt(sc.sweep.omega_min)),
        ("sweep.omega_max", _fmt(sc.sweep.omega_max)),
        ("sweep.points", str(sc.sweep.points)),
    ]
    return "".join(f"{k} = {v}\n" for k, v in pairs)


# Reference device: 10 t heaving buoy with a direct-drive linear generator.
REFERENCE_MECH = MechanicalParams(mass_total=10_000.0, damping=4_000.0, stiffness=31_580.0)
REFERENCE_GEN = GeneratorParams(k_e=842.0, k_t=842.0)
REFERENCE_WAVE_AMPLITUDE = 10_000.0


def _preset(omega: float, load, t_end: float, mode: Mode = Mode.TUNED) -> Scenario:
    return Scenario(
        mech=REFERENCE_MECH,
        gen=REFERENCE_GEN,
        load=load,
        wave=WaveForcing(REFERENCE_WAVE_AMPLITUDE, omega),
        sim=SimConfig(dt=0.01, t_end=t_end),
        sweep=SweepSettings(mode=mode),
    )


def _r_star() -> float:
    return optimal_load(REFERENCE_MECH, REFERENCE_GEN, REFERENCE_WAVE_AMPLITUDE).r_star


def presets() -> dict[str, Scenario]:
    w0 = natural_frequency(REFERENCE_MECH)
    r = _r_star()
    return {
        "case1": _preset(w0, AutoLoad(), 60.0),
        "case2": _preset(1.0, AutoLoad(), 200.0),
        "case3": _preset(2.3, AutoLoad(), 80.0),
        "case2-untuned": _preset(1.0, RlcLoad(r), 60.0),
        "case3-untuned": _preset(2.3, RlcLoad(r), 60.0),
        "sweep-tuned": _preset(w0, AutoLoad(), 60.0, Mode.TUNED),
        "sweep-untuned": _preset(w0, AutoLoad(), 60.0, Mode.UNTUNED),
    }


def get_preset(name: str) -> Scenario:
    table = presets()
    try:
        return table[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; choose from {', '.join(sorted(table))}"
        ) from None
