import pytest
from hypothesis import given, strategies as st

from lcwec.config import (
    AutoLoad,
    ConfigError,
    Scenario,
    SweepSettings,
    dump_config,
    get_preset,
    load_config,
    parse_config_text,
    presets,
    scenario_from_mapping,
)
from lcwec.model import GeneratorParams, MechanicalParams, RlcLoad, WaveForcing
from lcwec.simulate import SimConfig
from lcwec.sweep import Mode
from lcwec.tuning import Rule, tune

from conftest import OMEGA_0, R_STAR

BASE = """
# reference device
mech.mass_total = 10000
mech.damping = 4000
mech.stiffness = 31580
gen.k_e = 842
gen.k_t = 842   # equal constants
wave.amplitude = 10000
wave.omega = 1.0
"""


def test_parse_minimal(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text(BASE)
    sc = load_config(p)
    assert isinstance(sc.load, AutoLoad)
    assert sc.resistance == pytest.approx(R_STAR)
    assert sc.sim == SimConfig()
    load = sc.resolved_load()
    assert load.capacitance == pytest.approx(0.0304, rel=5e-3)


def test_fixed_load():
    kv = parse_config_text(BASE + "load.mode = fixed\nload.resistance = 100\nload.inductance = 20\n")
    sc = scenario_from_mapping(kv)
    assert sc.resolved_load() == RlcLoad(100.0, inductance=20.0)


@pytest.mark.parametrize(
    "extra,msg",
    [
        ("bogus.key = 1\n", "unknown key"),
        ("wave.omega = 2\n", "duplicate"),
        ("just text\n", "expected"),
        ("load.mode = fixed\n", "requires load.resistance"),
        ("load.mode = weird\n", "load.mode"),
        ("load.capacitance = 0.1\n", "fixed"),
        ("sim.dt = abc\n", "not a number"),
        ("sim.dt = 0\n", "dt"),
        ("sweep.points = 2.5\n", "positive integer"),
    ],
)
def test_parse_errors(extra, msg):
    with pytest.raises(ConfigError, match=msg):
        scenario_from_mapping(parse_config_text(BASE + extra))


def test_missing_required():
    with pytest.raises(ConfigError, match="mech.damping"):
        scenario_from_mapping(parse_config_text(BASE.replace("mech.damping = 4000", "")))


def test_invalid_physics_is_config_error():
    with pytest.raises(ConfigError):
        scenario_from_mapping(parse_config_text(BASE.replace("wave.omega = 1.0", "wave.omega = 0")))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def test_presets():
    table = presets()
    assert {"case1", "case2", "case3", "sweep-tuned", "sweep-untuned"} <= set(table)
    assert table["case1"].wave.omega == pytest.approx(OMEGA_0, rel=1e-15)
    assert tune(table["case1"].mech, table["case1"].gen, table["case1"].wave.omega).rule is Rule.AT_NATURAL
    assert table["case2"].wave.omega == 1.0
    assert table["case3"].wave.omega == 2.3
    assert table["sweep-untuned"].sweep.mode is Mode.UNTUNED
    with pytest.raises(ConfigError, match="unknown preset"):
        get_preset("case9")


def test_overrides():
    sc = get_preset("case2").with_overrides(omega=2.0, resistance=150.0, dt=0.02, t_end=30.0, grid=9)
    assert sc.wave.omega == 2.0
    assert sc.resistance == 150.0
    assert sc.sim.dt == 0.02 and sc.sim.t_end == 30.0
    assert sc.sweep.points == 9
    assert sc.resolved_load().inductance is not None
    with pytest.raises(ConfigError):
        get_preset("case2").with_overrides(omega=-1.0)
    with pytest.raises(ConfigError):
        get_preset("case2-untuned").with_overrides(resistance=0.0)


@pytest.mark.parametrize("name", sorted(presets()))
def test_preset_round_trip(name):
    sc = get_preset(name)
    assert scenario_from_mapping(parse_config_text(dump_config(sc))) == sc


pos = st.floats(min_value=1e-3, max_value=1e6, allow_nan=False)
opt_pos = st.one_of(st.none(), pos)


@st.composite
def scenarios(draw):
    if draw(st.booleans()):
        load = AutoLoad(draw(opt_pos))
    else:
        load = RlcLoad(draw(pos), draw(opt_pos), draw(opt_pos))
    lo = draw(st.floats(min_value=0.01, max_value=5))
    return Scenario(
        mech=MechanicalParams(draw(pos), draw(pos), draw(pos)),
        gen=GeneratorParams(draw(pos), draw(pos)),
        load=load,
        wave=WaveForcing(draw(pos), draw(st.floats(min_value=0.01, max_value=10))),
        sim=SimConfig(
            dt=draw(st.floats(min_value=1e-4, max_value=0.1)),
            t_end=draw(st.floats(min_value=0.1, max_value=1e3)),
            x0=draw(st.floats(min_value=-10, max_value=10)),
            v0=draw(st.floats(min_value=-10, max_value=10)),
        ),
        sweep=SweepSettings(
            mode=draw(st.sampled_from(list(Mode))),
            omega_min=lo,
            omega_max=lo + draw(st.floats(min_value=0, max_value=5)),
            points=draw(st.integers(min_value=1, max_value=500)),
        ),
    )


@given(sc=scenarios())
def test_round_trip_property(sc):
    assert scenario_from_mapping(parse_config_text(dump_config(sc))) == sc
