import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantum_otto import ConfigError, GasSpec, LevelSystem
from quantum_otto.config import (
    CavityConfig,
    OutputConfig,
    ScenarioConfig,
    SolverConfig,
    SweepAxis,
    parse_config,
    serialize_config,
)

MINIMAL = """
[gas]
T1 = 600
T3 = 300
R = 1.5

[levels]
eps_a = 11
eps_b = 1
eps_c = 0
"""


def test_minimal_document_gets_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.gas == GasSpec(T1=600.0, T3=300.0, R=1.5)
    assert cfg.levels == LevelSystem(11.0, 1.0, 0.0)
    assert cfg.cavity is None
    assert cfg.sweep == ()
    assert cfg.solver == SolverConfig(tol=1e-12, max_passes=10_000)
    assert cfg.output == OutputConfig()


def test_volumes_and_scientific_notation():
    cfg = parse_config(MINIMAL.replace("R = 1.5", "V1 = 8e0\nV2 = 1.0E+0\ngamma = 1.6666666666666667"))
    assert cfg.gas.R == pytest.approx(4.0)
    assert cfg.gas.from_volumes


def test_level_ordering_violation_names_levels():
    with pytest.raises(ConfigError) as info:
        parse_config(MINIMAL.replace("eps_b = 1", "eps_b = 12"))
    assert any(p.startswith("levels") and "ordered" in p for p in info.value.problems)


def test_all_problems_reported():
    text = """
[gas]
T1 = hot
T3 = 300
R = 1.5
bogus = 1

[levels]
eps_a = 1
eps_b = 2

[cavity]
A = 1

[sweep]
Q = 1, 2, 3
T3 = 1, 2

[colour]
x = 1
"""
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    problems = "\n".join(info.value.problems)
    for fragment in (
        "gas.T1", "gas.bogus: unknown key", "levels.eps_c: missing", "cavity: laser gain needs",
        "sweep.Q: unknown key", "sweep.T3: expected", "[colour]: unknown section",
    ):
        assert fragment in problems
    assert len(info.value.problems) >= 7


def test_missing_sections():
    with pytest.raises(ConfigError) as info:
        parse_config("[output]\nformat = json\n")
    assert "[gas]: missing required section" in info.value.problems
    assert "[levels]: missing required section" in info.value.problems


def test_invalid_gas_invariants():
    with pytest.raises(ConfigError) as info:
        parse_config(MINIMAL.replace("T1 = 600", "T1 = 200"))
    assert any(p.startswith("gas.T1") for p in info.value.problems)


def test_sweep_grid_is_inclusive():
    cfg = parse_config(MINIMAL + "\n[sweep]\nT3 = 0.01, 1.0, 50\n")
    (axis,) = cfg.sweep
    values = axis.values
    assert len(values) == 50
    assert values[0] == 0.01 and values[-1] == 1.0
    steps = [b - a for a, b in zip(values, values[1:])]
    assert steps == pytest.approx([0.99 / 49] * 49)


def test_sweep_axis_order_preserved():
    cfg = parse_config(MINIMAL + "\n[sweep]\neps_b = 0.5, 10, 4\nT3 = 1, 2, 3\n")
    assert [a.name for a in cfg.sweep] == ["eps_b", "T3"]


@pytest.mark.parametrize(
    "snippet,fragment",
    [
        ("[output]\nformat = xml\n", "output.format"),
        ("[solver]\ntol = -1\n", "solver.tol"),
        ("[solver]\nmax_passes = 2.5\n", "solver.max_passes"),
        ("[cavity]\nn_max = 0\n", "cavity.n_max"),
        ("[cavity]\nT_cavity = 0\n", "cavity.T_cavity"),
        ("[cavity]\nA = 0.1\nB = 1\nC = -2\n", "cavity.C"),
        ("[sweep]\nT3 = 1, 2, 0\n", "sweep.T3"),
    ],
)
def test_section_validation(snippet, fragment):
    with pytest.raises(ConfigError) as info:
        parse_config(MINIMAL + "\n" + snippet)
    assert any(p.startswith(fragment) for p in info.value.problems)


def test_syntax_error():
    with pytest.raises(ConfigError, match="syntax"):
        parse_config("T1 = 3\n")


def test_cavity_defaults_follow_gas_and_levels():
    cfg = parse_config(MINIMAL + "\n[cavity]\nA = 1\nB = 10\nC = 0.5\n")
    cav = cfg.cavity
    assert cav.temperature(cfg.gas) == 300.0
    # laser seed defaults to the a-b transition (eps_ab = 10) at T3
    assert cav.laser_params(cfg.gas, cfg.levels).n_bar_l == pytest.approx(1 / math.expm1(10 / 300), rel=1e-14)
    # maser mean defaults to the b-c transition (eps_bc = 1) at T3
    assert cav.maser_mean(cfg.gas, cfg.levels) == pytest.approx(1 / math.expm1(1 / 300), rel=1e-14)


finite = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


@st.composite
def scenario_configs(draw):
    T3 = draw(finite)
    T1 = T3 * draw(st.floats(min_value=1.01, max_value=100))
    if draw(st.booleans()):
        gas = GasSpec(T1=T1, T3=T3, R=draw(st.floats(min_value=1.0, max_value=10)),
                      Cv=draw(finite), N=draw(finite))
    else:
        V2 = draw(finite)
        gas = GasSpec(T1=T1, T3=T3, V1=V2 * draw(st.floats(min_value=1, max_value=20)), V2=V2,
                      gamma=draw(st.floats(min_value=1.01, max_value=2)))
    eps_c = draw(st.floats(min_value=-5, max_value=5))
    eps_b = eps_c + draw(finite)
    levels = LevelSystem(eps_b + draw(finite), eps_b, eps_c)
    cavity = draw(st.one_of(
        st.none(),
        st.builds(CavityConfig, T_cavity=st.one_of(st.none(), finite), A=st.just(1.0), B=finite,
                  C=finite, n_bar_l=st.one_of(st.none(), finite), n_max=st.integers(1, 4096)),
    ))
    names = draw(st.lists(st.sampled_from(["T1", "T3", "R", "eps_a", "eps_b", "eps_c", "Cv", "N"]),
                          max_size=2, unique=True))
    sweep = tuple(SweepAxis(n, draw(finite), draw(finite), draw(st.integers(1, 100))) for n in names)
    output = OutputConfig(dir=draw(st.sampled_from(["out", "results/run1", "."])),
                          format=draw(st.sampled_from(["json", "csv"])),
                          points_per_segment=draw(st.integers(2, 500)))
    solver = SolverConfig(tol=draw(st.floats(min_value=1e-15, max_value=1e-3)),
                          max_passes=draw(st.integers(1, 10**6)))
    return ScenarioConfig(gas, levels, cavity, sweep, output, solver)


@settings(max_examples=200)
@given(scenario_configs())
def test_round_trip(cfg):
    assert parse_config(serialize_config(cfg)) == cfg
