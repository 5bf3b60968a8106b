import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quantum_otto import (
    DomainError,
    LevelSystem,
    Populations,
    boltzmann_populations,
    internal_energy,
    internal_entropy,
)
from quantum_otto.internal_states import temperature_for_population

LN3 = math.log(3.0)

gaps = st.floats(min_value=1e-3, max_value=50.0)
temperatures = st.floats(min_value=1e-2, max_value=1e4)


@st.composite
def level_systems(draw):
    eps_c = draw(st.floats(min_value=-10.0, max_value=10.0))
    eps_b = eps_c + draw(gaps)
    eps_a = eps_b + draw(gaps)
    return LevelSystem(eps_a, eps_b, eps_c)


@st.composite
def populations(draw):
    a = draw(st.floats(min_value=0.0, max_value=1.0))
    b = draw(st.floats(min_value=0.0, max_value=1.0 - a))
    return Populations(a, b, 1.0 - a - b)


class TestLevelSystem:
    def test_gaps(self):
        lv = LevelSystem(2.5, 1.25, -0.5)
        assert lv.eps_ab == 1.25
        assert lv.eps_bc == 1.75
        assert lv.eps_ac == lv.eps_ab + lv.eps_bc

    @pytest.mark.parametrize("levels", [(1, 2, 0), (1, 1, 0), (2, 1, 1), (0, 0, 0)])
    def test_rejects_unordered(self, levels):
        with pytest.raises(DomainError, match="strictly ordered"):
            LevelSystem(*levels)


class TestPopulations:
    def test_rejects_unnormalized(self):
        with pytest.raises(DomainError):
            Populations(0.5, 0.5, 0.1)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            Populations(-0.1, 0.6, 0.5)

    def test_fixed_point(self):
        assert Populations.fixed_point(0.1).as_tuple() == (0.1, 0.1, 0.8)


class TestBoltzmann:
    def test_degenerate_levels_are_uniform(self):
        pop = boltzmann_populations((0.0, 0.0, 0.0), 0.7)
        assert pop.as_tuple() == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-15)

    def test_high_temperature_limit(self):
        lv = LevelSystem(2.0, 1.0, 0.0)
        pop = boltzmann_populations(lv, 1e9 * lv.eps_ac)
        assert pop.as_tuple() == pytest.approx((1 / 3,) * 3, abs=1e-6)

    def test_reference_values(self):
        # 40-digit mpmath evaluation of exp(-eps)/Z for levels (2, 1, 0) at T = 1
        pop = boltzmann_populations(LevelSystem(2.0, 1.0, 0.0), 1.0)
        assert pop.as_tuple() == pytest.approx((0.0900305731704, 0.244728471055, 0.665240955775), abs=1e-12)

    def test_large_energies_do_not_underflow(self):
        pop = boltzmann_populations(LevelSystem(1e6 + 2, 1e6 + 1, 1e6), 1.0)
        assert pop.p_a == pytest.approx(0.0900305731704, abs=1e-12)

    @pytest.mark.parametrize("T", [0.0, -1.0])
    def test_rejects_non_positive_temperature(self, T):
        with pytest.raises(DomainError):
            boltzmann_populations(LevelSystem(2, 1, 0), T)

    def test_low_temperature_limit(self):
        pop = boltzmann_populations(LevelSystem(2, 1, 0), 1e-3)
        assert pop.p_c == 1.0
        assert internal_entropy(pop) == 0.0

    @given(level_systems(), temperatures)
    def test_ordering_and_normalization(self, lv, T):
        pop = boltzmann_populations(lv, T)
        assert pop.p_a <= pop.p_b <= pop.p_c
        assert abs(sum(pop.as_tuple()) - 1.0) < 1e-12


class TestEntropy:
    def test_uniform(self):
        assert internal_entropy(Populations.uniform()) == pytest.approx(LN3, abs=1e-15)

    def test_pure(self):
        assert internal_entropy(Populations(0, 0, 1)) == 0.0

    def test_reference_value(self):
        assert internal_entropy(Populations(0.1, 0.1, 0.8)) == pytest.approx(0.63903185965, abs=1e-10)

    def test_scales_with_atom_count(self):
        pop = Populations(0.2, 0.3, 0.5)
        assert internal_entropy(pop, 7.0) == pytest.approx(7.0 * internal_entropy(pop), rel=1e-14)

    @given(populations())
    def test_bounds(self, pop):
        S = internal_entropy(pop)
        assert -1e-15 <= S <= LN3 + 1e-12

    @given(populations())
    def test_permutation_invariant(self, pop):
        a, b, c = pop.as_tuple()
        S = internal_entropy(pop)
        for perm in [(b, c, a), (c, a, b), (a, c, b)]:
            assert internal_entropy(Populations(*perm)) == pytest.approx(S, abs=1e-14)


class TestEnergy:
    lv = LevelSystem(2.0, 1.0, 0.0)

    def test_ground(self):
        assert internal_energy(self.lv, Populations(0, 0, 1)) == 0.0

    def test_uniform(self):
        assert internal_energy(self.lv, Populations.uniform()) == pytest.approx(1.0, abs=1e-15)

    def test_thermal(self):
        pop = boltzmann_populations(self.lv, 1.0)
        assert internal_energy(self.lv, pop) == pytest.approx(0.424789617396, abs=1e-12)


def test_temperature_for_population_round_trip():
    lv = LevelSystem(11, 1, 0)
    T = temperature_for_population(lv, "b", 0.1, 1e-3, 1.0)
    assert boltzmann_populations(lv, T).p_b == pytest.approx(0.1, abs=1e-15)


def test_temperature_for_population_unbracketed():
    with pytest.raises(DomainError):
        temperature_for_population(LevelSystem(11, 1, 0), "b", 0.6, 1e-3, 1.0)
