import math
import pytest
import unittest
from fractions import Fraction

import numpy as np

from kernel_chain import norms
from kernel_chain.errors import InvalidParameter, NonpositiveMeasure, SpaceMismatch
from kernel_chain.measure_space import new_map, new_space
from kernel_chain.norms import SpaceFunction
from kernel_chain.operator_core import boundedness_constant
from kernel_chain.orlicz.registry import make_orlicz, parse_phi_spec, register_orlicz

TOL = 1e-9
SPECS = ["power:3/2", "power:2", "power:3", "powerlog:1", "powerlog:2", "expml"]


def random_space(rng: np.random.Generator, n: int):
    weights = [Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 5))) for _ in range(n)]
    return new_space([str(i) for i in range(1, n + 1)], weights)


def random_function(rng: np.random.Generator, space) -> SpaceFunction:
    values = rng.uniform(-3.0, 3.0, size=len(space))
    values[int(rng.integers(0, len(space)))] = 1.5
    return SpaceFunction(space, values)


class NormsTester(unittest.TestCase):
    def setUp(self) -> None:
        self.space = new_space(["1", "2"], [1, 1])
        self.f = SpaceFunction.from_mapping(self.space, {"1": 3.0, "2": 4.0})
        self.power2 = make_orlicz("power", 2)

    def test_space_function(self) -> None:
        assert list(self.f.values) == [3.0, 4.0]
        assert list((2 * self.f).values) == [6.0, 8.0]
        assert list((self.f + self.f).values) == [6.0, 8.0]
        assert SpaceFunction.from_mapping(self.space, {}).is_zero()
        with pytest.raises(SpaceMismatch):
            SpaceFunction.from_mapping(self.space, {"9": 1.0})
        chi = SpaceFunction.indicator(self.space, {"2"})
        assert list(chi.values) == [0.0, 1.0]
        for bad in [float("nan"), float("inf"), -float("inf")]:
            with pytest.raises(InvalidParameter):
                SpaceFunction.from_mapping(self.space, {"1": bad})

    def test_compose(self) -> None:
        tau = new_map(self.space, {"1": "2", "2": "2"})
        assert list(self.f.compose(tau).values) == [4.0, 4.0]

    def test_modular(self) -> None:
        assert norms.modular(self.power2, self.f) == pytest.approx(25.0)
        expml = make_orlicz("exp_minus_linear")
        g = SpaceFunction.from_mapping(self.space, {"1": 1.0})
        assert norms.modular(expml, g) == pytest.approx(math.e - 2.0)

    def test_modular_skips_null_atoms(self) -> None:
        space = new_space(["a", "b"], [1, 0])
        f = SpaceFunction.from_mapping(space, {"a": 1.0, "b": 1e6})
        expml = make_orlicz("exp_minus_linear")
        assert norms.modular(expml, f) == pytest.approx(math.e - 2.0)

    def test_luxemburg_norm(self) -> None:
        assert norms.luxemburg_norm(self.power2, self.f) == pytest.approx(5.0, rel=TOL)
        assert norms.luxemburg_norm(self.power2, 0 * self.f) == 0.0

    def test_amemiya_norm(self) -> None:
        # for x^2 the Amemiya norm is twice the 2-norm
        assert norms.amemiya_norm(self.power2, self.f) == pytest.approx(10.0, rel=TOL)
        assert norms.amemiya_norm(self.power2, 0 * self.f) == 0.0

    def test_norms_ignore_null_atoms(self) -> None:
        space = new_space(["a", "b"], [1, 0])
        g = SpaceFunction.from_mapping(space, {"b": 5.0})
        assert g.vanishes_ae()
        assert not g.is_zero()
        assert list(g.restricted_to_positive_atoms().values) == [0.0, 0.0]
        assert norms.luxemburg_norm(self.power2, g) == 0.0
        assert norms.amemiya_norm(self.power2, g) == 0.0

        h = SpaceFunction.from_mapping(space, {"a": 3.0, "b": 1e300})
        assert not h.vanishes_ae()
        assert norms.luxemburg_norm(self.power2, h) == pytest.approx(3.0, rel=TOL)
        assert norms.amemiya_norm(self.power2, h) == pytest.approx(6.0, rel=TOL)
        expml = make_orlicz("exp_minus_linear")
        a_only = SpaceFunction.from_mapping(space, {"a": 3.0})
        assert norms.luxemburg_norm(expml, h) == pytest.approx(
            norms.luxemburg_norm(expml, a_only), rel=TOL
        )

    def test_indicator_norm(self) -> None:
        assert norms.indicator_norm(self.power2, 4) == pytest.approx(2.0, rel=TOL)
        assert norms.indicator_norm(self.power2, "1/4") == pytest.approx(0.5, rel=TOL)
        with pytest.raises(NonpositiveMeasure):
            norms.indicator_norm(self.power2, 0)

    def test_indicator_norm_matches_luxemburg(self) -> None:
        for spec in ["power:3", "powerlog:1", "expml"]:
            phi = parse_phi_spec(spec)
            for measure in ["1/4", "1", "4", "100"]:
                space = new_space(["a", "b"], [measure, 1])
                chi = SpaceFunction.indicator(space, {"a"})
                assert norms.indicator_norm(phi, measure) == pytest.approx(
                    norms.luxemburg_norm(phi, chi), rel=TOL
                )

    def test_delta2(self) -> None:
        result = norms.delta2_check(self.power2)
        assert result.holds
        assert result.constant == pytest.approx(4.0, abs=TOL)

        result = norms.delta2_check(make_orlicz("exp_minus_linear"))
        assert not result.holds
        assert result.witness >= 10

        result = norms.delta2_check(make_orlicz("power_log", 1))
        assert result.holds
        assert result.constant <= 4.0

    def test_delta2_user_function(self) -> None:
        cube = register_orlicz(lambda x: x**3, "cube")
        result = norms.delta2_check(cube)
        assert result.holds
        assert result.constant == pytest.approx(8.0, abs=TOL)

        exp = register_orlicz(lambda x: np.expm1(x) - x, "exp")
        assert not norms.delta2_check(exp).holds

    def test_norm_suite(self) -> None:
        rng = np.random.default_rng(2024)
        phis = [parse_phi_spec(spec) for spec in SPECS]
        for _ in range(500):
            space = random_space(rng, int(rng.integers(1, 7)))
            f = random_function(rng, space)
            phi = phis[int(rng.integers(0, len(phis)))]

            lux = norms.luxemburg_norm(phi, f)
            ame = norms.amemiya_norm(phi, f)
            assert lux <= ame * (1 + TOL)
            assert ame <= 2 * lux * (1 + TOL)

            # the unit ball of the norm is the unit sublevel set of the modular
            assert norms.modular(phi, f * (1.0 / lux)) == pytest.approx(1.0, rel=1e-6)
            assert (lux <= 1) == (norms.modular(phi, f) <= 1) or abs(lux - 1) < TOL

            subset = [p for p in space.points if rng.random() < 0.5] or [space.points[0]]
            chi = SpaceFunction.indicator(space, subset)
            assert norms.indicator_norm(phi, space.measure(subset)) == pytest.approx(
                norms.luxemburg_norm(phi, chi), rel=TOL
            )

    def test_norm_homogeneity(self) -> None:
        rng = np.random.default_rng(31)
        phis = [parse_phi_spec(spec) for spec in SPECS]
        for _ in range(200):
            space = random_space(rng, int(rng.integers(1, 7)))
            f = random_function(rng, space)
            phi = phis[int(rng.integers(0, len(phis)))]
            c = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.05, 20.0))
            for norm in [norms.luxemburg_norm, norms.amemiya_norm]:
                expected = abs(c) * norm(phi, f)
                assert norm(phi, f * c) == pytest.approx(expected, rel=1e-8)

    def test_norm_triangle_inequality(self) -> None:
        rng = np.random.default_rng(37)
        phis = [parse_phi_spec(spec) for spec in SPECS]
        for _ in range(200):
            space = random_space(rng, int(rng.integers(1, 7)))
            f = random_function(rng, space)
            g = random_function(rng, space) * float(rng.uniform(0.1, 10.0))
            phi = phis[int(rng.integers(0, len(phis)))]
            for norm in [norms.luxemburg_norm, norms.amemiya_norm]:
                bound = norm(phi, f) + norm(phi, g)
                assert norm(phi, f + g) <= bound * (1 + 1e-8)

    def test_luxemburg_norm_of_power_is_p_norm(self) -> None:
        rng = np.random.default_rng(11)
        for _ in range(100):
            p = Fraction(int(rng.integers(3, 12)), 2)
            phi = make_orlicz("power", p)
            space = random_space(rng, int(rng.integers(1, 7)))
            f = random_function(rng, space)
            weights = np.array([float(w) for w in space.weights])
            p_norm = np.sum(np.abs(f.values) ** float(p) * weights) ** (1 / float(p))
            assert norms.luxemburg_norm(phi, f) == pytest.approx(p_norm, rel=TOL)

    def test_modular_contraction(self) -> None:
        rng = np.random.default_rng(5)
        phis = [parse_phi_spec(spec) for spec in SPECS]
        for _ in range(500):
            n = int(rng.integers(1, 7))
            space = random_space(rng, n)
            tau = new_map(
                space,
                {p: space.points[int(rng.integers(0, n))] for p in space.points},
            )
            f = random_function(rng, space)
            phi = phis[int(rng.integers(0, len(phis)))]
            k = float(boundedness_constant(tau))
            assert norms.modular(phi, f.compose(tau)) <= k * norms.modular(phi, f) + TOL
