import math
from fractions import Fraction

import pytest

from lambda_osc.params import (
    AdimMap,
    PhysicalParams,
    classify,
    norm_tail_exponent,
    to_adimensional,
)


class TestClassify:
    def test_positive_published_count(self):
        # four bound states at 0.3
        dp = classify(0.3)
        assert dp.sign_class == "positive"
        assert dp.n_max == 3
        assert dp.bound_states == 4

    def test_zero_is_undeformed(self):
        dp = classify(0)
        assert dp.sign_class == "zero"
        assert dp.n_max is None
        assert dp.bound_states is None

    def test_integer_cutoff_excludes_borderline_state(self):
        # oracle: the norm integrand's tail power 2m - 1 - 2/lam must be
        # below -1; at 1/2 the m = 2 state sits exactly at -1 and is out
        lam = Fraction(1, 2)
        assert norm_tail_exponent(1, lam) < -1
        assert norm_tail_exponent(2, lam) == -1
        assert classify(lam).n_max == 1

    def test_exponent_oracle_matches_cutoff(self):
        for lam in (Fraction(1, 5), Fraction(3, 10), Fraction(2, 7),
                    Fraction(1, 3), Fraction(7, 5)):
            n = classify(lam).n_max
            for m in range(n + 1):
                assert norm_tail_exponent(m, lam) < -1
            assert norm_tail_exponent(n + 1, lam) >= -1

    def test_negative_has_walls(self):
        dp = classify(-0.25)
        assert dp.sign_class == "negative"
        assert dp.half_width == pytest.approx(2.0)
        assert dp.n_max is None

    def test_nonincreasing_with_jumps_at_reciprocals(self):
        for k in range(1, 11):
            at = classify(Fraction(1, k)).n_max
            above = classify(Fraction(1, k) + Fraction(1, 10**6)).n_max
            below = classify(Fraction(1, k) - Fraction(1, 10**6)).n_max
            assert at == k - 1
            assert above == k - 1
            assert below == k

    def test_nonincreasing_on_a_sweep(self):
        values = [classify(Fraction(i, 100)).n_max for i in range(1, 300)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            classify(float("nan"))
        with pytest.raises(ValueError):
            classify(float("inf"))


class TestPhysicalParams:
    def test_g_identity_exact(self):
        p = PhysicalParams(m=Fraction(2), alpha=Fraction(3), hbar=Fraction(5),
                           lam=Fraction(-7, 3))
        assert p.g == p.m * p.alpha * (p.alpha + p.hbar * p.lam / p.m)
        assert p.g == p.m * p.alpha**2 + p.lam * p.hbar * p.alpha

    def test_beta(self):
        p = PhysicalParams(m=Fraction(3), alpha=Fraction(2), hbar=Fraction(4))
        assert p.beta == Fraction(3, 2)

    @pytest.mark.parametrize("field", ["m", "alpha", "hbar"])
    def test_positive_required(self, field):
        with pytest.raises(ValueError):
            PhysicalParams(**{field: 0})


class TestAdimensionalMap:
    def test_unit_parameters_make_identity(self):
        p = PhysicalParams(m=1, alpha=1, hbar=1, lam=0.3)
        y, lam = to_adimensional(p, 2.0)
        assert y == pytest.approx(2.0)
        assert lam == pytest.approx(0.3)

    def test_substitution_example(self):
        p = PhysicalParams(m=Fraction(2), alpha=Fraction(1), hbar=Fraction(1),
                           lam=Fraction(1))
        y, lam = to_adimensional(p, 1)
        assert lam == Fraction(1, 2)
        assert y == pytest.approx(math.sqrt(2.0))

    def test_origin_fixed(self):
        p = PhysicalParams(m=2.7, alpha=0.4, hbar=1.3, lam=-0.2)
        y, _ = to_adimensional(p, 0.0)
        assert y == 0.0

    def test_round_trip(self):
        p = PhysicalParams(m=2.7, alpha=0.4, hbar=1.3, lam=-0.2)
        amap = AdimMap(p)
        for x in (0.3, -1.7, 2.2):
            assert amap.x_from_y(amap.y_from_x(x)) == pytest.approx(x, rel=1e-15)

    def test_invariant_combination_exact(self):
        # 1 + lam_phys x^2 == 1 + lam_adim y^2 through the squared map
        p = PhysicalParams(m=Fraction(2), alpha=Fraction(3), hbar=Fraction(7),
                           lam=Fraction(-5, 11))
        amap = AdimMap(p)
        x_sq = Fraction(9, 4)
        y_sq = amap.y_squared_from_x_squared(x_sq)
        assert 1 + p.lam * x_sq == 1 + amap.lam_adim * y_sq
