import numpy as np
import pytest

from fuzzylln.fuzzy import (
    AlphaKnot,
    AlphaPartition,
    FuzzyNumber,
    add,
    check_valid,
    crisp,
    d_h_infty,
    epsilon_partition,
    format_fuzzy,
    level_plus,
    level_set,
    make_triangular,
    minkowski_mean,
    norm_F,
    parse_fuzzy,
    scale_fuzzy,
    uniform_grid,
)
from fuzzylln.intervals import Interval, hausdorff
from fuzzylln.oracle import Resolution, d_h_infty_bruteforce

from conftest import random_fuzzy

tri = make_triangular


def two_knot(mode):
    return FuzzyNumber([0, 1], [0, 1], [4, 2], mode)


def three_step():
    return FuzzyNumber([0, 0.5, 1], [0, 1, 2], [4, 3, 2], "step")


def max_slope(v):
    da = np.diff(v.alphas)
    return max(np.max(np.abs(np.diff(v.lo)) / da), np.max(np.abs(np.diff(v.hi)) / da))


class TestTriangular:
    def test_crisp_when_spreads_vanish(self):
        v = tri(0, 0, 0)
        for a in (0.01, 0.5, 1.0):
            assert level_set(v, a) == Interval(0, 0)

    def test_apex(self):
        assert level_set(tri(1, 1, 1), 1) == Interval(1, 1)

    def test_half_level_against_thresholded_membership(self):
        xs = np.linspace(-3, 3, 600_001)
        mu = np.where(xs <= 0, np.clip(1 + xs / 2, 0, 1), np.clip(1 - xs, 0, 1))
        cut = xs[mu >= 0.5]
        assert cut.min() == pytest.approx(-1, abs=1e-5)
        assert cut.max() == pytest.approx(0.5, abs=1e-5)
        assert level_set(tri(0, 2, 1), 0.5) == Interval(-1, 0.5)

    def test_negative_spread_rejected(self):
        with pytest.raises(ValueError):
            tri(0, -1, 1)


class TestLevels:
    @pytest.mark.parametrize("mode", ["pwl", "step"])
    def test_at_knots(self, mode):
        v = three_step() if mode == "step" else FuzzyNumber([0, 0.5, 1], [0, 1, 2], [4, 3, 2])
        for k in v.knots[1:]:
            assert level_set(v, k.alpha) == k.level

    def test_pwl_interpolation(self):
        assert level_set(two_knot("pwl"), 0.5) == Interval(0.5, 3)

    def test_step_takes_upper_knot(self):
        assert level_set(two_knot("step"), 0.5) == Interval(1, 2)

    def test_domain_checks(self):
        v = tri(0, 1, 1)
        for bad in (0.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                level_set(v, bad)
        with pytest.raises(ValueError):
            level_plus(v, 1.0)

    def test_pwl_right_limit_is_level(self):
        v = tri(0.3, 1.7, 0.4)
        for a in np.linspace(0.05, 0.95, 19):
            assert level_plus(v, a) == level_set(v, a)

    def test_step_right_limit_is_next_knot(self):
        assert level_plus(three_step(), 0.5) == Interval(2, 2)
        assert level_plus(three_step(), 0.2) == Interval(1, 3)

    @pytest.mark.parametrize("mode", ["pwl", "step"])
    def test_support_contains_all_levels(self, mode, rng):
        for _ in range(50):
            v = random_fuzzy(rng, mode)
            supp = level_plus(v, 0.0)
            for a in np.linspace(0.01, 1, 37):
                assert level_set(v, a).issubset(supp)

    def test_step_left_continuity(self):
        v = three_step()
        for j, a in enumerate(v.alphas[1:], start=1):
            target = level_set(v, a)
            for beta in a - np.array([0.4, 0.1, 1e-3, 1e-9]) * (a - v.alphas[j - 1]):
                assert hausdorff(level_set(v, beta), target) == 0

    def test_right_limits_converge(self):
        v = tri(0.5, 1.0, 2.0)
        for delta in (1.0, 0.1, 1e-3, 1e-6):
            vn = tri(0.5 + delta, 1.0, 2.0)
            assert d_h_infty(vn, v) == pytest.approx(delta, rel=1e-9)
            for a in (0.0, 0.3, 0.99):
                assert hausdorff(level_plus(vn, a), level_plus(v, a)) == pytest.approx(delta, rel=1e-9)
        for a in (0.0, 0.3, 0.9):
            gaps = [hausdorff(level_set(v, a + h), level_plus(v, a)) for h in (0.1, 0.01, 1e-4)]
            assert gaps == sorted(gaps, reverse=True) and gaps[-1] < 1e-3

    def test_step_limit_from_above(self):
        v = three_step()
        for a in (0.0, 0.2, 0.5, 0.7):
            beta = a + 1e-9
            assert hausdorff(level_set(v, beta), level_plus(v, a)) == 0


class TestUniformMetric:
    def test_identity(self):
        v = tri(0.1, 2, 3)
        assert d_h_infty(v, v) == 0

    def test_unit_shift(self):
        u, v = tri(0, 1, 1), tri(1, 1, 1)
        assert d_h_infty_bruteforce(u, v, Resolution(alpha_step=1e-4)) == pytest.approx(1, abs=1e-12)
        assert d_h_infty(u, v) == 1

    def test_gap_largest_at_support(self):
        u, v = tri(0, 2, 2), tri(0, 1, 1)
        brute = d_h_infty_bruteforce(u, v, Resolution(alpha_step=1e-4))
        assert brute == pytest.approx(1, abs=1e-3) and brute <= 1
        assert d_h_infty(u, v) == 1

    @pytest.mark.parametrize("modes", [("pwl", "pwl"), ("step", "step"), ("pwl", "step")])
    def test_against_dense_grid(self, modes, rng):
        res = Resolution(alpha_step=1e-4)
        for _ in range(40):
            u, v = random_fuzzy(rng, modes[0]), random_fuzzy(rng, modes[1])
            exact = d_h_infty(u, v)
            brute = d_h_infty_bruteforce(u, v, res)
            assert brute <= exact + 1e-12
            if modes == ("pwl", "pwl"):
                tol = 2 * res.alpha_step * (max_slope(u) + max_slope(v))
                assert exact - brute <= tol

    def test_step_excludes_zero_knot(self):
        u = FuzzyNumber([0, 0.5, 1], [-100, 0, 0], [100, 1, 1], "step")
        v = FuzzyNumber([0, 0.5, 1], [0, 0, 0], [1, 1, 1], "step")
        assert d_h_infty(u, v) == 0

    def test_dominates_levels(self, rng):
        for _ in range(30):
            u, v = random_fuzzy(rng), random_fuzzy(rng)
            d = d_h_infty(u, v)
            for a in np.linspace(0.01, 1, 50):
                assert hausdorff(level_set(u, a), level_set(v, a)) <= d + 1e-12

    def test_arithmetic_compatibility(self, rng):
        for _ in range(30):
            u, v, w = (random_fuzzy(rng) for _ in range(3))
            assert d_h_infty(add(u, w), add(v, w)) == pytest.approx(d_h_infty(u, v), abs=1e-9)
            for lam in (-2.5, 0.0, 0.3, 4.0):
                assert d_h_infty(scale_fuzzy(lam, u), scale_fuzzy(lam, v)) == pytest.approx(
                    abs(lam) * d_h_infty(u, v), abs=1e-9)


class TestArithmetic:
    def test_triangular_sum(self):
        s = add(tri(1, 0.5, 2), tri(-3, 1, 0.25))
        assert d_h_infty(s, tri(-2, 1.5, 2.25)) < 1e-12

    def test_zero_is_identity(self):
        v = tri(0.7, 1, 2)
        assert add(v, crisp(0.0)) == v
        assert add(v, crisp(0.0, grid=v.alphas)) == v

    def test_mean_by_scaling(self, rng):
        xs = [random_fuzzy(rng) for _ in range(5)]
        summed = xs[0]
        for x in xs[1:]:
            summed = add(summed, x)
        parts = [scale_fuzzy(1 / 5, x) for x in xs]
        by_parts = parts[0]
        for p in parts[1:]:
            by_parts = add(by_parts, p)
        assert d_h_infty(by_parts, scale_fuzzy(1 / 5, summed)) < 1e-12
        assert d_h_infty(minkowski_mean(xs), scale_fuzzy(1 / 5, summed)) == 0

    def test_merged_grid_exact(self, rng):
        u, v = random_fuzzy(rng), random_fuzzy(rng)
        s = add(u, v)
        for a in np.linspace(0.001, 1, 97):
            lu, lv, ls = level_set(u, a), level_set(v, a), level_set(s, a)
            assert ls.lo == pytest.approx(lu.lo + lv.lo, abs=1e-12)
            assert ls.hi == pytest.approx(lu.hi + lv.hi, abs=1e-12)
        assert check_valid(s)

    def test_mode_mismatch(self):
        with pytest.raises(ValueError):
            add(two_knot("pwl"), two_knot("step"))

    def test_negative_scale_keeps_nesting(self, rng):
        v = random_fuzzy(rng)
        assert check_valid(scale_fuzzy(-3.0, v))


class TestNorm:
    def test_examples(self):
        assert norm_F(crisp(0.0)) == 0
        assert norm_F(tri(0, 1, 1)) == 1
        assert norm_F(tri(3, 1, 1)) == 4

    def test_equals_distance_to_zero(self, rng):
        for _ in range(20):
            v = random_fuzzy(rng)
            assert norm_F(v) == d_h_infty(v, crisp(0.0))


def partition_ok(v, part, eps):
    return all(
        hausdorff(level_set(v, b), level_plus(v, a)) < eps for a, b in part.cells()
    )


class TestEpsilonPartition:
    def test_crisp(self):
        assert epsilon_partition(crisp(2.0, grid=uniform_grid()), 1e-6).cuts == (0.0, 1.0)

    def test_half_split_is_valid(self):
        v = tri(0, 1, 1)
        assert partition_ok(v, AlphaPartition((0, 0.5, 1)), 0.6)
        part = epsilon_partition(v, 0.6)
        assert partition_ok(v, part, 0.6)
        assert len(part) == 3

    @pytest.mark.parametrize("mode", ["pwl", "step"])
    def test_postcondition(self, mode, rng):
        for _ in range(40):
            v = random_fuzzy(rng, mode)
            for eps in (0.05, 0.5, 3.0):
                assert partition_ok(v, epsilon_partition(v, eps), eps)

    def test_cuts_inside_coarse_cells(self):
        v = tri(0, 10, 10, grid=[0, 1])
        part = epsilon_partition(v, 1.0)
        assert partition_ok(v, part, 1.0)
        assert 11 <= len(part) <= 13

    def test_invalid_eps(self):
        with pytest.raises(ValueError):
            epsilon_partition(tri(0, 1, 1), 0)

    def test_partition_type(self):
        with pytest.raises(ValueError):
            AlphaPartition((0, 0.5, 0.5, 1))
        with pytest.raises(ValueError):
            AlphaPartition((0.1, 1))


class TestValidity:
    def test_triangular_valid(self):
        assert check_valid(tri(0, 1, 2))

    def test_nesting_violation_located(self):
        v = FuzzyNumber([0, 0.5, 1], [0, 0, 0], [1, 2, 1])
        rep = check_valid(v)
        assert not rep and rep.index == 1 and "nested" in rep.reason

    def test_missing_zero_knot(self):
        rep = check_valid(FuzzyNumber([1.0], [0.0], [1.0]))
        assert not rep and rep.index == 0

    def test_empty_core(self):
        rep = check_valid(FuzzyNumber([0, 1], [0, 2], [3, 1]))
        assert not rep and rep.reason == "empty 1-level"

    def test_knot_roundtrip(self):
        v = tri(1, 2, 3, grid=[0, 0.25, 1])
        assert FuzzyNumber.from_knots(v.knots) == v
        with pytest.raises(ValueError):
            AlphaKnot(1.5, Interval(0, 1))

    def test_immutable(self):
        v = tri(0, 1, 1)
        with pytest.raises(AttributeError):
            v.mode = "step"
        with pytest.raises(ValueError):
            v.lo[0] = 5


def test_decomposition_bound_exact(rng):
    from fuzzylln.lln import decompose

    for _ in range(100):
        u, w = random_fuzzy(rng), random_fuzzy(rng)
        for eps in (0.1, 1.0):
            rep = decompose(u, w, eps)
            assert rep.holds
            assert rep.partition_term < 2 * eps


class TestLiteral:
    @pytest.mark.parametrize("mode", ["pwl", "step"])
    def test_roundtrip(self, mode, rng):
        v = random_fuzzy(rng, mode)
        assert parse_fuzzy(format_fuzzy(v)) == v

    def test_parse_text(self):
        v = parse_fuzzy("mode: step\n# comment\n0 0 4\n0.5 1 3\n1 2 2\n")
        assert v == three_step()

    @pytest.mark.parametrize("text", [
        "0 0 1\n1 0 1\n",
        "mode: curvy\n0 0 1\n",
        "mode: pwl\n0 0\n",
        "mode: pwl\n1 0 1\n0 0 1\n",
        "mode: pwl\n0 a 1\n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            parse_fuzzy(text)
