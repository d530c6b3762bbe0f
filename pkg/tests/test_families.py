import math
from fractions import Fraction

import pytest

from ctk.analysis import classify_value, theta, theta_prime
from ctk.catalog import bundled_table
from ctk.cyclotomic import ValueClass
from ctk.families import (
    SuzData,
    alt_verify,
    distinct_odd_partitions,
    gamma,
    l2_bounds,
    prime_power,
    suz_consistency,
    suz_gamma_classification,
    suz_theta,
    suz_theta_prime,
)


class TestSuzuki:
    def test_q8_values(self):
        assert suz_theta(8) == Fraction(1, 2) + Fraction(594, 8320)
        assert abs(float(suz_theta(8)) - 0.571394) < 1e-6
        assert suz_theta_prime(8) == Fraction(8, 11)
        assert abs(float(suz_theta_prime(8)) - 0.727273) < 1e-6

    def test_q32_values(self):
        assert abs(float(suz_theta(32)) - 0.516129) < 1e-6
        assert suz_theta_prime(32) == Fraction(1, 2) + Fraction(5, 70)

    def test_data(self):
        s = SuzData.from_q(8)
        assert s.group_order == 29120 and s.r == 4
        assert s.a_orders == (7, 13, 5)
        assert s.fused_sizes[0] == 12480
        assert s.class_count == 11

    @pytest.mark.parametrize("q", [8, 32, 128, 2**9, 2**21])
    def test_consistency(self, q):
        assert [v.name for v in suz_consistency(q) if not v] == []

    @pytest.mark.parametrize("q", [2, 4, 16, 12, 0])
    def test_bad_parameter(self, q):
        with pytest.raises(ValueError):
            suz_theta(q)

    def test_gamma_q8(self):
        kinds = [classify_value(gamma(8, s)) for s in range(1, 7)]
        assert all(v.kind == ValueClass.OTHER for v in kinds)
        assert all(v.mean >= Fraction(3, 2) for v in kinds)
        # numeric brute force over the six embeddings of zeta_7 + zeta_7^-1 gives 10/6
        brute = sum((2 * math.cos(2 * math.pi * k / 7)) ** 2 for k in range(1, 7)) / 6
        assert abs(brute - 5 / 3) < 1e-12
        assert {v.mean for v in kinds} == {Fraction(5, 3)}
        assert all(suz_gamma_classification(8))

    def test_gamma_q32(self):
        assert all(suz_gamma_classification(32))

    def test_monotone(self):
        qs = [2 ** e for e in range(3, 22, 2)]
        th = [suz_theta(q) for q in qs]
        thp = [suz_theta_prime(q) for q in qs]
        half = Fraction(1, 2)
        assert all(a > b > half for a, b in zip(th, th[1:]))
        assert all(a > b > half for a, b in zip(thp, thp[1:]))


class TestL2:
    def test_q4(self):
        b = l2_bounds(4)
        c = b.census
        assert (c["order"], c["classes"], c["G0"], c["G1"]) == (60, 5, 20, 24)
        assert b.lb_theta > Fraction(1, 2) and b.lb_theta_prime > Fraction(1, 2)

    def test_q5_census(self):
        c = l2_bounds(5).census
        assert (c["order"], c["classes"], c["G1"]) == (60, 5, 20)
        # the census must partition the group: 1 + 15 + 20 + 12 + 12
        assert c["G0"] == 15
        assert c["a_class"] == c["b_class"] == 12

    def test_same_group_agrees(self):
        # L2(4) and L2(5) are both A5; the certified bounds may not exceed the true values
        t = bundled_table("A5")
        for q in (4, 5):
            b = l2_bounds(q)
            assert b.lb_theta <= theta(t) and b.lb_theta_prime <= theta_prime(t)

    def test_q9_is_a6(self):
        t = bundled_table("A6")
        b = l2_bounds(9)
        assert b.census["order"] == 360 and b.census["classes"] == 7 == t.num_classes
        assert b.lb_theta <= theta(t) and b.lb_theta_prime <= theta_prime(t)

    def test_q3(self):
        b = l2_bounds(3)
        assert b.census["order"] == 12

    @pytest.mark.parametrize("q", [6, 1, 10, 100])
    def test_rejects(self, q):
        with pytest.raises(ValueError):
            l2_bounds(q)

    def test_sweep(self):
        half = Fraction(1, 2)
        for q in range(4, 2000):
            if prime_power(q):
                lb, lbp, _ = l2_bounds(q)
                assert lb > half and lbp > half, q


class TestAlternating:
    def test_partitions(self):
        assert distinct_odd_partitions(5) == [(5,)]
        assert sorted(distinct_odd_partitions(9)) == [(5, 3, 1), (9,)]
        assert distinct_odd_partitions(4) == [(3, 1)]

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_small(self, n):
        verdicts = alt_verify(n, bundled_table(f"A{n}"))
        assert [v.name for v in verdicts if not v] == []

    def test_a9(self):
        t = bundled_table("A9")
        assert theta(t) > Fraction(3, 4) and theta_prime(t) > Fraction(3, 4)
        assert all(alt_verify(9, t))

    def test_a5_law(self):
        t = bundled_table("A5")
        from ctk.cyclotomic import galois_mean
        irr = [x for row in t.values for x in row if not x.is_integer()]
        assert irr and all(4 * galois_mean(x) == 6 for x in irr)

    def test_range(self):
        with pytest.raises(ValueError):
            alt_verify(4)
