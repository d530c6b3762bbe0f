import itertools

import numpy as np
import pytest

from ctk.catalog import NILPOTENT_GROUPS, OTHER_GROUPS, bundled_table, product_generators
from ctk.chartab import direct_product, equivalent, power_map_galois_defects, render_table, validate
from ctk.cyclotomic import Cyclotomic, root_of_unity
from ctk.dixon import (
    DixonError,
    character_table,
    choose_prime,
    class_matrix_context,
    class_mult_coeffs,
)
from ctk.permgroup import enumerate_group, from_cycles, mul, power

SMALL = ["C2", "C3", "C4", "C6", "S3", "S4", "A4", "A5", "D4", "Q8", "He3", "M16", "SD16", "D8", "Q16"]


def brute_coeffs(g):
    """a[i, j, k] by counting x in C_i with x^-1 z_k in C_j."""
    r = g.num_classes
    elems = [tuple(int(v) for v in e) for e in g.elements]
    cls = {e: int(g.class_of[i]) for i, e in enumerate(elems)}
    inv = {e: tuple(np.argsort(e)) for e in elems}
    a = np.zeros((r, r, r), dtype=np.int64)
    for k, cc in enumerate(g.classes):
        z = cc.representative
        for x in elems:
            y = mul(inv[x], z)
            a[cls[x], cls[y], k] += 1
    return a


class TestCoefficients:
    def test_cyclic_three(self, group):
        g = group("C3")
        a = class_mult_coeffs(g)
        # identify classes with exponents of the generator
        gen = g.generators[0]
        expo = {g.class_index(from_cycles([], 3)): 0, g.class_index(gen): 1,
                g.class_index(mul(gen, gen)): 2}
        for i, j, k in itertools.product(range(3), repeat=3):
            assert a[i, j, k] == int((expo[i] + expo[j]) % 3 == expo[k])

    def test_s3(self, group):
        g = group("S3")
        assert g.class_sizes == (1, 3, 2)
        assert list(class_mult_coeffs(g)[1, 1]) == [3, 0, 3]

    @pytest.mark.parametrize("name", ["S4", "Q8", "He3", "A5", "D4"])
    def test_brute_force(self, group, name):
        g = group(name)
        assert (class_mult_coeffs(g) == brute_coeffs(g)).all()

    @pytest.mark.parametrize("name", SMALL + ["M11", "S6", "A7"])
    def test_counting_identity(self, group, name):
        g = group(name)
        a = class_mult_coeffs(g)
        sizes = np.array(g.class_sizes, dtype=np.int64)
        assert (a >= 0).all()
        assert ((a * sizes[None, None, :]).sum(axis=2) == np.outer(sizes, sizes)).all()

    @pytest.mark.parametrize("name", ["Q8", "A5", "M11"])
    def test_context(self, group, name):
        g = group(name)
        ctx = class_matrix_context(g)
        p, z, e = ctx.prime, ctx.root, ctx.exponent
        assert (p - 1) % e == 0 and p * p > 4 * g.order
        assert pow(z, e, p) == 1
        assert all(pow(z, s, p) != 1 for s in range(1, e))

    def test_prime_choice(self):
        assert choose_prime(2, 2) == 3
        assert choose_prime(4, 8) == 13
        with pytest.raises(DixonError, match="below 50"):
            choose_prime(10, 10**6, bound=50)


class TestTables:
    def test_c2(self, group):
        t = character_table(group("C2"))
        assert t.values == ((1, -1), (1, 1))

    def test_q8(self, group):
        t = character_table(group("Q8"))
        assert t.degrees == (1, 1, 1, 1, 2)
        assert t.values[-1] == (2, -2, 0, 0, 0)

    def test_s3(self, group):
        t = character_table(group("S3"))
        assert t.degrees == (1, 1, 2)
        assert t.values[-1] == (2, 0, -1)

    def test_a5_golden_ratio(self, group):
        t = character_table(group("A5"))
        assert sorted(t.degrees) == [1, 3, 3, 4, 5]
        phi = -(root_of_unity(5, 2) + root_of_unity(5, 3))
        assert any(phi in row for row in t.values)

    @pytest.mark.parametrize("name", SMALL)
    def test_validates(self, group, name):
        t = character_table(group(name), name)
        assert validate(t) == []
        assert power_map_galois_defects(t) == []
        n = t.group_order
        assert all(n % d == 0 for d in t.degrees)
        for row in t.values:
            for x, m in zip(row, t.element_orders):
                assert t.exponent % m == 0 and m % x.order == 0

    @pytest.mark.parametrize("name", NILPOTENT_GROUPS + OTHER_GROUPS)
    def test_matches_golden(self, name):
        golden = bundled_table(name)
        if golden.group_order > 20000:
            pytest.skip("covered by the slow golden test")
        from ctk.catalog import group_generators
        d, gens = group_generators(name)
        t = character_table(enumerate_group(gens, d), name)
        assert render_table(t) == render_table(golden)

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["A8", "A9", "M12"])
    def test_matches_golden_large(self, name):
        from ctk.catalog import group_generators
        d, gens = group_generators(name)
        t = character_table(enumerate_group(gens, d), name)
        assert render_table(t) == render_table(bundled_table(name))

    def test_deterministic(self, group):
        a = render_table(character_table(group("He3"), "He3"))
        b = render_table(character_table(group("He3"), "He3"))
        assert a == b

    @pytest.mark.parametrize("name", ["C12", "C2", "C9"])
    def test_linear_characters_multiplicative(self, group, name):
        g = group(name)
        t = character_table(g)
        gen = g.generators[0]
        m = g.order
        for row in t.values:
            chi = [row[g.class_index(power(gen, s))] for s in range(m + 1)]
            assert all(chi[s + 1] == chi[s] * chi[1] for s in range(m))
            assert chi[m] == 1

    @pytest.mark.parametrize("names", [("C2", "S3"), ("Q8", "C3"), ("D4", "C3")])
    def test_kronecker_agrees_with_direct_computation(self, names):
        d, gens = product_generators(*names)
        direct = character_table(enumerate_group(gens, d), "x".join(names))
        kron = direct_product(bundled_table(names[0]), bundled_table(names[1]))
        assert equivalent(direct, kron)
        assert validate(kron) == []


def test_eigenvalue_values_are_cyclotomic(group):
    t = character_table(group("M16"))
    assert all(isinstance(x, Cyclotomic) for row in t.values for x in row)
