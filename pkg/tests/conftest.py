import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ctk.catalog import bundled_table, group_generators
from ctk.cyclotomic import Cyclotomic
from ctk.permgroup import enumerate_group


def numeric(n: int, coeffs: dict[int, Fraction], k: int = 1) -> complex:
    """Embedding zeta_n -> exp(2 pi i k / n) of a raw coefficient map."""
    return sum(complex(float(c)) * cmath.exp(2j * math.pi * e * k / n) for e, c in coeffs.items())


def brute_mean(n: int, coeffs: dict[int, Fraction]) -> float:
    units = [k for k in range(1, n + 1) if math.gcd(k, n) == 1]
    return sum(abs(numeric(n, coeffs, k)) ** 2 for k in units) / len(units)


@st.composite
def raw_cyclotomics(draw, max_order=60, integral=False):
    n = draw(st.integers(1, max_order))
    size = draw(st.integers(0, min(n, 6)))
    exps = draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size, unique=True))
    if integral:
        coeff = st.integers(-4, 4).map(Fraction)
    else:
        coeff = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    coeffs = {e: draw(coeff) for e in exps}
    return n, coeffs


def make(raw) -> Cyclotomic:
    n, coeffs = raw
    return Cyclotomic(order=n, coeffs=coeffs) if coeffs else Cyclotomic(0)


@pytest.fixture(scope="session")
def group():
    cache = {}

    def get(name):
        if name not in cache:
            d, gens = group_generators(name)
            cache[name] = enumerate_group(gens, d)
        return cache[name]
    return get


@pytest.fixture(scope="session")
def table():
    return bundled_table
