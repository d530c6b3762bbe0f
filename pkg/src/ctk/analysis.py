"""Value classification, theta statistics and the theorem checks run on tables.

All comparisons are exact: counts are integers and ratios are Fractions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .chartab import CharacterTable
from .cyclotomic import (
    Cyclotomic,
    ValueClass,
    galois_mean,
    is_root_of_unity,
    root_of_unity,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


@lru_cache(maxsize=1 << 16)
def classify_value(a: Cyclotomic) -> ValueClass:
    if a.is_zero():
        return ValueClass(ValueClass.ZERO, Fraction(0))
    if is_root_of_unity(a):
        return ValueClass(ValueClass.ROOT, Fraction(1))
    return ValueClass(ValueClass.OTHER, galois_mean(a))


def classify_table(t: CharacterTable) -> list[list[ValueClass]]:
    return [[classify_value(x) for x in row] for row in t.values]


def omega(degree: int) -> int:
    """Number of distinct primes dividing ``degree``."""
    if degree < 1:
        raise ValueError("degree must be positive")
    count = 0
    p = 2
    n = degree
    while p * p <= n:
        if n % p == 0:
            count += 1
            while n % p == 0:
                n //= p
        p += 1
    return count + (n > 1)


def _qualifying(t: CharacterTable) -> list[int]:
    k = t.num_classes
    cols = [c for c, s in enumerate(t.class_sizes) if s * k >= t.group_order]
    assert cols, "the largest class always has at least average size"
    return cols


def _row_hits(t: CharacterTable, cls) -> list[int]:
    return [sum(s for s, v in zip(t.class_sizes, row) if v.root_or_zero) for row in cls]


def _col_hits(t: CharacterTable, cls, c: int) -> int:
    return sum(1 for row in cls if row[c].root_or_zero)


def theta(t: CharacterTable) -> Fraction:
    """Least fraction of elements where a single irreducible is a root of unity or zero."""
    cls = classify_table(t)
    return Fraction(min(_row_hits(t, cls)), t.group_order)


def theta_prime(t: CharacterTable) -> Fraction:
    cls = classify_table(t)
    k = len(t.values)
    return min(Fraction(_col_hits(t, cls, c), k) for c in _qualifying(t))


# --- identities and bounds ---------------------------------------------------------

def verify_galois_mean_identities(t: CharacterTable) -> list[Verdict]:
    """Row sums of Galois means equal |G|; column sums equal |C_G(g)|."""
    cls = classify_table(t)
    n = t.group_order
    worst_row = Fraction(0)
    for row in cls:
        total = sum((s * v.mean for s, v in zip(t.class_sizes, row)), Fraction(0))
        worst_row = max(worst_row, abs(total - n))
    worst_col = Fraction(0)
    for c, size in enumerate(t.class_sizes):
        total = sum((row[c].mean for row in cls), Fraction(0))
        worst_col = max(worst_col, abs(total - Fraction(n, size)))
    return [
        Verdict("galois_mean_row_identity", worst_row == 0, f"worst deviation {worst_row}"),
        Verdict("galois_mean_column_identity", worst_col == 0, f"worst deviation {worst_col}"),
    ]


def verify_classical_bounds(t: CharacterTable) -> list[Verdict]:
    cls = classify_table(t)
    n, k = t.group_order, t.num_classes
    degrees = t.degrees
    zero_free = [i + 1 for i, row in enumerate(cls)
                 if degrees[i] > 1 and not any(v.kind == ValueClass.ZERO for v in row)]
    big_cols = [c for c, s in enumerate(t.class_sizes) if s * k > n]
    zero_free_cols = [c for c in big_cols
                      if not any(row[c].kind == ValueClass.ZERO for row in cls)]
    th, thp = theta(t), theta_prime(t)
    low_means = [(i + 1, c, str(v.mean)) for i, row in enumerate(cls) for c, v in enumerate(row)
                 if v.kind == ValueClass.OTHER and v.mean < Fraction(3, 2)]
    return [
        Verdict("burnside_zeros", not zero_free, f"nonlinear rows without zero: {zero_free}"),
        Verdict("gallagher_zeros", not zero_free_cols,
                f"larger-than-average classes without zero: {zero_free_cols}"),
        Verdict("thompson_theta", th > Fraction(1, 3), f"theta = {th}"),
        Verdict("gallagher_theta_prime", thp > Fraction(1, 3), f"theta' = {thp}"),
        Verdict("siegel_mean", not low_means, f"values with mean < 3/2: {low_means[:5]}"),
    ]


def verify_nilpotent_theorems(t: CharacterTable, nilpotent: bool) -> list[Verdict]:
    """Checks for nilpotent groups; ``nilpotent`` must come from the caller."""
    if not nilpotent:
        raise ValueError("verify_nilpotent_theorems needs a table flagged nilpotent")
    cls = classify_table(t)
    n, k = t.group_order, t.num_classes
    degrees = t.degrees
    zeros = [sum(s for s, v in zip(t.class_sizes, row) if v.kind == ValueClass.ZERO)
             for row in cls]

    few_zeros = [i + 1 for i, d in enumerate(degrees) if d > 1 and 2 * zeros[i] <= n]

    omega_fail = []
    for i, d in enumerate(degrees):
        w = 2 ** omega(d)
        # zeros/n >= 1 - (n - d^2 + w) / (w n)
        if zeros[i] * w < w * n - (n - d * d + w):
            omega_fail.append(i + 1)

    nonlinear = [i for i, d in enumerate(degrees) if d > 1]
    col_fail = []
    for c, s in enumerate(t.class_sizes):
        z = sum(1 for i in nonlinear if cls[i][c].kind == ValueClass.ZERO)
        if s * k > n and not 2 * z > len(nonlinear):
            col_fail.append(c)
        elif s * k == n and not 2 * z >= len(nonlinear):
            col_fail.append(c)

    th, thp = theta(t), theta_prime(t)

    lemma_fail = []
    for i, row in enumerate(cls):
        w = 2 ** omega(degrees[i])
        for c, v in enumerate(row):
            if v.kind != ValueClass.ZERO and v.mean < w:
                lemma_fail.append((i + 1, c))

    return [
        Verdict("nilpotent_row_zeros", not few_zeros,
                f"nonlinear rows vanishing on at most half of G: {few_zeros}"),
        Verdict("nilpotent_omega_bound", not omega_fail, f"rows failing the bound: {omega_fail}"),
        Verdict("nilpotent_column_zeros", not col_fail, f"classes failing: {col_fail}"),
        Verdict("nilpotent_theta_half", th > Fraction(1, 2) and thp > Fraction(1, 2),
                f"theta = {th}, theta' = {thp}"),
        Verdict("nilpotent_mean_lemma", not lemma_fail, f"(row, class) failing: {lemma_fail[:5]}"),
    ]


def _prime_power(m: int) -> int | None:
    if m < 2:
        return None
    p = next(q for q in range(2, m + 1) if m % q == 0)
    while m % p == 0:
        m //= p
    return p if m == 1 else None


def verify_prime_power_lemmas(t: CharacterTable) -> list[Verdict]:
    cls = classify_table(t)
    degrees = t.degrees
    thm_fail = []
    root_fail = []
    for c, m in enumerate(t.element_orders):
        p = _prime_power(m)
        if p is None:
            continue
        for i, d in enumerate(degrees):
            v = cls[i][c]
            if p == 2 or d % p not in (2 % p, (-2) % p):
                if v.kind == ValueClass.OTHER and v.mean < 2:
                    thm_fail.append((i + 1, c))
            if d % p not in (1 % p, (-1) % p) and v.kind == ValueClass.ROOT:
                root_fail.append((i + 1, c))
    out = [
        Verdict("prime_power_mean_two", not thm_fail, f"(row, class) failing: {thm_fail[:5]}"),
        Verdict("prime_power_not_root", not root_fail, f"(row, class) failing: {root_fail[:5]}"),
    ]
    if _prime_power(t.group_order) is not None:
        pg_fail = [(i + 1, c) for i, row in enumerate(cls) if degrees[i] > 1
                   for c, v in enumerate(row) if v.kind != ValueClass.ZERO and v.mean < 2]
        out.append(Verdict("p_group_mean_two", not pg_fail, f"(row, class) failing: {pg_fail[:5]}"))
    return out


def root_sum_congruence(coeff_a: Sequence[int], roots_a: Sequence[tuple[int, int]],
                        coeff_b: Sequence[int], roots_b: Sequence[tuple[int, int]],
                        p: int) -> bool | None:
    """Compare coefficient sums mod p of two integer combinations of p-power roots of unity.

    Roots are ``(m, k)`` pairs standing for zeta_m**k with m a power of ``p``.
    Returns ``None`` when the two combinations are different numbers.
    """
    for m, _ in list(roots_a) + list(roots_b):
        q = m
        while q % p == 0:
            q //= p
        if q != 1:
            raise ValueError(f"root of order {m} is not a {p}-power root of unity")
    lhs = sum((c * root_of_unity(m, k) for c, (m, k) in zip(coeff_a, roots_a)), Cyclotomic(0))
    rhs = sum((c * root_of_unity(m, k) for c, (m, k) in zip(coeff_b, roots_b)), Cyclotomic(0))
    if lhs != rhs:
        return None
    return (sum(coeff_a) - sum(coeff_b)) % p == 0


# --- reports --------------------------------------------------------------------------

def format_rational(x: Fraction) -> dict[str, str]:
    with localcontext() as ctx:
        ctx.prec = 50
        dec = (Decimal(x.numerator) / Decimal(x.denominator)).quantize(
            Decimal("1e-10"), rounding=ROUND_HALF_EVEN)
    return {"exact": str(x), "decimal": f"{dec:.10f}"}


@dataclass
class AnalysisReport:
    name: str
    group_order: int
    num_classes: int
    theta: Fraction
    theta_prime: Fraction
    per_character: list[dict]
    per_class: list[dict]
    verdicts: list[Verdict]
    nilpotent: bool | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        th, thp = format_rational(self.theta), format_rational(self.theta_prime)
        return {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "order": self.group_order,
            "classes": self.num_classes,
            "nilpotent": self.nilpotent,
            "theta": th["exact"],
            "theta_decimal": th["decimal"],
            "theta_prime": thp["exact"],
            "theta_prime_decimal": thp["decimal"],
            "per_character": self.per_character,
            "per_class": self.per_class,
            "verdicts": {v.name: v.passed for v in self.verdicts},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [
            f"group {self.name}: order {self.group_order}, {self.num_classes} classes"
            + ("" if self.nilpotent is None else f", nilpotent={self.nilpotent}"),
            f"theta  = {d['theta']} ({d['theta_decimal']})",
            f"theta' = {d['theta_prime']} ({d['theta_prime_decimal']})",
        ]
        for v in self.verdicts:
            lines.append(f"[{'PASS' if v.passed else 'FAIL'}] {v.name}"
                         + ("" if v.passed else f": {v.detail}"))
        return "\n".join(lines) + "\n"


def analyze(t: CharacterTable, nilpotent: bool | None = None) -> AnalysisReport:
    cls = classify_table(t)
    n = t.group_order
    per_character = []
    for i, (row, d) in enumerate(zip(cls, t.degrees)):
        zeros = sum(s for s, v in zip(t.class_sizes, row) if v.kind == ValueClass.ZERO)
        roots = sum(s for s, v in zip(t.class_sizes, row) if v.kind == ValueClass.ROOT)
        per_character.append({
            "character": f"X{i + 1}",
            "degree": d,
            "omega": omega(d),
            "zeros": zeros,
            "roots_of_unity": roots,
            "zero_fraction": str(Fraction(zeros, n)),
        })
    per_class = []
    for c in _qualifying(t):
        per_class.append({
            "class": c,
            "size": t.class_sizes[c],
            "element_order": t.element_orders[c],
            "zeros": sum(1 for row in cls if row[c].kind == ValueClass.ZERO),
            "roots_of_unity": sum(1 for row in cls if row[c].kind == ValueClass.ROOT),
            "characters": len(cls),
        })
    verdicts = verify_galois_mean_identities(t) + verify_classical_bounds(t)
    verdicts += verify_prime_power_lemmas(t)
    if nilpotent:
        verdicts += verify_nilpotent_theorems(t, True)
    return AnalysisReport(t.name, n, t.num_classes, theta(t), theta_prime(t),
                          per_character, per_class, verdicts, nilpotent)


def random_equal_root_sums(rng: random.Random, p: int, max_n: int = 3, terms: int = 6):
    """Two different-looking integer combinations of p-power roots with the same value.

    The second side re-expresses each root at a random higher order and adds
    random multiples of vanishing sums sum_t zeta_m^(j + t*m/p).
    """
    n = rng.randint(1, max_n)
    m = p ** n
    coeff_a, roots_a, levels = [], [], []
    for _ in range(rng.randint(1, terms)):
        i = rng.randint(0, n)
        levels.append(i)
        coeff_a.append(rng.randint(-5, 5))
        roots_a.append((p ** i, rng.randrange(p ** i)))
    coeff_b, roots_b = [], []
    for c, (q, k), i in zip(coeff_a, roots_a, levels):
        lift = p ** rng.randint(0, n - i)
        coeff_b.append(c)
        roots_b.append((q * lift, k * lift))
    for _ in range(rng.randint(0, 3)):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        j = rng.randrange(m)
        for t in range(p):
            coeff_b.append(c)
            roots_b.append((m, (j + t * (m // p)) % m))
    order = list(range(len(coeff_b)))
    rng.shuffle(order)
    return coeff_a, roots_a, [coeff_b[i] for i in order], [roots_b[i] for i in order]
