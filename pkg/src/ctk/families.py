"""Closed forms and case counts for Suz(q), L2(q) and small alternating groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .analysis import Verdict, classify_value, theta, theta_prime
from .cyclotomic import Cyclotomic, ValueClass, complex_conjugate, galois_mean, root_of_unity


# --- Suzuki groups ------------------------------------------------------------------

def _suz_exponent(q: int) -> int:
    e = q.bit_length() - 1
    if q < 8 or q != 1 << e or e % 2 == 0:
        raise ValueError(f"Suzuki parameter must be 2^e with e odd and e >= 3, got {q}")
    return e


@dataclass(frozen=True)
class SuzData:
    q: int
    r: int
    group_order: int
    a_orders: tuple[int, int, int]
    fused_sizes: tuple[int, int, int]
    class_count: int

    @classmethod
    def from_q(cls, q: int) -> SuzData:
        e = _suz_exponent(q)
        r = 2 ** ((e + 1) // 2)
        order = q * q * (q - 1) * (q * q + 1)
        a = (q - 1, q + r + 1, q - r + 1)
        ls = (2, 4, 4)
        fused = tuple(Fraction(ai - 1, li) * Fraction(order, ai) for ai, li in zip(a, ls))
        if any(f.denominator != 1 for f in fused):
            raise ArithmeticError("fused class sizes are not integral")
        return cls(q, r, order, a, tuple(int(f) for f in fused), q + 3)


def suz_theta(q: int) -> Fraction:
    _suz_exponent(q)
    return Fraction(1, 2) + Fraction((q + 1) * (q * q + 2), 2 * q * q * (q * q + 1))


def suz_theta_prime(q: int) -> Fraction:
    _suz_exponent(q)
    return Fraction(1, 2) + Fraction(5, 2 * (q + 3))


def suz_consistency(q: int) -> list[Verdict]:
    s = SuzData.from_q(q)
    n = s.group_order
    g0 = s.fused_sizes[0]
    rows = 1 + 1 + (q // 2 - 1) + (q + s.r) // 4 + (q - s.r) // 4 + 2
    return [
        Verdict("suz_order_factorization",
                n == q * q * (q - 1) * (q - s.r + 1) * (q + s.r + 1), f"|G| = {n}"),
        Verdict("suz_fused_sizes", 1 + sum(s.fused_sizes) < n,
                f"1 + {' + '.join(map(str, s.fused_sizes))} < {n}"),
        Verdict("suz_row_minimizer", Fraction(n - g0 - 1, n) == suz_theta(q),
                f"(|G| - |G0| - 1)/|G| = {Fraction(n - g0 - 1, n)}"),
        Verdict("suz_column_minimizer", Fraction(q // 2 + 4, q + 3) == suz_theta_prime(q),
                f"(q/2 + 4)/(q + 3) = {Fraction(q // 2 + 4, q + 3)}"),
        Verdict("suz_small_centralizer", q - 1 < s.class_count, f"{q - 1} < {s.class_count}"),
        Verdict("suz_character_count", rows == s.class_count, f"{rows} characters"),
    ]


def gamma(q: int, s: int) -> Cyclotomic:
    """zeta^s + zeta^-s with zeta of order q - 1."""
    return root_of_unity(q - 1, s) + root_of_unity(q - 1, -s)


def suz_gamma_classification(q: int, exact_limit: int = 32) -> list[Verdict]:
    _suz_exponent(q)
    m = q - 1
    out = [
        Verdict("suz_gamma_congruences", m % 3 == 1 and m % 2 == 1,
                f"q - 1 = {m} is {m % 3} mod 3 and {m % 2} mod 2"),
    ]
    if q <= 2 ** 11:
        # no s solves 6s +- m = 0 (mod 3m) or 4s +- m = 0 (mod 2m)
        sols = [s for s in range(3 * m) for sign in (1, -1)
                if (6 * s + sign * m) % (3 * m) == 0 or (4 * s + sign * m) % (2 * m) == 0]
        out.append(Verdict("suz_gamma_congruence_search", not sols, f"solutions {sols[:4]}"))
    if q <= exact_limit:
        kinds = [classify_value(gamma(q, s)) for s in range(1, m)]
        bad = [s for s, v in enumerate(kinds, 1) if v.kind != ValueClass.OTHER]
        low = [s for s, v in enumerate(kinds, 1) if v.mean < Fraction(3, 2)]
        out.append(Verdict("suz_gamma_other", not bad, f"{len(kinds)} values, exceptions {bad}"))
        out.append(Verdict("suz_gamma_mean", not low,
                           f"means {sorted({str(v.mean) for v in kinds})}"))
    return out


# --- L2(q) --------------------------------------------------------------------------

def prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n = 0
    while q % p == 0:
        q //= p
        n += 1
    return (p, n) if q == 1 else None


@dataclass(frozen=True)
class L2Bounds:
    q: int
    lb_theta: Fraction
    lb_theta_prime: Fraction
    census: dict

    def __iter__(self):
        return iter((self.lb_theta, self.lb_theta_prime, self.census))


def l2_bounds(q: int) -> L2Bounds:
    """Certified lower bounds for theta and theta' of L2(q) from the vanishing patterns."""
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"L2 parameter must be a prime power, got {q}")
    if q == 3:
        return _l2_three()
    if q < 4:
        raise ValueError(f"L2 parameter must be at least 3, got {q}")
    p, _ = pp
    if p != 2:
        n = q * (q * q - 1) // 2
        k = (q + 5) // 2
        g0 = q * (q + 1) * (q - 3) // 4
        g1 = q * (q - 1) ** 2 // 4
        ab = (q * q - 1) // 2  # |a^G| = |b^G| = |G|/q
        lb_theta = Fraction(min(g0 + g1, 2 * ab + g0), n)
        cands = [Fraction(k - (q - 3) // 4, k), Fraction(k - (q - 1) // 4, k)]
        if ab * k >= n:
            cands.append(Fraction((q + 1) // 2, k))
        census = {"order": n, "classes": k, "G0": g0, "G1": g1, "a_class": ab, "b_class": ab}
    else:
        n = q * (q * q - 1)
        k = q + 1
        g0 = q * (q + 1) * (q - 2) // 2
        g1 = q * q * (q - 1) // 2
        a = q * q - 1
        lb_theta = Fraction(min(n - 1, g0 + a, g1 + a), n)
        cands = [Fraction(q // 2 + 2, k), Fraction(q // 2 + 1, k)]
        if a * k >= n:
            cands.append(Fraction(1))
        census = {"order": n, "classes": k, "G0": g0, "G1": g1, "a_class": a,
                  "degrees": {"1": 1, str(q): 1, str(q - 1): q // 2, str(q + 1): q // 2 - 1}}
    if 1 + g0 + g1 + (2 * census["a_class"] if p != 2 else census["a_class"]) != n:
        raise ArithmeticError(f"L2({q}) census does not partition the group")
    return L2Bounds(q, lb_theta, min(cands), census)


def _l2_three() -> L2Bounds:
    from .catalog import group_generators
    from .dixon import character_table
    from .permgroup import enumerate_group

    d, gens = group_generators("A4")
    t = character_table(enumerate_group(gens, d), "A4")
    return L2Bounds(3, theta(t), theta_prime(t),
                    {"order": 12, "classes": t.num_classes, "isomorphic_to": "A4"})


# --- alternating groups ---------------------------------------------------------------

def distinct_odd_partitions(n: int) -> list[tuple[int, ...]]:
    odds = list(range(n if n % 2 else n - 1, 0, -2))
    out = []
    for r in range(1, len(odds) + 1):
        for combo in combinations(odds, r):
            if sum(combo) == n:
                out.append(combo)
    return out


def alt_verify(n: int, table=None) -> list[Verdict]:
    if not 5 <= n <= 9:
        raise ValueError(f"alt_verify supports 5 <= n <= 9, got {n}")
    if table is None:
        from .catalog import group_generators
        from .dixon import character_table
        from .permgroup import enumerate_group

        d, gens = group_generators(f"A{n}")
        table = character_table(enumerate_group(gens, d), f"A{n}")
    allowed = {1 + math.prod(part) for part in distinct_odd_partitions(n)}
    bad = []
    irrational = 0
    for i, row in enumerate(table.values):
        for c, x in enumerate(row):
            if x.is_integer():
                continue
            irrational += 1
            # for real entries |x|^2 is irrational; the law holds for the mean over conjugates
            four_mean = 4 * galois_mean(x)
            norm = x * complex_conjugate(x)
            if four_mean.denominator != 1 or int(four_mean) not in allowed:
                bad.append((i + 1, c, str(x)))
            elif x != complex_conjugate(x) and norm != Cyclotomic(four_mean / 4):
                bad.append((i + 1, c, str(x)))
    th, thp = theta(table), theta_prime(table)
    bound = Fraction(3, 4) if n >= 9 else Fraction(1, 2)
    return [
        Verdict("alt_theta", th > bound, f"theta(A{n}) = {th} vs {bound}"),
        Verdict("alt_theta_prime", thp > bound, f"theta'(A{n}) = {thp} vs {bound}"),
        Verdict("alt_irrational_law", not bad,
                f"{irrational} irrational entries, allowed 4*mean in {sorted(allowed)}, bad {bad[:3]}"),
    ]
