"""Character tables by the Burnside-Dixon-Schneider method.

The class sums of G span a commutative algebra whose structure constants are
the class multiplication coefficients.  Over a prime field F_p with
p = 1 (mod exponent) its common eigenvectors are the central characters
omega_chi reduced mod p.  From those we recover the degrees and the values
chi(g) mod p, then lift each value to Z[zeta_m] by the discrete Fourier
inversion over the powers of g.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .chartab import CharacterTable, sort_rows
from .cyclotomic import Cyclotomic
from .permgroup import GroupData

log = logging.getLogger(__name__)

PRIME_SEARCH_BOUND = 10**8


class DixonError(RuntimeError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def choose_prime(exponent: int, group_order: int, bound: int = PRIME_SEARCH_BOUND) -> int:
    """Least prime p = 1 (mod exponent) with p > 2*sqrt(|G|)."""
    p = exponent + 1
    while p * p <= 4 * group_order:
        p += exponent
    while p < bound:
        if _is_prime(p):
            return p
        p += exponent
    raise DixonError(f"no prime p = 1 mod {exponent} with p > 2*sqrt({group_order}) below {bound}")


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1


@dataclass(frozen=True)
class ClassMatrixContext:
    prime: int
    root: int
    exponent: int
    coefficients: np.ndarray  # a[i, j, k]


def class_mult_coeffs(g: GroupData) -> np.ndarray:
    """a[i, j, k] = #{x in C_i : x^-1 z_k in C_j} for the representative z_k of C_k."""
    r = g.num_classes
    inv = g.inverses()
    ci = g.class_of
    a = np.zeros((r, r, r), dtype=np.int64)
    for k, cls in enumerate(g.classes):
        z = np.asarray(cls.representative, dtype=np.int16)
        y = z[inv]
        cj = g.class_of[g.index.lookup(y)]
        a[:, :, k] = np.bincount(ci * r + cj, minlength=r * r).reshape(r, r)
    return a


def class_matrix_context(g: GroupData, coeffs: np.ndarray | None = None) -> ClassMatrixContext:
    p = choose_prime(g.exponent, g.order)
    z = pow(_primitive_root(p), (p - 1) // g.exponent, p)
    if coeffs is None:
        coeffs = class_mult_coeffs(g)
    return ClassMatrixContext(p, z, g.exponent, coeffs)


# --- linear algebra over F_p ----------------------------------------------------

def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    lead = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(lead, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        inv = pow(m[lead][col], -1, p)
        m[lead] = [(x * inv) % p for x in m[lead]]
        for i in range(len(m)):
            if i != lead and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(m):
            break
    return m[:lead], pivots


def _nullspace(a: list[list[int]], p: int) -> list[list[int]]:
    n = len(a[0])
    red, pivots = _rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def _charpoly(a: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial via reduction to Hessenberg form; coefficients low to high."""
    n = len(a)
    h = [row[:] for row in a]
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if h[i][k] % p), None)
        if piv is None:
            continue
        if piv != k + 1:
            h[k + 1], h[piv] = h[piv], h[k + 1]
            for row in h:
                row[k + 1], row[piv] = row[piv], row[k + 1]
        inv = pow(h[k + 1][k], -1, p)
        for i in range(k + 2, n):
            f = (h[i][k] * inv) % p
            if not f:
                continue
            h[i] = [(x - f * y) % p for x, y in zip(h[i], h[k + 1])]
            for row in h:
                row[k + 1] = (row[k + 1] + f * row[i]) % p
    polys: list[list[int]] = [[1]]
    for k in range(n):
        # (x - h[k][k]) * polys[k]
        prev = polys[k]
        cur = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % p
            cur[i] = (cur[i] - h[k][k] * c) % p
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = (prod * h[i + 1][i]) % p
            if not prod:
                break
            f = (prod * h[i][k]) % p
            for j, c in enumerate(polys[i]):
                cur[j] = (cur[j] - f * c) % p
        polys.append(cur)
    return polys[n]


def _roots(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


# --- eigenspace splitting ---------------------------------------------------------

def _common_eigenvectors(ctx: ClassMatrixContext, sizes: tuple[int, ...]) -> list[list[int]]:
    p = ctx.prime
    a = ctx.coefficients % p
    r = len(sizes)
    spaces: list[list[list[int]]] = [[[int(i == j) for j in range(r)] for i in range(r)]]
    order = sorted(range(1, r), key=lambda i: (sizes[i], i))
    for i in order:
        if all(len(s) == 1 for s in spaces):
            break
        mat = a[i].tolist()  # M_i[j][k] = a[i][j][k]
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            basis, pivots = _rref(basis, p)
            images = [[sum(mat[j][k] * b[k] for k in range(r)) % p for j in range(r)]
                      for b in basis]
            # column t of the restriction holds the coordinates of M_i b_t
            restr = [[images[t][pc] for t in range(len(basis))] for pc in pivots]
            eigen = _roots(_charpoly(restr, p), p)
            if len(eigen) == 1:
                nxt.append(basis)
                continue
            for lam in eigen:
                shifted = [[(x - (lam if u == v else 0)) % p for v, x in enumerate(row)]
                           for u, row in enumerate(restr)]
                vecs = [[sum(c * b[k] for c, b in zip(coeff, basis)) % p for k in range(r)]
                        for coeff in _nullspace(shifted, p)]
                nxt.append(_rref(vecs, p)[0])
        spaces = nxt
    if any(len(s) != 1 for s in spaces):
        raise DixonError("class matrices failed to split the class algebra into lines")
    out = []
    for (v,) in spaces:
        if not v[0]:
            raise DixonError("eigenvector vanishes at the identity class")
        inv = pow(v[0], -1, p)
        out.append([(x * inv) % p for x in v])
    return out


def _degree(omega: list[int], sizes, inverse_cls, order: int, p: int) -> int:
    total = 0
    for i, s in enumerate(sizes):
        total = (total + omega[i] * omega[inverse_cls[i]] * pow(s, -1, p)) % p
    d2 = (order * pow(total, -1, p)) % p
    bound = math.isqrt(order)
    for d in range(1, bound + 1):
        if (d * d - d2) % p == 0:
            return d
    raise DixonError("degree lift failed")


def _lift_values(chi_mod: list[int], d: int, g: GroupData, ctx: ClassMatrixContext) -> list[Cyclotomic]:
    p, z, e = ctx.prime, ctx.root, ctx.exponent
    out = []
    for c, m in enumerate(g.element_orders):
        y = pow(z, e // m, p)
        m_inv = pow(m, -1, p)
        seq = [chi_mod[g.power_maps[s][c]] for s in range(m)]
        mult = {}
        for k in range(m):
            yk = pow(y, (-k) % m, p)
            acc = 0
            w = 1
            for s in range(m):
                acc += seq[s] * w
                w = (w * yk) % p
            mu = (acc * m_inv) % p
            if mu > d:
                raise DixonError(f"multiplicity {mu} exceeds degree {d} at class {c}")
            if mu:
                mult[k] = mu
        out.append(Cyclotomic(order=m, coeffs=mult) if mult else Cyclotomic(0))
    return out


def character_table(g: GroupData, name: str = "G") -> CharacterTable:
    """Exact character table of an enumerated group, rows in canonical order."""
    ctx = class_matrix_context(g)
    log.debug("dixon: |G|=%d, %d classes, p=%d", g.order, g.num_classes, ctx.prime)
    p = ctx.prime
    sizes = g.class_sizes
    inverse_cls = g.power_maps[(g.exponent - 1) % g.exponent]
    rows = []
    for omega in _common_eigenvectors(ctx, sizes):
        d = _degree(omega, sizes, inverse_cls, g.order, p)
        chi_mod = [(omega[i] * d * pow(sizes[i], -1, p)) % p for i in range(len(sizes))]
        rows.append(tuple(_lift_values(chi_mod, d, g, ctx)))
    if len(rows) != g.num_classes:
        raise DixonError(f"found {len(rows)} characters for {g.num_classes} classes")
    return CharacterTable(name, g.order, sizes, g.element_orders, dict(g.power_maps),
                          sort_rows(rows))
