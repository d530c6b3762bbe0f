"""Enumeration of small permutation groups and their class data.

Permutations are tuples of point images on {0..d-1}.  Products compose left
to right: ``(p * q)[i] == q[p[i]]``.  Whole element sets are held as numpy
arrays of shape (|G|, d) so closure, conjugation and class lookups vectorize.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ENUM_CAP = 200_000

Permutation = tuple[int, ...]


class ResourceError(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


class GensParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def enum_cap() -> int:
    env = os.environ.get("CTK_ENUM_CAP")
    if env:
        cap = int(env)
        if cap <= 0:
            raise ValueError("CTK_ENUM_CAP must be positive")
        return cap
    return DEFAULT_ENUM_CAP


# --- permutations -----------------------------------------------------------

def check_perm(p: Sequence[int]) -> Permutation:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p}")
    return p


def identity(d: int) -> Permutation:
    return tuple(range(d))


def mul(p: Permutation, q: Permutation) -> Permutation:
    return tuple(q[i] for i in p)


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def power(p: Permutation, k: int) -> Permutation:
    result = identity(len(p))
    base = p
    if k < 0:
        base, k = inverse(p), -k
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def perm_order(p: Permutation) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        order = math.lcm(order, n)
    return order


def from_cycles(cycles: Iterable[Sequence[int]], d: int) -> Permutation:
    img = list(range(d))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return check_perm(img)


def to_cycles(p: Permutation) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


# --- generator files --------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_gens(text: str) -> tuple[int, list[Permutation]]:
    """Parse a generator file: ``domain: d`` then one cycle-notation line per generator."""
    d = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if d is None:
            m = re.fullmatch(r"domain:\s*(\d+)", line)
            if not m:
                raise GensParseError("expected 'domain: <d>'", lineno)
            d = int(m.group(1))
            if d <= 0:
                raise GensParseError("domain must be positive", lineno, line.index(m.group(1)) + 1)
            continue
        pos = 0
        cycles = []
        stripped = line.replace(" ", "").replace("\t", "")
        if stripped == "()":
            gens.append(identity(d))
            continue
        for m in _CYCLE.finditer(line):
            if line[pos:m.start()].strip():
                raise GensParseError("unexpected text outside cycles", lineno, pos + 1)
            try:
                pts = [int(t) for t in m.group(1).replace(",", " ").split()]
            except ValueError:
                raise GensParseError("cycle entries must be integers", lineno, m.start() + 1) from None
            if any(x < 0 or x >= d for x in pts) or len(set(pts)) != len(pts):
                raise GensParseError(f"bad cycle {m.group(0)} for domain {d}", lineno, m.start() + 1)
            if pts:
                cycles.append(pts)
            pos = m.end()
        if line[pos:].strip() or pos == 0:
            raise GensParseError("malformed cycle notation", lineno, pos + 1)
        gens.append(from_cycles(cycles, d))
    if d is None:
        raise GensParseError("missing 'domain:' line", 1)
    return d, gens


def render_gens(d: int, gens: Sequence[Permutation], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"domain: {d}")
    lines.extend(to_cycles(g) for g in gens)
    return "\n".join(lines) + "\n"


def direct_product_gens(a: tuple[int, Sequence[Permutation]],
                        b: tuple[int, Sequence[Permutation]]) -> tuple[int, list[Permutation]]:
    """Generators of A x B acting on the disjoint union of the two domains."""
    da, ga = a
    db, gb = b
    gens = [tuple(p) + tuple(range(da, da + db)) for p in ga]
    gens += [tuple(range(da)) + tuple(x + da for x in q) for q in gb]
    return da + db, gens


# --- element lookup ---------------------------------------------------------

class _Index:
    """Maps permutation rows to positions in a fixed element array."""

    def __init__(self, elements: np.ndarray):
        self.d = elements.shape[1]
        self.radix = self.d <= 15
        if self.radix:
            self.weights = self.d ** np.arange(self.d, dtype=np.int64)
            keys = self.keys(elements)
            self.order = np.argsort(keys, kind="stable")
            self.sorted_keys = keys[self.order]
        else:
            self.table = {row.tobytes(): i for i, row in enumerate(elements)}

    def keys(self, rows: np.ndarray) -> np.ndarray:
        return rows.astype(np.int64) @ self.weights

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=np.int16)
        if self.radix:
            k = self.keys(rows)
            pos = np.searchsorted(self.sorted_keys, k)
            pos = np.minimum(pos, len(self.sorted_keys) - 1)
            if not np.array_equal(self.sorted_keys[pos], k):
                raise KeyError("permutation not in group")
            return self.order[pos]
        return np.array([self.table[r.tobytes()] for r in rows], dtype=np.int64)


def _closure(d: int, gens: Sequence[Permutation], cap: int) -> np.ndarray:
    ident = np.arange(d, dtype=np.int16)[None, :]
    gen_arr = [np.asarray(g, dtype=np.int16) for g in gens]
    elements = [ident]
    seen: set[bytes] = {ident[0].tobytes()}
    frontier = ident
    total = 1
    while len(frontier):
        fresh = []
        for g in gen_arr:
            cand = g[frontier]
            for row in cand:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
                    total += 1
                    if total > cap:
                        raise ResourceError(
                            f"group order exceeds the enumeration cap of {cap} elements")
        frontier = np.array(fresh, dtype=np.int16).reshape(-1, d)
        if len(frontier):
            elements.append(frontier)
    return np.concatenate(elements)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    members: np.ndarray = field(repr=False)  # indices into GroupData.elements
    size: int



@dataclass(frozen=True)
class GroupData:
    """An enumerated permutation group with its conjugacy-class data."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: np.ndarray = field(repr=False)
    classes: tuple[ConjugacyClass, ...] = field(repr=False)
    class_of: np.ndarray = field(repr=False)
    centralizer_orders: tuple[int, ...]
    element_orders: tuple[int, ...]
    power_maps: dict[int, tuple[int, ...]] = field(repr=False)
    exponent: int
    index: _Index = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def inverses(self) -> np.ndarray:
        return np.argsort(self.elements, axis=1).astype(np.int16)

    def class_index(self, p: Sequence[int]) -> int:
        i = self.index.lookup(np.asarray([p], dtype=np.int16))[0]
        return int(self.class_of[i])

    def power_class(self, cls: int, s: int) -> int:
        return self.power_maps[s % self.exponent][cls]


def enumerate_group(generators: Sequence[Sequence[int]], degree: int | None = None,
                    cap: int | None = None) -> GroupData:
    """Enumerate the group generated by ``generators`` with classes and power maps."""
    gens = tuple(check_perm(g) for g in generators)
    if degree is None:
        if not gens:
            raise ValueError("degree is required when no generators are given")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators act on different domains")
    cap = enum_cap() if cap is None else cap
    elements = _closure(degree, gens, cap)
    index = _Index(elements)
    n = len(elements)
    inv = np.argsort(elements, axis=1).astype(np.int16)

    class_of = np.full(n, -1, dtype=np.int64)
    raw_classes = []
    for start in range(n):
        if class_of[start] >= 0:
            continue
        x = elements[start]
        conj = np.take_along_axis(elements, x[inv].astype(np.int64), axis=1)
        members = np.unique(index.lookup(conj))
        class_of[members] = len(raw_classes)
        rep = tuple(int(v) for v in elements[members[0]])
        raw_classes.append((perm_order(rep), len(members), int(members[0]), members))

    order_idx = sorted(range(len(raw_classes)), key=lambda i: raw_classes[i][:3])
    relabel = np.empty(len(raw_classes), dtype=np.int64)
    relabel[order_idx] = np.arange(len(raw_classes))
    class_of = relabel[class_of]
    classes = []
    orders = []
    for i in order_idx:
        o, size, first, members = raw_classes[i]
        classes.append(ConjugacyClass(tuple(int(v) for v in elements[first]), members, size))
        orders.append(o)
    exponent = math.lcm(*orders)

    power_maps: dict[int, list[int]] = {s: [0] * len(classes) for s in range(exponent)}
    for c, cc in enumerate(classes):
        o = orders[c]
        rep = cc.representative
        cur = identity(degree)
        images = []
        for _ in range(o):
            images.append(np.asarray(cur, dtype=np.int16))
            cur = mul(cur, rep)
        cls_of_pow = class_of[index.lookup(np.array(images))]
        for s in range(exponent):
            power_maps[s][c] = int(cls_of_pow[s % o])

    return GroupData(
        degree=degree,
        generators=gens,
        elements=elements,
        classes=tuple(classes),
        class_of=class_of,
        centralizer_orders=tuple(n // c.size for c in classes),
        element_orders=tuple(orders),
        power_maps={s: tuple(v) for s, v in power_maps.items()},
        exponent=exponent,
        index=index,
    )


def exponent(g: GroupData) -> int:
    return g.exponent


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_nilpotent(g: GroupData) -> bool:
    """True iff every Sylow subgroup is normal, tested by counting p-elements."""
    n = g.order
    for p in _prime_factors(n):
        part = 1
        while n % (part * p) == 0:
            part *= p
        count = 0
        for size, o in zip(g.class_sizes, g.element_orders):
            while o % p == 0:
                o //= p
            if o == 1:
                count += size
        if count != part:
            return False
    return True
