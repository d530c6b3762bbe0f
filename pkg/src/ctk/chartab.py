"""Character table model, validation, direct products and the ``.ctab`` format.

File layout (UTF-8, whitespace separated, ``#`` starts a comment)::

    CHARTABLE v1
    name: Q8
    order: 8
    classes: 5
    classsizes: 1 1 2 2 2
    elementorders: 1 2 4 4 4
    powermap 0: 0 0 0 0 0
    powermap 1: 0 1 2 3 4
    ...
    X1: 1 1 1 1 1
    ...

Power maps list 0-based class indices and are given for every s below the
exponent.  Values use the cyclotomic literal grammar of :mod:`ctk.cyclotomic`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import (
    CycParseError,
    Cyclotomic,
    galois_conjugate,
    hermitian_dot,
    parse_cyc,
    render_cyc,
)


class TableParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class TableValidationError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("invalid character table:\n  " + "\n  ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class CharacterTable:
    name: str
    group_order: int
    class_sizes: tuple[int, ...]
    element_orders: tuple[int, ...]
    power_maps: dict[int, tuple[int, ...]] = field(compare=False)
    values: tuple[tuple[Cyclotomic, ...], ...]

    @property
    def num_classes(self) -> int:
        return len(self.class_sizes)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[0].to_fraction()) for row in self.values)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @property
    def centralizer_orders(self) -> tuple[int, ...]:
        return tuple(self.group_order // s for s in self.class_sizes)

    def inverse_classes(self) -> tuple[int, ...]:
        return self.power_maps[(self.exponent - 1) % self.exponent]

    def canonical(self) -> CharacterTable:
        """Same table with rows in canonical order."""
        return CharacterTable(self.name, self.group_order, self.class_sizes,
                              self.element_orders, self.power_maps,
                              sort_rows(self.values))

    def renamed(self, name: str) -> CharacterTable:
        return CharacterTable(name, self.group_order, self.class_sizes,
                              self.element_orders, self.power_maps, self.values)


def row_key(row: Sequence[Cyclotomic]):
    return (row[0].to_fraction(), tuple(render_cyc(v) for v in row))


def sort_rows(rows) -> tuple[tuple[Cyclotomic, ...], ...]:
    return tuple(sorted((tuple(r) for r in rows), key=row_key))


# --- validation -------------------------------------------------------------

def _inner(t: CharacterTable, a: Sequence[Cyclotomic], b: Sequence[Cyclotomic]) -> Cyclotomic:
    return hermitian_dot(a, b, t.class_sizes)


def first_orthogonality_defects(t: CharacterTable) -> list[str]:
    out = []
    rows = t.values
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            got = _inner(t, rows[i], rows[j])
            want = t.group_order if i == j else 0
            if got != want:
                out.append(f"first orthogonality: <X{i + 1}, X{j + 1}> = {got}, expected {want}")
    return out


def second_orthogonality_defects(t: CharacterTable) -> list[str]:
    out = []
    k = t.num_classes
    cols = [[row[c] for row in t.values] for c in range(k)]
    for a in range(k):
        for b in range(a, k):
            got = hermitian_dot(cols[a], cols[b])
            want = t.group_order // t.class_sizes[a] if a == b else 0
            if got != want:
                out.append(f"second orthogonality: classes {a}, {b} give {got}, expected {want}")
    return out


def validate(t: CharacterTable) -> list[str]:
    """List every violated table invariant; empty when the table is consistent."""
    v: list[str] = []
    k = len(t.class_sizes)
    if len(t.element_orders) != k:
        v.append(f"shape: {len(t.element_orders)} element orders for {k} classes")
    if len(t.values) != k:
        v.append(f"shape: {len(t.values)} rows for {k} classes")
    for i, row in enumerate(t.values):
        if len(row) != k:
            v.append(f"shape: row X{i + 1} has {len(row)} entries, expected {k}")
    if v:
        return v
    if sum(t.class_sizes) != t.group_order:
        v.append(f"class sizes: sum {sum(t.class_sizes)} != order {t.group_order}")
    if k and t.class_sizes[0] != 1:
        v.append(f"class sizes: identity class has size {t.class_sizes[0]}")
    if k and t.element_orders[0] != 1:
        v.append("element orders: column 0 is not the identity class")
    for c, s in enumerate(t.class_sizes):
        if s <= 0 or t.group_order % s:
            v.append(f"class sizes: size {s} of class {c} does not divide {t.group_order}")
    degrees_ok = True
    for i, row in enumerate(t.values):
        d = row[0]
        if not d.is_integer() or d.to_fraction() <= 0:
            v.append(f"degrees: X{i + 1}(1) = {d} is not a positive integer")
            degrees_ok = False
    if degrees_ok:
        total = sum(d * d for d in t.degrees)
        if total != t.group_order:
            v.append(f"degrees: sum of squares {total} != order {t.group_order}")
    for i, row in enumerate(t.values):
        for c, x in enumerate(row):
            m = t.element_orders[c]
            if m % x.order:
                v.append(f"field: X{i + 1} at class {c} has conductor {x.order}, "
                         f"not dividing element order {m}")
    if 1 in t.power_maps and tuple(t.power_maps[1]) != tuple(range(k)):
        v.append("power maps: power map 1 is not the identity")
    for s, pm in t.power_maps.items():
        if len(pm) != k or any(not 0 <= x < k for x in pm):
            v.append(f"power maps: power map {s} is malformed")
        elif pm[0] != 0:
            v.append(f"power maps: power map {s} moves the identity class")
    v.extend(first_orthogonality_defects(t))
    v.extend(second_orthogonality_defects(t))
    return v


def power_map_galois_defects(t: CharacterTable) -> list[str]:
    """Check chi(g^s) == sigma_s(chi(g)) for s coprime to the order of g."""
    out = []
    for s, pm in sorted(t.power_maps.items()):
        for c, m in enumerate(t.element_orders):
            if math.gcd(s, m) != 1:
                continue
            for i, row in enumerate(t.values):
                x = row[c]
                if row[pm[c]] != galois_conjugate(x, s % x.order if x.order > 1 else 1):
                    out.append(f"power map {s}: X{i + 1} at class {c}")
    return out


# --- direct products ----------------------------------------------------------

def direct_product(a: CharacterTable, b: CharacterTable, name: str | None = None) -> CharacterTable:
    """Kronecker product of two character tables; classes are pairs in a-major order."""
    ka, kb = a.num_classes, b.num_classes
    sizes = tuple(sa * sb for sa in a.class_sizes for sb in b.class_sizes)
    orders = tuple(math.lcm(oa, ob) for oa in a.element_orders for ob in b.element_orders)
    ea, eb = a.exponent, b.exponent
    e = math.lcm(ea, eb)
    pmaps = {}
    for s in range(e):
        pa, pb = a.power_maps[s % ea], b.power_maps[s % eb]
        pmaps[s] = tuple(pa[i] * kb + pb[j] for i in range(ka) for j in range(kb))
    rows = [tuple(x * y for x in ra for y in rb) for ra in a.values for rb in b.values]
    return CharacterTable(name or f"{a.name}x{b.name}", a.group_order * b.group_order,
                          sizes, orders, pmaps, sort_rows(rows))


def equivalent(a: CharacterTable, b: CharacterTable) -> bool:
    """True when the tables agree up to a permutation of classes and of rows."""
    if (a.group_order != b.group_order or a.num_classes != b.num_classes
            or sorted(a.class_sizes) != sorted(b.class_sizes)):
        return False
    k = a.num_classes

    def sig(t, c):
        col = sorted(render_cyc(row[c]) for row in t.values)
        return (t.class_sizes[c], t.element_orders[c], tuple(col))

    sa = [sig(a, c) for c in range(k)]
    sb = [sig(b, c) for c in range(k)]
    if sorted(sa) != sorted(sb):
        return False
    rows_a = [tuple(r) for r in a.values]
    rows_b = [tuple(r) for r in b.values]

    def prefix_counts(rows, cols):
        counts: dict[tuple, int] = {}
        for r in rows:
            key = tuple(r[c] for c in cols)
            counts[key] = counts.get(key, 0) + 1
        return counts

    assignment: list[int] = []
    used = [False] * k

    def extend(c: int) -> bool:
        if c == k:
            return True
        for cand in range(k):
            if used[cand] or sb[cand] != sa[c]:
                continue
            assignment.append(cand)
            used[cand] = True
            if prefix_counts(rows_a, list(range(c + 1))) == prefix_counts(rows_b, assignment):
                if extend(c + 1):
                    return True
            assignment.pop()
            used[cand] = False
        return False

    return extend(0)


# --- file format ----------------------------------------------------------------

def render_table(t: CharacterTable) -> str:
    lines = [
        "CHARTABLE v1",
        f"name: {t.name}",
        f"order: {t.group_order}",
        f"classes: {t.num_classes}",
        "classsizes: " + " ".join(map(str, t.class_sizes)),
        "elementorders: " + " ".join(map(str, t.element_orders)),
    ]
    for s in sorted(t.power_maps):
        lines.append(f"powermap {s}: " + " ".join(map(str, t.power_maps[s])))
    for i, row in enumerate(t.values, 1):
        lines.append(f"X{i}: " + " ".join(render_cyc(x) for x in row))
    return "\n".join(lines) + "\n"


def _ints(tokens: list[tuple[str, int]], lineno: int) -> list[int]:
    out = []
    for tok, col in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise TableParseError(f"expected integer, got {tok!r}", lineno, col) from None
    return out


def _tokens(text: str, offset: int) -> list[tuple[str, int]]:
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], offset + i + 1))
        i = j
    return out


def parse_table(text: str, check: bool = True) -> CharacterTable:
    """Parse a ``.ctab`` document.

    Syntax problems raise :class:`TableParseError` with line and column; a
    well-formed table that breaks an invariant raises
    :class:`TableValidationError` when ``check`` is set.
    """
    header: dict[str, tuple[list[tuple[str, int]], int]] = {}
    power_maps: dict[int, list[int]] = {}
    rows: list[tuple[int, list[tuple[str, int]], int]] = []
    name = None
    seen_magic = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if not seen_magic:
            if body.split() != ["CHARTABLE", "v1"]:
                raise TableParseError("expected 'CHARTABLE v1'", lineno)
            seen_magic = True
            continue
        if ":" not in body:
            raise TableParseError("expected '<field>: ...'", lineno)
        key, rest = body.split(":", 1)
        keycol = len(body) - len(body.lstrip()) + 1
        key = key.strip()
        offset = len(key) + 1 + (keycol - 1)
        if key == "name":
            name = rest.strip()
        elif key in ("order", "classes", "classsizes", "elementorders"):
            if key in header:
                raise TableParseError(f"duplicate field {key!r}", lineno, keycol)
            header[key] = (_tokens(rest, offset), lineno)
        elif key.startswith("powermap"):
            parts = key.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise TableParseError("expected 'powermap <s>:'", lineno, keycol)
            s = int(parts[1])
            if s in power_maps:
                raise TableParseError(f"duplicate power map {s}", lineno, keycol)
            power_maps[s] = _ints(_tokens(rest, offset), lineno)
        elif key.startswith("X") and key[1:].isdigit():
            rows.append((int(key[1:]), _tokens(rest, offset), lineno))
        else:
            raise TableParseError(f"unknown field {key!r}", lineno, keycol)
    if not seen_magic:
        raise TableParseError("empty document", 1)
    for req in ("order", "classes", "classsizes", "elementorders"):
        if req not in header:
            raise TableParseError(f"missing field {req!r}", len(text.splitlines()) or 1)

    def single(key):
        toks, ln = header[key]
        vals = _ints(toks, ln)
        if len(vals) != 1:
            raise TableParseError(f"{key} takes one integer", ln)
        return vals[0]

    order = single("order")
    k = single("classes")
    sizes = _ints(*header["classsizes"])
    orders = _ints(*header["elementorders"])
    for key, vals in (("classsizes", sizes), ("elementorders", orders)):
        if len(vals) != k:
            raise TableParseError(f"{key} has {len(vals)} entries, expected {k}", header[key][1])
    for s, pm in power_maps.items():
        if len(pm) != k:
            raise TableParseError(f"powermap {s} has {len(pm)} entries, expected {k}", 1)
    if len(rows) != k:
        ln = rows[-1][2] if rows else 1
        raise TableParseError(f"value matrix has {len(rows)} rows, expected {k} (not square)", ln)
    values = []
    for idx, (num, toks, ln) in enumerate(rows, 1):
        if num != idx:
            raise TableParseError(f"expected row X{idx}, got X{num}", ln)
        if len(toks) != k:
            raise TableParseError(f"row X{num} has {len(toks)} entries, expected {k} (not square)",
                                  ln)
        row = []
        for tok, col in toks:
            try:
                row.append(parse_cyc(tok))
            except CycParseError as exc:
                raise TableParseError(str(exc), ln, col + exc.pos) from None
        values.append(tuple(row))
    t = CharacterTable(name or "", order, tuple(sizes), tuple(orders),
                       {s: tuple(pm) for s, pm in sorted(power_maps.items())}, tuple(values))
    if check:
        bad = validate(t)
        if bad:
            raise TableValidationError(bad)
    return t


def table_from_rationals(name: str, order: int, sizes, orders, power_maps, rows) -> CharacterTable:
    """Convenience constructor for hand-written tables with rational or Cyclotomic entries."""
    vals = tuple(tuple(x if isinstance(x, Cyclotomic) else Cyclotomic(Fraction(x)) for x in r)
                 for r in rows)
    return CharacterTable(name, order, tuple(sizes), tuple(orders),
                          {s: tuple(p) for s, p in power_maps.items()}, vals)
