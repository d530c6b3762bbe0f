"""Named permutation groups and the bundled table corpus.

Run ``python -m ctk.catalog`` to regenerate ``data/groups`` and ``data/tables``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .chartab import CharacterTable, direct_product, parse_table, render_table
from .permgroup import Permutation, from_cycles, identity, parse_gens, render_gens


def _cyclic(n: int):
    return n, [from_cycles([list(range(n))], n)] if n > 1 else [identity(1)]


def _symmetric(n: int):
    return n, [from_cycles([[0, 1]], n), from_cycles([list(range(n))], n)]


def _alternating(n: int):
    long = list(range(n)) if n % 2 else list(range(1, n))
    return n, [from_cycles([[0, 1, 2]], n), from_cycles([long], n)]


def _affine_z8(unit: int):
    # x -> x + 1 and x -> unit * x on Z/8
    return 8, [tuple((x + 1) % 8 for x in range(8)), tuple((unit * x) % 8 for x in range(8))]


def _dihedral(m: int):
    return m, [from_cycles([list(range(m))], m), tuple((-x) % m for x in range(m))]


def _right_regular(elements, mul, gens):
    idx = {e: i for i, e in enumerate(elements)}
    return len(elements), [tuple(idx[mul(x, g)] for x in elements) for g in gens]


def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


def _quaternion8():
    units = []
    for pos in range(4):
        for sign in (1, -1):
            v = [0, 0, 0, 0]
            v[pos] = sign
            units.append(tuple(v))
    return _right_regular(units, _qmul, [(0, 1, 0, 0), (0, 0, 1, 0)])


def _quaternion16():
    # <a, b | a^8 = 1, b^2 = a^4, b a b^-1 = a^-1>, elements a^i b^j
    def mul(x, y):
        i, j = x
        k, m = y
        if j == 0:
            return ((i + k) % 8, m)
        # b a^k = a^-k b
        i2 = (i - k) % 8
        if m == 0:
            return (i2, 1)
        return ((i2 + 4) % 8, 0)
    elems = [(i, j) for j in range(2) for i in range(8)]
    return _right_regular(elems, mul, [(1, 0), (0, 1)])


def _heisenberg3():
    def pt(x, y):
        return 3 * (x % 3) + (y % 3)
    pts = [(x, y) for x in range(3) for y in range(3)]
    t1 = tuple(pt(x + 1, y) for x, y in pts)
    t2 = tuple(pt(x, y + 1) for x, y in pts)
    shear = tuple(pt(x + y, y) for x, y in pts)
    return 9, [t1, t2, shear]


def _mathieu11():
    return 11, [from_cycles([list(range(11))], 11), from_cycles([[2, 6, 10, 7], [3, 9, 4, 5]], 11)]


def _mathieu12():
    return 12, [from_cycles([list(range(11))], 12),
                from_cycles([[2, 6, 10, 7], [3, 9, 4, 5]], 12),
                from_cycles([[0, 11], [1, 10], [2, 5], [3, 7], [4, 8], [6, 9]], 12)]


_BUILDERS = {
    **{f"C{n}": (lambda n=n: _cyclic(n)) for n in range(2, 13)},
    **{f"S{n}": (lambda n=n: _symmetric(n)) for n in range(3, 7)},
    **{f"A{n}": (lambda n=n: _alternating(n)) for n in range(4, 10)},
    "D4": lambda: _dihedral(4),
    "D8": lambda: _dihedral(8),
    "SD16": lambda: _affine_z8(3),
    "M16": lambda: _affine_z8(5),
    "Q8": _quaternion8,
    "Q16": _quaternion16,
    "He3": _heisenberg3,
    "M11": _mathieu11,
    "M12": _mathieu12,
}

DESCRIPTIONS = {
    "D4": "dihedral group of order 8",
    "D8": "dihedral group of order 16",
    "SD16": "semidihedral group of order 16",
    "M16": "modular group of order 16",
    "Q8": "quaternion group, regular representation",
    "Q16": "generalized quaternion group of order 16, regular representation",
    "He3": "extraspecial group 3^(1+2) of exponent 3",
    "M11": "Mathieu group M11",
    "M12": "Mathieu group M12",
}


def group_names() -> list[str]:
    return list(_BUILDERS)


def group_generators(name: str) -> tuple[int, list[Permutation]]:
    """Degree and generators of a catalog group; bundled .gens files take precedence."""
    path = resources.files("ctk") / "data" / "groups" / f"{name}.gens"
    if path.is_file():
        return parse_gens(path.read_text())
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog group {name!r}")
    return _BUILDERS[name]()


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    nilpotent: bool
    factors: tuple[str, ...] = ()

    @property
    def is_product(self) -> bool:
        return bool(self.factors)


NILPOTENT_GROUPS = [f"C{n}" for n in range(2, 13)] + [
    "D4", "Q8", "D8", "SD16", "M16", "Q16", "He3"]
OTHER_GROUPS = ["S3", "S4", "S5", "S6", "A4", "A5", "A6", "A7", "A8", "A9", "M11", "M12"]
PRODUCTS = [
    ("C2", "C2"), ("Q8", "C3"), ("D4", "He3"), ("C2", "C4", "C9"), ("D4", "C3"),
    ("Q8", "C5"), ("M16", "C3"), ("He3", "C2"), ("D4", "C9"), ("Q8", "He3"),
    ("SD16", "C5"), ("D8", "C7"), ("Q16", "C3"), ("He3", "C4"),
]
# product permutation groups built for Kronecker cross-checks
PERMUTATION_PRODUCTS = [("C2", "S3"), ("Q8", "C3"), ("D4", "C3")]


def corpus() -> list[CorpusEntry]:
    out = [CorpusEntry(n, True) for n in NILPOTENT_GROUPS]
    out += [CorpusEntry(n, False) for n in OTHER_GROUPS]
    out += [CorpusEntry("x".join(f), True, tuple(f)) for f in PRODUCTS]
    return out


@lru_cache(maxsize=None)
def bundled_table(name: str) -> CharacterTable:
    path = resources.files("ctk") / "data" / "tables" / f"{name}.ctab"
    if not path.is_file():
        raise KeyError(f"no bundled table {name!r}")
    return parse_table(path.read_text())


def corpus_table(entry: CorpusEntry) -> CharacterTable:
    if not entry.is_product:
        return bundled_table(entry.name)
    tables = [bundled_table(f) for f in entry.factors]
    out = tables[0]
    for t in tables[1:]:
        out = direct_product(out, t)
    return out.renamed(entry.name)


def write_corpus(root: Path) -> None:
    from .dixon import character_table
    from .permgroup import enumerate_group

    groups = root / "groups"
    tables = root / "tables"
    groups.mkdir(parents=True, exist_ok=True)
    tables.mkdir(parents=True, exist_ok=True)
    for name in NILPOTENT_GROUPS + OTHER_GROUPS:
        d, gens = _BUILDERS[name]()
        (groups / f"{name}.gens").write_text(render_gens(d, gens, DESCRIPTIONS.get(name, name)))
        t = character_table(enumerate_group(gens, d), name)
        (tables / f"{name}.ctab").write_text(render_table(t))
        print(f"wrote {name}: order {t.group_order}, {t.num_classes} classes", file=sys.stderr)


def product_generators(*names: str) -> tuple[int, list[Permutation]]:
    from .permgroup import direct_product_gens

    acc = group_generators(names[0])
    for n in names[1:]:
        acc = direct_product_gens(acc, group_generators(n))
    return acc


if __name__ == "__main__":
    write_corpus(Path(__file__).parent / "data")
