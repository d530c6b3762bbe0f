"""``ctk`` command line: compute tables, analyze them, run verification suites.

Exit codes: 0 success, 1 usage or I/O error, 2 parse error, 3 resource limit,
4 a verification verdict failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import analysis, families
from .catalog import corpus, corpus_table, group_generators
from .chartab import (
    CharacterTable,
    TableParseError,
    TableValidationError,
    direct_product,
    parse_table,
    render_table,
)
from .cyclotomic import CycParseError
from .dixon import DixonError, character_table
from .permgroup import (
    GensParseError,
    ResourceError,
    enum_cap,
    enumerate_group,
    is_nilpotent,
    parse_gens,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3, 4

SUITES = ("classical", "nilpotent", "primepower", "congruence", "all")

log = logging.getLogger("ctk")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    cap: int
    output: str = "text"
    verbosity: int = 0
    inputs: tuple[str, ...] = ()
    q: int | None = None
    n: int | None = None


# --- helpers ----------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from None


def _group_from_args(a, cap: int):
    if getattr(a, "gens", None):
        d, gens = parse_gens(_read(a.gens))
        name = a.name or Path(a.gens).stem
    else:
        try:
            d, gens = group_generators(a.group)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        name = a.name or a.group
    return name, enumerate_group(gens, d, cap=cap)


def _table_inputs(cfg: RunConfig) -> list[tuple[CharacterTable, bool | None]]:
    a = cfg.args
    out: list[tuple[CharacterTable, bool | None]] = []
    flag = True if getattr(a, "nilpotent", False) else None
    for path in getattr(a, "table", None) or []:
        t = parse_table(_read(path))
        if not t.name:
            t = t.renamed(Path(path).stem)
        out.append((t, flag))
    for path in getattr(a, "gens", None) or []:
        d, gens = parse_gens(_read(path))
        g = enumerate_group(gens, d, cap=cfg.cap)
        out.append((character_table(g, Path(path).stem), is_nilpotent(g)))
    for name in getattr(a, "group", None) or []:
        try:
            d, gens = group_generators(name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        g = enumerate_group(gens, d, cap=cfg.cap)
        out.append((character_table(g, name), is_nilpotent(g)))
    if getattr(a, "fixtures", False):
        for entry in corpus():
            out.append((corpus_table(entry), entry.nilpotent))
    return out


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.output == "json":
        _write(json.dumps(payload, indent=2) + "\n", None)
    else:
        _write(text, None)


def _verdict_lines(label: str, verdicts) -> list[str]:
    return [f"[{'PASS' if v.passed else 'FAIL'}] {label}: {v.name}"
            + ("" if v.passed else f" ({v.detail})") for v in verdicts]


def _frac(x: Fraction) -> dict:
    return analysis.format_rational(x)


# --- commands ----------------------------------------------------------------------

def cmd_table(cfg: RunConfig) -> int:
    name, g = _group_from_args(cfg.args, cfg.cap)
    t = character_table(g, name)
    _write(render_table(t), cfg.args.out)
    log.info("%s: order %d, %d classes", name, g.order, g.num_classes)
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    a = cfg.args
    if a.table:
        t = parse_table(_read(a.table))
        if not t.name:
            t = t.renamed(Path(a.table).stem)
        nil = True if a.nilpotent else None
    else:
        name, g = _group_from_args(a, cfg.cap)
        t = character_table(g, name)
        nil = is_nilpotent(g)
    report = analysis.analyze(t, nil)
    _emit(cfg, report.to_dict(), report.to_text())
    return EXIT_OK if report.passed else EXIT_VERIFY


def _suite_verdicts(suite: str, t: CharacterTable, nil: bool | None):
    out = []
    if suite in ("classical", "all"):
        out += analysis.verify_galois_mean_identities(t)
        out += analysis.verify_classical_bounds(t)
    if suite in ("primepower", "all"):
        out += analysis.verify_prime_power_lemmas(t)
    if suite == "nilpotent" or (suite == "all" and nil):
        if not nil:
            raise UsageError(f"{t.name}: nilpotent suite needs a nilpotent group "
                             "(pass --nilpotent for table files)")
        out += analysis.verify_nilpotent_theorems(t, True)
    return out


def _congruence_verdict(count: int, seed: int):
    rng = random.Random(seed)
    fails = []
    for p in (2, 3, 5):
        for _ in range(count):
            args = analysis.random_equal_root_sums(rng, p)
            if analysis.root_sum_congruence(*args, p) is not True:
                fails.append((p, args))
    return analysis.Verdict("root_sum_congruence", not fails,
                            f"{3 * count} instances, {len(fails)} failures")


def cmd_verify(cfg: RunConfig) -> int:
    a = cfg.args
    results = []
    lines = []
    ok = True
    tables = _table_inputs(cfg) if a.suite != "congruence" else []
    if a.suite != "congruence" and not tables:
        raise UsageError("verify needs --table, --gens, --group or --fixtures")
    for t, nil in tables:
        if a.suite == "nilpotent" and a.fixtures and not nil:
            continue
        verdicts = _suite_verdicts(a.suite, t, nil)
        ok &= all(v.passed for v in verdicts)
        results.append({"table": t.name, "nilpotent": nil,
                        "verdicts": {v.name: v.passed for v in verdicts}})
        lines += _verdict_lines(t.name, verdicts)
    if a.suite in ("congruence", "all"):
        v = _congruence_verdict(a.count, a.seed)
        ok &= v.passed
        results.append({"table": None, "verdicts": {v.name: v.passed}})
        lines += _verdict_lines("random", [v])
    lines.append(f"{'all checks passed' if ok else 'FAILURES'}: {len(lines)} verdicts")
    _emit(cfg, {"schema": analysis.SCHEMA_VERSION, "suite": a.suite, "passed": ok,
                "results": results}, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_family(cfg: RunConfig) -> int:
    a = cfg.args
    if a.family == "suz":
        if a.q is None:
            raise UsageError("family suz needs --q")
        th, thp = families.suz_theta(a.q), families.suz_theta_prime(a.q)
        verdicts = families.suz_consistency(a.q) + families.suz_gamma_classification(a.q)
        payload = {"family": "suz", "q": a.q, "theta": _frac(th), "theta_prime": _frac(thp)}
    elif a.family == "l2":
        qs = [a.q] if a.q is not None else []
        if a.sweep:
            qs = [q for q in range(4, a.sweep + 1) if families.prime_power(q)]
        if not qs:
            raise UsageError("family l2 needs --q or --sweep")
        verdicts = []
        rows = []
        for q in qs:
            b = families.l2_bounds(q)
            rows.append({"q": q, "lb_theta": _frac(b.lb_theta),
                         "lb_theta_prime": _frac(b.lb_theta_prime), "census": b.census})
            verdicts.append(analysis.Verdict(
                f"l2_bounds_q{q}", b.lb_theta > Fraction(1, 2) and b.lb_theta_prime > Fraction(1, 2),
                f"{b.lb_theta}, {b.lb_theta_prime}"))
        payload = {"family": "l2", "results": rows}
    else:
        if a.n is None:
            raise UsageError("family alt needs --n")
        if not 5 <= a.n <= 9:
            raise UsageError("family alt supports 5 <= n <= 9")
        d, gens = group_generators(f"A{a.n}")
        t = character_table(enumerate_group(gens, d, cap=cfg.cap), f"A{a.n}")
        verdicts = families.alt_verify(a.n, t)
        payload = {"family": "alt", "n": a.n, "theta": _frac(analysis.theta(t)),
                   "theta_prime": _frac(analysis.theta_prime(t))}
    payload["verdicts"] = {v.name: v.passed for v in verdicts}
    ok = all(v.passed for v in verdicts)
    payload["passed"] = ok
    text = []
    for key in ("theta", "theta_prime"):
        if key in payload:
            text.append(f"{key} = {payload[key]['exact']} ({payload[key]['decimal']})")
    for row in payload.get("results", []):
        text.append(f"q={row['q']}: lb_theta = {row['lb_theta']['exact']} "
                    f"({row['lb_theta']['decimal']}), lb_theta_prime = "
                    f"{row['lb_theta_prime']['exact']} ({row['lb_theta_prime']['decimal']})")
    text += _verdict_lines(a.family, verdicts)
    _emit(cfg, payload, "\n".join(text) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_product(cfg: RunConfig) -> int:
    a = cfg.args
    tables = [parse_table(_read(p)) for p in a.tables]
    out = tables[0]
    for t in tables[1:]:
        out = direct_product(out, t)
    if a.name:
        out = out.renamed(a.name)
    _write(render_table(out), a.out)
    return EXIT_OK


COMMANDS = {"table": cmd_table, "analyze": cmd_analyze, "verify": cmd_verify,
            "family": cmd_family, "product": cmd_product}


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"ctk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TableParseError, GensParseError, CycParseError) as exc:
        print(f"ctk: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TableValidationError as exc:
        print(f"ctk: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ResourceError, DixonError) as exc:
        print(f"ctk: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"ctk: {exc}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ctk", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("--cap", type=int, default=None,
                   help="enumeration cap (default: $CTK_ENUM_CAP or 200000)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--json", action="store_const", const="json", dest="format")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_const", const="json", dest="format",
                        default=argparse.SUPPRESS)
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    t = sub.add_parser("table", help="compute a character table from generators")
    src = t.add_mutually_exclusive_group(required=True)
    src.add_argument("--gens", help="generator file")
    src.add_argument("--group", help="catalog group name, e.g. Q8 or M11")
    t.add_argument("--name")
    t.add_argument("--out", help="output .ctab path (default stdout)")

    an = sub.add_parser("analyze", help="theta, theta' and all verdicts for one group")
    src = an.add_mutually_exclusive_group(required=True)
    src.add_argument("--table")
    src.add_argument("--gens")
    src.add_argument("--group")
    an.add_argument("--name")
    an.add_argument("--nilpotent", action="store_true",
                    help="declare a table file nilpotent (enables the nilpotent checks)")
    common(an)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--table", action="append")
    v.add_argument("--gens", action="append")
    v.add_argument("--group", action="append")
    v.add_argument("--fixtures", action="store_true", help="run on the bundled corpus")
    v.add_argument("--nilpotent", action="store_true")
    v.add_argument("--count", type=int, default=1000, help="random instances per prime")
    v.add_argument("--seed", type=int, default=0)
    common(v)

    f = sub.add_parser("family", help="closed forms for Suz(q), L2(q), A_n")
    f.add_argument("family", choices=("suz", "l2", "alt"))
    f.add_argument("--q", type=int)
    f.add_argument("--n", type=int)
    f.add_argument("--sweep", type=int, help="l2: every prime power 4 <= q <= SWEEP")
    common(f)

    pr = sub.add_parser("product", help="Kronecker product of table files")
    pr.add_argument("tables", nargs="+")
    pr.add_argument("--name")
    pr.add_argument("--out")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cap = args.cap if args.cap is not None else enum_cap()
    except ValueError as exc:
        print(f"ctk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cap <= 0:
        print("ctk: --cap must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "product" and len(args.tables) < 2:
        parser.error("product needs at least two tables")
    inputs = []
    for key in ("gens", "table", "tables"):
        val = getattr(args, key, None)
        if val:
            inputs += val if isinstance(val, list) else [val]
    cfg = RunConfig(args.command, args, cap, args.format, args.verbose, tuple(inputs),
                    getattr(args, "q", None), getattr(args, "n", None))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
