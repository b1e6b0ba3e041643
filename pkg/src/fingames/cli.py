"""Command-line front end.

Exit codes: 0 success, 1 negative verdict, 2 usage error, 3 internal limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import fixtures
from .arena import ADAM, EVE, Arena, format_arena, parse_arena, to_dot
from .conditions import condition_from_name, describe
from .errors import GameError, LimitError
from .oracle import OracleBudget, oracle_min_memory
from .pushdown import (Policy, collapse_bound_upper, format_process, parse_configuration,
                       parse_process, simulate_deterministic, stabilize, unfold)
from .solvers import format_result, minimal_uniform_bound, solve
from .strategy import format_strategy, parse_strategy, reduce_memory, simulate, verify

OK, NEGATIVE, USAGE, LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _player(text: str) -> int:
    if text not in ("E", "A"):
        raise UsageError(f"player must be E or A, got {text!r}")
    return EVE if text == "E" else ADAM


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"expected a range A..B, got {text!r}")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"expected a range A..B, got {text!r}") from None
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return range(a, b + 1)


def _params(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects k=v, got {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise UsageError(f"--param value must be an integer: {item!r}") from None
    return out


def _load_arena(path: str) -> Arena:
    try:
        return parse_arena(_read(path))
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def _vertex(arena: Arena, text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"not a vertex: {text!r}") from None
    if not 0 <= v < len(arena):
        raise UsageError(f"vertex {v} out of range")
    return v


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- subcommands


def cmd_solve(args, out) -> int:
    arena = _load_arena(args.input)
    cond = condition_from_name(args.condition, args.N)
    start = _vertex(arena, args.start)
    res = solve(arena, cond)
    emit = [_player(p) for p in args.emit_strategy or []]
    won = start in res.eve_region
    if args.dot:
        out.write(to_dot(arena, res.eve_region))
    elif args.json:
        strategies = {}
        for p in emit:
            s = res.strategy(p)
            strategies["E" if p == EVE else "A"] = None if s is None else format_strategy(arena, s)
        out.write(_dump({
            "condition": describe(cond),
            "start": start,
            "winner": "E" if won else "A",
            "region_E": sorted(res.eve_region),
            "region_A": sorted(res.adam_region),
            "strategies": strategies,
        }))
    else:
        out.write(format_result(arena, res, emit))
    return OK if won else NEGATIVE


def cmd_verify(args, out) -> int:
    arena = _load_arena(args.input)
    cond = condition_from_name(args.condition, args.N, verify_only=True)
    try:
        strat = parse_strategy(_read(args.strategy), arena)
    except (ValueError, IndexError) as e:
        raise UsageError(f"{args.strategy}: cannot parse strategy ({e})") from None
    starts = [_vertex(arena, v) for v in args.from_.split(",") if v]
    verdict = verify(arena, strat, cond, starts)
    if args.json:
        out.write(_dump({
            "condition": describe(cond),
            "holds": verdict.holds,
            "stem": verdict.stem,
            "cycle": verdict.cycle,
            "witness": None if verdict.witness is None else
            [verdict.witness[0], None if verdict.witness[1] == float("inf") else int(verdict.witness[1])],
        }))
    else:
        out.write(verdict.format() + "\n")
    return OK if verdict.holds else NEGATIVE


def cmd_simulate(args, out) -> int:
    arena = _load_arena(args.input)
    eve = parse_strategy(_read(args.eve), arena)
    adam = parse_strategy(_read(args.adam), arena)
    play = simulate(arena, eve, adam, _vertex(arena, args.start), args.horizon)
    dist = [None if d == float("inf") else int(d) for d in play.distances]
    if args.json:
        out.write(_dump({"vertices": play.vertices, "colors": play.colors, "distances": dist,
                         "censored": play.censored}))
        return OK
    out.write("vertices: " + " ".join(map(str, play.vertices)) + "\n")
    out.write("colors: " + " ".join(map(str, play.colors)) + "\n")
    out.write("distances: " + " ".join("inf*" if d is None else str(d) for d in dist) + "\n")
    for r, acts in play.counters.actions.items():
        out.write(f"counter {r}: " + "".join(acts) + "\n")
    return OK


def _load_process(path: str):
    try:
        return parse_process(_read(path))
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_unfold(args, out) -> int:
    proc = _load_process(args.pushdown)
    u = unfold(proc, args.height, parse_configuration(args.start), args.policy)
    text = to_dot(u.arena) if args.dot else format_arena(u.arena)
    _write(args.out, text, out)
    if args.out:
        out.write(f"{len(u.arena)} vertices written to {args.out}\n")
    return OK


def cmd_examples(args, out) -> int:
    if args.action == "list":
        if args.json:
            out.write(_dump([{"name": e.name, "kind": e.kind, "params": e.params, "about": e.about}
                             for e in fixtures.CATALOG.values()]))
        else:
            out.write("\n".join(fixtures.listing()) + "\n")
        return OK
    if not args.name:
        raise UsageError("examples dump needs a NAME")
    ex = fixtures.build(args.name, **_params(args.param))
    if ex.kind == "arena":
        out.write(to_dot(ex.obj) if args.dot else format_arena(ex.obj))
    else:
        out.write(format_process(ex.obj))
    return OK


def cmd_experiment(args, out) -> int:
    if args.kind == "collapse-growth":
        if args.example != "bincounter":
            raise UsageError("collapse-growth supports the bincounter example only")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "max_gap", "stem", "period", "upper_bound"])
        for n in _range(args.n_range):
            ex = fixtures.build("bincounter", n=n, k=args.k)
            run = simulate_deterministic(ex.obj, ex.start)
            w.writerow([n, args.k, int(run.max_gap), run.stem, run.period, collapse_bound_upper(n, args.k)])
        _write(args.csv, buf.getvalue(), out)
        return OK
    if args.kind == "min-bound":
        if not args.pushdown:
            raise UsageError("min-bound needs --pushdown")
        proc = _load_process(args.pushdown)
        start = parse_configuration(args.start)
        rows = []

        def bound(H):
            u = unfold(proc, H, start, args.policy)
            b = minimal_uniform_bound(u.arena, u.vertex(start))
            rows.append([H, len(u.arena), "none" if b is None else b])
            return b

        st = stabilize(bound, _range(args.height_range), args.window)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["height", "vertices", "min_bound"])
        w.writerows(rows)
        _write(args.csv, buf.getvalue(), out)
        out.write(st.format() + "\n")
        return OK
    # memory-bound
    ex = fixtures.build(args.example, **_params(args.param))
    if ex.kind != "arena" or ex.check is None:
        raise UsageError(f"{args.example} has no memory experiment")
    player, cond = ex.check
    if args.player is not None and _player(args.player) != player:
        raise UsageError(f"{args.example} is a memory experiment for {'E' if player == EVE else 'A'}")
    budget = OracleBudget(max_vertices=len(ex.obj), max_memory=max(args.cap, 1), max_strategies=args.budget)
    least = oracle_min_memory(ex.obj, player, cond, [ex.start], cap=args.cap, budget=budget)
    line = {"example": ex.name, "player": "E" if player == EVE else "A", "condition": describe(cond),
            "least_memory": least}
    try:
        res = solve(ex.obj, cond)
    except TypeError:
        res = None
    if res is not None and res.strategy(player) is not None:
        s = reduce_memory(ex.obj, res.strategy(player), cond, [ex.start])
        line["solver_memory"] = res.strategy(player).memory_size
        line["reduced_memory"] = s.memory_size
    if args.json:
        out.write(_dump(line))
    else:
        out.write(" ".join(f"{k}={'none' if v is None else v}" for k, v in line.items()) + "\n")
    return OK if least is not None else NEGATIVE


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fingames", description="Finitary, bounded and uniform games on graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("solve", help="winning regions and strategies")
    s.add_argument("--input", required=True)
    s.add_argument("--condition", required=True)
    s.add_argument("--N", type=int)
    s.add_argument("--start", required=True)
    s.add_argument("--emit-strategy", action="append", choices=["E", "A"])
    s.add_argument("--json", action="store_true")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check a strategy by cycle analysis")
    s.add_argument("--input", required=True)
    s.add_argument("--strategy", required=True)
    s.add_argument("--condition", required=True)
    s.add_argument("--N", type=int)
    s.add_argument("--from", dest="from_", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="play two strategies against each other")
    s.add_argument("--input", required=True)
    s.add_argument("--eve", required=True)
    s.add_argument("--adam", required=True)
    s.add_argument("--start", required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("unfold", help="finite arena of a pushdown process")
    s.add_argument("--pushdown", required=True)
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--start", required=True)
    s.add_argument("--policy", choices=[x.value for x in Policy], default="lose-eve")
    s.add_argument("--out")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_unfold)

    s = sub.add_parser("examples", help="built-in examples")
    s.add_argument("action", choices=["list", "dump"])
    s.add_argument("name", nargs="?")
    s.add_argument("--param", action="append", metavar="K=V")
    s.add_argument("--json", action="store_true")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("experiment", help="reproducible experiments")
    s.add_argument("kind", choices=["collapse-growth", "min-bound", "memory-bound"])
    s.add_argument("--example", default="bincounter")
    s.add_argument("--param", action="append", metavar="K=V")
    s.add_argument("--n-range", default="2..8")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--pushdown")
    s.add_argument("--start", default="")
    s.add_argument("--height-range", default="2..10")
    s.add_argument("--policy", choices=[x.value for x in Policy], default="drop")
    s.add_argument("--window", type=int, default=3)
    s.add_argument("--player")
    s.add_argument("--cap", type=int, default=3)
    s.add_argument("--budget", type=int, default=200_000, help="strategies tried per memory size")
    s.add_argument("--csv")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_experiment)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return USAGE
    except LimitError as e:
        err.write(f"limit: {e}\n")
        return LIMIT
    except GameError as e:
        err.write(f"error: {e}\n")
        return USAGE
    except SystemExit as e:  # --help
        return OK if e.code in (0, None) else USAGE


def main() -> None:
    sys.exit(run())
