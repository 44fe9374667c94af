"""Command-line front end.

Every command reads one JSON scenario document (``--config``). Values in CSV
and JSON output are integer half-bananas unless ``--decimal`` is given.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, replace
from typing import IO, Sequence

from .engine import (
    ConsumptionVector,
    GameState,
    HorizonExceeded,
    outcome,
    play,
)
from .errors import BoundsExceeded
from .geometry import GoalPair, GridPosition, region_of, step_counts
from .oracle import DEFAULT_BUDGET, verify_equilibrium
from .serialize import transcript_to_records, write_transcript
from .strategies import (
    ExaggerationUnavailable,
    PathInvalid,
    ScriptedMover,
    build_exaggeration_path,
    build_explicit_first_path,
    equilibrium_eater,
    equilibrium_mover,
    equilibrium_path,
    make_eater,
    make_mover,
)
from .value import equilibrium_values

VALUE_MAP_HEADER = ("x", "y", "v1_half", "v2_half", "ve_half", "region", "n_a", "n_r1", "n_r2")
CLASSIFY_HEADER = ("x", "y", "region", "n_a", "n_r1", "n_r2")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    goals: GoalPair
    start: GridPosition | None = None
    b0: ConsumptionVector = ConsumptionVector()
    true_goal: int | None = None
    mover: str = "equilibrium"
    eater: str = "equilibrium"
    window: tuple[int, int, int, int] | None = None  # xmin, ymin, xmax, ymax
    horizon_cap: int | None = None
    slack: int = 2
    budget: int = DEFAULT_BUDGET
    exaggeration_k: int = 1

    def cells(self) -> list[GridPosition]:
        """Window cells sorted by (y, x)."""
        if self.window is None:
            raise ConfigError("this command needs a 'window'")
        xmin, ymin, xmax, ymax = self.window
        return [GridPosition(x, y) for y in range(ymin, ymax + 1) for x in range(xmin, xmax + 1)]


def _point(raw, what: str) -> GridPosition:
    try:
        x, y = raw
        return GridPosition(int(x), int(y))
    except (TypeError, ValueError):
        raise ConfigError(f"{what} must be an [x, y] pair, got {raw!r}") from None


def parse_config(doc: dict) -> ScenarioConfig:
    if "goals" not in doc:
        raise ConfigError("config needs 'goals'")
    try:
        raw_g1, raw_g2 = doc["goals"]
    except (TypeError, ValueError):
        raise ConfigError("'goals' must hold exactly two [x, y] pairs") from None
    try:
        goals = GoalPair(_point(raw_g1, "goal 1"), _point(raw_g2, "goal 2"))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    b0_raw = doc.get("b0", [0, 0])
    if len(b0_raw) != 2 or any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in b0_raw):
        raise ConfigError("'b0' must be two non-negative whole banana counts")

    true_goal = doc.get("true_goal")
    if true_goal is not None and true_goal not in (1, 2):
        raise ConfigError("'true_goal' must be 1 or 2")

    window = None
    if doc.get("window") is not None:
        lo, hi = doc["window"]
        lo, hi = _point(lo, "window corner"), _point(hi, "window corner")
        if lo.x > hi.x or lo.y > hi.y:
            raise ConfigError("window is empty")
        window = (lo.x, lo.y, hi.x, hi.y)

    for key in ("horizon_cap", "budget"):
        if doc.get(key) is not None and int(doc[key]) < 1:
            raise ConfigError(f"'{key}' must be positive")
    if int(doc.get("slack", 2)) < 0:
        raise ConfigError("'slack' must be non-negative")

    return ScenarioConfig(
        goals=goals,
        start=_point(doc["start"], "start") if doc.get("start") is not None else None,
        b0=ConsumptionVector.from_bananas(*b0_raw),
        true_goal=true_goal,
        mover=str(doc.get("mover", "equilibrium")),
        eater=str(doc.get("eater", "equilibrium")),
        window=window,
        horizon_cap=doc.get("horizon_cap"),
        slack=int(doc.get("slack", 2)),
        budget=int(doc.get("budget", DEFAULT_BUDGET)),
        exaggeration_k=int(doc.get("exaggeration_k", 1)),
    )


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(doc)


def bananas(half: int) -> str:
    """Render half-units as a decimal banana count (7 -> '3.5')."""
    whole, rem = divmod(half, 2)
    return f"{whole}.5" if rem else str(whole)


def _need(cfg: ScenarioConfig, *fields: str) -> None:
    for f in fields:
        if getattr(cfg, f) is None:
            raise ConfigError(f"this command needs '{f}'")


def _open_out(path: str | None) -> IO[str]:
    return open(path, "w", newline="") if path else sys.stdout


# --- commands ------------------------------------------------------------------


def cmd_play(cfg: ScenarioConfig, args: argparse.Namespace) -> int:
    _need(cfg, "start", "true_goal")
    initial = GameState(cfg.start, cfg.b0, cfg.goals, cfg.true_goal)
    mover = make_mover(cfg.mover, cfg.start, cfg.goals, cfg.true_goal)
    eater = make_eater(cfg.eater)
    tr = play(initial, mover, eater, cfg.horizon_cap)
    if args.out:
        with open(args.out, "w") as fh:
            write_transcript(tr, fh)
    b = tr.final_consumption
    print(f"T={tr.terminal_time}")
    print(f"consumption=({bananas(b.b1)}, {bananas(b.b2)})")
    print(f"outcome_true_goal={bananas(outcome(tr, cfg.true_goal))}")
    print("moves=" + ",".join(s.move_class.value for s in tr.steps))
    return 0


def value_map_rows(cfg: ScenarioConfig) -> list[dict]:
    rows = []
    for p in cfg.cells():
        v1, v2 = equilibrium_values(p, cfg.b0, cfg.goals)
        n = step_counts(p, cfg.goals)
        rows.append(
            {
                "x": p.x, "y": p.y,
                "v1_half": v1, "v2_half": v2, "ve_half": min(v1, v2),
                "region": region_of(p, cfg.goals).value,
                "n_a": n.n_ambiguous, "n_r1": n.n_explicit_1, "n_r2": n.n_explicit_2,
            }
        )
    return rows


def simulate_cell(p: GridPosition, b0: ConsumptionVector, goals: GoalPair) -> tuple[int, int]:
    """Play the equilibrium pair in both games and return (b_1(T), b_2(T))."""
    out = []
    for i in (1, 2):
        tr = play(GameState(p, b0, goals, i), equilibrium_mover, equilibrium_eater)
        out.append(outcome(tr, i))
    return out[0], out[1]


def switch_boundary(rows: Sequence[dict]) -> list[dict]:
    """Cells whose minimising game differs from a 4-neighbour's.

    Each cell is labelled 1 (game 1 strictly lower), 2, or 'tie'.
    """

    def side(r: dict) -> str:
        if r["v1_half"] < r["v2_half"]:
            return "1"
        if r["v2_half"] < r["v1_half"]:
            return "2"
        return "tie"

    labels = {(r["x"], r["y"]): side(r) for r in rows}
    out = []
    for r in rows:
        here = labels[(r["x"], r["y"])]
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            other = labels.get((r["x"] + dx, r["y"] + dy))
            if other is not None and other != here:
                out.append({"x": r["x"], "y": r["y"], "min_game": here})
                break
    return out


def _write_csv(fh: IO[str], header: Sequence[str], rows: Sequence[dict], decimal_fields: Sequence[str] = (), decimal: bool = False) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([bananas(r[h]) if decimal and h in decimal_fields else r[h] for h in header])


def _check_window_budget(cfg: ScenarioConfig) -> None:
    xmin, ymin, xmax, ymax = cfg.window
    n = (xmax - xmin + 1) * (ymax - ymin + 1)
    if n > cfg.budget:
        raise ConfigError(f"window has {n} cells, more than budget {cfg.budget}")


def cmd_value_map(cfg: ScenarioConfig, args: argparse.Namespace) -> int:
    _need(cfg, "window")
    _check_window_budget(cfg)
    rows = value_map_rows(cfg)
    mismatches = 0
    if args.simulate:
        for r in rows:
            sim = simulate_cell(GridPosition(r["x"], r["y"]), cfg.b0, cfg.goals)
            if sim != (r["v1_half"], r["v2_half"]):
                mismatches += 1
                print(f"mismatch at ({r['x']},{r['y']}): closed form {(r['v1_half'], r['v2_half'])}, simulated {sim}", file=sys.stderr)
    fh = _open_out(args.out)
    try:
        _write_csv(fh, VALUE_MAP_HEADER, rows, ("v1_half", "v2_half", "ve_half"), args.decimal)
    finally:
        if fh is not sys.stdout:
            fh.close()
    boundary = switch_boundary(rows)
    if args.boundary_out:
        with open(args.boundary_out, "w", newline="") as bf:
            _write_csv(bf, ("x", "y", "min_game"), boundary)
    print(f"cells={len(rows)} boundary_cells={len(boundary)}", file=sys.stderr)
    if args.simulate:
        print(f"simulate mismatches={mismatches}", file=sys.stderr)
    return 1 if mismatches else 0


def cmd_classify_map(cfg: ScenarioConfig, args: argparse.Namespace) -> int:
    _need(cfg, "window")
    _check_window_budget(cfg)
    rows = []
    for p in cfg.cells():
        n = step_counts(p, cfg.goals)
        rows.append({"x": p.x, "y": p.y, "region": region_of(p, cfg.goals).value,
                     "n_a": n.n_ambiguous, "n_r1": n.n_explicit_1, "n_r2": n.n_explicit_2})
    fh = _open_out(args.out)
    try:
        _write_csv(fh, CLASSIFY_HEADER, rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def compare_paths(cfg: ScenarioConfig) -> tuple[list[dict], dict[str, int | str]]:
    """Play the three reference Mover paths against the equilibrium Eater.

    Returns per-step rows (cumulative true-goal consumption) and final totals;
    a path whose construction fails gets an error string instead of a total.
    """
    _need(cfg, "start", "true_goal")
    builders = {
        "equilibrium": lambda: equilibrium_path(cfg.start, cfg.goals, cfg.true_goal),
        "explicit_first": lambda: build_explicit_first_path(cfg.start, cfg.goals, cfg.true_goal),
        f"exaggeration:{cfg.exaggeration_k}": lambda: build_exaggeration_path(
            cfg.start, cfg.goals, cfg.true_goal, cfg.exaggeration_k
        ),
    }
    initial = GameState(cfg.start, cfg.b0, cfg.goals, cfg.true_goal)
    rows: list[dict] = []
    totals: dict[str, int | str] = {}
    for name, build in builders.items():
        try:
            path = build()
        except ExaggerationUnavailable as exc:
            totals[name] = f"error: {exc}"
            continue
        tr = play(initial, ScriptedMover(path), equilibrium_eater, max(len(path), 1))
        for t, state in enumerate(tr.states()):
            rows.append({"path": name, "t": t, "b_true_half": state.consumption.get(cfg.true_goal)})
        totals[name] = outcome(tr, cfg.true_goal)
    return rows, totals


def cmd_compare_paths(cfg: ScenarioConfig, args: argparse.Namespace) -> int:
    rows, totals = compare_paths(cfg)
    fh = _open_out(args.out)
    try:
        _write_csv(fh, ("path", "t", "b_true_half"), rows, ("b_true_half",), args.decimal)
    finally:
        if fh is not sys.stdout:
            fh.close()
    for name, total in totals.items():
        shown = total if isinstance(total, str) else bananas(total)
        print(f"total {name}={shown}", file=sys.stderr)
    return 0


def _mover_pair(cfg: ScenarioConfig, start: GridPosition):
    return tuple(make_mover(cfg.mover, start, cfg.goals, i) for i in (1, 2))


def cmd_verify(cfg: ScenarioConfig, args: argparse.Namespace) -> int:
    if cfg.window is not None:
        _check_window_budget(cfg)
        starts = cfg.cells()
    elif cfg.start is not None:
        starts = [cfg.start]
    else:
        raise ConfigError("verify needs a 'window' or a 'start'")
    eater = make_eater(cfg.eater)
    reports = []
    first_failure = None
    for p in starts:
        rep = verify_equilibrium(p, cfg.b0, cfg.goals, cfg.slack, cfg.budget, _mover_pair(cfg, p), eater)
        reports.append(rep)
        if first_failure is None and not rep.passed:
            first_failure = rep
    passed = sum(r.passed for r in reports)
    doc = {
        "mover": cfg.mover,
        "eater": cfg.eater,
        "slack": cfg.slack,
        "budget": cfg.budget,
        "cells": len(reports),
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=1)
    print(f"verified {passed}/{len(reports)} starts", file=sys.stderr)
    if first_failure is None:
        return 0
    _describe_failure(first_failure)
    # Undecided (budget ran out) is distinct from disproved.
    if not any(r.witnesses for r in reports):
        return 4
    return 1


def _describe_failure(rep) -> None:
    err = sys.stderr
    print(f"first failure at start {rep.start.as_tuple()}: payoffs {rep.payoffs}, closed form {rep.closed_form}", file=err)
    for note in rep.notes:
        print(f"  {note}", file=err)
    for w in rep.witnesses:
        print(
            f"  {w.deviator} deviation: {bananas(w.best_deviation_payoff)} vs candidate {bananas(w.equilibrium_payoff)} bananas",
            file=err,
        )
        for tr in w.witness or ():
            print("  witness " + json.dumps(transcript_to_records(tr)), file=err)


COMMANDS = {
    "play": cmd_play,
    "value-map": cmd_value_map,
    "compare-paths": cmd_compare_paths,
    "verify": cmd_verify,
    "classify-map": cmd_classify_map,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mover-eater", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario JSON file")
        p.add_argument("--out", help="output file (stdout for CSV when omitted)")
        p.add_argument("--decimal", action="store_true", help="render values in bananas")
        p.add_argument("--simulate", action="store_true", help="value-map: cross-check each cell by simulation")
        p.add_argument("--slack", type=int, help="override oracle path slack")
        p.add_argument("--budget", type=int, help="override enumeration budget")
        p.add_argument("--mover", help="override Mover strategy name")
        p.add_argument("--eater", help="override Eater strategy name")
        p.add_argument("--boundary-out", help="value-map: write min-switch boundary cells here")
        p.add_argument("--seed", type=int, help="ignored; every command is deterministic")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        overrides = {k: getattr(args, k) for k in ("slack", "budget", "mover", "eater") if getattr(args, k) is not None}
        if overrides:
            cfg = replace(cfg, **overrides)
        if cfg.slack < 0 or cfg.budget < 1:
            raise ConfigError("slack must be >= 0 and budget >= 1")
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except HorizonExceeded as exc:
        print(f"HorizonExceeded: {exc}", file=sys.stderr)
        return 3
    except PathInvalid as exc:
        print(f"PathInvalid: {exc}", file=sys.stderr)
        return 3
    except BoundsExceeded as exc:
        print(f"BoundsExceeded: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
