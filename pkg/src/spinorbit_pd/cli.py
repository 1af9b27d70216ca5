"""Command-line interface: tables, sweeps, equilibria, rendering, play, serve."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import (
    DEFAULT_GRID,
    best_response,
    classical_minimum_check,
    nash_discrete,
    param_to_strategy,
    sweep,
)
from .game import (
    BACKENDS,
    NAMED_STRATEGIES,
    PayoffTable,
    Strategy,
    coefficient_table,
    run_protocol,
)
from .qmath import BASIS_LABELS
from .render import DEFAULT_EXTENT, DEFAULT_PIXELS, render_outcome


@dataclass
class RunConfig:
    backend: str = "abstract"
    table: PayoffTable = field(default_factory=PayoffTable.default)
    grid: int = DEFAULT_GRID
    out: str | None = None
    seed: int | None = None  # reserved; the built-in opponent policies are deterministic
    opponent: str = "nash"
    port: int = 8000
    ui: str | None = None
    extent: float = DEFAULT_EXTENT
    strategies: list[str] | None = None


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _parse_payoff_flags(entries: list[str] | dict) -> PayoffTable:
    """Build a table from overrides like ["CC=3,3", "DD=0,0"] or a config dict."""
    cells: dict[str, tuple[float, float]] = {}
    if isinstance(entries, dict):
        items = entries.items()
    else:
        items = []
        for entry in entries:
            label, _, rest = entry.partition("=")
            items.append((label, rest.split(",")))
    for label, values in items:
        label = label.strip().upper()
        if label not in BASIS_LABELS:
            raise ValueError(f"unknown payoff cell {label!r} (use CC, CD, DC, DD)")
        try:
            va, vb = (float(v) for v in values)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"payoff override for {label} needs two numbers") from exc
        cells[label] = (va, vb)
    return PayoffTable.from_overrides(cells)


def _resolve_config(args: argparse.Namespace, grid_default: int) -> RunConfig:
    """Merge hard defaults, an optional JSON config file, and flags (flags win)."""
    file_values: dict = {}
    if getattr(args, "config", None):
        file_values = json.loads(Path(args.config).read_text())

    def pick(name: str, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_values:
            return file_values[name]
        return default

    payoff = pick("payoff", None)
    table = _parse_payoff_flags(payoff) if payoff else PayoffTable.default()
    backend = pick("backend", "abstract")
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    grid = int(pick("grid", grid_default))
    if grid < 2:
        raise ValueError("--grid must be at least 2")
    strategies = pick("strategies", None)
    if isinstance(strategies, str):
        strategies = [s.strip() for s in strategies.split(",") if s.strip()]
    return RunConfig(
        backend=backend,
        table=table,
        grid=grid,
        out=pick("out", None),
        seed=pick("seed", None),
        opponent=pick("opponent", "nash"),
        port=int(pick("port", 8000)),
        ui=pick("ui", None),
        extent=float(pick("extent", DEFAULT_EXTENT)),
        strategies=strategies,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _outcome_csv_rows(names: list[str], grid) -> str:
    cols = ["alice", "bob"]
    for label in BASIS_LABELS:
        cols += [f"re_{label.lower()}", f"im_{label.lower()}"]
    cols += [f"p_{label.lower()}" for label in BASIS_LABELS] + ["payoff_a", "payoff_b"]
    lines = [",".join(cols)]
    for name_a, row in zip(names, grid):
        for name_b, outcome in zip(names, row):
            cells = [name_a, name_b]
            for z in outcome.amplitudes:
                cells += [_fmt(z.real), _fmt(z.imag)]
            cells += [_fmt(p) for p in outcome.probs]
            cells += [_fmt(outcome.payoff_a), _fmt(outcome.payoff_b)]
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def cmd_table(cfg: RunConfig) -> int:
    strategies = [Strategy.parse(s) for s in cfg.strategies] if cfg.strategies else [
        Strategy.named(n) for n in NAMED_STRATEGIES
    ]
    names = [s.label for s in strategies]
    grid = coefficient_table(strategies, cfg.backend, cfg.table)

    width = max(len(n) for n in names) + 2
    print("payoffs (Alice, Bob) by strategy pair; rows Alice, columns Bob")
    print(" " * width + "".join(f"{n:>14}" for n in names))
    for name_a, row in zip(names, grid):
        cells = "".join(f"{o.payoff_a:>7.3f},{o.payoff_b:<6.3f}" for o in row)
        print(f"{name_a:<{width}}{cells}")
    print()
    print("port probabilities p(mn), Alice letter first")
    for name_a, row in zip(names, grid):
        for name_b, o in zip(names, row):
            probs = "  ".join(f"{label}={o.prob(label):.6f}" for label in BASIS_LABELS)
            print(f"{name_a:>4} vs {name_b:<4}  {probs}")

    if cfg.out:
        Path(cfg.out).write_text(_outcome_csv_rows(names, grid))
        print(f"\nwrote {cfg.out}")
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    points = sweep(cfg.grid, cfg.backend, cfg.table)
    lines = ["t_a,t_b,theta_a_deg,phi_a_rad,theta_b_deg,phi_b_rad,payoff_a,payoff_b"]
    for pt in points:
        pa = param_to_strategy(pt.t_a).params
        pb = param_to_strategy(pt.t_b).params
        lines.append(
            ",".join(
                _fmt(v)
                for v in (pt.t_a, pt.t_b, pa.theta, pa.phi, pb.theta, pb.phi, pt.payoff_a, pt.payoff_b)
            )
        )
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def _print_report(title: str, strategies: list[Strategy], cfg: RunConfig) -> None:
    names = [s.label for s in strategies]
    report = nash_discrete(strategies, cfg.backend, cfg.table)
    print(f"{title}: {', '.join(names)}")
    if report.equilibria:
        for i, j in report.equilibria:
            o = run_protocol(strategies[i], strategies[j], cfg.backend, cfg.table)
            pareto = "  [pareto-optimal]" if (i, j) in report.pareto_front else ""
            print(
                f"  nash: ({names[i]}, {names[j]})  payoffs ({_fmt(o.payoff_a)}, {_fmt(o.payoff_b)}){pareto}"
            )
    else:
        print("  nash: none")
    dominated = ", ".join(f"({names[i]}, {names[j]})" for i, j in report.dominated_pairs)
    print(f"  dominated by mutual iZ: {dominated or 'none'}")
    pareto = ", ".join(f"({names[i]}, {names[j]})" for i, j in report.pareto_front)
    print(f"  pareto front: {pareto}")


def cmd_nash(cfg: RunConfig) -> int:
    _print_report("full strategy set", [Strategy.named(n) for n in NAMED_STRATEGIES], cfg)
    print()
    _print_report("classical subset", [Strategy.named("I"), Strategy.named("iX")], cfg)
    check = classical_minimum_check(cfg.grid, cfg.table)
    print()
    if check.equilibrium:
        pa, pb = check.equilibrium
        va, vb = check.payoffs
        print(
            f"mixed-strategy scan ({cfg.grid} points/axis): equilibrium at "
            f"p_A(D)={_fmt(pa)}, p_B(D)={_fmt(pb)} with payoffs ({_fmt(va)}, {_fmt(vb)})"
            + ("" if check.unique_at_full_defection else "  [not unique]")
        )
    else:
        print("mixed-strategy scan: no mutual best response found")
    return 0


def _opponent_move(cfg: RunConfig, human: Strategy) -> Strategy:
    policy = cfg.opponent
    if policy == "nash":
        return Strategy.named("iZ")
    if policy in ("best", "best_response"):
        t, _ = best_response(human, cfg.grid, cfg.backend, cfg.table)
        return param_to_strategy(t)
    return Strategy.parse(policy)


def cmd_play(cfg: RunConfig, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout

    def say(msg: str) -> None:
        stdout.write(msg + "\n")
        stdout.flush()

    say(f"prisoner's dilemma, opponent policy: {cfg.opponent}")
    say("enter a named strategy (iX, Q1, I, Q2, iZ), C(<theta deg>, <phi rad>), or q to quit")
    total_a = total_b = 0.0
    rounds = 0
    while True:
        stdout.write(f"round {rounds + 1} move> ")
        stdout.flush()
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if line.lower() in ("q", "quit", "exit"):
            break
        if not line:
            continue
        try:
            human = Strategy.parse(line)
        except ValueError as exc:
            say(f"  {exc}")
            continue
        opponent = _opponent_move(cfg, human)
        outcome = run_protocol(human, opponent, cfg.backend, cfg.table)
        rounds += 1
        total_a += outcome.payoff_a
        total_b += outcome.payoff_b
        probs = "  ".join(f"p({label})={outcome.prob(label):.6f}" for label in BASIS_LABELS)
        say(f"  opponent played {opponent.label}")
        say(f"  {probs}")
        say(
            f"  payoffs: you {outcome.payoff_a:.3f}, opponent {outcome.payoff_b:.3f}"
            f"  (cumulative {total_a:.3f} / {total_b:.3f})"
        )
    say(f"final after {rounds} round(s): you {total_a:.3f}, opponent {total_b:.3f}")
    return 0


def cmd_render(cfg: RunConfig, a: str, b: str) -> int:
    outcome = run_protocol(Strategy.parse(a), Strategy.parse(b), cfg.backend, cfg.table)
    paths = render_outcome(outcome, cfg.out or ".", n=cfg.grid, extent=cfg.extent)
    for path in paths:
        print(f"wrote {path}")
    return 0


def cmd_serve(cfg: RunConfig) -> int:
    from .service import create_server

    ui_dir = cfg.ui
    if ui_dir is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        ui_dir = str(candidate) if candidate.is_dir() else None
    server = create_server(
        host="127.0.0.1",
        port=cfg.port,
        backend=cfg.backend,
        table=cfg.table,
        response_grid=cfg.grid,
        ui_dir=ui_dir,
    )
    host, port = server.server_address[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinorbit-pd",
        description="quantum prisoner's dilemma on spin-orbit laser modes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, grid_default: int, grid_help: str):
        p.add_argument("--backend", choices=BACKENDS, default=None, help="protocol backend")
        p.add_argument("--grid", type=int, default=None, help=grid_help + f" (default {grid_default})")
        p.add_argument("--out", default=None, help="output path")
        p.add_argument(
            "--payoff",
            action="append",
            default=None,
            metavar="MN=A,B",
            help="override a payoff cell, e.g. --payoff CC=3,3 (repeatable)",
        )
        p.add_argument("--config", default=None, help="JSON config file; flags win over file values")
        p.add_argument("--seed", type=int, default=None, help="reserved for randomized opponents")
        p.set_defaults(grid_default=grid_default)

    p = sub.add_parser("table", help="outcome grid for the named strategies")
    common(p, DEFAULT_GRID, "unused")
    p.add_argument("--strategies", default=None, help="comma-separated subset, e.g. I,iX")
    p.set_defaults(func=lambda cfg, args: cmd_table(cfg))

    p = sub.add_parser("sweep", help="payoff surface over the fused strategy parameter")
    common(p, DEFAULT_GRID, "points per segment")
    p.set_defaults(func=lambda cfg, args: cmd_sweep(cfg))

    p = sub.add_parser("nash", help="equilibrium and dominance analysis")
    common(p, DEFAULT_GRID, "mixed-strategy scan points per axis")
    p.set_defaults(func=lambda cfg, args: cmd_nash(cfg))

    p = sub.add_parser("play", help="interactive rounds against a policy opponent")
    common(p, DEFAULT_GRID, "best-response scan points per segment")
    p.add_argument(
        "--opponent",
        default=None,
        help="nash, best, or a fixed strategy (name or C(theta, phi))",
    )
    p.set_defaults(func=lambda cfg, args: cmd_play(cfg))

    p = sub.add_parser("render", help="write the four port images for a strategy pair")
    common(p, DEFAULT_PIXELS, "pixels per side")
    p.add_argument("alice", help="Alice's strategy")
    p.add_argument("bob", help="Bob's strategy")
    p.add_argument("--extent", type=float, default=None, help="half-width in waist units")
    p.set_defaults(func=lambda cfg, args: cmd_render(cfg, args.alice, args.bob))

    p = sub.add_parser("serve", help="run the HTTP play service")
    common(p, DEFAULT_GRID, "best-response policy grid")
    p.add_argument("--port", type=int, default=None, help="listen port (0 picks a free one)")
    p.add_argument("--ui", default=None, help="directory with the web UI bundle")
    p.set_defaults(func=lambda cfg, args: cmd_serve(cfg))

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args, args.grid_default)
        return args.func(cfg, args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
