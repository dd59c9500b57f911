"""Command-line interface.

Subcommands: check, audit, cover (single-instance, reading the matrix file
format), verify, search (campaigns), gen (seeded instance generation).
Exit status: 0 completed with no violators or alarms, 1 violator or alarm
found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .auditor import audit
from .campaigns import run_parallel, search_pattern
from .core import (
    Colour,
    ColouredTournament,
    TournamentFormatError,
    canonical_json,
    parse,
    report_dict,
    serialize,
)
from .domination import (
    dominated_by_all,
    dominating_vertices,
    find_rainbow_triangle,
    min_cover,
)
from .enumeration import BudgetExceededError, EnumerationSpec, sample_codes

PROGRESS_THRESHOLD = 10**7
PROGRESS_EVERY = 10**6


@dataclass
class CliConfig:
    """One validated invocation; flags irrelevant to the subcommand stay at
    their defaults."""

    subcommand: str
    input: str | None = None
    order: int = 0
    colours: int = 3
    mode: str = "exhaustive"
    samples: int = 0
    seed: int = 0
    shard: tuple[int, int] = (0, 1)
    budget: int | None = None
    k_max: int = 4
    format: str = "text"
    pattern: tuple[Colour, ...] | None = None
    cyclic: bool = True
    filter: str = "none"
    workers: int = 0


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        k, m = text.split("/")
        return int(k), int(m)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like K/M, got {text!r}")


def _parse_pattern(text: str) -> tuple[Colour, ...]:
    try:
        return tuple(Colour.from_char(ch) for ch in text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="monodom",
        description="Monochromatic domination in 3-coloured tournaments: "
        "verification, audits, and search campaigns.",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    def add_input(sp):
        sp.add_argument("--input", required=True,
                        help="instance file, '-' for standard input, or the "
                        "instance text itself")

    sp = sub.add_parser("check", help="report domination facts for one instance")
    add_input(sp)
    sp.add_argument("--cyclic", choices=("on", "off"), default="on",
                    help="require the rainbow triangle to be cyclic")
    add_format(sp)

    sp = sub.add_parser("audit", help="run every necessary-condition check")
    add_input(sp)
    add_format(sp)

    sp = sub.add_parser("cover", help="smallest monochromatically covering set")
    add_input(sp)
    sp.add_argument("--kmax", type=int, default=4, dest="k_max")
    add_format(sp)

    sp = sub.add_parser("verify", help="run a verification campaign")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--colours", type=int, choices=(2, 3), default=3)
    sp.add_argument("--mode", choices=("exhaustive", "canonical", "sampled"),
                    default="exhaustive")
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--shard", type=_parse_shard, default=(0, 1), metavar="K/M")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--filter", choices=("none", "two-colour-vertices"),
                    default="none")
    sp.add_argument("--cyclic", choices=("on", "off"), default="on")
    sp.add_argument("--workers", type=int, default=0,
                    help="0 picks the machine's CPU count")
    add_format(sp)

    sp = sub.add_parser("search", help="scan completions of a patterned cycle")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--pattern", type=_parse_pattern, required=True,
                    help="cycle colour pattern, e.g. rb or rgb")
    sp.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--shard", type=_parse_shard, default=(0, 1), metavar="K/M")
    sp.add_argument("--budget", type=int, default=None)
    add_format(sp)

    sp = sub.add_parser("gen", help="emit one seeded random instance")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--colours", type=int, choices=(2, 3), default=3)
    sp.add_argument("--seed", type=int, default=0)

    return p


def config_from_args(args: argparse.Namespace) -> CliConfig:
    cfg = CliConfig(subcommand=args.subcommand)
    for field in vars(cfg):
        if hasattr(args, field) and getattr(args, field) is not None:
            value = getattr(args, field)
            if field == "cyclic":
                value = value == "on"
            setattr(cfg, field, value)
    return cfg


def _read_instance(source: str) -> ColouredTournament:
    if "\n" in source:
        return parse(source)
    if source == "-":
        return parse(sys.stdin.read())
    return parse(open(source).read())


def _triangle_line(t, cyclic: bool) -> str:
    tri = find_rainbow_triangle(t, require_cyclic=cyclic)
    label = "T_3" if cyclic else "rainbow triangle"
    if tri is None:
        return f"{label}: none"
    arcs = ", ".join(f"{a}->{b} {c.char}" for a, b, c in tri.arcs)
    return f"{label} at {tri.vertices}: {arcs}"


def cmd_check(cfg: CliConfig) -> int:
    t = _read_instance(cfg.input)
    doms = dominating_vertices(t)
    dby = dominated_by_all(t)
    tri = find_rainbow_triangle(t, require_cyclic=cfg.cyclic)
    if cfg.format == "json":
        findings = [
            {"check": "dominating_vertices", "vertices": doms},
            {"check": "dominated_by_all", "vertices": dby},
            {
                "check": "t3" if cfg.cyclic else "rainbow_triangle",
                "found": tri is not None,
                "witness": None if tri is None else {
                    "triangle": list(tri.vertices),
                    "arcs": [[a, b, c.char] for a, b, c in tri.arcs],
                },
            },
        ]
        print(canonical_json(report_dict(t, findings)))
    else:
        print(f"n={t.n}")
        print("dominating vertices:", " ".join(map(str, doms)) if doms else "none")
        print("dominated by all:", " ".join(map(str, dby)) if dby else "none")
        print(_triangle_line(t, cfg.cyclic))
    return 0


def cmd_audit(cfg: CliConfig) -> int:
    t = _read_instance(cfg.input)
    report = audit(t)
    if cfg.format == "json":
        print(canonical_json(report.to_dict()))
    else:
        print(f"n={t.n}")
        for f in report.findings:
            status = "holds" if f.holds else f"FAILS  witness={f.witness!r}"
            print(f"  {f.check}: {status}")
        print(f"verdict: {report.verdict}")
    return 1 if report.alarm else 0


def cmd_cover(cfg: CliConfig) -> int:
    t = _read_instance(cfg.input)
    cover = min_cover(t, k_max=cfg.k_max)
    if cfg.format == "json":
        payload = report_dict(
            t,
            [{
                "check": "min_cover",
                "k_max": cfg.k_max,
                "order": None if cover is None else cover.order,
                "members": None if cover is None else list(cover.members),
            }],
        )
        print(canonical_json(payload))
    elif cover is None:
        print(f"no covering set of order <= {cfg.k_max}")
    else:
        print(f"order {cover.order}, members {{{', '.join(map(str, cover.members))}}}")
    return 0


def _campaign_text(result, label: str) -> None:
    print(f"campaign: {label}")
    spec = result.spec
    line = f"spec: n={spec.n} colours={spec.colours} mode={spec.mode}"
    if spec.mode == "sampled":
        line += f" samples={spec.samples} seed={spec.seed}"
    if spec.filter != "none":
        line += f" filter={spec.filter}"
    if spec.pattern is not None:
        line += f" pattern={''.join(c.char for c in spec.pattern)}"
    if spec.shard != (0, 1):
        line += f" shard={spec.shard[0]}/{spec.shard[1]}"
    print(line)
    print("counts:", " ".join(f"{k}={v}" for k, v in sorted(result.counts.items())))
    if result.check_failures:
        print("check failures:",
              " ".join(f"{k}={v}" for k, v in sorted(result.check_failures.items())))
    if result.extremal.get("min_cover"):
        print(f"max min_cover order: {result.max_cover_order}")
    if result.elapsed:
        print(f"elapsed: {result.elapsed:.2f}s ({result.rate:.0f} instances/s)")
    for v in result.violators:
        print(f"violator at index {v['index']}:")
        print(v["instance"], end="")


def cmd_verify(cfg: CliConfig) -> int:
    kwargs = dict(
        n=cfg.order, colours=cfg.colours, mode=cfg.mode, filter=cfg.filter,
        shard=cfg.shard, samples=cfg.samples, seed=cfg.seed,
    )
    if cfg.budget is not None:
        kwargs["budget"] = cfg.budget
    spec = EnumerationSpec(**kwargs)
    workers = cfg.workers or os.cpu_count() or 1
    progress = PROGRESS_EVERY if spec.shard_size() >= PROGRESS_THRESHOLD else 0
    if cfg.colours == 2:
        result = run_parallel("ssw2", spec, workers=workers, progress=progress)
        label = "2-coloured dominating vertex"
    else:
        result = run_parallel(
            "conjecture", spec, workers=workers,
            require_cyclic=cfg.cyclic, progress=progress,
        )
        label = ("cyclic T_3 or dominating vertex" if cfg.cyclic
                 else "rainbow triangle or dominating vertex")
    if cfg.format == "json":
        print(result.to_json())
    else:
        _campaign_text(result, label)
    return 1 if result.violations else 0


def cmd_search(cfg: CliConfig) -> int:
    result = search_pattern(
        cfg.order, cfg.pattern, mode=cfg.mode, samples=cfg.samples,
        seed=cfg.seed, shard=cfg.shard, budget=cfg.budget,
        progress=PROGRESS_EVERY,
    )
    if cfg.format == "json":
        print(result.to_json())
    else:
        pattern = "".join(c.char for c in cfg.pattern)
        _campaign_text(result, f"pattern {pattern} cycle completions")
    return 1 if result.violations or result.counts.get("alarms") else 0


def cmd_gen(cfg: CliConfig) -> int:
    spec = EnumerationSpec(
        n=cfg.order, colours=cfg.colours, mode="sampled", samples=1, seed=cfg.seed
    )
    codes = sample_codes(spec, 0)
    print(serialize(ColouredTournament.from_codes(cfg.order, codes, cfg.colours)),
          end="")
    return 0


_HANDLERS = {
    "check": cmd_check,
    "audit": cmd_audit,
    "cover": cmd_cover,
    "verify": cmd_verify,
    "search": cmd_search,
    "gen": cmd_gen,
}


def run(config: CliConfig) -> int:
    """Execute one configured invocation; returns the process exit status."""
    try:
        return _HANDLERS[config.subcommand](config)
    except TournamentFormatError as e:
        print(f"error: malformed instance: {e}", file=sys.stderr)
        return 2
    except (BudgetExceededError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
