"""Command-line entry point: ``kcm {decompose,minimize,profile,gadget,replay}``.

Every JSON artifact embeds the run configuration that produced it.
Thread count and output path are left out of that record because they do
not change the result; wall-clock timings are only written with
``--timings`` so that repeated runs stay byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .core import decomposition_csv, decomposition_summary
from .gadgets import GadgetError
from .gadgets import build as build_gadget
from .graph import (
    EdgeListParseError,
    Graph,
    MissingEdgeError,
    read_edge_list,
    write_edge_list,
)
from .oracles import OracleRefused, exact_kcm, exact_shapley_solution
from .profile import resilience_profile, solve
from .solution import CandidateSet, SamplingPlan

log = logging.getLogger("kcm")

ALGOS = ("sv", "gc", "ld", "jd", "rd", "opt", "exact-sv")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    k: list[int] = field(default_factory=list)
    b: list[int] = field(default_factory=list)
    algorithm: str | None = None
    epsilon: float = 0.05
    ell: int = 1
    samples: int | None = None
    seed: int = 42
    prune: bool = True
    candidates: str | None = None
    format: str = "json"
    string_ids: bool = False
    timings: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _int_list(text: str) -> list[int]:
    """``"3,5,7"`` or a range ``"0:100:10"`` (stop inclusive)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            bits = [int(x) for x in part.split(":")]
            start, stop = bits[0], bits[1]
            step = bits[2] if len(bits) > 2 else 1
            if step < 1:
                raise argparse.ArgumentTypeError(f"bad step in {part!r}")
            out.extend(range(start, stop + 1, step))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list {text!r}")
    return out


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kcm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"kcm {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default):
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default=fmt_default)
        sp.add_argument("--timings", action="store_true", help="record wall-clock times in the artifact")

    def graph_input(sp):
        sp.add_argument("--input", required=True, help="edge list file")
        sp.add_argument("--string-ids", action="store_true", help="treat node ids as opaque strings")

    def solver(sp, multi):
        conv = _int_list if multi else int
        sp.add_argument("--k", type=conv, required=True)
        sp.add_argument("--b", type=conv, required=True)
        sp.add_argument("--algo", choices=ALGOS, default="sv")
        sp.add_argument("--epsilon", type=float, default=0.05)
        sp.add_argument("--ell", type=int, default=1)
        sp.add_argument("--samples", type=int, default=None, help="override the sample-size bound")
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--prune", action=argparse.BooleanOptionalAction, default=True)
        sp.add_argument("--threads", type=int, default=None)

    sp = sub.add_parser("decompose", help="core numbers of every node")
    graph_input(sp)
    common(sp, "csv")

    sp = sub.add_parser("minimize", help="choose b edges whose deletion shrinks the k-core most")
    graph_input(sp)
    solver(sp, multi=False)
    sp.add_argument("--candidates", help="edge list restricting the candidate set")
    common(sp, "json")

    sp = sub.add_parser("profile", help="DN(%%) over a grid of k and budgets")
    graph_input(sp)
    solver(sp, multi=True)
    common(sp, "csv")

    sp = sub.add_parser("gadget", help="build a hardness-reduction graph from an instance file")
    sp.add_argument("--instance", required=True, help="JSON {type: sk|setcover, n_items, subsets}")
    sp.add_argument("--out", help="edge list path; the sidecar goes to OUT.json")

    sp = sub.add_parser("replay", help="rerun the configuration embedded in an artifact")
    sp.add_argument("artifact")
    sp.add_argument("--out")
    sp.add_argument("--threads", type=int, default=None)
    return p


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


class _Clock:
    def __init__(self):
        self.phases: dict[str, float] = {}

    def phase(self, name: str, start: float) -> None:
        ms = (time.perf_counter() - start) * 1e3
        self.phases[name] = ms
        log.info("%s: %.1f ms", name, ms)


def _load(cfg: RunConfig, clock: _Clock) -> Graph:
    t = time.perf_counter()
    g = read_edge_list(cfg.input, integer_ids=not cfg.string_ids)
    clock.phase("parse_ms", t)
    st = g.parse_stats
    if st.duplicates or st.self_loops:
        log.warning("dropped %d duplicate edges and %d self-loops", st.duplicates, st.self_loops)
    t = time.perf_counter()
    g.core  # noqa: B018 - force the decomposition so its cost is timed here
    clock.phase("decompose_ms", t)
    return g


def cmd_decompose(cfg: RunConfig, out: str | None) -> int:
    clock = _Clock()
    g = _load(cfg, clock)
    summary = {"config": cfg.to_dict(), **decomposition_summary(g)}
    if cfg.timings:
        summary["timings"] = clock.phases
    if cfg.format == "csv":
        _emit(decomposition_csv(g), out)
        if out is not None:
            _emit(_dump(summary), out + ".json")
    else:
        _emit(_dump(summary), out)
    return 0


def _plan(cfg: RunConfig) -> SamplingPlan:
    return SamplingPlan(epsilon=cfg.epsilon, ell=cfg.ell, samples=cfg.samples, seed=cfg.seed)


def cmd_minimize(cfg: RunConfig, out: str | None, threads: int | None) -> int:
    clock = _Clock()
    g = _load(cfg, clock)
    k, b = cfg.k[0], cfg.b[0]
    if k < 1 or b < 1:
        raise ValueError("--k and --b must be >= 1")
    if cfg.candidates:
        cg = read_edge_list(cfg.candidates, integer_ids=not cfg.string_ids)
        pairs = [cg.edge_labels(e) for e in range(cg.m)]
        cs = CandidateSet.from_pairs(g, k, pairs)
    else:
        cs = CandidateSet.all_core_edges(g, k)
    t = time.perf_counter()
    algo = cfg.algorithm
    if algo == "opt":
        sol = exact_kcm(g, k, b, cs)
    elif algo == "exact-sv":
        sol = exact_shapley_solution(g, k, b, cs)
    else:
        sol = solve(g, k, b, algo, cs, _plan(cfg), prune=cfg.prune, threads=threads)
    clock.phase("solve_ms", t)
    doc = {"config": cfg.to_dict(), **sol.to_dict(g)}
    doc["n_k"] = sol.n_k
    doc["candidate_count"] = len(cs)
    if cfg.timings:
        doc["wall_time_ms"] = sol.wall_time_ms
        doc["timings"] = clock.phases
    else:
        doc["wall_time_ms"] = None
    if cfg.format == "csv":
        rows = "u,v,score\n" + "".join(f"{u},{v},{s!r}\n" for u, v, s in doc["per_edge_score"])
        _emit(rows, out)
        if out is not None:
            _emit(_dump(doc), out + ".json")
    else:
        _emit(_dump(doc), out)
    return 0


def cmd_profile(cfg: RunConfig, out: str | None, threads: int | None) -> int:
    clock = _Clock()
    g = _load(cfg, clock)
    algo = cfg.algorithm.upper()
    if algo not in ("SV", "GC", "LD", "JD", "RD"):
        raise ValueError(f"profiles support sv, gc, ld, jd, rd; got {cfg.algorithm}")
    t = time.perf_counter()
    grid = resilience_profile(g, cfg.k, cfg.b, algo, _plan(cfg), prune=cfg.prune, threads=threads)
    clock.phase("solve_ms", t)
    doc = {"config": cfg.to_dict(), **grid.to_dict()}
    if cfg.timings:
        doc["timings"] = clock.phases
    if cfg.format == "csv":
        _emit(grid.to_csv(), out)
        if out is not None:
            _emit(_dump(doc), out + ".json")
    else:
        _emit(_dump(doc), out)
    return 0


def cmd_gadget(instance_path: str, out: str | None) -> int:
    data = json.loads(Path(instance_path).read_text(encoding="utf-8"))
    gg = build_gadget(data)
    side = gg.sidecar()
    if out is None:
        side["edges"] = [list(gg.graph.edge_labels(e)) for e in range(gg.graph.m)]
        _emit(_dump(side), None)
    else:
        _emit(write_edge_list(gg.graph), out)
        _emit(_dump(side), out + ".json")
    return 0


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, input=args.input, format=args.format,
                    string_ids=args.string_ids, timings=args.timings)
    if args.command in ("minimize", "profile"):
        cfg.k = args.k if isinstance(args.k, list) else [args.k]
        cfg.b = args.b if isinstance(args.b, list) else [args.b]
        cfg.algorithm = args.algo
        cfg.epsilon, cfg.ell, cfg.samples = args.epsilon, args.ell, args.samples
        cfg.seed, cfg.prune = args.seed, args.prune
        cfg.candidates = getattr(args, "candidates", None)
    return cfg


def run(cfg: RunConfig, out: str | None, threads: int | None = None) -> int:
    if cfg.command == "decompose":
        return cmd_decompose(cfg, out)
    if cfg.command == "minimize":
        return cmd_minimize(cfg, out, threads)
    if cfg.command == "profile":
        return cmd_profile(cfg, out, threads)
    raise ValueError(f"cannot run command {cfg.command!r}")


def main(argv: list[str] | None = None) -> int:
    level = getattr(logging, os.environ.get("KCM_LOG", "WARNING").upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = _parser().parse_args(argv)
    try:
        if args.command == "gadget":
            return cmd_gadget(args.instance, args.out)
        if args.command == "replay":
            doc = json.loads(Path(args.artifact).read_text(encoding="utf-8"))
            return run(RunConfig(**doc["config"]), args.out, args.threads)
        return run(_config_from_args(args), args.out, getattr(args, "threads", None))
    except (OSError, EdgeListParseError, GadgetError, MissingEdgeError, OracleRefused,
            ValueError, KeyError) as exc:
        print(f"kcm: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
