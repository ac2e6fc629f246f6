"""Command-line front end.

    dotgraphs build  --ring zn:10 --graph ud [-o g.dot]
    dotgraphs export --ring gf:2:2 --graph ud -o g.dot
    dotgraphs verify --ring zn:34 --graph ud [--json]
    dotgraphs sweep  --graph ud --range 3..60 [--family zn|gf] [-o reports.jsonl]

Exit codes: 0 success / all predictions match, 1 some mismatch,
2 invalid parameters, 3 vertex cap exceeded.  ``DOTGRAPH_VERTEX_CAP``
overrides the default cap of 20000 vertices; ``--cap`` overrides both.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from . import construct, theorems
from .construct import GRAPH_KINDS, VertexCapExceeded
from .graph import components, export_dot, signature
from .ring import ModularRing, RingSpec, parse_ring

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    command: str
    graph: str
    ring: RingSpec | None = None
    k: int = 2
    output: str | None = None
    cap: int | None = None
    sweep_range: tuple[int, int] | None = None
    family: str = "zn"
    as_json: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.graph not in GRAPH_KINDS:
            raise ValueError(f"unknown graph {self.graph!r}")
        if self.k < 1:
            raise ValueError("arity k must be >= 1")
        if self.graph in ("eud", "ezdr1r2") and self.k != 2:
            raise ValueError(f"--graph {self.graph} requires k = 2")
        if self.graph in ("zdr1r2", "ezdr1r2"):
            if self.k != 2:
                raise ValueError(f"--graph {self.graph} requires k = 2")
            if self.ring is not None and not isinstance(self.ring, ModularRing):
                raise ValueError(f"--graph {self.graph} requires a zn:<n> ring")
            if self.command == "sweep" and self.family != "zn":
                raise ValueError(f"--graph {self.graph} sweeps need --family zn")
        if self.command == "sweep":
            if self.sweep_range is None or self.sweep_range[0] > self.sweep_range[1]:
                raise ValueError("sweep needs a nonempty --range lo..hi")
        elif self.ring is None:
            raise ValueError(f"{self.command} needs --ring")
        if self.cap is not None and self.cap < 1:
            raise ValueError("--cap must be positive")


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"bad range {text!r}; expected lo..hi")
    return int(lo), int(hi)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dotgraphs", description="Dot product graphs over Z_n and GF(p^d).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, ring_required=True):
        if ring_required:
            p.add_argument("--ring", required=True, help="zn:<n> or gf:<p>:<d>")
        p.add_argument("--graph", required=True, choices=GRAPH_KINDS)
        p.add_argument("-k", "--arity", type=int, default=2, dest="k")
        p.add_argument("--cap", type=int, default=None, help="vertex cap override")
        p.add_argument("-o", "--output", default=None)

    common(sub.add_parser("build", help="build a graph and print its decomposition"))
    common(sub.add_parser("export", help="write a graph as GraphViz DOT"))
    p = sub.add_parser("verify", help="check every applicable prediction for one graph")
    common(p)
    p.add_argument("--json", action="store_true", dest="as_json", help="emit JSON lines")
    p = sub.add_parser("sweep", help="verify the headline prediction over a parameter range")
    common(p, ring_required=False)
    p.add_argument("--range", required=True, dest="sweep_range", help="inclusive lo..hi")
    p.add_argument("--family", choices=("zn", "gf"), default="zn",
                   help="zn: sweep n of Z_n; gf: sweep q = p^d (non-prime-powers skipped)")
    p.add_argument("-j", "--jobs", type=int, default=1)
    return ap


def make_config(argv: list[str] | None = None) -> CliConfig:
    ns = _parser().parse_args(argv)
    return CliConfig(
        command=ns.command,
        graph=ns.graph,
        ring=parse_ring(ns.ring) if getattr(ns, "ring", None) else None,
        k=ns.k,
        output=ns.output,
        cap=ns.cap,
        sweep_range=parse_range(ns.sweep_range) if getattr(ns, "sweep_range", None) else None,
        family=getattr(ns, "family", "zn"),
        as_json=getattr(ns, "as_json", False),
        jobs=getattr(ns, "jobs", 1),
    )


def _write_dot(g, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        export_dot(g, fh)


def run_build(cfg: CliConfig, out=None) -> int:
    out = out or sys.stdout
    g = construct.build(cfg.ring, cfg.graph, cfg.k, cfg.cap)
    comps = components(g)
    if not g.edges:
        status = "totally disconnected"
    elif len(comps) == 1:
        status = "connected"
    else:
        status = "disconnected"
    print(signature(g), file=out)
    print(f"{g.name}: {len(g.vertices)} vertices, {len(g.edges)} edges, "
          f"{len(comps)} component{'' if len(comps) == 1 else 's'}, {status}", file=out)
    if cfg.output:
        _write_dot(g, cfg.output)
    return EXIT_OK


def run_export(cfg: CliConfig, out=None) -> int:
    out = out or sys.stdout
    g = construct.build(cfg.ring, cfg.graph, cfg.k, cfg.cap)
    if cfg.output:
        _write_dot(g, cfg.output)
    else:
        export_dot(g, out)
    return EXIT_OK


def _emit(reports, cfg: CliConfig, out, err) -> int:
    """Write reports as they arrive; ``reports`` may be a lazy iterable."""
    out, err = out or sys.stdout, err or sys.stderr
    bad, total = [], 0
    fh = open(cfg.output, "w", encoding="utf-8", newline="\n") if cfg.output else None
    try:
        for r in reports:
            total += 1
            if not r.match:
                bad.append(r)
            text = r.to_line() if cfg.command == "sweep" or cfg.as_json else r.summary()
            print(text, file=fh or out, flush=cfg.command == "sweep")
    finally:
        if fh:
            fh.close()
    for r in bad:
        print(f"mismatch: {r.theorem_id} {r.params} diff={r.mismatch_detail}", file=err)
    if cfg.command == "sweep":
        print(f"{total} reports, {total - len(bad)} match", file=err)
    return EXIT_MISMATCH if bad else EXIT_OK


def run_verify(cfg: CliConfig, out=None, err=None) -> int:
    items = theorems.applicable_predictions(cfg.ring, cfg.graph, cfg.k)
    if not items:
        print(f"no prediction applies to {cfg.graph} over {cfg.ring} with k={cfg.k}", file=err or sys.stderr)
        return EXIT_INVALID
    reports = [theorems.run_item(it, cfg.cap) for it in items]
    return _emit(reports, cfg, out, err)


def run_sweep(cfg: CliConfig, out=None, err=None) -> int:
    lo, hi = cfg.sweep_range
    task = partial(theorems.sweep_reports, cfg.family, cfg.graph, k=cfg.k, cap=cfg.cap)
    values = range(lo, hi + 1)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            # map yields in parameter order regardless of completion order
            return _emit((r for b in pool.map(task, values) for r in b), cfg, out, err)
    return _emit((r for v in values for r in task(v)), cfg, out, err)


COMMANDS = {"build": run_build, "export": run_export, "verify": run_verify, "sweep": run_sweep}


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = make_config(argv)
    except SystemExit as e:  # argparse usage errors already exit with 2
        return int(e.code or 0)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return COMMANDS[cfg.command](cfg)
    except VertexCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
