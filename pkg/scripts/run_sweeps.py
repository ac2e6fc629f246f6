"""Run every prediction sweep and write one JSONL file per family.

    python3 scripts/run_sweeps.py [--out results/] [--max-n 100] [--max-q 49]

Prints a per-sweep tally and exits non-zero if any report mismatches.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from dotgraphs.ring import factorize
from dotgraphs.theorems import (
    check_center_vertex,
    check_td_connectivity,
    check_totally_disconnected,
    predict_equivalence,
    predict_field_graphs,
    predict_UD_Zn,
    predict_ZD_R1R2,
    verify,
)


def field_reports(max_q):
    for q in range(2, max_q + 1):
        f = factorize(q)
        if f.r != 1:
            continue
        p, d = f.pairs[0]
        for pred in predict_field_graphs(p, d).values():
            yield verify(pred)
        yield verify(predict_equivalence("EUD_field", p, d))


def sweeps(max_n, max_q):
    return {
        "fields": lambda: field_reports(max_q),
        "ud_zn": lambda: (verify(predict_UD_Zn(n)) for n in range(3, max_n + 1)),
        "eud_zn": lambda: (verify(predict_equivalence("EUD_Zn", n)) for n in range(3, max_n + 1)),
        "zd_r1r2": lambda: (verify(predict_ZD_R1R2(n)) for n in range(2, max_n + 1)),
        "ezd_r1r2": lambda: (verify(predict_equivalence("EZD_R1R2", n)) for n in range(2, max_n + 1)),
        "odd_arity": lambda: (check_totally_disconnected(n, k) for n in (4, 6, 8, 10, 12) for k in (1, 3)),
        "center": lambda: (check_center_vertex(n) for n in range(4, 41, 2)),
        "td_connectivity": lambda: (check_td_connectivity(n) for n in range(2, 41)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--max-n", type=int, default=100)
    ap.add_argument("--max-q", type=int, default=49)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    failed = 0
    for name, run in sweeps(args.max_n, args.max_q).items():
        t0 = time.perf_counter()
        reports = list(run())
        bad = [r for r in reports if not r.match]
        failed += len(bad)
        with open(out / f"{name}.jsonl", "w", encoding="utf-8", newline="\n") as fh:
            for r in reports:
                fh.write(r.to_line() + "\n")
        print(f"{name:16s} {len(reports):4d} reports  {len(reports) - len(bad):4d} match  "
              f"{time.perf_counter() - t0:6.2f}s")
        for r in reports:
            for c in r.claims:
                if not c["consistent"]:
                    print(f"  inconsistent claim at {r.params}: {c['claim']}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
