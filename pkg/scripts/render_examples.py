"""Write DOT files for small example graphs, plus a decomposition table.

    python3 scripts/render_examples.py [--out figures/]

Render with GraphViz, e.g. ``neato -Tsvg figures/ud_zn10.dot > ud_zn10.svg``.
"""

import argparse
from pathlib import Path

from dotgraphs.construct import build
from dotgraphs.graph import export_dot, signature

EXAMPLES = [
    ("ud_gf4", "gf:2:2", "ud"),
    ("ud_zn5", "zn:5", "ud"),
    ("ud_zn8", "zn:8", "ud"),
    ("ud_zn10", "zn:10", "ud"),
    ("zd_zn3", "zn:3", "zd"),
    ("td_zn6", "zn:6", "td"),
    ("zdr1r2_zn6", "zn:6", "zdr1r2"),
    ("eud_zn20", "zn:20", "eud"),
    ("eud_zn34", "zn:34", "eud"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    for stem, ring, kind in EXAMPLES:
        g = build(ring, kind)
        with open(out / f"{stem}.dot", "w", encoding="utf-8", newline="\n") as fh:
            export_dot(g, fh)
        print(f"{g.name:16s} {len(g.vertices):5d} V {len(g.edges):6d} E   {signature(g)}")


if __name__ == "__main__":
    main()
