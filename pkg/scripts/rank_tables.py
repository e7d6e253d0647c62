"""Print band census, bridge quiver and rank tables for the bundled presets.

    python3 scripts/rank_tables.py [preset ...] [--bounds L,K,P]
"""
import argparse
from collections import Counter
from dataclasses import dataclass

from stringz.bands import analyse_bands
from stringz.bridge import ALL, ASCENDING, DESCENDING, bridge_quiver, indent
from stringz.presentation import PRESETS, load_preset
from stringz.spectrum import Adic, Bounds, Generic, Prufer, cb_rank, enumerate_points, kg_dimension


@dataclass
class TableConfig:
    presets: tuple[str, ...] = PRESETS
    bounds: Bounds = Bounds()


def band_table(name: str) -> list[str]:
    p = load_preset(name)
    census = analyse_bands(p)
    if not census.domestic:
        a, b = census.witness
        return [f"  non-domestic: {a} / {b}"]
    q = bridge_quiver(p)
    header = ("band", "ind", "asc", "desc", "prufer", "adic", "generic")
    rows = ["  {:<16} {:>3} {:>3} {:>4} {:>6} {:>4} {:>7}".format(*header)]
    for c in census.classes:
        rows.append(f"  {str(c):<16} {indent(q, c, ALL):>3} {indent(q, c, ASCENDING):>3} "
                    f"{indent(q, c, DESCENDING):>4} {cb_rank(p, Prufer(c.rep, 's')).rank:>6} "
                    f"{cb_rank(p, Adic(c.rep, 's')).rank:>4} {cb_rank(p, Generic(c.rep)).rank:>7}")
    for e in q.edges:
        rows.append(f"  bridge {q.classes[e.src]} -> {q.classes[e.dst]} via {e.word} ({e.flag})")
    return rows


def main(cfg: TableConfig):
    for name in cfg.presets:
        p = load_preset(name)
        kg = kg_dimension(p)
        print(f"{name}: KG dimension {'undefined' if kg is None else kg}")
        for row in band_table(name):
            print(row)
        if kg is not None:
            hist = Counter(r.rank for r in enumerate_points(p, cfg.bounds))
            print("  points by rank: " + ", ".join(f"{k}:{hist[k]}" for k in sorted(hist)))
        print()


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("presets", nargs="*", default=list(PRESETS))
    ap.add_argument("--bounds", default="4,2,2")
    a = ap.parse_args()
    main(TableConfig(tuple(a.presets), Bounds(*map(int, a.bounds.split(",")))))
