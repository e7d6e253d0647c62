"""Compare graph-map counts with the linear-algebra Hom oracle on random string pairs.

    python3 scripts/hom_sweep.py --pairs 500 --max-length 8 --seed 1
"""
import argparse
import random
import time
from dataclasses import dataclass

from stringz.homoracle import graph_map_count, hom_dim_oracle, string_module
from stringz.presentation import PRESETS, load_preset
from stringz.words import random_string


@dataclass
class SweepConfig:
    presets: tuple[str, ...] = tuple(n for n in PRESETS if n != "gp23")
    pairs: int = 500
    max_length: int = 8
    seed: int = 1


def sweep(cfg: SweepConfig) -> int:
    rng = random.Random(cfg.seed)
    failures = 0
    for name in cfg.presets:
        p = load_preset(name)
        t0 = time.perf_counter()
        bad = total = 0
        for _ in range(cfg.pairs):
            u, v = random_string(p, rng, cfg.max_length), random_string(p, rng, cfg.max_length)
            count = graph_map_count(p, u, v)[0]
            total += count
            if count != hom_dim_oracle(string_module(p, u), string_module(p, v)):
                bad += 1
                print(f"  mismatch over {name}: {u} -> {v}")
        failures += bad
        print(f"{name:<6} pairs={cfg.pairs} mean dim={total / cfg.pairs:.2f} "
              f"mismatches={bad} ({time.perf_counter() - t0:.2f}s)")
    return failures


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=500)
    ap.add_argument("--max-length", type=int, default=8)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()
    raise SystemExit(1 if sweep(SweepConfig(pairs=a.pairs, max_length=a.max_length, seed=a.seed)) else 0)
