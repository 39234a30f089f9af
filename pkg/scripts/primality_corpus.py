"""Primality verdicts on the seeded random corpus against the point-count oracle."""

import argparse
import json
import os
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from corpus import corpus  # noqa: E402
from oracles import prime_by_points  # noqa: E402

from gtransformal.groebner import is_prime_zero_dim  # noqa: E402


@dataclass
class Config:
    size: int = 200
    seed: int = 2024


def run(cfg):
    stats = Counter()
    bad = []
    t0 = time.perf_counter()
    for c in corpus(cfg.size, cfg.seed):
        v = is_prime_zero_dim(c.ideal)
        stats[v.status] += 1
        if v.is_prime != prime_by_points(c.ideal, c.dim) or not v.verify(c.ideal):
            bad.append(c.label)
    return {"verdicts": dict(stats), "disagreements": bad,
            "seconds": round(time.perf_counter() - t0, 2)}


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    a = ap.parse_args()
    cfg = Config(a.size, a.seed)
    print(json.dumps({"config": asdict(cfg), **run(cfg)}, indent=1))
