"""Frattini subgroups and quotient-map cover verdicts for all groups of small order."""

import argparse
import json
from dataclasses import asdict, dataclass

from gtransformal.groups import (frattini_subgroup, is_frattini_cover, normal_subgroups,
                                 quotient)
from gtransformal.smallgroups import all_small_groups


@dataclass
class Config:
    max_order: int = 24
    cross_check: bool = True


def run(cfg):
    rows = []
    for G in all_small_groups(cfg.max_order):
        covers = 0
        quots = 0
        for N in normal_subgroups(G):
            if len(N) == 1:
                continue
            _, pi = quotient(G, N)
            quots += 1
            covers += is_frattini_cover(pi, cross_check=cfg.cross_check)
        rows.append({"order": G.order, "name": G.name or "?", "frattini_order": len(frattini_subgroup(G)),
                     "proper_quotients": quots, "frattini_quotients": covers})
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=24)
    ap.add_argument("--no-cross-check", action="store_true")
    a = ap.parse_args()
    cfg = Config(a.max_order, not a.no_cross_check)
    rows = run(cfg)
    for r in rows:
        print(f"{r['order']:3d} {r['name']:<24} |Phi|={r['frattini_order']:<3d} "
              f"frattini quotients {r['frattini_quotients']}/{r['proper_quotients']}")
    print(json.dumps({"config": asdict(cfg), "groups": len(rows)}))
