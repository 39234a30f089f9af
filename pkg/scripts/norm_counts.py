"""Count solutions of x * sigma(x) = c in F_{q^2} for every constant c.

    python scripts/norm_counts.py --q 3 5 7 9 11
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

from gtransformal.axioms import count_witnesses, norm_instance
from gtransformal.ff import field_from_order
from gtransformal.gtf import GTransformalField


@dataclass
class Config:
    qs: list = field(default_factory=lambda: [3, 5, 7, 9])
    workers: int = 1


def run(cfg):
    rows = []
    for q in cfg.qs:
        F = field_from_order(q * q)
        Ks = GTransformalField.cyclic_frobenius(F, 2, F.k // 2)
        for c in Ks.constants.field.elements():
            if c == 0:
                continue
            cK = Ks.constants(c)
            n = count_witnesses(Ks, norm_instance(Ks, cK), workers=cfg.workers)
            rows.append({"q": q, "c": cK, "count": n, "expected": q + 1})
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="+", default=Config().qs)
    ap.add_argument("--workers", type=int, default=1)
    a = ap.parse_args()
    cfg = Config(qs=a.q, workers=a.workers)
    rows = run(cfg)
    bad = [r for r in rows if r["count"] != r["expected"]]
    print(json.dumps({"config": asdict(cfg), "rows": rows, "mismatches": len(bad)}, indent=1))
