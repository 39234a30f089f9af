"""Walk the Z/n-closure tower of F_q and certify irreducibles of degree <= D split."""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

from gtransformal.closure import ClosureTower, certify_gclosed, closure_degree, constants_degree


@dataclass
class Config:
    q: int = 2
    n: int = 6
    degree: int = 5
    levels: Optional[int] = None   # default: every level the tower allows
    workers: int = 1
    seed: int = 0


def run(cfg):
    T = ClosureTower(cfg.q, cfg.n)
    levels = T.available_levels() if cfg.levels is None else list(range(cfg.levels))
    t0 = time.perf_counter()
    info = []
    for L in levels:
        lev = T.level(L)
        info.append({"level": L, "t": lev.t, "C": f"{lev.C.p}^{lev.C.k}", "K_degree": lev.K.k,
                     "strict": T.check_level(L)})
    rep = certify_gclosed(T, cfg.degree, levels[-1], seed=cfg.seed, workers=cfg.workers)
    return {"closure_degree": str(closure_degree(cfg.q, cfg.n)),
            "constants_degree": str(constants_degree(cfg.q, cfg.n)),
            "levels": info, "status": rep.status, "certified": len(rep.rows),
            "survivors": len(rep.survivors), "seconds": round(time.perf_counter() - t0, 2)}


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    d = Config()
    ap.add_argument("--q", type=int, default=d.q)
    ap.add_argument("--n", type=int, default=d.n)
    ap.add_argument("--degree", type=int, default=d.degree)
    ap.add_argument("--levels", type=int, default=None)
    ap.add_argument("--workers", type=int, default=1)
    a = ap.parse_args()
    cfg = Config(a.q, a.n, a.degree, a.levels, a.workers)
    print(json.dumps({"config": asdict(cfg), **run(cfg)}, indent=1))
