"""Sample normal closures <h>^E and tabulate their levels and sandwich status.

    python scripts/sandwich_sampling.py --type A2 --ring mod:8 --samples 50
"""

from __future__ import annotations

import argparse
import collections
import json
import random
from dataclasses import asdict, dataclass

from chevalley import group
from chevalley.normal import congruence, elementary, normal_closure, sandwich_check
from chevalley.rings import Ring, all_ideals


@dataclass
class Config:
    type: str = "A2"
    ring: str = "mod:4"
    samples: int = 100
    seed: int = 0


def run(cfg: Config) -> dict:
    rng = random.Random(cfg.seed)
    G = group(cfg.type, Ring.parse(cfg.ring))
    pools = [elementary(G).elements]
    for I in all_ideals(G.ring):
        if I.gen not in (0, 1, G.ring.modulus):
            pools.append(congruence(G, I)[0].elements)
    levels = collections.Counter()
    orders = collections.Counter()
    bad = []
    for i in range(cfg.samples):
        pool = pools[i % len(pools)]
        h = G.element(pool[rng.randrange(len(pool))])
        rep = sandwich_check(normal_closure(G, [h]), strict=False)
        levels[rep.ideal.gen] += 1
        orders[rep.order] += 1
        if not rep.ok:
            bad.append(rep.to_json())
    return {"config": asdict(cfg), "levels": dict(sorted(levels.items())),
            "orders": dict(sorted(orders.items())), "failures": bad}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for k, v in asdict(Config()).items():
        ap.add_argument("--" + k, type=type(v), default=v)
    print(json.dumps(run(Config(**vars(ap.parse_args()))), indent=2))
