"""Bruhat cell sizes |B w B| over a small field, from the decomposition routine.

    python scripts/cell_sizes.py --type B2 --p 3
"""

from __future__ import annotations

import argparse
import collections
import json
from dataclasses import asdict, dataclass

from chevalley import group
from chevalley.decomposition import bruhat_cell
from chevalley.normal import elementary
from chevalley.rings import Ring


@dataclass
class Config:
    type: str = "A2"
    p: int = 2


def run(cfg: Config) -> dict:
    G = group(cfg.type, Ring.gf(cfg.p))
    sizes = collections.Counter(bruhat_cell(x).word for x in elementary(G))
    # |BwB| = q^l(w) |B| in the adjoint group
    borel = sizes[()]
    rows = {"".join(str(i + 1) for i in w.word) or "e": {"size": sizes[w.word], "expected": cfg.p ** w.length * borel}
            for w in G.phi.weyl_group}
    return {"config": asdict(cfg), "order": sum(sizes.values()), "cells": rows,
            "ok": all(r["size"] == r["expected"] for r in rows.values())}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for k, v in asdict(Config()).items():
        ap.add_argument("--" + k, type=type(v), default=v)
    print(json.dumps(run(Config(**vars(ap.parse_args()))), indent=2))
