"""Which covariance diagonal decides entanglement?

Scans (p, theta) and reports where each of Cxx, Cyy, Czz is negative, and
whether the full pipeline (covariance min-eigenvalue and partial transpose)
ever flags a point that Cxx alone misses.

    python scripts/diagonal_map.py [STEPS]
"""
import math
import sys

import numpy as np

from channelspin import channel_state as cs
from channelspin import entanglement as ent


def main(steps=201):
    steps = int(steps)
    counts = {"Cxx": 0, "Cyy": 0, "Czz": 0}
    missed_by_cxx = 0
    ppt_only = 0
    min_czz = math.inf
    for p in np.linspace(0, 1, steps):
        for th in np.linspace(0, math.pi / 2, steps):
            diag = ent.canonical_diagonals(p, th)
            for name, val in zip(counts, diag):
                counts[name] += val < 0
            min_czz = min(min_czz, diag[2])
            v = ent.verdict(cs.ChannelConfig.from_slf(p, th))
            missed_by_cxx += v.entangled and diag[0] >= 0
            ppt_only += v.ppt_min_eig < -1e-10 and not v.entangled
    total = steps * steps
    print(f"grid points: {total}")
    for name, n in counts.items():
        print(f"{name} < 0 at {n} points")
    print(f"min Czz: {min_czz:.6g}")
    print(f"entangled but Cxx >= 0: {missed_by_cxx}")
    print(f"PPT-negative but covariance not: {ppt_only}")


if __name__ == "__main__":
    main(*sys.argv[1:])
