#!/usr/bin/env python3
"""Full reconstruction census for the 24-curve configuration.

Runs the tiered search at the default multiplicity cap and at a widened
cap (the anomaly scan), prints census sizes per tier, validates every
surviving solution, and cross-checks the result against the branched
double-cover pullback of the hexagon.
"""

import argparse
import sys
import time

from evenlat.curves import present, triple_double_tower
from evenlat.lattice import Lattice, discriminant_group
from evenlat.reconstruct import q_gram_of, reconstruct_24, relations_hold
import evenlat.refdata as rd


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tier", default="auto", choices=("auto", "1", "2", "3"))
    parser.add_argument("--max-cap", type=int, default=4,
                        help="largest per-pair multiplicity to scan")
    args = parser.parse_args()

    t0 = time.time()
    rec = reconstruct_24(args.tier)
    sizes = rec.census_sizes()
    print(f"tier policy {args.tier!r}: used tier {rec.tier_used} "
          f"({time.time() - t0:.1f}s)")
    print(f"  census: tier1={sizes['tier1']} tier2={sizes['tier2']} tier3={sizes['tier3']}")

    for k, gram in enumerate(rec.tier2):
        q_ok = q_gram_of(gram).entries == rd.Q_GRAM.entries
        r_ok = relations_hold(gram)
        lat = Lattice(q_gram_of(gram))
        disc = discriminant_group(lat).invariant_factors
        print(f"  tier-2 solution {k}: rank-6 block printed={q_ok} "
              f"relations={r_ok} disc={disc}")

    for cap in range(3, args.max_cap + 1):
        t1 = time.time()
        wide = reconstruct_24(args.tier, multiplicity_cap=cap)
        ws = wide.census_sizes()
        extra2 = ws["tier2"] - sizes["tier2"]
        extra3 = ws["tier3"] - sizes["tier3"]
        print(f"  anomaly scan cap={cap}: tier1={ws['tier1']} "
              f"new tier2={extra2} new tier3={extra3} ({time.time() - t1:.1f}s)")

    tower = triple_double_tower()
    shapes = []
    for opt in tower.final.options:
        lat = present(opt.config).lattice
        shapes.append((lat.rank, lat.det))
    good = shapes.count((16, -64))
    print(f"  hexagon pullback census: {len(tower.final.options)} sheet assignments, "
          f"{good} with the rank-16 determinant -64 shape")
    if rec.tier_used >= 2 and len(rec.solutions) == 1:
        print("  selected solution is unique; verification may proceed")
        return 0
    print("  census ambiguous at the selected tier; inspect before use")
    return 1


if __name__ == "__main__":
    sys.exit(main())
