#!/usr/bin/env python3
"""Write disc and sphere midsection censuses to census/{disc,sphere}/."""

import argparse
import time
from pathlib import Path

from causal_slices.census import Kind, counts_table, default_budget, enumerate_midsections, write_census


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", default="census")
    p.add_argument("--disc-cells", type=int, default=7)
    p.add_argument("--sphere-cells", type=int, default=13)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    args = p.parse_args()
    for kind, n in ((Kind.DISC, args.disc_cells), (Kind.SPHERE, args.sphere_cells)):
        t0 = time.perf_counter()
        records = enumerate_midsections(kind, n, shards=args.shards, jobs=args.jobs,
                                        budget=max(n, default_budget(kind)))
        write_census(records, Path(args.out) / kind.value, kind.value)
        print(counts_table(kind.value, {k: r.count for k, r in records.items()}), end="")
        print(f"{kind.value}: {time.perf_counter() - t0:.1f}s\n")


if __name__ == "__main__":
    main()
