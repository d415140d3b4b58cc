#!/usr/bin/env python3
"""Round-trip every census member through slice and back, and brute-force slices too."""

import argparse
import json
import sys

from causal_slices.census import enumerate_midsections, enumerate_slices_bruteforce, roundtrip_report


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--disc-cells", type=int, default=7)
    p.add_argument("--sphere-cells", type=int, default=13)
    p.add_argument("--tetras", type=int, default=5, help="brute-force slice size bound")
    p.add_argument("--jobs", type=int, default=1)
    args = p.parse_args()
    ok = True
    slices = enumerate_slices_bruteforce("disc", args.tetras)
    mids = enumerate_midsections("disc", args.tetras)
    for n in range(1, args.tetras + 1):
        same = slices[n].count == mids[n].count
        ok &= same
        print(f"size {n}: {slices[n].count} slices, {mids[n].count} midsections{'' if same else '  MISMATCH'}")
    for kind, n in (("disc", args.disc_cells), ("sphere", args.sphere_cells)):
        rep = roundtrip_report(kind, n, jobs=args.jobs)
        ok &= rep.ok
        print(json.dumps({k: v for k, v in rep.to_dict().items() if k != "failures"}),
              f"failures={len(rep.failures)}")
        for f in rep.failures[:10]:
            print("  ", f)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
