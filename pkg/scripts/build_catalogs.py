"""Write one JSON-lines catalog per n, with canonical digests for small n.

Usage:
    python scripts/build_catalogs.py OUTDIR [--n-max 100] [--digest-max 12] [--filter rho-lt-theta]
"""

import argparse
from pathlib import Path

from frcodes.enumeration import FilterPolicy, catalog_to_jsonl, generate_catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--n-max", type=int, default=100)
    ap.add_argument("--digest-max", type=int, default=12,
                    help="largest n for which canonical digests are computed")
    ap.add_argument("--filter", default="rho-lt-theta")
    args = ap.parse_args()

    policy = FilterPolicy.from_name(args.filter)
    args.outdir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for n in range(3, args.n_max + 1):
        entries = generate_catalog(n, policy, digests=n <= args.digest_max)
        failures += sum(not e.valid for e in entries)
        (args.outdir / f"n{n:03d}.jsonl").write_text(catalog_to_jsonl(entries))
        print(f"n={n}: {len(entries)} tuples, {sum(e.valid for e in entries)} constructed")
    print(f"construction failures: {failures}")


if __name__ == "__main__":
    main()
