"""Count admissible FR parameter tuples per n under each filter policy.

Usage:
    python scripts/table2.py [--n-max 20] [--dedupe]
"""

import argparse

from frcodes.enumeration import FilterPolicy, count_table

PUBLISHED = {3: 1, 4: 3, 5: 4, 6: 10, 7: 8, 8: 16, 9: 19, 10: 28}

POLICIES = {
    "none": FilterPolicy(False, False),
    "rho<theta": FilterPolicy(True, False),
    "2theta>n": FilterPolicy(False, True),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--dedupe", action="store_true")
    args = ap.parse_args()

    tables = {name: count_table(3, args.n_max, pol, dedupe=args.dedupe) for name, pol in POLICIES.items()}
    header = ["n", "published"] + list(POLICIES)
    print("  ".join(f"{h:>10}" for h in header))
    for i, n in enumerate(range(3, args.n_max + 1)):
        cells = [str(n), str(PUBLISHED.get(n, "-"))]
        for name in POLICIES:
            row = tables[name][i]
            cell = str(row.admissible)
            if row.constructed != row.admissible:
                cell += f"({row.constructed})"
            cells.append(cell)
        print("  ".join(f"{c:>10}" for c in cells))


if __name__ == "__main__":
    main()
