"""Regenerate the CSV tables shipped with the package.

Writes the two dimension tables and the counting sequences for the small
ratio indices into --outdir, one file per table, through the CLI so the
files match what a user would get by hand.
"""

import argparse
import os
import sys

from goldengasket.cli import main as cli


def run(outdir):
    os.makedirs(outdir, exist_ok=True)
    jobs = [
        (["table1"], "dimension_table.csv"),
        (["table2"], "dimension_grid.csv"),
        (["uniq", "--m", "2", "-n", "15"], "unique_addresses_m2.csv"),
        (["uniq", "--m", "3", "-n", "15"], "unique_addresses_m3.csv"),
    ]
    for m in (3, 4, 5):
        for which in ("h", "p"):
            jobs.append(
                (["seq", "--which", which, "--m", str(m), "-n", "20"],
                 "seq_%s_m%d.csv" % (which, m))
            )
    for argv, name in jobs:
        target = os.path.join(outdir, name)
        code = cli(argv + ["-o", target])
        if code != 0:
            return code
        print(target)
    return 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="tables")
    args = ap.parse_args()
    return run(args.outdir)


if __name__ == "__main__":
    sys.exit(main())
