"""Print the democracy table of a space descriptor as CSV.

    python scripts/democracy_table.py configs/nakano_alt12.json --Nmax 64 --window 128
"""

import argparse
import sys

from seqspace_greedy import democracy_functions
from seqspace_greedy.descriptors import load_space


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("space")
    ap.add_argument("--Nmax", type=int, default=64)
    ap.add_argument("--window", type=int, default=None)
    a = ap.parse_args(argv)
    table = democracy_functions(load_space(a.space), a.Nmax, a.window or 2 * a.Nmax)
    sys.stdout.write(table.to_csv())


if __name__ == "__main__":
    main()
