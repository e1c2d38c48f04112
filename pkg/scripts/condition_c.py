"""Scale-count condition for flow spaces: exp(-n) versus 1/log(n+1).

For each k prints log|{n : s_n >= exp(-2^k)}| against 2^k log R.
"""

import argparse
import math

from seqspace_greedy import condition_c_check
from seqspace_greedy.sequences import EnumeratedCount, ExpDecayCount, InverseLogCount, ScaleSequence


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--R", type=float, default=2.0)
    ap.add_argument("--kmax", type=int, default=8)
    a = ap.parse_args(argv)

    for name, counts in [("exp(-n)", ExpDecayCount(1.0)), ("1/log(n+1)", InverseLogCount())]:
        v = condition_c_check(counts, a.R, a.kmax)
        print(f"s_n = {name}: {v.verdict}")
        for k in range(a.kmax + 1):
            lc = counts.log_count(k)
            print(f"  k={k:2d}  log count {lc:14.6g}  bound {2.0**k * math.log(a.R):14.6g}")
        if "witness_k" in v.evidence:
            print(f"  first violation at k = {v.evidence['witness_k']}")

    enum = EnumeratedCount(ScaleSequence((), "exp(-n)"), 10**6)
    print("enumerated exp(-n) counts:", [enum.count(k)[0] for k in range(5)])


if __name__ == "__main__":
    main()
