"""Greedy ratio of the alternating-exponent probe, and a random search for worse vectors.

The probe is 1.01 e_2 + e_1 + e_3 + e_5 + e_7 + e_9 with exponents 1, 2, 1, 2, ...
Greedy removes the lone exponent-2 coordinate while the best single removal
takes an exponent-1 one.
"""

import argparse

import numpy as np

from seqspace_greedy import ExponentSequence, FiniteVector, NakanoSpace, OscillatingTail, greedy_report
from seqspace_greedy.greedy import random_vector


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--support", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)

    space = NakanoSpace(ExponentSequence((), OscillatingTail((1.0, 2.0))))
    probe = FiniteVector.from_pairs([(1, 1), (2, 1.01), (3, 1), (5, 1), (7, 1), (9, 1)])
    rep = greedy_report(space, probe, 1)
    print(f"probe: greedy set {rep.greedy_set}  residual {rep.residual_norm:.9f}  sigma_1 {rep.sigma:.9f}  ratio {rep.ratio:.9f}")

    rng = np.random.default_rng(a.seed)
    best = (0.0, None, None)
    for _ in range(a.trials):
        x = random_vector(rng, a.support, 2 * a.support)
        for N in range(1, a.support):
            r = greedy_report(space, x, N).ratio
            if r > best[0]:
                best = (r, N, x)
    r, N, x = best
    print(f"random search ({a.trials} vectors, support {a.support}): max ratio {r:.6f} at N={N}")
    print("  entries:", ", ".join(f"{i}:{v:+.4f}" for i, v in zip(x.indices, x.values)))


if __name__ == "__main__":
    main()
