"""Rank of boundary-box distributions on the N-cycle.

Each triangle s_i puts mass 1/2 on (a_i, 0) and (a_i, 1), so the boundary edge
x_i is deterministic with outcome a_i and the interior edges are uniform.  The
table lists the rank for each parity of sum(a) + [beta].

    python3 scripts/rank_law.py [max_n]
"""

import sys
from fractions import Fraction
from itertools import product

from twistdist import cohomology as coh
from twistdist.dist import TwistedDistribution
from twistdist.polytope import rank_of
from twistdist.scomplex import cycle
from twistdist.sgraph import rank_formula

H = Fraction(1, 2)


def main(max_n: int = 6) -> None:
    print(" N  parity  ranks seen  formula agrees")
    for n in range(3, max_n + 1):
        X = cycle(n)
        seen: dict[int, set[int]] = {0: set(), 1: set()}
        agree = True
        for cls, a in product((0, 1), product((0, 1), repeat=n)):
            beta = {"s1": cls}
            tabs = {f"s{i + 1}": (H, H, 0, 0) if a[i] == 0 else (0, 0, H, H) for i in range(n)}
            p = TwistedDistribution.make(X, beta, tabs)
            r = rank_of(p).rank
            agree &= rank_formula(p).value == r
            seen[(sum(a) + coh.cycle_class(X, beta)) % 2].add(r)
        for parity in (0, 1):
            print(f"{n:2}  {parity:6}  {sorted(seen[parity])!s:10}  {agree}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 6)
