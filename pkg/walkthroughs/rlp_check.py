"""Which fibrations lift against S^{n-1} -> D^n?

The obstruction-based verdict is compared with the fibre homology in degree
n - 1 on a handful of random fibrations, and failed cases come with a
witness square that the lift oracle rejects.
"""

import random

from obstruct.generate import random_fibration
from obstruct.linalg import ZZ
from obstruct.simplicial import rlp_equivalence_check

rng = random.Random(2)
for n in (1, 2, 3):
    for kind in ("disk", "simplex"):
        p = random_fibration(rng, ZZ, [n - 2, n - 1, n])
        v = rlp_equivalence_check(p, n, kind)
        line = (f"n={n} {kind:7s} H_{n - 1}(F) = {str(v.homology):16s} "
                f"{'RLP' if v.rlp else 'no RLP'} over {v.squares_tested} basis squares")
        if v.witness is not None:
            line += f", witness rejected by oracle: {v.witness_rejected}"
        print(line)
