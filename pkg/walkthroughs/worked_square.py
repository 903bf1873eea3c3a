"""S^0 -> D^1 against D^1 -> S^1, with top map a and bottom map c.

The obstruction class is represented by theta = c - a in Hom(S^0, S^0), so
the square lifts exactly when a == c.  Run: ``python3 walkthroughs/worked_square.py``.
"""

from obstruct.chain import ChainMap, null_homotopy
from obstruct.linalg import ZZ, Matrix
from obstruct.obstruction import LiftingSquare, find_lift, obstruction
from obstruct.oracle import brute_lift
from obstruct.simplicial import disk_projection, generating_cofibration

i = generating_cofibration(1)  # S^0 -> D^1
p = disk_projection(1)         # D^1 -> S^1, fibre S^0


def square(a, c):
    top = ChainMap(i.source, p.source, {0: Matrix(ZZ, 1, 1, [[a]])})
    bottom = ChainMap(i.target, p.target, {1: Matrix(ZZ, 1, 1, [[c]])})
    return LiftingSquare(i, p, top, bottom)


for a, c in [(1, 1), (0, 1), (2, 2), (3, -1)]:
    sq = square(a, c)
    alpha = obstruction(sq)
    theta = alpha.theta[0][0, 0]
    vanishes = null_homotopy(alpha.theta) is not None
    print(f"a={a:2d} c={c:2d}  theta={theta:2d}  class {'vanishes' if vanishes else 'nonzero'}"
          f"  oracle {'lifts' if brute_lift(sq) else 'no lift'}")
    lift = find_lift(sq)
    if lift is not None:
        print("   lift:", {n: m.tolist() for n, m in lift.ell.components.items()})
