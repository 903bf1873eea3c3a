"""Obstruction classes moved along cobase change, retracts and weak equivalences.

For each random instance the transported verdict is printed next to the
oracle's answer on the transported square.
"""

import random

from obstruct.chain import direct_sum_map, identity_map, summand_inclusion, summand_projection
from obstruct.generate import (random_chain_map, random_cofibration, random_complex,
                               random_fibration_against, random_square_for)
from obstruct.linalg import ZZ
from obstruct.model import factor_cof_then_acyclic_fib
from obstruct.obstruction import cobase_change, retract_transport, weak_equivalence_transport
from obstruct.oracle import brute_lift


def cobase(rng):
    i = random_cofibration(rng, ZZ)
    t = cobase_change(i, random_chain_map(rng, i.source, random_complex(rng, ZZ)))
    return t, t.i2


def retract(rng):
    i2, j = random_cofibration(rng, ZZ), random_cofibration(rng, ZZ)
    srcs, tgts = [i2.source, j.source], [i2.target, j.target]
    t = retract_transport(i2, direct_sum_map(i2, j),
                          summand_inclusion(srcs, 0), summand_inclusion(tgts, 0),
                          summand_projection(srcs, 0), summand_projection(tgts, 0))
    return t, i2


def cylinder(rng):
    # i is weakly equivalent to the cofibration into its mapping cylinder
    i = random_cofibration(rng, ZZ)
    fac = factor_cof_then_acyclic_fib(i)
    return weak_equivalence_transport(fac.first, i, identity_map(i.source), fac.second), i


rng = random.Random(7)
for name, build in [("cobase change", cobase), ("retract", retract),
                    ("weak equivalence", cylinder)]:
    agree = obstructed = 0
    for _ in range(20):
        t, i = build(rng)
        sq = random_square_for(rng, i, random_fibration_against(rng, i))
        lifts = brute_lift(sq) is not None
        agree += t.vanishes(sq) == lifts
        obstructed += not lifts
    print(f"{name:17s} 20 instances, {obstructed:2d} obstructed, {agree} agree with oracle")
