"""Independent checks and builders shared by the test modules."""

import random

from obstruct.chain import (ChainComplex, ChainMap, compose, degreewise_kernel, direct_sum,
                            direct_sum_map, identity_map, summand_inclusion, summand_projection,
                            zero_map)
from obstruct.generate import (_conjugate, random_chain_map, random_cofibration, random_complex,
                               random_fibration, random_fibration_against, random_square_for)
from obstruct.linalg import ZZ, Matrix, hstack, kernel, solve
from obstruct.model import factor_cof_then_acyclic_fib
from obstruct.obstruction import (LiftingSquare, cobase_change, retract_transport,
                                  weak_equivalence_transport)
from obstruct.simplicial import disk, disk_projection, generating_cofibration


def disk_sphere_square(a, c, ring=ZZ):
    """``S^0 -> D^1`` against ``D^1 -> S^1`` with top = a, bottom = c."""
    i = generating_cofibration(1, ring)
    p = disk_projection(1, ring)
    top = ChainMap(i.source, p.source, {0: Matrix(ring, 1, 1, [[a]])})
    bottom = ChainMap(i.target, p.target, {1: Matrix(ring, 1, 1, [[c]])})
    return LiftingSquare(i, p, top, bottom)


def _contains(big: Matrix, small: Matrix) -> bool:
    """Every column of ``small`` lies in the column span of ``big``."""
    return all(solve(big, small.column_vector(j)) is not None for j in range(small.cols))


def induces_homology_isos(f: ChainMap) -> bool:
    """Is ``H_n(f)`` an isomorphism for every n?  Built from kernels and solves, no cone.

    In cycle coordinates: ``T`` sends cycles of A to cycles of B and ``M``
    spans the boundaries of B.  ``H(f)`` is onto iff ``[T | M]`` is onto, and
    one-to-one iff every cycle x with ``T x`` a boundary is a boundary of A.
    """
    a, b = f.source, f.target
    ring = f.ring
    for n in sorted(set(a.degrees) | set(b.degrees)):
        ka, la = kernel(a.d(n))
        kb, lb = kernel(b.d(n))
        t = lb @ f[n] @ ka
        m = lb @ b.d(n + 1)
        tm = hstack(ring, [t, m])
        if not _contains(tm, Matrix.identity(ring, kb.cols)):
            return False
        rel, _ = kernel(hstack(ring, [t, -m]))
        preimage = rel.block_rows(0, ka.cols)
        boundaries_a = la @ a.d(n + 1)
        if not _contains(boundaries_a, preimage):
            return False
    return True


def random_quasi_iso(rng: random.Random, ring) -> ChainMap:
    """A quasi-isomorphism: add disks and re-base, or the acyclic leg of a cylinder."""
    a = random_complex(rng, ring)
    if rng.random() < 0.5:
        extra = ChainComplex(ring, {})
        for _ in range(rng.randint(1, 2)):
            extra = direct_sum(extra, disk(rng.randint(-2, 3), ring))
        inc = summand_inclusion([a, extra], 0)
        b, g, _ = _conjugate(rng, inc.target)
        return ChainMap(a, b, {n: g[n] @ m for n, m in inc.components.items()})
    b = random_complex(rng, ring)
    return factor_cof_then_acyclic_fib(random_chain_map(rng, a, b)).second


def random_map_mix(rng: random.Random, ring) -> ChainMap:
    """Half quasi-isomorphisms, half arbitrary random chain maps."""
    if rng.random() < 0.5:
        return random_quasi_iso(rng, ring)
    a = random_complex(rng, ring)
    b = random_complex(rng, ring, dict(a.ranks)) if rng.random() < 0.5 else random_complex(rng, ring)
    return random_chain_map(rng, a, b)



# random transport instances: (transport, square for the transported cofibration)


def random_cobase_instance(rng: random.Random, ring):
    i = random_cofibration(rng, ring)
    a2 = random_complex(rng, ring)
    t = cobase_change(i, random_chain_map(rng, i.source, a2))
    p = random_fibration_against(rng, t.i2)
    return t, random_square_for(rng, t.i2, p)


def random_retract_instance(rng: random.Random, ring):
    i2 = random_cofibration(rng, ring)
    j = random_cofibration(rng, ring)
    i = direct_sum_map(i2, j)
    srcs, tgts = [i2.source, j.source], [i2.target, j.target]
    t = retract_transport(i2, i, summand_inclusion(srcs, 0), summand_inclusion(tgts, 0),
                          summand_projection(srcs, 0), summand_projection(tgts, 0))
    p = random_fibration_against(rng, i2)
    return t, random_square_for(rng, i2, p)


def random_we_instance(rng: random.Random, ring):
    """Either the mapping-cylinder replacement of ``i`` or ``i`` plus an acyclic cofibration."""
    i = random_cofibration(rng, ring)
    p = random_fibration_against(rng, i)
    if rng.random() < 0.5:
        fac = factor_cof_then_acyclic_fib(i)
        t = weak_equivalence_transport(fac.first, i, identity_map(i.source), fac.second)
        return t, random_square_for(rng, i, p)
    dk = disk(rng.randint(-2, 3), ring)
    if rng.random() < 0.5:
        e = zero_map(ChainComplex(ring, {}), dk)
    else:
        e = summand_inclusion([dk, disk(rng.randint(-2, 3), ring)], 0)
    i2 = direct_sum_map(i, e)
    a = summand_inclusion([i.source, e.source], 0)
    b = summand_inclusion([i.target, e.target], 0)
    t = weak_equivalence_transport(i, i2, a, b)
    return t, random_square_for(rng, i2, p)


def random_fibration_map(rng: random.Random, p: ChainMap):
    """A map of fibrations ``(gx, gy): p -> p2``, drawn from four shapes.

    * ``p2 = p + q`` with the summand inclusions;
    * ``p2 = id_Y`` with ``gx = p``: the fibre is crushed;
    * ``p2 = p`` with ``gx = id + K g`` for a random chain map ``g: X -> F``;
    * ``p2: X -> 0`` with ``gx = id``: the fibre grows to all of X.
    """
    ring = p.ring
    x, y = p.source, p.target
    kind = rng.randrange(4)
    if kind == 0:
        q = random_fibration(rng, ring)
        return (direct_sum_map(p, q), summand_inclusion([x, q.source], 0),
                summand_inclusion([y, q.target], 0))
    if kind == 1:
        return identity_map(y), p, identity_map(y)
    if kind == 2:
        fib = degreewise_kernel(p)
        g = random_chain_map(rng, x, fib.complex)
        return p, identity_map(x) + compose(fib.inclusion, g), identity_map(y)
    z = ChainComplex(ring, {})
    return zero_map(x, z), identity_map(x), zero_map(y, z)
