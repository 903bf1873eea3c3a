"""Seeded random complexes, cofibrations, fibrations and lifting squares.

All generators take a :class:`random.Random` so corpora are reproducible.
Complexes are supported in ``[-3, 3]`` with ranks at most 4 and matrix
entries in ``[-3, 3]`` by default; the cofibrations and fibrations are built
as twisted direct sums (``B = A + C`` glued by a degree -1 cycle, ``X = F + Y``
likewise) and then conjugated by a random unimodular change of basis so the
splittings are not visible in the matrices.
"""

from __future__ import annotations

import random
from typing import Optional

from .chain import (ChainComplex, ChainMap, degreewise_cokernel, degreewise_kernel, hom_complex,
                    hom_differential, hom_layout, homology, shift)
from .linalg import Matrix, Ring, block_matrix, kernel
from .obstruction import LiftingSquare, degreewise_lift, square_basis

LO, HI = -3, 3
MAX_RANK = 4
ENTRY = 3


def _small(rng: random.Random, bound: int = ENTRY) -> int:
    return rng.randint(-bound, bound)


def _in_bounds(m: Matrix, bound: int = ENTRY) -> bool:
    if m.ring.kind != "Z":
        return True
    return all(abs(x) <= bound for r in m.data for x in r)


def random_matrix(rng: random.Random, ring: Ring, rows: int, cols: int,
                  bound: int = ENTRY) -> Matrix:
    return Matrix(ring, rows, cols, [[_small(rng, bound) for _ in range(cols)]
                                     for _ in range(rows)])


def random_unimodular(rng: random.Random, ring: Ring, n: int, steps: int = 2):
    """``(g, g_inv)`` from a few elementary operations with multipliers +-1 and a permutation."""
    g = [[ring(1) if i == j else ring(0) for j in range(n)] for i in range(n)]
    gi = [row[:] for row in g]
    if n >= 2:
        for _ in range(steps):
            i, j = rng.sample(range(n), 2)
            c = rng.choice((1, -1))
            # g <- E g, gi <- gi E^-1 with E = I + c e_i e_j^T
            g[i] = [ring.add(a, ring.mul(ring(c), b)) for a, b in zip(g[i], g[j])]
            for row in gi:
                row[j] = ring.add(row[j], ring.mul(ring(-c), row[i]))
        perm = list(range(n))
        rng.shuffle(perm)
        g = [g[k] for k in perm]
        gi = [[row[k] for k in perm] for row in gi]
    return Matrix(ring, n, n, g), Matrix(ring, n, n, gi)


def _support(rng: random.Random, lo: int = LO, hi: int = HI, max_len: int = 4):
    length = rng.randint(1, max_len)
    start = rng.randint(lo, hi - length + 1)
    return list(range(start, start + length))


def random_complex(rng: random.Random, ring: Ring, ranks: Optional[dict] = None,
                   bound: int = ENTRY, density: float = 0.5) -> ChainComplex:
    """Random complex with the given ranks; each column of ``d_n`` is a small
    combination of a kernel basis of ``d_{n-1}`` (or zero when no small one is found)."""
    if ranks is None:
        ranks = {n: rng.randint(0, MAX_RANK) for n in _support(rng)}
    ranks = {n: r for n, r in sorted(ranks.items()) if r > 0}
    diffs = {}
    for n in ranks:
        if n - 1 not in ranks:
            continue
        prev = diffs.get(n - 1, Matrix.zeros(ring, ranks.get(n - 2, 0), ranks[n - 1]))
        basis, _ = kernel(prev)
        cols = []
        for _ in range(ranks[n]):
            col = [ring(0)] * ranks[n - 1]
            if basis.cols and rng.random() < density:
                for _try in range(8):
                    coeffs = [rng.randint(-1, 1) for _ in range(basis.cols)]
                    cand = basis @ Matrix.column(ring, coeffs)
                    if _in_bounds(cand, bound):
                        col = cand.column_vector(0)
                        break
            cols.append(col)
        diffs[n] = Matrix(ring, ranks[n - 1], ranks[n],
                          [[cols[c][r] for c in range(ranks[n])] for r in range(ranks[n - 1])])
    return ChainComplex(ring, ranks, diffs)


def random_cycle(rng: random.Random, w: ChainComplex, f: ChainComplex, degree: int = 0,
                 bound: int = ENTRY, tries: int = 12) -> ChainMap:
    """Random cycle of ``hom_complex(w, f)`` in ``degree`` (a chain map when degree is 0).

    Small combinations of a kernel basis are tried; the zero map is the fallback.
    """
    layout = hom_layout(w, f, degree)
    basis, _ = kernel(hom_differential(w, f, degree))
    ring = w.ring
    for _ in range(tries):
        if not basis.cols:
            break
        coeffs = [rng.randint(-1, 1) if rng.random() < 0.6 else 0 for _ in range(basis.cols)]
        v = basis @ Matrix.column(ring, coeffs)
        if _in_bounds(v, bound):
            return layout.chain_map(v.column_vector(0))
    return ChainMap(w, f, {}, degree)


def _split_ranks(rng: random.Random, degrees, total_max: int = MAX_RANK):
    first, second = {}, {}
    for n in degrees:
        total = rng.randint(0, total_max)
        k = rng.randint(0, total)
        first[n], second[n] = k, total - k
    return first, second


def _conjugate(rng, c: ChainComplex):
    """Random per-degree change of basis ``g`` on ``c``: returns ``(c', g, g_inv)``."""
    ring = c.ring
    gs, gis = {}, {}
    for n, r in c.ranks.items():
        gs[n], gis[n] = random_unimodular(rng, ring, r)
    diffs = {n: gs[n - 1] @ m @ gis[n] for n, m in c.differentials.items()}
    return ChainComplex(ring, c.ranks, diffs), gs, gis


def twisted_sum(sub: ChainComplex, quo: ChainComplex, kappa: ChainMap) -> ChainComplex:
    """``sub + quo`` with differential ``[[d_sub, kappa], [0, d_quo]]``; ``kappa: quo -> sub`` of degree -1."""
    ring = sub.ring
    degrees = sorted(set(sub.degrees) | set(quo.degrees))
    ranks = {n: sub.rank(n) + quo.rank(n) for n in degrees}
    diffs = {n: block_matrix(ring, [[sub.d(n), kappa[n]],
                                    [Matrix.zeros(ring, quo.rank(n - 1), sub.rank(n)), quo.d(n)]])
             for n in degrees}
    return ChainComplex(ring, ranks, diffs)


def _bounded(c: ChainComplex, bound: int = ENTRY) -> bool:
    return all(_in_bounds(m, bound) for m in c.differentials.values())


def random_cofibration(rng: random.Random, ring: Ring, degrees=None, conjugate: bool = True,
                       tries: int = 20) -> ChainMap:
    """Random cofibration ``A -> B`` with ``B = A + C`` glued and re-based."""
    for _ in range(tries):
        degs = degrees or _support(rng)
        ra, rc = _split_ranks(rng, degs)
        a = random_complex(rng, ring, ra)
        c = random_complex(rng, ring, rc)
        kappa = random_cycle(rng, c, a, -1)
        b = twisted_sum(a, c, kappa)
        inc = {n: block_matrix(ring, [[Matrix.identity(ring, a.rank(n))],
                                      [Matrix.zeros(ring, c.rank(n), a.rank(n))]])
               for n in a.degrees}
        if conjugate:
            b2, g, _ = _conjugate(rng, b)
            inc = {n: g[n] @ m for n, m in inc.items()}
            if not _bounded(b2) or not all(_in_bounds(m) for m in inc.values()):
                continue
            b = b2
        return ChainMap(a, b, inc)
    return ChainMap(a, b, {n: block_matrix(ring, [[Matrix.identity(ring, a.rank(n))],
                                                  [Matrix.zeros(ring, c.rank(n), a.rank(n))]])
                           for n in a.degrees})


def random_fibration(rng: random.Random, ring: Ring, degrees=None, conjugate: bool = True,
                     tries: int = 20) -> ChainMap:
    """Random fibration ``X -> Y`` with ``X = F + Y`` glued and re-based."""
    for _ in range(tries):
        degs = degrees or _support(rng)
        rf, ry = _split_ranks(rng, degs)
        f = random_complex(rng, ring, rf)
        y = random_complex(rng, ring, ry)
        lam = random_cycle(rng, y, f, -1)
        x = twisted_sum(f, y, lam)
        proj = {n: block_matrix(ring, [[Matrix.zeros(ring, y.rank(n), f.rank(n)),
                                        Matrix.identity(ring, y.rank(n))]])
                for n in y.degrees}
        if conjugate:
            x2, _, gi = _conjugate(rng, x)
            proj2 = {n: m @ gi[n] for n, m in proj.items()}
            if not _bounded(x2) or not all(_in_bounds(m) for m in proj2.values()):
                continue
            x, proj = x2, proj2
        return ChainMap(x, y, proj)
    return ChainMap(x, y, proj)


def random_square_for(rng: random.Random, i: ChainMap, p: ChainMap,
                      bound: int = ENTRY, tries: int = 12) -> LiftingSquare:
    """Random element of the module of squares ``i -> p`` (small entries preferred)."""
    basis = square_basis(i, p)
    ring = i.ring
    for _ in range(tries):
        if not basis:
            break
        coeffs = [rng.randint(-1, 1) if rng.random() < 0.5 else 0 for _ in basis]
        if not any(coeffs):
            coeffs[rng.randrange(len(coeffs))] = 1
        top = ChainMap(i.source, p.source, {}, 0)
        bottom = ChainMap(i.target, p.target, {}, 0)
        for c, sq in zip(coeffs, basis):
            if c:
                top = top + sq.top.scale(c)
                bottom = bottom + sq.bottom.scale(c)
        if all(_in_bounds(m, bound) for m in list(top.components.values())
               + list(bottom.components.values())):
            return LiftingSquare(i, p, top, bottom)
    if basis:
        return rng.choice(basis)
    return LiftingSquare(i, p, ChainMap(i.source, p.source), ChainMap(i.target, p.target))


def obstruction_group_is_zero(i: ChainMap, p: ChainMap) -> bool:
    """True when every square ``i -> p`` lifts for degree reasons (``H_0 Hom(C[-1], F) = 0``)."""
    w = shift(degreewise_cokernel(i).complex, -1)
    f = degreewise_kernel(p).complex
    return homology(hom_complex(w, f), 0).is_zero()


def random_square(rng: random.Random, ring: Ring, keep_trivial: float = 0.1,
                  tries: int = 30) -> LiftingSquare:
    """Random cofibration, fibration and square on a shared support inside [-3, 3].

    Pairs whose obstruction group vanishes are kept only with probability
    ``keep_trivial`` so that the corpus exercises both verdicts.
    """
    for _ in range(tries):
        degrees = _support(rng, max_len=3)
        i = random_cofibration(rng, ring, degrees)
        p = random_fibration(rng, ring, degrees)
        if obstruction_group_is_zero(i, p) and rng.random() >= keep_trivial:
            continue
        break
    return random_square_for(rng, i, p)


def random_chain_map(rng: random.Random, a: ChainComplex, b: ChainComplex) -> ChainMap:
    return random_cycle(rng, a, b, 0)


def random_degreewise_lift(rng: random.Random, sq: LiftingSquare, bound: int = 2) -> ChainMap:
    """``sigma + K g q`` for a random graded ``g: C -> F``; every degreewise lift has this form."""
    sigma = degreewise_lift(sq)
    cok = degreewise_cokernel(sq.i)
    fib = degreewise_kernel(sq.p)
    ring = sq.ring
    comps = {}
    for n in sq.i.target.degrees:
        g = random_matrix(rng, ring, fib.complex.rank(n), cok.complex.rank(n), bound)
        comps[n] = sigma[n] + fib.inclusion[n] @ g @ cok.projection[n]
    return ChainMap(sigma.source, sigma.target, comps)


def random_fibration_against(rng: random.Random, i: ChainMap, tries: int = 30) -> ChainMap:
    """Random fibration placed near the cofibre of ``i``, preferring a nonzero obstruction group."""
    ring = i.ring
    cdeg = degreewise_cokernel(i).complex.degrees or [0]
    p = None
    for _ in range(tries):
        centre = min(max(rng.choice(cdeg) - 1, LO + 1), HI - 1)
        p = random_fibration(rng, ring, [centre - 1, centre, centre + 1])
        if not obstruction_group_is_zero(i, p):
            break
    return p
