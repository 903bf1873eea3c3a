"""The projective model structure on finitely supported complexes of free modules.

* cofibrations: degreewise split monomorphisms with free cokernel;
* fibrations: degreewise surjections;
* weak equivalences: quasi-isomorphisms.

Every object is both fibrant and cofibrant, and the category is pointed (by
the zero complex), proper and stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import (ChainComplex, ChainMap, CokernelData, KernelData, cone, compose,
                    degreewise_cokernel, degreewise_kernel, is_acyclic, is_chain_map, shift,
                    shift_map)
from .linalg import Matrix, block_matrix, is_surjective, is_unit_embedding


class NotACofibration(ValueError):
    pass


class NotAFibration(ValueError):
    pass


def _levels(f: ChainMap):
    return sorted(set(f.source.degrees) | set(f.target.degrees))


def _require_strict(f: ChainMap):
    if f.degree != 0 or not is_chain_map(f):
        raise ValueError("expected a strict degree-0 chain map")


def is_cofibration(f: ChainMap) -> bool:
    _require_strict(f)
    return all(is_unit_embedding(f[n]) for n in _levels(f))


def is_fibration(f: ChainMap) -> bool:
    _require_strict(f)
    return all(is_surjective(f[n]) for n in _levels(f))


def is_weak_equivalence(f: ChainMap) -> bool:
    _require_strict(f)
    return is_acyclic(cone(f))


def fibre(p: ChainMap):
    """``(F, inclusion)`` for a fibration ``p``."""
    data = fibre_data(p)
    return data.complex, data.inclusion


def fibre_data(p: ChainMap) -> KernelData:
    if not is_fibration(p):
        raise NotAFibration("fibre needs a degreewise surjection")
    return degreewise_kernel(p)


def cofibre(i: ChainMap):
    """``(C, projection)`` for a cofibration ``i``."""
    data = cofibre_data(i)
    return data.complex, data.projection


def cofibre_data(i: ChainMap) -> CokernelData:
    """Cofibre together with the degreewise splitting of ``i`` (computed once, cached)."""
    if not is_cofibration(i):
        raise NotACofibration("cofibre needs a degreewise split mono with free cokernel")
    return degreewise_cokernel(i)


@dataclass(frozen=True)
class Factorization:
    """``second o first`` equals the factored map; ``kind`` names the classes of the legs."""

    first: ChainMap
    second: ChainMap
    kind: str  # "acyclic-cofibration/fibration" or "cofibration/acyclic-fibration"

    @property
    def middle(self) -> ChainComplex:
        return self.first.target


def _eye(ring, n):
    return Matrix.identity(ring, n)


def _zero(ring, r, c):
    return Matrix.zeros(ring, r, c)


def factor_acyclic_cof_then_fib(f: ChainMap) -> Factorization:
    """``X -> P -> Y`` through the mapping cocylinder.

    ``P_n = X_n + Y_n + Y_{n+1}`` with ``d(x, y, z) = (d x, d y, f x - y - d z)``;
    the first leg is ``x -> (x, f x, 0)`` and the second ``(x, y, z) -> y``.
    """
    _require_strict(f)
    x, y = f.source, f.target
    ring = x.ring
    degrees = sorted(set(x.degrees) | set(y.degrees) | {n - 1 for n in y.degrees})
    ranks = {n: x.rank(n) + y.rank(n) + y.rank(n + 1) for n in degrees}
    diffs = {}
    for n in degrees:
        xn, yn, zn = x.rank(n), y.rank(n), y.rank(n + 1)
        xm, ym = x.rank(n - 1), y.rank(n - 1)
        diffs[n] = block_matrix(ring, [
            [x.d(n), _zero(ring, xm, yn), _zero(ring, xm, zn)],
            [_zero(ring, ym, xn), y.d(n), _zero(ring, ym, zn)],
            [f[n], -_eye(ring, yn), -y.d(n + 1)],
        ])
    p = ChainComplex(ring, ranks, diffs)
    first = ChainMap(x, p, {n: block_matrix(ring, [[_eye(ring, x.rank(n))], [f[n]],
                                                   [_zero(ring, y.rank(n + 1), x.rank(n))]])
                            for n in x.degrees})
    second = ChainMap(p, y, {n: block_matrix(ring, [[_zero(ring, y.rank(n), x.rank(n)),
                                                     _eye(ring, y.rank(n)),
                                                     _zero(ring, y.rank(n), y.rank(n + 1))]])
                             for n in y.degrees})
    return Factorization(first, second, "acyclic-cofibration/fibration")


def factor_cof_then_acyclic_fib(f: ChainMap) -> Factorization:
    """``X -> Cyl -> Y`` through the mapping cylinder.

    ``Cyl_n = X_n + X_{n-1} + Y_n`` with ``d(x, x', y) = (d x + x', -d x', d y - f x')``;
    the first leg is ``x -> (x, 0, 0)`` and the second ``(x, x', y) -> f x + y``.
    """
    _require_strict(f)
    x, y = f.source, f.target
    ring = x.ring
    degrees = sorted(set(x.degrees) | {n + 1 for n in x.degrees} | set(y.degrees))
    ranks = {n: x.rank(n) + x.rank(n - 1) + y.rank(n) for n in degrees}
    diffs = {}
    for n in degrees:
        a, b, c = x.rank(n), x.rank(n - 1), y.rank(n)
        a1, b1, c1 = x.rank(n - 1), x.rank(n - 2), y.rank(n - 1)
        diffs[n] = block_matrix(ring, [
            [x.d(n), _eye(ring, b), _zero(ring, a1, c)],
            [_zero(ring, b1, a), -x.d(n - 1), _zero(ring, b1, c)],
            [_zero(ring, c1, a), -f[n - 1], y.d(n)],
        ])
    cyl = ChainComplex(ring, ranks, diffs)
    first = ChainMap(x, cyl, {n: block_matrix(ring, [[_eye(ring, x.rank(n))],
                                                     [_zero(ring, x.rank(n - 1), x.rank(n))],
                                                     [_zero(ring, y.rank(n), x.rank(n))]])
                              for n in x.degrees})
    second = ChainMap(cyl, y, {n: block_matrix(ring, [[f[n], _zero(ring, y.rank(n), x.rank(n - 1)),
                                                       _eye(ring, y.rank(n))]])
                               for n in y.degrees})
    return Factorization(first, second, "cofibration/acyclic-fibration")


def hofib(f: ChainMap) -> ChainComplex:
    """Fibre of the fibration leg of :func:`factor_acyclic_cof_then_fib`."""
    return hofib_data(f).complex


def hofib_data(f: ChainMap) -> KernelData:
    return degreewise_kernel(factor_acyclic_cof_then_fib(f).second)


def fibre_to_hofib(p: ChainMap) -> ChainMap:
    """The natural map ``fib(p) -> hofib(p)``, ``x -> (x, 0, 0)``; a quasi-iso for fibrations."""
    fib, inc = fibre(p)
    fac = factor_acyclic_cof_then_fib(p)
    into_p = compose(fac.first, inc)
    return compose(hofib_data(p).retraction, into_p)


def hofib_map(f: ChainMap, g: ChainMap, top: ChainMap, bottom: ChainMap) -> ChainMap:
    """Map ``hofib(f) -> hofib(g)`` induced by a commuting square ``g top = bottom f``."""
    fa, fb = factor_acyclic_cof_then_fib(f), factor_acyclic_cof_then_fib(g)
    pf, pg = fa.middle, fb.middle
    ring = pf.ring
    x, y = f.source, f.target
    x2, y2 = g.source, g.target
    on_p = ChainMap(pf, pg, {n: block_matrix(ring, [
        [top[n], _zero(ring, x2.rank(n), y.rank(n)), _zero(ring, x2.rank(n), y.rank(n + 1))],
        [_zero(ring, y2.rank(n), x.rank(n)), bottom[n], _zero(ring, y2.rank(n), y.rank(n + 1))],
        [_zero(ring, y2.rank(n + 1), x.rank(n)), _zero(ring, y2.rank(n + 1), y.rank(n)),
         bottom[n + 1]],
    ]) for n in pf.degrees})
    src, tgt = hofib_data(f), hofib_data(g)
    return compose(tgt.retraction, compose(on_p, src.inclusion))


def suspend_map(i: ChainMap, k: int = 1) -> ChainMap:
    """Shift source and target by ``k`` keeping the component matrices."""
    if not is_cofibration(i):
        raise NotACofibration("suspend_map needs a cofibration")
    return shift_map(i, k)


def suspend(c: ChainComplex, k: int = 1) -> ChainComplex:
    return shift(c, k)


def loop(c: ChainComplex, k: int = 1) -> ChainComplex:
    return shift(c, -k)
