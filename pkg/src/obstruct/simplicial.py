"""Chain-level generating cofibrations and the lifting-property criterion.

``simplex_chain(n)`` and ``boundary_chain(n)`` are the simplicial chains of
the standard simplex and of its boundary; ``sphere`` / ``disk`` are the
stable building blocks.  :func:`rlp_equivalence_check` decides whether a
fibration lifts against ``S^{n-1} -> D^n`` (or ``d Delta^n -> Delta^n``) from
obstruction classes, and compares with ``H_{n-1}`` of the fibre.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import List, Optional

from . import model
from .chain import ChainComplex, ChainMap, HomologyGroup, homology, null_homotopy, zero_map
from .linalg import ZZ, Matrix, Ring, kernel, solve
from .obstruction import (Lift, LiftingSquare, extract_lift, obstruction, obstruction_vanishes,
                          square_basis)
from .oracle import brute_lift


def _simplicial(n: int, top: int, ring: Ring) -> ChainComplex:
    faces = {k: list(combinations(range(n + 1), k + 1)) for k in range(top + 1)}
    index = {k: {s: j for j, s in enumerate(faces[k])} for k in faces}
    ranks = {k: len(faces[k]) for k in faces}
    diffs = {}
    for k in range(1, top + 1):
        data = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for c, s in enumerate(faces[k]):
            for j in range(k + 1):
                face = s[:j] + s[j + 1:]
                data[index[k - 1][face]][c] += (-1) ** j
        diffs[k] = Matrix(ring, ranks[k - 1], ranks[k], data)
    return ChainComplex(ring, ranks, diffs)


def simplex_chain(n: int, ring: Ring = ZZ) -> ChainComplex:
    """Chains of the n-simplex; the basis in degree k is the (k+1)-subsets of 0..n in lex order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _simplicial(n, n, ring)


def boundary_chain(n: int, ring: Ring = ZZ):
    """Chains of the boundary of the n-simplex and the inclusion into :func:`simplex_chain`."""
    if n < 1:
        raise ValueError("the boundary inclusion carries an obstruction theory only for n >= 1")
    bd = _simplicial(n, n - 1, ring)
    full = simplex_chain(n, ring)
    inc = ChainMap(bd, full, {k: Matrix.identity(ring, comb(n + 1, k + 1)) for k in range(n)})
    return bd, inc


def sphere(k: int, ring: Ring = ZZ) -> ChainComplex:
    return ChainComplex(ring, {k: 1})


def disk(k: int, ring: Ring = ZZ) -> ChainComplex:
    return ChainComplex(ring, {k: 1, k - 1: 1}, {k: Matrix.identity(ring, 1)})


def generating_cofibration(k: int, ring: Ring = ZZ) -> ChainMap:
    """``S^{k-1} -> D^k``."""
    return ChainMap(sphere(k - 1, ring), disk(k, ring), {k - 1: Matrix.identity(ring, 1)})


def disk_projection(k: int, ring: Ring = ZZ) -> ChainMap:
    """``D^k -> S^k``, the identity in degree k; its fibre is ``S^{k-1}``."""
    return ChainMap(disk(k, ring), sphere(k, ring), {k: Matrix.identity(ring, 1)})


@dataclass
class RlpVerdict:
    homology: HomologyGroup  # H_{n-1} of the fibre
    rlp: bool
    squares_tested: int
    witness: Optional[LiftingSquare] = None
    witness_rejected: Optional[bool] = None  # oracle verdict on the witness
    lifts: List[Lift] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        ok = self.rlp == self.homology.is_zero()
        if self.witness is not None:
            ok = ok and bool(self.witness_rejected)
        return ok


def _cofibration(n: int, kind: str, ring: Ring) -> ChainMap:
    if n < 1:
        raise ValueError("n must be at least 1")
    if kind == "disk":
        return generating_cofibration(n, ring)
    if kind == "simplex":
        return boundary_chain(n, ring)[1]
    raise ValueError(f"unknown generating cofibration kind {kind!r}")


def _nonzero_class(f: ChainComplex, k: int) -> Optional[list]:
    """A k-cycle of ``f`` that is not a boundary, or None."""
    cycles, _ = kernel(f.d(k))
    for j in range(cycles.cols):
        z = cycles.column_vector(j)
        if solve(f.d(k + 1), z) is None:
            return z
    return None


def rlp_equivalence_check(p: ChainMap, n: int, kind: str = "disk") -> RlpVerdict:
    """Does ``p`` lift against the degree-``n`` generating cofibration?

    ``kind`` is ``"disk"`` for ``S^{n-1} -> D^n`` or ``"simplex"`` for the
    boundary inclusion of the n-simplex.  The verdict is decided by
    obstruction vanishing over a basis of all commuting squares; when it
    fails a witness square (top map a non-bounding cycle of the fibre, bottom
    map zero) is built and handed to the oracle.
    """
    if not model.is_fibration(p):
        raise model.NotAFibration("rlp_equivalence_check needs a fibration")
    ring = p.ring
    i = _cofibration(n, kind, ring)
    fib = model.fibre_data(p)
    h = homology(fib.complex, n - 1)

    squares = square_basis(i, p)
    rlp = True
    lifts = []
    for sq in squares:
        alpha = obstruction(sq)
        if not obstruction_vanishes(alpha):
            rlp = False
            break
        lifts.append(extract_lift(sq, null_homotopy(alpha.theta), alpha.sigma))

    verdict = RlpVerdict(h, rlp, len(squares), lifts=lifts if rlp else [])
    z = _nonzero_class(fib.complex, n - 1)
    if z is not None:
        a, x = i.source, p.source
        zcol = fib.inclusion[n - 1] @ Matrix.column(ring, z)
        if kind == "disk":
            top_comp = zcol
        else:
            # the face opposite vertex 0 is the last (n-1)-face in lex order
            pick = Matrix(ring, 1, a.rank(n - 1),
                          [[1 if j == a.rank(n - 1) - 1 else 0 for j in range(a.rank(n - 1))]])
            top_comp = zcol @ pick
        top = ChainMap(a, x, {n - 1: top_comp})
        witness = LiftingSquare(i, p, top, zero_map(i.target, p.target))
        verdict.witness = witness
        verdict.witness_rejected = brute_lift(witness) is None
    return verdict
