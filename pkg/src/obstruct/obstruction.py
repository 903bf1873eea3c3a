"""Obstruction classes for lifting squares, lift extraction, and transports.

For a square ::

    A --top--> X
    |i         |p
    B -bottom> Y

with ``i`` a cofibration (cofibre ``C``) and ``p`` a fibration (fibre ``F``),
pick a degreewise lift ``sigma: B -> X`` with ``sigma i = top`` and
``p sigma = bottom``.  Its failure to be a chain map, ``d sigma - sigma d``,
kills ``A``, lands in ``F`` and so descends to a degree -1 map ``C -> F``,
i.e. a chain map ``theta: W -> F`` with ``W = C[-1]``.  A lift exists iff
``theta`` is null-homotopic, and a null-homotopy ``h`` repairs ``sigma`` to
the lift ``sigma - h q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from . import model
from .chain import (ChainComplex, ChainMap, boundary_defect, compose, degreewise_kernel,
                    direct_sum, hom_differential, hom_layout, identity_map, is_acyclic,
                    is_chain_map, null_homotopy, pushout, shift, shift_map)
from .linalg import Matrix, block_matrix, kernel, kron, solve, vstack


class SquareError(ValueError):
    """The four maps do not form a commuting cofibration/fibration square."""


@dataclass(frozen=True)
class LiftingSquare:
    i: ChainMap
    p: ChainMap
    top: ChainMap
    bottom: ChainMap

    def __post_init__(self):
        i, p, top, bottom = self.i, self.p, self.top, self.bottom
        if top.source != i.source or top.target != p.source:
            raise SquareError("top must run from the source of i to the source of p")
        if bottom.source != i.target or bottom.target != p.target:
            raise SquareError("bottom must run from the target of i to the target of p")
        for name, f in (("i", i), ("p", p), ("top", top), ("bottom", bottom)):
            if f.degree != 0 or not is_chain_map(f):
                raise SquareError(f"{name} is not a strict chain map")
        if compose(bottom, i) != compose(p, top):
            raise SquareError("square does not commute")
        if not model.is_cofibration(i):
            raise SquareError("i is not a cofibration")
        if not model.is_fibration(p):
            raise SquareError("p is not a fibration")

    @property
    def ring(self):
        return self.i.ring


@dataclass(frozen=True)
class Lift:
    ell: ChainMap

    def check(self, sq: LiftingSquare) -> bool:
        return (is_chain_map(self.ell) and compose(self.ell, sq.i) == sq.top
                and compose(sq.p, self.ell) == sq.bottom)


@dataclass(frozen=True)
class ObstructionClass:
    """Representative ``theta`` of a class in ``[w, f]``.

    ``sigma`` records the degreewise lift used; it is None for classes obtained
    by :func:`pushforward`.
    """

    w: ChainComplex
    f: ChainComplex
    theta: ChainMap
    sigma: Optional[ChainMap] = field(default=None, compare=False)
    square: Optional[LiftingSquare] = field(default=None, compare=False)


def degreewise_lift(sq: LiftingSquare) -> ChainMap:
    """Deterministic graded map ``sigma: B -> X`` with ``sigma i = top`` and ``p sigma = bottom``."""
    cok = model.cofibre_data(sq.i)
    b, x = sq.i.target, sq.p.source
    comps = {}
    for n in b.degrees:
        rhs = sq.bottom[n] @ cok.section[n]
        tau = solve(sq.p[n], rhs)
        if tau is None:  # p is degreewise surjective, so this cannot happen
            raise SquareError(f"p is not surjective in degree {n}")
        comps[n] = sq.top[n] @ cok.retraction[n] + tau @ cok.projection[n]
    return ChainMap(b, x, comps)


def _check_sigma(sq: LiftingSquare, sigma: ChainMap):
    if sigma.source != sq.i.target or sigma.target != sq.p.source or sigma.degree != 0:
        raise SquareError("sigma must be a degree-0 graded map B -> X")
    if compose(sigma, sq.i) != sq.top or compose(sq.p, sigma) != sq.bottom:
        raise SquareError("sigma does not restrict to top or does not cover bottom")


def obstruction(sq: LiftingSquare, sigma: Optional[ChainMap] = None) -> ObstructionClass:
    """Obstruction class of ``sq`` in ``[C[-1], F]``.

    ``sigma`` overrides the deterministic degreewise lift; the class does not
    depend on the choice.
    """
    if sigma is None:
        sigma = degreewise_lift(sq)
    else:
        _check_sigma(sq, sigma)
    cok = model.cofibre_data(sq.i)
    fib = model.fibre_data(sq.p)
    defect = boundary_defect(sigma)  # d sigma - sigma d, degree -1
    c, f = cok.complex, fib.complex
    w = shift(c, -1)
    theta = {m: fib.retraction[m] @ defect[m + 1] @ cok.section[m + 1]
             for m in w.degrees}
    return ObstructionClass(w, f, ChainMap(w, f, theta), sigma, sq)


def obstruction_vanishes(alpha: ObstructionClass) -> bool:
    return null_homotopy(alpha.theta) is not None


def extract_lift(sq: LiftingSquare, h: ChainMap, sigma: Optional[ChainMap] = None) -> Lift:
    """Lift ``sigma - h q`` from a null-homotopy ``h`` of the obstruction representative.

    ``sigma`` must be the degreewise lift the representative was built from
    (the deterministic one by default).
    """
    alpha = obstruction(sq, sigma)
    if h.degree != 1 or h.source != alpha.w or h.target != alpha.f:
        raise ValueError("h must be a degree-1 map W -> F")
    if boundary_defect(h) != alpha.theta:
        raise ValueError("h is not a null-homotopy of the obstruction representative")
    cok = model.cofibre_data(sq.i)
    fib = model.fibre_data(sq.p)
    sigma = alpha.sigma
    # h_m: W_m = C_{m+1} -> F_{m+1}, i.e. a degree-0 graded map C -> F
    comps = {n: sigma[n] - fib.inclusion[n] @ h[n - 1] @ cok.projection[n]
             for n in sq.i.target.degrees}
    lift = Lift(ChainMap(sq.i.target, sq.p.source, comps))
    if not lift.check(sq):
        raise AssertionError("extracted lift failed to recompose")
    return lift


def find_lift(sq: LiftingSquare) -> Optional[Lift]:
    """Lift via the obstruction: None iff the obstruction class is nonzero."""
    alpha = obstruction(sq)
    h = null_homotopy(alpha.theta)
    if h is None:
        return None
    return extract_lift(sq, h, alpha.sigma)


def pushforward(alpha: ObstructionClass, phi: ChainMap) -> ObstructionClass:
    """Postcompose the representative with a chain map ``phi: F -> F'``."""
    if phi.source != alpha.f or phi.degree != 0:
        raise ValueError("phi must be a degree-0 map out of the fibre")
    return ObstructionClass(alpha.w, phi.target, compose(phi, alpha.theta))


def fibre_map(p: ChainMap, p2: ChainMap, gx: ChainMap) -> ChainMap:
    """Map of fibres induced by a map of fibrations ``(gx, gy): p -> p2``."""
    src, tgt = model.fibre_data(p), model.fibre_data(p2)
    return compose(tgt.retraction, compose(gx, src.inclusion))


def postcompose(sq: LiftingSquare, p2: ChainMap, gx: ChainMap, gy: ChainMap) -> LiftingSquare:
    """The composite square ``i -> p -> p2`` for a map of fibrations ``(gx, gy): p -> p2``."""
    if compose(p2, gx) != compose(gy, sq.p):
        raise SquareError("(gx, gy) is not a map of arrows p -> p2")
    return LiftingSquare(sq.i, p2, compose(gx, sq.top), compose(gy, sq.bottom))


def precompose(sq: LiftingSquare, i0: ChainMap, a: ChainMap, b: ChainMap) -> LiftingSquare:
    """The composite square ``i0 -> i -> p`` for a map of cofibrations ``(a, b): i0 -> i``."""
    if compose(sq.i, a) != compose(b, i0):
        raise SquareError("(a, b) is not a map of arrows i0 -> i")
    return LiftingSquare(i0, sq.p, compose(sq.top, a), compose(sq.bottom, b))


def shift_square(sq: LiftingSquare, k: int) -> LiftingSquare:
    return LiftingSquare(shift_map(sq.i, k), shift_map(sq.p, k),
                         shift_map(sq.top, k), shift_map(sq.bottom, k))


# transports along maps of cofibrations


@dataclass(frozen=True)
class Transport:
    """A map of cofibrations ``(a, b): i -> i2`` used to define obstructions for ``i2``.

    A square ``i2 -> p`` gets the obstruction of the composite ``i -> i2 -> p``.
    """

    i: ChainMap
    i2: ChainMap
    a: ChainMap
    b: ChainMap

    def rule(self, sq: LiftingSquare) -> LiftingSquare:
        if sq.i != self.i2:
            raise SquareError("square is not a lifting problem for the transported cofibration")
        return precompose(sq, self.i, self.a, self.b)

    def obstruction(self, sq: LiftingSquare) -> ObstructionClass:
        return obstruction(self.rule(sq))

    def vanishes(self, sq: LiftingSquare) -> bool:
        return obstruction_vanishes(self.obstruction(sq))


@dataclass(frozen=True)
class CobaseChange(Transport):
    """``i2: A' -> A' +_A B`` with ``a`` the attaching map and ``b = j: B -> B'``."""

    cofibre_iso: Optional[ChainMap] = None

    def lift(self, sq: LiftingSquare) -> Optional[Lift]:
        """Lift for ``sq`` glued from ``top`` and a lift of the composite square."""
        inner = find_lift(self.rule(sq))
        if inner is None:
            return None
        cok = model.cofibre_data(self.i)
        b2 = self.i2.target
        # B' = A' + C, so a map out of it is a pair (top on A', ell s on C)
        comps = {n: block_matrix(sq.ring, [[sq.top[n], inner.ell[n] @ cok.section[n]]])
                 for n in b2.degrees}
        lift = Lift(ChainMap(b2, sq.p.source, comps))
        if not lift.check(sq):
            raise AssertionError("glued lift failed to recompose")
        return lift

    def identify(self, alpha: ObstructionClass) -> ObstructionClass:
        """Pull a class for ``i2`` back along the cofibre identification to ``[W_i, F]``."""
        iso = shift_map(self.cofibre_iso, -1)
        return ObstructionClass(iso.source, alpha.f, compose(alpha.theta, iso))


def cobase_change(i: ChainMap, attach: ChainMap) -> CobaseChange:
    if not model.is_cofibration(i):
        raise model.NotACofibration("cobase change needs a cofibration")
    b2, i2, j = pushout(i, attach)
    cok = model.cofibre_data(i)
    cok2 = model.cofibre_data(i2)
    iso = compose(cok2.projection, compose(j, cok.section))
    return CobaseChange(i, i2, attach, j, ChainMap(iso.source, iso.target, iso.components))


@dataclass(frozen=True)
class Retract(Transport):
    """``i2`` as a retract of ``i``: ``(a, b): i -> i2`` with section ``(a_in, b_in): i2 -> i``."""

    a_in: Optional[ChainMap] = None
    b_in: Optional[ChainMap] = None

    def lift(self, sq: LiftingSquare) -> Optional[Lift]:
        inner = find_lift(self.rule(sq))
        if inner is None:
            return None
        lift = Lift(compose(inner.ell, self.b_in))
        if not lift.check(sq):
            raise AssertionError("retracted lift failed to recompose")
        return lift


def retract_transport(i2: ChainMap, i: ChainMap, a_in: ChainMap, b_in: ChainMap,
                      a_out: ChainMap, b_out: ChainMap) -> Retract:
    """Obstructions for ``i2`` from a retraction of it through ``i``.

    ``(a_in, b_in): i2 -> i`` and ``(a_out, b_out): i -> i2`` must be maps of
    arrows composing to the identity of ``i2``.
    """
    if compose(i, a_in) != compose(b_in, i2) or compose(i2, a_out) != compose(b_out, i):
        raise ValueError("retract data are not maps of arrows")
    if (compose(a_out, a_in) != identity_map(i2.source)
            or compose(b_out, b_in) != identity_map(i2.target)):
        raise ValueError("retract data do not compose to the identity")
    if not model.is_cofibration(i) or not model.is_cofibration(i2):
        raise model.NotACofibration("retract transport needs cofibrations")
    return Retract(i, i2, a_out, b_out, a_in, b_in)


def weak_equivalence_transport(i: ChainMap, i2: ChainMap, a: ChainMap, b: ChainMap) -> Transport:
    """Obstructions for ``i2`` through a weak equivalence of cofibrations ``(a, b): i -> i2``."""
    if compose(i2, a) != compose(b, i):
        raise ValueError("(a, b) is not a map of arrows")
    if not model.is_cofibration(i) or not model.is_cofibration(i2):
        raise model.NotACofibration("weak equivalence transport needs cofibrations")
    if not model.is_weak_equivalence(a) or not model.is_weak_equivalence(b):
        raise ValueError("legs are not weak equivalences")
    return Transport(i, i2, a, b)


# rigid obstruction theory


@dataclass(frozen=True)
class RigidTheory:
    w: ChainComplex
    a: ChainMap  # W -> hofib(i)


def rigid_theory(i: ChainMap) -> RigidTheory:
    """``a: C[-1] -> hofib(i)``, ``w -> (kappa w, s w)`` inside ``A + B[1]``.

    ``s`` is the section of the cofibre projection and ``kappa = r d s`` the
    attaching map factored through ``A`` by the retraction ``r``.
    """
    cok = model.cofibre_data(i)
    hf = model.hofib_data(i)
    b_ = i.target
    ring = i.ring
    w = shift(cok.complex, -1)
    kappa = cok.attaching_map()
    comps = {}
    for m in w.degrees:
        into_p = vstack(ring, [kappa[m + 1],
                               Matrix.zeros(ring, b_.rank(m), w.rank(m)),
                               cok.section[m + 1]])
        comps[m] = hf.retraction[m] @ into_p
    return RigidTheory(w, ChainMap(w, hf.complex, comps))


def rigid_obstruction(sq: LiftingSquare) -> ChainMap:
    """Composite ``W -> hofib(i) -> hofib(p)``; null-homotopic iff ``sq`` has a lift."""
    theory = rigid_theory(sq.i)
    return compose(model.hofib_map(sq.i, sq.p, sq.top, sq.bottom), theory.a)


def contractible_target_class(sq: LiftingSquare) -> ChainMap:
    """For acyclic ``B``: the map ``(top, i): A -> X x_Y B``, null-homotopic iff ``sq`` has a lift."""
    a, b, x = sq.i.source, sq.i.target, sq.p.source
    if not is_acyclic(b):
        raise ValueError("target of i is not weakly contractible")
    ring = sq.ring
    s = direct_sum(x, b)
    diff = ChainMap(s, sq.p.target,
                    {n: block_matrix(ring, [[sq.p[n], -sq.bottom[n]]]) for n in s.degrees})
    pb = degreewise_kernel(diff)
    return ChainMap(a, pb.complex, {n: pb.retraction[n] @ vstack(ring, [sq.top[n], sq.i[n]])
                                    for n in a.degrees})


# the module of all squares


def square_basis(i: ChainMap, p: ChainMap) -> List[LiftingSquare]:
    """A basis of the module of commuting squares ``i -> p``.

    Squares are pairs of chain maps ``(top, bottom)`` with ``bottom i = p top``;
    they form a submodule of ``Hom(A, X)_0 + Hom(B, Y)_0`` and the obstruction
    is linear on it, so lifting every basis square decides the lifting property.
    """
    a, b = i.source, i.target
    x, y = p.source, p.target
    ring = i.ring
    lt, lb = hom_layout(a, x, 0), hom_layout(b, y, 0)
    nt, nb = lt.dim, lb.dim
    rows = []
    zero_t = Matrix.zeros(ring, 0, nt)
    # cycle conditions
    dt, db = hom_differential(a, x, 0), hom_differential(b, y, 0)
    rows.append(block_matrix(ring, [[dt, Matrix.zeros(ring, dt.rows, nb)]]))
    rows.append(block_matrix(ring, [[Matrix.zeros(ring, db.rows, nt), db]]))
    # bottom_n i_n - p_n top_n = 0, entrywise in Hom(A_n, Y_n)
    for n in a.degrees:
        if not y.rank(n):
            continue
        ct = Matrix.zeros(ring, y.rank(n) * a.rank(n), nt)
        cb = Matrix.zeros(ring, y.rank(n) * a.rank(n), nb)
        if n in lt.offsets:
            off, r, c = lt.offsets[n]
            ct = _place(ct, -kron(p[n], Matrix.identity(ring, c)), off)
        if n in lb.offsets:
            off, r, c = lb.offsets[n]
            cb = _place(cb, kron(Matrix.identity(ring, r), i[n].T), off)
        rows.append(block_matrix(ring, [[ct, cb]]))
    system = vstack(ring, rows) if rows else zero_t
    basis, _ = kernel(system)
    squares = []
    for j in range(basis.cols):
        v = basis.column_vector(j)
        top = lt.chain_map(v[:nt])
        bottom = lb.chain_map(v[nt:])
        squares.append(LiftingSquare(i, p, top, bottom))
    return squares


def _place(m: Matrix, block: Matrix, col: int) -> Matrix:
    data = [list(r) for r in m.data]
    for r, row in enumerate(block.data):
        data[r][col:col + block.cols] = row
    return Matrix(m.ring, m.rows, m.cols, data)


def has_rlp(i: ChainMap, p: ChainMap) -> bool:
    return all(obstruction_vanishes(obstruction(sq)) for sq in square_basis(i, p))
