"""Finitely supported chain complexes of free modules and graded maps between them.

Conventions (shared by every module in the package):

* homological grading, ``d_n: C_n -> C_{n-1}``;
* ``shift(c, k)_n = c_{n-k}`` with differential ``(-1)^k d``;
* ``cone(f)_n = A_{n-1} + B_n`` with ``d(a, b) = (-d a, f a + d b)``;
* a graded map ``phi`` of degree ``k`` has boundary ``d phi - (-1)^k phi d``.

Degree-0 cycles of the Hom complex are chain maps and degree-0 boundaries are
the null-homotopic ones, so ``H_0(hom_complex(w, f)) = [w, f]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional

from .linalg import (Matrix, Ring, block_diag, block_matrix, cokernel_invariants, kernel,
                     kron, snf, solve, split_embedding)


class ChainComplex:
    """Graded free module with differential matrices.

    ``ranks`` maps degree to rank; degrees with rank 0 are dropped.
    ``differentials[n]`` has shape ``rank(n-1) x rank(n)``; missing entries
    are zero.  ``d^2 = 0`` is not enforced here, see :func:`validate`.
    """

    def __init__(self, ring: Ring, ranks: Dict[int, int],
                 differentials: Optional[Dict[int, Matrix]] = None):
        self.ring = ring
        self.ranks = {int(n): int(r) for n, r in sorted(ranks.items()) if r > 0}
        if any(r < 0 for r in ranks.values()):
            raise ValueError("negative rank")
        diffs = {}
        for n, m in (differentials or {}).items():
            if m.ring != ring:
                raise ValueError(f"differential in degree {n} is over {m.ring}, not {ring}")
            if m.shape != (self.rank(n - 1), self.rank(n)):
                raise ValueError(f"differential in degree {n} has shape {m.shape}, "
                                 f"expected {(self.rank(n - 1), self.rank(n))}")
            if not m.is_zero():
                diffs[int(n)] = m
        self.differentials = dict(sorted(diffs.items()))
        self._key = (ring, tuple(self.ranks.items()), tuple(self.differentials.items()))

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.differentials.get(n)
        if m is None:
            return Matrix.zeros(self.ring, self.rank(n - 1), self.rank(n))
        return m

    @property
    def degrees(self):
        return list(self.ranks)

    def is_zero(self) -> bool:
        return not self.ranks

    def __eq__(self, other):
        return isinstance(other, ChainComplex) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        ranks = ", ".join(f"{n}:{r}" for n, r in self.ranks.items())
        return f"ChainComplex[{self.ring}]({ranks or 'zero'})"


def zero_complex(ring: Ring) -> ChainComplex:
    return ChainComplex(ring, {})


class ChainMap:
    """Graded map of degree ``degree``: component ``n`` sends ``source_n`` to ``target_{n+degree}``."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: Optional[Dict[int, Matrix]] = None, degree: int = 0):
        if source.ring != target.ring:
            raise ValueError("source and target live over different rings")
        self.source = source
        self.target = target
        self.degree = degree
        comps = {}
        for n, m in (components or {}).items():
            shape = (target.rank(n + degree), source.rank(n))
            if m.shape != shape:
                raise ValueError(f"component {n} has shape {m.shape}, expected {shape}")
            if not m.is_zero():
                comps[int(n)] = m
        self.components = dict(sorted(comps.items()))
        self._key = (source, target, degree, tuple(self.components.items()))

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def __getitem__(self, n: int) -> Matrix:
        m = self.components.get(n)
        if m is None:
            return Matrix.zeros(self.ring, self.target.rank(n + self.degree), self.source.rank(n))
        return m

    def __eq__(self, other):
        return isinstance(other, ChainMap) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"ChainMap({self.source!r} -> {self.target!r}, degree={self.degree}, "
                f"levels={list(self.components)})")

    def is_zero(self) -> bool:
        return not self.components

    def _same_shape(self, other):
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("maps have different source, target or degree")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._same_shape(other)
        return ChainMap(self.source, self.target,
                        {n: self[n] + other[n] for n in self.source.degrees}, self.degree)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {n: -m for n, m in self.components.items()}, self.degree)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {n: m.scale(c) for n, m in self.components.items()}, self.degree)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return compose(self, other)


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: Matrix.identity(c.ring, r) for n, r in c.ranks.items()})


def zero_map(source: ChainComplex, target: ChainComplex, degree: int = 0) -> ChainMap:
    return ChainMap(source, target, {}, degree)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g o f``; degrees add."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    return ChainMap(f.source, g.target,
                    {n: g[n + f.degree] @ f[n] for n in f.source.degrees}, f.degree + g.degree)


def boundary_defect(phi: ChainMap) -> ChainMap:
    """``d phi - (-1)^k phi d`` as a graded map of degree ``k - 1``."""
    k = phi.degree
    sign = -1 if k % 2 == 0 else 1
    s, t = phi.source, phi.target
    return ChainMap(s, t, {n: t.d(n + k) @ phi[n] + (phi[n - 1] @ s.d(n)).scale(sign)
                           for n in s.degrees}, k - 1)


def is_chain_map(f: ChainMap) -> bool:
    """True iff ``f`` is a cycle of the Hom complex (a strict chain map when degree is 0)."""
    return boundary_defect(f).is_zero()


def square_defects(c: ChainComplex) -> list:
    """Degrees ``n`` where ``d_{n-1} d_n`` is nonzero."""
    return [n for n in c.degrees if not (c.d(n - 1) @ c.d(n)).is_zero()]


def validate(c: ChainComplex) -> bool:
    return not square_defects(c)


# constructions


def shift(c: ChainComplex, k: int) -> ChainComplex:
    sign = -1 if k % 2 else 1
    return ChainComplex(c.ring, {n + k: r for n, r in c.ranks.items()},
                        {n + k: m.scale(sign) for n, m in c.differentials.items()})


def shift_map(f: ChainMap, k: int) -> ChainMap:
    """Same matrices, reindexed between the shifted complexes."""
    return ChainMap(shift(f.source, k), shift(f.target, k),
                    {n + k: m for n, m in f.components.items()}, f.degree)


def direct_sum(*cs: ChainComplex) -> ChainComplex:
    ring = cs[0].ring
    degrees = sorted({n for c in cs for n in c.degrees})
    ranks = {n: sum(c.rank(n) for c in cs) for n in degrees}
    diffs = {n: block_diag(ring, [c.d(n) for c in cs]) for n in degrees}
    return ChainComplex(ring, ranks, diffs)


def direct_sum_map(*fs: ChainMap) -> ChainMap:
    ring = fs[0].ring
    if len({f.degree for f in fs}) != 1:
        raise ValueError("summands must share a degree")
    src = direct_sum(*(f.source for f in fs))
    tgt = direct_sum(*(f.target for f in fs))
    return ChainMap(src, tgt, {n: block_diag(ring, [f[n] for f in fs]) for n in src.degrees},
                    fs[0].degree)


def summand_inclusion(cs, which: int) -> ChainMap:
    """Inclusion of ``cs[which]`` into ``direct_sum(*cs)``."""
    total = direct_sum(*cs)
    ring = total.ring
    comps = {}
    for n in cs[which].degrees:
        before = sum(c.rank(n) for c in cs[:which])
        r = cs[which].rank(n)
        comps[n] = Matrix._raw(ring, total.rank(n), r, tuple(
            tuple(ring(1) if i == before + j else ring(0) for j in range(r))
            for i in range(total.rank(n))))
    return ChainMap(cs[which], total, comps)


def summand_projection(cs, which: int) -> ChainMap:
    inc = summand_inclusion(cs, which)
    return ChainMap(inc.target, inc.source, {n: m.T for n, m in inc.components.items()})


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone of a degree-0 chain map."""
    if f.degree != 0:
        raise ValueError("cone needs a degree-0 map")
    a, b = f.source, f.target
    ring = a.ring
    degrees = sorted(set(n + 1 for n in a.degrees) | set(b.degrees))
    ranks = {n: a.rank(n - 1) + b.rank(n) for n in degrees}
    diffs = {}
    for n in degrees:
        if ranks.get(n - 1, 0) == 0:
            continue
        diffs[n] = block_matrix(ring, [
            [-a.d(n - 1), Matrix.zeros(ring, a.rank(n - 2), b.rank(n))],
            [f[n - 1], b.d(n)],
        ])
    return ChainComplex(ring, ranks, diffs)


# Hom complex


class HomLayout:
    """Coordinates on the degree-``n`` part of ``hom_complex(w, f)``.

    The basis lists, for each source degree ``k`` in increasing order with
    ``w_k`` and ``f_{k+n}`` both nonzero, the entries of a
    ``rank f_{k+n} x rank w_k`` block in row-major order.
    """

    def __init__(self, w: ChainComplex, f: ChainComplex, n: int):
        self.w, self.f, self.n = w, f, n
        self.blocks = []
        offset = 0
        for k in w.degrees:
            rows, cols = f.rank(k + n), w.rank(k)
            if rows:
                self.blocks.append((k, offset, rows, cols))
                offset += rows * cols
        self.dim = offset
        self.offsets = {k: (off, rows, cols) for k, off, rows, cols in self.blocks}

    def vector(self, phi: ChainMap) -> list:
        if phi.degree != self.n or phi.source != self.w or phi.target != self.f:
            raise ValueError("map does not live in this Hom-complex degree")
        out = []
        for k, _, _, _ in self.blocks:
            for row in phi[k].data:
                out.extend(row)
        return out

    def chain_map(self, vec) -> ChainMap:
        ring = self.w.ring
        comps = {}
        for k, off, rows, cols in self.blocks:
            comps[k] = Matrix._raw(ring, rows, cols, tuple(
                tuple(ring(vec[off + r * cols + c]) for c in range(cols)) for r in range(rows)))
        return ChainMap(self.w, self.f, comps, self.n)


@lru_cache(maxsize=4096)
def hom_layout(w: ChainComplex, f: ChainComplex, n: int) -> HomLayout:
    return HomLayout(w, f, n)


@lru_cache(maxsize=4096)
def hom_differential(w: ChainComplex, f: ChainComplex, n: int) -> Matrix:
    """Matrix of the Hom-complex differential from degree ``n`` to ``n - 1``."""
    ring = w.ring
    src, tgt = hom_layout(w, f, n), hom_layout(w, f, n - 1)
    out = [[ring(0)] * src.dim for _ in range(tgt.dim)]
    sign = -1 if n % 2 == 0 else 1

    def place(block: Matrix, r0: int, c0: int):
        for i, row in enumerate(block.data):
            target_row = out[r0 + i]
            for j, x in enumerate(row):
                if x != 0:
                    target_row[c0 + j] = ring.add(target_row[c0 + j], x)

    for k, off, rows, cols in src.blocks:
        # d_f o phi_k lands in block k of degree n-1
        if k in tgt.offsets:
            place(kron(f.d(k + n), Matrix.identity(ring, cols)), tgt.offsets[k][0], off)
        # -(-1)^n phi_k o d_w lands in block k+1 of degree n-1
        if k + 1 in tgt.offsets:
            place(kron(Matrix.identity(ring, rows), w.d(k + 1).T).scale(sign),
                  tgt.offsets[k + 1][0], off)
    return Matrix._raw(ring, tgt.dim, src.dim, tuple(tuple(r) for r in out))


def hom_complex(w: ChainComplex, f: ChainComplex) -> ChainComplex:
    ring = w.ring
    lo = min(f.degrees, default=0) - max(w.degrees, default=0)
    hi = max(f.degrees, default=0) - min(w.degrees, default=0)
    ranks = {n: hom_layout(w, f, n).dim for n in range(lo, hi + 1)}
    diffs = {n: hom_differential(w, f, n) for n in range(lo, hi + 1)
             if ranks[n] and ranks.get(n - 1, 0)}
    return ChainComplex(ring, ranks, diffs)


# homology and homotopy


@dataclass(frozen=True)
class HomologyGroup:
    """``R^free_rank + R/t_1 + ... + R/t_k`` with ``t_1 | t_2 | ...``."""

    torsion: tuple = ()
    free_rank: int = 0

    def is_zero(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def __str__(self):
        if self.is_zero():
            return "zero"
        if not self.torsion:
            return f"free rank {self.free_rank}"
        tors = " ".join(str(t) for t in self.torsion)
        return f"torsion {tors}; free rank {self.free_rank}"


def homology(c: ChainComplex, n: int) -> HomologyGroup:
    dn = c.d(n)
    dec = snf(dn, inverses=True)
    r = dec.rank
    # rows r.. of v^-1 are coordinates on ker(d_n); im(d_{n+1}) lies inside
    into_kernel = dec.v_inv.block_rows(r, c.rank(n)) @ c.d(n + 1)
    torsion, free = cokernel_invariants(into_kernel)
    return HomologyGroup(tuple(torsion), free)


def is_acyclic(c: ChainComplex) -> bool:
    return all(homology(c, n).is_zero() for n in c.degrees)


def null_homotopy(f: ChainMap) -> Optional[ChainMap]:
    """A degree-1 map ``h`` with ``f = d h + h d``, or None if ``f`` is not null-homotopic."""
    if f.degree != 0:
        raise ValueError("null_homotopy needs a degree-0 map")
    w, t = f.source, f.target
    rhs = hom_layout(w, t, 0).vector(f)
    x = solve(hom_differential(w, t, 1), rhs)
    if x is None:
        return None
    return hom_layout(w, t, 1).chain_map(x.column_vector(0))


def homotopy_class_is_zero(theta: ChainMap) -> bool:
    """True iff the degree-0 cycle ``theta`` is a boundary of the Hom complex."""
    if theta.degree != 0:
        raise ValueError("expected a degree-0 element of the Hom complex")
    if not is_chain_map(theta):
        raise ValueError("theta is not a cycle")
    return null_homotopy(theta) is not None


# degreewise kernels, cokernels, pushouts, pullbacks


@dataclass(frozen=True)
class KernelData:
    """Degreewise kernel of ``f: X -> Y`` with its inclusion and a graded retraction."""

    complex: ChainComplex
    inclusion: ChainMap
    retraction: ChainMap  # graded (not a chain map in general); retraction o inclusion = id


@lru_cache(maxsize=1024)
def degreewise_kernel(f: ChainMap) -> KernelData:
    if f.degree != 0:
        raise ValueError("kernel needs a degree-0 map")
    x = f.source
    ks, ls = {}, {}
    for n in x.degrees:
        ks[n], ls[n] = kernel(f[n])
    ranks = {n: k.cols for n, k in ks.items()}
    diffs = {n: ls[n - 1] @ x.d(n) @ ks[n] for n in x.degrees if n - 1 in ks}
    kc = ChainComplex(x.ring, ranks, diffs)
    return KernelData(kc, ChainMap(kc, x, ks), ChainMap(x, kc, ls))


@dataclass(frozen=True)
class CokernelData:
    """Degreewise cokernel ``C`` of a split embedding ``i: A -> B``.

    ``projection: B -> C`` is a chain map; ``section: C -> B`` and
    ``retraction: B -> A`` are graded maps with ``retraction o i = id``,
    ``projection o section = id`` and ``i o retraction + section o projection = id``.
    """

    complex: ChainComplex
    projection: ChainMap
    section: ChainMap
    retraction: ChainMap

    def attaching_map(self) -> Dict[int, Matrix]:
        """``kappa_n = retraction d_B section: C_n -> A_{n-1}``, the part of ``d_B`` gluing ``C`` onto ``A``."""
        b = self.section.target
        return {n: self.retraction[n - 1] @ b.d(n) @ self.section[n]
                for n in self.complex.degrees}


@lru_cache(maxsize=1024)
def degreewise_cokernel(i: ChainMap) -> CokernelData:
    """Raises ValueError if some component is not a split mono with free cokernel."""
    if i.degree != 0:
        raise ValueError("cokernel needs a degree-0 map")
    a, b = i.source, i.target
    qs, ss, rs = {}, {}, {}
    for n in sorted(set(a.degrees) | set(b.degrees)):
        try:
            sp = split_embedding(i[n])
        except ValueError:
            raise ValueError(f"component in degree {n} is not a split monomorphism "
                             "with free cokernel") from None
        qs[n], ss[n], rs[n] = sp.quotient, sp.section, sp.retraction
    ranks = {n: q.rows for n, q in qs.items()}
    diffs = {n: qs[n - 1] @ b.d(n) @ ss[n] for n in qs if n - 1 in qs}
    c = ChainComplex(a.ring, ranks, diffs)
    return CokernelData(c, ChainMap(b, c, qs), ChainMap(c, b, ss), ChainMap(b, a, rs))


def pushout(i: ChainMap, g: ChainMap):
    """Pushout of ``B <-i- A -g-> A'`` for ``i`` a degreewise split mono.

    Returns ``(B', i', j)`` where ``i': A' -> B'`` and ``j: B -> B'``.  ``B'`` is
    presented as ``A' + C`` (``C`` the cokernel of ``i``) with differential
    ``[[d_A', g kappa], [0, d_C]]``, so ``i'`` is the standard inclusion.
    """
    if i.source != g.source:
        raise ValueError("span legs must share a source")
    cok = degreewise_cokernel(i)
    c, a2 = cok.complex, g.target
    ring = a2.ring
    kappa = cok.attaching_map()
    degrees = sorted(set(a2.degrees) | set(c.degrees))
    ranks = {n: a2.rank(n) + c.rank(n) for n in degrees}
    diffs = {}
    for n in degrees:
        glue = g[n - 1] @ kappa[n] if n in kappa else Matrix.zeros(ring, a2.rank(n - 1), c.rank(n))
        diffs[n] = block_matrix(ring, [
            [a2.d(n), glue],
            [Matrix.zeros(ring, c.rank(n - 1), a2.rank(n)), c.d(n)],
        ])
    b2 = ChainComplex(ring, ranks, diffs)
    i2 = ChainMap(a2, b2, {n: block_matrix(ring, [[Matrix.identity(ring, a2.rank(n))],
                                                  [Matrix.zeros(ring, c.rank(n), a2.rank(n))]])
                           for n in a2.degrees})
    b = i.target
    j = ChainMap(b, b2, {n: block_matrix(ring, [[g[n] @ cok.retraction[n]],
                                                [cok.projection[n]]])
                         for n in b.degrees})
    return b2, i2, j


def pullback(p: ChainMap, g: ChainMap):
    """Pullback of ``X -p-> Y <-g- B``: returns ``(P, pr_X, pr_B)``.

    ``P`` is the degreewise kernel of ``(x, b) -> p x - g b``.
    """
    if p.target != g.target:
        raise ValueError("cospan legs must share a target")
    x, b = p.source, g.source
    ring = x.ring
    s = direct_sum(x, b)
    diff = ChainMap(s, p.target, {n: block_matrix(ring, [[p[n], -g[n]]]) for n in s.degrees})
    kd = degreewise_kernel(diff)
    pr_x = compose(summand_projection([x, b], 0), kd.inclusion)
    pr_b = compose(summand_projection([x, b], 1), kd.inclusion)
    return kd.complex, pr_x, pr_b


def equal_up_to_boundary(f: ChainMap, g: ChainMap) -> bool:
    """True iff two degree-0 chain maps are chain homotopic."""
    return homotopy_class_is_zero(f - g)
