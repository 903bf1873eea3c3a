"""Ground-truth lifting by one global linear solve, with no homotopy theory.

Unknowns are the entries of every component ``ell_n: B_n -> X_n``, ordered
degree-major (increasing ``n``) and row-major within a component.  Equations
are stacked in the order: chain-map condition ``d ell_n = ell_{n-1} d`` for
each ``n``, then ``ell_n i_n = top_n``, then ``p_n ell_n = bottom_n``; each
block is itself ordered by degree, then entry (row-major).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chain import ChainMap, is_chain_map
from .linalg import Inconsistency, Matrix, solve_with_certificate


class _System:
    def __init__(self, ring):
        self.ring = ring
        self.index = {}
        self.nvars = 0
        self.rows = []
        self.rhs = []

    def add_block(self, key, rows: int, cols: int):
        self.index[key] = (self.nvars, rows, cols)
        self.nvars += rows * cols

    def var(self, key, r, c):
        off, _, cols = self.index[key]
        return off + r * cols + c

    def equation(self, coeffs: dict, value):
        self.rows.append(coeffs)
        self.rhs.append(value)

    def matrices(self):
        ring = self.ring
        data = []
        for coeffs in self.rows:
            row = [ring(0)] * self.nvars
            for j, x in coeffs.items():
                row[j] = ring.add(row[j], x)
            data.append(row)
        a = Matrix(ring, len(data), self.nvars, data)
        b = Matrix(ring, len(self.rhs), 1, [[v] for v in self.rhs])
        return a, b


@dataclass(frozen=True)
class OracleResult:
    ell: Optional[ChainMap]
    certificate: Optional[Inconsistency]
    unknowns: int
    equations: int


def brute_lift_result(sq) -> OracleResult:
    i, p, top, bottom = sq.i, sq.p, sq.top, sq.bottom
    a, b, x = i.source, i.target, p.source
    y = p.target
    ring = i.ring
    sysm = _System(ring)
    levels = [n for n in b.degrees if x.rank(n)]
    for n in levels:
        sysm.add_block(n, x.rank(n), b.rank(n))
    zero = ring(0)

    # d_X ell_n - ell_{n-1} d_B = 0 as maps B_n -> X_{n-1}
    for n in b.degrees:
        dx, db = x.d(n), b.d(n)
        for r in range(x.rank(n - 1)):
            for c in range(b.rank(n)):
                coeffs = {}
                if n in sysm.index:
                    for t in range(x.rank(n)):
                        if dx[r, t] != 0:
                            j = sysm.var(n, t, c)
                            coeffs[j] = coeffs.get(j, zero) + dx[r, t]
                if n - 1 in sysm.index:
                    for t in range(b.rank(n - 1)):
                        if db[t, c] != 0:
                            j = sysm.var(n - 1, r, t)
                            coeffs[j] = coeffs.get(j, zero) - db[t, c]
                sysm.equation(coeffs, zero)

    # ell_n i_n = top_n
    for n in a.degrees:
        for r in range(x.rank(n)):
            for c in range(a.rank(n)):
                coeffs = {}
                for t in range(b.rank(n)):
                    if i[n][t, c] != 0:
                        j = sysm.var(n, r, t)
                        coeffs[j] = coeffs.get(j, zero) + i[n][t, c]
                sysm.equation(coeffs, top[n][r, c])

    # p_n ell_n = bottom_n
    for n in b.degrees:
        for r in range(y.rank(n)):
            for c in range(b.rank(n)):
                coeffs = {}
                for t in range(x.rank(n)):
                    if p[n][r, t] != 0:
                        j = sysm.var(n, t, c)
                        coeffs[j] = coeffs.get(j, zero) + p[n][r, t]
                sysm.equation(coeffs, bottom[n][r, c])

    mat, rhs = sysm.matrices()
    sol, cert = solve_with_certificate(mat, rhs)
    if sol is None:
        return OracleResult(None, cert, sysm.nvars, len(sysm.rows))
    vec = sol.column_vector(0)
    comps = {}
    for n in levels:
        off, rows, cols = sysm.index[n]
        comps[n] = Matrix(ring, rows, cols,
                          [vec[off + r * cols: off + (r + 1) * cols] for r in range(rows)])
    ell = ChainMap(b, x, comps)
    return OracleResult(ell, None, sysm.nvars, len(sysm.rows))


def brute_lift(sq):
    """A verified :class:`~obstruct.obstruction.Lift`, or None when none exists."""
    from .obstruction import Lift

    res = brute_lift_result(sq)
    if res.ell is None:
        return None
    lift = Lift(res.ell)
    if not lift.check(sq):
        raise AssertionError("oracle solution does not recompose")
    return lift


def brute_homotopy_zero(theta: ChainMap) -> bool:
    """True iff ``theta = d h + h d`` for some degree-1 ``h``, by a directly assembled system."""
    if theta.degree != 0:
        raise ValueError("expected a degree-0 map")
    if not is_chain_map(theta):
        raise ValueError("theta is not a cycle")
    w, f = theta.source, theta.target
    ring = theta.ring
    zero = ring(0)
    sysm = _System(ring)
    for k in w.degrees:
        if f.rank(k + 1):
            sysm.add_block(k, f.rank(k + 1), w.rank(k))
    # theta_k = d_F h_k + h_{k-1} d_W as maps W_k -> F_k
    for k in w.degrees:
        df, dw = f.d(k + 1), w.d(k)
        for r in range(f.rank(k)):
            for c in range(w.rank(k)):
                coeffs = {}
                if k in sysm.index:
                    for t in range(f.rank(k + 1)):
                        if df[r, t] != 0:
                            j = sysm.var(k, t, c)
                            coeffs[j] = coeffs.get(j, zero) + df[r, t]
                if k - 1 in sysm.index:
                    for t in range(w.rank(k - 1)):
                        if dw[t, c] != 0:
                            j = sysm.var(k - 1, r, t)
                            coeffs[j] = coeffs.get(j, zero) + dw[t, c]
                sysm.equation(coeffs, theta[k][r, c])
    mat, rhs = sysm.matrices()
    sol, _ = solve_with_certificate(mat, rhs)
    return sol is not None
