"""Exact matrix algebra over the integers, the rationals and prime fields.

Everything here works on exact scalars: Python ``int`` for ZZ and GF(p),
``fractions.Fraction`` for QQ.  The central routine is :func:`snf`, a Smith
normal form by elementary row and column operations; solving, kernels,
cokernel presentations and the split-monomorphism test are all read off it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``Ring("Z")``, ``Ring("Q")`` or ``Ring("F", p)``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "F"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "F" and not _is_prime(self.p):
            raise ValueError(f"GF(p) needs a prime, got {self.p}")
        if self.kind != "F" and self.p != 0:
            raise ValueError("only prime fields carry a characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def __str__(self):
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"Z/{self.p}")

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Ring":
        text = text.strip()
        if text in ("Z", "ZZ"):
            return ZZ
        if text in ("Q", "QQ"):
            return QQ
        if text.startswith("Z/"):
            return GF(int(text[2:]))
        raise ValueError(f"cannot parse ring {text!r}")

    # scalar arithmetic

    def __call__(self, x):
        """Coerce an int, Fraction or literal string into this ring."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def is_unit(self, a) -> bool:
        if self.kind == "Z":
            return a in (1, -1)
        return a != 0

    def inv(self, a):
        if self.kind == "Z":
            if a not in (1, -1):
                raise ZeroDivisionError(f"{a} is not a unit in Z")
            return a
        if self.kind == "Q":
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def mul(self, a, b):
        return a * b % self.p if self.kind == "F" else a * b

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "F" else a + b

    def neg(self, a):
        return -a % self.p if self.kind == "F" else -a

    def size(self, a) -> int:
        """Pivot-selection weight: absolute value over Z, 1 for any nonzero field element."""
        if self.kind == "Z":
            return abs(a)
        return 1 if a != 0 else 0

    def quo(self, a, b):
        """Quotient minimising the remainder ``a - q*b`` (exact over fields)."""
        if self.kind == "Z":
            q, r = divmod(a, b)
            if 2 * abs(r) > abs(b):
                q += 1
            return q
        if self.kind == "Q":
            return Fraction(a) / b
        return a * pow(b, -1, self.p) % self.p

    def divides(self, b, a) -> bool:
        """True iff ``b | a``."""
        if b == 0:
            return a == 0
        if self.kind == "Z":
            return a % b == 0
        return True

    def associate(self, a):
        """Canonical associate: ``|a|`` over Z, 1 for nonzero field elements."""
        if self.kind == "Z":
            return abs(a)
        return 1 if a != 0 else 0

    def format(self, a) -> str:
        if isinstance(a, Fraction) and a.denominator == 1:
            return str(a.numerator)
        return str(a)


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("F", p)


class Matrix:
    """Immutable dense matrix over a :class:`Ring`.

    Zero-row and zero-column matrices are allowed; they appear constantly as
    the components of maps touching an unsupported degree.
    """

    __slots__ = ("ring", "rows", "cols", "data", "_hash")

    def __init__(self, ring: Ring, rows: int, cols: int, data: Iterable[Sequence] = ()):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        data = tuple(tuple(ring(x) for x in row) for row in data)
        if not data:
            data = tuple((ring(0),) * cols for _ in range(rows))
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, ring, rows, cols, data):
        m = cls.__new__(cls)
        m.ring, m.rows, m.cols, m.data, m._hash = ring, rows, cols, data, None
        return m

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        z = ring(0)
        return cls._raw(ring, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        one, z = ring(1), ring(0)
        return cls._raw(ring, n, n, tuple(tuple(one if i == j else z for j in range(n))
                                          for i in range(n)))

    @classmethod
    def column(cls, ring: Ring, entries: Sequence) -> "Matrix":
        return cls(ring, len(entries), 1, [[x] for x in entries])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.shape, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(x) for x in r) for r in self.data)
        return f"Matrix[{self.ring}]({self.rows}x{self.cols}: {body})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def tolist(self):
        return [list(r) for r in self.data]

    def column_vector(self, j: int) -> list:
        return [r[j] for r in self.data]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.ring, self.cols, self.rows, tuple(zip(*self.data))
                           if self.rows else tuple(() for _ in range(self.cols)))

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        add = self.ring.add
        return Matrix._raw(self.ring, self.rows, self.cols,
                           tuple(tuple(add(a, b) for a, b in zip(r, s))
                                 for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix._raw(self.ring, self.rows, self.cols,
                           tuple(tuple(neg(a) for a in r) for r in self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring(c)
        mul = self.ring.mul
        return Matrix._raw(self.ring, self.rows, self.cols,
                           tuple(tuple(mul(c, a) for a in r) for r in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ring = self.ring
        zero = ring(0)
        cols = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a != 0]
            if not nz:
                out.append((zero,) * other.cols)
                continue
            row = []
            for c in cols:
                s = sum(a * c[k] for k, a in nz)
                row.append(s % ring.p if ring.kind == "F" else s)
            out.append(tuple(row))
        return Matrix._raw(ring, self.rows, other.cols, tuple(out))

    def block_rows(self, start: int, stop: int) -> "Matrix":
        return Matrix._raw(self.ring, stop - start, self.cols, self.data[start:stop])

    def block_cols(self, start: int, stop: int) -> "Matrix":
        return Matrix._raw(self.ring, self.rows, stop - start,
                           tuple(r[start:stop] for r in self.data))


def hstack(ring: Ring, blocks: Sequence[Matrix], rows: Optional[int] = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(ring, rows or 0, 0)
    nrows = blocks[0].rows
    if any(b.rows != nrows for b in blocks):
        raise ValueError("hstack needs equal row counts")
    data = tuple(sum((b.data[i] for b in blocks), ()) for i in range(nrows))
    return Matrix._raw(ring, nrows, sum(b.cols for b in blocks), data)


def vstack(ring: Ring, blocks: Sequence[Matrix], cols: Optional[int] = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(ring, 0, cols or 0)
    ncols = blocks[0].cols
    if any(b.cols != ncols for b in blocks):
        raise ValueError("vstack needs equal column counts")
    return Matrix._raw(ring, sum(b.rows for b in blocks), ncols,
                       sum((b.data for b in blocks), ()))


def block_matrix(ring: Ring, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack(ring, [hstack(ring, row) for row in blocks])


def block_diag(ring: Ring, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[ring(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            data[r0 + i][c0:c0 + b.cols] = b.data[i]
        r0 += b.rows
        c0 += b.cols
    return Matrix._raw(ring, rows, cols, tuple(tuple(r) for r in data))


def kron(a: Matrix, b: Matrix) -> Matrix:
    ring = a.ring
    mul = ring.mul
    zero = ring(0)
    data = []
    for ar in a.data:
        for br in b.data:
            data.append(tuple(mul(x, y) if x != 0 else zero for x in ar for y in br))
    return Matrix._raw(ring, a.rows * b.rows, a.cols * b.cols, tuple(data))


# Smith normal form


@dataclass(frozen=True)
class SnfDecomposition:
    """``u @ a @ v == s`` with ``u``, ``v`` invertible and ``s`` diagonal.

    ``u_inv`` and ``v_inv`` are filled only when requested from :func:`snf`.
    """

    u: Matrix
    s: Matrix
    v: Matrix
    rank: int
    u_inv: Optional[Matrix] = None
    v_inv: Optional[Matrix] = None

    @property
    def diagonal(self) -> list:
        return [self.s[k, k] for k in range(min(self.s.rows, self.s.cols))]

    @property
    def invariant_factors(self) -> tuple:
        return tuple(self.diagonal[: self.rank])


def snf(a: Matrix, inverses: bool = False) -> SnfDecomposition:
    """Smith normal form by elementary operations.

    Pivots are chosen with minimal absolute value over the remaining block.
    Invariant factors come out as non-negative integers over ZZ and as 1 over
    fields.  With ``inverses=True`` the inverses of ``u`` and ``v`` are
    maintained alongside at the cost of roughly doubling the work.
    """
    ring = a.ring
    m, n = a.rows, a.cols
    one, zero = ring(1), ring(0)
    S = [list(r) for r in a.data]
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Ui = [row[:] for row in U] if inverses else None
    Vi = [row[:] for row in V] if inverses else None
    F = ring.kind == "F"
    p = ring.p

    def red(x):
        return x % p if F else x

    def row_add(i, j, c):  # row_i += c * row_j
        Si, Sj = S[i], S[j]
        for k in range(n):
            if Sj[k] != 0:
                Si[k] = red(Si[k] + c * Sj[k])
        Ui_, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k] != 0:
                Ui_[k] = red(Ui_[k] + c * Uj[k])
        if Ui is not None:
            for r in Ui:
                if r[i] != 0:
                    r[j] = red(r[j] - c * r[i])

    def col_add(i, j, c):  # col_j += c * col_i
        for r in S:
            if r[i] != 0:
                r[j] = red(r[j] + c * r[i])
        for r in V:
            if r[i] != 0:
                r[j] = red(r[j] + c * r[i])
        if Vi is not None:
            Vii, Vij = Vi[i], Vi[j]
            for k in range(n):
                if Vij[k] != 0:
                    Vii[k] = red(Vii[k] - c * Vij[k])

    def row_swap(i, j):
        if i == j:
            return
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_scale(i, c):
        S[i] = [red(c * x) for x in S[i]]
        U[i] = [red(c * x) for x in U[i]]
        if Ui is not None:
            ci = ring.inv(c)
            for r in Ui:
                r[i] = red(r[i] * ci)

    def smallest(t):
        best, where = None, None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i][j]
                if x != 0:
                    w = ring.size(x)
                    if best is None or w < best:
                        best, where = w, (i, j)
                        if w == 1:
                            return where
        return where

    rank = 0
    for t in range(min(m, n)):
        where = smallest(t)
        if where is None:
            break
        row_swap(t, where[0])
        col_swap(t, where[1])
        while True:
            piv = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    row_add(i, t, ring.neg(ring.quo(S[i][t], piv)))
                    if S[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    col_add(t, j, ring.neg(ring.quo(S[t][j], piv)))
                    if S[t][j] != 0:
                        dirty = True
            if dirty:
                # a smaller remainder appeared in row/column t: move it to the pivot
                best, where = ring.size(piv), None
                for i in range(t + 1, m):
                    if S[i][t] != 0 and ring.size(S[i][t]) < best:
                        best, where = ring.size(S[i][t]), (i, t)
                for j in range(t + 1, n):
                    if S[t][j] != 0 and ring.size(S[t][j]) < best:
                        best, where = ring.size(S[t][j]), (t, j)
                if where is not None:
                    row_swap(t, where[0])
                    col_swap(t, where[1])
                continue
            if not ring.is_field:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if not ring.divides(piv, S[i][j])), None)
                if bad is not None:
                    row_add(t, bad[0], one)
                    continue
            break
        piv = S[t][t]
        canon = ring.associate(piv)
        if piv != canon:
            row_scale(t, ring.quo(canon, piv))
        rank += 1

    def mk(rows, r, c):
        return Matrix._raw(ring, r, c, tuple(tuple(x) for x in rows))

    return SnfDecomposition(
        u=mk(U, m, m), s=mk(S, m, n), v=mk(V, n, n), rank=rank,
        u_inv=mk(Ui, m, m) if Ui is not None else None,
        v_inv=mk(Vi, n, n) if Vi is not None else None,
    )


# consequences of the Smith form


@dataclass(frozen=True)
class Inconsistency:
    """Why ``a @ x == b`` has no solution.

    Row ``row`` of the transformed system ``s @ y == u @ b`` reads
    ``divisor * y_row == value`` and ``divisor`` does not divide ``value``
    (``divisor == 0`` means the row of ``s`` is zero).
    """

    row: int
    value: object
    divisor: object


def solve_with_certificate(a: Matrix, b: Matrix):
    """Return ``(x, None)`` with ``a @ x == b`` or ``(None, Inconsistency)``.

    ``b`` may have several columns; each is solved independently and the
    first failing column's certificate is reported.
    """
    if b.rows != a.rows:
        raise ValueError(f"dimension mismatch: a is {a.shape}, b has {b.rows} rows")
    ring = a.ring
    dec = snf(a)
    ub = dec.u @ b
    y = [[ring(0)] * b.cols for _ in range(a.cols)]
    for k in range(a.rows):
        d = dec.s[k, k] if k < dec.rank else ring(0)
        for c in range(b.cols):
            val = ub[k, c]
            if not ring.divides(d, val):
                return None, Inconsistency(k, val, d)
            if d != 0:
                y[k][c] = ring.quo(val, d)
    return dec.v @ Matrix._raw(ring, a.cols, b.cols, tuple(tuple(r) for r in y)), None


def solve(a: Matrix, b) -> Optional[Matrix]:
    """Exact solution of ``a @ x == b`` over the ring of ``a``, or None.

    ``b`` is a Matrix or a plain sequence (read as a column).
    """
    if not isinstance(b, Matrix):
        b = Matrix.column(a.ring, list(b))
    x, _ = solve_with_certificate(a, b)
    return x


def rank(a: Matrix) -> int:
    return snf(a).rank


def cokernel_invariants(a: Matrix):
    """Presentation of ``coker(a)``: ``(torsion factors, free rank)``.

    Unit invariant factors are dropped; over fields the torsion is empty.
    """
    dec = snf(a)
    torsion = tuple(d for d in dec.invariant_factors if not a.ring.is_unit(d))
    return torsion, a.rows - dec.rank


def is_unit_embedding(a: Matrix) -> bool:
    """Injective with every invariant factor a unit, i.e. split mono with free cokernel."""
    dec = snf(a)
    return dec.rank == a.cols and all(a.ring.is_unit(d) for d in dec.invariant_factors)


def is_surjective(a: Matrix) -> bool:
    dec = snf(a)
    return dec.rank == a.rows and all(a.ring.is_unit(d) for d in dec.invariant_factors)


def kernel(a: Matrix):
    """Basis ``k`` of ``ker(a)`` (as columns) and a left inverse ``l`` with ``l @ k == I``.

    Over ZZ the kernel of a map of free modules is a direct summand, so the
    left inverse always exists.
    """
    dec = snf(a, inverses=True)
    r = dec.rank
    k = dec.v.block_cols(r, a.cols)
    l = dec.v_inv.block_rows(r, a.cols)
    return k, l


@dataclass(frozen=True)
class Splitting:
    """Degreewise splitting of a unit embedding ``a: R^n -> R^m``.

    ``retraction @ a == I``, ``quotient @ a == 0``, ``quotient @ section == I``
    and ``a @ retraction + section @ quotient == I``.
    """

    retraction: Matrix
    quotient: Matrix
    section: Matrix


def split_embedding(a: Matrix) -> Splitting:
    dec = snf(a, inverses=True)
    ring = a.ring
    r = dec.rank
    if r != a.cols or not all(ring.is_unit(d) for d in dec.invariant_factors):
        raise ValueError("matrix is not a split monomorphism with free cokernel")
    # u a v = [D; 0] with D a diagonal of units
    dinv = Matrix._raw(ring, r, r, tuple(
        tuple(ring.inv(dec.s[i, i]) if i == j else ring(0) for j in range(r)) for i in range(r)))
    retraction = dec.v @ dinv @ dec.u.block_rows(0, r)
    quotient = dec.u.block_rows(r, a.rows)
    section = dec.u_inv.block_cols(r, a.rows)
    return Splitting(retraction, quotient, section)
