"""Exact integer matrix algebra.

Smith and Hermite normal forms, integral linear solving and the invariants
(rank plus torsion coefficients) of subquotients of free abelian groups.
Everything works over Python ints, so there is no overflow.

>>> snf = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
>>> snf.diagonal
[2, 4]
>>> solve_linear(IntMatrix([[2, 3]]), [1]) is not None
True
>>> print(homology_invariants(IntMatrix([[2]]), IntMatrix.zeros(0, 1)))
Z/2
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class IntMatrix:
    """An immutable integer matrix.

    Entries are addressed densely (``A[i, j]`` is 0 off the support), but rows
    are stored as ``{column: value}`` dicts because nerve coboundary matrices
    reach thousands of rows with a handful of nonzeros each.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Sequence[Sequence[int]] = (), ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows: expected %d columns, got %d" % (ncols, len(r)))
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = tuple({j: int(v) for j, v in enumerate(r) if v} for r in rows)

    @classmethod
    def from_sparse_rows(cls, nrows: int, ncols: int, rows: Iterable[Mapping[int, int]]) -> IntMatrix:
        self = cls.__new__(cls)
        self.nrows = nrows
        self.ncols = ncols
        out = []
        for r in rows:
            d = {j: int(v) for j, v in r.items() if v}
            for j in d:
                if not 0 <= j < ncols:
                    raise IndexError("column %d out of range" % j)
            out.append(d)
        if len(out) != nrows:
            raise ValueError("expected %d rows, got %d" % (nrows, len(out)))
        self._rows = tuple(out)
        return self

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls.from_sparse_rows(nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_sparse_rows(n, n, [{i: 1} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self._rows[i].get(j, 0)

    def sparse_row(self, i: int) -> dict[int, int]:
        return dict(self._rows[i])

    def row(self, i: int) -> list[int]:
        r = self._rows[i]
        return [r.get(j, 0) for j in range(self.ncols)]

    def column(self, j: int) -> list[int]:
        return [r.get(j, 0) for r in self._rows]

    def tolist(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.nrows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def transpose(self) -> IntMatrix:
        cols: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return IntMatrix.from_sparse_rows(self.ncols, self.nrows, cols)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
            out = []
            for r in self._rows:
                acc: dict[int, int] = {}
                for k, a in r.items():
                    for j, b in other._rows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append(acc)
            return IntMatrix.from_sparse_rows(self.nrows, other.ncols, out)
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length %d does not match %d columns" % (len(vec), self.ncols))
        return [sum(v * vec[j] for j, v in r.items()) for r in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 400:
            return "IntMatrix(%r)" % (self.tolist(),)
        return "IntMatrix(<%dx%d, nnz=%d>)" % (self.nrows, self.ncols, self.nnz())

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("det of a non-square matrix")
        if n == 0:
            return 1
        M = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if M[k][k] == 0:
                for i in range(k + 1, n):
                    if M[i][k]:
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        return sign * M[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Z^rank + Z/t1 + ... + Z/tn with t1 | t2 | ... | tn and every ti >= 2."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0:
            raise ValueError("negative rank")
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise ValueError("torsion coefficients must be >= 2, got %d" % t)
            if i and t % self.torsion[i - 1]:
                raise ValueError("torsion %r is not a divisibility chain" % (self.torsion,))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Smith normal form (dense, with optional transform tracking)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D diagonal, d1 | d2 | ...

    ``U_inv`` and ``V_inv`` are the exact inverses, kept because kernel and
    cokernel bases are read off them.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(self.rank)]


class _Reducer:
    """Dense elimination state. Row ops are mirrored on U and U_inv^T,
    column ops on V^T and V_inv, so every transform update is a row update."""

    def __init__(self, rows: list[list[int]], ncols: int, track: bool):
        self.D = rows
        self.m = len(rows)
        self.n = ncols
        self.track = track
        if track:
            self.U = _eye(self.m)
            self.UinvT = _eye(self.m)
            self.VT = _eye(self.n)
            self.Vinv = _eye(self.n)

    # row_i += c * row_t
    def row_add(self, i, t, c):
        D = self.D
        D[i] = [a + c * b for a, b in zip(D[i], D[t])]
        if self.track:
            self.U[i] = [a + c * b for a, b in zip(self.U[i], self.U[t])]
            self.UinvT[t] = [a - c * b for a, b in zip(self.UinvT[t], self.UinvT[i])]

    def row_swap(self, i, j):
        if i == j:
            return
        D = self.D
        D[i], D[j] = D[j], D[i]
        if self.track:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            self.UinvT[i], self.UinvT[j] = self.UinvT[j], self.UinvT[i]

    def row_neg(self, i):
        self.D[i] = [-a for a in self.D[i]]
        if self.track:
            self.U[i] = [-a for a in self.U[i]]
            self.UinvT[i] = [-a for a in self.UinvT[i]]

    # col_j += c * col_t
    def col_add(self, j, t, c):
        for r in self.D:
            if r[t]:
                r[j] += c * r[t]
        if self.track:
            self.VT[j] = [a + c * b for a, b in zip(self.VT[j], self.VT[t])]
            self.Vinv[t] = [a - c * b for a, b in zip(self.Vinv[t], self.Vinv[j])]

    def col_swap(self, i, j):
        if i == j:
            return
        for r in self.D:
            r[i], r[j] = r[j], r[i]
        if self.track:
            self.VT[i], self.VT[j] = self.VT[j], self.VT[i]
            self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]

    def find_pivot(self, t):
        D = self.D
        # rows >= t vanish left of column t, so a whole-row membership test is exact
        for i in range(t, self.m):
            r = D[i]
            if 1 in r:
                return i, r.index(1)
            if -1 in r:
                return i, r.index(-1)
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                a = D[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        return None if best is None else best[1:]

    def reduce(self) -> int:
        m, n, D = self.m, self.n, self.D
        t = 0
        while t < min(m, n):
            p = self.find_pivot(t)
            if p is None:
                break
            self.row_swap(t, p[0])
            self.col_swap(t, p[1])
            while True:
                piv = D[t][t]
                for i in range(t + 1, m):
                    a = D[i][t]
                    if a:
                        self.row_add(i, t, -(a // piv))
                rest = [(abs(D[i][t]), i) for i in range(t + 1, m) if D[i][t]]
                if rest:
                    self.row_swap(t, min(rest)[1])
                    continue
                for j in range(t + 1, n):
                    a = D[t][j]
                    if a:
                        self.col_add(j, t, -(a // piv))
                rest = [(abs(D[t][j]), j) for j in range(t + 1, n) if D[t][j]]
                if rest:
                    self.col_swap(t, min(rest)[1])
                    continue
                break
            t += 1
        for i in range(t):
            for j in range(i + 1, t):
                if D[j][j] % D[i][i]:
                    self._gcd_fix(i, j)
        for i in range(t):
            if D[i][i] < 0:
                self.row_neg(i)
        return t

    def _gcd_fix(self, i, j):
        # turn diag(a, b) into diag(gcd, lcm) up to sign
        D = self.D
        self.col_add(i, j, 1)
        while D[j][i]:
            q = D[i][i] // D[j][i]
            self.row_add(i, j, -q)
            self.row_swap(i, j)
        if D[i][j]:
            self.col_add(j, i, -(D[i][j] // D[i][i]))
        if D[i][i] < 0:
            self.row_neg(i)


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms and their inverses."""
    r = _Reducer(A.tolist(), A.ncols, track=True)
    rank = r.reduce()
    m, n = A.shape
    D = IntMatrix(r.D, ncols=n)
    U = IntMatrix(r.U, ncols=m)
    U_inv = IntMatrix(r.UinvT, ncols=m).transpose()
    V = IntMatrix(r.VT, ncols=n).transpose()
    V_inv = IntMatrix(r.Vinv, ncols=n)
    return SmithDecomposition(U=U, D=D, V=V, U_inv=U_inv, V_inv=V_inv, rank=rank)


def elementary_divisors(A: IntMatrix) -> list[int]:
    """Nonzero Smith diagonal of A, in divisibility order.

    Unit pivots are eliminated first on the sparse rows (boundary matrices are
    almost entirely +-1), then whatever is left goes through the dense reducer.
    """
    R = {i: dict(A._rows[i]) for i in range(A.nrows) if A._rows[i]}
    colmap: dict[int, set[int]] = {}
    for i, r in R.items():
        for c in r:
            colmap.setdefault(c, set()).add(i)
    units = 0
    for c in sorted(colmap):
        cand = colmap.get(c)
        if not cand:
            continue
        best = None
        for i in cand:
            v = R[i][c]
            if v == 1 or v == -1:
                if best is None or len(R[i]) < best[0]:
                    best = (len(R[i]), i)
        if best is None:
            continue
        i = best[1]
        prow = R.pop(i)
        pv = prow[c]
        for cc in prow:
            colmap[cc].discard(i)
        for j in list(colmap[c]):
            r = R[j]
            q = r[c] * pv
            for cc, v in prow.items():
                nv = r.get(cc, 0) - q * v
                if nv:
                    if cc not in r:
                        colmap[cc].add(j)
                    r[cc] = nv
                elif cc in r:
                    del r[cc]
                    colmap[cc].discard(j)
            if not r:
                del R[j]
        del colmap[c]
        units += 1
    if not R:
        return [1] * units
    cols = sorted({c for r in R.values() for c in r})
    pos = {c: k for k, c in enumerate(cols)}
    dense = []
    for r in R.values():
        row = [0] * len(cols)
        for c, v in r.items():
            row[pos[c]] = v
        dense.append(row)
    red = _Reducer(dense, len(cols), track=False)
    rank = red.reduce()
    diag = [red.D[i][i] for i in range(rank)]
    return [1] * units + diag


def matrix_rank(A: IntMatrix) -> int:
    return len(elementary_divisors(A))


# ---------------------------------------------------------------------------
# Hermite normal form and linear solving


@dataclass(frozen=True)
class HermiteDecomposition:
    """``A @ W == H`` with W unimodular and H in column echelon form.

    Column k of H (k < len(pivots)) has its leading nonzero, which is
    positive, at row ``pivots[k]``; entries left of a pivot are reduced into
    ``[0, pivot)``. Columns from ``len(pivots)`` on are zero, so the matching
    columns of W span the kernel of A.
    """

    H: IntMatrix
    W: IntMatrix
    pivots: tuple[int, ...]


def hermite_normal_form(A: IntMatrix) -> HermiteDecomposition:
    m, n = A.shape
    # column operations on A are row operations on A^T
    rows = A.transpose().tolist()
    WT = _eye(n)

    def add(i, t, c):
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[t])]
        WT[i] = [a + c * b for a, b in zip(WT[i], WT[t])]

    def swap(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        WT[i], WT[j] = WT[j], WT[i]

    r = 0
    pivots = []
    for col in range(m):
        if r == n:
            break
        while True:
            nz = [(abs(rows[i][col]), i) for i in range(r, n) if rows[i][col]]
            if not nz:
                break
            swap(r, min(nz)[1])
            if len(nz) == 1:
                break
            piv = rows[r][col]
            for i in range(r + 1, n):
                a = rows[i][col]
                if a:
                    add(i, r, -(a // piv))
        if rows[r][col] == 0:
            continue
        if rows[r][col] < 0:
            rows[r] = [-a for a in rows[r]]
            WT[r] = [-a for a in WT[r]]
        piv = rows[r][col]
        for i in range(r):
            a = rows[i][col]
            if a < 0 or a >= piv:
                add(i, r, -(a // piv))
        pivots.append(col)
        r += 1
    H = IntMatrix(rows, ncols=m).transpose() if n else IntMatrix.zeros(m, 0)
    W = IntMatrix(WT, ncols=n).transpose()
    return HermiteDecomposition(H=H, W=W, pivots=tuple(pivots))


def solve_linear(A: IntMatrix, b: Sequence[int], hnf: HermiteDecomposition | None = None) -> list[int] | None:
    """An integer solution x of ``A @ x == b``, or None if there is none.

    A precomputed ``hnf`` of A may be passed when solving many right-hand
    sides against one matrix.
    """
    b = [int(v) for v in b]
    if len(b) != A.nrows:
        raise ValueError("right-hand side has length %d, matrix has %d rows" % (len(b), A.nrows))
    if hnf is None:
        hnf = hermite_normal_form(A)
    H, W = hnf.H, hnf.W
    residual = list(b)
    y = [0] * A.ncols
    for k, p in enumerate(hnf.pivots):
        q, rem = divmod(residual[p], H[p, k])
        if rem:
            return None
        if q:
            y[k] = q
            for i in range(p, A.nrows):
                h = H[i, k]
                if h:
                    residual[i] -= q * h
    if any(residual):
        return None
    x = W @ y
    if A @ x != b:
        raise ArithmeticError("solve_linear: back-substitution check failed")
    return x


# ---------------------------------------------------------------------------
# Subquotient invariants


class ChainComplexError(ValueError):
    pass


def homology_invariants(d_in: IntMatrix | None, d_out: IntMatrix | None) -> AbelianGroupInvariants:
    """Invariants of ker(d_out) / im(d_in).

    ``d_in`` maps into the middle group (its rows index it) and ``d_out`` maps
    out of it (its columns index it). Either may be None for a zero map, but
    not both.
    """
    if d_in is None and d_out is None:
        raise ChainComplexError("need at least one of d_in, d_out to size the middle group")
    if d_in is None:
        d_in = IntMatrix.zeros(d_out.ncols, 0)
    if d_out is None:
        d_out = IntMatrix.zeros(0, d_in.nrows)
    if d_out.ncols != d_in.nrows:
        raise ChainComplexError("maps are not composable: %s then %s" % (d_in.shape, d_out.shape))
    if not (d_out @ d_in).is_zero():
        raise ChainComplexError("d_out @ d_in != 0")
    divisors = elementary_divisors(d_in)
    rank = d_in.nrows - matrix_rank(d_out) - len(divisors)
    return AbelianGroupInvariants(rank, tuple(d for d in divisors if d > 1))
