"""Sparse exact linear algebra over a cyclotomic field.

Matrices are stored row-wise as dictionaries ``{column: CycloNum}`` with
zeros dropped.  Representation matrices in this package are very sparse
(shift operators, diagonal weights, Kronecker products of those), so the
sparse row format keeps both memory and elimination cost low.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from uqplus.cyclo import CycloContext, CycloNum


class Matrix:
    """A rows x cols matrix with CycloNum entries."""

    __slots__ = ("ctx", "nrows", "ncols", "rows", "_cols")

    def __init__(self, ctx: CycloContext, nrows: int, ncols: int, rows=None):
        self._cols = None
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict[int, CycloNum]] = (
            rows if rows is not None else [dict() for _ in range(nrows)]
        )

    # construction ---------------------------------------------------------

    @classmethod
    def zeros(cls, ctx, nrows, ncols=None) -> Matrix:
        return cls(ctx, nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, ctx, size: int) -> Matrix:
        return cls(ctx, size, size, [{r: ctx.one} for r in range(size)])

    @classmethod
    def diagonal(cls, ctx, entries) -> Matrix:
        entries = list(entries)
        rows = [({r: x} if not x.is_zero() else {}) for r, x in enumerate(entries)]
        return cls(ctx, len(entries), len(entries), rows)

    @classmethod
    def from_dense(cls, ctx, dense) -> Matrix:
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        out = cls(ctx, len(dense), ncols)
        for r, row in enumerate(dense):
            for c, x in enumerate(row):
                x = ctx.scalar(x)
                if not x.is_zero():
                    out.rows[r][c] = x
        return out

    def copy(self) -> Matrix:
        return Matrix(self.ctx, self.nrows, self.ncols, [dict(r) for r in self.rows])

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, rc) -> CycloNum:
        r, c = rc
        return self.rows[r].get(c, self.ctx.zero)

    def __setitem__(self, rc, value) -> None:
        r, c = rc
        value = self.ctx.scalar(value)
        self._cols = None
        if value.is_zero():
            self.rows[r].pop(c, None)
        else:
            self.rows[r][c] = value

    def entries(self):
        for r, row in enumerate(self.rows):
            for c, x in row.items():
                yield r, c, x

    def to_dense(self) -> list[list[CycloNum]]:
        return [[self[r, c] for c in range(self.ncols)] for r in range(self.nrows)]

    def column(self, c: int) -> dict[int, CycloNum]:
        return dict(self.columns()[c])

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        _check_shape(self, other)
        rows = []
        for a, b in zip(self.rows, other.rows):
            row = dict(a)
            for c, x in b.items():
                y = row.get(c)
                s = x if y is None else y + x
                if s.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = s
            rows.append(row)
        return Matrix(self.ctx, self.nrows, self.ncols, rows)

    def __neg__(self) -> Matrix:
        return Matrix(
            self.ctx, self.nrows, self.ncols,
            [{c: -x for c, x in r.items()} for r in self.rows],
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, s) -> Matrix:
        s = self.ctx.scalar(s)
        if s.is_zero():
            return Matrix.zeros(self.ctx, self.nrows, self.ncols)
        return Matrix(
            self.ctx, self.nrows, self.ncols,
            [{c: x * s for c, x in r.items()} for r in self.rows],
        )

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows
        rows = []
        for a in self.rows:
            acc: dict[int, CycloNum] = {}
            for k, x in a.items():
                for c, y in orows[k].items():
                    p = x * y
                    z = acc.get(c)
                    acc[c] = p if z is None else z + p
            rows.append({c: v for c, v in acc.items() if not v.is_zero()})
        return Matrix(self.ctx, self.nrows, other.ncols, rows)

    def __pow__(self, k: int) -> Matrix:
        if self.nrows != self.ncols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = Matrix.identity(self.ctx, self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def columns(self) -> list[dict[int, CycloNum]]:
        """Column-wise view, cached on first use.

        Code that edits ``rows`` in place must do so before the first call.
        """
        if self._cols is None:
            cols: list[dict[int, CycloNum]] = [dict() for _ in range(self.ncols)]
            for r, row in enumerate(self.rows):
                for c, x in row.items():
                    cols[c][r] = x
            self._cols = cols
        return self._cols

    def apply(self, vec: dict[int, CycloNum]) -> dict[int, CycloNum]:
        """Matrix times a sparse column vector."""
        cols = self.columns()
        acc: dict[int, CycloNum] = {}
        for c, x in vec.items():
            for r, y in cols[c].items():
                z = acc.get(r)
                acc[r] = x * y if z is None else z + x * y
        return {r: v for r, v in acc.items() if not v.is_zero()}

    def transpose(self) -> Matrix:
        rows = [dict() for _ in range(self.ncols)]
        for r, c, x in self.entries():
            rows[c][r] = x
        return Matrix(self.ctx, self.ncols, self.nrows, rows)

    def kron(self, other: Matrix) -> Matrix:
        """Kronecker product; basis index a*dim(other)+b."""
        nr, nc = other.nrows, other.ncols
        rows = [dict() for _ in range(self.nrows * nr)]
        for r1, row1 in enumerate(self.rows):
            for c1, x in row1.items():
                for r2, row2 in enumerate(other.rows):
                    target = rows[r1 * nr + r2]
                    for c2, y in row2.items():
                        target[c1 * nc + c2] = x * y
        return Matrix(self.ctx, self.nrows * nr, self.ncols * nc, rows)

    def submatrix(self, row_idx, col_idx) -> Matrix:
        col_pos = {c: k for k, c in enumerate(col_idx)}
        rows = []
        for r in row_idx:
            rows.append({col_pos[c]: x for c, x in self.rows[r].items() if c in col_pos})
        return Matrix(self.ctx, len(row_idx), len(col_idx), rows)

    def block_diag(self, other: Matrix) -> Matrix:
        rows = [dict(r) for r in self.rows]
        for r in other.rows:
            rows.append({c + self.ncols: x for c, x in r.items()})
        return Matrix(
            self.ctx, self.nrows + other.nrows, self.ncols + other.ncols, rows
        )

    # elimination-based queries -------------------------------------------

    def rank(self) -> int:
        ech = Echelon(self.ctx, self.ncols)
        for row in self.rows:
            ech.add(row)
        return ech.rank

    def nullspace(self) -> list[dict[int, CycloNum]]:
        """Basis of {x : M x = 0} as sparse vectors."""
        ech = Echelon(self.ctx, self.ncols)
        for row in self.rows:
            ech.add(row)
        return ech.kernel_basis()

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> Matrix:
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        size = self.nrows
        aug = Echelon(self.ctx, 2 * size)
        for r, row in enumerate(self.rows):
            ext = dict(row)
            ext[size + r] = self.ctx.one
            aug.add(ext)
        aug.reduce_full()
        if any(c not in aug.pivots for c in range(size)):
            raise ZeroDivisionError("matrix is singular")
        rows = []
        for c in range(size):
            prow = aug.pivots[c]
            rows.append({k - size: x for k, x in prow.items() if k >= size})
        return Matrix(self.ctx, size, size, rows)

    def det(self) -> CycloNum:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        rows = [dict(r) for r in self.rows]
        det = self.ctx.one
        size = self.nrows
        for col in range(size):
            piv = None
            for r in range(col, size):
                if col in rows[r]:
                    if piv is None or len(rows[r]) < len(rows[piv]):
                        piv = r
            if piv is None:
                return self.ctx.zero
            if piv != col:
                rows[piv], rows[col] = rows[col], rows[piv]
                det = -det
            prow = rows[col]
            p = prow[col]
            det = det * p
            pinv = p.inverse()
            for r in range(col + 1, size):
                x = rows[r].get(col)
                if x is not None:
                    _axpy(rows[r], prow, -(x * pinv))
        return det


def _check_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _axpy(target: dict, src: dict, s: CycloNum) -> None:
    """target += s * src, in place, dropping zeros."""
    for c, x in src.items():
        y = target.get(c)
        if y is None:
            target[c] = s * x
        else:
            z = y + s * x
            if z.is_zero():
                del target[c]
            else:
                target[c] = z


@dataclass
class Echelon:
    """Incremental row echelon form over a cyclotomic field.

    Each stored row is normalised to 1 at its pivot, which is the smallest
    column it contains.  Rows can be fed one at a time; ``add`` reports
    whether the new row was independent of the previous ones.
    """

    ctx: CycloContext
    ncols: int
    pivots: dict[int, dict[int, CycloNum]] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, CycloNum]) -> dict[int, CycloNum]:
        row = dict(row)
        pivots = self.pivots
        done: dict[int, CycloNum] = {}
        while row:
            c = min(row)
            x = row.pop(c)
            prow = pivots.get(c)
            if prow is None:
                done[c] = x
                # columns in done are never touched again by smaller pivots,
                # but larger pivots still need to act on what remains in row
                continue
            for k, y in prow.items():
                if k == c:
                    continue
                z = row.get(k)
                if z is None:
                    row[k] = -(x * y)
                else:
                    z = z - x * y
                    if z.is_zero():
                        del row[k]
                    else:
                        row[k] = z
        return done

    def add(self, row: dict[int, CycloNum]) -> bool:
        red = self.reduce(row)
        if not red:
            return False
        c = min(red)
        inv = red[c].inverse()
        self.pivots[c] = {k: x * inv for k, x in red.items()}
        return True

    def contains(self, row: dict[int, CycloNum]) -> bool:
        return not self.reduce(row)

    def reduce_full(self) -> None:
        """Bring the stored rows to reduced row echelon form."""
        for c in sorted(self.pivots, reverse=True):
            prow = self.pivots[c]
            for c2, other in self.pivots.items():
                if c2 < c and c in other:
                    _axpy(other, prow, -other[c])

    def kernel_basis(self) -> list[dict[int, CycloNum]]:
        free = [c for c in range(self.ncols) if c not in self.pivots]
        piv_desc = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            x: dict[int, CycloNum] = {f: self.ctx.one}
            for p in piv_desc:
                if p > f:
                    continue
                s = None
                for k, y in self.pivots[p].items():
                    if k != p and k in x:
                        t = y * x[k]
                        s = t if s is None else s + t
                if s is not None and not s.is_zero():
                    x[p] = -s
            basis.append(x)
        return basis


def solve_affine(ctx: CycloContext, equations, nvars: int):
    """Solve sum_k a_k x_k = b for a list of (coeff-dict, rhs) equations.

    Returns ``(particular, kernel)`` where ``particular`` is a sparse
    solution or ``None`` if the system is inconsistent, and ``kernel`` is a
    basis of the homogeneous solution space.
    """
    rhs_col = nvars
    ech = Echelon(ctx, nvars + 1)
    for coeffs, rhs in equations:
        row = {k: v for k, v in coeffs.items() if not v.is_zero()}
        rhs = ctx.scalar(rhs)
        if not rhs.is_zero():
            row[rhs_col] = -rhs
        if row:
            ech.add(row)
    if rhs_col in ech.pivots:
        return None, []
    # the augmented column is the last free column, so exactly one kernel
    # vector has a nonzero entry there (equal to one): that is a particular
    # solution with every other free variable set to zero
    particular: dict[int, CycloNum] = {}
    kernel = []
    for vec in ech.kernel_basis():
        if rhs_col in vec:
            particular = {k: v for k, v in vec.items() if k != rhs_col}
        else:
            kernel.append(vec)
    return particular, kernel
