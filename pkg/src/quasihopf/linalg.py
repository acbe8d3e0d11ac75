"""Exact linear algebra over a cyclotomic field.

Rows are sparse dicts ``{column: Scalar}``.  Systems coming out of the
verifiers are very sparse, so elimination only ever touches nonzero entries.
"""

from __future__ import annotations

from .errors import NotInvertible, RankMismatch
from .scalar import CyclotomicField, Scalar


def _axpy(row: dict, factor: Scalar, pivot_row: dict) -> None:
    """row -= factor * pivot_row, in place, dropping zeros."""
    for c, v in pivot_row.items():
        nv = row.get(c)
        nv = -(factor * v) if nv is None else nv - factor * v
        if nv:
            row[c] = nv
        else:
            row.pop(c, None)


def rref(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns); input is not modified."""
    work = [dict(r) for r in rows if r]
    pivots: list[int] = []
    reduced: list[dict] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(work) if col in r), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        inv = prow[col].inverse()
        if not inv.is_one():
            prow = {c: v * inv for c, v in prow.items()}
        for r in work:
            f = r.get(col)
            if f is not None:
                _axpy(r, f, prow)
        for r in reduced:
            f = r.get(col)
            if f is not None:
                _axpy(r, f, prow)
        reduced.append(prow)
        pivots.append(col)
        work = [r for r in work if r]
    return reduced, pivots


def rank(rows: list[dict], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: list[dict], ncols: int, field: CyclotomicField) -> list[list[Scalar]]:
    """Basis of {x : rows . x = 0}, one dense vector per free column, in column order."""
    reduced, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [field.zero] * ncols
        vec[free] = field.one
        for prow, pc in zip(reduced, pivots):
            v = prow.get(free)
            if v is not None:
                vec[pc] = -v
        basis.append(vec)
    return basis


def solve(rows: list[dict], rhs: list[Scalar], ncols: int, field: CyclotomicField) -> list[Scalar]:
    """One solution of rows . x = rhs; raises NotInvertible when inconsistent."""
    if len(rows) != len(rhs):
        raise RankMismatch("row count and right-hand side differ")
    aug = []
    for r, b in zip(rows, rhs):
        r = dict(r)
        if b:
            r[ncols] = b
        aug.append(r)
    reduced, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise NotInvertible("inconsistent linear system")
    x = [field.zero] * ncols
    for prow, pc in zip(reduced, pivots):
        v = prow.get(ncols)
        if v is not None:
            x[pc] = v
    return x


class SparseMatrix:
    """Immutable sparse matrix over a cyclotomic field.

    Used for module actions and categorical composites, where every matrix is a
    Kronecker product of small action matrices and is mostly zero.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: CyclotomicField, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, Scalar]] = rows if rows is not None else {}

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {i: {i: field.one} for i in range(n)})

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols, {})

    @classmethod
    def from_dense(cls, field, dense):
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(dense):
            if len(row) != ncols:
                raise RankMismatch("ragged matrix")
            r = {j: field.coerce(v) for j, v in enumerate(row) if v}
            if r:
                rows[i] = r
        return cls(field, nrows, ncols, rows)

    @classmethod
    def permutation(cls, field, perm):
        """Matrix sending basis vector j to basis vector perm[j]."""
        n = len(perm)
        return cls(field, n, n, {perm[j]: {j: field.one} for j in range(n)})

    def to_dense(self) -> list[list[Scalar]]:
        zero = self.field.zero
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.rows.get(i, {}).get(j, self.field.zero)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, tuple(sorted(r.items(), key=lambda t: t[0]))) for i, r in self.rows.items()))))

    def first_difference(self, other: "SparseMatrix"):
        """Index (i, j) of the first differing entry, or None."""
        if self.shape != other.shape:
            return ("shape", self.shape, other.shape)
        for i in sorted(set(self.rows) | set(other.rows)):
            a, b = self.rows.get(i, {}), other.rows.get(i, {})
            for j in sorted(set(a) | set(b)):
                if a.get(j) != b.get(j):
                    return (i, j)
        return None

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise RankMismatch(f"shape {self.shape} vs {other.shape}")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                nv = tgt[j] + v if j in tgt else v
                if nv:
                    tgt[j] = nv
                else:
                    tgt.pop(j, None)
            if not tgt:
                del rows[i]
        return SparseMatrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self):
        return self.scale(self.field.coerce(-1))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        c = self.field.coerce(c)
        if not c:
            return SparseMatrix.zeros(self.field, self.nrows, self.ncols)
        return SparseMatrix(self.field, self.nrows, self.ncols,
                            {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise RankMismatch(f"cannot compose {self.shape} with {other.shape}")
        rows = {}
        orows = other.rows
        for i, r in self.rows.items():
            acc: dict[int, Scalar] = {}
            for k, a in r.items():
                ok = orows.get(k)
                if not ok:
                    continue
                for j, b in ok.items():
                    p = a * b
                    acc[j] = acc[j] + p if j in acc else p
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return SparseMatrix(self.field, self.nrows, other.ncols, rows)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        rows = {}
        for i1, r1 in self.rows.items():
            for i2, r2 in other.rows.items():
                row = {}
                for j1, a in r1.items():
                    base = j1 * other.ncols
                    for j2, b in r2.items():
                        row[base + j2] = a * b
                rows[i1 * other.nrows + i2] = row
        return SparseMatrix(self.field, self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def transpose(self) -> "SparseMatrix":
        rows: dict[int, dict[int, Scalar]] = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return SparseMatrix(self.field, self.ncols, self.nrows, rows)

    def trace(self) -> Scalar:
        if self.nrows != self.ncols:
            raise RankMismatch("trace of a non-square matrix")
        out = self.field.zero
        for i, r in self.rows.items():
            v = r.get(i)
            if v is not None:
                out = out + v
        return out

    def row_dicts(self) -> list[dict]:
        return [dict(self.rows.get(i, {})) for i in range(self.nrows)]

    def inverse(self) -> "SparseMatrix":
        if self.nrows != self.ncols:
            raise NotInvertible("non-square matrix")
        n = self.nrows
        aug = []
        for i in range(n):
            r = dict(self.rows.get(i, {}))
            r[n + i] = self.field.one
            aug.append(r)
        reduced, pivots = rref(aug, 2 * n)
        if pivots[:n] != list(range(n)):
            raise NotInvertible("singular matrix")
        rows = {}
        for i in range(n):
            r = {c - n: v for c, v in reduced[i].items() if c >= n}
            if r:
                rows[i] = r
        return SparseMatrix(self.field, n, n, rows)

    def is_zero(self) -> bool:
        return not self.rows

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self.rows.values())})"
