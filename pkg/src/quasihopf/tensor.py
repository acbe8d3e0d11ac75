"""Elements of H^{(x)k} for a finite-dimensional algebra H given by structure constants.

A rank-k element is a dense tuple of d**k scalars indexed lexicographically by
basis tuples (leg 1 most significant).  Products and leg-wise maps only touch
the nonzero coefficients.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import FieldMismatch, NotInvertible, RankMismatch
from .linalg import rref, solve
from .scalar import CyclotomicField, Scalar

MAX_RANK = 4
MAX_ENTRIES = 10**7

SparseVec = list  # list of (index, Scalar) pairs with nonzero coefficients


def _sparse(vec) -> SparseVec:
    return [(i, c) for i, c in enumerate(vec) if c]


class Algebra:
    """An associative unital algebra with basis e_0..e_{d-1}.

    ``mult[i][j]`` is the coefficient vector of e_i e_j, ``unit`` the
    coefficient vector of 1.
    """

    def __init__(self, field: CyclotomicField, mult, unit, labels=None):
        self.field = field
        self.dim = d = len(unit)
        if len(mult) != d or any(len(row) != d for row in mult):
            raise RankMismatch("multiplication table must be d x d")
        self.mult = tuple(tuple(tuple(field.coerce(c) for c in v) for v in row) for row in mult)
        for row in self.mult:
            for v in row:
                if len(v) != d:
                    raise RankMismatch("structure constant vectors must have length d")
        self.unit_vector = tuple(field.coerce(c) for c in unit)
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(d)]
        self._sparse_mult = [[_sparse(v) for v in row] for row in self.mult]
        self._pair_tables: dict[int, dict] = {}
        self._ones: dict[int, TensorElement] = {}

    def __repr__(self):
        return f"Algebra(dim={self.dim}, N={self.field.N})"

    # construction helpers
    def element(self, coeffs, rank: int = 1) -> "TensorElement":
        return TensorElement(self, rank, coeffs)

    def zero(self, rank: int = 1) -> "TensorElement":
        return TensorElement(self, rank, (self.field.zero,) * self.dim**rank)

    def one(self, rank: int = 1) -> "TensorElement":
        if rank not in self._ones:
            t = TensorElement(self, 0, (self.field.one,))
            u = TensorElement(self, 1, self.unit_vector)
            for _ in range(rank):
                t = t.tensor(u)
            self._ones[rank] = t
        return self._ones[rank]

    def basis(self, *indices: int) -> "TensorElement":
        """Pure tensor e_{i1} (x) ... (x) e_{ik}."""
        d = self.dim
        flat = 0
        for i in indices:
            flat = flat * d + i
        coeffs = [self.field.zero] * d ** len(indices)
        coeffs[flat] = self.field.one
        return TensorElement(self, len(indices), coeffs)

    def from_terms(self, rank: int, terms) -> "TensorElement":
        """Build from ``(coefficient, (i1, ..., ik))`` pairs."""
        d = self.dim
        coeffs = [self.field.zero] * d**rank
        for c, idx in terms:
            if len(idx) != rank:
                raise RankMismatch(f"index {idx} has wrong rank")
            flat = 0
            for i in idx:
                if not 0 <= i < d:
                    raise IndexError(f"basis index {i} out of range")
                flat = flat * d + i
            coeffs[flat] = coeffs[flat] + self.field.coerce(c)
        return TensorElement(self, rank, coeffs)

    def product_vector(self, i: int, j: int) -> SparseVec:
        return self._sparse_mult[i][j]

    def pair_table(self, r: int):
        """Products of basis tensors of rank r <= 2: (I, J) -> sparse vector of flat indices."""
        table = self._pair_tables.get(r)
        if table is None:
            d = self.dim
            sm = self._sparse_mult
            one = self.field.one
            table = {}
            if r == 1:
                for i in range(d):
                    for j in range(d):
                        table[i, j] = sm[i][j]
            elif r == 2:
                for i1, i2, j1, j2 in product(range(d), repeat=4):
                    out = []
                    for k1, c1 in sm[i1][j1]:
                        for k2, c2 in sm[i2][j2]:
                            out.append((k1 * d + k2, c2 if c1.is_one() else c1 if c2.is_one() else c1 * c2))
                    table[i1 * d + i2, j1 * d + j2] = out
            elif r == 0:
                table[0, 0] = [(0, one)]
            else:
                raise RankMismatch("pair tables exist for rank <= 2 only")
            self._pair_tables[r] = table
        return table

    def left_multiplication_rows(self, a: "TensorElement") -> list[dict]:
        """Rows of the matrix of x -> a*x on H^{(x)k}."""
        n = self.dim**a.rank
        cols: list[dict] = []
        for j in range(n):
            cols.append(dict(a._mul_sparse_basis(j)))
        rows: list[dict] = [dict() for _ in range(n)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows


class TensorElement:
    """An element of H^{(x)rank}, immutable."""

    __slots__ = ("algebra", "rank", "coeffs", "_nz")

    def __init__(self, algebra: Algebra, rank: int, coeffs):
        if not 0 <= rank <= MAX_RANK:
            raise RankMismatch(f"rank {rank} exceeds the supported maximum {MAX_RANK}")
        size = algebra.dim**rank
        if size > MAX_ENTRIES:
            raise RankMismatch(f"{size} entries exceed the dense storage limit {MAX_ENTRIES}")
        coeffs = tuple(coeffs)
        if len(coeffs) != size:
            raise RankMismatch(f"rank-{rank} element over dim {algebra.dim} needs {size} coefficients, got {len(coeffs)}")
        field = algebra.field
        if any(not isinstance(c, Scalar) or c.field is not field for c in coeffs):
            coeffs = tuple(field.coerce(c) for c in coeffs)
        self.algebra = algebra
        self.rank = rank
        self.coeffs = coeffs
        self._nz = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self) -> CyclotomicField:
        return self.algebra.field

    def nonzero(self) -> SparseVec:
        if self._nz is None:
            self._nz = _sparse(self.coeffs)
        return self._nz

    def terms(self):
        """Yield (coefficient, basis index tuple) for nonzero coefficients."""
        d, k = self.dim, self.rank
        for flat, c in self.nonzero():
            idx = []
            for _ in range(k):
                flat, r = divmod(flat, d)
                idx.append(r)
            yield c, tuple(reversed(idx))

    def _check(self, other: "TensorElement") -> None:
        if not isinstance(other, TensorElement):
            raise TypeError(f"expected TensorElement, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            if other.field is not self.field:
                raise FieldMismatch("tensors live over different fields")
            raise RankMismatch("tensors belong to different algebras")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra is other.algebra and self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, self.coeffs))

    def first_difference(self, other: "TensorElement"):
        """Basis index tuple of the first coefficient where the two differ, or None."""
        self._check(other)
        for flat, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return self.unflatten(flat)
        return None

    def unflatten(self, flat: int) -> tuple:
        d = self.dim
        idx = []
        for _ in range(self.rank):
            flat, r = divmod(flat, d)
            idx.append(r)
        return tuple(reversed(idx))

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(self.algebra, self.rank, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(self.algebra, self.rank, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TensorElement(self.algebra, self.rank, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "TensorElement":
        c = self.field.coerce(c)
        return TensorElement(self.algebra, self.rank, tuple(a * c if a else a for a in self.coeffs))

    def __rmul__(self, c):
        if isinstance(c, (int, Scalar)) or hasattr(c, "denominator"):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.nonzero()

    def tensor(self, other: "TensorElement") -> "TensorElement":
        """Outer product self (x) other."""
        if other.algebra is not self.algebra:
            raise RankMismatch("tensors belong to different algebras")
        n2 = self.dim**other.rank
        coeffs = [self.field.zero] * (self.dim ** (self.rank + other.rank))
        onz = other.nonzero()
        for i, a in self.nonzero():
            base = i * n2
            for j, b in onz:
                coeffs[base + j] = a * b
        return TensorElement(self.algebra, self.rank + other.rank, coeffs)

    def flip(self, perm: Sequence[int]) -> "TensorElement":
        return flip_legs(self, perm)

    def counit_scalar(self) -> Scalar:
        if self.rank != 0:
            raise RankMismatch("not a rank-0 element")
        return self.coeffs[0]

    def _mul_sparse_basis(self, j: int):
        """self * (basis tensor with flat index j) as a sparse dict."""
        b = [(j, self.field.one)]
        return _mul_nz(self.algebra, self.rank, self.nonzero(), b)

    def __repr__(self):
        terms = []
        for c, idx in self.terms():
            lab = "(x)".join(self.algebra.labels[i] for i in idx) or "1"
            terms.append(f"{c}*{lab}")
        return f"<rank {self.rank}: " + (" + ".join(terms) or "0") + ">"


def _mul_nz(algebra: Algebra, rank: int, anz, bnz) -> dict:
    d = algebra.dim
    acc: dict[int, Scalar] = {}
    if rank <= 2:
        table = algebra.pair_table(rank)
        for i, a in anz:
            for j, b in bnz:
                c = b if a.is_one() else a if b.is_one() else a * b
                for k, s in table[i, j]:
                    v = c if s.is_one() else c * s
                    acc[k] = acc[k] + v if k in acc else v
    else:
        hi_rank = rank - 2
        lo = d**2
        t_hi = algebra.pair_table(hi_rank)
        t_lo = algebra.pair_table(2)
        for i, a in anz:
            ih, il = divmod(i, lo)
            for j, b in bnz:
                jh, jl = divmod(j, lo)
                hi = t_hi[ih, jh]
                if not hi:
                    continue
                low = t_lo[il, jl]
                if not low:
                    continue
                c = b if a.is_one() else a if b.is_one() else a * b
                for kh, sh in hi:
                    ch = c if sh.is_one() else c * sh
                    base = kh * lo
                    for kl, sl in low:
                        v = ch if sl.is_one() else ch * sl
                        k = base + kl
                        acc[k] = acc[k] + v if k in acc else v
    return acc


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    """Componentwise product in the algebra H^{(x)k}."""
    a._check(b)
    acc = _mul_nz(a.algebra, a.rank, a.nonzero(), b.nonzero())
    coeffs = [a.field.zero] * (a.dim**a.rank)
    for k, v in acc.items():
        coeffs[k] = v
    return TensorElement(a.algebra, a.rank, coeffs)


def mul_all(*factors: TensorElement) -> TensorElement:
    out = factors[0]
    for f in factors[1:]:
        out = tensor_mul(out, f)
    return out


class LinearMap:
    """A linear map H^{(x)s} -> H^{(x)t}, stored column by column.

    ``columns[j]`` is the image of the j-th source basis tensor as a sparse
    list of (target flat index, coefficient).
    """

    def __init__(self, algebra: Algebra, source_rank: int, target_rank: int, columns, name: str = ""):
        self.algebra = algebra
        self.source_rank = source_rank
        self.target_rank = target_rank
        d = algebra.dim
        if len(columns) != d**source_rank:
            raise RankMismatch(f"{name or 'map'}: expected {d**source_rank} columns, got {len(columns)}")
        cols = []
        for col in columns:
            if isinstance(col, TensorElement):
                if col.rank != target_rank:
                    raise RankMismatch(f"{name or 'map'}: column of rank {col.rank}, expected {target_rank}")
                cols.append(col.nonzero())
            else:
                col = list(col)
                if len(col) != d**target_rank:
                    raise RankMismatch(f"{name or 'map'}: column length {len(col)}, expected {d**target_rank}")
                cols.append(_sparse([algebra.field.coerce(c) for c in col]))
        self.columns = cols
        self.name = name

    @classmethod
    def from_matrix(cls, algebra, source_rank, target_rank, matrix, name=""):
        """From a (d^t x d^s) row-major matrix."""
        ncols = algebra.dim**source_rank
        columns = [[row[j] for row in matrix] for j in range(ncols)]
        return cls(algebra, source_rank, target_rank, columns, name)

    def matrix(self) -> list[list[Scalar]]:
        d = self.algebra.dim
        zero = self.algebra.field.zero
        out = [[zero] * d**self.source_rank for _ in range(d**self.target_rank)]
        for j, col in enumerate(self.columns):
            for i, c in col:
                out[i][j] = c
        return out

    def image(self, j: int) -> TensorElement:
        coeffs = [self.algebra.field.zero] * self.algebra.dim**self.target_rank
        for i, c in self.columns[j]:
            coeffs[i] = c
        return TensorElement(self.algebra, self.target_rank, coeffs)

    def __call__(self, t: TensorElement) -> TensorElement:
        if t.rank != self.source_rank:
            raise RankMismatch(f"{self.name or 'map'} expects rank {self.source_rank}, got {t.rank}")
        return apply_legs([self], t)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self o inner."""
        if inner.target_rank != self.source_rank:
            raise RankMismatch("ranks do not compose")
        cols = [self(inner.image(j)) for j in range(len(inner.columns))]
        return LinearMap(self.algebra, inner.source_rank, self.target_rank, cols,
                         name=f"{self.name}o{inner.name}")

    def rows(self) -> list[dict]:
        d = self.algebra.dim
        rows: list[dict] = [dict() for _ in range(d**self.target_rank)]
        for j, col in enumerate(self.columns):
            for i, c in col:
                rows[i][j] = c
        return rows

    def rank(self) -> int:
        return len(rref(self.rows(), self.algebra.dim**self.source_rank)[1])

    def is_bijective(self) -> bool:
        return self.source_rank == self.target_rank and self.rank() == self.algebra.dim**self.source_rank

    def inverse(self) -> "LinearMap":
        """Inverse map by exact elimination; raises NotInvertible when singular."""
        if not self.is_bijective():
            raise NotInvertible(f"{self.name or 'map'} is not bijective")
        n = self.algebra.dim**self.source_rank
        field = self.algebra.field
        rows = self.rows()
        cols = []
        for j in range(n):
            rhs = [field.one if i == j else field.zero for i in range(n)]
            cols.append(solve(rows, rhs, n, field))
        return LinearMap(self.algebra, self.target_rank, self.source_rank, cols, name=f"{self.name}^-1")

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.algebra is other.algebra and self.source_rank == other.source_rank
                and self.target_rank == other.target_rank and self.columns == other.columns)


def identity_map(algebra: Algebra) -> LinearMap:
    d, one, zero = algebra.dim, algebra.field.one, algebra.field.zero
    return LinearMap(algebra, 1, 1, [[one if i == j else zero for i in range(d)] for j in range(d)], name="id")


def apply_legs(maps: Sequence, a: TensorElement) -> TensorElement:
    """Apply one map per group of legs; ``None`` stands for the identity on a single leg."""
    algebra = a.algebra
    d = algebra.dim
    src = [1 if m is None else m.source_rank for m in maps]
    tgt = [1 if m is None else m.target_rank for m in maps]
    if sum(src) != a.rank:
        raise RankMismatch(f"maps consume {sum(src)} legs, element has {a.rank}")
    out_rank = sum(tgt)
    if out_rank > MAX_RANK:
        raise RankMismatch(f"result rank {out_rank} exceeds {MAX_RANK}")
    one = algebra.field.one
    # per map: source block size, target block size, image lookup
    images = []
    for m in maps:
        if m is None:
            images.append(None)
        else:
            images.append(m.columns)
    src_sizes = [d**s for s in src]
    tgt_sizes = [d**t for t in tgt]
    acc: dict[int, Scalar] = {}
    for flat, c in a.nonzero():
        parts = []
        for size in reversed(src_sizes):
            flat, r = divmod(flat, size)
            parts.append(r)
        parts.reverse()
        partial = [(0, c)]
        for idx, img, tsize in zip(parts, images, tgt_sizes):
            col = [(idx, one)] if img is None else img[idx]
            if not col:
                partial = []
                break
            partial = [(k * tsize + kk, v if s.is_one() else v * s) for k, v in partial for kk, s in col]
        for k, v in partial:
            acc[k] = acc[k] + v if k in acc else v
    coeffs = [algebra.field.zero] * d**out_rank
    for k, v in acc.items():
        coeffs[k] = v
    return TensorElement(algebra, out_rank, coeffs)


def flip_legs(a: TensorElement, perm: Sequence[int]) -> TensorElement:
    """Permute legs: output leg i carries input leg perm[i] (1-based), so flip(R, (2, 1)) = R_21."""
    k = a.rank
    if sorted(perm) != list(range(1, k + 1)):
        raise RankMismatch(f"{perm} is not a permutation of 1..{k}")
    d = a.dim
    coeffs = [a.field.zero] * len(a.coeffs)
    for c, idx in a.terms():
        flat = 0
        for p in perm:
            flat = flat * d + idx[p - 1]
        coeffs[flat] = c
    return TensorElement(a.algebra, k, coeffs)


def embed_legs(a: TensorElement, positions: Sequence[int], rank: int) -> TensorElement:
    """Place the legs of ``a`` at the given 1-based positions of a rank-``rank`` tensor, units elsewhere.

    embed_legs(R, (1, 3), 3) is R_13 = R^1 (x) 1 (x) R^2.
    """
    if len(positions) != a.rank or len(set(positions)) != a.rank or not all(1 <= p <= rank for p in positions):
        raise RankMismatch(f"bad leg positions {positions} for rank {rank}")
    algebra = a.algebra
    d = algebra.dim
    unit = _sparse(algebra.unit_vector)
    fill = [p for p in range(1, rank + 1) if p not in positions]
    coeffs = [algebra.field.zero] * d**rank
    acc: dict[int, Scalar] = {}
    for c, idx in a.terms():
        assign = dict(zip(positions, idx))
        for fills in product(unit, repeat=len(fill)):
            coef = c
            full = dict(assign)
            for p, (i, s) in zip(fill, fills):
                full[p] = i
                coef = coef * s
            flat = 0
            for p in range(1, rank + 1):
                flat = flat * d + full[p]
            acc[flat] = acc[flat] + coef if flat in acc else coef
    for k, v in acc.items():
        coeffs[k] = v
    return TensorElement(algebra, rank, coeffs)


def tensor_invert(a: TensorElement) -> TensorElement:
    """Two-sided inverse by solving L_a x = 1; raises NotInvertible for zero divisors."""
    algebra = a.algebra
    n = algebra.dim**a.rank
    rows = algebra.left_multiplication_rows(a)
    unit = algebra.one(a.rank)
    try:
        x = solve(rows, list(unit.coeffs), n, algebra.field)
    except NotInvertible:
        raise NotInvertible("element is not invertible (singular left multiplication)") from None
    b = TensorElement(algebra, a.rank, x)
    if tensor_mul(a, b) != unit or tensor_mul(b, a) != unit:
        raise NotInvertible("element has a one-sided inverse only")
    return b


def is_invertible(a: TensorElement) -> bool:
    n = a.dim**a.rank
    return len(rref(a.algebra.left_multiplication_rows(a), n)[1]) == n


# Contraction of nested sums -------------------------------------------------

def contract(ingredients: Sequence[TensorElement], legs: Sequence[Sequence], ops: dict | None = None) -> TensorElement:
    """Evaluate a sum over the tensor components of several elements.

    The legs of all ingredients are numbered consecutively from 0.  Each output
    leg is a word whose factors are: an int (that leg), ``(op, i)`` (a named
    rank-1 map from ``ops`` applied to leg i), or a rank-1 TensorElement
    (a constant).  Factors multiply left to right.

    Example: X^1 beta S(X^2) alpha X^3 is
    ``contract([phi], [[0, beta, ("S", 1), alpha, 2]], {"S": S})``.
    """
    if not ingredients:
        raise ValueError("nothing to contract")
    algebra = ingredients[0].algebra
    field = algebra.field
    d = algebra.dim
    ops = ops or {}
    out_rank = len(legs)
    if out_rank > MAX_RANK:
        raise RankMismatch("contraction result rank exceeds the maximum")

    consts: dict[int, SparseVec] = {}
    compiled = []
    for word in legs:
        cw = []
        for f in word:
            if isinstance(f, TensorElement):
                if f.rank != 1 or f.algebra is not algebra:
                    raise RankMismatch("constants in a contraction must be rank-1 elements of the same algebra")
                consts[id(f)] = f.nonzero()
                cw.append(("const", id(f)))
            elif isinstance(f, int):
                cw.append((None, f))
            else:
                op, i = f
                if op not in ops:
                    raise KeyError(f"unknown map {op!r} in contraction")
                cw.append((op, i))
        compiled.append(cw)

    op_cols = {name: m.columns for name, m in ops.items()}
    one = field.one
    cache: dict[tuple, dict] = {}

    def word_value(key: tuple) -> dict:
        # key: tuple of ("basis", i) / ("const", id) / (op, i) after substitution
        hit = cache.get(key)
        if hit is not None:
            return hit
        if not key:
            val = dict(_sparse(algebra.unit_vector))
        else:
            head = word_value(key[:-1])
            kind, x = key[-1]
            if kind == "const":
                last = consts[x]
            elif kind is None:
                last = [(x, one)]
            else:
                last = op_cols[kind][x]
            val = {}
            sm = algebra._sparse_mult
            for i, a in head.items():
                for j, b in last:
                    c = b if a.is_one() else a if b.is_one() else a * b
                    for k, s in sm[i][j]:
                        v = c if s.is_one() else c * s
                        val[k] = val[k] + v if k in val else v
            val = {k: v for k, v in val.items() if v}
        cache[key] = val
        return val

    # flatten the ingredients' nonzero terms into basis tuples
    expanded = []
    for t in ingredients:
        if t.algebra is not algebra:
            raise RankMismatch("ingredients belong to different algebras")
        expanded.append([(c, idx) for c, idx in t.terms()])
    nlegs = sum(t.rank for t in ingredients)
    for cw in compiled:
        for kind, x in cw:
            if kind != "const" and not 0 <= x < nlegs:
                raise RankMismatch(f"leg {x} out of range (0..{nlegs - 1})")

    acc: dict[int, Scalar] = {}
    for combo in product(*expanded):
        coef = one
        basis_idx: list[int] = []
        for c, idx in combo:
            coef = c if coef.is_one() else coef * c
            basis_idx.extend(idx)
        partial = [(0, coef)]
        for cw in compiled:
            key = tuple((kind, x) if kind == "const" else (kind, basis_idx[x]) for kind, x in cw)
            val = word_value(key)
            if not val:
                partial = []
                break
            partial = [(k * d + kk, v if s.is_one() else v * s) for k, v in partial for kk, s in val.items()]
        for k, v in partial:
            acc[k] = acc[k] + v if k in acc else v
    coeffs = [field.zero] * d**out_rank
    for k, v in acc.items():
        coeffs[k] = v
    return TensorElement(algebra, out_rank, coeffs)
