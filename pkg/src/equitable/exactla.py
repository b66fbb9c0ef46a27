"""Dense exact linear algebra over the scalar backends.

Entries may be ints, Fractions or RatFuncs; every routine only uses field
operations and exact zero tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ParameterError, ShapeError
from .scalars import RatFunc


def _div(a, b):
    """Exact quotient; plain ints divide as Fractions."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class ExactMatrix:
    """Immutable dense matrix with exact entrywise equality."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, rows: Iterable[Sequence], n_cols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if n_cols is None:
            if not rows:
                raise ShapeError("cannot infer column count of an empty matrix")
            n_cols = len(rows[0])
        for r in rows:
            if len(r) != n_cols:
                raise ShapeError("ragged rows")
        self.n_rows = len(rows)
        self.n_cols = n_cols
        self.rows = rows

    @classmethod
    def identity(cls, n: int, one=1) -> "ExactMatrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int, zero=0) -> "ExactMatrix":
        return cls([[zero] * n_cols for _ in range(n_rows)], n_cols)

    @classmethod
    def diag(cls, entries: Sequence) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], n_rows: int) -> "ExactMatrix":
        return cls([[c[i] for c in cols] for i in range(n_rows)], len(cols))

    @classmethod
    def from_function(cls, n_rows: int, n_cols: int, f: Callable[[int, int], object]) -> "ExactMatrix":
        return cls([[f(i, j) for j in range(n_cols)] for i in range(n_rows)], n_cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.n_cols)]

    def map(self, f) -> "ExactMatrix":
        return ExactMatrix([[f(x) for x in r] for r in self.rows], self.n_cols)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[r[j] for r in self.rows] for j in range(self.n_cols)], self.n_rows)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.n_cols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.n_cols)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in r] for r in self.rows], self.n_cols)

    def __mul__(self, c) -> "ExactMatrix":
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return ExactMatrix([[a * c if a else a for a in r] for r in self.rows], self.n_cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.n_cols != other.n_rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        brows = other.rows
        m = other.n_cols
        out = []
        for r in self.rows:
            acc = [0] * m
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in enumerate(brows[k]):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix(out, m)

    def apply(self, v: Sequence) -> tuple:
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMatrix.identity(self.n_rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash((self.shape, self.rows))

    def first_mismatch(self, other: "ExactMatrix"):
        """(i, j, mine, theirs) for the first differing entry, or None."""
        if self.shape != other.shape:
            return ("shape", self.shape, other.shape)
        for i, (r, s) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return (i, j, a, b)
        return None

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def inverse(self) -> "ExactMatrix":
        """Inverse by fraction-free (Bareiss) elimination and back substitution."""
        if not self.is_square():
            raise ShapeError("inverse of a non-square matrix")
        n = self.n_rows
        rows, scales = _clear_row_denominators(self.rows)
        m = [list(r) + [scales[i] if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
        prev = 1
        for k in range(n):
            p = next((i for i in range(k, n) if m[i][k]), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            if p != k:
                m[k], m[p] = m[p], m[k]
            piv = m[k][k]
            rk = m[k]
            for i in range(k + 1, n):
                ri = m[i]
                a = ri[k]
                for j in range(k + 1, 2 * n):
                    v = piv * ri[j] if ri[j] else 0
                    if a and rk[j]:
                        v = v - a * rk[j]
                    ri[j] = _div(v, prev) if v else 0
                ri[k] = 0
            prev = piv
        x = [[0] * n for _ in range(n)]
        for i in range(n - 1, -1, -1):
            ri = m[i]
            for c in range(n):
                s = ri[n + c]
                for j in range(i + 1, n):
                    if ri[j] and x[j][c]:
                        s = s - ri[j] * x[j][c]
                x[i][c] = _div(s, ri[i]) if s else 0
        return ExactMatrix(x, n)

    def __repr__(self):
        return f"ExactMatrix({[list(r) for r in self.rows]!r})"


def _clear_row_denominators(rows):
    """Scale each row by the product of its distinct denominators.

    Returns the scaled rows and the scale factors; entries become Laurent
    polynomials so elimination divisions stay exact in the polynomial ring.
    """
    out, scales = [], []
    for r in rows:
        dens = {}
        for a in r:
            if isinstance(a, RatFunc) and not a.is_laurent():
                dens[a.den] = a.den
        if not dens:
            out.append(list(r))
            scales.append(1)
            continue
        f = 1
        for den in dens.values():
            f = f * RatFunc(den)
        out.append([a * f if a else a for a in r])
        scales.append(f)
    return out, scales


def z_conjugate(b: ExactMatrix) -> ExactMatrix:
    """ZBZ: entry (i, j) becomes entry (d-i, d-j)."""
    if not b.is_square():
        raise ShapeError("z_conjugate needs a square matrix")
    return ExactMatrix([list(reversed(r)) for r in reversed(b.rows)], b.n_cols)


def reversal(n: int) -> ExactMatrix:
    """The antidiagonal permutation matrix Z of size n."""
    return ExactMatrix.from_function(n, n, lambda i, j: 1 if i + j == n - 1 else 0)


# ---------------------------------------------------------------------------
# elimination


def rref(rows: Sequence[Sequence], n_cols: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = _div(1, piv)
            m[r] = [v * inv if v else v for v in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a: ExactMatrix) -> int:
    return len(rref(a.rows, a.n_cols)[1])


@dataclass(frozen=True, eq=True)
class Subspace:
    """Subspace held as a reduced column-echelon basis (columns of ``basis``)."""

    ambient_dim: int
    basis: ExactMatrix

    @property
    def dim(self) -> int:
        return self.basis.n_cols

    def vectors(self) -> list[tuple]:
        return self.basis.columns()

    def contains(self, v: Sequence) -> bool:
        return span(self.vectors() + [tuple(v)], self.ambient_dim).dim == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return subspace_sum(self, other).dim == self.dim

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"


def span(vectors: Iterable[Sequence], n: int) -> Subspace:
    vecs = [list(v) for v in vectors]
    for v in vecs:
        if len(v) != n:
            raise ShapeError(f"vector of length {len(v)} in ambient dimension {n}")
    rows, _ = rref(vecs, n)
    return Subspace(n, ExactMatrix.from_columns(rows, n))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ExactMatrix([[] for _ in range(n)], 0))


def full_space(n: int) -> Subspace:
    return Subspace(n, ExactMatrix.identity(n))


def column_space(b: ExactMatrix) -> Subspace:
    return span(b.columns(), b.n_rows)


def kernel_vectors(b: ExactMatrix) -> list[tuple]:
    n = b.n_cols
    rows, pivots = rref(b.rows, n)
    free = [c for c in range(n) if c not in set(pivots)]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(rows, pivots):
            if row[f]:
                v[p] = -row[f]
        out.append(tuple(v))
    return out


def kernel(b: ExactMatrix) -> Subspace:
    return span(kernel_vectors(b), b.n_cols)


def image(m: ExactMatrix, s: Subspace) -> Subspace:
    if m.n_cols != s.ambient_dim:
        raise ShapeError("image: ambient mismatch")
    if s.dim == 0:
        return zero_subspace(m.n_rows)
    return column_space(m @ s.basis)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("subspace_sum: ambient mismatch")
    return span(a.vectors() + b.vectors(), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("subspace_intersect: ambient mismatch")
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(n)
    joint = ExactMatrix([list(ra) + [-x for x in rb] for ra, rb in zip(a.basis.rows, b.basis.rows)],
                        a.dim + b.dim)
    vecs = [a.basis.apply(v[:a.dim]) for v in kernel_vectors(joint)]
    return span(vecs, n)


def orthogonal_complement(s: Subspace, gram: ExactMatrix | None = None) -> Subspace:
    """Vectors w of the partner space with (v, w) = 0 for all v in s.

    The pairing is vᵗ·gram·w; the default gram is the identity (dot product).
    """
    n = s.ambient_dim
    if s.dim == 0:
        return full_space(n if gram is None else gram.n_cols)
    constraint = s.basis.T if gram is None else s.basis.T @ gram
    return kernel(constraint)


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """The unique X with aX = b for square invertible a."""
    return a.inverse() @ b


# ---------------------------------------------------------------------------
# endomorphisms with prescribed shapes relative to decompositions

CONSTRAINT_KINDS = ("diagonal", "lowering", "raising", "quasi_lowering", "quasi_raising")


def _allowed(kind: str, j: int, i: int) -> bool:
    # j indexes the target component, i the source component
    if kind == "diagonal":
        return j == i
    if kind == "lowering":
        return j == i - 1
    if kind == "raising":
        return j == i + 1
    if kind == "quasi_lowering":
        return j in (i, i - 1)
    if kind == "quasi_raising":
        return j in (i, i + 1)
    raise ParameterError(f"unknown constraint kind {kind!r}; expected one of {CONSTRAINT_KINDS}")


def constrained_endomorphism_space(constraints: Sequence[tuple[ExactMatrix, str]], n: int) -> Subspace:
    """All n×n matrices φ (flattened row-major) obeying every shape constraint.

    Each constraint is (W, kind) where column i of W spans component i of a
    decomposition.  "lowering" means φV_i ⊆ V_{i-1} and φV_0 = 0, "raising"
    means φV_i ⊆ V_{i+1} and φV_d = 0, and the quasi variants also allow V_i.
    """
    for _, kind in constraints:
        _allowed(kind, 0, 0)
    if not constraints:
        return full_space(n * n)
    w1, k1 = constraints[0]
    if w1.shape != (n, n):
        raise ShapeError("adapted basis must be n×n")
    w1inv = w1.inverse()
    free = [(a, b) for a in range(n) for b in range(n) if _allowed(k1, a, b)]
    eqs = []
    for w, kind in constraints[1:]:
        t = w.inverse() @ w1
        tinv = w1inv @ w
        for j in range(n):
            for i in range(n):
                if not _allowed(kind, j, i):
                    eqs.append([t[j, a] * tinv[b, i] for a, b in free])
    if eqs:
        sols = kernel_vectors(ExactMatrix(eqs, len(free)))
    else:
        sols = [tuple(1 if k == m else 0 for k in range(len(free))) for m in range(len(free))]
    flat = []
    for s in sols:
        a = [[0] * n for _ in range(n)]
        for (r, c), v in zip(free, s):
            a[r][c] = v
        phi = w1 @ ExactMatrix(a, n) @ w1inv
        flat.append([x for row in phi.rows for x in row])
    return span(flat, n * n)


def flatten(m: ExactMatrix) -> tuple:
    return tuple(x for row in m.rows for x in row)
