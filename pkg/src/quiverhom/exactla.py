"""Exact linear algebra over the rationals and prime fields.

Matrices act on column vectors, so the matrix of g∘f is ``G @ F``.
Row reduction always picks the leftmost pivot first, which makes every
basis returned here deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class DimensionMismatch(ValueError):
    """Raised when matrix shapes are incompatible."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p = 0``) or the prime field of order ``p``."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``q`` or ``fp:p``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(0)
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def kind(self) -> str:
        return "prime-field" if self.p else "rationals"

    def __str__(self) -> str:
        return f"fp:{self.p}" if self.p else "q"

    def __call__(self, x):
        """Coerce an int, Fraction or text such as ``"-3/4"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} is undefined mod {self.p}")
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, self.p - 2, self.p)
        return 1 / Fraction(x)

    def text(self, x) -> str:
        return str(x) if self.p else str(Fraction(x))

    def random(self, rng, nonzero: bool = False):
        """A random element; over the rationals a small integer or half-integer."""
        if self.p:
            return rng.randrange(1 if nonzero else 0, self.p)
        while True:
            x = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))
            if x or not nonzero:
                return x


def _rref(rows: list, ncols: int, p: int):
    """Reduced row echelon form of a list of row lists (consumed)."""
    m = rows
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        if p:
            inv = pow(row[c], p - 2, p)
            row = [(x * inv) % p for x in row]
        else:
            inv = 1 / Fraction(row[c])
            row = [x * inv for x in row]
        m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    if p:
                        m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
                    else:
                        m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


class Matrix:
    """Immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: Sequence[Sequence]):
        self.field = field
        self.rows = rows
        self.cols = cols
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"entry grid does not have shape {rows}x{cols}")
        self.data = tuple(tuple(r) for r in data)
        self._hash = None

    # constructors
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [[field(x) for x in r] for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field(0)
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        one, z = field(1), field(0)
        return cls(field, n, n, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: FieldSpec, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        return cls(field, nrows, len(columns), [[c[i] for c in columns] for i in range(nrows)])

    @classmethod
    def hstack(cls, field: FieldSpec, nrows: int, blocks: Iterable["Matrix"]) -> "Matrix":
        blocks = list(blocks)
        for b in blocks:
            if b.rows != nrows:
                raise DimensionMismatch("hstack row mismatch")
        data = [sum((list(b.data[i]) for b in blocks), []) for i in range(nrows)]
        return cls(field, nrows, sum(b.cols for b in blocks), data)

    @classmethod
    def vstack(cls, field: FieldSpec, ncols: int, blocks: Iterable["Matrix"]) -> "Matrix":
        data = []
        for b in blocks:
            if b.cols != ncols:
                raise DimensionMismatch("vstack column mismatch")
            data.extend(b.data)
        return cls(field, len(data), ncols, data)

    @classmethod
    def block_diag(cls, field: FieldSpec, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = field(0)
        data = []
        off = 0
        for b in blocks:
            for r in b.data:
                data.append([z] * off + list(r) + [z] * (cols - off - b.cols))
            off += b.cols
        return cls(field, rows, cols, data)

    # basic protocol
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.text(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols} over {self.field}: [{body}])"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def to_text(self):
        return [[self.field.text(x) for x in r] for r in self.data]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    # arithmetic
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        z = self.field(0)
        data = []
        for r in self.data:
            if p:
                data.append([sum(a * b for a, b in zip(r, c)) % p for c in cols])
            else:
                data.append([sum((a * b for a, b in zip(r, c)), z) for c in cols])
        return Matrix(self.field, self.rows, other.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch("cannot add matrices of different shapes")
        p = self.field.p
        if p:
            data = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        else:
            data = [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.p
        if p:
            data = [[(c * a) % p for a in r] for r in self.data]
        else:
            data = [[c * a for a in r] for r in self.data]
        return Matrix(self.field, self.rows, self.cols, data)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def kron(self, other: "Matrix") -> "Matrix":
        p = self.field.p
        data = []
        for r in self.data:
            for s in other.data:
                if p:
                    data.append([(a * b) % p for a in r for b in s])
                else:
                    data.append([a * b for a in r for b in s])
        return Matrix(self.field, self.rows * other.rows, self.cols * other.cols, data)

    def columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.rows, len(idx), [[r[j] for j in idx] for r in self.data])

    def row_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, stop - start, self.cols, self.data[start:stop])

    def col_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, self.rows, stop - start, [r[start:stop] for r in self.data])

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    # reduction
    def rref(self):
        """Return ``(R, pivots)`` with ``R`` the nonzero rows of the RREF."""
        rows, piv = _rref([list(r) for r in self.data], self.cols, self.field.p)
        return Matrix(self.field, len(rows), self.cols, rows), piv

    def rank(self) -> int:
        return len(_rref([list(r) for r in self.data], self.cols, self.field.p)[1])


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{x : m x = 0}``."""
    F = m.field
    rows, piv = _rref([list(r) for r in m.data], m.cols, F.p)
    pivset = set(piv)
    free = [j for j in range(m.cols) if j not in pivset]
    one, z = F(1), F(0)
    cols = []
    for f in free:
        v = [z] * m.cols
        v[f] = one
        for r, c in enumerate(piv):
            a = rows[r][f]
            if a:
                v[c] = (-a) % F.p if F.p else -a
        cols.append(v)
    return Matrix.from_columns(F, m.cols, cols)


def image_basis(m: Matrix) -> Matrix:
    """Independent columns of ``m`` spanning its column space (leftmost choice)."""
    piv = _rref([list(r) for r in m.data], m.cols, m.field.p)[1]
    return m.columns(piv)


def row_space_basis(vectors: Matrix) -> Matrix:
    """Canonical basis (RREF rows, returned as columns) of the column span."""
    r, _ = vectors.T.rref()
    return r.T


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of non-square matrix")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some ``x`` with ``m x = b``, or ``None`` when no solution exists."""
    if m.rows != b.rows:
        raise DimensionMismatch(f"solve: {m.shape} against {b.shape}")
    F = m.field
    n = m.cols
    aug = [list(r) + list(s) for r, s in zip(m.data, b.data)]
    rows, piv = _rref(aug, n + b.cols, F.p)
    if piv and piv[-1] >= n:
        return None
    z = F(0)
    x = [[z] * b.cols for _ in range(n)]
    for r, c in enumerate(piv):
        x[c] = rows[r][n:]
    return Matrix(F, n, b.cols, x)


def cokernel_projection(m: Matrix):
    """Return ``(p, s, d)``: surjection ``p`` with ``p m = 0``, a section ``s`` (``p s = I``), and ``d = dim coker``."""
    F = m.field
    n = m.rows
    img = image_basis(m)
    _, piv = img.T.rref()
    pivset = set(piv)
    comp = [j for j in range(n) if j not in pivset]
    one, z = F(1), F(0)
    e = Matrix.from_columns(F, n, [[one if i == j else z for i in range(n)] for j in comp])
    full = Matrix.hstack(F, n, [img, e])
    inv = inverse(full)
    p = inv.row_slice(img.cols, n)
    return p, e, len(comp)


def span_contains(big: Matrix, small: Matrix) -> bool:
    """Whether every column of ``small`` lies in the column span of ``big``."""
    if small.cols == 0:
        return True
    if big.cols == 0:
        return small.is_zero()
    return solve(big, small) is not None


def same_span(a: Matrix, b: Matrix) -> bool:
    return a.rank() == b.rank() and span_contains(a, b)


def intersect(a: Matrix, b: Matrix) -> Matrix:
    """Basis of the intersection of two column spans."""
    F = a.field
    k = kernel_basis(Matrix.hstack(F, a.rows, [a, -b]))
    return image_basis(a @ k.row_slice(0, a.cols))


def pullback_pair(f: Matrix, g: Matrix):
    """``P = ker[f, -g]`` with projections ``p_A``, ``p_B`` satisfying ``f p_A = g p_B``."""
    if f.rows != g.rows:
        raise DimensionMismatch("pullback needs a common codomain")
    F = f.field
    k = kernel_basis(Matrix.hstack(F, f.rows, [f, -g]))
    return k.cols, k.row_slice(0, f.cols), k.row_slice(f.cols, f.cols + g.cols)


def pushout_pair(f: Matrix, g: Matrix):
    """``P = coker (f, -g)^T`` with insertions ``i_A``, ``i_B`` satisfying ``i_A f = i_B g``."""
    if f.cols != g.cols:
        raise DimensionMismatch("pushout needs a common domain")
    F = f.field
    p, _, d = cokernel_projection(Matrix.vstack(F, f.cols, [f, -g]))
    return d, p.col_slice(0, f.rows), p.col_slice(f.rows, f.rows + g.rows)


def factor_through_pullback(p_a: Matrix, p_b: Matrix, h_a: Matrix, h_b: Matrix) -> Optional[Matrix]:
    """The unique ``u`` with ``p_a u = h_a`` and ``p_b u = h_b``, if the cone factors."""
    F = p_a.field
    stacked = Matrix.vstack(F, p_a.cols, [p_a, p_b])
    return solve(stacked, Matrix.vstack(F, h_a.cols, [h_a, h_b]))


def factor_through_pushout(i_a: Matrix, i_b: Matrix, h_a: Matrix, h_b: Matrix) -> Optional[Matrix]:
    """The unique ``u`` with ``u i_a = h_a`` and ``u i_b = h_b``, if the cocone factors."""
    F = i_a.field
    glued = Matrix.hstack(F, i_a.rows, [i_a, i_b])
    target = Matrix.hstack(F, h_a.rows, [h_a, h_b])
    x = solve(glued.T, target.T)
    return None if x is None else x.T
