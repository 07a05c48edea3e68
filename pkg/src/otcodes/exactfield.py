"""Prime-field arithmetic and dense exact linear algebra.

Matrices store entries as plain ``int`` residues in ``[0, p)``; the
:class:`Scalar` wrapper exists for callers that want field-aware values, but
the linear-algebra kernels work on bare integers for speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < 2**31 or not is_prime(self.p):
            raise ValueError(f"field modulus must be a prime in [2, 2^31), got {self.p!r}")

    def __call__(self, value: int) -> Scalar:
        return Scalar(value % self.p, self)

    def reduce(self, value: int) -> int:
        return value % self.p

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(value, -1, self.p)

    def signed(self, value: int) -> int:
        """Representative in (-p/2, p/2], handy for printing."""
        value %= self.p
        return value - self.p if value > self.p // 2 else value

    def elements(self) -> range:
        return range(self.p)


@dataclass(frozen=True)
class Scalar:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError("scalar value out of range")

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("scalars from different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return self.field(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self.field(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return self.field(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return self.field(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self.field(self.value * self.field.inv(o))

    def inverse(self) -> Scalar:
        return self.field(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major matrix over a prime field; entries are reduced on construction."""

    field: PrimeField
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        p = self.field.p
        fixed = tuple(tuple(int(v) % p for v in row) for row in self.rows)
        for row in fixed:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", fixed)

    @classmethod
    def from_rows(cls, field: PrimeField | int, rows: Sequence[Sequence[int]],
                  ncols: int | None = None) -> DenseMatrix:
        if isinstance(field, int):
            field = PrimeField(field)
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, tuple(tuple(r) for r in rows), ncols)

    @classmethod
    def identity(cls, field: PrimeField | int, n: int) -> DenseMatrix:
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def p(self) -> int:
        return self.field.p

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def submatrix_columns(self, cols: Iterable[int]) -> DenseMatrix:
        cols = list(cols)
        for c in cols:
            if not 0 <= c < self.ncols:
                raise IndexError(f"column index {c} out of range for {self.ncols} columns")
        return DenseMatrix(self.field, tuple(tuple(row[c] for c in cols) for row in self.rows), len(cols))

    def permute_columns(self, perm: Sequence[int]) -> DenseMatrix:
        """New matrix whose column j is column ``perm[j]`` of self."""
        return self.submatrix_columns(perm)

    def transpose(self) -> DenseMatrix:
        cols = [tuple(row[j] for row in self.rows) for j in range(self.ncols)]
        return DenseMatrix(self.field, tuple(cols), self.nrows)

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.ncols != other.nrows or self.field != other.field:
            raise ValueError("incompatible matrices")
        p = self.p
        ocols = [other.column(j) for j in range(other.ncols)]
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in ocols)
            for row in self.rows
        )
        return DenseMatrix(self.field, out, other.ncols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product M v."""
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.rows)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.rows for v in row)

    def to_lists(self, signed: bool = False) -> list[list[int]]:
        if signed:
            return [[self.field.signed(v) for v in row] for row in self.rows]
        return [list(row) for row in self.rows]

    def __str__(self):
        body = "\n".join(" ".join(f"{self.field.signed(v):>3}" for v in row) for row in self.rows)
        return f"[{self.nrows}x{self.ncols} over F_{self.p}]\n{body}"


def _rref_lists(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        prow = [v * inv % p for v in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(M: DenseMatrix) -> tuple[DenseMatrix, list[int], int]:
    """Reduced row-echelon form, pivot columns (increasing) and rank."""
    rows, pivots = _rref_lists([list(r) for r in M.rows], M.ncols, M.p)
    R = DenseMatrix(M.field, tuple(tuple(r) for r in rows), M.ncols)
    return R, pivots, len(pivots)


def rank(M: DenseMatrix) -> int:
    return rref(M)[2]


def kernel_basis(M: DenseMatrix) -> list[tuple[int, ...]]:
    """Right null space basis: one vector per free column, in increasing order.

    The vector for free column f has a 1 at f, zeros at the other free
    columns, and ``-R[r][f]`` at the pivot column of row r of the RREF.
    """
    p = M.p
    rows, pivots = _rref_lists([list(r) for r in M.rows], M.ncols, p)
    pivset = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [0] * M.ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rows[r][f]) % p
        basis.append(tuple(v))
    return basis


def rank_of_columns(M: DenseMatrix, cols: Iterable[int]) -> int:
    cols = list(cols)
    if not cols:
        return 0
    return rank(M.submatrix_columns(cols))


def row_space_equal(A: DenseMatrix, B: DenseMatrix) -> bool:
    if A.ncols != B.ncols or A.field != B.field:
        return False
    ra, _, ka = rref(A)
    rb, _, kb = rref(B)
    return ka == kb and ra.rows[:ka] == rb.rows[:kb]


def sparse_rank(rows: Iterable[dict[int, int]], p: int) -> int:
    """Rank of a sparse matrix given as row dicts ``{column: value}``.

    Incremental echelon form: every stored pivot row has its pivot at its
    smallest column, so reducing an incoming row only ever introduces larger
    columns and the loop terminates.
    """
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(row[c], -1, p)
                if inv != 1:
                    row = {k: v * inv % p for k, v in row.items()}
                pivots[c] = row
                r += 1
                break
            f = row[c]
            for k, v in prow.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return r
