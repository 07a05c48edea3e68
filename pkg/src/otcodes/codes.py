"""Linear codes over prime fields and their generalized Hamming weights.

Generalized Hamming weights are computed three ways that share no code:
Wei's parity-check formula, the generator-matrix column-span formula, and
direct enumeration of r-dimensional subcodes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import NoDual, RankDeficient, TooLarge
from .exactfield import DenseMatrix, PrimeField, kernel_basis, rank, rank_of_columns, rref

CODEWORD_CAP = 2**24
SUBSET_CAP = 24
SUBSPACE_CAP = 10**6


def colex_subsets(n: int, size: int):
    """All ``size``-subsets of range(n) as sorted tuples, in colex order."""
    if size == 0:
        yield ()
        return
    for top in range(size - 1, n):
        for rest in colex_subsets(top, size - 1):
            yield rest + (top,)


@dataclass(frozen=True)
class LinearCode:
    G: DenseMatrix
    name: str | None = None

    def __post_init__(self):
        k, n = self.G.shape
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        if rank(self.G) != k:
            raise RankDeficient(f"generator matrix has rank {rank(self.G)} < k={k}")

    @property
    def field(self) -> PrimeField:
        return self.G.field

    @property
    def p(self) -> int:
        return self.G.p

    @property
    def n(self) -> int:
        return self.G.ncols

    @property
    def k(self) -> int:
        return self.G.nrows

    @classmethod
    def from_rows(cls, p: int, rows, name: str | None = None) -> LinearCode:
        return cls(DenseMatrix.from_rows(p, rows), name)

    @classmethod
    def from_parity_check(cls, H: DenseMatrix, name: str | None = None) -> LinearCode:
        """The code ker(H), with the canonical kernel basis as generator rows."""
        basis = kernel_basis(H)
        if not basis:
            raise RankDeficient("parity-check matrix has trivial kernel")
        return cls(DenseMatrix.from_rows(H.field, basis, H.ncols), name)

    def degenerate(self) -> bool:
        return any(not any(col) for col in (self.G.column(j) for j in range(self.n)))


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    ghw: tuple[int, ...] = field(default=())
    degenerate: bool = False

    def __post_init__(self):
        prev = 0
        for w in self.ghw:
            if not prev < w <= self.n:
                raise ValueError(f"generalized Hamming weights not strictly increasing: {self.ghw}")
            prev = w
        if self.ghw and self.ghw[0] != self.d:
            raise ValueError("d must equal d_1")


def standard_form(C: LinearCode) -> tuple[DenseMatrix, list[int]]:
    """Return ``([I_k | P], perm)`` with column j of the result = column perm[j] of RREF(G).

    Pivot columns (the lexicographically smallest information set) go first,
    the remaining columns follow in their original order.
    """
    R, pivots, r = rref(C.G)
    if r != C.k:
        raise RankDeficient(f"generator matrix has rank {r} < k={C.k}")
    rest = [j for j in range(C.n) if j not in set(pivots)]
    perm = list(pivots) + rest
    return R.permute_columns(perm), perm


def parity_check(C: LinearCode) -> DenseMatrix:
    """``[-P^T | I_{n-k}]`` from the standard form, with the column permutation undone."""
    k, n = C.k, C.n
    if k == n:
        raise NoDual("k = n: the dual code is zero")
    Gs, perm = standard_form(C)
    p = C.p
    m = n - k
    Hs = [[(-Gs[i, k + r]) % p for i in range(k)] + [int(r == c) for c in range(m)] for r in range(m)]
    H = [[0] * n for _ in range(m)]
    for j, orig in enumerate(perm):
        for r in range(m):
            H[r][orig] = Hs[r][j]
    return DenseMatrix.from_rows(C.field, H, n)


def codewords(C: LinearCode, cap: int = CODEWORD_CAP):
    """Yield all codewords as numpy int64 row blocks (chunks of the message space)."""
    q, k = C.p, C.k
    total = q**k
    if total > cap:
        raise TooLarge(f"{total} codewords exceed cap {cap}", required=total)
    G = np.array(C.G.rows, dtype=np.int64)
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        msgs = np.empty((idx.size, k), dtype=np.int64)
        for j in range(k - 1, -1, -1):
            msgs[:, j] = idx % q
            idx //= q
        yield msgs @ G % q


def min_distance(C: LinearCode, cap: int = CODEWORD_CAP) -> int:
    best = C.n + 1
    for block in codewords(C, cap):
        wts = np.count_nonzero(block, axis=1)
        wts = wts[wts > 0]
        if wts.size:
            best = min(best, int(wts.min()))
    return best


def _check_r(r: int, k: int):
    if not 1 <= r <= k:
        raise ValueError(f"rank index r={r} outside 1..{k}")


def ghw_wei(H: DenseMatrix, r: int, cap: int = SUBSET_CAP) -> int:
    """d_r as the least |I| with |I| - rank(H_I) >= r."""
    n = H.ncols
    k = n - rank(H)
    _check_r(r, k)
    if n > cap:
        raise TooLarge(f"n={n} exceeds subset-enumeration cap {cap}", required=n)
    for size in range(r, n + 1):
        for I in colex_subsets(n, size):
            if size - rank_of_columns(H, I) >= r:
                return size
    raise AssertionError("unreachable: I = [n] always qualifies")


def ghw_generator(C: LinearCode, r: int, cap: int = SUBSET_CAP) -> int:
    """d_r = n - max{|J| : columns J of G span a (k - r)-dimensional space}."""
    n, k = C.n, C.k
    _check_r(r, k)
    if n > cap:
        raise TooLarge(f"n={n} exceeds subset-enumeration cap {cap}", required=n)
    target = k - r
    for size in range(n, -1, -1):
        for J in colex_subsets(n, size):
            if rank_of_columns(C.G, J) == target:
                return n - size
    raise AssertionError("unreachable")


def gaussian_binomial(k: int, r: int, q: int) -> int:
    if not 0 <= r <= k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rref_subspaces(k: int, r: int, q: int):
    """Every r-dimensional subspace of F_q^k, as its unique r x k RREF basis."""
    for pivots in itertools.combinations(range(k), r):
        free = [(i, j) for i in range(r) for j in range(pivots[i] + 1, k) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = [[0] * k for _ in range(r)]
            for i, c in enumerate(pivots):
                M[i][c] = 1
            for (i, j), v in zip(free, vals):
                M[i][j] = v
            yield M


def ghw_subcode_oracle(C: LinearCode, r: int, cap: int = SUBSPACE_CAP) -> int:
    """d_r by minimizing |Supp(D)| over all r-dimensional subcodes D."""
    n, k, q = C.n, C.k, C.p
    _check_r(r, k)
    count = gaussian_binomial(k, r, q)
    if count > cap:
        raise TooLarge(f"{count} subspaces exceed cap {cap}", required=count)
    G = C.G.rows
    best = n
    for M in rref_subspaces(k, r, q):
        support = set()
        for coeffs in M:
            for j in range(n):
                if sum(c * G[i][j] for i, c in enumerate(coeffs)) % q:
                    support.add(j)
        best = min(best, len(support))
    return best


def code_params(C: LinearCode, H: DenseMatrix | None = None) -> CodeParams:
    d = min_distance(C)
    if C.k == C.n:
        ghw = tuple(range(1, C.n + 1))
    else:
        H = parity_check(C) if H is None else H
        ghw = tuple(ghw_wei(H, r) for r in range(1, C.k + 1))
    return CodeParams(C.n, C.k, d, ghw, C.degenerate())
