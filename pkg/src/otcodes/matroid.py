"""Vector matroids of matrices: circuits, broken circuits, components.

Ground-set elements are 0-based column indices throughout; the harness
converts to the 1-based labels y1..yn when rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .codes import colex_subsets
from .errors import NoCircuits, TooLarge
from .exactfield import DenseMatrix, kernel_basis, rank, rank_of_columns

CIRCUIT_CAP = 20


@dataclass(frozen=True)
class VectorMatroid:
    M: DenseMatrix

    @property
    def n(self) -> int:
        return self.M.ncols

    @property
    def rank(self) -> int:
        return rank(self.M)

    def rank_of(self, cols: Iterable[int]) -> int:
        return rank_of_columns(self.M, cols)


@dataclass(frozen=True)
class Circuit:
    support: tuple[int, ...]
    dependency: tuple[int, ...]

    def __post_init__(self):
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("circuit support must be strictly increasing")
        if len(self.dependency) != len(self.support) or any(a == 0 for a in self.dependency):
            raise ValueError("dependency must be nonzero on the whole support")

    def __len__(self):
        return len(self.support)


@dataclass(frozen=True)
class BrokenCircuitIdeal:
    order: tuple[int, ...]
    minimal_nonfaces: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def c(self) -> int:
        return len(self.blocks)


def _as_matroid(M) -> VectorMatroid:
    return M if isinstance(M, VectorMatroid) else VectorMatroid(M)


def circuits(M: VectorMatroid | DenseMatrix, cap: int = CIRCUIT_CAP) -> list[Circuit]:
    """All circuits by increasing size, colex within a size.

    A subset containing no smaller circuit is a circuit exactly when its
    rank is one less than its size.
    """
    vm = _as_matroid(M)
    n, p = vm.n, vm.M.p
    if n > cap:
        raise TooLarge(f"{n} columns exceed circuit-enumeration cap {cap}", required=n)
    found: list[Circuit] = []
    masks: list[int] = []
    for size in range(1, min(n, vm.rank + 1) + 1):
        for S in colex_subsets(n, size):
            mask = sum(1 << i for i in S)
            if any(m & mask == m for m in masks):
                continue
            sub = vm.M.submatrix_columns(S)
            if rank(sub) != size - 1:
                continue
            (v,) = kernel_basis(sub)
            inv = pow(v[0], -1, p)
            found.append(Circuit(S, tuple(a * inv % p for a in v)))
            masks.append(mask)
    return found


def smallest_circuit_size(M: VectorMatroid | DenseMatrix) -> int:
    cs = circuits(M)
    if not cs:
        raise NoCircuits("the matroid is free (no dependent sets)")
    return min(len(c) for c in cs)


def minimalize(sets: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Inclusion-minimal members, deduplicated, sorted by size then colex."""
    uniq = sorted({tuple(sorted(s)) for s in sets}, key=lambda s: (len(s), s[::-1]))
    out: list[tuple[int, ...]] = []
    for s in uniq:
        ss = set(s)
        if not any(set(t) <= ss for t in out):
            out.append(s)
    return out


def broken_circuits(cs: Iterable[Circuit | Sequence[int]], order: Sequence[int]) -> BrokenCircuitIdeal:
    """Drop from every circuit the element whose variable has least priority.

    ``order`` lists variables from greatest to least.  The retained product
    is then the grevlex leading monomial of the circuit's OT polynomial.
    """
    pos = {v: i for i, v in enumerate(order)}
    broken = []
    for c in cs:
        support = c.support if isinstance(c, Circuit) else tuple(c)
        last = max(support, key=pos.__getitem__)
        broken.append(tuple(i for i in support if i != last))
    return BrokenCircuitIdeal(tuple(order), tuple(minimalize(broken)))


def components(cs: Iterable[Circuit | Sequence[int]], ground_size: int) -> ComponentPartition:
    parent = list(range(ground_size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in cs:
        support = c.support if isinstance(c, Circuit) else tuple(c)
        for a, b in zip(support, support[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks: dict[int, list[int]] = {}
    for x in range(ground_size):
        blocks.setdefault(find(x), []).append(x)
    return ComponentPartition(tuple(tuple(b) for b in sorted(blocks.values())))


def loops(M: VectorMatroid | DenseMatrix) -> tuple[int, ...]:
    m = _as_matroid(M).M
    return tuple(j for j in range(m.ncols) if not any(m.column(j)))


def nbc_f_vector(nonfaces: BrokenCircuitIdeal | Iterable[Sequence[int]], n: int) -> list[int]:
    """``[f_{-1}, f_0, ..., f_{n-1}]``: number of i-subsets containing no nonface."""
    if isinstance(nonfaces, BrokenCircuitIdeal):
        nonfaces = nonfaces.minimal_nonfaces
    masks = [sum(1 << i for i in s) for s in nonfaces]
    f = [0] * (n + 1)
    for S in range(1 << n):
        if not any(m & S == m for m in masks):
            f[bin(S).count("1")] += 1
    return f
