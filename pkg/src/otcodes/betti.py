"""Graded Betti numbers of S/I and the invariants read off them.

Two engines:

* :func:`koszul_betti` takes a reduced Groebner basis and computes
  ``beta_{i,j} = dim H_i(y; S/I)_j`` from Koszul strands whose graded pieces
  have standard-monomial bases.  Monomial ideals are split by fine
  multidegree over the lcm lattice.  For other ideals the strands are split
  by the coarsest variable-block grading the basis respects, and only the
  cells where the initial ideal has nonzero Betti numbers are computed
  (Betti numbers can only drop under the Groebner degeneration).
* :func:`hochster_betti` sums reduced homology of induced subcomplexes of
  the Stanley-Reisner complex.  It shares no code with the Koszul engine.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .errors import NotCM, TooLarge, Truncated
from .exactfield import sparse_rank
from .polyring import (
    GroebnerBasis,
    Monomial,
    TermOrder,
    divides,
    hilbert_function,
    hilbert_numerator,
    mono_lcm,
    standard_monomials,
)

BLOCK_CAP = 400_000


@dataclass(frozen=True)
class BettiTable:
    entries: dict[tuple[int, int], int]
    n: int
    i_max: int
    j_max: int
    truncated: bool = False
    p: int | None = None

    def __post_init__(self):
        clean = {k: v for k, v in sorted(self.entries.items()) if v}
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def row(self, i: int) -> dict[int, int]:
        return {j: b for (a, j), b in self.entries.items() if a == i}

    def homological_degrees(self) -> list[int]:
        return sorted({i for i, _ in self.entries})

    @property
    def pdim(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def t(self, i: int) -> int | None:
        return min(self.row(i), default=None)

    def T(self, i: int) -> int | None:
        return max(self.row(i), default=None)

    def without_zero_row(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in self.entries.items() if k[0] > 0}

    def triples(self) -> list[list[int]]:
        return [[i, j, b] for (i, j), b in self.entries.items()]

    def numerator(self) -> list[int]:
        """sum_{i,j} (-1)^i beta_{i,j} s^j, i.e. HS(S/I) * (1 - s)^n."""
        top = max((j for _, j in self.entries), default=0)
        K = [0] * (top + 1)
        for (i, j), b in self.entries.items():
            K[j] += (-1) ** i * b
        return K

    def render(self) -> str:
        """Macaulay-style table: columns are i, rows are j - i."""
        if not self.entries:
            return "(zero module)"
        cols = range(0, self.pdim + 1)
        rows = range(min(j - i for i, j in self.entries), max(j - i for i, j in self.entries) + 1)
        totals = [sum(self.row(i).values()) for i in cols]
        width = max(len(str(x)) for x in totals + [self.pdim]) + 1
        lines = ["       " + "".join(f"{i:>{width}}" for i in cols),
                 "total: " + "".join(f"{x:>{width}}" for x in totals)]
        for r in rows:
            cells = [self[(i, i + r)] for i in cols]
            lines.append(f"{r:>5}: " + "".join(f"{(str(x) if x else '.'):>{width}}" for x in cells))
        if self.truncated:
            lines.append(f"(truncated at j = {self.j_max})")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Monomial ideals: multigraded Koszul homology over the lcm lattice.


def _lcm_lattice(gens: Sequence[Monomial], n: int, j_max: int) -> set[Monomial]:
    lattice: set[Monomial] = set()
    for g in gens:
        if sum(g) > j_max:
            continue
        new = {g}
        for x in lattice:
            m = mono_lcm(g, x)
            if sum(m) <= j_max:
                new.add(m)
        lattice |= new
    lattice.add((0,) * n)
    return lattice


def monomial_multigraded_betti(gens: Sequence[Monomial], n: int, p: int, i_max: int,
                               j_max: int) -> dict[tuple[int, Monomial], int]:
    """beta_{i,a}(S/M) for every multidegree a with |a| <= j_max."""
    gens = [tuple(g) for g in gens]
    if any(sum(g) == 0 for g in gens):
        return {}

    def standard(m) -> bool:
        return not any(divides(g, m) for g in gens)

    out: dict[tuple[int, Monomial], int] = {}
    for a in _lcm_lattice(gens, n, j_max):
        supp = [v for v in range(n) if a[v]]
        # K_{i,a} basis: i-subsets F of supp(a) with x^{a - e_F} standard
        layers: list[dict[tuple[int, ...], int]] = []
        for i in range(len(supp) + 1):
            basis = {}
            for F in itertools.combinations(supp, i):
                m = list(a)
                for v in F:
                    m[v] -= 1
                if standard(m):
                    basis[F] = len(basis)
            layers.append(basis)
        ranks = [0] * (len(layers) + 1)
        for i in range(1, len(layers)):
            src, dst = layers[i], layers[i - 1]
            if not src or not dst:
                continue
            cols = []
            for F in src:
                vec = {}
                for t, v in enumerate(F):
                    G = F[:t] + F[t + 1:]
                    idx = dst.get(G)
                    if idx is not None:
                        vec[idx] = -1 if t % 2 else 1
                cols.append(vec)
            ranks[i] = sparse_rank(cols, p)
        for i, basis in enumerate(layers):
            if i > i_max:
                break
            b = len(basis) - ranks[i] - ranks[i + 1]
            if b:
                out[(i, a)] = b
    return out


def _table_from_multigraded(mg: dict[tuple[int, Monomial], int], n: int, p: int, i_max: int,
                           j_max: int) -> BettiTable:
    entries: dict[tuple[int, int], int] = defaultdict(int)
    for (i, a), b in mg.items():
        entries[(i, sum(a))] += b
    truncated = any(j == j_max for (_, j) in entries)
    return BettiTable(dict(entries), n, i_max, j_max, truncated, p)


# ---------------------------------------------------------------------------
# General homogeneous ideals.


class _Quotient:
    """Standard-monomial model of S/I for a reduced Groebner basis."""

    def __init__(self, G: GroebnerBasis, n: int, p: int):
        self.order = G.order
        self.n, self.p = n, p
        self.rules = []
        for g in G.elements:
            g = g.monic(G.order)
            lm = g.leading_monomial(G.order)
            tail = [(m, c) for m, c in g.terms.items() if m != lm]
            self.rules.append((lm, tail))
        self.leads = [lm for lm, _ in self.rules]
        self._nf: dict[Monomial, dict[Monomial, int]] = {}
        self._std: dict[int, list[Monomial]] = {}

    def standard(self, q: int) -> list[Monomial]:
        if q not in self._std:
            self._std[q] = standard_monomials(self.leads, q, self.n, self.order) if q >= 0 else []
        return self._std[q]

    def nf(self, m: Monomial) -> dict[Monomial, int]:
        """Normal form of a monomial as {standard monomial: coefficient}."""
        memo = self._nf
        if m in memo:
            return memo[m]
        p = self.p
        stack = [m]
        while stack:
            w = stack[-1]
            if w in memo:
                stack.pop()
                continue
            rule = next(((lm, tail) for lm, tail in self.rules if divides(lm, w)), None)
            if rule is None:
                memo[w] = {w: 1}
                stack.pop()
                continue
            lm, tail = rule
            u = tuple(x - y for x, y in zip(w, lm))
            subs = [tuple(x + y for x, y in zip(u, t)) for t, _ in tail]
            missing = [s for s in subs if s not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[Monomial, int] = {}
            for s, (_, c) in zip(subs, tail):
                for sm, sc in memo[s].items():
                    v = (acc.get(sm, 0) - c * sc) % p
                    if v:
                        acc[sm] = v
                    else:
                        acc.pop(sm, None)
            memo[w] = acc
            stack.pop()
        return memo[m]


def _variable_blocks(G: GroebnerBasis, n: int) -> list[int]:
    """Block label per variable for the coarsest grading making every basis element homogeneous."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.elements:
        terms = list(g.terms)
        for m in terms[1:]:
            diff = [v for v in range(n) if m[v] != terms[0][v]]
            for a, b in zip(diff, diff[1:]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(v) for v in range(n)})
    label = {r: i for i, r in enumerate(roots)}
    return [label[find(v)] for v in range(n)]


def _drop_regular_variables(G: GroebnerBasis) -> tuple[GroebnerBasis, int]:
    """Quotient by the variables dividing no leading monomial.

    Such a variable is a nonzerodivisor on S/in(I), hence on S/I, and setting
    it to zero in a reduced basis yields a reduced basis of the quotient with
    the same leading monomials, so Betti numbers are unchanged.
    """
    from .polyring import Polynomial

    n = G.n
    leads = G.leading_monomials()
    keep = [v for v in range(n) if any(m[v] for m in leads)]
    if len(keep) == n:
        return G, n
    pos = {v: i for i, v in enumerate(keep)}
    new = []
    for g in G.elements:
        terms = {}
        for m, c in g.terms.items():
            if all(m[v] == 0 for v in range(n) if v not in pos):
                terms[tuple(m[v] for v in keep)] = c
        new.append(Polynomial(len(keep), g.p, terms))
    priority = tuple(pos[v] for v in G.order.priority if v in pos)
    return GroebnerBasis(TermOrder(priority), tuple(new)), len(keep)


def koszul_betti(G: GroebnerBasis, i_max: int | None = None, j_max: int | None = None,
                 n: int | None = None, p: int | None = None, cap: int = BLOCK_CAP,
                 shortcuts: bool = True) -> BettiTable:
    """Graded Betti numbers of S/I from Koszul homology of S/I.

    ``G`` must be a reduced Groebner basis of a homogeneous ideal.  An empty
    basis stands for the zero ideal (then ``n`` and ``p`` are required).
    With ``shortcuts=False`` every (i, j) cell is computed in the plain
    standard grading; this is slow and exists as a cross-check.
    """
    n = G.n if n is None else n
    p = p or G.p
    if not p:
        raise ValueError("field characteristic unknown for an empty basis")
    i_max = n if i_max is None else i_max
    j_max = n + 2 if j_max is None else j_max
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    if not G.is_homogeneous():
        raise ValueError("koszul_betti needs a homogeneous ideal")
    if shortcuts and G.is_monomial():
        mg = monomial_multigraded_betti(G.leading_monomials(), n, p, i_max, j_max)
        return _table_from_multigraded(mg, n, p, i_max, j_max)

    if shortcuts:
        Gr, nr = _drop_regular_variables(G)
        blocks = _variable_blocks(Gr, nr)
    else:
        Gr, nr = G, n
        blocks = [0] * n
    nb = max(blocks, default=0) + 1

    def bdeg(m) -> tuple[int, ...]:
        out = [0] * nb
        for v, e in enumerate(m):
            if e:
                out[blocks[v]] += e
        return tuple(out)

    bound: dict[tuple[int, tuple[int, ...]], int] = defaultdict(int)
    if shortcuts:
        for (i, a), b in monomial_multigraded_betti(Gr.leading_monomials(), nr, p, i_max + 1, j_max).items():
            bound[(i, bdeg(a))] += b
    else:
        for i in range(min(i_max, nr) + 1):
            for j in range(i, j_max + 1):
                bound[(i, (j,))] = 1 << 62

    Q = _Quotient(Gr, nr, p)
    std_by_block: dict[int, dict[tuple[int, ...], list[Monomial]]] = {}

    def std_block(q: int, b: tuple[int, ...]) -> list[Monomial]:
        if q < 0 or any(x < 0 for x in b):
            return []
        if q not in std_by_block:
            groups: dict[tuple[int, ...], list[Monomial]] = defaultdict(list)
            for m in Q.standard(q):
                groups[bdeg(m)].append(m)
            std_by_block[q] = groups
        return std_by_block[q].get(b, [])

    def basis(i: int, b: tuple[int, ...]) -> list[tuple[Monomial, tuple[int, ...]]]:
        q = sum(b) - i
        out = []
        for F in itertools.combinations(range(nr), i):
            fb = bdeg(tuple(int(v in F) for v in range(nr)))
            rest = tuple(x - y for x, y in zip(b, fb))
            for m in std_block(q, rest):
                out.append((m, F))
        if len(out) > cap:
            raise TooLarge(f"Koszul block (i={i}, j={sum(b)}) has {len(out)} basis elements", required=len(out))
        return out

    rank_cache: dict[tuple[int, tuple[int, ...]], int] = {}

    def diff_rank(i: int, b: tuple[int, ...]) -> int:
        """Rank of d_i : K_{i,b} -> K_{i-1,b}."""
        if i <= 0 or i > nr:
            return 0
        key = (i, b)
        if key in rank_cache:
            return rank_cache[key]
        src = basis(i, b)
        tgt = {x: idx for idx, x in enumerate(basis(i - 1, b))}
        cols = []
        for m, F in src:
            vec: dict[int, int] = {}
            for t, v in enumerate(F):
                Fr = F[:t] + F[t + 1:]
                ym = tuple(e + (w == v) for w, e in enumerate(m))
                sign = -1 if t % 2 else 1
                for sm, c in Q.nf(ym).items():
                    idx = tgt[(sm, Fr)]
                    val = (vec.get(idx, 0) + sign * c) % p
                    if val:
                        vec[idx] = val
                    else:
                        vec.pop(idx, None)
            cols.append(vec)
        rank_cache[key] = r = sparse_rank(cols, p)
        return r

    entries: dict[tuple[int, int], int] = defaultdict(int)
    for (i, b), ub in sorted(bound.items()):
        if i > i_max or ub == 0:
            continue
        dim = len(basis(i, b))
        beta = dim - diff_rank(i, b) - diff_rank(i + 1, b)
        if beta > ub:
            raise AssertionError(f"Betti number {beta} exceeds initial-ideal bound {ub} at ({i}, {b})")
        if beta:
            entries[(i, sum(b))] += beta
    truncated = any(j == j_max for (_, j) in entries)
    return BettiTable(dict(entries), n, i_max, j_max, truncated, p)


# ---------------------------------------------------------------------------
# Hochster's formula.


def hochster_betti(nonfaces: Iterable[Iterable[int]], n: int, p: int, i_max: int | None = None,
                   j_max: int | None = None) -> BettiTable:
    """beta_{i,j}(S/I_Delta) = sum_{|W| = j} dim H~_{j-i-1}(Delta_W; F_p).

    ``nonfaces`` are the supports (0-based) of the square-free monomial generators.
    """
    i_max = n if i_max is None else i_max
    j_max = n + 2 if j_max is None else j_max
    masks = [sum(1 << v for v in s) for s in nonfaces]
    if any(m == 0 for m in masks):
        return BettiTable({}, n, i_max, j_max, False, p)
    faces = [S for S in range(1 << n) if not any(m & S == m for m in masks)]
    faceset = set(faces)
    entries: dict[tuple[int, int], int] = defaultdict(int)
    entries[(0, 0)] = 1
    for W in range(1, 1 << n):
        if W in faceset:
            continue  # a full simplex is acyclic
        j = bin(W).count("1")
        if j > j_max:
            continue
        by_size: dict[int, list[int]] = defaultdict(list)
        for f in faces:
            if f & W == f:
                by_size[bin(f).count("1")].append(f)
        top = max(by_size)
        index = {s: {f: k for k, f in enumerate(fs)} for s, fs in by_size.items()}
        ranks = defaultdict(int)
        for s in range(1, top + 1):
            cols = []
            for f in by_size[s]:
                verts = [v for v in range(n) if f >> v & 1]
                vec = {}
                for t, v in enumerate(verts):
                    vec[index[s - 1][f & ~(1 << v)]] = -1 if t % 2 else 1
                cols.append(vec)
            ranks[s] = sparse_rank(cols, p)
        # faces of size s have dimension s - 1
        for s in range(0, top + 1):
            h = len(by_size[s]) - ranks[s] - ranks[s + 1]
            if h:
                i = j - (s - 1) - 1
                if 0 <= i <= i_max:
                    entries[(i, j)] += h
    truncated = any(j == j_max for (_, j) in entries)
    return BettiTable(dict(entries), n, i_max, j_max, truncated, p)


# ---------------------------------------------------------------------------
# Derived invariants.


def _divide_by_one_minus_s(K: list[int]) -> list[int]:
    """Exact quotient K / (1 - s), assuming K(1) = 0."""
    out = []
    acc = 0
    for c in K[:-1]:
        acc += c
        out.append(acc)
    return out or [0]


def reduce_numerator(K: Sequence[int]) -> tuple[list[int], int]:
    """Cancel (1 - s) from K as often as possible; return (h, times)."""
    K = list(K)
    times = 0
    while any(K) and sum(K) == 0:
        K = _divide_by_one_minus_s(K)
        times += 1
    return K, times


@dataclass(frozen=True)
class ResolutionSummary:
    t: tuple[int, ...]
    T: tuple[int, ...]
    pdim: int
    reg: int
    multiplicity: int
    dim: int
    codim: int
    cm: bool
    h_vector: tuple[int, ...] = field(default=())


def summarize(B: BettiTable, n: int | None = None) -> ResolutionSummary:
    if B.truncated:
        raise Truncated(f"Betti table truncated at j = {B.j_max}")
    n = B.n if n is None else n
    pdim = B.pdim
    t = tuple(B.t(i) or 0 for i in range(1, pdim + 1))
    T = tuple(B.T(i) or 0 for i in range(1, pdim + 1))
    reg = max((T[i - 1] - i for i in range(1, pdim + 1)), default=0)
    h, codim = reduce_numerator(B.numerator())
    e = sum(h)
    return ResolutionSummary(t, T, pdim, reg, e, n - codim, codim, pdim == codim, tuple(h))


def series_coefficients_from_numerator(K: Sequence[int], n: int, upto: int) -> list[int]:
    """Coefficients of K(s) / (1 - s)^n up to s^upto."""
    return [sum(c * comb(m - j + n - 1, n - 1) for j, c in enumerate(K) if j <= m) if n else
            (K[m] if m < len(K) else 0) for m in range(upto + 1)]


def series_from_f_vector(f: Sequence[int], upto: int) -> list[int]:
    """Coefficients of sum_i f_{i-1} s^i / (1 - s)^i, the face-ring Hilbert series."""
    out = []
    for m in range(upto + 1):
        if m == 0:
            out.append(f[0])
        else:
            out.append(sum(f[i] * comb(m - 1, i - 1) for i in range(1, len(f)) if i <= m))
    return out


@dataclass(frozen=True)
class HSCheck:
    ok: bool
    first_mismatch: int | None
    details: str
    hilbert: tuple[int, ...]


def hs_check(B: BettiTable, init: Sequence[Monomial], n: int, degree_bound: int,
             f_vector: Sequence[int] | None = None) -> HSCheck:
    """Compare the Betti-table series with the Hilbert function of S/in(I) termwise.

    With ``f_vector`` also compares against the face-ring series of the
    broken-circuit (or other) complex with that f-vector.
    """
    hf = [hilbert_function(list(init), m, n) for m in range(degree_bound + 1)] if init else \
        [comb(m + n - 1, n - 1) for m in range(degree_bound + 1)]
    betti_series = series_coefficients_from_numerator(B.numerator(), n, degree_bound)
    for m in range(degree_bound + 1):
        if betti_series[m] != hf[m]:
            return HSCheck(False, m, f"degree {m}: Betti table gives {betti_series[m]}, "
                                     f"standard monomials give {hf[m]}", tuple(hf))
    if f_vector is not None:
        fs = series_from_f_vector(f_vector, degree_bound)
        for m in range(degree_bound + 1):
            if fs[m] != hf[m]:
                return HSCheck(False, m, f"degree {m}: f-vector series gives {fs[m]}, "
                                         f"standard monomials give {hf[m]}", tuple(hf))
    return HSCheck(True, None, f"agree through degree {degree_bound}", tuple(hf))


@dataclass(frozen=True)
class MultiplicityReport:
    lower: Fraction
    upper: Fraction
    multiplicity: int
    holds: bool

    def describe(self) -> str:
        verdict = "holds" if self.holds else "VIOLATED"
        return f"{verdict}: {self.lower} <= e = {self.multiplicity} <= {self.upper}"


def multiplicity_conjecture_check(S: ResolutionSummary) -> MultiplicityReport:
    if not S.cm:
        raise NotCM("the multiplicity bounds are stated for Cohen-Macaulay quotients only")
    pf = factorial(S.pdim)
    lower = Fraction(prod(S.t), pf)
    upper = Fraction(prod(S.T), pf)
    return MultiplicityReport(lower, upper, S.multiplicity, lower <= S.multiplicity <= upper)


def monomial_numerator(init: Sequence[Monomial]) -> list[int]:
    return hilbert_numerator(init)
