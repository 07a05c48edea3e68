"""Polynomials over F_p in y1..yn under graded reverse-lexicographic orders.

Monomials are exponent tuples.  A :class:`TermOrder` is grevlex with respect
to an arbitrary variable priority (position 0 = greatest variable).
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


def one(n: int) -> Monomial:
    return (0,) * n


def variable(n: int, v: int) -> Monomial:
    return tuple(int(i == v) for i in range(n))


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def support_monomial(n: int, support: Iterable[int]) -> Monomial:
    s = set(support)
    return tuple(int(i in s) for i in range(n))


def monomial_support(m: Monomial) -> tuple[int, ...]:
    return tuple(i for i, e in enumerate(m) if e)


def monomials_of_degree(n: int, m: int):
    """All exponent vectors of total degree m in n variables (lex-decreasing)."""
    if n == 0:
        if m == 0:
            yield ()
        return
    if n == 1:
        yield (m,)
        return
    for e in range(m, -1, -1):
        for rest in monomials_of_degree(n - 1, m - e):
            yield (e,) + rest


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"y{i + 1}")
        elif e > 1:
            parts.append(f"y{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class TermOrder:
    """Grevlex with respect to ``priority`` (greatest variable first)."""

    priority: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError(f"priority must be a permutation of 0..n-1, got {self.priority}")
        object.__setattr__(self, "_rev", tuple(reversed(self.priority)))

    @classmethod
    def grevlex(cls, n: int) -> TermOrder:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.priority)

    def key(self, m: Monomial):
        """Sort key: larger key means larger monomial."""
        return (sum(m),) + tuple(-m[v] for v in self._rev)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def least_variable(self, support: Iterable[int]) -> int:
        pos = {v: i for i, v in enumerate(self.priority)}
        return max(support, key=pos.__getitem__)


class Polynomial:
    """Sparse polynomial over F_p: ``terms`` maps exponent tuples to nonzero residues."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, p: int, terms: dict[Monomial, int] | None = None):
        self.n = n
        self.p = p
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c %= p
                if c:
                    if len(m) != n:
                        raise ValueError("monomial length mismatch")
                    self.terms[tuple(m)] = c

    @classmethod
    def monomial(cls, n: int, p: int, m: Monomial, c: int = 1) -> Polynomial:
        return cls(n, p, {m: c})

    @classmethod
    def var(cls, n: int, p: int, v: int) -> Polynomial:
        return cls(n, p, {variable(n, v): 1})

    def copy(self) -> Polynomial:
        q = Polynomial(self.n, self.p)
        q.terms = dict(self.terms)
        return q

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.p, frozenset(self.terms.items())))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _check(self, other: Polynomial):
        if self.n != other.n or self.p != other.p:
            raise ValueError("polynomials from different rings")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        out = dict(self.terms)
        p = self.p
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        q = Polynomial(self.n, p)
        q.terms = out
        return q

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, c: int) -> Polynomial:
        c %= self.p
        q = Polynomial(self.n, self.p)
        if c:
            q.terms = {m: a * c % self.p for m, a in self.terms.items()}
        return q

    def shift(self, mono: Monomial, c: int = 1) -> Polynomial:
        """c * mono * self."""
        c %= self.p
        q = Polynomial(self.n, self.p)
        if c:
            q.terms = {mono_mul(m, mono): a * c % self.p for m, a in self.terms.items()}
        return q

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.p
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(self.n, p, out)

    __rmul__ = __mul__

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: TermOrder) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder) -> Polynomial:
        return self.scale(pow(self.leading_coefficient(order), -1, self.p))

    def sorted_terms(self, order: TermOrder) -> list[tuple[int, Monomial]]:
        return [(self.terms[m], m) for m in sorted(self.terms, key=order.key, reverse=True)]

    def substitute_zero(self, v: int) -> Polynomial:
        return Polynomial(self.n, self.p, {m: c for m, c in self.terms.items() if m[v] == 0})

    def format(self, order: TermOrder | None = None) -> str:
        order = order or TermOrder.grevlex(self.n)
        if not self.terms:
            return "0"
        out = []
        for i, (c, m) in enumerate(self.sorted_terms(order)):
            neg = c == self.p - 1 and self.p > 2
            mag = 1 if neg else c
            body = format_monomial(m)
            if mag != 1:
                body = f"{mag}" if body == "1" else f"{mag}*{body}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self.format()!r}, p={self.p})"


_TERM_RE = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_polynomial(text: str, n: int, p: int) -> Polynomial:
    """Parse sums like ``"-y2*y4 + y1*y4 + 3*y1^2"`` over F_p in y1..yn."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    terms: dict[Monomial, int] = {}
    for sign, body in _TERM_RE.findall(text):
        coeff = -1 if sign == "-" else 1
        exps = [0] * n
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"bad term {body!r}")
            if factor[0] == "y":
                name, _, power = factor.partition("^")
                idx = int(name[1:]) - 1
                if not 0 <= idx < n:
                    raise ValueError(f"variable {name} outside y1..y{n}")
                exps[idx] += int(power) if power else 1
            else:
                coeff *= int(factor)
        m = tuple(exps)
        terms[m] = (terms.get(m, 0) + coeff) % p
    return Polynomial(n, p, terms)


@dataclass(frozen=True)
class GroebnerBasis:
    order: TermOrder
    elements: tuple[Polynomial, ...]

    @property
    def n(self) -> int:
        return self.order.n

    @property
    def p(self) -> int:
        return self.elements[0].p if self.elements else 0

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.elements)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.elements)


def _reduce_terms(f: dict[Monomial, int], basis: Sequence[tuple[Monomial, dict[Monomial, int]]],
                  key, p: int) -> dict[Monomial, int]:
    """Full reduction of f by monic polynomials ``(lm, terms)``; returns the remainder."""
    f = dict(f)
    rem: dict[Monomial, int] = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for lm, g in basis:
            if all(x <= y for x, y in zip(lm, m)):
                u = tuple(y - x for x, y in zip(lm, m))
                for t, a in g.items():
                    if t == lm:
                        continue
                    mt = tuple(x + y for x, y in zip(u, t))
                    v = (f.get(mt, 0) - c * a) % p
                    if v:
                        f[mt] = v
                    else:
                        f.pop(mt, None)
                break
        else:
            rem[m] = c
    return rem


def normal_form(f: Polynomial, G: GroebnerBasis | Sequence[Polynomial], order: TermOrder | None = None) -> Polynomial:
    """Remainder of f under division by G; no term is divisible by a leading monomial."""
    if isinstance(G, GroebnerBasis):
        order, elems = G.order, G.elements
    else:
        elems = tuple(G)
        if order is None:
            raise ValueError("order required when G is a plain list")
    basis = []
    for g in elems:
        g = g.monic(order)
        basis.append((g.leading_monomial(order), g.terms))
    out = Polynomial(f.n, f.p)
    out.terms = _reduce_terms(f.terms, basis, order.key, f.p)
    return out


def _interreduce(polys: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    key = order.key
    items = [(g.leading_monomial(order), g.monic(order)) for g in polys if g]
    items.sort(key=lambda t: key(t[0]))
    minimal = []
    for lm, g in items:
        if not any(divides(l2, lm) for l2, _ in minimal):
            minimal.append((lm, g))
    out = []
    for i, (lm, g) in enumerate(minimal):
        others = [(l2, h.terms) for j, (l2, h) in enumerate(minimal) if j != i]
        tail = dict(g.terms)
        del tail[lm]
        red = _reduce_terms(tail, others, key, g.p)
        red[lm] = 1
        h = Polynomial(g.n, g.p)
        h.terms = red
        out.append(h)
    out.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return out


def buchberger(gens: Sequence[Polynomial], order: TermOrder) -> GroebnerBasis:
    """Reduced Groebner basis.

    Pairs are processed by (lcm degree, larger index, smaller index); pairs
    with coprime leading monomials are skipped (product criterion), as is a
    pair (i, j) when some k has LM_k | lcm(i, j) and both (i, k) and (j, k)
    have already left the queue (chain criterion).
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    p = gens[0].p
    key = order.key
    G: list[tuple[Monomial, dict[Monomial, int]]] = []
    queue: list[tuple[int, int, int]] = []
    pending: set[tuple[int, int]] = set()

    def add(h: Polynomial):
        h = h.monic(order)
        lm = h.leading_monomial(order)
        j = len(G)
        G.append((lm, h.terms))
        for i in range(j):
            heapq.heappush(queue, (sum(mono_lcm(G[i][0], lm)), j, i))
            pending.add((i, j))

    for g in gens:
        add(g)
    while queue:
        _, j, i = heapq.heappop(queue)
        pending.discard((i, j))
        li, lj = G[i][0], G[j][0]
        if coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        if any(
            k != i and k != j and divides(G[k][0], lcm)
            and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
            for k in range(len(G))
        ):
            continue
        ui, uj = mono_div(lcm, li), mono_div(lcm, lj)
        s: dict[Monomial, int] = {}
        for t, a in G[i][1].items():
            m = mono_mul(t, ui)
            s[m] = (s.get(m, 0) + a) % p
        for t, a in G[j][1].items():
            m = mono_mul(t, uj)
            s[m] = (s.get(m, 0) - a) % p
        s = {m: c for m, c in s.items() if c}
        r = _reduce_terms(s, G, key, p)
        if r:
            add(Polynomial(gens[0].n, p, r))
    polys = []
    for lm, t in G:
        h = Polynomial(gens[0].n, p)
        h.terms = dict(t)
        polys.append(h)
    return GroebnerBasis(order, tuple(_interreduce(polys, order)))


def initial_ideal(G: GroebnerBasis) -> list[Monomial]:
    """Minimal monomial generators of in(I): the leading monomials of the reduced basis."""
    return G.leading_monomials()


def minimal_monomials(gens: Iterable[Monomial]) -> list[Monomial]:
    uniq = sorted(set(gens), key=lambda m: (sum(m), m))
    out: list[Monomial] = []
    for m in uniq:
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


def standard_monomials(init: Sequence[Monomial], m: int, n: int | None = None,
                       order: TermOrder | None = None) -> list[Monomial]:
    """Degree-m monomials divisible by no generator, in decreasing order."""
    if n is None:
        if not init:
            raise ValueError("n is required for the zero ideal")
        n = len(init[0])
    if m < 0:
        return []
    order = order or TermOrder.grevlex(n)
    by_last: list[list[Monomial]] = [[] for _ in range(n)]
    for g in init:
        s = monomial_support(g)
        if not s:
            return []
        by_last[s[-1]].append(g)
    out: list[Monomial] = []
    exps = [0] * n

    def rec(t: int, left: int):
        lo = left if t == n - 1 else 0
        for e in range(left, lo - 1, -1):
            exps[t] = e
            if any(all(g[i] <= exps[i] for i in range(t + 1)) for g in by_last[t]):
                continue
            if t == n - 1:
                out.append(tuple(exps))
            else:
                rec(t + 1, left - e)
        exps[t] = 0

    if n == 0:
        return [()] if m == 0 else []
    rec(0, m)
    out.sort(key=order.key, reverse=True)
    return out


@lru_cache(maxsize=4096)
def _numerator(gens: tuple[Monomial, ...]) -> tuple[int, ...]:
    if not gens:
        return (1,)
    supports = [set(monomial_support(g)) for g in gens]
    if all(supports[a].isdisjoint(supports[b]) for a in range(len(gens)) for b in range(a)):
        poly = [1]
        for g in gens:
            d = sum(g)
            nxt = [0] * (len(poly) + d)
            for i, c in enumerate(poly):
                nxt[i] += c
                nxt[i + d] -= c
            poly = nxt
        return tuple(poly)
    last, rest = gens[-1], gens[:-1]
    colon = tuple(minimal_monomials(mono_div(g, mono_gcd(g, last)) for g in rest))
    a = list(_numerator(rest))
    b = _numerator(colon)
    d = sum(last)
    size = max(len(a), len(b) + d)
    a += [0] * (size - len(a))
    for i, c in enumerate(b):
        a[i + d] -= c
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def hilbert_numerator(init: Iterable[Monomial]) -> list[int]:
    """K(s) with HS(S/M, s) = K(s) / (1 - s)^n for a monomial ideal M."""
    gens = tuple(minimal_monomials(init))
    return list(_numerator(gens))


def hilbert_function(init: Sequence[Monomial], m: int, n: int | None = None) -> int:
    """dim_K (S/M)_m, computed from the Hilbert numerator."""
    if n is None:
        n = len(init[0])
    if m < 0:
        return 0
    if n == 0:
        return int(m == 0 and not init)
    K = hilbert_numerator(init)
    return sum(c * comb(m - j + n - 1, n - 1) for j, c in enumerate(K) if j <= m)
