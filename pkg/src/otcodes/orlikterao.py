"""Orlik-Terao ideals of the arrangement dual to a code's parity-check columns."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codes import LinearCode, parity_check
from .errors import DegenerateDual, MalformedDependency, NoCircuits
from .exactfield import DenseMatrix, PrimeField
from .matroid import Circuit, broken_circuits, circuits, loops
from .polyring import GroebnerBasis, Monomial, Polynomial, TermOrder, buchberger, minimal_monomials


def del_operator(support: Sequence[int], coeffs: Sequence[int], n: int, p: int) -> Polynomial:
    """Map sum_j a_j y_{i_j} to sum_j a_j * prod_{l != j} y_{i_l}."""
    if len(support) != len(coeffs):
        raise MalformedDependency("support and coefficient lengths differ")
    if len(support) < 2:
        raise MalformedDependency("a dependency needs at least two terms")
    if len(set(support)) != len(support):
        raise MalformedDependency("repeated variable in dependency")
    terms = {}
    for j, a in enumerate(coeffs):
        if a % p == 0:
            raise MalformedDependency(f"zero coefficient on y{support[j] + 1}")
        m = [0] * n
        for l, i in enumerate(support):
            if l != j:
                m[i] = 1
        terms[tuple(m)] = a
    return Polynomial(n, p, terms)


def circuit_polynomial(c: Circuit, n: int, p: int) -> Polynomial:
    return del_operator(c.support, c.dependency, n, p)


@dataclass(frozen=True)
class OTPresentation:
    n: int
    field: PrimeField
    H: DenseMatrix
    generators: tuple[tuple[Circuit, Polynomial], ...]

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def circuits(self) -> list[Circuit]:
        return [c for c, _ in self.generators]

    @property
    def polynomials(self) -> list[Polynomial]:
        return [f for _, f in self.generators]


def ot_presentation(H: DenseMatrix) -> OTPresentation:
    """One generator per circuit of the column matroid of H (a generator matrix of the dual)."""
    zero = loops(H)
    if zero:
        raise DegenerateDual(f"columns {[z + 1 for z in zero]} of the parity-check matrix are zero (d = 1)")
    n, p = H.ncols, H.p
    gens = tuple((c, circuit_polynomial(c, n, p)) for c in circuits(H))
    return OTPresentation(n, H.field, H, gens)


def ot_ideal(code: LinearCode) -> OTPresentation:
    if code.k == code.n:
        raise DegenerateDual("k = n: the dual code is zero, so d = 1")
    return ot_presentation(parity_check(code))


def alpha(pres: OTPresentation) -> int:
    """Initial degree of the OT ideal: smallest circuit size minus one."""
    if not pres.generators:
        raise NoCircuits("no circuits: the OT ideal is zero")
    return min(f.degree() for f in pres.polynomials)


@dataclass(frozen=True)
class ProudfootSpeyerResult:
    holds: bool
    initial: tuple[Monomial, ...]
    circuit_leads: tuple[Monomial, ...]
    broken_circuit_monomials: tuple[Monomial, ...]
    basis: GroebnerBasis

    @property
    def matches_broken_circuits(self) -> bool:
        return set(self.initial) == set(self.broken_circuit_monomials)


def check_proudfoot_speyer(pres: OTPresentation, order: TermOrder) -> ProudfootSpeyerResult:
    """Run Buchberger on the circuit generators and compare leading-monomial ideals.

    ``holds`` is true when the reduced basis has no leading monomial beyond
    those of the circuit generators and the initial ideal is the
    Stanley-Reisner ideal of the broken-circuit complex for ``order``.
    """
    if not pres.generators:
        raise NoCircuits("no circuits: the OT ideal is zero")
    n = pres.n
    G = buchberger(pres.polynomials, order)
    initial = tuple(sorted(G.leading_monomials(), key=order.key, reverse=True))
    leads = tuple(sorted(minimal_monomials(f.leading_monomial(order) for f in pres.polynomials),
                         key=order.key, reverse=True))
    bc = broken_circuits(pres.circuits, order.priority)
    bc_monos = tuple(sorted((tuple(int(i in s) for i in range(n)) for s in bc.minimal_nonfaces),
                            key=order.key, reverse=True))
    holds = set(initial) == set(leads) and set(initial) == set(bc_monos)
    return ProudfootSpeyerResult(holds, initial, leads, bc_monos, G)
