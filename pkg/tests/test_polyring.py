import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from otcodes.exactfield import DenseMatrix, rank
from otcodes.polyring import (
    GroebnerBasis,
    Polynomial,
    TermOrder,
    buchberger,
    divides,
    format_monomial,
    hilbert_function,
    hilbert_numerator,
    initial_ideal,
    minimal_monomials,
    mono_lcm,
    monomials_of_degree,
    normal_form,
    parse_polynomial,
    standard_monomials,
    support_monomial,
)


def P(text, n=7, p=3):
    return parse_polynomial(text, n, p)


def ideal_degree_dim(gens, n, p, m):
    """dim_K I_m by spanning all monomial multiples: independent of Groebner bases."""
    mons = list(monomials_of_degree(n, m))
    idx = {x: i for i, x in enumerate(mons)}
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > m:
            continue
        for u in monomials_of_degree(n, m - dg):
            h = g.shift(u)
            row = [0] * len(mons)
            for mono, c in h.terms.items():
                row[idx[mono]] = c
            rows.append(row)
    return rank(DenseMatrix.from_rows(p, rows, len(mons))) if rows else 0


@st.composite
def homogeneous_systems(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(2, 4))
    gens = []
    for _ in range(draw(st.integers(1, 3))):
        d = draw(st.integers(1, 3))
        mons = list(monomials_of_degree(n, d))
        chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=4, unique=True))
        coeffs = draw(st.lists(st.integers(1, p - 1), min_size=len(chosen), max_size=len(chosen)))
        gens.append(Polynomial(n, p, dict(zip(chosen, coeffs))))
    order = TermOrder(tuple(draw(st.permutations(range(n)))))
    return gens, order


def test_grevlex_order_on_quadrics():
    o = TermOrder.grevlex(3)
    quads = sorted(monomials_of_degree(3, 2), key=o.key, reverse=True)
    assert [format_monomial(m) for m in quads] == ["y1^2", "y1*y2", "y2^2", "y1*y3", "y2*y3", "y3^2"]
    assert o.compare((2, 0, 0), (0, 0, 1)) == 1


def test_priority_permutation_changes_order():
    o = TermOrder((0, 1, 2, 3, 5, 6, 4))  # y1 > y2 > y3 > y4 > y6 > y7 > y5
    f = P("y2*y5 + y2*y6 + y5*y6")
    assert format_monomial(f.leading_monomial(o)) == "y2*y6"
    assert format_monomial(f.leading_monomial(TermOrder.grevlex(7))) == "y2*y5"
    assert o.least_variable([1, 4, 5]) == 4


def test_parse_and_format_roundtrip():
    f = P("y3*y6 - y3*y7 + y6*y7")
    assert f.format() == "y3*y6 - y3*y7 + y6*y7"
    assert P(f.format()) == f
    assert P("2*y1^2 + y1^2") == Polynomial(7, 3, {})
    with pytest.raises(ValueError):
        P("y8")


def test_arithmetic():
    f, g = P("y1 + y2"), P("y1 - y2")
    assert f * g == P("y1^2 - y2^2")
    assert (f - f).is_zero()
    assert f.scale(2) == P("2*y1 + 2*y2")
    assert f.substitute_zero(0) == P("y2")


def test_redundant_cubic_reduces_to_zero():
    gens = [P("y3*y6 - y3*y7 + y6*y7"), P("y2*y5 + y2*y6 + y5*y6"),
            P("y1*y2*y4 + y1*y2*y7 - y1*y4*y7 + y2*y4*y7")]
    G = buchberger(gens, TermOrder.grevlex(7))
    assert normal_form(P("y2*y3*y5 + y2*y3*y7 + y2*y5*y7 + y3*y5*y7"), G).is_zero()
    # the displayed combination itself
    lhs = P("y3 + y7") * gens[1] - P("y2 + y5") * gens[0]
    assert lhs == P("y2*y3*y5 + y2*y3*y7 + y2*y5*y7 + y3*y5*y7")


def test_normal_form_of_standard_monomial_is_itself():
    G = buchberger([P("y1*y2")], TermOrder.grevlex(7))
    f = P("y1*y3")
    assert normal_form(f, G) == f


def test_single_polynomial_made_monic():
    G = buchberger([P("2*y1 + y2")], TermOrder.grevlex(7))
    assert G.elements == (P("y1 + 2*y2"),)
    assert initial_ideal(G) == [(1, 0, 0, 0, 0, 0, 0)]


def test_monomial_generators_interreduce():
    G = buchberger([P("y3*y6"), P("y1*y3*y6")], TermOrder.grevlex(7))
    assert [g.format() for g in G.elements] == ["y3*y6"]


def test_standard_monomials_small_cases():
    assert standard_monomials([], 0, 3) == [(0, 0, 0)]
    assert len(standard_monomials([(1, 1, 0)], 2, 3)) == 5
    maximal = [support_monomial(7, [v]) for v in range(7)]
    assert standard_monomials(maximal, 1) == []
    assert hilbert_function(maximal, 3) == 0


def test_zero_ideal_hilbert_function():
    assert [hilbert_function([], m, 4) for m in range(5)] == [comb(m + 3, 3) for m in range(5)]
    assert hilbert_numerator([]) == [1]


def test_hilbert_function_against_printed_series():
    # (1 + 3s + 4s^2 + 3s^3) / (1 - s)^4, expanded by hand
    I2 = [support_monomial(7, [v - 1 for v in s])
          for s in [(3, 6), (2, 6), (2, 3, 7), (1, 2, 4), (1, 4, 6, 7), (1, 3, 4, 7)]]
    h = [1, 3, 4, 3]
    expected = [sum(c * comb(m - j + 3, 3) for j, c in enumerate(h) if j <= m) for m in range(11)]
    assert [hilbert_function(I2, m) for m in range(11)] == expected
    assert expected[:3] == [1, 7, 26]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), max_size=4),
       st.integers(0, 5))
def test_hilbert_function_by_enumeration(n, raw, m):
    gens = [tuple(r[:n]) for r in raw if any(r[:n])]
    enumerated = len(standard_monomials(gens, m, n)) if gens else comb(m + n - 1, n - 1)
    brute = sum(1 for x in monomials_of_degree(n, m) if not any(divides(g, x) for g in gens))
    assert enumerated == brute == hilbert_function(gens, m, n)


@settings(max_examples=60, deadline=None)
@given(homogeneous_systems())
def test_buchberger_output_is_reduced_groebner_basis(system):
    gens, order = system
    n, p = gens[0].n, gens[0].p
    G = buchberger(gens, order)
    for g in gens:
        assert normal_form(g, G).is_zero()
    leads = [g.leading_monomial(order) for g in G.elements]
    for g in G.elements:
        assert g.leading_coefficient(order) == 1
        lm = g.leading_monomial(order)
        for mono in g.terms:
            assert not any(divides(l, mono) for l in leads if l != lm)
    for f, g in itertools.combinations(G.elements, 2):
        L = mono_lcm(f.leading_monomial(order), g.leading_monomial(order))
        s = f.shift(tuple(a - b for a, b in zip(L, f.leading_monomial(order)))) - \
            g.shift(tuple(a - b for a, b in zip(L, g.leading_monomial(order))))
        assert normal_form(s, G).is_zero()
    # Macaulay: standard monomials count the quotient, checked by plain linear algebra
    for m in range(4):
        assert hilbert_function(leads, m, n) == comb(m + n - 1, n - 1) - ideal_degree_dim(gens, n, p, m)
    assert buchberger(list(G.elements), order).elements == G.elements


@settings(max_examples=40, deadline=None)
@given(homogeneous_systems(), st.permutations(range(4)))
def test_hilbert_function_independent_of_order(system, perm):
    gens, order = system
    n = gens[0].n
    other = TermOrder(tuple(v for v in perm if v < n))
    a = minimal_monomials(initial_ideal(buchberger(gens, order)))
    b = minimal_monomials(initial_ideal(buchberger(gens, other)))
    assert [hilbert_function(a, m, n) for m in range(6)] == [hilbert_function(b, m, n) for m in range(6)]


@settings(max_examples=40, deadline=None)
@given(homogeneous_systems(), st.data())
def test_normal_form_idempotent(system, data):
    gens, order = system
    n, p = gens[0].n, gens[0].p
    G = buchberger(gens, order)
    mons = list(monomials_of_degree(n, 3))
    chosen = data.draw(st.lists(st.sampled_from(mons), min_size=1, max_size=5, unique=True))
    f = Polynomial(n, p, {m: 1 for m in chosen})
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    assert normal_form(f - r, G).is_zero()


def test_groebner_basis_flags():
    G = GroebnerBasis(TermOrder.grevlex(3), (Polynomial.monomial(3, 2, (1, 1, 0)),))
    assert G.is_monomial() and G.is_homogeneous()
    assert G.n == 3 and G.p == 2
