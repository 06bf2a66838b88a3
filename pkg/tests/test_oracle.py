from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from containlab.coefficients import QQ, Cyclotomic, PrimeField
from containlab.configurations import general_points, plane_subset
from containlab.ideals import symbolic_power
from containlab.invariants import alpha, hilbert_function
from containlab.oracle import (
    alpha_oracle,
    power_piece,
    single_point_dimension,
    symbolic_dimension,
    symbolic_piece,
)
from containlab.polynomials import PolynomialRing

R = PolynomialRing(QQ, 3)


def _span(basis):
    return {tuple(sorted(p.term_dict)) for p in basis.polynomials()}


def test_power_piece_examples():
    B = power_piece(R, (0, 0, 1), 1, 1)
    assert B.dimension == 2
    assert {p.leading_exponent() for p in B.polynomials()} == {(1, 0, 0), (0, 1, 0)}
    assert power_piece(R, (0, 0, 1), 2, 1).dimension == 0
    B = power_piece(R, (0, 0, 1), 2, 2)
    assert B.dimension == 3
    assert {p.leading_exponent() for p in B.polynomials()} == {(2, 0, 0), (1, 1, 0), (0, 2, 0)}


@pytest.mark.parametrize("ring", [R, PolynomialRing(PrimeField(3), 3), PolynomialRing(Cyclotomic(3), 3)],
                         ids=lambda r: r.descriptor())
def test_power_piece_closed_form(ring):
    @given(st.tuples(*[st.integers(-4, 4)] * 3).filter(any), st.integers(1, 4), st.integers(0, 7))
    def check(pt, m, d):
        if all(ring.field(c).is_zero() for c in pt):
            return
        B = power_piece(ring, [ring.field(c) for c in pt], m, d)
        assert B.dimension == single_point_dimension(2, m, d)
        assert B.ambient_dimension == comb(d + 2, 2)
        assert B.is_independent()
        assert all(f.evaluate([ring.field(c) for c in pt]).is_zero() for f in B.polynomials())

    check()


def test_power_piece_is_the_product_span():
    # every g1^a g2^b * monomial lies in the piece, and they span it
    from containlab.ideals import ideal_power, point_ideal
    from containlab.linalg import RowEchelon

    pt = (QQ(1), QQ(2), QQ(-3))
    m, d = 2, 4
    B = power_piece(R, pt, m, d)
    index = {e: i for i, e in enumerate(B.monomials)}
    spanning = []
    for g in ideal_power(point_ideal(R, pt), m).generators:
        for e in R.monomials_of_degree(d - m):
            spanning.append({index[k]: c for k, c in g.mul_monomial(e).term_dict.items()})
    ech = RowEchelon(QQ).extend(B.vectors)
    assert RowEchelon(QQ).extend(spanning).rank == B.dimension
    assert all(not ech.reduce(v) for v in spanning)


def test_symbolic_piece_examples(config):
    Z = config("dual-hesse")
    assert symbolic_dimension(Z, 3, 8) == 0
    S9 = symbolic_piece(Z, 3, 9)
    assert S9.dimension >= 1
    f = Z.arrangement.product()
    from containlab.linalg import RowEchelon

    index = {e: i for i, e in enumerate(S9.monomials)}
    vec = {index[e]: c for e, c in f.term_dict.items()}
    assert not RowEchelon(Z.field).extend(S9.vectors).reduce(vec)
    assert symbolic_dimension(config("punctured:3"), 3, 9) >= 1


def test_alpha_oracle_examples(config):
    Z1 = general_points(1, 2, 2)
    assert alpha_oracle(Z1, 2) == 2
    assert alpha_oracle(config("dual-hesse"), 3) == 9


def test_alpha_oracle_punctured_square_symbolic(config):
    assert alpha_oracle(config("punctured:3"), 2) == 10


@pytest.mark.parametrize("name", ["dual-hesse", "star:5:2", "coordpts:2", "punctured:3"])
def test_symbolic_piece_monotone_and_independent(config, name):
    Z = config(name)
    dims = [symbolic_dimension(Z, 2, d) for d in range(12)]
    assert all(a <= b for a, b in zip(dims, dims[1:]))
    assert symbolic_piece(Z, 2, 9).is_independent()


@pytest.mark.parametrize("name", ["star:3:2", "star:4:3", "general:6:2:1", "coordpts:2", "fermat:3:Fp(7)"])
def test_oracle_agrees_with_groebner(config, name):
    Z = config(name)
    N = Z.N
    for m in (1, 2, 3):
        S = symbolic_power(Z, m)
        a = alpha(S)
        assert alpha_oracle(Z, m) == a
        for d in range(a + 3):
            assert symbolic_dimension(Z, m, d) == comb(N + d, N) - hilbert_function(S, d)


@given(st.sets(st.integers(0, 6), min_size=1, max_size=7), st.integers(1, 3))
def test_oracle_agrees_in_characteristic_two(indices, m):
    Z = plane_subset(2, sorted(indices))
    S = symbolic_power(Z, m)
    a = alpha(S)
    assert alpha_oracle(Z, m) == a
    for d in range(a + 3):
        assert symbolic_dimension(Z, m, d) == comb(2 + d, 2) - hilbert_function(S, d)


def test_fat_point_multiplicity_respected():
    from containlab.configurations import FatPointConfiguration

    Z = FatPointConfiguration(R, ((QQ(0), QQ(0), QQ(1)), (QQ(1), QQ(0), QQ(0))), (2, 1), "fat")
    for d in range(6):
        assert symbolic_dimension(Z, 1, d) == comb(d + 2, 2) - hilbert_function(symbolic_power(Z, 1), d)
