from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from containlab.coefficients import QQ, Cyclotomic, PrimeField
from containlab.configurations import fermat_polynomial
from containlab.groebner import Budget, BudgetExceeded, buchberger, is_member, normal_form
from containlab.ideals import ideal_power, symbolic_power
from containlab.polynomials import LEX, PolynomialRing

from conftest import elements

R2 = PolynomialRing(QQ, ["x", "y"])


def _divides(a, b):
    return all(i <= j for i, j in zip(a, b))


def assert_reduced(basis):
    leads = basis.leading_exponents()
    for g, lead in zip(basis.elements, leads):
        assert g.leading_coefficient(basis.order) == basis.ring.field(1)
        for other in leads:
            if other is lead:
                continue
            assert not any(_divides(other, m.exponents) for m, _ in g.terms())


def test_hand_example():
    x, y = R2.gens()
    B = buchberger([x**2, x * y + y**2])
    assert set(B.elements) == {x**2, x * y + y**2, y**3}
    assert_reduced(B)


def test_already_reduced():
    x, y = R2.gens()
    assert set(buchberger([x, y]).elements) == {x, y}


def test_dual_hesse_min_degree(config):
    Z = config("dual-hesse")
    assert symbolic_power(Z, 1).gb().min_degree() == 4


def test_normal_form_examples():
    x, y = R2.gens()
    B = buchberger([x])
    assert normal_form(x**2, B).is_zero()
    assert normal_form(y, B) == y


def test_dual_hesse_product_not_in_square(config):
    Z = config("dual-hesse")
    f = Z.arrangement.product()
    I2 = ideal_power(symbolic_power(Z, 1), 2)
    assert not normal_form(f, I2.gb()).is_zero()


def test_fermat_three_membership(config):
    Z = config("fermat:3")
    F = fermat_polynomial(Z.ring, 3)
    assert is_member(F, symbolic_power(Z, 3).gb())
    I2 = ideal_power(symbolic_power(Z, 1), 2)
    assert not is_member(F, I2.gb())
    assert all(is_member(g, I2.gb()) for g in I2.generators)


def test_budget_is_reported_not_guessed(config):
    Z = config("dual-hesse")
    gens = ideal_power(symbolic_power(Z, 1), 3).generators
    with pytest.raises(BudgetExceeded):
        buchberger(gens, budget=Budget(None, 2))


def test_truncated_basis_agrees_below_its_bound(config):
    Z = config("fermat:3")
    I2 = ideal_power(symbolic_power(Z, 1), 2)
    full = buchberger(I2.generators)
    trunc = buchberger(I2.generators, degree_bound=9)
    F = fermat_polynomial(Z.ring, 3)
    assert is_member(F, full) == is_member(F, trunc) is False
    with pytest.raises(ValueError):
        trunc.is_member(F * Z.ring.gens()[0])


def test_lex_basis():
    R = PolynomialRing(QQ, ["x", "y", "w"], LEX)
    x, y, w = R.gens()
    B = buchberger([x - y**2, y - w**3], LEX)
    assert_reduced(B)
    assert is_member(x - w**6, B)


RINGS = [PolynomialRing(QQ, 3), PolynomialRing(PrimeField(7), 3), PolynomialRing(Cyclotomic(3), 3)]


def homogeneous_forms(ring, degree):
    mons = ring.monomials_of_degree(degree)
    return st.lists(elements(ring.field), min_size=len(mons), max_size=len(mons)).map(
        lambda cs: sum((ring.monomial(e, c) for e, c in zip(mons, cs)), ring.zero())
    )


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.descriptor())
def test_basis_properties(ring):
    @given(st.lists(homogeneous_forms(ring, 2), min_size=2, max_size=3).filter(
        lambda fs: any(not f.is_zero() for f in fs)), st.integers(0, 10**6))
    def check(gens, seed):
        B = buchberger(gens)
        assert_reduced(B)
        rng = random.Random(seed)
        # any combination of the generators reduces to zero
        combo = ring.zero()
        for g in gens:
            c = ring.monomial(rng.choice(ring.monomials_of_degree(1)), rng.randint(-3, 3))
            combo = combo + c * g
        assert normal_form(combo, B).is_zero()
        # the reduced basis does not depend on generator order or scaling
        shuffled = [g * rng.choice([1, 2, -3]) for g in gens]
        rng.shuffle(shuffled)
        assert buchberger(shuffled) == B

    check()


def test_shuffled_generators_give_identical_basis(config):
    Z = config("fermat:3:Fp(7)")
    gens = list(ideal_power(symbolic_power(Z, 1), 2).generators)
    B = buchberger(gens)
    random.Random(5).shuffle(gens)
    assert buchberger(gens).elements == B.elements
