from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from containlab.coefficients import QQ
from containlab.configurations import FatPointConfiguration, coordinate_points, general_points, punctured_plane
from containlab.ideals import Ideal, ideal_power, symbolic_power
from containlab.invariants import (
    alpha,
    hilbert_function,
    invariant_report,
    regularity_0dim,
    regularity_of_power,
    scheme_degree,
    symassreg_estimate,
    waldschmidt_estimate,
)
from containlab.oracle import symbolic_dimension
from containlab.polynomials import PolynomialRing

R = PolynomialRing(QQ, ["x", "y", "w"])
x, y, w = R.gens()


def _points(*pts, mults=None):
    pts = tuple(tuple(QQ(c) for c in p) for p in pts)
    return FatPointConfiguration(R, pts, mults or (1,) * len(pts), "test")


def test_alpha_of_square_of_maximal_ideal():
    assert alpha(ideal_power(Ideal(R, [x, y]), 2)) == 2


def test_alpha_of_punctured_square_matches_the_stated_value():
    Z = punctured_plane(3)
    assert alpha(ideal_power(symbolic_power(Z, 1), 2)) == 10


def test_alpha_of_punctured_square_is_at_most_twice_alpha():
    # x0^3 x1 - x0 x1^3 vanishes on every F_3-point, so alpha(I) = 4 bounds alpha(I^2) by 8
    Z = punctured_plane(3)
    I = symbolic_power(Z, 1)
    f = Z.ring.parse("x0^3*x1 - x0*x1^3")
    assert I.contains(f) and alpha(I) == 4
    assert alpha(ideal_power(I, 2)) <= 2 * alpha(I)


def test_alpha_fermat_three(config):
    I = symbolic_power(config("fermat:3"), 1)
    assert alpha(I) == 4


def test_alpha_of_zero_ideal_raises():
    with pytest.raises(ValueError):
        alpha(Ideal(R, []))


def test_hilbert_function_examples(config):
    assert hilbert_function(Ideal(R, [x, y]), 5) == 1
    I = symbolic_power(config("dual-hesse"), 1)
    assert [hilbert_function(I, d) for d in range(7)] == [1, 3, 6, 10, 12, 12, 12]
    assert hilbert_function(I, 20) == 12


def test_scheme_degree_examples(config):
    assert scheme_degree(config("dual-hesse")) == 12
    assert scheme_degree(_points((0, 0, 1), mults=(2,))) == 3
    assert scheme_degree(config("fermat:4")) == 19


def test_regularity_examples(config):
    Z1 = _points((0, 0, 1))
    assert regularity_0dim(symbolic_power(Z1, 1), Z1) == 1
    Z2 = _points((0, 0, 1), (0, 1, 0))
    assert regularity_0dim(symbolic_power(Z2, 1), Z2) == 2
    Z = config("dual-hesse")
    assert regularity_0dim(symbolic_power(Z, 1), Z) == 5


def test_regularity_refuses_unsaturated_input(config):
    Z = config("dual-hesse")
    with pytest.raises(ValueError):
        regularity_0dim(ideal_power(symbolic_power(Z, 1), 2), Z.scaled(2))
    with pytest.raises(ValueError):
        regularity_0dim(symbolic_power(Z, 1), config("fermat:4"))


def test_waldschmidt_examples(config):
    assert waldschmidt_estimate(_points((0, 0, 1)), 3) == 1
    assert waldschmidt_estimate(config("dual-hesse"), 3) == 3
    Z3 = _points((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert waldschmidt_estimate(Z3, 2) == Fraction(3, 2)


def test_symassreg_examples(config):
    assert symassreg_estimate(_points((0, 0, 1)), 3) == [1, 1, 1]
    assert symassreg_estimate(config("dual-hesse"), 1) == [5]
    assert symassreg_estimate(_points((0, 0, 1), (0, 1, 0)), 2) == [2, 2]


LIGHT = ["dual-hesse", "fermat:3:Fp(7)", "star:4:2", "star:4:3", "punctured:3", "general:6:2:1", "coordpts:2"]


@pytest.mark.parametrize("name", LIGHT)
def test_alpha_subadditive(config, name):
    Z = config(name)
    a = {m: alpha(symbolic_power(Z, m)) for m in range(1, 5)}
    for m1 in range(1, 4):
        for m2 in range(1, 5 - m1):
            assert a[m1 + m2] <= a[m1] + a[m2]


@pytest.mark.parametrize("name", LIGHT)
@pytest.mark.parametrize("m", [1, 2])
def test_hilbert_function_stabilizes_at_scheme_degree(config, name, m):
    Z = config(name)
    S = symbolic_power(Z, m)
    deg = scheme_degree(Z.scaled(m))
    reg = regularity_0dim(S, Z.scaled(m))
    hf = [hilbert_function(S, d) for d in range(reg + 4)]
    assert all(a <= b for a, b in zip(hf[:reg], hf[1:reg]))
    assert all(v == deg for v in hf[reg - 1:])
    assert max(hf) == deg


@pytest.mark.parametrize("name", LIGHT)
def test_hilbert_function_matches_oracle(config, name):
    Z = config(name)
    for m in (1, 2):
        S = symbolic_power(Z, m)
        N = Z.N
        for d in range(alpha(S) + 3):
            assert hilbert_function(S, d) == comb(N + d, N) - symbolic_dimension(Z, m, d)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_power_regularity_of_a_point(r):
    Z = general_points(1, 2, 5)
    assert regularity_of_power(Z, r) == r


def test_power_regularity_at_least_symbolic(config):
    for name in ("star:4:2", "coordpts:2", "dual-hesse"):
        Z = config(name)
        for r in (2, 3):
            sym = regularity_0dim(symbolic_power(Z, r), Z.scaled(r))
            assert regularity_of_power(Z, r) >= sym


def test_power_regularity_of_monomial_points():
    # I = (xy, xw, yw): I^2 misses xyw in degree 3 only, and I^(2) has regularity 4
    Z = coordinate_points(2)
    assert regularity_of_power(Z, 2) == 4


def test_report(config):
    rep = invariant_report(config("dual-hesse"), what=("alpha", "hf", "reg", "waldschmidt"))
    assert rep.alpha == 4 and rep.regularity == 5 and rep.scheme_degree == 12
    assert rep.hilbert[3] == 10 and rep.waldschmidt == 3
    assert rep.as_dict()["waldschmidt"] == "3"
