"""
Test normal-ordered quantum operators
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from param_ring import NotDivisible, gaussian, hbar, param_a, param_ring, scalar
from phase_space import Monomial, PhaseFunction
from weyl_algebra import (
    WeylOperator,
    anticommutator,
    commutator,
    divide_by_i_hbar,
    from_phase_function,
    normal_order_word,
    op_mul,
    semiclassical_bracket,
    semiclassical_limit,
    symmetrize3,
    word,
)

x = WeylOperator.x
p = WeylOperator.p
HALF = Fraction(1, 2)


def i_hbar(n, factor=1):
    ring = param_ring(n)
    return WeylOperator.constant(n, scalar(ring, gaussian(0, factor)) * hbar(ring))


def quantum_one_site(n=1, site=1):
    a = param_a(param_ring(n), site)
    j_minus = x(n, site, 2) * HALF
    j_plus = (p(n, site, 2) + x(n, site, -2) * a) * HALF
    j_three = x(n, site) * p(n, site) * HALF - i_hbar(n) * Fraction(1, 4)
    return j_plus, j_minus, j_three


@st.composite
def operators(draw, dim=2, max_terms=3):
    ring = param_ring(dim)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        x_exp = tuple(draw(st.integers(-2, 2)) for _ in range(dim))
        p_exp = tuple(draw(st.integers(0, 2)) for _ in range(dim))
        coeff = (scalar(ring, gaussian(draw(st.integers(-3, 3)), draw(st.integers(-1, 1))))
                 + ring.gens[0] * draw(st.integers(-1, 1)))
        terms[Monomial(x_exp, p_exp)] = coeff
    return WeylOperator(dim, terms)


letters = st.lists(
    st.one_of(
        st.tuples(st.just("x"), st.integers(1, 2), st.integers(-2, 2).filter(bool)),
        st.tuples(st.just("p"), st.integers(1, 2)),
    ),
    max_size=6,
)


def as_operator(dim, letter):
    if letter[0] == "x":
        return x(dim, letter[1], letter[2])
    return p(dim, letter[1])


def test_canonical_reordering():
    """p x = x p - i hb"""
    assert op_mul(p(1, 1), x(1, 1)) == x(1, 1) * p(1, 1) - i_hbar(1)


def test_inverse_square_reordering():
    """p past x^-2 picks up 2 i hb x^-3"""
    assert op_mul(p(1, 1), x(1, 1, -2)) == x(1, 1, -2) * p(1, 1) + i_hbar(1, 2) * x(1, 1, -3)


def test_single_swap_reorderer():
    """The swap reorderer handles p x^2"""
    letters_word = [("p", 1), ("x", 1, 2)]
    assert normal_order_word(1, letters_word) == x(1, 1, 2) * p(1, 1) - i_hbar(1, 2) * x(1, 1)


def test_commutator_of_canonical_pair():
    """[x, p] = i hb"""
    assert commutator(x(1, 1), p(1, 1)) == i_hbar(1)


def test_one_site_commutation_rules():
    """One-site operators close on sl(2,R) with factors of i hb"""
    j_plus, j_minus, j_three = quantum_one_site()
    assert commutator(j_minus, j_plus) == i_hbar(1, 2) * j_three
    assert commutator(j_three, j_plus) == i_hbar(1) * j_plus
    assert commutator(j_three, j_minus) == -(i_hbar(1) * j_minus)


def test_anticommutators():
    """Anticommutators of self and of the canonical pair"""
    a = x(2, 1) * p(2, 2) + p(2, 1)
    assert anticommutator(a, a) == a * a * 2
    assert anticommutator(x(1, 1), p(1, 1)) == x(1, 1) * p(1, 1) * 2 - i_hbar(1)


def test_anticommutator_limit_is_twice_the_product():
    """{x, p} tends to 2 x p"""
    limit = semiclassical_limit(anticommutator(x(1, 1), p(1, 1)))
    assert limit == PhaseFunction.x(1, 1) * PhaseFunction.p(1, 1) * 2


def test_symmetrize3_of_identity():
    """Six orderings of the identity"""
    one = WeylOperator.constant(1, 1)
    assert symmetrize3(one, one, one) == WeylOperator.constant(1, 6)


def test_symmetrize3_of_commuting_operators():
    """Commuting factors symmetrise to six copies of one product"""
    a, b, c = x(3, 1), x(3, 2), p(3, 3)
    assert symmetrize3(a, b, c) == a * b * c * 6


def test_semiclassical_limit_of_generators():
    """J+ tends to its classical form"""
    j_plus, _, _ = quantum_one_site()
    a = param_a(param_ring(1), 1)
    classical = (PhaseFunction.p(1, 1, 2) + PhaseFunction.x(1, 1, -2) * a) * HALF
    assert semiclassical_limit(j_plus) == classical


def test_semiclassical_limit_of_one_site_casimir():
    """The hb^2 part of the one-site Casimir drops out"""
    ring = param_ring(1)
    value = hbar(ring) ** 2 * scalar(ring, Fraction(3, 16)) + param_a(ring, 1) * scalar(ring, Fraction(-1, 4))
    limit = semiclassical_limit(WeylOperator.constant(1, value))
    assert limit == PhaseFunction.constant(1, param_a(ring, 1) * scalar(ring, Fraction(-1, 4)))


def test_scaled_commutator_limit():
    """[x, p]/(i hb) tends to one"""
    assert semiclassical_limit(divide_by_i_hbar(commutator(x(1, 1), p(1, 1)))) == PhaseFunction.constant(1, 1)


def test_semiclassical_brackets():
    """The semiclassical bracket reproduces Poisson brackets"""
    j_plus, _, j_three = quantum_one_site()
    assert semiclassical_bracket(x(1, 1), p(1, 1)) == PhaseFunction.constant(1, 1)
    assert semiclassical_bracket(j_three, j_plus) == semiclassical_limit(j_plus)
    assert semiclassical_bracket(j_plus, j_plus).is_zero()


def test_division_guard():
    """Operators without hb cannot be divided by i hb"""
    with pytest.raises(NotDivisible):
        divide_by_i_hbar(x(1, 1))


def test_quantisation_keeps_words():
    """Normal-ordered quantisation keeps each monomial"""
    f = PhaseFunction.x(2, 1) * PhaseFunction.p(2, 1)
    assert from_phase_function(f) == x(2, 1) * p(2, 1)


def test_render_is_normal_ordered():
    """Rendering writes coefficient then x then p"""
    assert (i_hbar(1, 2) * x(1, 1, -3)).render() == ["(2)*i*hb * x1^-3"]


@settings(max_examples=100, deadline=None)
@given(operators(), operators())
def test_antisymmetry(a, b):
    """[a, b] = -[b, a]"""
    assert (commutator(a, b) + commutator(b, a)).is_zero()


@settings(max_examples=100, deadline=None)
@given(operators(max_terms=2), operators(max_terms=2), operators(max_terms=2))
def test_associativity(a, b, c):
    """The normal-ordered product is associative"""
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100, deadline=None)
@given(operators(max_terms=2), operators(max_terms=2), operators(max_terms=2))
def test_jacobi(a, b, c):
    """The Jacobi identity holds for commutators"""
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.is_zero()


@settings(max_examples=100, deadline=None)
@given(operators(max_terms=2), operators(max_terms=2), operators(max_terms=2))
def test_leibniz(a, b, c):
    """The commutator is a derivation of the product"""
    assert commutator(a, b * c) == commutator(a, b) * c + b * commutator(a, c)


@settings(max_examples=100, deadline=None)
@given(letters)
def test_normal_ordering_is_confluent(letter_list):
    """Single swaps and the closed-form product agree on random words"""
    dim = 2
    product = word(dim, [as_operator(dim, letter) for letter in letter_list])
    assert normal_order_word(dim, letter_list) == product
