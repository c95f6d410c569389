"""
Quantum operators
Normal-ordered words in x-hat (left) and p-hat (right), with p_j = -i hb d/dx_j kept abstract
through the reordering rule p_i x_i^k = x_i^k p_i - i hb k x_i^(k-1)
"""

import itertools
import logging
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from param_ring import (
    ParamScalar,
    classical_limit,
    gaussian,
    hbar,
    param_ring,
    scalar,
    scalar_divide_by_hbar,
)
from phase_space import Monomial, Observable, PhaseFunction

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _site_expansion(beta: int, gamma: int) -> Tuple[Tuple[int, int], ...]:
    """
    p^beta x^gamma on one site, as (j, binom(beta, j) * gamma(gamma-1)...(gamma-j+1)) pairs;
    the j-th term carries (-i hb)^j x^(gamma-j) p^(beta-j).
    """
    options = []
    falling = 1
    for j in range(beta + 1):
        if j:
            falling *= gamma - j + 1
        if not falling:
            break
        options.append((j, comb(beta, j) * falling))
    return tuple(options)


@lru_cache(maxsize=None)
def _minus_i_hbar_power(dim: int, order: int) -> ParamScalar:
    ring = param_ring(dim)
    return (scalar(ring, gaussian(0, -1)) * hbar(ring)) ** order


class WeylOperator(Observable):
    """A quantum operator stored as a sum of normal-ordered words x^alpha p^beta"""

    __slots__ = ()

    def _product(self, other: "WeylOperator") -> "WeylOperator":
        dim = self.dim
        acc: Dict[Monomial, ParamScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                base = c1 * c2
                x_sum = tuple(a + b for a, b in zip(m1.x_exp, m2.x_exp))
                p_sum = tuple(a + b for a, b in zip(m1.p_exp, m2.p_exp))
                # sites where a momentum of the left word meets a position of the right word
                active = [s for s in range(dim) if m1.p_exp[s] and m2.x_exp[s]]
                if not active:
                    self.accumulate(acc, Monomial(x_sum, p_sum), base)
                    continue
                expansions = [_site_expansion(m1.p_exp[s], m2.x_exp[s]) for s in active]
                for choice in itertools.product(*expansions):
                    x_exp, p_exp = list(x_sum), list(p_sum)
                    order, weight = 0, 1
                    for site, (j, w) in zip(active, choice):
                        x_exp[site] -= j
                        p_exp[site] -= j
                        order += j
                        weight *= w
                    coeff = base if not order else base * _minus_i_hbar_power(dim, order) * weight
                    self.accumulate(acc, Monomial(tuple(x_exp), tuple(p_exp)), coeff)
        return WeylOperator(dim, acc)


def normal_order_word(dim: int, letters: Sequence[Tuple]) -> WeylOperator:
    """
    Normal-order a word by repeated single swaps only.
    Letters are ("x", site, power) or ("p", site). Slow; used to cross-check the product.
    """
    ring = param_ring(dim)
    minus_i_hbar = scalar(ring, gaussian(0, -1)) * hbar(ring)
    pending: List[Tuple[ParamScalar, Tuple]] = [(scalar(ring, 1), tuple(letters))]
    result = WeylOperator.zero(dim)
    while pending:
        coeff, word = pending.pop()
        swap_at = next(
            (t for t in range(len(word) - 1) if word[t][0] == "p" and word[t + 1][0] == "x"),
            None,
        )
        if swap_at is None:
            x_exp, p_exp = [0] * dim, [0] * dim
            for letter in word:
                if letter[0] == "x":
                    x_exp[letter[1] - 1] += letter[2]
                else:
                    p_exp[letter[1] - 1] += 1
            result = result + WeylOperator.monomial(dim, x_exp, p_exp, coeff)
            continue
        p_letter, x_letter = word[swap_at], word[swap_at + 1]
        head, tail = word[:swap_at], word[swap_at + 2:]
        pending.append((coeff, head + (x_letter, p_letter) + tail))
        site, power = x_letter[1], x_letter[2]
        if p_letter[1] == site and power:
            lowered = ((("x", site, power - 1),) if power != 1 else ())
            pending.append((coeff * minus_i_hbar * power, head + lowered + tail))
    return result


def op_mul(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    a._check(b)
    return a * b


def commutator(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    a._check(b)
    return a * b - b * a


def anticommutator(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    a._check(b)
    return a * b + b * a


def symmetrize3(a: WeylOperator, b: WeylOperator, c: WeylOperator) -> WeylOperator:
    """Sum of the six orderings abc + acb + bac + bca + cab + cba"""
    a._check(b)
    a._check(c)
    bc, cb = b * c, c * b
    return a * (bc + cb) + b * (a * c) + b * (c * a) + c * (a * b) + c * (b * a)


def divide_by_i_hbar(a: WeylOperator, k: int = 1) -> WeylOperator:
    """a / (i hb)^k; raises NotDivisible when some term has too few powers of hb"""
    ring = a.ring
    minus_i_power = scalar(ring, gaussian(0, -1) ** k)
    return WeylOperator(a.dim, {m: scalar_divide_by_hbar(c, k) * minus_i_power for m, c in a.terms.items()})


def semiclassical_limit(a: WeylOperator) -> PhaseFunction:
    """hb -> 0 on the coefficients, then x^alpha p^beta -> x^alpha p^beta"""
    return PhaseFunction(a.dim, {m: classical_limit(c) for m, c in a.terms.items()})


def semiclassical_bracket(a: WeylOperator, b: WeylOperator) -> PhaseFunction:
    """The hb -> 0 limit of [a, b] / (i hb)"""
    return semiclassical_limit(divide_by_i_hbar(commutator(a, b)))


def from_phase_function(f: PhaseFunction) -> WeylOperator:
    """Normal-ordered quantisation: the same words, read as operators"""
    return WeylOperator(f.dim, dict(f.terms))


def word(dim: int, factors: Iterable[WeylOperator]) -> WeylOperator:
    result = WeylOperator.constant(dim, 1)
    for factor in factors:
        result = result * factor
    return result
