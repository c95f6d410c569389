"""
Classical phase space
Commutative observables on the 2n-dimensional phase space (Laurent in x, polynomial in p)
and the canonical Poisson bracket
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from param_ring import (
    AlgebraError,
    Number,
    ParamScalar,
    param_ring,
    render_scalar,
    scalar,
    scalar_substitute,
)
from sympy.polys.rings import PolyElement

logger = logging.getLogger(__name__)


class DimensionMismatch(AlgebraError):
    """Two observables from chains of different length were combined"""


class Monomial(NamedTuple):
    """x^x_exp p^p_exp; x exponents are signed (Laurent), p exponents are not"""
    x_exp: Tuple[int, ...]
    p_exp: Tuple[int, ...]

    @classmethod
    def unit(cls, dim: int) -> "Monomial":
        return cls((0,) * dim, (0,) * dim)

    def degree(self) -> int:
        return sum(self.x_exp) + sum(self.p_exp)

    def render(self) -> str:
        factors = []
        for label, exps in (("x", self.x_exp), ("p", self.p_exp)):
            for site, e in enumerate(exps, start=1):
                if e == 1:
                    factors.append(f"{label}{site}")
                elif e:
                    factors.append(f"{label}{site}^{e}")
        return " * ".join(factors)


def _order_key(m: Monomial):
    # graded-lex on the concatenated exponent vector, highest first
    return (m.degree(), m.x_exp + m.p_exp)


class Observable:
    """
    Sparse linear combination of monomials with ParamScalar coefficients.
    Subclasses supply the product; everything linear lives here.
    Values are never mutated after construction.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Optional[Mapping[Monomial, ParamScalar]] = None):
        self.dim = dim
        self.terms: Dict[Monomial, ParamScalar] = {}
        for monomial, coeff in (terms or {}).items():
            if len(monomial.x_exp) != dim or len(monomial.p_exp) != dim:
                raise DimensionMismatch(f"monomial {monomial} does not live on {dim} sites")
            if coeff:
                self.terms[monomial] = coeff

    # -- construction -----------------------------------------------------

    @property
    def ring(self):
        return param_ring(self.dim)

    @classmethod
    def zero(cls, dim: int):
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value) -> "Observable":
        coeff = value if isinstance(value, PolyElement) else scalar(param_ring(dim), value)
        return cls(dim, {Monomial.unit(dim): coeff})

    @classmethod
    def monomial(cls, dim: int, x_exp: Iterable[int], p_exp: Iterable[int], coeff=1):
        if not isinstance(coeff, PolyElement):
            coeff = scalar(param_ring(dim), coeff)
        return cls(dim, {Monomial(tuple(x_exp), tuple(p_exp)): coeff})

    @classmethod
    def x(cls, dim: int, site: int, power: int = 1):
        exps = [0] * dim
        exps[site - 1] = power
        return cls.monomial(dim, exps, (0,) * dim)

    @classmethod
    def p(cls, dim: int, site: int, power: int = 1):
        if power < 0:
            raise ValueError("momenta only carry non-negative powers")
        exps = [0] * dim
        exps[site - 1] = power
        return cls.monomial(dim, (0,) * dim, exps)

    @staticmethod
    def accumulate(acc: Dict[Monomial, ParamScalar], monomial: Monomial, coeff: ParamScalar):
        if monomial in acc:
            acc[monomial] = acc[monomial] + coeff
        else:
            acc[monomial] = coeff

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Observable"):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimension {self.dim} vs {other.dim}")

    def _coerce(self, other):
        if isinstance(other, Observable):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, PolyElement)):
            return type(self).constant(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for monomial, coeff in other.terms.items():
            self.accumulate(acc, monomial, coeff)
        return type(self)(self.dim, acc)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "Observable":
        if not isinstance(factor, PolyElement):
            factor = scalar(self.ring, factor)
        return type(self)(self.dim, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PolyElement)):
            return self.scale(other)
        if isinstance(other, Observable):
            self._check(other)
            return self._product(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PolyElement)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("only non-negative powers")
        result = type(self).constant(self.dim, 1)
        for _ in range(k):
            result = result * self
        return result

    def _product(self, other):
        raise NotImplementedError

    # -- comparison and inspection ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Observable):
            return NotImplemented
        return type(other) is type(self) and other.dim == self.dim and other.terms == self.terms

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Tuple[Monomial, ParamScalar]]:
        return sorted(self.terms.items(), key=lambda item: _order_key(item[0]), reverse=True)

    def substitute_params(self, bindings: Mapping[str, Number]):
        if not bindings:
            return self
        return type(self)(self.dim, {m: scalar_substitute(c, bindings) for m, c in self.terms.items()})

    def render(self, limit: Optional[int] = None) -> List[str]:
        """Rendered terms in canonical order, e.g. ['(-1/4)*a1 * x1^-2 * x2^2']"""
        lines = []
        for monomial, coeff in self.sorted_terms()[:limit]:
            text = render_scalar(coeff)
            if len(coeff) > 1:
                text = f"({text})"
            body = monomial.render()
            lines.append(f"{text} * {body}" if body else text)
        return lines

    def __str__(self):
        return " + ".join(self.render()) or "0"

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, {self})"


class PhaseFunction(Observable):
    """A classical observable; multiplication is commutative"""

    __slots__ = ()

    def _product(self, other: "PhaseFunction") -> "PhaseFunction":
        acc: Dict[Monomial, ParamScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                monomial = Monomial(
                    tuple(a + b for a, b in zip(m1.x_exp, m2.x_exp)),
                    tuple(a + b for a, b in zip(m1.p_exp, m2.p_exp)),
                )
                self.accumulate(acc, monomial, c1 * c2)
        return PhaseFunction(self.dim, acc)


def _lowered(exps: Tuple[int, ...], site: int) -> Tuple[int, ...]:
    return exps[:site] + (exps[site] - 1,) + exps[site + 1:]


def _summed(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(u + v for u, v in zip(a, b))


def pf_add(f: PhaseFunction, g: PhaseFunction) -> PhaseFunction:
    f._check(g)
    return f + g


def pf_mul(f: PhaseFunction, g: PhaseFunction) -> PhaseFunction:
    f._check(g)
    return f * g


def poisson_bracket(f: PhaseFunction, g: PhaseFunction) -> PhaseFunction:
    """
    Canonical bracket sum_j (d_xj f d_pj g - d_pj f d_xj g), taken term by term.
    d/dx x^k = k x^(k-1) for every integer k.
    """
    f._check(g)
    acc: Dict[Monomial, ParamScalar] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            x_sum = _summed(m1.x_exp, m2.x_exp)
            p_sum = _summed(m1.p_exp, m2.p_exp)
            product = None
            for site in range(f.dim):
                weight = m1.x_exp[site] * m2.p_exp[site] - m1.p_exp[site] * m2.x_exp[site]
                if not weight:
                    continue
                if product is None:
                    product = c1 * c2
                monomial = Monomial(_lowered(x_sum, site), _lowered(p_sum, site))
                Observable.accumulate(acc, monomial, product * weight)
    return PhaseFunction(f.dim, acc)


def pf_equal(f: PhaseFunction, g: PhaseFunction) -> bool:
    f._check(g)
    return (f - g).is_zero()


def pf_substitute_params(f: PhaseFunction, bindings: Mapping[str, Number]) -> PhaseFunction:
    return f.substitute_params(bindings)
