"""
Exact coefficient ring
Gaussian rationals extended by the formal parameters hb (Planck's constant) and a1..an
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

import numpy as np
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

logger = logging.getLogger(__name__)

HBAR = "hb"

# A ParamScalar is an element of param_ring(n): a sparse polynomial in
# (hb, a1, ..., an) whose coefficients are Gaussian rationals.
ParamScalar = PolyElement

Number = Union[int, Fraction, GaussianRational]


class AlgebraError(Exception):
    """Base class for every error raised by the algebra engine"""


class NotDivisible(AlgebraError):
    """A term had fewer powers of hb than the requested division"""


@lru_cache(maxsize=None)
def param_ring(n: int) -> PolyRing:
    """The coefficient ring for an n-site chain, graded-lex on (hb, a1, ..., an)"""
    if n < 1:
        raise ValueError(f"parameter ring needs at least one site, got {n}")
    names = ",".join([HBAR] + [f"a{i}" for i in range(1, n + 1)])
    logger.debug("building parameter ring %s", names)
    return PolyRing(names, QQ_I, grlex)


def parameter_names(ring: PolyRing) -> list:
    return [str(symbol) for symbol in ring.symbols]


def gaussian(re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0) -> GaussianRational:
    """Exact Gaussian rational re + i*im (components reduced to lowest terms)"""
    re, im = Fraction(re), Fraction(im)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def to_gaussian(value: Number) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (np.integer,)):
        value = int(value)
    return gaussian(value)


def scalar(ring: PolyRing, value: Number) -> ParamScalar:
    return ring.ground_new(to_gaussian(value))


def hbar(ring: PolyRing) -> ParamScalar:
    return ring.gens[0]


def param_a(ring: PolyRing, i: int) -> ParamScalar:
    """The parameter a_i (1-based site index)"""
    if not 1 <= i < ring.ngens:
        raise ValueError(f"no parameter a{i} in a ring with {ring.ngens - 1} sites")
    return ring.gens[i]


def imag_unit(ring: PolyRing) -> ParamScalar:
    return ring.ground_new(gaussian(0, 1))


def scalar_add(a: ParamScalar, b: ParamScalar) -> ParamScalar:
    return a + b


def scalar_mul(a: ParamScalar, b: ParamScalar) -> ParamScalar:
    return a * b


def scalar_substitute(s: ParamScalar, bindings: Mapping[str, Number]) -> ParamScalar:
    """
    Replace the bound parameters by exact values; unbound parameters stay symbolic.
    The result lives in the same ring.
    """
    if not bindings:
        return s
    ring = s.ring
    names = parameter_names(ring)
    pairs = []
    for name, value in sorted(bindings.items()):
        if name not in names:
            raise ValueError(f"unknown parameter '{name}', expected one of {names}")
        pairs.append((ring.gens[names.index(name)], to_gaussian(value)))
    return s.subs(pairs)


def scalar_divide_by_hbar(s: ParamScalar, k: int = 1) -> ParamScalar:
    """Lower the hb exponent of every term by k"""
    ring = s.ring
    shifted = {}
    for monom, coeff in s.items():
        if monom[0] < k:
            raise NotDivisible(f"term {render_scalar(ring.from_dict({monom: coeff}))} is not divisible by hb^{k}")
        shifted[(monom[0] - k,) + monom[1:]] = coeff
    return ring.from_dict(shifted)


def classical_limit(s: ParamScalar) -> ParamScalar:
    """hb -> 0"""
    return scalar_substitute(s, {HBAR: 0})


def draw_parameters(n: int, seed: int, include_hbar: bool = False) -> dict:
    """
    Seeded nonzero rational values for a1..an (and hb on request).
    Identical seeds give identical bindings.
    """
    rng = np.random.default_rng(seed)
    names = [f"a{i}" for i in range(1, n + 1)]
    if include_hbar:
        names.append(HBAR)
    bindings = {}
    for name in names:
        numerator = int(rng.integers(1, 97)) * (1 if rng.random() < 0.5 else -1)
        denominator = int(rng.integers(1, 31))
        bindings[name] = Fraction(numerator, denominator)
    return bindings


def _render_rational(q) -> str:
    numerator, denominator = int(q.numerator), int(q.denominator)
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def render_gaussian(c: GaussianRational) -> str:
    re, im = c.x, c.y
    if not im:
        return f"({_render_rational(re)})"
    if not re:
        return f"({_render_rational(im)})*i"
    return f"({_render_rational(re)} + {_render_rational(im)}*i)"


def _render_power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def render_scalar(s: ParamScalar) -> str:
    """Deterministic text form, e.g. (3/16)*hb^2 + (-1/4)*a1"""
    if not s:
        return "0"
    names = parameter_names(s.ring)
    parts = []
    for monom, coeff in s.terms():
        factors = [render_gaussian(coeff)]
        factors += [_render_power(names[i], e) for i, e in enumerate(monom) if e]
        parts.append("*".join(factors))
    return " + ".join(parts)
