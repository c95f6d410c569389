"""
sl(2,R) coalgebra realisations
Site-sum generators J+, J-, J3 on any set of sites, their Casimir, the left and right
partial Casimirs and polynomial Hamiltonians in the n-site generators
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from param_ring import AlgebraError, Number, gaussian, hbar, param_a, param_ring, scalar
from phase_space import Observable, PhaseFunction, poisson_bracket
from weyl_algebra import WeylOperator, anticommutator, commutator, divide_by_i_hbar

logger = logging.getLogger(__name__)


class BadRange(AlgebraError):
    """A site range or site set does not fit inside the chain"""


class AlgebraMode(Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"

    @property
    def observable_type(self):
        return PhaseFunction if self is AlgebraMode.CLASSICAL else WeylOperator


class Generator(Enum):
    J_PLUS = "J+"
    J_MINUS = "J-"
    J3 = "J3"


@dataclass(frozen=True)
class SiteRange:
    lo: int
    hi: int

    @classmethod
    def left(cls, n: int, m: int) -> "SiteRange":
        if not 1 <= m <= n:
            raise BadRange(f"left range of length {m} does not fit in {n} sites")
        return cls(1, m)

    @classmethod
    def right(cls, n: int, m: int) -> "SiteRange":
        if not 1 <= m <= n:
            raise BadRange(f"right range of length {m} does not fit in {n} sites")
        return cls(n - m + 1, n)

    def validate(self, n: int) -> "SiteRange":
        if not 1 <= self.lo <= self.hi <= n:
            raise BadRange(f"site range ({self.lo}..{self.hi}) is not inside (1..{n})")
        return self

    def sites(self) -> Tuple[int, ...]:
        return tuple(range(self.lo, self.hi + 1))


Bindings = Optional[Mapping[str, Number]]


def _one_site(mode: AlgebraMode, n: int, site: int, which: Generator) -> Observable:
    cls = mode.observable_type
    ring = param_ring(n)
    half = Fraction(1, 2)
    if which is Generator.J_MINUS:
        return cls.x(n, site, 2) * half
    if which is Generator.J_PLUS:
        inverse_square = cls.x(n, site, -2) * param_a(ring, site)
        return (cls.p(n, site, 2) + inverse_square) * half
    j3 = cls.x(n, site) * cls.p(n, site) * half
    if mode is AlgebraMode.QUANTUM:
        # 1/2 (x p - i hb / 2)
        j3 = j3 - cls.constant(n, scalar(ring, gaussian(0, Fraction(1, 4))) * hbar(ring))
    return j3


def subset_generator(mode: AlgebraMode, n: int, sites: Iterable[int], which: Generator,
                     bindings: Bindings = None) -> Observable:
    """The primitive coproduct of one generator pushed onto an arbitrary set of sites"""
    sites = sorted(set(sites))
    if not sites or sites[0] < 1 or sites[-1] > n:
        raise BadRange(f"sites {sites} are not a nonempty subset of (1..{n})")
    total = mode.observable_type.zero(n)
    for site in sites:
        total = total + _one_site(mode, n, site, which)
    return total.substitute_params(bindings)


def generator(mode: AlgebraMode, n: int, site_range: SiteRange, which: Generator,
              bindings: Bindings = None) -> Observable:
    site_range.validate(n)
    return subset_generator(mode, n, site_range.sites(), which, bindings)


def casimir_of_generators(mode: AlgebraMode, jp: Observable, jm: Observable, j3: Observable) -> Observable:
    """J3^2 - J+ J- classically, J3^2 - 1/2 (J+ J- + J- J+) for operators"""
    jp._check(jm)
    jp._check(j3)
    if mode is AlgebraMode.CLASSICAL:
        return j3 * j3 - jp * jm
    return j3 * j3 - anticommutator(jp, jm) * Fraction(1, 2)


def sites_casimir(mode: AlgebraMode, n: int, sites: Iterable[int], bindings: Bindings = None) -> Observable:
    sites = tuple(sites)
    jp, jm, j3 = (subset_generator(mode, n, sites, which, bindings) for which in Generator)
    return casimir_of_generators(mode, jp, jm, j3)


def left_casimir(mode: AlgebraMode, n: int, m: int, bindings: Bindings = None) -> Observable:
    """C^[m], the Casimir on sites 1..m"""
    return sites_casimir(mode, n, SiteRange.left(n, m).sites(), bindings)


def right_casimir(mode: AlgebraMode, n: int, m: int, bindings: Bindings = None) -> Observable:
    """C_[m], the Casimir on sites n-m+1..n"""
    return sites_casimir(mode, n, SiteRange.right(n, m).sites(), bindings)


def lie_bracket(mode: AlgebraMode, a: Observable, b: Observable) -> Observable:
    """Poisson bracket, or [a, b] / (i hb) for operators"""
    if mode is AlgebraMode.CLASSICAL:
        return poisson_bracket(a, b)
    return divide_by_i_hbar(commutator(a, b))


def symmetric_product(mode: AlgebraMode, a: Observable, b: Observable) -> Observable:
    """a b classically, 1/2 {a, b} for operators"""
    if mode is AlgebraMode.CLASSICAL:
        return a * b
    return anticommutator(a, b) * Fraction(1, 2)


# A Hamiltonian spec is a list of (coefficient, word) terms; a word is a sequence of
# generator labels multiplied left to right, the empty word being the identity.
HamiltonianSpec = List[Tuple[Number, Sequence[Generator]]]

OSCILLATOR_OMEGA_SQUARED = Fraction(9, 4)

KINETIC_SPEC: HamiltonianSpec = [(1, (Generator.J_PLUS,))]
OSCILLATOR_SPEC: HamiltonianSpec = [
    (1, (Generator.J_PLUS,)),
    (OSCILLATOR_OMEGA_SQUARED, (Generator.J_MINUS,)),
]


def sample_hamiltonian(mode: AlgebraMode, n: int, spec: HamiltonianSpec, bindings: Bindings = None) -> Observable:
    full = SiteRange(1, n)
    top = {which: generator(mode, n, full, which, bindings) for which in Generator}
    cls = mode.observable_type
    total = cls.zero(n)
    for coeff, word in spec:
        term = cls.constant(n, 1)
        for letter in word:
            term = term * top[Generator(letter)]
        total = total + term * coeff
    return total


def random_hamiltonian_spec(seed: int, terms: int = 3, max_degree: int = 2) -> HamiltonianSpec:
    """Seeded polynomial spec with small nonzero rational coefficients"""
    rng = np.random.default_rng(seed)
    letters = list(Generator)
    spec = []
    for _ in range(terms):
        numerator = int(rng.integers(1, 10)) * (1 if rng.random() < 0.5 else -1)
        coeff = Fraction(numerator, int(rng.integers(1, 6)))
        degree = int(rng.integers(1, max_degree + 1))
        word = tuple(letters[int(rng.integers(0, 3))] for _ in range(degree))
        spec.append((coeff, word))
    logger.debug("hamiltonian spec for seed %d: %s", seed, spec)
    return spec
