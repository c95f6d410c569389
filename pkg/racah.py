"""
Racah algebra R(n)
Subset Casimirs, the P and F generators, the rank one substructures obtained from three
disjoint subsets, their Casimirs, and the suites verifying every relation as an exact zero
"""

import itertools
import logging
import threading
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from chain_graph import ChainGraph
from check_runner import CheckRunner, CheckTask, RelationReport, run_checks
from coalgebra_realisation import (
    KINETIC_SPEC,
    OSCILLATOR_SPEC,
    AlgebraMode,
    Generator,
    SiteRange,
    generator,
    left_casimir,
    lie_bracket,
    random_hamiltonian_spec,
    right_casimir,
    sample_hamiltonian,
    sites_casimir,
    symmetric_product,
)
from param_ring import AlgebraError, Number, hbar, param_a, param_ring, scalar
from phase_space import Observable, poisson_bracket
from weyl_algebra import anticommutator, semiclassical_bracket, semiclassical_limit, symmetrize3

logger = logging.getLogger(__name__)

IndexSubset = Tuple[int, ...]
Bindings = Optional[Mapping[str, Number]]

CLASSICAL = AlgebraMode.CLASSICAL
QUANTUM = AlgebraMode.QUANTUM

RANDOM_HAMILTONIANS = 5
DEFAULT_HAMILTONIAN_SEED = 20211


class BadIndices(AlgebraError):
    """Site indices outside the chain, repeated, or in the wrong order"""


def index_subset(n: int, indices: Iterable[int]) -> IndexSubset:
    """Validate a set of sites and return it sorted"""
    indices = tuple(indices)
    subset = tuple(sorted(indices))
    if not subset:
        raise BadIndices("an index subset cannot be empty")
    if len(set(subset)) != len(subset):
        raise BadIndices(f"repeated index in {indices}")
    if subset[0] < 1 or subset[-1] > n:
        raise BadIndices(f"indices {indices} are not inside (1..{n})")
    return subset


def _permutation_sign(indices: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(indices, 2) if a > b)
    return -1 if inversions % 2 else 1


class GeneratorSet:
    """
    The subset Casimirs C_K of one chain in one mode, built lazily and shared between
    worker threads. Parameter bindings are applied to every stored entry.
    """

    def __init__(self, mode: AlgebraMode, n: int, bindings: Bindings = None):
        if n < 1:
            raise BadIndices(f"a chain needs at least one site, got {n}")
        self.mode = mode
        self.n = n
        self.bindings = dict(bindings or {})
        self._cache: Dict[tuple, Observable] = {}
        self._lock = threading.Lock()

    def _cached(self, key: tuple, build: Callable[[], Observable]) -> Observable:
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = build()
        with self._lock:
            return self._cache.setdefault(key, value)

    def _check_site(self, i: int):
        if not 1 <= i <= self.n:
            raise BadIndices(f"site {i} is not inside (1..{self.n})")

    def _new(self, value: Observable) -> Observable:
        return value.substitute_params(self.bindings)

    # -- one and two site Casimirs ----------------------------------------

    def one_index_C(self, i: int) -> Observable:
        self._check_site(i)
        return self._cached(("C1", i), lambda: self._build_one_index(i))

    def _build_one_index(self, i: int) -> Observable:
        ring = param_ring(self.n)
        value = param_a(ring, i) * scalar(ring, Fraction(-1, 4))
        if self.mode is QUANTUM:
            value = value + hbar(ring) ** 2 * scalar(ring, Fraction(3, 16))
        return self._new(self.mode.observable_type.constant(self.n, value))

    def quantum_shift(self):
        """The constant subtracted inside the quantum two-site bracket"""
        ring = param_ring(self.n)
        return hbar(ring) ** 2 if self.mode is QUANTUM else scalar(ring, 0)

    def two_index_C(self, i: int, j: int) -> Observable:
        self._check_site(i)
        self._check_site(j)
        if i >= j:
            raise BadIndices(f"two-site Casimir needs i < j, got ({i}, {j})")
        return self._cached(("C2", i, j), lambda: self._build_two_index(i, j))

    def _build_two_index(self, i: int, j: int) -> Observable:
        cls, n = self.mode.observable_type, self.n
        ring = param_ring(n)
        a_i, a_j = param_a(ring, i), param_a(ring, j)
        angular = cls.x(n, i) * cls.p(n, j) - cls.x(n, j) * cls.p(n, i)
        inside = (
            angular * angular
            + cls.x(n, j, 2) * cls.x(n, i, -2) * a_i
            + cls.x(n, i, 2) * cls.x(n, j, -2) * a_j
            + cls.constant(n, a_i + a_j - self.quantum_shift())
        )
        return self._new(inside * Fraction(-1, 4))

    # -- subset Casimirs and Racah generators -----------------------------

    def casimir(self, indices: Iterable[int]) -> Observable:
        """C_K = sum_{i<j in K} C_ij - (|K| - 2) sum_{i in K} C_i"""
        subset = index_subset(self.n, indices)
        return self._cached(("C", subset), lambda: self._build_casimir(subset))

    def _build_casimir(self, subset: IndexSubset) -> Observable:
        if len(subset) == 1:
            return self.one_index_C(subset[0])
        total = self.mode.observable_type.zero(self.n)
        for i, j in itertools.combinations(subset, 2):
            total = total + self.two_index_C(i, j)
        singles = self.mode.observable_type.zero(self.n)
        for i in subset:
            singles = singles + self.one_index_C(i)
        return total - singles * (len(subset) - 2)

    def P(self, i: int, j: int) -> Observable:
        self._check_site(i)
        self._check_site(j)
        if i == j:
            raise BadIndices(f"P needs two distinct sites, got ({i}, {j})")
        i, j = min(i, j), max(i, j)
        return self._cached(("P", i, j), lambda: self.two_index_C(i, j) - self.one_index_C(i) - self.one_index_C(j))

    def F(self, i: int, j: int, k: int) -> Observable:
        """Half the bracket of P_ij and P_jk, antisymmetric in all three indices"""
        for site in (i, j, k):
            self._check_site(site)
        if len({i, j, k}) != 3:
            raise BadIndices(f"F needs three distinct sites, got ({i}, {j}, {k})")
        a, b, c = sorted((i, j, k))
        canonical = self._cached(("F", a, b, c), lambda: lie_bracket(self.mode, self.P(a, b), self.P(b, c)) * Fraction(1, 2))
        return canonical if _permutation_sign((i, j, k)) > 0 else -canonical


_shared_sets: Dict[Tuple[AlgebraMode, int], GeneratorSet] = {}
_shared_lock = threading.Lock()


def generator_set(mode: AlgebraMode, n: int, bindings: Bindings = None) -> GeneratorSet:
    """A process-wide set for symbolic parameters, a fresh one for bound parameters"""
    if bindings:
        return GeneratorSet(mode, n, bindings)
    with _shared_lock:
        if (mode, n) not in _shared_sets:
            _shared_sets[(mode, n)] = GeneratorSet(mode, n)
        return _shared_sets[(mode, n)]


def two_index_C(mode: AlgebraMode, n: int, i: int, j: int, bindings: Bindings = None) -> Observable:
    return generator_set(mode, n, bindings).two_index_C(i, j)


def one_index_C(mode: AlgebraMode, n: int, i: int, bindings: Bindings = None) -> Observable:
    return generator_set(mode, n, bindings).one_index_C(i)


def subset_casimir(mode: AlgebraMode, n: int, indices: Iterable[int], bindings: Bindings = None) -> Observable:
    return generator_set(mode, n, bindings).casimir(indices)


def P(mode: AlgebraMode, n: int, i: int, j: int, bindings: Bindings = None) -> Observable:
    return generator_set(mode, n, bindings).P(i, j)


def F(mode: AlgebraMode, n: int, i: int, j: int, k: int, bindings: Bindings = None) -> Observable:
    return generator_set(mode, n, bindings).F(i, j, k)


# -- substructures --------------------------------------------------------

SUBSTRUCTURE_ROLES = ("l_prev", "c_k", "r_next", "l_k", "r_k", "m_k", "l_n", "f_k")


@dataclass(frozen=True)
class SubstructureHandle:
    """
    The image of the rank one Racah algebra under three disjoint subsets K1, K2, K3:
    l_prev = C_K1, c_k = C_K2, r_next = C_K3, l_k = C_K1K2, r_k = C_K2K3,
    m_k = C_K1K3, l_n = C_K1K2K3 and f_k = 1/2 {l_k, r_k}.
    """
    mode: AlgebraMode
    n: int
    label: str
    indices: Tuple[int, ...]
    l_prev: Observable
    c_k: Observable
    r_next: Observable
    l_k: Observable
    r_k: Observable
    m_k: Observable
    l_n: Observable
    f_k: Observable
    # right Casimir on the whole chain, built independently by the coproduct
    r_1: Optional[Observable] = None

    def generators(self) -> Dict[str, Observable]:
        return {role: getattr(self, role) for role in SUBSTRUCTURE_ROLES}


def embedded_racah(mode: AlgebraMode, n: int, k1: Iterable[int], k2: Iterable[int], k3: Iterable[int],
                   bindings: Bindings = None, generators: Optional[GeneratorSet] = None) -> SubstructureHandle:
    k1, k2, k3 = (index_subset(n, part) for part in (k1, k2, k3))
    if set(k1) & set(k2) or set(k2) & set(k3) or set(k1) & set(k3):
        raise BadIndices(f"subsets {k1}, {k2}, {k3} are not pairwise disjoint")
    gs = generators or generator_set(mode, n, bindings)
    l_k, r_k = gs.casimir(k1 + k2), gs.casimir(k2 + k3)
    return SubstructureHandle(
        mode=mode,
        n=n,
        label="embedded",
        indices=k1 + (0,) + k2 + (0,) + k3,
        l_prev=gs.casimir(k1),
        c_k=gs.casimir(k2),
        r_next=gs.casimir(k3),
        l_k=l_k,
        r_k=r_k,
        m_k=gs.casimir(k1 + k3),
        l_n=gs.casimir(k1 + k2 + k3),
        f_k=lie_bracket(mode, l_k, r_k) * Fraction(1, 2),
    )


def substructure(mode: AlgebraMode, n: int, k: int, bindings: Bindings = None,
                 generators: Optional[GeneratorSet] = None) -> SubstructureHandle:
    """The k-th substructure: K1 = (1..k-1), K2 = {k}, K3 = (k+1..n)"""
    if n < 3:
        raise BadIndices(f"substructures need n >= 3, got {n}")
    if not 2 <= k <= n - 1:
        raise BadIndices(f"substructure index must satisfy 2 <= k <= {n - 1}, got {k}")
    handle = embedded_racah(mode, n, range(1, k), (k,), range(k + 1, n + 1), bindings, generators)
    gs = generators or generator_set(mode, n, bindings)
    return replace(handle, label="substructure", indices=(k,), r_1=right_casimir(mode, n, n, gs.bindings))


def substructure_casimir_core(handle: SubstructureHandle) -> Observable:
    """Everything in the Casimir except the hb^2/3 correction"""
    h = handle
    first = (h.r_next - h.c_k) * (h.l_prev - h.l_n) * h.l_k
    second = (h.c_k - h.l_prev) * (h.r_next - h.l_n) * h.r_k
    if h.mode is CLASSICAL:
        cubic = h.l_k * h.m_k * h.r_k
    else:
        cubic = symmetrize3(h.l_k, h.m_k, h.r_k) * Fraction(1, 6)
    return h.f_k * h.f_k + cubic + first - second


def substructure_casimir_correction(handle: SubstructureHandle) -> Observable:
    """hb^2/3 times the anticommutator block; zero classically"""
    h = handle
    if h.mode is CLASSICAL:
        return h.l_k.zero(h.n)
    ring = param_ring(h.n)
    block = (
        anticommutator(h.l_k, h.m_k)
        + anticommutator(h.l_k, h.r_k)
        + anticommutator(h.m_k, h.r_k)
        + (h.c_k - h.l_prev) * (h.r_next - h.l_n)
        - (h.r_next - h.c_k) * (h.l_prev - h.l_n)
    )
    return block.scale(hbar(ring) ** 2 * scalar(ring, Fraction(1, 3)))


def substructure_casimir(handle: SubstructureHandle) -> Observable:
    return substructure_casimir_core(handle) + substructure_casimir_correction(handle)


# -- check builders --------------------------------------------------------

def _task(mode: AlgebraMode, suite: str, check: str, indices: Iterable[int], residual) -> CheckTask:
    return CheckTask(f"{mode.value}.{suite}.{check}", tuple(indices), residual)


def _bracket_vanishes(mode: AlgebraMode, a: Observable, b: Observable) -> Callable[[], Observable]:
    return lambda: lie_bracket(mode, a, b)


def racah_relation_tasks(gs: GeneratorSet, exploratory: bool = False) -> List[CheckTask]:
    """
    The five bracket families of R(n). Operators run the first family only, unless
    exploratory, in which case every product becomes a symmetrised one.
    """
    mode, n = gs.mode, gs.n
    sites = range(1, n + 1)
    br = lambda a, b: lie_bracket(mode, a, b)
    prod = lambda a, b: symmetric_product(mode, a, b)
    C = gs.one_index_C
    tasks = []

    for i, j, k in itertools.permutations(sites, 3):
        tasks.append(_task(mode, "racah", "family1", (i, j, k),
                           lambda i=i, j=j, k=k: br(gs.P(i, j), gs.P(j, k)) - gs.F(i, j, k) * 2))
    if mode is QUANTUM and not exploratory:
        return tasks

    suite = "racah" if mode is CLASSICAL else "racah_exploratory"

    def family2(i, j, k):
        rhs = (prod(gs.P(i, k), gs.P(j, k)) - prod(gs.P(j, k), gs.P(i, j))
               + prod(gs.P(i, k), C(j)) * 2 - prod(gs.P(i, j), C(k)) * 2)
        return br(gs.P(j, k), gs.F(i, j, k)) - rhs

    def family3(i, j, k, l):
        rhs = prod(gs.P(i, k), gs.P(j, l)) - prod(gs.P(i, l), gs.P(j, k))
        return br(gs.P(k, l), gs.F(i, j, k)) - rhs

    def family4(i, j, k, l):
        rhs = (prod(gs.F(j, k, l), gs.P(i, j)) - prod(gs.F(i, k, l), gs.P(j, k) + C(j) * 2)
               - prod(gs.F(i, j, k), gs.P(j, l)))
        return br(gs.F(i, j, k), gs.F(j, k, l)) - rhs

    def family5(i, j, k, l, m):
        rhs = prod(gs.F(i, l, m), gs.P(j, k)) - prod(gs.P(i, k), gs.F(j, l, m))
        return br(gs.F(i, j, k), gs.F(k, l, m)) - rhs

    for idx in itertools.permutations(sites, 3):
        tasks.append(_task(mode, suite, "family2", idx, lambda idx=idx: family2(*idx)))
    # F is antisymmetric in i, j (and l, m below): those orderings repeat an instance up to sign
    for idx in itertools.permutations(sites, 4):
        if idx[0] < idx[1]:
            tasks.append(_task(mode, suite, "family3", idx, lambda idx=idx: family3(*idx)))
        tasks.append(_task(mode, suite, "family4", idx, lambda idx=idx: family4(*idx)))
    for idx in itertools.permutations(sites, 5):
        if idx[0] < idx[1] and idx[3] < idx[4]:
            tasks.append(_task(mode, suite, "family5", idx, lambda idx=idx: family5(*idx)))
    return tasks


def ladder_tasks(gs: GeneratorSet) -> List[CheckTask]:
    """
    Coproduct Casimirs against the subset formula: left and right Casimirs for every m,
    the left ones also as sums of P_ij and C_i, and every subset of at most three sites
    plus the sets K1 u K3 the substructures use.
    """
    mode, n, bindings = gs.mode, gs.n, gs.bindings
    tasks = []
    for m in range(1, n + 1):
        left, right = tuple(range(1, m + 1)), tuple(range(n - m + 1, n + 1))
        tasks.append(_task(mode, "racah", "ladder_left", (m,),
                           lambda m=m, left=left: left_casimir(mode, n, m, bindings) - gs.casimir(left)))
        tasks.append(_task(mode, "racah", "ladder_right", (m,),
                           lambda m=m, right=right: right_casimir(mode, n, m, bindings) - gs.casimir(right)))

        def via_p(m=m, left=left):
            total = mode.observable_type.zero(n)
            for i, j in itertools.combinations(left, 2):
                total = total + gs.P(i, j)
            for i in left:
                total = total + gs.one_index_C(i)
            return left_casimir(mode, n, m, bindings) - total

        tasks.append(_task(mode, "racah", "ladder_via_P", (m,), via_p))

    subsets = [s for size in range(1, min(n, 3) + 1) for s in itertools.combinations(range(1, n + 1), size)]
    subsets += [tuple(range(1, k)) + tuple(range(k + 1, n + 1)) for k in range(2, n)]
    for subset in sorted(set(subsets)):
        tasks.append(_task(mode, "racah", "subset_casimir", subset,
                           lambda subset=subset: sites_casimir(mode, n, subset, bindings) - gs.casimir(subset)))

    if n == 3:
        def presentation(role, expected):
            return lambda: getattr(substructure(mode, 3, 2, generators=gs), role) - expected()

        r3 = {
            "l_prev": lambda: gs.one_index_C(1),
            "c_k": lambda: gs.one_index_C(2),
            "r_next": lambda: gs.one_index_C(3),
            "l_k": lambda: gs.two_index_C(1, 2),
            "r_k": lambda: gs.two_index_C(2, 3),
            "m_k": lambda: gs.two_index_C(1, 3),
            "l_n": lambda: (gs.two_index_C(1, 2) + gs.two_index_C(1, 3) + gs.two_index_C(2, 3)
                            - gs.one_index_C(1) - gs.one_index_C(2) - gs.one_index_C(3)),
            "f_k": lambda: gs.F(1, 2, 3),
        }
        for position, role in enumerate(SUBSTRUCTURE_ROLES, start=1):
            tasks.append(_task(mode, "racah", f"r3_presentation_{role}", (position,), presentation(role, r3[role])))
    return tasks


def substructure_tasks(handle: SubstructureHandle) -> List[CheckTask]:
    h = handle
    mode = h.mode
    suite = h.label
    br = lambda a, b: lie_bracket(mode, a, b)
    half = Fraction(1, 2)
    L, R, M, Fk = h.l_k, h.r_k, h.m_k, h.f_k
    Lp, Ck, Rn, Ln = h.l_prev, h.c_k, h.r_next, h.l_n
    idx = h.indices
    tasks = []

    # three ways of writing F
    tasks.append(_task(mode, suite, "f_from_RM", idx, lambda: Fk - br(R, M) * half))
    tasks.append(_task(mode, suite, "f_from_ML", idx, lambda: Fk - br(M, L) * half))

    tasks.append(_task(mode, suite, "bracket_L_F", idx,
                       lambda: br(L, Fk) - (R * L - L * M + (Ck - Lp) * (Rn - Ln))))
    tasks.append(_task(mode, suite, "bracket_R_F", idx,
                       lambda: br(R, Fk) - (M * R - R * L + (Rn - Ck) * (Lp - Ln))))
    tasks.append(_task(mode, suite, "bracket_M_F", idx,
                       lambda: br(M, Fk) - (L * M - M * R + (Lp - Rn) * (Ck - Ln))))

    tasks.append(_task(mode, suite, "R_commutes_L_plus_M", idx, lambda: br(R, L + M)))
    tasks.append(_task(mode, suite, "L_commutes_M_plus_R", idx, lambda: br(L, M + R)))
    tasks.append(_task(mode, suite, "M_commutes_L_plus_R", idx, lambda: br(M, L + R)))

    tasks.append(_task(mode, suite, "F_brackets_sum", idx, lambda: br(L, Fk) + br(R, Fk) + br(M, Fk)))

    def cross(a, b):
        return a * b * 2 if mode is CLASSICAL else anticommutator(a, b)

    centre_sum = Ln + Lp + Ck + Rn
    tasks.append(_task(mode, suite, "quadratic_L", idx,
                       lambda: br(L, Fk) - (L * L + cross(R, L) - centre_sum * L + (Ck - Lp) * (Rn - Ln))))
    tasks.append(_task(mode, suite, "quadratic_R", idx,
                       lambda: br(R, Fk) - (-(R * R) - cross(L, R) + centre_sum * R + (Rn - Ck) * (Lp - Ln))))

    tasks.append(_task(mode, suite, "linear_M", idx, lambda: M - (Ln - L - R + Lp + Ck + Rn)))
    if h.r_1 is not None:
        tasks.append(_task(mode, suite, "L_total_is_R_total", idx, lambda: Ln - h.r_1))

    for centre_name, centre in (("l_prev", Lp), ("c_k", Ck), ("r_next", Rn), ("l_n", Ln)):
        for gen_name, gen in (("l_k", L), ("r_k", R), ("m_k", M)):
            tasks.append(_task(mode, suite, f"central_{centre_name}_{gen_name}", idx, _bracket_vanishes(mode, centre, gen)))
    return tasks


def casimir_tasks(handle: SubstructureHandle,
                  casimir: Callable[[SubstructureHandle], Observable] = substructure_casimir) -> List[CheckTask]:
    """Centrality of the rank one Casimir; `casimir` builds it from the handle"""
    mode = handle.mode
    tasks = []
    K = lru_cache(maxsize=None)(lambda: casimir(handle))

    for role in ("l_k", "r_k", "m_k", "f_k"):
        gen = getattr(handle, role)
        tasks.append(_task(mode, "casimirs", f"commutes_{role}", handle.indices,
                           lambda gen=gen: lie_bracket(mode, K(), gen)))
    return tasks


def cross_chain_tasks(mode: AlgebraMode, n: int, gs: GeneratorSet) -> List[CheckTask]:
    """R(i+1) = C_(i+1..n) against every L_j = C_(1..j) with j <= i"""
    tasks = []
    for i in range(1, n):
        for j in range(1, i + 1):
            right, left = tuple(range(i + 1, n + 1)), tuple(range(1, j + 1))
            tasks.append(_task(mode, "cross_chain", "R_commutes_L", (i + 1, j),
                               lambda right=right, left=left: lie_bracket(mode, gs.casimir(right), gs.casimir(left))))
    return tasks


def involution_tasks(mode: AlgebraMode, n: int, bindings: Bindings = None,
                     hamiltonian_seed: int = DEFAULT_HAMILTONIAN_SEED) -> List[CheckTask]:
    tasks = []
    br = lambda a, b: lie_bracket(mode, a, b)

    for lo in range(1, n + 1):
        for hi in range(lo, n + 1):
            span = SiteRange(lo, hi)
            get = lambda which, span=span: generator(mode, n, span, which, bindings)
            tasks.append(_task(mode, "involution", "sl2_minus_plus", (lo, hi),
                               lambda get=get: br(get(Generator.J_MINUS), get(Generator.J_PLUS)) - get(Generator.J3) * 2))
            tasks.append(_task(mode, "involution", "sl2_three_plus", (lo, hi),
                               lambda get=get: br(get(Generator.J3), get(Generator.J_PLUS)) - get(Generator.J_PLUS)))
            tasks.append(_task(mode, "involution", "sl2_three_minus", (lo, hi),
                               lambda get=get: br(get(Generator.J3), get(Generator.J_MINUS)) + get(Generator.J_MINUS)))

    gs = generator_set(mode, n, bindings)
    tasks.append(_task(mode, "involution", "left_one_site", (1,), lambda: left_casimir(mode, n, 1, bindings) - gs.one_index_C(1)))
    tasks.append(_task(mode, "involution", "right_one_site", (n,), lambda: right_casimir(mode, n, 1, bindings) - gs.one_index_C(n)))
    tasks.append(_task(mode, "involution", "coassociativity", (n,),
                       lambda: left_casimir(mode, n, n, bindings) - right_casimir(mode, n, n, bindings)))

    for family, build in (("left", left_casimir), ("right", right_casimir)):
        for m, m2 in itertools.combinations(range(1, n + 1), 2):
            tasks.append(_task(mode, "involution", f"{family}_pair", (m, m2),
                               lambda build=build, m=m, m2=m2: br(build(mode, n, m, bindings), build(mode, n, m2, bindings))))

    specs = [KINETIC_SPEC, OSCILLATOR_SPEC]
    specs += [random_hamiltonian_spec(hamiltonian_seed + offset) for offset in range(RANDOM_HAMILTONIANS)]
    for number, spec in enumerate(specs):
        for family, build in (("left", left_casimir), ("right", right_casimir)):
            for m in range(1, n + 1):
                tasks.append(_task(mode, "involution", f"{family}_hamiltonian", (number, m),
                                   lambda spec=spec, build=build, m=m: br(build(mode, n, m, bindings),
                                                                          sample_hamiltonian(mode, n, spec, bindings))))
    return tasks


def classical_limit_tasks(n: int, bindings: Bindings = None) -> List[CheckTask]:
    """
    Quantum objects against classical ones: hb -> 0 of every generator, of every
    scaled commutator, and of the substructure Casimirs.
    """
    quantum, classical = generator_set(QUANTUM, n, bindings), generator_set(CLASSICAL, n, bindings)
    tasks = []

    def limit_task(check, indices, hatted, plain):
        tasks.append(CheckTask(f"limit.{check}", tuple(indices), lambda: semiclassical_limit(hatted()) - plain()))

    def bracket_task(check, indices, hatted_pair, plain_pair):
        def residual():
            a_hat, b_hat = hatted_pair()
            a, b = plain_pair()
            return semiclassical_bracket(a_hat, b_hat) - poisson_bracket(a, b)
        tasks.append(CheckTask(f"limit.{check}", tuple(indices), residual))

    full = SiteRange(1, n)
    top = lambda mode, which: generator(mode, n, full, which, bindings)
    for number, (w1, w2) in enumerate(itertools.combinations(list(Generator), 2), start=1):
        bracket_task("top_generators", (number,),
                     lambda w1=w1, w2=w2: (top(QUANTUM, w1), top(QUANTUM, w2)),
                     lambda w1=w1, w2=w2: (top(CLASSICAL, w1), top(CLASSICAL, w2)))

    pairs = list(itertools.combinations(range(1, n + 1), 2))
    triples = list(itertools.combinations(range(1, n + 1), 3))
    for i, j in pairs:
        limit_task("two_index_C", (i, j), lambda i=i, j=j: quantum.two_index_C(i, j), lambda i=i, j=j: classical.two_index_C(i, j))
        limit_task("P", (i, j), lambda i=i, j=j: quantum.P(i, j), lambda i=i, j=j: classical.P(i, j))
    for i in range(1, n + 1):
        limit_task("one_index_C", (i,), lambda i=i: quantum.one_index_C(i), lambda i=i: classical.one_index_C(i))
    for t in triples:
        limit_task("F", t, lambda t=t: quantum.F(*t), lambda t=t: classical.F(*t))

    racah_generators = [("P", pair) for pair in pairs] + [("F", t) for t in triples]
    for (kind1, idx1), (kind2, idx2) in itertools.combinations(racah_generators, 2):
        def pick(gs, kind1=kind1, idx1=idx1, kind2=kind2, idx2=idx2):
            return getattr(gs, kind1)(*idx1), getattr(gs, kind2)(*idx2)
        bracket_task(f"{kind1}_{kind2}", idx1 + (0,) + idx2, lambda pick=pick: pick(quantum), lambda pick=pick: pick(classical))

    for k in range(2, n):
        handles = {}

        def handle(mode, k=k, handles=handles):
            if mode not in handles:
                handles[mode] = substructure(mode, n, k, generators=quantum if mode is QUANTUM else classical)
            return handles[mode]

        for position, role in enumerate(SUBSTRUCTURE_ROLES, start=1):
            limit_task(f"substructure_{role}", (k, position),
                       lambda role=role, handle=handle: getattr(handle(QUANTUM), role),
                       lambda role=role, handle=handle: getattr(handle(CLASSICAL), role))
        for (p1, role1), (p2, role2) in itertools.combinations(enumerate(SUBSTRUCTURE_ROLES, start=1), 2):
            bracket_task("substructure_bracket", (k, p1, p2),
                         lambda role1=role1, role2=role2, handle=handle: (getattr(handle(QUANTUM), role1), getattr(handle(QUANTUM), role2)),
                         lambda role1=role1, role2=role2, handle=handle: (getattr(handle(CLASSICAL), role1), getattr(handle(CLASSICAL), role2)))
        limit_task("substructure_casimir", (k,),
                   lambda handle=handle: substructure_casimir(handle(QUANTUM)),
                   lambda handle=handle: substructure_casimir(handle(CLASSICAL)))
    return tasks


# -- suites ----------------------------------------------------------------

def verify_racah_relations(mode: AlgebraMode, n: int, bindings: Bindings = None, exploratory: bool = False,
                           runner: Optional[CheckRunner] = None) -> List[RelationReport]:
    if n < 3:
        raise BadIndices(f"R(n) relations need n >= 3, got {n}")
    gs = generator_set(mode, n, bindings)
    return run_checks(racah_relation_tasks(gs, exploratory) + ladder_tasks(gs), runner)


def verify_substructure(handle: SubstructureHandle, runner: Optional[CheckRunner] = None) -> List[RelationReport]:
    return run_checks(substructure_tasks(handle), runner)


def verify_casimirs(mode: AlgebraMode, n: int, bindings: Bindings = None,
                    runner: Optional[CheckRunner] = None) -> List[RelationReport]:
    gs = generator_set(mode, n, bindings)
    tasks = [task for k in range(2, n) for task in casimir_tasks(substructure(mode, n, k, generators=gs))]
    return run_checks(tasks, runner)


def verify_cross_chain(mode: AlgebraMode, n: int, bindings: Bindings = None,
                       runner: Optional[CheckRunner] = None) -> List[RelationReport]:
    if n < 3:
        raise BadIndices(f"the chain needs n >= 3, got {n}")
    return run_checks(cross_chain_tasks(mode, n, generator_set(mode, n, bindings)), runner)


def verify_involution(mode: AlgebraMode, n: int, bindings: Bindings = None,
                      hamiltonian_seed: int = DEFAULT_HAMILTONIAN_SEED,
                      runner: Optional[CheckRunner] = None) -> List[RelationReport]:
    return run_checks(involution_tasks(mode, n, bindings, hamiltonian_seed), runner)


def verify_classical_limit(n: int, bindings: Bindings = None,
                           runner: Optional[CheckRunner] = None) -> List[RelationReport]:
    if n < 3:
        raise BadIndices(f"the classical limit suite needs n >= 3, got {n}")
    return run_checks(classical_limit_tasks(n, bindings), runner)


def substructure_suite_tasks(mode: AlgebraMode, n: int, bindings: Bindings = None) -> List[CheckTask]:
    """Every k-th substructure, one non-contiguous embedding when n >= 4, and the cross-chain pairs"""
    gs = generator_set(mode, n, bindings)
    tasks = []
    for k in range(2, n):
        tasks += substructure_tasks(substructure(mode, n, k, generators=gs))
    if n >= 4:
        tasks += substructure_tasks(embedded_racah(mode, n, (1, 3), (2,), (4,), generators=gs))
    tasks += cross_chain_tasks(mode, n, gs)
    return tasks


def emit_chain_graph(n: int) -> str:
    if n < 3:
        raise BadIndices(f"the chain graph needs n >= 3, got {n}")
    return ChainGraph(n).to_dot()
