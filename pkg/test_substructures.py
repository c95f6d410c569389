"""
Test the rank one substructures, their Casimirs, the cross-chain pairs and the hb -> 0 limit
"""

from dataclasses import replace

import pytest

from check_runner import run_checks
from coalgebra_realisation import AlgebraMode, lie_bracket
from param_ring import draw_parameters
from racah import (
    BadIndices,
    casimir_tasks,
    embedded_racah,
    subset_casimir,
    substructure,
    substructure_casimir,
    substructure_casimir_core,
    substructure_tasks,
    verify_casimirs,
    verify_classical_limit,
    verify_cross_chain,
    verify_substructure,
)
from weyl_algebra import semiclassical_limit

CLASSICAL, QUANTUM = AlgebraMode.CLASSICAL, AlgebraMode.QUANTUM


def failures(reports):
    return [report for report in reports if report.status != "pass"]


def test_three_site_substructure_generators():
    """The three-site substructure is R(3) itself"""
    h = substructure(CLASSICAL, 3, 2)
    c = lambda *k: subset_casimir(CLASSICAL, 3, k)
    assert h.l_prev == c(1)
    assert h.c_k == c(2)
    assert h.r_next == c(3)
    assert h.l_k == c(1, 2)
    assert h.r_k == c(2, 3)
    assert h.m_k == c(1, 3)
    assert h.l_n == c(1, 2, 3)
    assert h.l_n == h.r_1


def test_four_site_substructure_generators():
    """Four-site substructure generators are subset Casimirs"""
    h = substructure(CLASSICAL, 4, 2)
    c = lambda *k: subset_casimir(CLASSICAL, 4, k)
    generators = [h.l_prev, h.c_k, h.r_next, h.l_k, h.m_k, h.r_k, h.l_n]
    assert generators == [c(1), c(2), c(3, 4), c(1, 2), c(1, 3, 4), c(2, 3, 4), c(1, 2, 3, 4)]


def test_substructure_bounds():
    """k must lie strictly inside the chain"""
    with pytest.raises(BadIndices):
        substructure(CLASSICAL, 4, 4)
    with pytest.raises(BadIndices):
        substructure(QUANTUM, 4, 1)
    with pytest.raises(BadIndices):
        substructure(CLASSICAL, 2, 1)


def test_embedding_needs_disjoint_subsets():
    """Overlapping subsets are refused"""
    with pytest.raises(BadIndices):
        embedded_racah(CLASSICAL, 4, (1, 2), (2,), (4,))


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
def test_classical_substructures(n, k):
    """Every classical substructure satisfies its relations"""
    reports = verify_substructure(substructure(CLASSICAL, n, k))
    assert reports
    assert not failures(reports)


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3)])
def test_quantum_substructures(n, k):
    """Every quantum substructure satisfies its relations"""
    assert not failures(verify_substructure(substructure(QUANTUM, n, k)))


@pytest.mark.parametrize("mode", [CLASSICAL, QUANTUM])
def test_non_contiguous_embedding(mode):
    """A non-contiguous embedding satisfies the same relations"""
    handle = embedded_racah(mode, 4, (1, 3), (2,), (4,))
    reports = verify_substructure(handle)
    assert all(r.check_name.startswith(f"{mode.value}.embedded.") for r in reports)
    assert not failures(reports)


def test_F_is_half_the_bracket_of_L_and_R():
    """F = {L, R}/2 and the bracket is not trivial"""
    h = substructure(CLASSICAL, 3, 2)
    assert lie_bracket(CLASSICAL, h.l_k, h.r_k) == h.f_k * 2
    assert not lie_bracket(CLASSICAL, h.r_k, h.l_k).is_zero()


def test_tampered_M_breaks_the_F_brackets():
    """Shifting M by one breaks the brackets that involve it"""
    h = substructure(CLASSICAL, 3, 2)
    tampered = replace(h, m_k=h.m_k + 1)
    broken = {r.check_name for r in failures(verify_substructure(tampered))}
    assert "classical.substructure.bracket_L_F" in broken
    assert "classical.substructure.linear_M" in broken


@pytest.mark.parametrize("mode", [CLASSICAL, QUANTUM])
@pytest.mark.parametrize("n", [3, 4])
def test_casimir_centrality(mode, n):
    """The substructure Casimir commutes with L, R, M and F"""
    reports = verify_casimirs(mode, n)
    assert len(reports) == 4 * (n - 2)
    assert not failures(reports)


@pytest.mark.parametrize("k", [2, 3])
def test_quantum_casimir_limit(k):
    """The quantum Casimir tends to the classical one"""
    quantum = substructure_casimir(substructure(QUANTUM, 4, k))
    assert semiclassical_limit(quantum) == substructure_casimir(substructure(CLASSICAL, 4, k))


def test_casimir_without_hbar_block_is_not_central():
    """Without its hb^2/3 block the quantum Casimir fails the centrality suite"""
    reports = run_checks(casimir_tasks(substructure(QUANTUM, 3, 2), casimir=substructure_casimir_core))
    broken = failures(reports)
    assert broken
    assert all(r.status == "fail" and r.residual_term_count > 0 for r in broken)
    assert all(r.check_name.startswith("quantum.casimirs.commutes_") for r in broken)


def test_casimir_tasks_name_the_generators():
    """Centrality checks are named after the generator"""
    tasks = casimir_tasks(substructure(CLASSICAL, 3, 2))
    assert [t.name for t in tasks] == [f"classical.casimirs.commutes_{role}" for role in ("l_k", "r_k", "m_k", "f_k")]


@pytest.mark.parametrize("mode,n", [(CLASSICAL, 3), (CLASSICAL, 4), (QUANTUM, 3), (QUANTUM, 4)])
def test_cross_chain(mode, n):
    """Right Casimirs commute with the left Casimirs they do not overlap"""
    reports = verify_cross_chain(mode, n)
    assert len(reports) == n * (n - 1) // 2
    assert not failures(reports)


def test_cross_chain_pairs_n4():
    """Cross-chain indices on four sites"""
    indices = {r.index_tuple for r in verify_cross_chain(CLASSICAL, 4)}
    assert {(3, 2), (4, 3), (2, 1)} <= indices


def test_classical_limit_n3():
    """Every hb -> 0 check passes on three sites"""
    reports = verify_classical_limit(3)
    assert reports
    assert not failures(reports)


def test_classical_limit_n4_random_parameters():
    """hb -> 0 checks pass on four sites with random a_i"""
    assert not failures(verify_classical_limit(4, bindings=draw_parameters(4, 3)))


def test_substructure_checks_cover_every_relation():
    """Substructure checks cover every named relation"""
    names = {t.name.split(".")[-1] for t in substructure_tasks(substructure(CLASSICAL, 3, 2))}
    expected = {"f_from_RM", "f_from_ML", "bracket_L_F", "bracket_R_F", "bracket_M_F",
                "R_commutes_L_plus_M", "L_commutes_M_plus_R", "M_commutes_L_plus_R",
                "F_brackets_sum", "quadratic_L", "quadratic_R", "linear_M", "L_total_is_R_total"}
    assert expected <= names
