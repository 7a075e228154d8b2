"""DIMACS export checks, corroborated by sympy's independent DPLL solver."""

from sympy.logic.algorithms.dpll2 import dpll_satisfiable
from sympy.logic.utilities.dimacs import load as load_dimacs

from spin101.coloring import export_cnf, validate_101


def _clause_lines(cnf: str) -> list[str]:
    return [ln for ln in cnf.splitlines() if ln and not ln.startswith(("c", "p"))]


def test_header_and_counts(peres_graph):
    cnf = export_cnf(peres_graph)
    assert "p cnf 33 88" in cnf  # 16 triples * 4 clauses + 24 lone pairs
    assert len(_clause_lines(cnf)) == 88
    # header documents the variable map
    assert "c var 1 <-> node 0" in cnf
    assert sum(1 for ln in cnf.splitlines() if ln.startswith("c var ")) == 33


def test_clause_shape(basis_graph):
    cnf = export_cnf(basis_graph)
    assert "p cnf 3 4" in cnf
    clauses = {tuple(sorted(int(x) for x in ln.split()[:-1])) for ln in _clause_lines(cnf)}
    assert (1, 2, 3) in clauses  # at least one zero
    assert (-2, -1) in clauses and (-3, -1) in clauses and (-3, -2) in clauses


def test_peres_cnf_unsat_under_external_solver(peres_graph):
    cnf = export_cnf(peres_graph)
    assert dpll_satisfiable(load_dimacs(cnf)) is False


def test_basis_cnf_sat_and_model_decodes(basis_graph):
    cnf = export_cnf(basis_graph)
    model = dpll_satisfiable(load_dimacs(cnf))
    assert model
    # positive literal means value 0; absent variables default to 1
    assignment = {i: 1 for i in range(basis_graph.n)}
    for sym, val in model.items():
        node = int(sym.name.split("_")[1]) - 1
        assignment[node] = 0 if val else 1
    assert validate_101(assignment, basis_graph) == []


def test_lone_pair_clauses_present(peres_graph):
    cnf = export_cnf(peres_graph)
    clauses = {tuple(sorted(int(x) for x in ln.split()[:-1])) for ln in _clause_lines(cnf)}
    for i, j in peres_graph.lone_pairs:
        assert tuple(sorted((-(i + 1), -(j + 1)))) in clauses
