import itertools
import random

import numpy as np
import pytest

from functions.catalog import catalog_build, complete, k4_ordered, resolve_graph, wheel
from functions.graph_core import Graph, adjacency, line_graph
from functions.qcbo import (
    QcboProblem,
    QcboStatus,
    binary_to_spins,
    build_qcbo,
    check_solution,
    nae_holds,
    qubo_objective,
    solve_qcbo,
    spin_objective,
    spins_to_binary,
    to_qubo,
)
from functions.qcbo_io import LpFormatError, export_lp, problem_from_json, problem_to_json, read_lp

K4_SPINS = (-1, 1, 1, -1, -1, -1)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, tuple(edges))


def binary_rows(m: int) -> np.ndarray:
    """全部 2^m 個 0/1 指派，每列一個 (int8)"""
    codes = np.arange(2 ** m, dtype=np.int64)
    columns = [((codes >> i) & 1).astype(np.int8) for i in range(m)]
    return np.stack(columns, axis=1) if columns else np.zeros((1, 0), dtype=np.int8)


def brute_force(p: QcboProblem, objective: bool = True) -> tuple[bool, int | None]:
    """列舉全部 2^m 個自旋向量 (numpy 向量化)"""
    spins = 2 * binary_rows(p.m) - 1
    feasible = np.ones(len(spins), dtype=bool)
    for i, j, k in p.nae_constraints:
        feasible &= np.abs(spins[:, i] + spins[:, j] + spins[:, k]) == 1
    if not feasible.any():
        return False, None
    if not objective:
        return True, None
    rows = spins[feasible].astype(np.int64)
    values = np.einsum("ri,ij,rj->r", rows, p.q, rows)
    return True, int(values.min())


class TestBuild:

    @staticmethod
    def test_k4_problem():
        p = build_qcbo(k4_ordered())
        assert p.m == 6
        assert len(p.nae_constraints) == 8
        assert np.array_equal(p.q, adjacency(line_graph(k4_ordered())))

    @staticmethod
    def test_edgeless_graph_rejected():
        with pytest.raises(ValueError):
            build_qcbo(Graph(3))

    @staticmethod
    def test_asymmetric_matrix_rejected():
        with pytest.raises(ValueError):
            QcboProblem(np.array([[0, 1], [0, 0]]), ())

    @staticmethod
    def test_constraint_must_be_a_triangle():
        q = adjacency(Graph(3, ((0, 1), (1, 2))))
        with pytest.raises(ValueError):
            QcboProblem(q, ((0, 1, 2),))

    @staticmethod
    def test_constraints_are_canonical():
        q = adjacency(complete(3))
        p = QcboProblem(q, ((2, 0, 1), (1, 2, 0)))
        assert p.nae_constraints == ((0, 1, 2),)


class TestSpinHelpers:

    @staticmethod
    def test_known_k4_solution_is_feasible():
        p = build_qcbo(k4_ordered())
        assert check_solution(p, K4_SPINS)
        assert all(nae_holds(K4_SPINS, t) for t in p.nae_constraints)

    @staticmethod
    def test_all_equal_spins_violate():
        p = build_qcbo(k4_ordered())
        assert not check_solution(p, (1,) * 6)
        assert not nae_holds((1, 1, 1), (0, 1, 2))

    @staticmethod
    def test_nae_over_all_sign_patterns():
        for x in itertools.product((-1, 1), repeat=3):
            not_all_equal = len(set(x)) == 2
            assert nae_holds(x, (0, 1, 2)) == not_all_equal
            assert (abs(sum(x)) == 1) == not_all_equal

    @staticmethod
    def test_bad_length_or_values():
        p = build_qcbo(k4_ordered())
        assert not check_solution(p, (1, -1))
        assert not check_solution(p, (0, 1, 1, -1, -1, -1))

    @staticmethod
    def test_binary_conversion():
        assert spins_to_binary((-1, 1, 1)) == (0, 1, 1)
        assert binary_to_spins((0, 1, 1)) == (-1, 1, 1)


class TestSolver:

    @staticmethod
    @pytest.mark.parametrize("name, params, solvable", [
        ("path", [5], True),
        ("cycle", [5], True),
        ("wheel", [4], True),
        ("wheel", [5], False),
        ("wheel", [6], False),
        ("hex_lattice", [2, 3], True),
        ("tutte", [], True),
        ("goldner_harary", [], False),
        ("herschel", [], True),
        ("medial_herschel", [], True),
        ("petersen", [], True),
        ("complete", [3], True),
        ("complete", [4], True),
        ("complete", [5], True),
        ("complete", [6], False),
        ("complete", [7], False),
    ])
    def test_decision_table_verdicts(name, params, solvable):
        g = resolve_graph(name, params)
        solution = solve_qcbo(build_qcbo(g))
        assert solution.status is (QcboStatus.FEASIBLE if solvable else QcboStatus.INFEASIBLE)
        if solvable:
            assert check_solution(build_qcbo(g), solution.spins)
            assert solution.objective == spin_objective(build_qcbo(g).q, solution.spins)

    @staticmethod
    def test_degree_five_vertex_forces_infeasibility():
        assert solve_qcbo(build_qcbo(catalog_build("star", [5]))).status is QcboStatus.INFEASIBLE
        assert solve_qcbo(build_qcbo(catalog_build("star", [4]))).status is QcboStatus.FEASIBLE

    @staticmethod
    def test_six_clique_of_constraints_is_infeasible():
        q = adjacency(complete(6))
        triples = tuple(itertools.combinations(range(6), 3))
        assert len(triples) == 20
        assert solve_qcbo(QcboProblem(q, triples)).status is QcboStatus.INFEASIBLE

    @staticmethod
    def test_budget_gives_unknown():
        solution = solve_qcbo(build_qcbo(complete(7)), budget=1)
        assert solution.status is QcboStatus.UNKNOWN
        assert solution.spins is None
        assert not solution.feasible

    @staticmethod
    def test_optimize_finds_global_minimum_on_k4():
        p = build_qcbo(k4_ordered())
        solution = solve_qcbo(p, optimize=True)
        assert solution.feasible
        assert solution.objective == brute_force(p)[1]

    @staticmethod
    def test_matches_exhaustive_reference():
        rng = random.Random(5)
        checked = 0
        while checked < 200:
            g = random_graph(rng, rng.randint(3, 8), 0.5)
            if not 1 <= g.m <= 16:
                continue
            p = build_qcbo(g)
            feasible, best = brute_force(p)

            found = solve_qcbo(p)
            assert found.feasible == feasible
            if feasible:
                assert check_solution(p, found.spins)
                optimum = solve_qcbo(p, optimize=True)
                assert optimum.objective == best
            checked += 1

    @staticmethod
    def test_feasibility_matches_enumeration_up_to_twenty_variables():
        rng = random.Random(20)
        checked = 0
        while checked < 25:
            g = random_graph(rng, rng.randint(7, 9), 0.5)
            if not 17 <= g.m <= 20:
                continue
            p = build_qcbo(g)
            feasible, _ = brute_force(p, objective=False)
            found = solve_qcbo(p)
            assert found.feasible == feasible
            if feasible:
                assert check_solution(p, found.spins)
            checked += 1

    @staticmethod
    def test_long_path_does_not_exhaust_the_stack():
        p = build_qcbo(catalog_build("path", [1500]))
        solution = solve_qcbo(p)
        assert solution.status is QcboStatus.FEASIBLE
        assert solution.spins == (1,) * 1499

    @staticmethod
    def test_optimize_deep_search_stops_at_budget():
        # 第一個葉節點在第 1500 個節點，交錯的最佳解還需要約 1500 個節點
        p = build_qcbo(catalog_build("path", [1500]))
        solution = solve_qcbo(p, optimize=True, budget=1_600)
        assert solution.status is QcboStatus.UNKNOWN
        assert solution.nodes_explored == 1_601

    @staticmethod
    def test_deterministic():
        p = build_qcbo(catalog_build("petersen"))
        assert solve_qcbo(p) == solve_qcbo(p)


class TestQubo:

    @staticmethod
    def test_coefficients():
        p = build_qcbo(k4_ordered())
        form = to_qubo(p)
        assert np.array_equal(form.quadratic, 4 * p.q)
        assert np.array_equal(form.linear, -4 * p.q.sum(axis=1))
        assert form.constant == int(p.q.sum())
        assert form.constraints == p.nae_constraints

    @staticmethod
    def test_objective_preserved_under_substitution():
        rng = random.Random(1000)
        checked = 0
        while checked < 1000:
            g = random_graph(rng, rng.randint(2, 6), 0.5)
            if not 1 <= g.m <= 10:
                continue
            p = build_qcbo(g)
            form = to_qubo(p)
            ys = binary_rows(p.m).astype(np.int64)
            xs = 2 * ys - 1
            spin_values = np.einsum("ri,ij,rj->r", xs, p.q, xs)
            binary_values = np.einsum("ri,ij,rj->r", ys, form.quadratic, ys) + ys @ form.linear + form.constant
            assert np.array_equal(spin_values, binary_values)
            checked += 1

    @staticmethod
    def test_six_variable_instance_all_assignments():
        rng = random.Random(64)
        q = np.zeros((6, 6), dtype=np.int64)
        for i, j in itertools.combinations(range(6), 2):
            q[i, j] = q[j, i] = rng.randint(-3, 3)
        form = to_qubo(QcboProblem(q, ()))
        assignments = list(itertools.product((0, 1), repeat=6))
        assert len(assignments) == 64
        for y in assignments:
            assert qubo_objective(form, y) == spin_objective(q, binary_to_spins(y))

    @staticmethod
    def test_two_variable_examples():
        form = to_qubo(QcboProblem(np.array([[0, 1], [1, 0]]), ()))
        assert qubo_objective(form, (1, 1)) == spin_objective(np.array([[0, 1], [1, 0]]), (1, 1)) == 2
        assert qubo_objective(form, (1, 0)) == spin_objective(np.array([[0, 1], [1, 0]]), (1, -1)) == -2


class TestFormats:

    @staticmethod
    def test_json_round_trip():
        p = build_qcbo(wheel(4))
        assert problem_from_json(problem_to_json(p)) == p

    @staticmethod
    def test_json_wrong_format():
        with pytest.raises(ValueError):
            problem_from_json('{"format": "other"}')

    @staticmethod
    def test_lp_sections():
        text = export_lp(build_qcbo(k4_ordered()), name="k4")
        lines = text.splitlines()
        assert lines[1] == "Minimize"
        assert lines[2].startswith(" obj: + 24 - 16 y0")
        assert lines[2].endswith("] / 2")
        assert "Subject To" in lines
        assert sum(1 for line in lines if line.startswith(" nae")) == 8
        assert " nae0: 1 <= y0 + y1 + y4 <= 2" in lines
        assert lines[-2] == " y0 y1 y2 y3 y4 y5"
        assert lines[-1] == "End"

    @staticmethod
    @pytest.mark.parametrize("name, params", [("k4", []), ("wheel", [4]), ("petersen", []), ("path", [2])])
    def test_lp_is_parse_stable(name, params):
        p = build_qcbo(catalog_build(name, params))
        form = to_qubo(p)
        parsed = read_lp(export_lp(p))
        assert np.array_equal(parsed.quadratic, form.quadratic)
        assert np.array_equal(parsed.linear, form.linear)
        assert parsed.constant == form.constant
        assert parsed.constraints == form.constraints

    @staticmethod
    def test_lp_bad_row():
        text = export_lp(build_qcbo(k4_ordered())).replace("<= 2", "<= 3", 1)
        with pytest.raises(LpFormatError):
            read_lp(text)
