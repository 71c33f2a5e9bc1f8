from dataclasses import replace

import numpy as np
import pytest

from bbsolver.oracle import (
    ENUMERATION_CAP,
    JsspExactResult,
    exact_jssp,
    exact_maxcut,
    exact_qubo,
)
from bbsolver.qubo import (
    Graph,
    JsspInstance,
    Operation,
    QuboMatrix,
    encode_maxcut,
)

from _reference import brute_force_maxcut, brute_force_qubo, random_graph_edges


def random_qubo(rng, n, with_regularizer=False):
    q = np.triu(rng.normal(size=(n, n)))
    if with_regularizer:
        return QuboMatrix(n, q, reg_gamma=float(rng.uniform(0, 2)),
                          reg_target=int(rng.integers(0, n + 1)),
                          offset=float(rng.normal()))
    return QuboMatrix(n, q)


class TestExactQubo:
    def test_k2_maxcut(self):
        res = exact_qubo(encode_maxcut(Graph(2, ((0, 1),))))
        assert res.best_value == -1.0
        assert res.optima_count == 2
        assert res.best_x == (0, 1)  # lexicographically smallest optimum

    def test_zero_matrix(self):
        res = exact_qubo(QuboMatrix(3, np.zeros((3, 3))))
        assert res.best_value == 0.0
        assert res.optima_count == 8
        assert res.best_x == (0, 0, 0)

    def test_matches_direct_enumeration(self):
        rng = np.random.default_rng(21)
        for trial in range(20):
            n = int(rng.integers(2, 11))
            q = random_qubo(rng, n, with_regularizer=trial % 2 == 0)
            res = exact_qubo(q)
            value, count, argmin = brute_force_qubo(q)
            assert res.best_value == pytest.approx(value, abs=1e-8)
            assert res.optima_count == count
            assert res.best_x == argmin

    def test_offset_carries_through(self):
        q = QuboMatrix(2, np.zeros((2, 2)), offset=3.5)
        assert exact_qubo(q).best_value == 3.5

    def test_capacity_cap(self):
        with pytest.raises(ValueError, match="cap"):
            exact_qubo(QuboMatrix(ENUMERATION_CAP + 1, np.zeros((31, 31))))


class TestExactMaxcut:
    def test_triangle(self):
        res = exact_maxcut(Graph(3, ((0, 1), (0, 2), (1, 2))))
        assert res.best_value == 2.0

    def test_k4(self):
        g = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
        assert exact_maxcut(g).best_value == 4.0

    def test_matches_direct_enumeration(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            n = int(rng.integers(2, 9))
            g = Graph(n, random_graph_edges(n, 0.6, rng))
            res = exact_maxcut(g)
            value, count, argmax = brute_force_maxcut(n, g.edges)
            assert res.best_value == value
            assert res.optima_count == count
            assert res.best_x == argmax

    def test_agrees_with_qubo_route(self):
        rng = np.random.default_rng(55)
        for _ in range(50):
            g = Graph(10, random_graph_edges(10, 0.8, rng))
            direct = exact_maxcut(g)
            via_qubo = exact_qubo(encode_maxcut(g))
            assert direct.best_value == -via_qubo.best_value

    def test_capacity_cap(self):
        with pytest.raises(ValueError, match="cap"):
            exact_maxcut(Graph(31, ()))


class TestExactJssp:
    def test_toy_instance(self, toy_instance):
        res = exact_jssp(toy_instance)
        assert res.feasible
        assert res.makespan == 3
        assert res.optima_count == 1
        assert res.feasible_count == 1
        starts = {(op.job, op.op): op.start for op in res.schedule.ops}
        assert starts == {
            ("cupcakes", 0): 0,
            ("cupcakes", 1): 2,
            ("smoothie", 0): 2,
            ("lasagna", 0): 0,
        }

    def test_too_small_horizon_is_a_result(self, toy_instance):
        res = exact_jssp(replace(toy_instance, t_max=2))
        assert isinstance(res, JsspExactResult)
        assert not res.feasible
        assert res.makespan is None

    def test_roomier_horizon_same_optimum(self, toy_instance):
        res = exact_jssp(replace(toy_instance, t_max=4))
        assert res.feasible
        assert res.makespan == 3
        assert res.feasible_count > 1

    def test_single_operation(self):
        inst = JsspInstance(("a",), ((Operation("m", 1),),), ("m",), 1)
        res = exact_jssp(inst)
        assert res.feasible and res.makespan == 1

    def test_schedule_search_agrees_with_qubo_minimum(self, toy_instance):
        # With separating penalty weights, the generic QUBO scan and the
        # schedule-space search land on the same assignment.
        from bbsolver.qubo import encode_jssp

        q, _ = encode_jssp(toy_instance, (1.0, 2.0, 5.0, 1.0), gamma=1.0)
        assert exact_qubo(q).best_x == exact_jssp(toy_instance).best_x
