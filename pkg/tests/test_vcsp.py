"""
Tests for instances, assignments, evaluation and flip deltas
"""

import random

import pytest

from src.constructions import CdParams, build_cd_chain
from src.errors import (
    ArithmeticOverflow,
    InvalidInstance,
    InvalidVariable,
    LengthMismatch,
)
from src.vcsp import (
    INT64_MAX,
    Assignment,
    Constraint,
    InstanceBuilder,
    VarLabel,
    VcspInstance,
    evaluate,
    evaluate_straight,
    flip_delta,
    improving_moves,
    is_local_peak,
    naive_improving_moves,
    primal_graph,
)


def random_assignments(d, count, seed=0):
    rng = random.Random(seed)
    return [
        Assignment(tuple(rng.randint(0, 1) for _ in range(d))) for _ in range(count)
    ]


class TestAssignment:
    def test_string_and_int_agree_on_bit_order(self):
        x = Assignment.from_string("1000_0001")
        assert len(x) == 8
        assert x[0] == 1 and x[7] == 1
        assert x.to_int() == 0b10000001
        assert Assignment.from_int(0b10000001, 8) == x
        assert str(x) == "10000001"

    def test_flip_and_neighbors(self):
        x = Assignment.zeros(3)
        assert str(x.flip(1)) == "010"
        assert [str(y) for y in x.neighbors()] == ["100", "010", "001"]

    def test_flip_outside_raises(self):
        with pytest.raises(InvalidVariable):
            Assignment.zeros(3).flip(3)

    def test_rejects_non_bits(self):
        with pytest.raises(InvalidInstance):
            Assignment.from_string("0102")


class TestInstance:
    def test_builder_merges_repeated_scopes(self):
        instance = InstanceBuilder(2).add([0], 3).add([0], -1).add([1, 0], 5).build()
        assert len(instance.constraints) == 2
        assert instance.weight_of([0]) == 2
        assert instance.weight_of([0, 1]) == 5

    def test_duplicate_scope_rejected(self):
        with pytest.raises(InvalidInstance):
            VcspInstance(2, [Constraint((0, 1), 1), Constraint((1, 0), 2)])

    def test_scope_must_reference_variables(self):
        with pytest.raises(InvalidInstance):
            VcspInstance(2, [Constraint((0, 2), 1)])

    @pytest.mark.parametrize("scope", [(), (1, 1), (-1,)])
    def test_bad_scopes(self, scope):
        with pytest.raises(InvalidInstance):
            Constraint(scope, 1)

    def test_weight_must_fit_64_bits(self):
        with pytest.raises(ArithmeticOverflow):
            Constraint((0,), INT64_MAX + 1)

    def test_shared_labels_rejected(self):
        with pytest.raises(InvalidInstance):
            VcspInstance(2, [], {0: VarLabel(1, "1"), 1: VarLabel(1, "1")})

    def test_index_and_neighbors(self, chain2):
        assert chain2.index_is_consistent()
        top_one = chain2.var_by_label(2, "1")
        names = {chain2.vertex_name(u) for u in chain2.neighbors(top_one)}
        assert names == {"2.2", "2.4", "2.B"}

    def test_dict_document(self, chain2):
        document = chain2.to_dict()
        assert document["meta"]["generator"] == "cd-chain"
        assert VcspInstance.from_dict(document) == chain2

    def test_malformed_document(self):
        with pytest.raises(InvalidInstance):
            VcspInstance.from_dict({"num_vars": 2, "constraints": [{"scope": [0]}]})


class TestEvaluation:
    def test_matches_straight_evaluation_on_every_assignment(self):
        instance = build_cd_chain(CdParams.square(1))
        for code in range(1 << instance.num_vars):
            x = Assignment.from_int(code, instance.num_vars)
            assert evaluate(instance, x) == evaluate_straight(instance, x)

    def test_flip_delta_is_fitness_difference(self, chain2):
        for x in random_assignments(chain2.num_vars, 40):
            base = evaluate(chain2, x)
            for v in range(chain2.num_vars):
                assert flip_delta(chain2, x, v) == evaluate(chain2, x.flip(v)) - base

    def test_improving_moves_match_naive_scan(self, chain2):
        for x in random_assignments(chain2.num_vars, 40, seed=1):
            assert improving_moves(chain2, x) == naive_improving_moves(chain2, x)

    def test_length_mismatch(self, chain2):
        with pytest.raises(LengthMismatch):
            evaluate(chain2, Assignment.zeros(3))

    def test_flip_delta_rejects_bad_variable(self, chain2):
        with pytest.raises(InvalidVariable):
            flip_delta(chain2, Assignment.zeros(16), 16)

    def test_fitness_overflow_detected(self):
        instance = InstanceBuilder(2).add([0], INT64_MAX).add([1], INT64_MAX).build()
        with pytest.raises(ArithmeticOverflow):
            evaluate(instance, Assignment.from_string("11"))

    def test_negative_unaries_peak_only_at_zero(self, smooth3):
        assert is_local_peak(smooth3, Assignment.zeros(3))
        assert not is_local_peak(smooth3, Assignment.from_string("100"))


class TestPrimalGraph:
    def test_binary_weights_and_names(self):
        instance = InstanceBuilder(3).add([0, 1], -4).add([0, 1, 2], 2).build()
        graph = primal_graph(instance)
        assert set(graph.edges) == {(0, 1), (0, 2), (1, 2)}
        assert graph.edges[0, 1]["weight"] == -4
        assert "weight" not in graph.edges[1, 2]
        assert graph.nodes[2]["name"] == "v2"
