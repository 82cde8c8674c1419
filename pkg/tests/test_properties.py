"""
Randomised checks over small seeded instances

Each instance has at most 20 variables, scopes of arity at most 3 and
weights in [-100, 100]. Width checks use instances of at most 10 variables.
"""

import random

import networkx as nx
import pytest

from src.graphwidth import (
    Hypergraph,
    MinorCertificate,
    PathDecomposition,
    exact_pathwidth,
    named_primal_graph,
    pathwidth_layout,
    validate_decomposition,
    validate_minor,
)
from src.search import replay, rule_variants, run_ascent, trace_is_consistent
from src.vcsp import (
    Assignment,
    Constraint,
    InstanceBuilder,
    VcspInstance,
    evaluate,
    flip_delta,
    improving_moves,
    is_local_peak,
    naive_improving_moves,
)

SEEDS = range(1000)


def random_instance(seed, max_vars=20):
    rng = random.Random(seed)
    d = rng.randint(1, max_vars)
    builder = InstanceBuilder(d)
    for _ in range(rng.randint(0, 2 * d)):
        scope = rng.sample(range(d), rng.randint(1, min(3, d)))
        builder.add(scope, rng.randint(-100, 100))
    return builder.build()


def random_assignment(rng, d):
    return Assignment(tuple(rng.randint(0, 1) for _ in range(d)))


def order_decomposition(graph, order):
    """Bins of a vertex order: each vertex plus placed vertices with later neighbours"""
    bins = []
    placed = set()
    for v in order:
        frontier = [u for u in order if u in placed and set(graph[u]) - placed]
        bins.append(tuple(frontier + [v]))
        placed.add(v)
    return PathDecomposition(tuple(bins))


def random_branch_sets(rng, graph, t):
    vertices = list(graph.nodes)
    rng.shuffle(vertices)
    chosen = vertices[: rng.randint(t, len(vertices))]
    sets = [[v] for v in chosen[:t]]
    for v in chosen[t:]:
        rng.choice(sets).append(v)
    return MinorCertificate(tuple(tuple(s) for s in sets), t)


class TestFlipDeltas:
    def test_delta_is_fitness_difference(self):
        for seed in SEEDS:
            instance = random_instance(seed)
            x = random_assignment(random.Random(seed), instance.num_vars)
            base = evaluate(instance, x)
            for v in range(instance.num_vars):
                expected = evaluate(instance, x.flip(v)) - base
                assert flip_delta(instance, x, v) == expected, seed

    def test_improving_moves_match_naive_scan(self):
        for seed in SEEDS:
            instance = random_instance(seed)
            x = random_assignment(random.Random(seed), instance.num_vars)
            naive = naive_improving_moves(instance, x)
            assert improving_moves(instance, x) == naive, seed

    def test_delta_ignores_constraints_without_the_variable(self):
        for seed in SEEDS:
            instance = random_instance(seed)
            rng = random.Random(seed)
            x = random_assignment(rng, instance.num_vars)
            v = rng.randrange(instance.num_vars)
            local = VcspInstance(
                instance.num_vars,
                [
                    Constraint(c.scope, c.weight if v in c.scope else 0)
                    for c in instance.constraints
                ],
            )
            assert flip_delta(local, x, v) == flip_delta(instance, x, v), seed

    def test_peaks_have_no_better_neighbour(self):
        for seed in SEEDS:
            instance = random_instance(seed)
            x = random_assignment(random.Random(seed), instance.num_vars)
            fitness = evaluate(instance, x)
            no_better = all(evaluate(instance, y) <= fitness for y in x.neighbors())
            assert is_local_peak(instance, x) == no_better, seed


class TestRandomAscents:
    def test_traces_replay_to_a_peak(self):
        for seed in SEEDS:
            instance = random_instance(seed)
            rng = random.Random(seed)
            start = random_assignment(rng, instance.num_vars)
            rule = rng.choice(rule_variants(seed))
            trace = run_ascent(instance, start, rule)
            assert replay(trace) == trace.end, seed
            assert trace_is_consistent(instance, trace), seed
            assert is_local_peak(instance, trace.end), seed


class TestWidthPairings:
    def test_layout_is_valid_and_optimal(self):
        for seed in SEEDS:
            instance = random_instance(seed, max_vars=10)
            graph = named_primal_graph(instance)
            _, pd = pathwidth_layout(graph)
            report = validate_decomposition(Hypergraph.from_instance(instance), pd)
            assert report.valid, (seed, report.violations)
            assert report.width == exact_pathwidth(graph), seed

    def test_accepted_decomposition_bounds_pathwidth_above(self):
        for seed in SEEDS:
            instance = random_instance(seed, max_vars=10)
            rng = random.Random(seed)
            hypergraph = Hypergraph.from_instance(instance)
            graph = named_primal_graph(instance)
            order = list(graph.nodes)
            rng.shuffle(order)
            pd = order_decomposition(graph, order)
            candidates = [pd, pd.without_bin(rng.randrange(len(pd.bins)))]
            width = exact_pathwidth(graph)
            for candidate in candidates:
                report = validate_decomposition(hypergraph, candidate)
                if report.valid:
                    assert width <= report.width, seed
            assert validate_decomposition(hypergraph, pd).valid, seed

    def test_accepted_minor_bounds_pathwidth_below(self):
        for seed in SEEDS:
            instance = random_instance(seed, max_vars=10)
            rng = random.Random(seed)
            graph = named_primal_graph(instance)
            width = exact_pathwidth(graph)
            clique = max(nx.find_cliques(graph), key=len)
            certificates = [MinorCertificate(tuple((v,) for v in clique), len(clique))]
            for t in range(2, graph.number_of_nodes() + 1):
                certificates.append(random_branch_sets(rng, graph, t))
            assert validate_minor(graph, certificates[0]).valid, seed
            for cert in certificates:
                if validate_minor(graph, cert).valid:
                    assert width >= cert.target - 1, (seed, cert)

    def test_pathwidth_ignores_vertex_names(self):
        for seed in SEEDS:
            instance = random_instance(seed, max_vars=10)
            rng = random.Random(seed)
            graph = named_primal_graph(instance)
            names = list(graph.nodes)
            shuffled = names[:]
            rng.shuffle(shuffled)
            relabelled = nx.relabel_nodes(graph, dict(zip(names, shuffled)))
            assert exact_pathwidth(relabelled) == exact_pathwidth(graph), seed


@pytest.mark.slow
def test_improving_moves_on_every_chain_assignment(chain2):
    for code in range(1 << chain2.num_vars):
        x = Assignment.from_int(code, chain2.num_vars)
        assert improving_moves(chain2, x) == naive_improving_moves(chain2, x), str(x)
