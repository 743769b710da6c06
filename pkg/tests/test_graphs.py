import random

import pytest
from hypothesis import given, settings, strategies as st

from cuspcalc.chains import LinearChain, adjoint, star, tw
from cuspcalc.cusps import CharacteristicSequence, resolution_graph
from cuspcalc.graphs import (
    ContractionStuck, CycleError, DegreeError, DualGraph, NotContractible, Vertex,
    WeightError, blow_down, blow_up, chain_graph, chain_shrinks_to_zero,
    contract_to_point, shrink_chain, simulate_contraction,
)
from oracles import admissible_chains, char_sequences


def test_blow_down_middle_of_chain():
    g = blow_down(chain_graph([3, 1, 2]), 1)
    assert g.ids == [0, 2]
    assert g.adjacent(0, 2)
    assert g.as_chain() == LinearChain([2, 1])


def test_blow_down_single_vertex():
    g = blow_down(DualGraph((Vertex(7, -1),)), 7)
    assert len(g) == 0


def test_blow_down_two_neighbours():
    g = blow_down(chain_graph([2, 1, 2]), 1)
    assert g.as_chain() == LinearChain([1, 1])
    assert g.adjacent(0, 2)
    assert chain_shrinks_to_zero([3], [2, 2])


def test_blow_down_errors_are_distinct():
    with pytest.raises(WeightError):
        blow_down(chain_graph([2, 2]), 0)
    star_graph = DualGraph(
        (Vertex(0, -1), Vertex(1, -2), Vertex(2, -2), Vertex(3, -2)),
        frozenset({(0, 1), (0, 2), (0, 3)}))
    with pytest.raises(DegreeError):
        blow_down(star_graph, 0)
    assert not issubclass(WeightError, DegreeError)
    assert not issubclass(DegreeError, CycleError)


def test_forest_invariant_enforced():
    with pytest.raises(CycleError):
        DualGraph((Vertex(0, -1), Vertex(1, -2), Vertex(2, -2)),
                  frozenset({(0, 1), (1, 2), (0, 2)}))
    with pytest.raises(ValueError):
        DualGraph((Vertex(0, -1),), frozenset({(0, 0)}))
    with pytest.raises(ValueError):
        DualGraph.from_dict({"vertices": [{"id": 0, "weight": -1}, {"id": 1, "weight": -2}],
                             "edges": [[0, 1], [1, 0]]})


def test_blow_up_inverts_blow_down():
    g = chain_graph([3, 2])
    g2, new = blow_up(g, (0, 1))
    assert g2.weight(new) == -1 and g2.weight(0) == -4 and g2.weight(1) == -3
    assert blow_down(g2, new) == g
    g3, new = blow_up(g, 1)
    assert g3.degree(new) == 1
    assert blow_down(g3, new) == g


def test_contract_cusp_tree():
    tree = DualGraph((Vertex(1, -3, "E1"), Vertex(2, -2, "E2"), Vertex(3, -1, "E3")),
                     frozenset({(1, 3), (3, 2)}))
    trace = contract_to_point(tree)
    assert len(trace) == 3
    assert trace.steps[-1].to_point
    assert trace.replay(tree) == DualGraph()


def test_contract_zero_vertex_is_stuck():
    with pytest.raises(ContractionStuck):
        contract_to_point(DualGraph((Vertex(0, 0),)))


def test_contract_short_chain():
    trace = contract_to_point(chain_graph([2, 1]))
    assert [s.vertex for s in trace.steps] == [1, 0]


def test_contract_rejects_empty_or_disconnected():
    with pytest.raises(ValueError):
        contract_to_point(DualGraph())
    with pytest.raises(ValueError):
        contract_to_point(DualGraph((Vertex(0, -1), Vertex(1, -1))))


def test_last_step_counts_as_subdivisional():
    trace = contract_to_point(chain_graph([3, 1, 2]))
    assert trace.steps[-1].kind == "subdivisional"
    assert trace.blow_up_kinds[0] == "subdivisional"


@pytest.mark.parametrize("a, b, target, n", [
    ([4], [2], 2, 1),
    ([3], [], 2, 1),
])
def test_shrink_chain_examples(a, b, target, n):
    assert shrink_chain(a, b, target) == n


def test_shrink_chain_failure():
    with pytest.raises(NotContractible):
        shrink_chain([2], [2], 2)


@pytest.mark.parametrize("a, b, expected", [
    ([3], [2, 2], True),
    ([2], [2], True),
    ([3], [3], False),
])
def test_shrinks_to_zero_examples(a, b, expected):
    assert chain_shrinks_to_zero(a, b) is expected


def test_shrinks_to_zero_matches_adjoint_small():
    chains = list(admissible_chains(3, 4))
    for A in chains:
        for B in chains:
            assert chain_shrinks_to_zero(A, B) == (LinearChain(A) == adjoint(B))


def _sprouting_then_subdivisional(kinds):
    seen_sub = False
    for k in kinds:
        if k == "subdivisional":
            seen_sub = True
        elif seen_sub:
            return False
    return True


def test_shrink_chain_recovers_sprouting_count():
    bs = [LinearChain(b) for b in admissible_chains(3, 4)] + [LinearChain()]
    for a in range(1, 5):
        for n in range(1, 5):
            for B in bs:
                A = star(star([a], tw(n)), adjoint(B)) if B else star([a], tw(n))
                assert shrink_chain(A, B, a) == n
                g = chain_graph(A + (1,) + B)
                trace = simulate_contraction(g, stop_at=1, protect={0})
                kinds = trace.blow_up_kinds
                assert kinds[:n] == ["sprouting"] * n
                assert _sprouting_then_subdivisional(kinds)


def _random_exceptional_tree(rng, size):
    """Blow up a point repeatedly at random smooth points or nodes."""
    g = DualGraph((Vertex(0, -1),))
    for _ in range(size - 1):
        if g.edges and rng.random() < 0.5:
            g, _ = blow_up(g, rng.choice(sorted(g.edges)))
        else:
            g, _ = blow_up(g, rng.choice(g.ids))
    return g


def _orders_agree(g, rng, tries=5):
    try:
        contract_to_point(g)
        base = True
    except ContractionStuck:
        base = False
    for _ in range(tries):
        try:
            contract_to_point(g, rng=rng)
            ok = True
        except ContractionStuck:
            ok = False
        assert ok == base
    return base


def test_confluence_on_random_blow_up_trees():
    rng = random.Random(20261018)
    for _ in range(150):
        g = _random_exceptional_tree(rng, rng.randint(1, 12))
        assert _orders_agree(g, rng)


def test_confluence_on_perturbed_trees():
    rng = random.Random(7)
    verdicts = set()
    for _ in range(150):
        g = _random_exceptional_tree(rng, rng.randint(2, 10))
        v = rng.choice(g.vertices)
        shift = rng.choice([-1, 0, 1])
        bumped = tuple(Vertex(u.id, u.weight + shift if u.id == v.id else u.weight)
                       for u in g.vertices)
        verdicts.add(_orders_agree(DualGraph(bumped, g.edges), rng))
    assert verdicts == {True, False}


def test_confluence_on_resolution_graphs():
    rng = random.Random(3)
    graphs = [resolution_graph(CharacteristicSequence(c)).assembled
              for c in char_sequences(8, 30)][:120]
    assert len(graphs) >= 100
    for g in graphs:
        assert _orders_agree(g, rng, tries=2)


def test_intermediate_graphs_stay_forests():
    rng = random.Random(11)
    for _ in range(50):
        g = _random_exceptional_tree(rng, rng.randint(1, 10))
        trace = contract_to_point(g, rng=rng)
        cur = g
        for step in trace.steps:
            cur = blow_down(cur, step.vertex)
            assert len(cur.edges) == len(cur) - len(cur.components())
        assert len(cur) == 0


edge_st = st.lists(st.integers(-5, 3), min_size=1, max_size=8)


@settings(max_examples=60)
@given(edge_st, st.data())
def test_json_round_trip(weights, data):
    n = len(weights)
    edges = frozenset((data.draw(st.integers(0, i - 1)), i) for i in range(1, n))
    labels = [data.draw(st.one_of(st.none(), st.text(max_size=4))) for _ in range(n)]
    g = DualGraph(tuple(Vertex(i * 3, w, lab) for i, (w, lab) in enumerate(zip(weights, labels))),
                  frozenset((u * 3, v * 3) for u, v in edges))
    assert DualGraph.from_json(g.to_json()) == g
    assert g.to_dict() == DualGraph.from_dict(g.to_dict()).to_dict()


def test_dot_export():
    dot = chain_graph([3, 1, 2]).to_dot()
    assert dot.startswith("graph G {")
    assert '1 [label="*"];' in dot
    assert '0 [label="-3"];' in dot
    assert "0 -- 1;" in dot and dot.rstrip().endswith("}")
