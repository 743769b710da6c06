"""Acceptance gate: one test per criterion, each timed against its budget.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion in
the terminal summary, or ``python3 tests/test_acceptance.py`` standalone.
"""

import random
from itertools import groupby
from math import gcd

from acceptance_log import criterion
from oracles import admissible_chains, char_sequences

from cuspcalc.chains import (LinearChain, adjoint, adjoint_by_inductance, discriminant,
                             drop_first, drop_last, star, tw)
from cuspcalc.classify import (assemble_global_graph, exceptional_trees, family_data,
                               family_instances, genus_check, scan_candidates,
                               strict_transform_selfint)
from cuspcalc.cusps import (CharacteristicSequence, char_from_mult, char_from_puiseux,
                            mult_from_char, puiseux_from_char, resolution_graph)
from cuspcalc.graphs import (ContractionStuck, DualGraph, Vertex, chain_graph,
                             contract_to_point, shrink_chain, simulate_contraction)


def test_criterion_1_adjoint_suite():
    with criterion(1, "adjoint identities, r <= 6, entries <= 5", limit=5):
        chains = [LinearChain(c) for c in admissible_chains(6, 5)]
        assert len(chains) == sum(4 ** r for r in range(1, 7))
        d = discriminant
        for A in chains:
            Astar = adjoint(A)
            assert adjoint(Astar) == A
            dA = d(A)
            assert dA == d(Astar)
            assert dA == d(drop_first(Astar)) + d(drop_last(A))
            assert gcd(dA, d(A[1:])) == 1
            if len(A) > 1:
                assert d(A[1:]) * d(A[:-1]) - dA * d(A[1:-1]) == 1


def _sprouting_then_subdivisional(kinds):
    tail = [k for k, _ in groupby(kinds)]
    return tail in ([], ["sprouting"], ["subdivisional"], ["sprouting", "subdivisional"])


def test_criterion_2_shrink_oracle():
    with criterion(2, "shrink-to-zero vs adjoint, r(A)+r(B) <= 8"):
        by_len = {r: [LinearChain(c) for c in admissible_chains(r, 4) if len(c) == r]
                  for r in range(1, 8)}
        pairs = disagreements = 0
        for ra in range(1, 8):
            for rb in range(1, 9 - ra):
                for B in by_len[rb]:
                    # definition-level adjoint, independent of the star formula
                    Bstar = adjoint_by_inductance(B)
                    for A in by_len[ra]:
                        pairs += 1
                        res = simulate_contraction(chain_graph(A + (1,) + B), stop_at=1).result
                        verdict = len(res) == 1 and res.vertices[0].weight == 0
                        disagreements += verdict != (A == Bstar)
        assert pairs == sum(3 ** ra * 3 ** rb for ra in range(1, 8) for rb in range(1, 9 - ra))
        assert disagreements == 0

        bs = [LinearChain(b) for b in admissible_chains(3, 4)] + [LinearChain()]
        for a in range(1, 5):
            for n in range(1, 5):
                for B in bs:
                    A = star(star([a], tw(n)), adjoint(B)) if B else star([a], tw(n))
                    assert shrink_chain(A, B, a) == n
                    trace = simulate_contraction(chain_graph(A + (1,) + B), stop_at=1, protect={0})
                    kinds = trace.blow_up_kinds
                    assert trace.sprouting_count == n
                    assert _sprouting_then_subdivisional(kinds), kinds


def test_criterion_3_conversions_and_resolution():
    with criterion(3, "char/mult/Puiseux round trips and resolution identities", limit=30):
        chars = [CharacteristicSequence(c) for c in char_sequences(12, 60)]
        assert len(chars) > 3000
        for c in chars:
            ms = mult_from_char(c)
            assert char_from_mult(ms) == c
            pp = puiseux_from_char(c)
            assert char_from_puiseux(pp) == c
            res = resolution_graph(c)
            for A, B, o in zip(res.A, res.B, res.o):
                assert A == star(tw(o), adjoint(B))
                assert adjoint(A) == B + (o + 1,)
                assert max(A) >= 3


def test_criterion_4_table_reproduction():
    with criterion(4, "families 1-4, a <= 4, b <= 7", limit=10):
        formulas = {1: lambda a, b: 2 * a * b + b - 1, 2: lambda a, b: 2 * a * b + b + 1,
                    3: lambda a, b: 2 * a * b + 1, 4: lambda a, b: 2 * a * b + 2 * b - 1}
        seen = []
        for p in family_instances(4, 7):
            nd = family_data(p)
            seen.append(str(nd))
            assert nd.degree == formulas[p.family](p.a, p.b)
            assert genus_check(nd)
            assert strict_transform_selfint(nd) == -1
            trees = exceptional_trees(assemble_global_graph(nd))
            assert len(trees) == 2
            for t in trees:
                assert len(contract_to_point(t)) == len(t)
        for spot in ["d=5 {(3),(2_3)}", "d=7 {(4,2,2),(3,3,2)}", "d=7 {(4),(3_3)}"]:
            assert spot in seen


def test_criterion_5_scan_and_simple_cusp():
    with criterion(5, "scan completeness to degree 7, (2;3) resolution"):
        found = set(scan_candidates(7))
        fams = [(p, family_data(p)) for p in family_instances(7, 7)]
        low = {nd for _, nd in fams if nd.degree <= 7}
        assert len(low) == 3
        assert {p.a for p, nd in fams if nd.degree <= 7} == {1}
        assert low <= found
        res = resolution_graph(CharacteristicSequence((2, 3)))
        assert res.A == (LinearChain([3]),) and res.B == (LinearChain([2]),)
        assert res.o == (1,)
        assert res.vertex_count == 3


def _verdict(g, rng=None):
    try:
        contract_to_point(g, rng=rng)
        return True
    except ContractionStuck:
        return False


def test_criterion_6_confluence():
    with criterion(6, "contraction verdict independent of order"):
        rng = random.Random(6)
        graphs = [resolution_graph(CharacteristicSequence(c)).assembled
                  for c in char_sequences(10, 40)]
        sample = rng.sample(graphs, 150)
        orders, verdicts = 0, set()
        for g in sample:
            # the graph itself, and a copy with one weight shifted, so both verdicts occur
            v = rng.choice(g.vertices)
            shift = rng.choice([-1, 1])
            bumped = DualGraph(tuple(Vertex(u.id, u.weight + (shift if u.id == v.id else 0), u.label)
                                     for u in g.vertices), g.edges)
            for h in (g, bumped):
                base = _verdict(h)
                verdicts.add(base)
                for _ in range(3):
                    assert _verdict(h, rng) == base
                    orders += 1
            assert _verdict(g)
        assert orders >= 100
        assert verdicts == {True, False}


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
