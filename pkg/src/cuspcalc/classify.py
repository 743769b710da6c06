"""Numerical data of rational bicuspidal plane curves with (C')^2 = -1.

:func:`family_data` produces the four known families, the check functions
verify the arithmetic every such curve must satisfy, and
:func:`scan_candidates` searches small degrees for all data passing those
checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator

from .cusps import (
    CharacteristicSequence,
    MultiplicitySequence,
    _euclid,
    char_from_mult,
    format_mult,
    local_invariants,
    mult_from_char,
    parse_mult,
    resolution_graph,
)
from .graphs import DualGraph, Vertex, contract_to_point

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "FamilyParams",
    "NumericalData",
    "assemble_global_graph",
    "check_record",
    "exceptional_trees",
    "family_data",
    "family_instances",
    "family_written",
    "genus_check",
    "match_family",
    "parse_numerical_data",
    "scan_candidates",
    "strict_transform_selfint",
]

DEFAULT_MAX_DEGREE = 9

FAMILY_MIN_B = {1: 2, 2: 2, 3: 3, 4: 3}


@dataclass(frozen=True)
class NumericalData:
    degree: int
    cusps: tuple[MultiplicitySequence, MultiplicitySequence]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        cusps = tuple(self.cusps)
        if len(cusps) != 2:
            raise ValueError("bicuspidal data needs exactly two cusps")
        for ms in cusps:
            char_from_mult(ms)
            if ms.full[0] > self.degree:
                raise ValueError(f"cusp {ms} has multiplicity above the degree {self.degree}")
        # unordered pair: keep the larger sequence first
        object.__setattr__(self, "cusps", tuple(sorted(cusps, key=lambda m: m.full, reverse=True)))

    def __str__(self) -> str:
        return f"d={self.degree} {{{','.join(str(c) for c in self.cusps)}}}"


def parse_numerical_data(text: str) -> NumericalData:
    """Parse ``"d=5 {(3),(2_3)}"``."""
    s = text.strip()
    head, sep, rest = s.partition("{")
    head = head.strip().replace(" ", "")
    if not sep or not rest.rstrip().endswith("}") or not head.startswith("d="):
        raise ValueError(f"numerical data must look like 'd=5 {{(3),(2_3)}}': {text!r}")
    try:
        degree = int(head[2:])
    except ValueError:
        raise ValueError(f"bad degree in {text!r}") from None
    body = rest.rstrip()[:-1]
    parts = [p.strip() + ")" for p in body.split(")") if p.strip(" ,")]
    parts = [p.lstrip(" ,") for p in parts]
    if len(parts) != 2:
        raise ValueError(f"expected exactly two cusps in {text!r}")
    return NumericalData(degree, (parse_mult(parts[0]), parse_mult(parts[1])))


@dataclass(frozen=True)
class FamilyParams:
    family: int
    a: int
    b: int

    def __post_init__(self):
        if self.family not in FAMILY_MIN_B:
            raise ValueError(f"family must be 1..4, got {self.family}")
        if self.a < 1:
            raise ValueError(f"a must be >= 1, got {self.a}")
        if self.b < FAMILY_MIN_B[self.family]:
            raise ValueError(f"family {self.family} needs b >= {FAMILY_MIN_B[self.family]}, got {self.b}")


def _runs(*parts) -> tuple[int, ...]:
    out = []
    for value, count in parts:
        out.extend([value] * count)
    return tuple(out)


def family_written(p: FamilyParams) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Degree and the two sequences exactly as tabulated (1's from ``b - 1`` kept)."""
    a, b = p.a, p.b
    if p.family == 1:
        return (2 * a * b + b - 1,
                _runs((a * b + b - 1, 1), (a * b - 1, 1), (b, a - 1), (b - 1, 1)),
                _runs((a * b, 2), (b, a)))
    if p.family == 2:
        return (2 * a * b + b + 1,
                _runs((a * b + b, 1), (a * b, 1), (b, a)),
                _runs((a * b + 1, 2), (b, a)))
    if p.family == 3:
        return (2 * a * b + 1,
                _runs((a * b + 1, 1), (a * b - b + 1, 1), (b, a - 1)),
                _runs((a * b, 2), (b, a)))
    return (2 * a * b + 2 * b - 1,
            _runs((a * b + b, 1), (a * b, 1), (b, a)),
            _runs((a * b + b - 1, 2), (b, a), (b - 1, 1)))


def family_data(p: FamilyParams) -> NumericalData:
    degree, first, second = family_written(p)
    return NumericalData(degree, (MultiplicitySequence.from_written(first),
                                  MultiplicitySequence.from_written(second)))


def family_instances(max_a: int, max_b: int) -> Iterator[FamilyParams]:
    for family, min_b in FAMILY_MIN_B.items():
        for a in range(1, max_a + 1):
            for b in range(min_b, max_b + 1):
                yield FamilyParams(family, a, b)


def match_family(nd: NumericalData) -> list[FamilyParams]:
    """All table rows and parameters that produce ``nd``."""
    hits = []
    for family, min_b in FAMILY_MIN_B.items():
        for a in range(1, nd.degree + 1):
            for b in range(min_b, nd.degree + 1):
                p = FamilyParams(family, a, b)
                if family_written(p)[0] == nd.degree and family_data(p) == nd:
                    hits.append(p)
    return hits


def genus_check(nd: NumericalData) -> bool:
    d = nd.degree
    return (d - 1) * (d - 2) // 2 == sum(local_invariants(c)["delta"] for c in nd.cusps)


def strict_transform_selfint(nd: NumericalData) -> int:
    return nd.degree ** 2 - sum(local_invariants(c)["sum_sq"] for c in nd.cusps)


def assemble_global_graph(nd: NumericalData) -> DualGraph:
    """Dual graph of the total transform: both resolution trees joined through C'.

    Raises ``ContractionStuck`` if either exceptional tree fails to contract.
    """
    verts, edges, d0s = [], set(), []
    offset = 0
    for idx, ms in enumerate(nd.cusps, start=1):
        res = resolution_graph(char_from_mult(ms))
        g = res.assembled.relabel(offset, prefix=f"P{idx}:")
        verts.extend(g.vertices)
        edges |= g.edges
        d0s.append(res.d0 + offset)
        offset += len(g)
    c = offset
    verts.append(Vertex(c, strict_transform_selfint(nd), "C'"))
    edges |= {(d0s[0], c), (d0s[1], c)}
    graph = DualGraph(tuple(verts), frozenset(edges))
    for tree in exceptional_trees(graph):
        trace = contract_to_point(tree)
        if len(trace) != len(tree):
            raise AssertionError("contraction step count differs from vertex count")
    return graph


def exceptional_trees(graph: DualGraph) -> list[DualGraph]:
    """The components left after removing the vertex labelled ``C'``."""
    cv = [v.id for v in graph.vertices if v.label == "C'"]
    rest = graph.without(cv)
    return [rest.subgraph(comp) for comp in rest.components()]


def check_record(nd: NumericalData) -> dict:
    """JSON-ready summary of the checks on one datum."""
    return {
        "degree": nd.degree,
        "cusps_written": [list(c.written) for c in nd.cusps],
        "cusps_full": [list(c.full) for c in nd.cusps],
        "genus_ok": genus_check(nd),
        "c_prime_sq": strict_transform_selfint(nd),
    }


# -- scanning --------------------------------------------------------------

def _cluster_delta(gamma: int, m1: int) -> tuple[int, int]:
    """Delta contributed by one Euclid cluster, and the gcd it leaves."""
    quotients, remainders = _euclid(gamma, m1)
    delta = sum(q * m * (m - 1) // 2 for q, m in zip(quotients, remainders))
    return delta, remainders[-1]


def _cusps_up_to(max_mult: int, max_delta: int) -> list[tuple[int, MultiplicitySequence]]:
    """All cusps with multiplicity <= max_mult and delta <= max_delta, with their delta."""
    found = []

    def extend(alphas, g, delta):
        if g == 1:
            found.append((delta, mult_from_char(CharacteristicSequence(tuple(alphas)))))
            return
        nxt = alphas[-1]
        while True:
            nxt += 1
            c_delta, h = _cluster_delta(nxt - alphas[-1], g)
            # cluster delta grows with the gap, so the first overshoot ends the loop
            if delta + c_delta > max_delta:
                break
            if h < g:
                extend(alphas + [nxt], h, delta + c_delta)

    for a0 in range(2, max_mult + 1):
        base = a0 * (a0 - 1) // 2
        if base <= max_delta:
            extend([a0], a0, base)
    return found


def scan_candidates(max_degree: int, *, bound: int = DEFAULT_MAX_DEGREE) -> list[NumericalData]:
    """Every bicuspidal datum of degree <= max_degree passing the genus and (C')^2 = -1 tests.

    Results are sorted by degree, then cusp sequences.  Data outside the
    known families are returned as well; use :func:`match_family` to tell
    them apart.
    """
    if max_degree > bound:
        raise ValueError(f"max_degree {max_degree} exceeds the scan bound {bound}")
    out = []
    for d in range(1, max_degree + 1):
        genus = (d - 1) * (d - 2) // 2
        cusps = _cusps_up_to(d - 1, genus)
        for (delta1, m1), (delta2, m2) in combinations_with_replacement(
                sorted(cusps, key=lambda t: (t[0], t[1].full)), 2):
            if delta1 + delta2 != genus:
                continue
            nd = NumericalData(d, (m1, m2))
            if strict_transform_selfint(nd) == -1:
                out.append(nd)
    return sorted(set(out), key=lambda nd: (nd.degree, [c.full for c in nd.cusps]))

