"""Cusp encodings and the dual graph of the minimal embedded resolution.

Three equivalent descriptions of the topological type of a cusp are handled:
characteristic sequences ``(a0; a1, ..., ak)``, multiplicity sequences and
Puiseux pairs.  :func:`resolution_graph` turns a characteristic sequence into
the chains ``A_i``, ``B_i`` of the resolution and assembles the exceptional
tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import groupby
from math import gcd

from .chains import LinearChain, adjoint, format_chain, star, tw
from .graphs import DualGraph, Vertex

__all__ = [
    "CharacteristicSequence",
    "CuspResolutionGraph",
    "EuclidTable",
    "MultiplicitySequence",
    "NotRealizable",
    "PuiseuxPairs",
    "char_from_mult",
    "char_from_puiseux",
    "euclid_decompose",
    "format_mult",
    "local_invariants",
    "mult_from_char",
    "parse_char",
    "parse_mult",
    "puiseux_from_char",
    "resolution_graph",
]


class NotRealizable(ValueError):
    """No characteristic sequence produces the given multiplicity sequence."""


# -- characteristic sequences ----------------------------------------------

@dataclass(frozen=True)
class CharacteristicSequence:
    alphas: tuple[int, ...]

    def __post_init__(self):
        alphas = tuple(int(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if len(alphas) < 2:
            raise ValueError("characteristic sequence needs at least (a0; a1)")
        a0, a1 = alphas[0], alphas[1]
        if a0 < 2:
            raise ValueError(f"a0 = {a0} must be >= 2")
        if a1 <= a0:
            raise ValueError(f"a1 = {a1} must exceed a0 = {a0}")
        if a1 % a0 == 0:
            raise ValueError(f"a1 = {a1} must not be divisible by a0 = {a0}")
        g = a0
        for prev, a in zip(alphas, alphas[1:]):
            if a <= prev:
                raise ValueError(f"sequence must be strictly increasing ({prev} then {a})")
            if gcd(g, a) >= g:
                raise ValueError(f"{a} does not lower the running gcd {g}")
            g = gcd(g, a)
        if g != 1:
            raise ValueError(f"gcd of the sequence is {g}, not 1")

    @property
    def k(self) -> int:
        return len(self.alphas) - 1

    @property
    def gcds(self) -> list[int]:
        """Running gcds ``gcd(a0..ai)`` for ``i = 0..k``."""
        out, g = [], 0
        for a in self.alphas:
            g = gcd(g, a)
            out.append(g)
        return out

    def __str__(self) -> str:
        a = self.alphas
        return f"({a[0]};" + ",".join(str(x) for x in a[1:]) + ")"


def parse_char(text: str) -> CharacteristicSequence:
    m = re.fullmatch(r"\s*\(\s*(\d+)\s*;\s*([\d\s,]+)\)\s*", text)
    if not m:
        raise ValueError(f"characteristic sequence must look like '(4;6,7)': {text!r}")
    rest = [int(x) for x in m.group(2).split(",") if x.strip()]
    return CharacteristicSequence((int(m.group(1)), *rest))


@dataclass(frozen=True)
class EuclidTable:
    """Per cluster ``i``: quotients ``a[i][j]`` and remainders ``m[i][j]`` (0-based j)."""

    gammas: tuple[int, ...]
    a: tuple[tuple[int, ...], ...]
    m: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.a)

    def check(self) -> None:
        """Assert every division identity of the table."""
        for i, (gamma, a, m) in enumerate(zip(self.gammas, self.a, self.m)):
            if i and m[0] != self.m[i - 1][-1]:
                raise AssertionError("clusters are not chained by their last remainder")
            dividends = (gamma,) + m[:-1]
            for j, (x, q) in enumerate(zip(dividends, a)):
                rem = m[j + 1] if j + 1 < len(m) else 0
                if x != q * m[j] + rem or not 0 <= rem < m[j]:
                    raise AssertionError(f"division identity fails at ({i + 1},{j + 1})")
        if self.m[-1][-1] != 1:
            raise AssertionError("last remainder must be 1")


def _euclid(gamma: int, m1: int) -> tuple[list[int], list[int]]:
    quotients, remainders = [], [m1]
    x, y = gamma, m1
    while True:
        q, r = divmod(x, y)
        quotients.append(q)
        if r == 0:
            return quotients, remainders
        remainders.append(r)
        x, y = y, r


def euclid_decompose(ch: CharacteristicSequence) -> EuclidTable:
    alphas = ch.alphas
    gammas, rows_a, rows_m = [], [], []
    m1 = alphas[0]
    for prev, cur in zip(alphas, alphas[1:]):
        gamma = cur - prev
        q, r = _euclid(gamma, m1)
        gammas.append(gamma)
        rows_a.append(tuple(q))
        rows_m.append(tuple(r))
        m1 = r[-1]
    table = EuclidTable(tuple(gammas), tuple(rows_a), tuple(rows_m))
    table.check()
    return table


# -- multiplicity sequences ------------------------------------------------

@dataclass(frozen=True)
class MultiplicitySequence:
    """Multiplicities of a cusp over all blow-ups, trailing 1's included."""

    full: tuple[int, ...]

    def __post_init__(self):
        full = tuple(int(x) for x in self.full)
        object.__setattr__(self, "full", full)
        if not full or full[0] < 2:
            raise ValueError("multiplicity sequence must start with an entry >= 2")
        if any(x < 1 for x in full):
            raise ValueError("multiplicities must be positive")
        if any(x < y for x, y in zip(full, full[1:])):
            raise ValueError("multiplicity sequence must be non-increasing")

    @property
    def written(self) -> tuple[int, ...]:
        out = list(self.full)
        while out and out[-1] == 1:
            out.pop()
        return tuple(out)

    @classmethod
    def from_written(cls, written) -> "MultiplicitySequence":
        """Complete a display-form sequence with the unique realizable run of 1's."""
        written = tuple(int(x) for x in written)
        if not written or written[0] < 2:
            raise ValueError("multiplicity sequence must start with an entry >= 2")
        found = []
        for t in range(written[0] + 1):
            cand = written + (1,) * t
            if any(x < y for x, y in zip(cand, cand[1:])):
                continue
            try:
                _char_from_full(cand)
            except NotRealizable:
                continue
            found.append(cand)
        if not found:
            raise NotRealizable(f"{format_mult(written)} is not the multiplicity sequence of a cusp")
        if len(found) > 1:
            raise NotRealizable(f"{format_mult(written)} has several realizable completions")
        return cls(found[0])

    def __str__(self) -> str:
        return format_mult(self.written)


def format_mult(seq, compact: bool = True) -> str:
    """``(4,2,2)``; with ``compact`` runs of three or more use ``m_k``."""
    parts = []
    for value, run in groupby(seq):
        count = len(list(run))
        if compact and count >= 3:
            parts.append(f"{value}_{count}")
        else:
            parts.extend([str(value)] * count)
    return "(" + ",".join(parts) + ")"


def parse_mult(text: str, *, full: bool = False) -> MultiplicitySequence:
    """Parse ``"(4,2,2)"`` or ``"(2_3)"``; by default the input is the written form."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"multiplicity sequence must be parenthesized: {text!r}")
    values = []
    for part in s[1:-1].split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)(?:_(\d+))?", part)
        if not m:
            raise ValueError(f"bad multiplicity entry {part!r} in {text!r}")
        values.extend([int(m.group(1))] * int(m.group(2) or 1))
    if full:
        ms = MultiplicitySequence(values)
        char_from_mult(ms)
        return ms
    return MultiplicitySequence.from_written(values)


def mult_from_char(ch: CharacteristicSequence) -> MultiplicitySequence:
    table = euclid_decompose(ch)
    seq = [ch.alphas[0]]
    for a_row, m_row in zip(table.a, table.m):
        for count, value in zip(a_row, m_row):
            seq.extend([value] * count)
    return MultiplicitySequence(seq)


def _char_from_full(full) -> CharacteristicSequence:
    """Run the Euclidean algorithm backwards over the runs of ``full``."""
    seq = list(full)
    pos = 1

    def run_length(value):
        n = 0
        while pos + n < len(seq) and seq[pos + n] == value:
            n += 1
        return n

    alphas = [seq[0]]
    m1 = seq[0]
    while m1 > 1:
        a1 = run_length(m1)
        pos += a1
        if pos >= len(seq):
            raise NotRealizable("sequence ends before the gcd reaches 1")
        prev_m, cur_m = m1, seq[pos]
        gamma = a1 * m1 + cur_m
        while True:
            avail = run_length(cur_m)
            if prev_m % cur_m == 0:
                need = prev_m // cur_m
                if avail < need:
                    raise NotRealizable(
                        f"run of {cur_m}'s has length {avail}, needs {need}")
                pos += need
                break
            pos += avail
            rem = prev_m - avail * cur_m
            if not 0 < rem < cur_m or pos >= len(seq) or seq[pos] != rem:
                raise NotRealizable(f"run of {cur_m}'s does not fit the Euclidean algorithm")
            prev_m, cur_m = cur_m, rem
        alphas.append(alphas[-1] + gamma)
        m1 = cur_m
    if pos != len(seq):
        raise NotRealizable("entries left over after the gcd reached 1")
    return CharacteristicSequence(tuple(alphas))


def char_from_mult(ms: MultiplicitySequence) -> CharacteristicSequence:
    ch = _char_from_full(ms.full)
    if mult_from_char(ch).full != ms.full:
        raise AssertionError(f"inverse Euclid failed to reproduce {ms.full}")
    return ch


# -- Puiseux pairs ---------------------------------------------------------

@dataclass(frozen=True)
class PuiseuxPairs:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(q), int(p)) for q, p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("need at least one Puiseux pair")
        for q, p in pairs:
            if q < 2 or p < 1:
                raise ValueError(f"pair ({q},{p}) needs q >= 2 and p >= 1")
            if gcd(q, p) != 1:
                raise ValueError(f"pair ({q},{p}) is not coprime")

    def __str__(self) -> str:
        return "[" + ",".join(f"({q},{p})" for q, p in self.pairs) + "]"


def parse_puiseux(text: str) -> PuiseuxPairs:
    found = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
    if not found or re.sub(r"\(\s*\d+\s*,\s*\d+\s*\)|[\s,\[\]]", "", text):
        raise ValueError(f"Puiseux pairs must look like '[(2,3),(2,7)]': {text!r}")
    return PuiseuxPairs(tuple((int(q), int(p)) for q, p in found))


def puiseux_from_char(ch: CharacteristicSequence) -> PuiseuxPairs:
    g = ch.gcds
    return PuiseuxPairs(tuple((g[i - 1] // g[i], ch.alphas[i] // g[i])
                              for i in range(1, len(g))))


def char_from_puiseux(pp: PuiseuxPairs) -> CharacteristicSequence:
    a0 = reduce(lambda x, y: x * y, (q for q, _ in pp.pairs))
    alphas, prod = [a0], 1
    for q, p in pp.pairs:
        prod *= q
        alphas.append(p * (a0 // prod))
    try:
        return CharacteristicSequence(tuple(alphas))
    except ValueError as exc:
        raise ValueError(f"Puiseux pairs {pp} give no valid characteristic sequence: {exc}") from None


# -- resolution graph ------------------------------------------------------

def _cluster_chains(a: tuple[int, ...]) -> tuple[LinearChain, LinearChain]:
    """Chains ``A_i``, ``B_i`` from the quotients of one Euclid cluster."""
    n = len(a)
    # a[0] is the first quotient, which may be 0
    a_factors = [tw(a[0] + 1)]
    for j in range(1, n):
        if j % 2 == 1:
            a_factors.append(LinearChain([a[j]]))
        elif j == n - 1:
            a_factors.append(tw(a[j]))
        else:
            a_factors.append(tw(a[j] + 1))
    A = reduce(star, a_factors)

    if n == 2:
        return A, tw(a[1] - 1)
    # from the last quotient down to a[1]; the two ends take tw(x), not tw(x + 1)
    b_factors = []
    for j in range(n - 1, 0, -1):
        if j % 2 == 0:
            b_factors.append(LinearChain([a[j]]))
        elif j == 1 or j == n - 1:
            b_factors.append(tw(a[j]))
        else:
            b_factors.append(tw(a[j] + 1))
    return A, reduce(star, b_factors)


@dataclass(frozen=True)
class CuspResolutionGraph:
    char: CharacteristicSequence
    A: tuple[LinearChain, ...]
    B: tuple[LinearChain, ...]
    o: tuple[int, ...]
    assembled: DualGraph
    d0: int

    @property
    def g(self) -> int:
        return len(self.A)

    @property
    def vertex_count(self) -> int:
        return len(self.assembled)

    def to_dict(self) -> dict:
        return {
            "char": str(self.char),
            "g": self.g,
            "A": [list(c) for c in self.A],
            "B": [list(c) for c in self.B],
            "o": list(self.o),
            "d0": self.d0,
            "graph": self.assembled.to_dict(),
        }


def _sprouting_count(A: LinearChain, B: LinearChain) -> int:
    """The unique ``o`` with ``A == tw(o) * adjoint(B)``."""
    bstar = adjoint(B)
    o = len(A) - len(bstar) + 1
    if o < 1 or star(tw(o), bstar) != A:
        raise AssertionError(f"A = {format_chain(A)} is not tw(o) * adjoint({format_chain(B)})")
    return o


def _assemble(A, B) -> tuple[DualGraph, int]:
    verts, edges = [], []
    next_id = 0

    def add(weight, label):
        nonlocal next_id
        verts.append(Vertex(next_id, weight, label))
        next_id += 1
        return next_id - 1

    spine = []
    heads = []
    for i, chain in enumerate(A, start=1):
        ids = [add(-x, f"A{i}.{j}") for j, x in enumerate(chain, start=1)]
        heads.append(ids[0])
        spine.extend(ids)
    d0 = add(-1, "D0")
    spine.append(d0)
    edges.extend(zip(spine, spine[1:]))

    g = len(A)
    for i, chain in enumerate(B, start=1):
        ids = [add(-x, f"B{i}.{j}") for j, x in enumerate(chain, start=1)]
        root = d0 if i == g else heads[i]
        edges.append((root, ids[0]))
        edges.extend(zip(ids, ids[1:]))
    return DualGraph(tuple(verts), frozenset(edges)), d0


def resolution_graph(ch: CharacteristicSequence) -> CuspResolutionGraph:
    table = euclid_decompose(ch)
    As, Bs, os_ = [], [], []
    for a in table.a:
        A, B = _cluster_chains(a)
        if not (A.is_admissible() and B.is_admissible()):
            raise AssertionError(f"non-admissible chains {A}, {B} from quotients {a}")
        o = _sprouting_count(A, B)
        if adjoint(A) != B + (o + 1,):
            raise AssertionError(f"adjoint({A}) != [{B}, {o + 1}]")
        if max(A) < 3:
            raise AssertionError(f"A = {A} has no entry >= 3")
        As.append(A)
        Bs.append(B)
        os_.append(o)
    graph, d0 = _assemble(As, Bs)
    expected = sum(1 for _ in mult_from_char(ch).full)
    if len(graph) != expected:
        raise AssertionError(f"{len(graph)} vertices but {expected} blow-ups")
    return CuspResolutionGraph(ch, tuple(As), tuple(Bs), tuple(os_), graph, d0)


def local_invariants(ms: MultiplicitySequence) -> dict[str, int]:
    """``delta`` (sum of m(m-1)/2) and ``sum_sq`` (sum of m^2) over the full sequence."""
    return {
        "delta": sum(m * (m - 1) // 2 for m in ms.full),
        "sum_sq": sum(m * m for m in ms.full),
    }
