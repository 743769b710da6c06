"""Weighted linear chains of rational curves.

A chain ``[a1, ..., ar]`` lists the negated self-intersections of the curves
in order, so the entry ``a`` stands for a ``(-a)``-curve.  Everything here is
integer arithmetic; inductances are returned as :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

__all__ = [
    "LinearChain",
    "adjoint",
    "adjoint_by_inductance",
    "chain_from_inductance",
    "discriminant",
    "drop_first",
    "drop_last",
    "format_chain",
    "inductance",
    "parse_chain",
    "reverse",
    "star",
    "star_power",
    "tw",
]


class LinearChain(tuple):
    """Immutable ordered tuple of integer weights.

    Entries may be any integers so that intermediate chains produced while
    contracting (``[1]``, ``[0]``) remain representable; only admissible
    chains are accepted by :func:`inductance` and :func:`adjoint`.
    """

    __slots__ = ()

    def __new__(cls, entries=()):
        items = tuple(entries)
        for a in items:
            if isinstance(a, bool) or not isinstance(a, int):
                raise TypeError(f"chain entries must be integers, got {a!r}")
        return super().__new__(cls, items)

    @property
    def r(self) -> int:
        return len(self)

    def is_admissible(self) -> bool:
        return len(self) > 0 and all(a >= 2 for a in self)

    def __add__(self, other):
        if isinstance(other, LinearChain):
            return _trusted(tuple.__add__(self, other))
        return LinearChain(tuple(self) + tuple(other))

    def __radd__(self, other):
        return LinearChain(tuple(other) + tuple(self))

    def __getitem__(self, key):
        item = super().__getitem__(key)
        if isinstance(key, slice):
            return _trusted(item)
        return item

    def __repr__(self) -> str:
        return f"LinearChain({format_chain(self)})"

    def __str__(self) -> str:
        return format_chain(self)


def _trusted(items: tuple) -> LinearChain:
    # items already known to be ints
    return tuple.__new__(LinearChain, items)


def _as_chain(chain) -> LinearChain:
    return chain if isinstance(chain, LinearChain) else LinearChain(chain)


def _require_admissible(chain: LinearChain, what: str = "chain") -> None:
    if not chain.is_admissible():
        raise ValueError(f"{what} {format_chain(chain)} is not admissible "
                         "(must be non-empty with every entry >= 2)")


def format_chain(chain) -> str:
    return "[" + ",".join(str(a) for a in chain) + "]"


def parse_chain(text: str, *, allow_nonpositive: bool = False) -> LinearChain:
    """Parse ``"[2,3,4]"`` (whitespace tolerated); ``"[]"`` is the empty chain.

    Entries below 1 are rejected unless ``allow_nonpositive`` is set.
    """
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"chain must be written in square brackets: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return LinearChain()
    try:
        entries = [int(part) for part in body.split(",")]
    except ValueError:
        raise ValueError(f"chain entries must be integers: {text!r}") from None
    if not allow_nonpositive and any(a < 1 for a in entries):
        raise ValueError(f"chain entries must be >= 1: {text!r}")
    return LinearChain(entries)


def reverse(chain) -> LinearChain:
    return LinearChain(reversed(tuple(chain)))


def drop_first(chain) -> LinearChain:
    chain = _as_chain(chain)
    if not chain:
        raise ValueError("cannot drop from the empty chain")
    return chain[1:]


def drop_last(chain) -> LinearChain:
    chain = _as_chain(chain)
    if not chain:
        raise ValueError("cannot drop from the empty chain")
    return chain[:-1]


def tw(n: int) -> LinearChain:
    """The chain ``[2, ..., 2]`` of length ``n``."""
    if n < 0:
        raise ValueError(f"tw(n) needs n >= 0, got {n}")
    return _trusted((2,) * n)


def discriminant(chain) -> int:
    """Determinant of the negated intersection matrix; 1 for the empty chain."""
    # continuant recurrence read from the right: d(A) = a1 d(A') - d(A'')
    prev, cur = 0, 1
    for a in reversed(tuple(chain)):
        prev, cur = cur, a * cur - prev
    return cur


def inductance(chain) -> Fraction:
    chain = _as_chain(chain)
    _require_admissible(chain)
    return Fraction(discriminant(chain[1:]), discriminant(chain))


def chain_from_inductance(q) -> LinearChain:
    """Inverse of :func:`inductance` via the Hirzebruch-Jung expansion of ``1/q``."""
    q = Fraction(q)
    if not 0 < q < 1:
        raise ValueError(f"inductance must lie strictly between 0 and 1, got {q}")
    num, den = q.denominator, q.numerator
    entries = []
    while den:
        c = -(-num // den)
        entries.append(c)
        num, den = den, c * den - num
    return LinearChain(entries)


def star(a, b) -> LinearChain:
    """``[a_1..a_{r-1}, a_r + b_1 - 1, b_2..b_s]``."""
    a, b = _as_chain(a), _as_chain(b)
    if not a or not b:
        raise ValueError("star product needs two non-empty chains")
    return _trusted(tuple(a[:-1]) + (a[-1] + b[0] - 1,) + tuple(b[1:]))


def star_power(chain, n: int) -> LinearChain:
    if n < 1:
        raise ValueError(f"star_power needs n >= 1, got {n}")
    return reduce(star, [_as_chain(chain)] * n)


def adjoint(chain) -> LinearChain:
    """Adjoint chain, computed as ``tw(a_r - 1) * ... * tw(a_1 - 1)``."""
    chain = _as_chain(chain)
    _require_admissible(chain)
    return reduce(star, (tw(a - 1) for a in reversed(chain)))


def adjoint_by_inductance(chain) -> LinearChain:
    """Adjoint from its definition ``e^-1(1 - e(reverse(chain)))``.

    Slower than :func:`adjoint`; kept as an independent cross-check.
    """
    chain = _as_chain(chain)
    _require_admissible(chain)
    return chain_from_inductance(1 - inductance(reverse(chain)))
