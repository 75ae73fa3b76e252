"""Finite topological spaces stored as families of open bit masks.

Points are ``0..n-1`` and a subset is an ``int`` whose bit ``p`` marks point ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DegenerateSpace, InvalidInput


def to_mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        if p < 0:
            raise InvalidInput(f"negative point index {p}")
        m |= 1 << p
    return m


def to_points(mask: int) -> list[int]:
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return out


def _bits_slow(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


_BIT_TABLE = tuple(tuple(_bits_slow(m)) for m in range(1 << 10))


def iter_bits(mask: int) -> Iterable[int]:
    """Set bit positions of ``mask`` in increasing order."""
    if mask < 1024:
        return _BIT_TABLE[mask]
    return _bits_slow(mask)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class FinTopSpace:
    n_points: int
    opens: tuple[int, ...]
    _open_set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n_points <= 0:
            raise DegenerateSpace("a space needs at least one point")
        object.__setattr__(self, "_open_set", frozenset(self.opens))
        full = self.full
        if 0 not in self._open_set or full not in self._open_set:
            raise InvalidInput("open family must contain the empty set and the whole space")
        for a in self.opens:
            if a & ~full:
                raise InvalidInput(f"open set {to_points(a)} has points outside the space")
        # Lattice closure check is quadratic; fine at the sizes this package targets.
        for a in self.opens:
            for b in self.opens:
                if (a | b) not in self._open_set or (a & b) not in self._open_set:
                    raise InvalidInput("open family is not closed under union and intersection")

    @property
    def full(self) -> int:
        return (1 << self.n_points) - 1

    def is_open(self, s: int) -> bool:
        return s in self._open_set

    @cached_property
    def min_opens(self) -> tuple[int, ...]:
        out = []
        for p in range(self.n_points):
            m = self.full
            bit = 1 << p
            for o in self.opens:
                if o & bit:
                    m &= o
            assert m in self._open_set
            out.append(m)
        return tuple(out)

    @cached_property
    def nonempty_opens(self) -> tuple[int, ...]:
        return tuple(o for o in self.opens if o)

    @cached_property
    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << self.n_points


def _close(n_points: int, family: Iterable[int]) -> tuple[int, ...]:
    full = (1 << n_points) - 1
    opens = {0, full, *family}
    frontier = set(opens)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in list(opens):
                for c in (a | b, a & b):
                    if c not in opens:
                        fresh.add(c)
        opens |= fresh
        frontier = fresh
    return tuple(sorted(opens))


def make_space(n_points: int, generators: Iterable = ()) -> FinTopSpace:
    """Topology on ``n_points`` points generated by ``generators`` under finite unions and intersections.

    Generators may be bit masks or iterables of point indices.
    """
    if n_points <= 0:
        raise DegenerateSpace("a space needs at least one point")
    full = (1 << n_points) - 1
    masks = []
    for g in generators:
        m = g if isinstance(g, int) else to_mask(g)
        if m & ~full:
            raise InvalidInput(f"generator {to_points(m)} is not a subset of the points")
        masks.append(m)
    return FinTopSpace(n_points, _close(n_points, masks))


def discrete_space(n_points: int) -> FinTopSpace:
    if n_points <= 0:
        raise DegenerateSpace("a space needs at least one point")
    return FinTopSpace(n_points, tuple(range(1 << n_points)))


def indiscrete_space(n_points: int) -> FinTopSpace:
    return make_space(n_points, ())


def interior(space: FinTopSpace, s: int) -> int:
    """Largest open contained in ``s``."""
    out = 0
    for m in space.min_opens:
        if m & ~s == 0:
            out |= m
    return out


def min_open(space: FinTopSpace, p: int) -> int:
    if not 0 <= p < space.n_points:
        raise InvalidInput(f"point {p} out of range")
    return space.min_opens[p]


def all_topologies(n_points: int) -> list[FinTopSpace]:
    """Every topology on ``n_points`` labelled points (feasible for n <= 4)."""
    full = (1 << n_points) - 1
    proper = [m for m in range(1, full)]
    found = []
    for pick in range(1 << len(proper)):
        fam = {0, full}
        for i, m in enumerate(proper):
            if pick >> i & 1:
                fam.add(m)
        if all((a | b) in fam and (a & b) in fam for a in fam for b in fam):
            found.append(FinTopSpace(n_points, tuple(sorted(fam))))
    return found


def random_space(n_points: int, rng, n_generators: int | None = None) -> FinTopSpace:
    """Topology generated by a few random subsets drawn from ``rng`` (a ``random.Random``)."""
    full = (1 << n_points) - 1
    if n_generators is None:
        n_generators = rng.randint(0, n_points + 1)
    return make_space(n_points, [rng.randint(0, full) for _ in range(n_generators)])
