"""Finite-dimensional correspondences as multiplicity matrices, with their ideal calculus.

A correspondence over ``A = M_{d_0} + ... + M_{d_{k-1}}`` is fixed up to isomorphism by
a k x k matrix ``N``: ``N[i][j]`` copies of the elementary bimodule with left index ``i``
and right index ``j``. The spectrum of ``A`` is the discrete set ``0..k-1``, so ideals
are subsets, stored as bit masks. In the dual graph, ``N[i][j]`` edges run from ``j``
to ``i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .conditions import ConditionFlag
from .digraph import MultiDigraph, no_entrance_cycles
from .errors import (
    IdealNotInJX,
    InfiniteMultiplicity,
    InvalidInput,
    MultiplicityOverflow,
    NotInvariant,
)
from .fintop import discrete_space, is_subset, iter_bits, to_points

MAX_MULTIPLICITY = 2**63 - 1
_INFINITE_MARKERS = {"inf", "infinity", "infinite", "∞", "aleph0"}


def _check_entry(x) -> int:
    if isinstance(x, str) and x.strip().lower() in _INFINITE_MARKERS:
        raise InfiniteMultiplicity("infinite multiplicities are not supported")
    if isinstance(x, float) and math.isinf(x):
        raise InfiniteMultiplicity("infinite multiplicities are not supported")
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidInput(f"multiplicity {x!r} is not a nonnegative integer")
    if x < 0:
        raise InvalidInput(f"multiplicity {x} is negative")
    if x > MAX_MULTIPLICITY:
        raise MultiplicityOverflow(f"multiplicity {x} exceeds the machine-word range")
    return x


@dataclass(frozen=True)
class FinCorr:
    dims: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        dims = tuple(self.dims)
        k = len(dims)
        if k == 0:
            raise InvalidInput("the coefficient algebra needs at least one summand")
        for d in dims:
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                raise InvalidInput(f"dimension {d!r} must be a positive integer")
        if len(self.mult) != k or any(len(row) != k for row in self.mult):
            raise InvalidInput(f"multiplicity matrix must be {k}x{k}")
        mult = tuple(tuple(_check_entry(x) for x in row) for row in self.mult)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mult", mult)

    @classmethod
    def of(cls, mult: Sequence[Sequence[int]], dims: Sequence[int] | None = None) -> "FinCorr":
        k = len(mult)
        return cls(tuple(dims) if dims is not None else (1,) * k, tuple(tuple(r) for r in mult))

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def full(self) -> int:
        return (1 << self.k) - 1

    @cached_property
    def dual_graph(self) -> MultiDigraph:
        return MultiDigraph.from_matrix(discrete_space(self.k), self.mult)

    @cached_property
    def linear_dim(self) -> int:
        d = self.dims
        return sum(self.mult[i][j] * d[i] * d[j] for i in range(self.k) for j in range(self.k))

    @cached_property
    def _rows(self) -> tuple[int, ...]:
        # bit j of _rows[i] set iff N[i][j] > 0
        return tuple(sum(1 << j for j, x in enumerate(row) if x) for row in self.mult)


class TPair(NamedTuple):
    i: int
    i_prime: int


def dual_graph(c: FinCorr) -> MultiDigraph:
    return c.dual_graph


def ker_phi(c: FinCorr) -> int:
    return sum(1 << i for i, r in enumerate(c._rows) if not r)


def jx(c: FinCorr) -> int:
    return c.full & ~ker_phi(c)


def image_ideal(c: FinCorr, s: int) -> int:
    out = 0
    for i in iter_bits(s):
        out |= c._rows[i]
    return out


def preimage_ideal(c: FinCorr, s: int) -> int:
    return sum(1 << i for i, r in enumerate(c._rows) if is_subset(r, s))


def is_positively_invariant(c: FinCorr, s: int) -> bool:
    return is_subset(image_ideal(c, s), s)


def positively_invariant_ideals(c: FinCorr) -> list[int]:
    return [s for s in range(c.full + 1) if is_positively_invariant(c, s)]


def _matmul(a, b) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = sum(a[i][t] * b[t][j] for t in range(n))
            if x > MAX_MULTIPLICITY:
                raise MultiplicityOverflow("tensor power multiplicity exceeds the machine-word range")
            row.append(x)
        out.append(tuple(row))
    return tuple(out)


def identity_matrix(k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def tensor_power(c: FinCorr, n: int) -> FinCorr:
    if n < 0:
        raise InvalidInput("tensor power must be nonnegative")
    m = identity_matrix(c.k)
    for _ in range(n):
        m = _matmul(m, c.mult)
    return FinCorr(c.dims, m)


def sub_indices(s: int) -> list[int]:
    return to_points(s)


def compress_mask(s: int, t: int) -> int:
    """Re-index the subset ``t & s`` to positions inside the sub-spectrum ``s``."""
    out = 0
    for pos, i in enumerate(iter_bits(s)):
        if t >> i & 1:
            out |= 1 << pos
    return out


def _require_invariant(c: FinCorr, s: int) -> None:
    if not is_positively_invariant(c, s):
        raise NotInvariant(f"ideal {to_points(s)} is not positively invariant")


def restrict(c: FinCorr, s: int) -> FinCorr:
    """The correspondence ``IX`` over the ideal ``I`` given by ``s``."""
    _require_invariant(c, s)
    idx = to_points(s)
    if not idx:
        raise InvalidInput("cannot restrict to the zero ideal")
    return FinCorr(tuple(c.dims[i] for i in idx), tuple(tuple(c.mult[i][j] for j in idx) for i in idx))


def _permutation_order(m) -> int | None:
    k = len(m)
    perm = []
    for row in m:
        if sorted(row) != [0] * (k - 1) + [1]:
            return None
        perm.append(row.index(1))
    if sorted(perm) != list(range(k)):
        return None
    order = 1
    seen = [False] * k
    for start in range(k):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = math.lcm(order, length)
    return order


def cyclic_period(c: FinCorr, s: int) -> int | None:
    """Least n with ``(IX)^n`` isomorphic to ``I``, if any."""
    if not s:
        raise InvalidInput("the zero ideal has no period")
    return _permutation_order(restrict(c, s).mult)


def _require_in_jx(c: FinCorr, j: int) -> None:
    if not is_subset(j, jx(c)):
        raise IdealNotInJX(f"ideal {to_points(j)} is not contained in J_X = {to_points(jx(c))}")


def is_j_acyclic(c: FinCorr, j: int) -> ConditionFlag:
    """No nonzero positively invariant ideal inside ``j`` is cyclic.

    A cyclic invariant ideal restricts ``N`` to a permutation matrix, which is a union of
    cycles without entrances; so searching those cycles suffices.
    """
    _require_in_jx(c, j)
    cycles = no_entrance_cycles(c.dual_graph, j)
    if not cycles:
        return ConditionFlag(True)
    cyc = cycles[0]
    return ConditionFlag(False, {"ideal": list(cyc.vertices), "period": len(cyc.vertices)})


def j_acyclic_by_enumeration(c: FinCorr, j: int) -> ConditionFlag:
    """Scan every nonzero subset of ``j``; reference implementation for small ``k``."""
    _require_in_jx(c, j)
    if c.k > 16:
        raise InvalidInput("subset enumeration is limited to 16 summands")
    for s in range(1, j + 1):
        if is_subset(s, j) and is_positively_invariant(c, s):
            p = cyclic_period(c, s)
            if p is not None:
                return ConditionFlag(False, {"ideal": to_points(s), "period": p})
    return ConditionFlag(True)


def quasi_nilpotent(c: FinCorr) -> bool:
    reach = c.dual_graph.skel.reach
    return not any(r >> v & 1 for v, r in enumerate(reach))


def j_of_ideal(c: FinCorr, s: int) -> int:
    _require_invariant(c, s)
    return s | (c.full & ~preimage_ideal(c, s))


def t_pairs(c: FinCorr, j: int) -> list[TPair]:
    """T-pairs ``(I, I')`` with ``J`` inside ``I'``; they index the gauge-invariant ideals."""
    _require_in_jx(c, j)
    out = []
    for s in positively_invariant_ideals(c):
        top = j_of_ideal(c, s)
        low = s | j
        if not is_subset(low, top):
            continue
        free = top & ~low
        sub = free
        # every s' with low <= s' <= top
        while True:
            out.append(TPair(s, low | sub))
            if not sub:
                break
            sub = (sub - 1) & free
    out.sort()
    return out


def gauge_ideal_count(c: FinCorr, j: int) -> int:
    return len(t_pairs(c, j))
