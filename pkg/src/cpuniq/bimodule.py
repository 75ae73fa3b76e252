"""Explicit matrix realization of a small correspondence, used as a reference.

``A`` is realized as block-diagonal ``D x D`` matrices. ``X`` is realized as
``R x D`` matrices with one row band per elementary summand ``(i, j, t)``; the band
has ``d_i`` rows and is supported on the columns of block ``j``. Then ``a . x`` is
multiplication by a block-diagonal ``R x R`` matrix, ``x . b`` is ``x @ b``, and
``<x, y> = x^T y`` lands in ``A`` because bands never mix.

Every ideal-level answer here comes from ranks of explicit linear maps, with no use of
the matrix formulas in :mod:`cpuniq.corr`.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .corr import FinCorr
from .errors import InvalidInput


def _rank(vectors) -> int:
    """Exact rank over the rationals."""
    rows = {v.tobytes(): v for v in vectors if np.any(v)}
    if not rows:
        return 0
    m = np.array(list(rows.values()))
    m = m[:, np.any(m, axis=0)]
    return DomainMatrix([[ZZ(int(x)) for x in r] for r in m], m.shape, ZZ).convert_to(ZZ.get_field()).rank()


class ExplicitCorrespondence:
    def __init__(self, c: FinCorr, max_dim: int = 64):
        if c.linear_dim > max_dim:
            raise InvalidInput("instance too large for the explicit construction")
        self.c = c
        d = c.dims
        self.offsets = np.cumsum((0,) + d)[:-1].tolist()
        self.D = sum(d)
        bands = []  # (left index, right index, first row)
        row = 0
        for i in range(c.k):
            for j in range(c.k):
                for _ in range(c.mult[i][j]):
                    bands.append((i, j, row))
                    row += d[i]
        self.bands = bands
        self.R = row

    def _a_unit(self, i, a, b) -> np.ndarray:
        m = np.zeros((self.D, self.D), dtype=np.int64)
        o = self.offsets[i]
        m[o + a, o + b] = 1
        return m

    @cached_property
    def a_basis(self) -> list[tuple[int, np.ndarray]]:
        d = self.c.dims
        return [(i, self._a_unit(i, a, b)) for i in range(self.c.k) for a in range(d[i]) for b in range(d[i])]

    @cached_property
    def x_basis(self) -> list[np.ndarray]:
        d = self.c.dims
        out = []
        for i, j, row in self.bands:
            o = self.offsets[j]
            for a in range(d[i]):
                for b in range(d[j]):
                    m = np.zeros((self.R, self.D), dtype=np.int64)
                    m[row + a, o + b] = 1
                    out.append(m)
        return out

    def left(self, a: np.ndarray) -> np.ndarray:
        """The operator phi(a) on X as an R x R matrix."""
        out = np.zeros((self.R, self.R), dtype=np.int64)
        d = self.c.dims
        for i, _, row in self.bands:
            o = self.offsets[i]
            out[row:row + d[i], row:row + d[i]] = a[o:o + d[i], o:o + d[i]]
        return out

    def block(self, i: int, m: np.ndarray) -> np.ndarray:
        o, di = self.offsets[i], self.c.dims[i]
        return m[o:o + di, o:o + di]

    def ideal_basis(self, s: int) -> list[np.ndarray]:
        return [m for i, m in self.a_basis if s >> i & 1]

    def support(self, elements) -> int:
        """Blocks on which some element of the list is nonzero."""
        out = 0
        for m in elements:
            for i in range(self.c.k):
                if np.any(self.block(i, m)):
                    out |= 1 << i
        return out

    def dual_multiplicity(self, i: int, j: int) -> int:
        """dim of p_i X q_j for minimal projections p_i, q_j."""
        p = self.left(self._a_unit(i, 0, 0))
        q = self._a_unit(j, 0, 0)
        return _rank([(p @ x @ q).ravel() for x in self.x_basis])

    def ker_phi(self) -> int:
        # a is in ker phi iff phi(a) = 0; the kernel is spanned by whole blocks
        return sum(1 << i for i in range(self.c.k) if not np.any(self.left(self._a_unit(i, 0, 0))))

    def image_ideal(self, s: int) -> int:
        """Support of span <X, phi(I) X>."""
        prods = []
        for a in self.ideal_basis(s):
            la = self.left(a)
            for x in self.x_basis:
                ax = la @ x
                if not np.any(ax):
                    continue
                prods.extend(y.T @ ax for y in self.x_basis)
        return self.support(prods)

    def _mod_ideal(self, m: np.ndarray, s: int) -> np.ndarray:
        m = m.copy()
        for i in range(self.c.k):
            if s >> i & 1:
                o, di = self.offsets[i], self.c.dims[i]
                m[o:o + di, o:o + di] = 0
        return m

    def _kernel_blocks(self, images) -> int:
        """Blocks i all of whose matrix units lie in the kernel of a linear map on A.

        ``images`` maps a basis index of A to the flattened image vector; the kernel of a
        linear map is read off from the rank of the images of block i's units together
        with all units outside block i.
        """
        full_rank = _rank([images[t] for t in range(len(self.a_basis))])
        out = 0
        for i in range(self.c.k):
            rest = [images[t] for t, (bi, _) in enumerate(self.a_basis) if bi != i]
            if _rank(rest) == full_rank and all(
                not np.any(images[t]) for t, (bi, _) in enumerate(self.a_basis) if bi == i
            ):
                out |= 1 << i
        return out

    def preimage_ideal(self, s: int) -> int:
        """X^{-1}(I) = {a : <x, a y> in I for all x, y}."""
        images = []
        for _, a in self.a_basis:
            la = self.left(a)
            vec = [self._mod_ideal(x.T @ la @ y, s).ravel() for x in self.x_basis for y in self.x_basis]
            images.append(np.concatenate(vec) if vec else np.zeros(1, dtype=np.int64))
        return self._kernel_blocks(images)

    def j_of_ideal(self, s: int) -> int:
        """J(I) = {a : a X^{-1}(I) in I}; the compactness clause is automatic here."""
        pre = self.ideal_basis(self.preimage_ideal(s))
        images = []
        for _, a in self.a_basis:
            vec = [self._mod_ideal(a @ b, s).ravel() for b in pre]
            images.append(np.concatenate(vec) if vec else np.zeros(1, dtype=np.int64))
        return self._kernel_blocks(images)

    def tensor_square_dim(self) -> int:
        """dim of X (x)_A X as the algebraic tensor product modulo xa (x) y - x (x) ay."""
        xs = self.x_basis
        index = {}
        for t, x in enumerate(xs):
            index[x.tobytes()] = t
        n = len(xs)
        parent = list(range(n * n))
        dead = [False] * (n * n)

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        def coord(m):
            # matrix units act on matrix units by matrix units or zero
            return index[m.tobytes()] if np.any(m) else None

        for _, a in self.a_basis:
            la = self.left(a)
            right = [coord(x @ a) for x in xs]
            left = [coord(la @ y) for y in xs]
            for p in range(n):
                for q in range(n):
                    lhs = None if right[p] is None else right[p] * n + q
                    rhs = None if left[q] is None else p * n + left[q]
                    if lhs is None and rhs is None:
                        continue
                    if lhs is None or rhs is None:
                        dead[find(lhs if rhs is None else rhs)] = True
                        continue
                    a_, b_ = find(lhs), find(rhs)
                    if a_ != b_:
                        parent[a_] = b_
                        dead[b_] = dead[b_] or dead[a_]
        return sum(1 for p in range(n * n) if find(p) == p and not dead[p])
