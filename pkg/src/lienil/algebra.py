"""Arithmetic in the group algebra KG over GF(p).

Elements are integer coordinate vectors of length |G| with entries in
0..p-1, indexed by the group's element numbering.  The context object
precomputes the gather tables that make multiplication by a single group
element a fancy-index away:

    (u * e_g)[k] = u[k * g^-1]      (right gather)
    (e_g * u)[k] = u[g^-1 * k]      (left gather)

Generic products fall back to the support convolution.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyArguments
from .groups import Group, is_prime


class GroupAlgebra:
    """Context for KG: the group, the prime, and the gather tables."""

    def __init__(self, group: Group, p: int) -> None:
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.group = group
        self.p = p
        self.dim = group.order
        mul, inv = group.mul, group.inv
        # _right[g][k] = k * g^-1, so u[_right[g]] is u shifted by g on
        # the right; _left[g][k] = g^-1 * k likewise on the left.
        self._right = np.ascontiguousarray(mul[:, inv].T)
        self._left = np.ascontiguousarray(mul[inv, :])

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis(self, g: int) -> np.ndarray:
        u = self.zero()
        u[g] = 1
        return u

    def one(self) -> np.ndarray:
        return self.basis(0)

    def from_terms(self, terms: Iterable[tuple[int, int]]) -> np.ndarray:
        """Build an element from (coefficient, group index) pairs."""
        u = self.zero()
        for coeff, g in terms:
            u[g] += coeff
        return u % self.p

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        supp_u = np.nonzero(u)[0]
        supp_v = np.nonzero(v)[0]
        out = self.zero()
        if supp_u.size and supp_v.size:
            prods = self.group.mul[np.ix_(supp_u, supp_v)]
            np.add.at(out, prods, np.outer(u[supp_u], v[supp_v]))
        return out % self.p

    def times_basis(self, u: np.ndarray, g: int) -> np.ndarray:
        """u * e_g; u may be a single vector or a stack of rows."""
        return u[..., self._right[g]]

    def basis_times(self, g: int, u: np.ndarray) -> np.ndarray:
        """e_g * u; u may be a single vector or a stack of rows."""
        return u[..., self._left[g]]

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return (self.mul(u, v) - self.mul(v, u)) % self.p

    def bracket_with_basis(self, u: np.ndarray, g: int) -> np.ndarray:
        """[u, e_g] for a vector or a stack of rows."""
        return (self.times_basis(u, g) - self.basis_times(g, u)) % self.p

    def left_normed(self, args: Sequence[np.ndarray]) -> np.ndarray:
        """[[..[x1, x2], x3].., xn]; a single argument is returned as is."""
        if len(args) == 0:
            raise EmptyArguments("left-normed bracket of nothing")
        acc = args[0] % self.p
        for v in args[1:]:
            acc = self.bracket(acc, v)
        return acc

    def hat(self, g: int) -> np.ndarray:
        """Sum of basis elements over the cyclic subgroup <g>."""
        u = self.zero()
        x = 0
        while True:
            u[x] = 1
            x = int(self.group.mul[x, g])
            if x == 0:
                break
        return u

    def augmentation(self, u: np.ndarray) -> int:
        return int(u.sum() % self.p)


class EchelonBasis:
    """Row-reduced basis of a subspace of GF(p)^dim.

    Rows are kept fully back-substituted and sorted by pivot, so the row
    matrix is a canonical invariant of the subspace: two spans are equal
    iff their row matrices are equal.
    """

    def __init__(self, dim: int, p: int) -> None:
        self.dim = dim
        self.p = p
        self._rows = np.zeros((0, dim), dtype=np.int64)
        self._pivots: list[int] = []

    @property
    def dimension(self) -> int:
        return len(self._pivots)

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def copy(self) -> "EchelonBasis":
        dup = EchelonBasis(self.dim, self.p)
        dup._rows = self._rows.copy()
        dup._pivots = list(self._pivots)
        return dup

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Remainder of v against the rows (a single pass suffices in
        fully reduced form: pivot columns are zero in every other row)."""
        v = v % self.p
        if self._pivots:
            v = (v - v[self._pivots] @ self._rows) % self.p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def insert(self, v: np.ndarray) -> bool:
        """Add v to the span; returns whether the dimension grew."""
        return self.insert_row(v) is not None

    def insert_row(self, v: np.ndarray) -> Optional[np.ndarray]:
        """Like insert, but hands back the reduced normalized row that
        was added (None if v was already in the span)."""
        w = self.reduce(v)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return None
        pivot = int(nz[0])
        w = (w * pow(int(w[pivot]), self.p - 2, self.p)) % self.p
        if self._pivots:
            col = self._rows[:, pivot].copy()
            if col.any():
                self._rows = (self._rows - np.outer(col, w)) % self.p
        at = bisect_left(self._pivots, pivot)
        self._rows = np.insert(self._rows, at, w, axis=0)
        self._pivots.insert(at, pivot)
        return w


def basis_insert(basis: EchelonBasis, u: np.ndarray) -> tuple[EchelonBasis, bool]:
    """Non-mutating insert: returns (new basis, grew)."""
    out = basis.copy()
    grew = out.insert(u)
    return out, grew
