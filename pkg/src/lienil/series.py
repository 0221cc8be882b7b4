"""Lie power chains of KG and the two nilpotency indices.

The lower chain tracks L_n, the span of all weight-n left-normed Lie
commutators; the upper chain tracks R^(n), where each term is the
two-sided ideal generated by brackets of the previous term with KG.
Both are descending; the index is the 1-based position of the first
zero term.  A definition-level brute-force oracle double-checks the
lower index on tiny groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import EchelonBasis, GroupAlgebra
from .errors import BoundExceeded, ScaleExceeded
from .groups import derived_subgroup

BRUTE_FORCE_MAX_GROUP = 16


@dataclass(frozen=True)
class SeriesReport:
    p: int
    group_name: str
    lower_dims: tuple[int, ...]
    upper_dims: tuple[int, ...]
    t_lower: int
    t_upper: int


def _default_bound(ctx: GroupAlgebra) -> int:
    return derived_subgroup(ctx.group).order + 2


def _bracket_span(ctx: GroupAlgebra, rows: np.ndarray) -> EchelonBasis:
    """Span of [u, e_g] over all rows u and all group elements g.

    Brackets are bilinear, so bracketing the basis rows against the
    group basis spans the same space as bracketing whole subspaces.
    """
    span = EchelonBasis(ctx.dim, ctx.p)
    for g in range(ctx.dim):
        block = ctx.bracket_with_basis(rows, g)
        for row in block:
            span.insert(row)
    return span


def _full_basis(ctx: GroupAlgebra) -> EchelonBasis:
    basis = EchelonBasis(ctx.dim, ctx.p)
    for g in range(ctx.dim):
        basis.insert(ctx.basis(g))
    return basis


def lower_chain(
    ctx: GroupAlgebra, bound: Optional[int] = None
) -> tuple[list[int], int]:
    """Dimensions of L_1, L_2, .. and the first index with L_n = 0.

    The terms are Lie ideals, so the chain is descending; two equal
    consecutive dimensions mean it has stabilized above zero and will
    never vanish (KG is not Lie nilpotent), which is reported as
    BoundExceeded just like running out of steps.
    """
    if bound is None:
        bound = _default_bound(ctx)
    cur = _full_basis(ctx)
    dims = [cur.dimension]
    for _ in range(bound):
        nxt = _bracket_span(ctx, cur.rows)
        dims.append(nxt.dimension)
        if nxt.dimension == 0:
            return dims, len(dims)
        if nxt.dimension == cur.dimension:
            raise BoundExceeded(
                f"lower chain stabilized at dimension {nxt.dimension}"
            )
        cur = nxt
    raise BoundExceeded(f"lower chain still nonzero after {bound} steps")


def ideal_closure(ctx: GroupAlgebra, seed: EchelonBasis) -> EchelonBasis:
    """Two-sided ideal spanned by a subspace.

    Worklist closure under left and right multiplication by the group's
    generators; that suffices because the generators generate G and the
    algebra has an identity.
    """
    closed = seed.copy()
    queue = [row for row in closed.rows]
    gens = ctx.group.generator_indices
    while queue:
        row = queue.pop()
        for g in gens:
            for prod in (ctx.basis_times(g, row), ctx.times_basis(row, g)):
                added = closed.insert_row(prod)
                if added is not None:
                    queue.append(added)
    return closed


def upper_chain(
    ctx: GroupAlgebra, bound: Optional[int] = None
) -> tuple[list[int], int]:
    """Dimensions of R^(1), R^(2), .. and the first index with R^(n) = 0."""
    if bound is None:
        bound = _default_bound(ctx)
    cur = _full_basis(ctx)
    dims = [cur.dimension]
    for _ in range(bound):
        nxt = ideal_closure(ctx, _bracket_span(ctx, cur.rows))
        dims.append(nxt.dimension)
        if nxt.dimension == 0:
            return dims, len(dims)
        if nxt.dimension == cur.dimension:
            raise BoundExceeded(
                f"upper chain stabilized at dimension {nxt.dimension}"
            )
        cur = nxt
    raise BoundExceeded(f"upper chain still nonzero after {bound} steps")


def series_report(ctx: GroupAlgebra, bound: Optional[int] = None) -> SeriesReport:
    lower_dims, t_lower = lower_chain(ctx, bound)
    upper_dims, t_upper = upper_chain(ctx, bound)
    return SeriesReport(
        p=ctx.p,
        group_name=ctx.group.name,
        lower_dims=tuple(lower_dims),
        upper_dims=tuple(upper_dims),
        t_lower=t_lower,
        t_upper=t_upper,
    )


class _PivotSpan:
    """Forward-elimination span tracker, deliberately simpler than
    EchelonBasis (no back-substitution, no canonical order) so the
    oracle does not share its linear algebra with the chain code."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def residue(self, v: np.ndarray) -> np.ndarray:
        v = v % self.p
        for row, piv in zip(self.rows, self.pivots):
            if v[piv]:
                v = (v - int(v[piv]) * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        r = self.residue(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        r = (r * pow(int(r[piv]), self.p - 2, self.p)) % self.p
        self.rows.append(r)
        self.pivots.append(piv)
        return True


def brute_force_t_lower(
    ctx: GroupAlgebra, max_weight: Optional[int] = None
) -> Optional[int]:
    """Lower index straight from the definition, for |G| <= 16.

    Enumerates left-normed commutators of group elements by extending
    tuples one element at a time.  A tuple whose value already lies in
    the span of previously kept weight-n values is pruned: its
    extensions cannot enlarge the weight-(n+1) span, by bilinearity.
    Returns None when max_weight passes without the span dying.
    """
    n = ctx.dim
    if n > BRUTE_FORCE_MAX_GROUP:
        raise ScaleExceeded(f"brute force capped at group order "
                            f"{BRUTE_FORCE_MAX_GROUP}, got {n}")
    if max_weight is None:
        max_weight = n + 2

    basis_elems = [ctx.basis(g) for g in range(n)]
    live = basis_elems
    weight = 1
    while weight < max_weight:
        span = _PivotSpan(ctx.p)
        survivors = []
        for u in live:
            for e in basis_elems:
                v = (ctx.mul(u, e) - ctx.mul(e, u)) % ctx.p
                if v.any() and span.add(v):
                    survivors.append(v)
        weight += 1
        if not survivors:
            return weight
        live = survivors
    return None
