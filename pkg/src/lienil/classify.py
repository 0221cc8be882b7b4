"""Classification of KG against the almost-maximal-index theorem.

Decides Lie nilpotency, matches the group against the four equality
conditions, predicts where the lower index must land, and cross-checks
computed indices against every statement the prediction rests on.  Also
includes a tiny-scale brute force of the normalized unit group, whose
nilpotency class must sit one below the lower index.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Optional

import numpy as np

from .algebra import GroupAlgebra
from .errors import NotAbelian, NotLieNilpotent, ScaleExceeded
from .groups import Group, abelian_type, is_prime, lower_central_series
from .series import SeriesReport, series_report


class Reason(Enum):
    OK = "Ok"
    G_NOT_NILPOTENT = "GNotNilpotent"
    DERIVED_NOT_P_GROUP = "DerivedNotPGroup"
    CHAR_ZERO = "CharZero"


class Condition(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    NONE = "None"


class PredictionKind(Enum):
    MAXIMAL = "Maximal"
    ALMOST_MAXIMAL = "AlmostMaximal"
    BELOW = "Below"
    COMMUTATIVE = "Commutative"


@dataclass(frozen=True)
class NilpotencyStatus:
    lie_nilpotent: bool
    reason: Reason


@dataclass(frozen=True)
class Prediction:
    kind: PredictionKind
    value: int  # exact index for Maximal/AlmostMaximal/Commutative,
    # inclusive upper bound for Below


@dataclass(frozen=True)
class Classification:
    condition: Condition
    predicted: Prediction


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CheckReport:
    group_name: str
    p: int
    status: NilpotencyStatus
    classification: Optional[Classification]
    computed: Optional[SeriesReport]
    checks: tuple[Check, ...]

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def lie_nilpotency_status(group: Group, p: int) -> NilpotencyStatus:
    """KG is Lie nilpotent iff G is nilpotent and G' is a p-group."""
    if p == 0:
        return NilpotencyStatus(False, Reason.CHAR_ZERO)
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    series = lower_central_series(group)
    if not series[-1].is_trivial():
        return NilpotencyStatus(False, Reason.G_NOT_NILPOTENT)
    if not _is_p_power(series[1].order if len(series) > 1 else 1, p):
        return NilpotencyStatus(False, Reason.DERIVED_NOT_P_GROUP)
    return NilpotencyStatus(True, Reason.OK)


def _match_condition(
    p: int,
    cl: int,
    gamma2_type: Optional[list[int]],
    gamma3_type: Optional[list[int]],
) -> Condition:
    if gamma2_type is None:
        return Condition.NONE
    if p == 2 and cl == 2 and gamma2_type == [2, 2]:
        return Condition.I
    if p == 2 and cl == 4 and gamma2_type == [4, 2] and gamma3_type == [2, 2]:
        return Condition.II
    if p == 2 and cl == 4 and gamma2_type == [2, 2, 2]:
        return Condition.III
    if p == 3 and cl == 3 and gamma2_type == [3, 3]:
        return Condition.IV
    return Condition.NONE


def _safe_type(group: Group, sub) -> Optional[list[int]]:
    try:
        return abelian_type(group, sub)
    except NotAbelian:
        return None


def _maximal_expected(group: Group, p: int, series) -> bool:
    """Structural side of the maximal-index criterion: G' cyclic, or
    p=2 with G' noncyclic of order 4 and gamma_3 nontrivial.  A trivial
    G' counts as cyclic."""
    gamma2 = series[1] if len(series) > 1 else series[-1]
    if gamma2.order == 1:
        return True
    g2_type = _safe_type(group, gamma2)
    if g2_type is not None and len(g2_type) == 1:
        return True
    g3_nontrivial = len(series) > 2 and series[2].order > 1
    return p == 2 and g2_type == [2, 2] and g3_nontrivial


def classify_theorem1(group: Group, p: int) -> Classification:
    """Condition match plus the predicted landing spot for t_lower.

    Maximal (= |G'|+1) when G' is cyclic, or p=2 with G' noncyclic of
    order 4 and gamma_3 nontrivial; AlmostMaximal (= |G'|-p+2) exactly
    when one of the four conditions holds; otherwise the index is
    strictly below the gap, bounded by |G'|-p+1.
    """
    status = lie_nilpotency_status(group, p)
    if not status.lie_nilpotent:
        raise NotLieNilpotent(f"KG not Lie nilpotent: {status.reason.value}")
    series = lower_central_series(group)
    cl = len(series) - 1
    gamma2 = series[1] if len(series) > 1 else series[-1]
    d = gamma2.order
    if d == 1:
        return Classification(
            Condition.NONE, Prediction(PredictionKind.COMMUTATIVE, 2)
        )
    if _maximal_expected(group, p, series):
        return Classification(
            Condition.NONE, Prediction(PredictionKind.MAXIMAL, d + 1)
        )
    g2_type = _safe_type(group, gamma2)
    g3_nontrivial = len(series) > 2 and series[2].order > 1
    g3_type = _safe_type(group, series[2]) if g3_nontrivial else []
    condition = _match_condition(p, cl, g2_type, g3_type)
    if condition is not Condition.NONE:
        return Classification(
            condition, Prediction(PredictionKind.ALMOST_MAXIMAL, d - p + 2)
        )
    return Classification(
        Condition.NONE, Prediction(PredictionKind.BELOW, d - p + 1)
    )


def cross_check(group: Group, p: int, bound: Optional[int] = None) -> CheckReport:
    """Compute both indices and test every classification statement.

    Check failures are recorded in the report, never raised; a group
    whose KG is not Lie nilpotent gets a report with no checks.
    """
    status = lie_nilpotency_status(group, p)
    if not status.lie_nilpotent:
        return CheckReport(group.name, p, status, None, None, ())
    classification = classify_theorem1(group, p)
    ctx = GroupAlgebra(group, p)
    computed = series_report(ctx, bound)
    series = lower_central_series(group)
    d = series[1].order if len(series) > 1 else 1
    tl, tu = computed.t_lower, computed.t_upper
    almost = d - p + 2
    expected_max = _maximal_expected(group, p, series)
    has_condition = classification.condition is not Condition.NONE

    checks = [
        Check(
            "bound",
            tl <= tu <= d + 1,
            f"t_lower={tl} t_upper={tu} |G'|+1={d + 1}",
        ),
        Check(
            "prop1",
            ((tu == d + 1) == expected_max) and (tu != d + 1 or tl == tu),
            f"t_upper={tu} maximal_expected={expected_max}",
        ),
        Check(
            "prop2_gap",
            tu == d + 1 or tu <= almost,
            f"t_upper={tu} not in ({almost}, {d + 1})",
        ),
        Check(
            "thm1",
            (tl == almost) == has_condition,
            f"t_lower={tl} almost={almost} "
            f"condition={classification.condition.value}",
        ),
        Check(
            "cor1",
            (tl == almost) == (tu == almost),
            f"t_lower={tl} t_upper={tu} almost={almost}",
        ),
        Check(
            "cor3",
            p != 3 or tl != d,
            f"p={p} t_lower={tl} |G'|={d}",
        ),
        Check(
            "bp",
            p <= 3 or tl == tu,
            f"p={p} t_lower={tl} t_upper={tu}",
        ),
    ]
    return CheckReport(
        group.name, p, status, classification, computed, tuple(checks)
    )


# --- normalized unit group, brute force ---------------------------------

DEFAULT_MAX_UNITS = 2 ** 15


def _unit_inverse(ctx: GroupAlgebra, u: np.ndarray) -> np.ndarray:
    """Inverse of an augmentation-1 unit via the geometric series:
    u = 1 + w with w in the augmentation ideal, which is nilpotent."""
    w = (u - ctx.one()) % ctx.p
    acc = ctx.one()
    term = ctx.one()
    while True:
        term = (-ctx.mul(term, w)) % ctx.p
        if not term.any():
            return acc
        acc = (acc + term) % ctx.p


class _UnitSubgroup:
    """Subgroup of the normalized units, grown generator by generator.

    Membership is a byte-key set; the element block is maintained so a
    new generator extends the subgroup by whole right cosets, each one
    a single matrix product (right multiplication by a fixed unit is
    linear on coordinates).
    """

    def __init__(self, ctx: GroupAlgebra) -> None:
        self.ctx = ctx
        self.block = ctx.one().reshape(1, -1)
        self.keys = {ctx.one().tobytes()}
        self.gens: list[np.ndarray] = []

    @property
    def order(self) -> int:
        return len(self.keys)

    def __contains__(self, u: np.ndarray) -> bool:
        return u.tobytes() in self.keys

    def _right_matrix(self, z: np.ndarray) -> np.ndarray:
        # row g of the matrix is e_g * z
        return z[self.ctx._left]

    def extend(self, z: np.ndarray) -> bool:
        if z in self:
            return False
        base = self.block
        self.gens.append(z)
        reps = [self.ctx.one()]
        head = 0
        while head < len(reps):
            rep = reps[head]
            head += 1
            for s in self.gens:
                t = self.ctx.mul(rep, s)
                if t in self:
                    continue
                coset = (base @ self._right_matrix(t)) % self.ctx.p
                self.block = np.vstack([self.block, coset])
                self.keys.update(row.tobytes() for row in coset)
                reps.append(t)
        return True


def unit_group_class(ctx: GroupAlgebra, max_units: int = DEFAULT_MAX_UNITS) -> int:
    """Nilpotency class of V(KG) = {u : augmentation(u) = 1}, brute force.

    Only p-group algebras are accepted: there |V| = p^(|G|-1) and every
    augmentation-1 element is a unit.  Scalars split off as a central
    factor, so the class of the full unit group equals the class of V.
    """
    group, p = ctx.group, ctx.p
    if not _is_p_power(group.order, p):
        raise ValueError("unit enumeration needs a p-group matching ctx.p")
    count = p ** (group.order - 1)
    if count > max_units:
        raise ScaleExceeded(
            f"|V| = {count} exceeds the {max_units}-unit budget"
        )

    # Lexicographically smallest generating set: walk all coefficient
    # vectors in lex order, keep the ones outside the running closure.
    units = _UnitSubgroup(ctx)
    for coords in product(range(p), repeat=group.order):
        u = np.array(coords, dtype=np.int64)
        if int(u.sum() % p) != 1:
            continue
        units.extend(u)
        if units.order == count:
            break
    vgens = units.gens

    # Lower central series of V: gamma_{i+1} is the normal closure of
    # the commutators of gamma_i's generators with V's generators.
    inv_cache = [_unit_inverse(ctx, y) for y in vgens]
    level_gens = vgens
    cls = 0
    while True:
        cls += 1
        commutators = []
        for x in level_gens:
            xi = _unit_inverse(ctx, x)
            for y, yi in zip(vgens, inv_cache):
                c = ctx.mul(ctx.mul(xi, yi), ctx.mul(x, y))
                commutators.append(c)
        nxt = _UnitSubgroup(ctx)
        work = []
        for c in commutators:
            if nxt.extend(c):
                work.append(c)
        while work:
            x = work.pop()
            for y, yi in zip(vgens, inv_cache):
                c = ctx.mul(ctx.mul(yi, x), y)
                if nxt.extend(c):
                    work.append(c)
        if nxt.order == 1:
            return cls
        level_gens = nxt.gens
