"""Witness discovery and commutator-chain verification.

For groups matching one of the almost-maximal classification conditions,
this module locates generator pairs (g, h) whose commutator structure
drives the weight-7 chain computations, evaluates those chains in KG,
and certifies that the final element is a nonzero monomial multiple of
a product of hat elements.  A nonzero weight-7 chain value forces
t_lower >= 8.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from .algebra import GroupAlgebra
from .classify import Condition, classify_theorem1
from .errors import CaseMismatch, ChainVanished, NoWitness, StepMismatch
from .groups import Group, lower_central_series, subgroup_generated


class CaseTag(Enum):
    """Which displayed chain applies to a witness pair."""

    P2_CASE1 = "P2Case1"
    P2_CASE2 = "P2Case2"
    P3_T1 = "P3T1"
    P3_TB = "P3Tb"
    P3_TB2 = "P3Tb2"


@dataclass(frozen=True)
class WitnessProfile:
    """A pair (g, h) together with its derived commutator data.

    All fields are element indices.  For p = 2 witnesses the full
    relation profile a, b, c, f, t, z1, z2 is populated; for p = 3
    witnesses only a, b, t are meaningful and c, f, z1, z2 are None.
    """

    condition: Condition
    g: int
    h: int
    a: int
    b: int
    c: Optional[int]
    f: Optional[int]
    t: int
    z1: Optional[int]
    z2: Optional[int]
    case_tag: CaseTag


@dataclass(frozen=True)
class ChainStep:
    word: tuple[str, ...]
    value: np.ndarray
    matched: Optional[bool]  # None when no closed form is checked


@dataclass(frozen=True)
class ChainReport:
    case_tag: CaseTag
    steps: tuple[ChainStep, ...]
    final_form: str
    final_nonzero: bool
    implied_lower_bound: int


# Chain words, written over the letters g, h and gh.
P2_CASE1_WORD = ("h", "gh", "g", "h", "g", "h", "h")
P2_CASE2_WORD = ("gh", "g", "gh", "gh", "g", "h", "h")
P3_WORDS = {
    CaseTag.P3_T1: ("gh", "g", "g", "h", "g", "h", "h"),
    CaseTag.P3_TB: ("h", "g", "gh", "g", "gh", "h", "g"),
    CaseTag.P3_TB2: ("g", "gh", "g", "h", "gh", "h", "h"),
}

# Closed forms for chain values, one row per weight starting at 2.  A row
# is None (value recorded, nothing checked), a (prefix, factors, sign)
# triple, or a dict keyed by the f-label of the witness.  Prefixes are
# words in g and h; factors are polynomials in the profile elements, with
# "hat:x" denoting the hat element of x.  Signs matter only over GF(3).
_ROW = tuple[str, tuple[str, ...], int]

P2_CASE1_FORMS: tuple = (
    ("g h2", ("a3b + 1",), 1),
    {"b": ("g2 h2", ("1 + a2b",), 1),
     "a2b": ("g2 h2", ("1 + ab + a2b + a3b",), 1)},
    {"b": ("h g2 h2", ("1 + a2",), 1),
     "a2b": ("h g2 h2", ("b + a2b",), 1)},
    {"b": ("g h g2 h2", ("1 + ab", "1 + a2"), 1),
     "a2b": ("g h g2 h2", ("a", "1 + ab", "1 + a2"), 1)},
    ("h g h g2 h2", ("a", "1 + b", "1 + a2"), 1),
    ("h2 g h g2 h2", ("hat:a", "hat:b"), 1),
)
P2_CASE2_FORMS: tuple = (
    ("g2 h", ("1 + a3",), 1),
    ("g2 h g h", ("1 + a2bf",), 1),
    ("g h g2 h g h", ("a2bf", "1 + a", "1 + abf"), 1),
    {"1": ("g2 h g2 h g h", ("1 + a + a2 + a3",), 1),
     "a2": ("g2 h g2 h g h", ("1 + a2", "1 + ab"), 1)},
    {"1": ("h g2 h g2 h g h", ("a", "1 + a2", "1 + b"), 1),
     "a2": ("h g2 h g2 h g h", ("1 + a2", "1 + b"), 1)},
    ("h2 g2 h g2 h g h", ("hat:a", "hat:b"), 1),
)
P3_FORMS = {
    CaseTag.P3_T1: (
        None,
        ("g3 h", ("1 + a + a2",), 1),
        ("h g3 h", ("a2b2 + ab - a2 - a",), 1),
        ("g4 h2", ("a + b + a2b2 - b2 - a2 - ab",), 1),
        ("g h g2 h g h", ("1 - a2", "1 + b + b2"), 1),
        ("g h g2 h g h2", ("hat:a", "hat:b"), 1),
    ),
    CaseTag.P3_TB: (
        None,
        ("g h g h", ("a2", "b - 1"), 1),
        ("g2 h g h", ("1 - a2", "b - 1"), 1),
        ("g h g2 h g h", ("a2 + ab - 1 - b2", "b - 1"), 1),
        ("h g h g2 h g h", ("a2b + ab - ab2 - a2", "b - 1"), 1),
        ("g h g h g2 h g h", ("hat:a", "hat:b"), -1),
    ),
    CaseTag.P3_TB2: (
        None,
        ("g2 h g", ("-1 - a - a2b",), 1),
        ("h g2 h g", ("a2b + 1 - b2 - a2b2",), 1),
        ("g h2 g2 h g", ("a + b + a2b2 - ab2 - a2b - 1",), 1),
        ("h g h2 g2 h g", ("a2 - 1", "1 + b + b2"), 1),
        ("h2 g h2 g2 h g", ("hat:a", "hat:b"), -1),
    ),
}

_CONDITION_PRIME = {Condition.I: 2, Condition.II: 2,
                    Condition.III: 2, Condition.IV: 3}


def _letter_element(group: Group, g: int, h: int, letter: str) -> int:
    if letter == "g":
        return g
    if letter == "h":
        return h
    if letter == "gh":
        return int(group.mul[g, h])
    raise ValueError(f"unknown chain letter {letter!r}")


def _word_product(group: Group, g: int, h: int, letters) -> int:
    e = 0
    for letter in letters:
        e = int(group.mul[e, _letter_element(group, g, h, letter)])
    return e


def _prefix_element(group: Group, g: int, h: int, word: str) -> int:
    """Evaluate a monomial prefix such as "h g3 h" as a group element."""
    e = 0
    for token in word.split():
        base = g if token[0] == "g" else h
        for _ in range(int(token[1:] or "1")):
            e = int(group.mul[e, base])
    return e


def _poly_element(ctx: GroupAlgebra, env: dict, expr: str) -> np.ndarray:
    """Evaluate a polynomial such as "a2b2 + ab - a2 - a" in KG."""
    group = ctx.group
    out = ctx.zero()
    for chunk in expr.replace("-", "+-").replace(" ", "").split("+"):
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign, chunk = -1, chunk[1:]
        elt = 0
        pos = 0
        while pos < len(chunk):
            symbol = chunk[pos]
            pos += 1
            exp = 0
            while pos < len(chunk) and chunk[pos].isdigit():
                exp = exp * 10 + int(chunk[pos])
                pos += 1
            if symbol == "1":
                continue
            for _ in range(exp or 1):
                elt = int(group.mul[elt, env[symbol]])
        out[elt] = (out[elt] + sign) % ctx.p
    return out


def _closed_form(ctx: GroupAlgebra, env: dict, g: int, h: int,
                 row: _ROW) -> np.ndarray:
    prefix, factors, sign = row
    value = ctx.basis(_prefix_element(ctx.group, g, h, prefix))
    for factor in factors:
        if factor.startswith("hat:"):
            piece = ctx.hat(env[factor[4:]])
        else:
            piece = _poly_element(ctx, env, factor)
        value = ctx.mul(value, piece)
    return (sign * value) % ctx.p


def _f_label(group: Group, profile: WitnessProfile) -> str:
    """Spell f in gamma_2 coordinates: one of 1, a2, b, a2b."""
    a, b, f = profile.a, profile.b, profile.f
    table = {
        0: "1",
        group.power(a, 2): "a2",
        b: "b",
        int(group.mul[group.power(a, 2), b]): "a2b",
    }
    if f not in table:
        raise CaseMismatch("f lies outside the expected gamma_3 spellings")
    return table[f]


def _chain_values(ctx: GroupAlgebra, g: int, h: int, letters) -> list:
    values = []
    acc = ctx.basis(_letter_element(ctx.group, g, h, letters[0]))
    for letter in letters[1:]:
        acc = ctx.bracket(acc, ctx.basis(_letter_element(ctx.group, g, h, letter)))
        values.append(acc)
    return values  # weights 2 .. len(letters)


def _series_sets(group: Group) -> list:
    return [set(term.members) for term in lower_central_series(group)]


def iter_witness_pairs(group: Group, condition: Condition) -> Iterator[WitnessProfile]:
    """Yield every witness pair of the group, in element order.

    The caller is responsible for having checked the classification; this
    generator only applies the structural search pattern.
    """
    if condition in (Condition.II, Condition.III):
        yield from _iter_p2(group, condition)
    elif condition is Condition.IV:
        yield from _iter_p3(group)


def _iter_p2(group: Group, condition: Condition) -> Iterator[WitnessProfile]:
    series = _series_sets(group)
    if len(series) < 5:
        return
    gamma2, gamma3, gamma4 = series[1], series[2], series[3]
    for g in range(group.order):
        for h in range(group.order):
            a = group.commutator(g, h)
            if a == 0:
                continue
            b = group.commutator(a, h)
            c = group.commutator(b, h)
            if b == 0 or c == 0:
                continue
            if condition is Condition.II:
                if group.power(a, 2) != c or group.power(b, 2) != 0:
                    continue
            else:
                if group.power(a, 2) != 0:
                    continue
            if set(subgroup_generated(group, [a, b, c]).members) != gamma2:
                continue
            if set(subgroup_generated(group, [b, c]).members) != gamma3:
                continue
            if set(subgroup_generated(group, [c]).members) != gamma4:
                continue
            f = group.commutator(a, g)
            t = group.commutator(b, g)
            z1 = group.commutator(f, g)
            z2 = group.commutator(f, h)
            if f not in gamma3 or t not in gamma3:
                continue
            if z1 not in gamma4 or z2 not in gamma4 or t != z2:
                continue
            if f in gamma4:
                tag = CaseTag.P2_CASE2
            elif int(group.mul[b, group.inv[f]]) in gamma4:
                tag = CaseTag.P2_CASE1
            else:
                continue
            yield WitnessProfile(condition, g, h, a, b, c, f, t, z1, z2, tag)


def _iter_p3(group: Group) -> Iterator[WitnessProfile]:
    series = _series_sets(group)
    if len(series) < 4:
        return
    gamma2 = series[1]
    for g in range(group.order):
        for h in range(group.order):
            a = group.commutator(g, h)
            if a == 0:
                continue
            b = group.commutator(a, h)
            if b == 0:
                continue
            if set(subgroup_generated(group, [a, b]).members) != gamma2:
                continue
            t = group.commutator(a, g)
            tags = {0: CaseTag.P3_T1, b: CaseTag.P3_TB,
                    group.power(b, 2): CaseTag.P3_TB2}
            if t not in tags:
                continue
            yield WitnessProfile(Condition.IV, g, h, a, b,
                                 None, None, t, None, None, tags[t])


def find_witness_pair(group: Group, condition: Condition) -> WitnessProfile:
    """Locate the first generator pair realizing the condition's pattern."""
    p = _CONDITION_PRIME.get(condition)
    if p is None:
        raise NoWitness(f"no witness pattern is defined for condition {condition.value}")
    outcome = classify_theorem1(group, p)
    if outcome.condition is not condition:
        raise NoWitness(
            f"group {group.name or '?'} classifies as condition "
            f"{outcome.condition.value}, not {condition.value}")
    if condition is Condition.I:
        raise NoWitness(
            "condition I groups have class 2 and no weight-7 chain; "
            "their index is certified by the series computation instead")
    for profile in iter_witness_pairs(group, condition):
        return profile
    raise NoWitness(
        f"no pair in {group.name or '?'} matches the condition "
        f"{condition.value} search pattern")


def _check_rows(ctx: GroupAlgebra, profile: WitnessProfile, words, forms,
                strict: bool) -> tuple[list, np.ndarray]:
    """Evaluate the chain and compare each value against its frozen form.

    Returns the step records (weights 2..6) and the final weight-7 value.
    With strict=True a failed comparison raises StepMismatch.
    """
    group = ctx.group
    env = {"a": profile.a, "b": profile.b}
    if profile.c is not None:
        env["c"] = profile.c
    if profile.f is not None:
        env["f"] = profile.f
    values = _chain_values(ctx, profile.g, profile.h, words)
    steps = []
    for k, value in enumerate(values[:-1]):
        row = forms[k] if forms is not None else None
        if isinstance(row, dict):
            row = row[_f_label(group, profile)]
        if row is None:
            matched = None
        else:
            matched = bool(np.array_equal(
                value, _closed_form(ctx, env, profile.g, profile.h, row)))
            if strict and not matched:
                expected = " * ".join((row[0].replace(" ", ""),) + row[1])
                raise StepMismatch(
                    f"step {words[:k + 2]} disagrees with its closed form: "
                    f"expected {'-' if row[2] < 0 else ''}{expected}, "
                    f"got support {np.nonzero(value)[0].tolist()}")
        steps.append(ChainStep(tuple(words[:k + 2]), value, matched))
    return steps, values[-1]


def _hat_product(ctx: GroupAlgebra, elements) -> np.ndarray:
    value = ctx.one()
    for e in elements:
        value = ctx.mul(value, ctx.hat(e))
    return value


def verify_chain_p2(ctx: GroupAlgebra, profile: WitnessProfile) -> ChainReport:
    """Evaluate the weight-7 chain of a p = 2 witness and certify the final.

    Condition II intermediates are compared against their closed forms;
    condition III intermediates are recorded unchecked.  The final element
    must be nonzero and equal to a monomial times the product of the hat
    elements of the gamma_2 generators.
    """
    if ctx.p != 2:
        raise CaseMismatch(f"chain is defined over GF(2), context has p={ctx.p}")
    if profile.case_tag not in (CaseTag.P2_CASE1, CaseTag.P2_CASE2):
        raise CaseMismatch(f"witness case {profile.case_tag.value} is not a p=2 case")
    words = P2_CASE1_WORD if profile.case_tag is CaseTag.P2_CASE1 else P2_CASE2_WORD
    checked = profile.condition is Condition.II
    forms = None
    if checked:
        forms = P2_CASE1_FORMS if profile.case_tag is CaseTag.P2_CASE1 else P2_CASE2_FORMS
    steps, final = _check_rows(ctx, profile, words,
                               forms[:-1] if checked else None, strict=False)
    if not final.any():
        raise ChainVanished(f"weight-7 chain {words} vanished")
    if checked:
        env = {"a": profile.a, "b": profile.b}
        row = forms[-1]
        expected = _closed_form(ctx, env, profile.g, profile.h, row)
        form = row[0].replace(" ", "") + "*ahat*bhat"
    else:
        monomial = _word_product(ctx.group, profile.g, profile.h, words)
        hats = _hat_product(ctx, [profile.a, profile.b, profile.c])
        expected = ctx.basis_times(monomial, hats)
        form = "".join(words) + "*ahat*bhat*chat"
    if not np.array_equal(final, expected):
        raise ChainVanished(
            f"weight-7 chain {words} is nonzero but does not equal {form}")
    steps.append(ChainStep(tuple(words), final, True))
    return ChainReport(profile.case_tag, tuple(steps), form, True, 8)


def verify_chain_p3(ctx: GroupAlgebra, profile: WitnessProfile) -> ChainReport:
    """Evaluate a condition IV chain over GF(3), checking every display.

    Intermediate values must match their closed forms bit-exactly,
    including signs; a disagreement raises StepMismatch.  The final
    element must equal the signed monomial times a-hat times b-hat.
    """
    if ctx.p != 3:
        raise CaseMismatch(f"chain is defined over GF(3), context has p={ctx.p}")
    if profile.case_tag not in P3_WORDS:
        raise CaseMismatch(f"witness case {profile.case_tag.value} is not a p=3 case")
    words = P3_WORDS[profile.case_tag]
    forms = P3_FORMS[profile.case_tag]
    steps, final = _check_rows(ctx, profile, words, forms[:-1], strict=True)
    if not final.any():
        raise ChainVanished(f"weight-7 chain {words} vanished")
    env = {"a": profile.a, "b": profile.b}
    row = forms[-1]
    expected = _closed_form(ctx, env, profile.g, profile.h, row)
    if not np.array_equal(final, expected):
        raise ChainVanished(
            "weight-7 chain is nonzero but does not equal "
            f"{'-' if row[2] < 0 else ''}{row[0].replace(' ', '')}*ahat*bhat")
    steps.append(ChainStep(tuple(words), final, True))
    form = ("-" if row[2] < 0 else "") + row[0].replace(" ", "") + "*ahat*bhat"
    return ChainReport(profile.case_tag, tuple(steps), form, True, 8)
