"""Finite groups given by permutation generators.

A group is built by closing a generating set of permutations under
composition, then forgotten as a permutation group: everything downstream
works with the integer multiplication table.  Element 0 is always the
identity and generators keep their declared order.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    InvalidPermutation,
    NotAbelian,
    OrderExceeded,
    ParseError,
)

DEFAULT_MAX_ORDER = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1, .., n} stored as the tuple (f(1), .., f(n))."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        seen = [False] * n
        for v in self.images:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise InvalidPermutation(
                    f"image {v!r} out of range for degree {n}"
                )
            if seen[v - 1]:
                raise InvalidPermutation(f"image {v} repeated")
            seen[v - 1] = True

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # Apply self first, then other.
        if other.degree != self.degree:
            raise DegreeMismatch(
                f"cannot compose degrees {self.degree} and {other.degree}"
            )
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point - 1]


def _fold_word(word: str) -> str:
    """Collapse repeated letters: 'aab' -> 'a^2b'.  Empty word is '1'."""
    if not word:
        return "1"
    out = []
    for letter, run in groupby(word):
        k = len(list(run))
        out.append(letter if k == 1 else f"{letter}^{k}")
    return "".join(out)


class Group:
    """Multiplication-table group.

    mul[i, j] is the index of element i composed with element j (i acts
    first).  inv[i] is the index of the inverse.  Names are shortest
    generator words found during closure, with generators lettered
    a, b, c, .. in declared order.
    """

    def __init__(
        self,
        mul: np.ndarray,
        names: Sequence[str],
        generator_indices: Sequence[int],
        name: str = "",
    ) -> None:
        self.mul = mul
        self.elem_names = list(names)
        self.generator_indices = tuple(generator_indices)
        self.name = name
        n = mul.shape[0]
        self.inv = np.empty(n, dtype=mul.dtype)
        rows, cols = np.nonzero(mul == 0)
        self.inv[rows] = cols

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def commutator(self, x: int, y: int) -> int:
        """(x, y) = x^-1 y^-1 x y."""
        m, v = self.mul, self.inv
        return int(m[m[v[x], v[y]], m[x, y]])

    def conjugate(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        m = self.mul
        return int(m[m[self.inv[g], x], g])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc = 0
        for _ in range(k):
            acc = int(self.mul[acc, x])
        return acc

    def element_order(self, x: int) -> int:
        k, acc = 1, x
        while acc != 0:
            acc = int(self.mul[acc, x])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))


def build_group(
    generators: Sequence[Permutation],
    max_order: int = DEFAULT_MAX_ORDER,
    name: str = "",
) -> Group:
    """Close the generators under composition and tabulate the result.

    Raises OrderExceeded as soon as the closure passes max_order, so a
    runaway generating set fails fast instead of exhausting memory.
    """
    if not generators:
        raise DegreeMismatch("at least one generator is required")
    degree = generators[0].degree
    for g in generators[1:]:
        if g.degree != degree:
            raise DegreeMismatch(
                f"generator degrees differ: {degree} vs {g.degree}"
            )
    if len(generators) > len(string.ascii_lowercase):
        raise DegreeMismatch("more than 26 generators are not supported")

    gen_rows = [np.array(g.images, dtype=np.int64) - 1 for g in generators]
    ident = np.arange(degree, dtype=np.int64)

    elems = [ident]
    words = [""]
    index = {ident.tobytes(): 0}
    gen_idx: list[int] = []

    # BFS guarantees shortest words and puts generators right after the
    # identity (except generators equal to earlier elements).
    head = 0
    while head < len(elems):
        cur = elems[head]
        for letter, row in zip(string.ascii_lowercase, gen_rows):
            nxt = row[cur]
            key = nxt.tobytes()
            if key not in index:
                if len(elems) >= max_order:
                    raise OrderExceeded(
                        f"group closure exceeds {max_order} elements"
                    )
                index[key] = len(elems)
                elems.append(nxt)
                words.append(words[head] + letter)
        head += 1

    for row in gen_rows:
        gen_idx.append(index[row.tobytes()])

    n = len(elems)
    perms = np.stack(elems)
    mul = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        prods = perms[:, perms[i]]
        for j in range(n):
            mul[i, j] = index[prods[j].tobytes()]

    return Group(mul, [_fold_word(w) for w in words], gen_idx, name=name)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup recorded as a sorted tuple of element indices."""

    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def is_trivial(self) -> bool:
        return self.members == (0,)

    def __contains__(self, x: int) -> bool:
        return x in set(self.members)


def subgroup_generated(group: Group, seeds: Iterable[int]) -> Subgroup:
    mul = group.mul
    members = {0}
    queue = [0]
    seed_list = [int(s) for s in seeds]
    while queue:
        x = queue.pop()
        for s in seed_list:
            y = int(mul[x, s])
            if y not in members:
                members.add(y)
                queue.append(y)
    return Subgroup(tuple(sorted(members)))


def _commutator_span(group: Group, left: Sequence[int]) -> Subgroup:
    """Subgroup generated by all (x, y) with x in left, y in the group."""
    m, v = group.mul, group.inv
    xs = np.asarray(left, dtype=np.intp)
    ys = np.arange(group.order, dtype=np.intp)
    comm = m[m[np.ix_(v[xs], v[ys])], m[np.ix_(xs, ys)]]
    return subgroup_generated(group, np.unique(comm).tolist())


def lower_central_series(group: Group) -> list[Subgroup]:
    """[G, (G,G), ((G,G),G), ..] up to the first repeated term.

    The last entry is trivial exactly when the group is nilpotent;
    otherwise the series stabilises at a nontrivial subgroup and that
    stable term closes the list.
    """
    series = [Subgroup(tuple(range(group.order)))]
    while True:
        nxt = _commutator_span(group, series[-1].members)
        if nxt.members == series[-1].members:
            break
        series.append(nxt)
        if nxt.is_trivial():
            break
    return series


def nilpotency_class(group: Group) -> Optional[int]:
    series = lower_central_series(group)
    if not series[-1].is_trivial():
        return None
    return len(series) - 1


def derived_subgroup(group: Group) -> Subgroup:
    return _commutator_span(group, range(group.order))


def abelian_type(group: Group, sub: Subgroup) -> list[int]:
    """Cyclic decomposition of an abelian subgroup, e.g. [4, 2, 2].

    Parts are prime powers sorted descending.  Recovered from the counts
    n_k = #{x : x^(q^k) = 1}: with the partition written lam_1 >= lam_2
    >= .., log_q n_k = sum(min(lam_i, k)), so consecutive differences
    count parts of size >= k.
    """
    ms = np.asarray(sub.members, dtype=np.intp)
    block = group.mul[np.ix_(ms, ms)]
    if not np.array_equal(block, block.T):
        raise NotAbelian(f"subgroup of order {sub.order} is not abelian")
    if sub.order == 1:
        return []

    orders = [group.element_order(x) for x in sub.members]
    primes = set()
    for o in orders:
        q = 2
        while q * q <= o:
            if o % q == 0:
                primes.add(q)
                while o % q == 0:
                    o //= q
            q += 1
        if o > 1:
            primes.add(o)

    parts: list[int] = []
    for q in sorted(primes):
        # x^(q^k) = 1 iff ord(x) divides q^k.
        counts = [1]
        k = 1
        while True:
            n_k = sum(1 for o in orders if q ** k % o == 0)
            counts.append(n_k)
            if n_k == counts[-2]:
                counts.pop()
                break
            k += 1
        exps = [_int_log(c, q) for c in counts]
        geq = [exps[k] - exps[k - 1] for k in range(1, len(exps))]
        geq.append(0)
        for k in range(1, len(geq)):
            for _ in range(geq[k - 1] - geq[k]):
                parts.append(q ** k)
    return sorted(parts, reverse=True)


def _int_log(n: int, q: int) -> int:
    e = 0
    while n > 1:
        if n % q:
            raise NotAbelian(f"count {n} is not a power of {q}")
        n //= q
        e += 1
    return e


@dataclass(frozen=True)
class GroupSpec:
    """Catalog entry: named generators plus the primes to analyse at."""

    name: str
    degree: int
    generators: tuple[tuple[int, ...], ...]
    primes: tuple[int, ...]

    def build(self, max_order: int = DEFAULT_MAX_ORDER) -> Group:
        perms = [Permutation(g) for g in self.generators]
        return build_group(perms, max_order=max_order, name=self.name)


def parse_catalog(text: str) -> list[GroupSpec]:
    """Parse a JSON catalog of groups.

    The document is a list of objects with keys name, degree, generators
    (lists of 1-based images) and primes.  Unknown keys are ignored so
    catalogs can carry annotations.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno}:{e.colno}: {e.msg}")
    if not isinstance(doc, list):
        raise ParseError("catalog must be a JSON list")

    specs = []
    for pos, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise ParseError(f"entry {pos} is not an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise ParseError(f"entry {pos} has no usable name")
        degree = entry.get("degree")
        if not isinstance(degree, int) or degree < 1:
            raise ParseError(f"{name}: degree must be a positive integer")
        gens = entry.get("generators")
        if not isinstance(gens, list) or not gens:
            raise ParseError(f"{name}: generators must be a nonempty list")
        rows = []
        for g in gens:
            if not isinstance(g, list):
                raise ParseError(f"{name}: each generator must be a list")
            if len(g) != degree:
                raise DegreeMismatch(
                    f"{name}: generator of length {len(g)} under degree {degree}"
                )
            try:
                Permutation(tuple(g))
            except InvalidPermutation as e:
                raise ParseError(f"{name}: {e}")
            rows.append(tuple(g))
        primes = entry.get("primes")
        if not isinstance(primes, list) or not primes:
            raise ParseError(f"{name}: primes must be a nonempty list")
        for p in primes:
            if not isinstance(p, int) or not is_prime(p):
                raise ParseError(f"{name}: {p!r} is not a prime")
        specs.append(GroupSpec(name, degree, tuple(rows), tuple(primes)))
    return specs
