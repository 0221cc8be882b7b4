"""Generate and sanity-check the bundled group catalog.

Every entry is constructed here, rebuilt through the library, and
checked against the structural facts the test suite relies on (order,
nilpotency class, derived-subgroup type, classification).  Output goes
to src/lienil/data/catalog.json.

Run from the repository root:  python3 scripts/build_catalog.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lienil.classify import Condition, classify_theorem1, lie_nilpotency_status
from lienil.groups import (
    GroupSpec,
    Permutation,
    abelian_type,
    build_group,
    lower_central_series,
)

OUT = Path(__file__).resolve().parent.parent / "src" / "lienil" / "data" / "catalog.json"


def cycle_perm(n: int, shift: int = 1) -> list[int]:
    return [(i + shift) % n + 1 for i in range(n)]


def heisenberg(q: int) -> tuple[list[int], list[int]]:
    """Extraspecial group of order q^3 and exponent q acting on q^2
    points (i, j): x shifts i, y shears j by i."""
    def pt(i: int, j: int) -> int:
        return q * i + j + 1

    x = [0] * (q * q)
    y = [0] * (q * q)
    for i in range(q):
        for j in range(q):
            x[pt(i, j) - 1] = pt((i + 1) % q, j)
            y[pt(i, j) - 1] = pt(i, (j + i) % q)
    return x, y


def block_perm(blocks: int, size: int, inner: list[int], block_index: int) -> list[int]:
    """Degree blocks*size permutation acting as `inner` on one block."""
    images = list(range(1, blocks * size + 1))
    off = block_index * size
    for i, img in enumerate(inner):
        images[off + i] = off + img
    return images


def block_shift(blocks: int, size: int) -> list[int]:
    return [((b + 1) % blocks) * size + i + 1 for b in range(blocks) for i in range(size)]


def direct_sum(degrees: list[int], which: int, perm: list[int]) -> list[int]:
    images = list(range(1, sum(degrees) + 1))
    off = sum(degrees[:which])
    for i, img in enumerate(perm):
        images[off + i] = off + img
    return images


def regular_rep(mul: np.ndarray, gens: list[int]) -> tuple[int, list[list[int]]]:
    """Right-regular permutations of the chosen generators."""
    n = mul.shape[0]
    return n, [[int(mul[x, g]) + 1 for x in range(n)] for g in gens]


def check_associative(mul: np.ndarray) -> None:
    n = mul.shape[0]
    a = mul[mul.reshape(n, n, 1), np.arange(n).reshape(1, 1, n)]
    b = mul[np.arange(n).reshape(n, 1, 1), mul.reshape(1, n, n)]
    assert np.array_equal(a, b), "multiplication table is not associative"


def q16_table() -> tuple[np.ndarray, list[int]]:
    """Generalized quaternion group of order 16: elements r^k s^e with
    r^8 = 1, s^2 = r^4, r^s = r^-1."""
    def idx(k: int, e: int) -> int:
        return (k % 8) * 2 + e

    mul = np.zeros((16, 16), dtype=np.int64)
    for k1 in range(8):
        for e1 in range(2):
            for k2 in range(8):
                for e2 in range(2):
                    if e1 == 0:
                        k, e = k1 + k2, e2
                    elif e2 == 0:
                        k, e = k1 - k2, 1
                    else:
                        k, e = k1 - k2 + 4, 0
                    mul[idx(k1, e1), idx(k2, e2)] = idx(k, e)
    # renumber so the identity is element 0 (it already is: idx(0,0)=0)
    check_associative(mul)
    return mul, [idx(1, 0), idx(0, 1)]


def g64_table() -> tuple[np.ndarray, list[int]]:
    """Order-64 class-4 group with gamma_2 = C4 x C2, gamma_3 = C2 x C2.

    Elements are normal forms h^al g^be a^ga b^de (al mod 4, be mod 2,
    ga mod 4, de mod 2) under the relations

        a = (g, h),  a^g = a,  a^h = ab,  b = g^2,  b^g = b,  b^h = a^2 b,
        h^4 = a^4 = b^2 = 1.

    Collection moves the right factor's h-part through the left factor's
    tail: a^ga b^de . h = h . a^(ga+2 de) b^(ga+de), and g . h^k =
    h^k . g . w_k with w_0..w_3 = 1, a, a^2 b, ab.
    """
    W = [(0, 0), (1, 0), (2, 1), (1, 1)]  # w_k as (a-exp, b-exp)

    def shift(ga: int, de: int, times: int) -> tuple[int, int]:
        for _ in range(times):
            ga, de = (ga + 2 * de) % 4, (ga + de) % 2
        return ga, de

    def idx(al: int, be: int, ga: int, de: int) -> int:
        return ((al % 4) * 2 + be % 2) * 8 + (ga % 4) * 2 + de % 2

    mul = np.zeros((64, 64), dtype=np.int64)
    for al1 in range(4):
        for be1 in range(2):
            for ga1 in range(4):
                for de1 in range(2):
                    for al2 in range(4):
                        for be2 in range(2):
                            for ga2 in range(4):
                                for de2 in range(2):
                                    ga, de = shift(ga1, de1, al2)
                                    if be1:
                                        wa, wb = W[al2 % 4]
                                        ga, de = ga + wa, de + wb
                                    carry = 1 if be1 + be2 == 2 else 0
                                    mul[
                                        idx(al1, be1, ga1, de1),
                                        idx(al2, be2, ga2, de2),
                                    ] = idx(
                                        al1 + al2,
                                        be1 + be2,
                                        ga + ga2,
                                        de + de2 + carry,
                                    )
    check_associative(mul)
    return mul, [idx(0, 1, 0, 0), idx(1, 0, 0, 0)]  # g, h


ENTRIES: list[dict] = []


def add(
    name: str,
    generators: list[list[int]],
    primes: list[int],
    comment: str,
    order: int,
    cl: int | None,
    gamma2: list[int] | None,
    condition: dict[int, str] | None = None,
) -> None:
    degree = len(generators[0])
    spec = GroupSpec(
        name, degree, tuple(tuple(g) for g in generators), tuple(primes)
    )
    group = spec.build(max_order=512)
    assert group.order == order, (name, group.order)
    series = lower_central_series(group)
    got_cl = len(series) - 1 if series[-1].is_trivial() else None
    assert got_cl == cl, (name, got_cl)
    if gamma2 is not None:
        got = abelian_type(group, series[1])
        assert got == gamma2, (name, got)
    for p in primes:
        status = lie_nilpotency_status(group, p)
        want = (condition or {}).get(p)
        if want is None:
            continue
        if want == "skip":
            assert not status.lie_nilpotent, (name, p)
            continue
        assert status.lie_nilpotent, (name, p, status)
        cls = classify_theorem1(group, p)
        want_cond = Condition.NONE if want == "None" else Condition[want]
        assert cls.condition is want_cond, (name, p, cls)
    ENTRIES.append(
        {
            "name": name,
            "degree": degree,
            "generators": generators,
            "primes": primes,
            "comment": comment,
        }
    )
    print(f"  {name:8s} order {order:3d} class {cl} gamma2 {gamma2}")


def main() -> None:
    print("building catalog entries")
    add("C2", [[2, 1]], [2], "cyclic of order 2", 2, 1, [])
    add("C3", [[2, 3, 1]], [3], "cyclic of order 3", 3, 1, [])
    add("C4", [[2, 3, 4, 1]], [2], "cyclic of order 4", 4, 1, [])
    add(
        "C2xC2",
        [[2, 1, 3, 4], [1, 2, 4, 3]],
        [2],
        "Klein four group",
        4,
        1,
        [],
    )
    add(
        "S3",
        [[2, 3, 1], [2, 1, 3]],
        [2, 3],
        "symmetric group on 3 points; not nilpotent",
        6,
        None,
        None,
        {2: "skip", 3: "skip"},
    )
    add(
        "D4",
        [[2, 3, 4, 1], [3, 2, 1, 4]],
        [2, 3],
        "dihedral of order 8; at p=3 the derived subgroup is not a 3-group",
        8,
        2,
        [2],
        {2: "None", 3: "skip"},
    )
    add(
        "Q8",
        [[3, 4, 2, 1, 8, 7, 5, 6], [5, 6, 7, 8, 2, 1, 4, 3]],
        [2],
        "quaternion group, regular representation",
        8,
        2,
        [2],
        {2: "None"},
    )
    add(
        "C2wrC2",
        [[2, 1, 3, 4], [3, 4, 1, 2]],
        [2],
        "wreath product C2 wr C2 (isomorphic to D4)",
        8,
        2,
        [2],
        {2: "None"},
    )
    add(
        "D8",
        [cycle_perm(8), [1] + list(range(8, 1, -1))],
        [2],
        "dihedral of order 16, derived subgroup C4",
        16,
        3,
        [4],
        {2: "None"},
    )
    mul, gens = q16_table()
    degree, images = regular_rep(mul, gens)
    add(
        "Q16",
        images,
        [2],
        "generalized quaternion of order 16, regular representation",
        16,
        3,
        [4],
        {2: "None"},
    )
    x, y = heisenberg(3)
    add(
        "ES27",
        [x, y],
        [3],
        "extraspecial of order 27 and exponent 3",
        27,
        2,
        [3],
        {3: "None"},
    )
    add(
        "C4wrC2",
        [block_perm(2, 4, [2, 3, 4, 1], 0), block_shift(2, 4)],
        [2],
        "wreath product C4 wr C2, order 32, derived subgroup C4",
        32,
        3,
        [4],
        {2: "None"},
    )
    add(
        "D32",
        [cycle_perm(16), [1] + list(range(16, 1, -1))],
        [2],
        "dihedral of order 32, derived subgroup C8",
        32,
        4,
        [8],
        {2: "None"},
    )
    add(
        "C2wrC4",
        [block_perm(4, 2, [2, 1], 0), block_shift(4, 2)],
        [2],
        "wreath product C2 wr C4, order 64, class 4",
        64,
        4,
        [2, 2, 2],
        {2: "III"},
    )
    r = [2, 3, 4, 1]
    s = [3, 2, 1, 4]
    add(
        "D4xD4",
        [
            direct_sum([4, 4], 0, r),
            direct_sum([4, 4], 0, s),
            direct_sum([4, 4], 1, r),
            direct_sum([4, 4], 1, s),
        ],
        [2],
        "direct product of two dihedral groups of order 8, class 2",
        64,
        2,
        [2, 2],
        {2: "I"},
    )
    mul, gens = g64_table()
    degree, images = regular_rep(mul, gens)
    add(
        "G64",
        images,
        [2],
        "order-64 class-4 group with gamma2 = C4 x C2 and gamma3 = C2 x C2",
        64,
        4,
        [4, 2],
        {2: "II"},
    )
    add(
        "C3wrC3",
        [block_perm(3, 3, [2, 3, 1], 0), block_shift(3, 3)],
        [3],
        "wreath product C3 wr C3, order 81, class 3",
        81,
        3,
        [3, 3],
        {3: "IV"},
    )
    x, y = heisenberg(5)
    add(
        "ES125",
        [x, y],
        [5],
        "extraspecial of order 125 and exponent 5",
        125,
        2,
        [5],
        {5: "None"},
    )

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(ENTRIES, indent=1) + "\n")
    print(f"wrote {len(ENTRIES)} entries to {OUT}")


if __name__ == "__main__":
    main()
