"""Small utilities for the symmetric group on the four cone points.

Permutations are tuples of length 4: ``sigma[i]`` is the image of
``i`` (0-based).  Cone points are printed 1-based, matching the usual
cycle notation (1,2)(3,4).
"""

from __future__ import annotations

import itertools
from typing import Iterable

Perm = tuple[int, int, int, int]

IDENTITY: Perm = (0, 1, 2, 3)

ALL_S4: tuple[Perm, ...] = tuple(itertools.permutations(range(4)))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: (a*b)(x) = a(b(x))."""
    return (a[b[0]], a[b[1]], a[b[2]], a[b[3]])


def inverse(a: Perm) -> Perm:
    inv = [0] * 4
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)  # type: ignore[return-value]


def perm_order(a: Perm) -> int:
    n, x = 1, a
    while x != IDENTITY:
        x = compose(a, x)
        n += 1
    return n


def from_cycles(spec: str) -> Perm:
    """Parse 1-based cycle notation, e.g. "(1,2)(3,4)" or "()"."""
    perm = list(range(4))
    body = spec.replace(" ", "")
    if body in ("()", ""):
        return IDENTITY
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"bad cycle string: {spec!r}")
    for cyc in body[1:-1].split(")("):
        pts = [int(t) - 1 for t in cyc.split(",")]
        if any(not 0 <= x < 4 for x in pts):
            raise ValueError(f"bad cycle string: {spec!r}")
        for i, x in enumerate(pts):
            perm[x] = pts[(i + 1) % len(pts)]
    return tuple(perm)  # type: ignore[return-value]


def to_cycles(a: Perm) -> str:
    seen = [False] * 4
    out = []
    for start in range(4):
        if seen[start] or a[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = a[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = a[x]
        out.append("(" + ",".join(str(i + 1) for i in cyc) + ")")
    return "".join(out) if out else "()"


def closure(gens: Iterable[Perm]) -> frozenset[Perm]:
    gens = tuple(gens)
    els = {IDENTITY, *gens}
    frontier = list(els)
    while frontier:
        nxt = []
        for g in gens:
            for h in frontier:
                gh = compose(g, h)
                if gh not in els:
                    els.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return frozenset(els)


def minimal_generators(group: frozenset[Perm]) -> tuple[Perm, ...]:
    """Deterministic small generating set (greedy over sorted elements)."""
    gens: list[Perm] = []
    have: frozenset[Perm] = frozenset({IDENTITY})
    for g in sorted(group):
        if g == IDENTITY:
            continue
        if g not in have:
            gens.append(g)
            have = closure(gens)
            if have == group:
                break
    return tuple(gens)


def orbits(group: frozenset[Perm]) -> list[tuple[int, ...]]:
    """Orbits of the group on {0,1,2,3}, each sorted, listed by minimum."""
    seen = [False] * 4
    out = []
    for i in range(4):
        if seen[i]:
            continue
        orb = {g[i] for g in group}
        for x in orb:
            seen[x] = True
        out.append(tuple(sorted(orb)))
    return out


def stabilizer_order(group: frozenset[Perm], point: int) -> int:
    return sum(1 for g in group if g[point] == point)


def structure_name(group: frozenset[Perm]) -> str:
    """Abstract type of a subgroup of S_4 (only orders arising here)."""
    n = len(group)
    if n == 1:
        return "1"
    if n == 2:
        return "Z2"
    if n == 3:
        return "Z3"
    if n == 4:
        return "Z4" if any(perm_order(g) == 4 for g in group) else "Z2^2"
    if n == 8:
        return "D4"
    if n == 12:
        return "A4"
    raise ValueError(f"unexpected subgroup of order {n}")
