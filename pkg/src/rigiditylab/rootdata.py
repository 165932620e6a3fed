"""Root-system combinatorics for the simple types A through G.

A root system is stored as its Cartan matrix plus the list of positive
roots, each root an integer coefficient vector over the simple-root basis.
Positive roots are generated from the simple roots by the usual root-string
closure, height by height.  Everything downstream (dim G, Cartan
determinants, the class-dimension bounds j_d, enumeration of tuples meeting
the dimension condition) reads off this data.

Conventions: cartan[i][j] is the pairing of simple root i against simple
coroot j, so the rows of the B-series matrices end with a -2 entry.  Node
numbering follows the standard Bourbaki tables.

j_d here is the largest conjugacy-class dimension among semisimple torus
elements of order dividing d (with exact order d enforced through the gcd
condition on exponent tuples).  This is the characteristic-coprime model;
callers working in a characteristic dividing d get a flag from the report
layer, not a different number.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import InputError, InvariantViolation, WorkCapExceeded

_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


def _classical_positive_count(type_letter: str, rank: int) -> int:
    if type_letter == "A":
        return rank * (rank + 1) // 2
    if type_letter in ("B", "C"):
        return rank * rank
    if type_letter == "D":
        return rank * (rank - 1)
    if type_letter == "E":
        return {6: 36, 7: 63, 8: 120}[rank]
    if type_letter == "F":
        return 24
    return 6  # G_2


def _cartan_matrix(type_letter: str, rank: int) -> list[list[int]]:
    m = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 2

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        m[i][j] = cij
        m[j][i] = cji

    if type_letter in ("A", "B", "C", "F"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if type_letter == "B":
            m[rank - 2][rank - 1] = -2
        elif type_letter == "C":
            m[rank - 1][rank - 2] = -2
        elif type_letter == "F":
            m[1][2] = -2
    elif type_letter == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif type_letter == "E":
        for a, b in ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)):
            if a <= rank and b <= rank:
                bond(a - 1, b - 1)
    else:  # G_2
        m[0][1] = -1
        m[1][0] = -3
    return m


def _closure(cartan: list[list[int]], rank: int) -> list[tuple[int, ...]]:
    """All positive roots, by root-string closure from the simple roots.

    For a root b and simple root index j, b + alpha_j is a root exactly when
    p - <b, alpha_j-check> >= 1, where p counts how far the string extends
    below b.  Iterates height by height until no new roots appear.
    """
    simple = [tuple(1 if t == j else 0 for t in range(rank)) for j in range(rank)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for j in range(rank):
                pairing = sum(c * cartan[i][j] for i, c in enumerate(b) if c)
                down = list(b)
                p = 0
                while True:
                    down[j] -= 1
                    if down[j] < 0 or tuple(down) not in roots:
                        break
                    p += 1
                if p - pairing >= 1:
                    up = list(b)
                    up[j] += 1
                    cand = tuple(up)
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@dataclass(frozen=True)
class RootSystem:
    """A simple root system: type, rank, Cartan matrix, positive roots."""

    type_letter: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(1 if t == j else 0 for t in range(self.rank))
            for j in range(self.rank)
        )

    @property
    def dim_g(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @property
    def coxeter_number(self) -> int:
        return 2 * len(self.positive_roots) // self.rank

    def __repr__(self) -> str:
        return f"RootSystem({self.type_letter}{self.rank})"


@lru_cache(maxsize=None)
def build(type_letter: str, rank: int) -> RootSystem:
    """The root system of the given simple type and rank.

    Valid pairs: A (rank >= 1), B and C (rank >= 2), D (rank >= 3),
    E6/E7/E8, F4, G2.
    """
    letter = str(type_letter).upper()
    if letter not in _VALID_RANKS:
        raise InputError(f"unknown type letter {type_letter!r}")
    if not isinstance(rank, int) or not _VALID_RANKS[letter](rank):
        raise InputError(f"invalid rank {rank} for type {letter}")

    cartan = _cartan_matrix(letter, rank)
    roots = _closure(cartan, rank)

    expected = _classical_positive_count(letter, rank)
    if len(roots) != expected:
        raise InvariantViolation(
            f"{letter}{rank}: closure found {len(roots)} positive roots, "
            f"classical count is {expected}"
        )
    for i in range(rank):
        if cartan[i][i] != 2 or any(cartan[i][j] > 0 for j in range(rank) if j != i):
            raise InvariantViolation(f"malformed Cartan matrix for {letter}{rank}")
    if any(min(r) < 0 for r in roots):
        raise InvariantViolation(f"negative coefficient in a positive root of {letter}{rank}")

    return RootSystem(
        type_letter=letter,
        rank=rank,
        cartan=tuple(tuple(row) for row in cartan),
        positive_roots=tuple(roots),
    )


def cartan_det(rs: RootSystem) -> int:
    """Exact integer determinant of the Cartan matrix."""
    return _int_det([list(row) for row in rs.cartan])


def _int_det(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class JEntry(NamedTuple):
    j: int
    witness: tuple[int, ...]


def j_scan(rs: RootSystem, d: int, work_cap: int | None = None) -> JEntry:
    """j_d together with its lexicographically least maximizer.

    Scans exponent tuples a in (Z/d)^rank with gcd(a_1,...,a_rank, d) = 1;
    the class dimension of the corresponding torus element is dim G - rank
    minus the number of roots (both signs) whose exponent sum vanishes
    mod d.  Cost is d^rank times the root count, guarded by work_cap.
    """
    if d < 1:
        raise InputError(f"order d = {d} must be >= 1")
    if d == 1:
        return JEntry(0, (0,) * rs.rank)
    cost = d**rs.rank * len(rs.positive_roots)
    if work_cap is not None and cost > work_cap:
        raise WorkCapExceeded(
            f"j_value scan for {rs.type_letter}{rs.rank}, d = {d} needs "
            f"~{cost} root evaluations, above the cap {work_cap}"
        )
    semisimple_dim = 2 * len(rs.positive_roots)
    supports = [
        tuple((i, c) for i, c in enumerate(root) if c)
        for root in rs.positive_roots
    ]
    best = -1
    witness: tuple[int, ...] = ()
    for a in itertools.product(range(d), repeat=rs.rank):
        if math.gcd(*a, d) != 1:
            continue
        killed = 0
        for support in supports:
            if sum(c * a[i] for i, c in support) % d == 0:
                killed += 2
        val = semisimple_dim - killed
        if val > best:
            best = val
            witness = a
            if killed == 0:
                break  # regular witness; no tuple can do better
    if best < 0:
        raise InvariantViolation(f"no order-{d} exponent tuple found (rank {rs.rank})")
    return JEntry(best, witness)


def j_value(rs: RootSystem, d: int, work_cap: int | None = None) -> int:
    """Largest class dimension over semisimple elements of order d."""
    return j_scan(rs, d, work_cap).j


@dataclass(frozen=True)
class ClassDimTable:
    """j_d values (with witnesses) for d = 1 .. d_max."""

    root_system: RootSystem
    entries: tuple[tuple[int, JEntry], ...]

    def j(self, d: int) -> int:
        return dict(self.entries)[d].j

    def witness(self, d: int) -> tuple[int, ...]:
        return dict(self.entries)[d].witness


def class_dim_table(rs: RootSystem, d_max: int,
                    work_cap: int | None = None) -> ClassDimTable:
    if d_max < 1:
        raise InputError(f"d_max = {d_max} must be >= 1")
    entries = []
    ceiling = rs.dim_g - rs.rank
    for d in range(1, d_max + 1):
        entry = j_scan(rs, d, work_cap)
        if entry.j > ceiling or (d == 1 and entry.j != 0):
            raise InvariantViolation(
                f"j_{d}({rs.type_letter}{rs.rank}) = {entry.j} breaks the "
                f"0 <= j_d <= {ceiling} bound"
            )
        entries.append((d, entry))
    return ClassDimTable(root_system=rs, entries=tuple(entries))


@dataclass(frozen=True)
class RigidTupleResult:
    """Tuples meeting the dimension condition, plus the plateau order."""

    root_system: RootSystem
    n: int
    a_max: int
    tuples: tuple[tuple[int, ...], ...]
    plateau: int


def rigid_tuples(rs: RootSystem, n: int, a_max: int,
                 work_cap: int | None = None) -> RigidTupleResult:
    """All non-decreasing tuples (a_1,...,a_n), 2 <= a_i <= a_max, whose
    j-values sum to exactly 2 dim G.

    Also reports the plateau order: the least d at which j_d reaches its
    ceiling dim G - rank, so families beyond a_max can be extrapolated.
    The plateau always exists by d = the Coxeter number (the all-ones
    exponent tuple meets no root there, since root heights stop short
    of it).
    """
    if n < 3:
        raise InputError(f"tuple length n = {n} must be >= 3")
    if a_max < 2:
        raise InputError(f"a_max = {a_max} must be >= 2")
    table = class_dim_table(rs, max(a_max, rs.coxeter_number), work_cap)
    jmap = {d: e.j for d, e in table.entries}

    ceiling = rs.dim_g - rs.rank
    plateau = next((d for d, e in table.entries if e.j == ceiling), None)
    if plateau is None:
        raise InvariantViolation(
            f"no regular order found up to the Coxeter number for "
            f"{rs.type_letter}{rs.rank}"
        )

    target = 2 * rs.dim_g
    hits = tuple(
        t for t in itertools.combinations_with_replacement(range(2, a_max + 1), n)
        if sum(jmap[a] for a in t) == target
    )
    return RigidTupleResult(root_system=rs, n=n, a_max=a_max,
                            tuples=hits, plateau=plateau)
