"""Orbits of GL(2, F_2) acting diagonally on the r pairs of F_2^{2r}.

An orbit is determined by the set ``eta0`` of positions holding (0,0) and
the unordered partition of the remaining positions into the classes of
X, Y and Z.  Parity-valid orbits (all three class sizes even, or all odd)
are exactly those inside V_r.

For all-odd orbits the invariant matrix is not the plain sum of its Pauli
strings but a sum weighted by the orientation of the label assignment;
:func:`signed_members` carries that weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .clifford import gl2_apply, gl2_elements
from .gf2 import NONZERO_PAIRS, ZERO, PairTuple, all_pair_tuples, eta_sets, in_Vr

_PERMS3 = list(permutations(range(3)))


def _perm_sign(p: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def _part_key(p: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return len(p), tuple(sorted(p))


def _fmt_set(s: frozenset[int]) -> str:
    return ",".join(str(j) for j in sorted(s))


@dataclass(frozen=True)
class OrbitDescriptor:
    r: int
    eta0: frozenset[int]
    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def __post_init__(self) -> None:
        eta0 = frozenset(self.eta0)
        parts = [frozenset(p) for p in self.parts]
        if len(parts) != 3:
            raise ValueError("an orbit partition has exactly three (possibly empty) parts")
        everything = set(eta0)
        total = len(eta0)
        for p in parts:
            everything |= p
            total += len(p)
        if total != len(everything) or everything != set(range(1, self.r + 1)):
            raise ValueError(f"eta0 and parts must partition 1..{self.r}")
        object.__setattr__(self, "eta0", eta0)
        object.__setattr__(self, "parts", tuple(sorted(parts, key=_part_key)))

    @property
    def sizes(self) -> tuple[int, int, int]:
        return tuple(len(p) for p in self.parts)

    @property
    def parity_valid(self) -> bool:
        return len({s % 2 for s in self.sizes}) == 1

    @property
    def all_odd(self) -> bool:
        return all(s % 2 for s in self.sizes)

    def label_of(self, j: int) -> int:
        """0 if position j is in eta0, else 1 + index of its part."""
        if j in self.eta0:
            return 0
        for k, p in enumerate(self.parts):
            if j in p:
                return k + 1
        raise IndexError(j)

    def sort_key(self) -> tuple:
        smallest = orbit_members(self)[0]
        return (-len(self.eta0), tuple(sorted(self.sizes, reverse=True)), smallest.uv())

    def __str__(self) -> str:
        parts = "|".join(_fmt_set(p) for p in self.parts)
        return f"eta0={{{_fmt_set(self.eta0)}}} parts={{{parts}}}"


def orbit_of(t: PairTuple) -> OrbitDescriptor:
    e0, ex, ey, ez = eta_sets(t)
    return OrbitDescriptor(t.r, e0, (ex, ey, ez))


def _assignments(d: OrbitDescriptor) -> Iterator[tuple[int, PairTuple]]:
    """Every bijection parts -> {X, Y, Z} with its orientation sign."""
    for perm in _PERMS3:
        pairs = [ZERO] * d.r
        for k, part in enumerate(d.parts):
            for j in part:
                pairs[j - 1] = NONZERO_PAIRS[perm[k]]
        yield _perm_sign(perm), PairTuple(tuple(pairs))


def _member_key(t: PairTuple) -> tuple:
    u, v = t.uv()
    return u + v


def orbit_members(d: OrbitDescriptor) -> list[PairTuple]:
    """All tuples in the orbit, sorted by their ``(u; v)`` bit string."""
    return sorted({t for _, t in _assignments(d)}, key=_member_key)


def signed_members(d: OrbitDescriptor) -> list[tuple[int, PairTuple]]:
    """Members with the weight they carry in the invariant orbit matrix.

    Weights are +1 unless the orbit is all-odd; then the weight is the
    orientation of the label assignment relative to the one sending the
    parts, in stored order, to X, Y, Z.  An all-odd orbit uses all three
    labels, so each member has exactly one assignment.
    """
    if not d.all_odd:
        return [(1, t) for t in orbit_members(d)]
    return sorted(_assignments(d), key=lambda st: _member_key(st[1]))


def _set_partitions(items: list[int], blocks: int) -> Iterator[list[list[int]]]:
    """Unordered partitions of ``items`` into at most ``blocks`` nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, blocks):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        if len(part) < blocks:
            yield [[first]] + part


def enumerate_all_orbits(r: int) -> list[OrbitDescriptor]:
    """Every orbit of the action on F_2^{2r}, parity-valid or not."""
    out = []
    positions = list(range(1, r + 1))
    for mask in range(1 << r):
        eta0 = frozenset(j for j in positions if mask >> (j - 1) & 1)
        rest = [j for j in positions if j not in eta0]
        for blocks in _set_partitions(rest, 3):
            parts = [frozenset(b) for b in blocks] + [frozenset()] * (3 - len(blocks))
            out.append(OrbitDescriptor(r, eta0, tuple(parts)))
    return sorted(out, key=OrbitDescriptor.sort_key)


def enumerate_Or(r: int) -> list[OrbitDescriptor]:
    """Parity-valid orbits (the orbits partitioning V_r), canonically ordered."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return [d for d in enumerate_all_orbits(r) if d.parity_valid]


def count_Or(r: int) -> int:
    """Number of parity-valid orbits, ``(4^(r-1) + 3 * 2^(r-1) + 2) / 6``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    num = 4 ** (r - 1) + 3 * 2 ** (r - 1) + 2
    q, rem = divmod(num, 6)
    assert rem == 0, num
    return q


def act(Q, t: PairTuple) -> PairTuple:
    return PairTuple(tuple(gl2_apply(Q, p) for p in t.pairs))


def brute_force_orbits(r: int, only_Vr: bool = True) -> list[frozenset[PairTuple]]:
    """Orbit decomposition by closing each tuple under the six matrices."""
    seen: set[PairTuple] = set()
    orbits = []
    group = gl2_elements()
    for t in all_pair_tuples(r):
        if t in seen or (only_Vr and not in_Vr(t)):
            continue
        orb = frozenset(act(Q, t) for Q in group)
        seen |= orb
        orbits.append(orb)
    return orbits


def count_fixed_points(Q, r: int) -> int:
    """Number of vectors of V_r fixed by ``Q`` (brute force)."""
    return sum(1 for t in all_pair_tuples(r) if in_Vr(t) and act(Q, t) == t)
