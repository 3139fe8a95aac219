"""Binary labels for phase-free Pauli operators.

A single-qubit Pauli is labelled by a bit pair ``(u, v)``::

    sigma_0 = I  <-> (0, 0)
    sigma_1 = X  <-> (0, 1)
    sigma_3 = Z  <-> (1, 0)
    sigma_2 = Y  <-> (1, 1)

so ``u`` is the Z-part and ``v`` the X-part.  Internally a pair is often
packed into the integer code ``2*u + v`` (I=0, X=1, Z=2, Y=3).  Qubit and
tuple positions are 1-based whenever they leave this module as sets.
"""

from __future__ import annotations

import re
from itertools import product
from dataclasses import dataclass
from typing import Iterable, Sequence

Pair = tuple[int, int]

ZERO: Pair = (0, 0)
X_PAIR: Pair = (0, 1)
Y_PAIR: Pair = (1, 1)
Z_PAIR: Pair = (1, 0)

# order used for the eta_x, eta_y, eta_z classes
NONZERO_PAIRS: tuple[Pair, Pair, Pair] = (X_PAIR, Y_PAIR, Z_PAIR)


def pair_code(p: Pair) -> int:
    return 2 * p[0] + p[1]


def code_pair(c: int) -> Pair:
    return (c >> 1) & 1, c & 1


def _bits(seq: Iterable[int], name: str) -> tuple[int, ...]:
    out = tuple(int(b) for b in seq)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"{name} must contain only 0/1 entries, got {out}")
    return out


@dataclass(frozen=True)
class PauliIndex:
    """Element ``(u, v)`` of F_2^{2n} labelling ``sigma_(u,v)`` on n qubits."""

    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self) -> None:
        u = _bits(self.u, "u")
        v = _bits(self.v, "v")
        if len(u) != len(v):
            raise ValueError(f"u and v must have equal length, got {len(u)} and {len(v)}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return len(self.u)

    @classmethod
    def identity(cls, n: int) -> PauliIndex:
        return cls((0,) * n, (0,) * n)

    @classmethod
    def from_string(cls, text: str) -> PauliIndex:
        """Parse ``"10|01"`` or ``"1001"`` (u-block first)."""
        s = text.strip()
        if "|" in s:
            left, _, right = s.partition("|")
            if len(left) != len(right):
                raise ValueError(f"unbalanced Pauli string {text!r}")
        else:
            if len(s) % 2:
                raise ValueError(f"Pauli string {text!r} must have even length")
            left, right = s[: len(s) // 2], s[len(s) // 2:]
        if not re.fullmatch(r"[01]*", left + right):
            raise ValueError(f"Pauli string {text!r} contains characters other than 0/1")
        return cls(tuple(map(int, left)), tuple(map(int, right)))

    @classmethod
    def from_pairs(cls, pairs: Sequence[Pair]) -> PauliIndex:
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def from_codes(cls, codes: Sequence[int]) -> PauliIndex:
        return cls.from_pairs([code_pair(c) for c in codes])

    def pairs(self) -> tuple[Pair, ...]:
        return tuple(zip(self.u, self.v))

    def codes(self) -> tuple[int, ...]:
        return tuple(2 * a + b for a, b in zip(self.u, self.v))

    @property
    def index(self) -> int:
        """Position in an x-table: base-4 number of the codes, qubit 1 most significant."""
        k = 0
        for c in self.codes():
            k = 4 * k + c
        return k

    @classmethod
    def from_index(cls, index: int, n: int) -> PauliIndex:
        codes = []
        for _ in range(n):
            codes.append(index % 4)
            index //= 4
        return cls.from_codes(codes[::-1])

    def __add__(self, other: PauliIndex) -> PauliIndex:
        if self.n != other.n:
            raise ValueError(f"cannot add Pauli labels on {self.n} and {other.n} qubits")
        return PauliIndex(
            tuple(a ^ b for a, b in zip(self.u, other.u)),
            tuple(a ^ b for a, b in zip(self.v, other.v)),
        )

    def to_string(self, sep: str = "") -> str:
        return "".join(map(str, self.u)) + sep + "".join(map(str, self.v))

    def __str__(self) -> str:
        return self.to_string("|")

    def letters(self) -> str:
        return "".join("IXZY"[c] for c in self.codes())


def support(w: PauliIndex) -> frozenset[int]:
    """Qubits (1-based) on which ``w`` acts non-trivially."""
    return frozenset(i + 1 for i, p in enumerate(w.pairs()) if p != ZERO)


def symplectic_product(a: PauliIndex, b: PauliIndex) -> int:
    """``u.v' + u'.v`` over F_2; zero iff the two Paulis commute."""
    if a.n != b.n:
        raise ValueError("qubit count mismatch")
    s = sum(x * y for x, y in zip(a.u, b.v)) + sum(x * y for x, y in zip(b.u, a.v))
    return s % 2


def gf2_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over F_2 of a list of bit rows."""
    ints = [int("".join(map(str, r)) or "0", 2) for r in rows]
    rank = 0
    while ints:
        pivot = max(ints)
        if pivot == 0:
            break
        ints.remove(pivot)
        top = pivot.bit_length() - 1
        ints = [x ^ pivot if (x >> top) & 1 else x for x in ints]
        rank += 1
    return rank


@dataclass(frozen=True)
class PairTuple:
    """A vector of F_2^{2r} viewed as r pairs ``(u_j, v_j)``."""

    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        clean = []
        for p in self.pairs:
            a, b = _bits(p, "pair")
            clean.append((a, b))
        object.__setattr__(self, "pairs", tuple(clean))

    @property
    def r(self) -> int:
        return len(self.pairs)

    @classmethod
    def from_uv(cls, u: Sequence[int], v: Sequence[int]) -> PairTuple:
        if len(u) != len(v):
            raise ValueError("u and v must have equal length")
        return cls(tuple(zip(u, v)))

    @classmethod
    def from_codes(cls, codes: Sequence[int]) -> PairTuple:
        return cls(tuple(code_pair(c) for c in codes))

    def codes(self) -> tuple[int, ...]:
        return tuple(pair_code(p) for p in self.pairs)

    def uv(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(p[0] for p in self.pairs), tuple(p[1] for p in self.pairs)

    def __str__(self) -> str:
        u, v = self.uv()
        return "(" + ",".join(map(str, u)) + ";" + ",".join(map(str, v)) + ")"


def in_Vr(t: PairTuple) -> bool:
    """True iff the pairs of ``t`` XOR to (0, 0)."""
    su = sv = 0
    for a, b in t.pairs:
        su ^= a
        sv ^= b
    return su == 0 and sv == 0


def eta_sets(t: PairTuple) -> tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]:
    """Positions (1-based) holding (0,0), (0,1), (1,1), (1,0) respectively."""
    buckets: dict[Pair, set[int]] = {ZERO: set(), X_PAIR: set(), Y_PAIR: set(), Z_PAIR: set()}
    for j, p in enumerate(t.pairs, start=1):
        buckets[p].add(j)
    return (
        frozenset(buckets[ZERO]),
        frozenset(buckets[X_PAIR]),
        frozenset(buckets[Y_PAIR]),
        frozenset(buckets[Z_PAIR]),
    )


def all_pair_tuples(r: int) -> list[PairTuple]:
    """All 4^r tuples, ordered by their code sequence."""
    return [PairTuple.from_codes(c) for c in product(range(4), repeat=r)]
