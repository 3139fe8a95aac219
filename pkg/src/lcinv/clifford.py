"""The single-qubit Clifford group modulo phases, and local Clifford elements.

Under conjugation a Clifford ``U`` acts on the nonzero Pauli labels as

    U sigma_p U^dag = alpha_p sigma_{Q p},     p in {(0,1), (1,0), (1,1)}

with ``Q`` in GL(2, F_2).  Only ``alpha_01`` and ``alpha_10`` are free; the
third sign is fixed by ``sigma_(1,1) = i sigma_(0,1) sigma_(1,0)`` and
comes out as

    alpha_11 = orientation(Q) * alpha_01 * alpha_10

where ``orientation(Q)`` is the parity of the permutation Q induces on
{X, Y, Z}.  For instance H Y H = -Y, although H fixes the signs of X and Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .gf2 import NONZERO_PAIRS, X_PAIR, Z_PAIR, ZERO, Pair, PauliIndex

Matrix2 = tuple[tuple[int, int], tuple[int, int]]

SQRT2 = np.sqrt(2.0)

# dense Pauli matrices indexed by pair code 2*u + v: I, X, Z, Y
PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[1, 0], [0, -1]],
        [[0, -1j], [1j, 0]],
    ],
    dtype=complex,
)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2
PHASE = np.array([[1, 0], [0, 1j]], dtype=complex)

# identity, the three involutions, the two elements of order three
_GL2: tuple[Matrix2, ...] = (
    ((1, 0), (0, 1)),
    ((0, 1), (1, 0)),
    ((1, 1), (0, 1)),
    ((1, 0), (1, 1)),
    ((0, 1), (1, 1)),
    ((1, 1), (1, 0)),
)


def gl2_elements() -> list[Matrix2]:
    """The six invertible 2x2 matrices over F_2.

    Order: identity, then [[0,1],[1,0]], [[1,1],[0,1]], [[1,0],[1,1]]
    (order two), then [[0,1],[1,1]], [[1,1],[1,0]] (order three).
    """
    return list(_GL2)


def gl2_apply(Q: Matrix2, p: Pair) -> Pair:
    (a, b), (c, d) = Q
    return (a * p[0] + b * p[1]) % 2, (c * p[0] + d * p[1]) % 2


def gl2_mul(Q: Matrix2, R: Matrix2) -> Matrix2:
    (a, b), (c, d) = Q
    (e, f), (g, h) = R
    return (((a * e + b * g) % 2, (a * f + b * h) % 2), ((c * e + d * g) % 2, (c * f + d * h) % 2))


def gl2_order(Q: Matrix2) -> int:
    k, P = 1, Q
    while P != _GL2[0]:
        P = gl2_mul(P, Q)
        k += 1
    return k


def orientation(Q: Matrix2) -> int:
    """Sign of the permutation of (X, Y, Z) induced by ``Q``."""
    perm = [NONZERO_PAIRS.index(gl2_apply(Q, p)) for p in NONZERO_PAIRS]
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _check_sign(s: int, name: str) -> int:
    if s not in (1, -1):
        raise ValueError(f"{name} must be +1 or -1, got {s}")
    return int(s)


@dataclass(frozen=True)
class SingleClifford:
    """Conjugation action of a one-qubit Clifford: ``Q`` plus two signs."""

    Q: Matrix2
    alpha01: int = 1
    alpha10: int = 1

    def __post_init__(self) -> None:
        Q = tuple(tuple(int(x) % 2 for x in row) for row in self.Q)
        if Q not in _GL2:
            raise ValueError(f"Q={Q} is not invertible over F_2")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "alpha01", _check_sign(self.alpha01, "alpha01"))
        object.__setattr__(self, "alpha10", _check_sign(self.alpha10, "alpha10"))

    @property
    def alpha11(self) -> int:
        return orientation(self.Q) * self.alpha01 * self.alpha10

    def sign(self, p: Pair) -> int:
        if p == ZERO:
            return 1
        if p == X_PAIR:
            return self.alpha01
        if p == Z_PAIR:
            return self.alpha10
        return self.alpha11

    def compose(self, first: SingleClifford) -> SingleClifford:
        """The element acting as ``first`` followed by ``self``."""
        a01 = first.alpha01 * self.sign(gl2_apply(first.Q, X_PAIR))
        a10 = first.alpha10 * self.sign(gl2_apply(first.Q, Z_PAIR))
        return SingleClifford(gl2_mul(self.Q, first.Q), a01, a10)

    def __str__(self) -> str:
        (a, b), (c, d) = self.Q
        s = {1: "+", -1: "-"}
        return f"Q=[[{a}{b}],[{c}{d}]] a01={s[self.alpha01]} a10={s[self.alpha10]}"


IDENTITY = SingleClifford(_GL2[0], 1, 1)


def conjugate_pauli(c: SingleClifford, p: Pair) -> tuple[int, Pair]:
    """``(alpha_p, Q p)`` such that ``U sigma_p U^dag = alpha_p sigma_{Qp}``."""
    p = (int(p[0]), int(p[1]))
    return c.sign(p), gl2_apply(c.Q, p)


@dataclass(frozen=True)
class LocalClifford:
    factors: tuple[SingleClifford, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def n(self) -> int:
        return len(self.factors)

    def unitary(self) -> np.ndarray:
        U = np.ones((1, 1), dtype=complex)
        for c in self.factors:
            U = np.kron(U, unitary_of(c))
        return U

    def compose(self, first: LocalClifford) -> LocalClifford:
        if first.n != self.n:
            raise ValueError("qubit count mismatch")
        return LocalClifford(tuple(a.compose(b) for a, b in zip(self.factors, first.factors)))


def local_conjugate(L: LocalClifford, w: PauliIndex) -> tuple[int, PauliIndex]:
    if L.n != w.n:
        raise ValueError(f"local Clifford on {L.n} qubits cannot act on a {w.n}-qubit label")
    sign = 1
    pairs = []
    for c, p in zip(L.factors, w.pairs()):
        s, q = conjugate_pauli(c, p)
        sign *= s
        pairs.append(q)
    return sign, PauliIndex.from_pairs(pairs)


@lru_cache(maxsize=None)
def _effective() -> tuple[SingleClifford, ...]:
    return tuple(
        SingleClifford(Q, a01, a10) for Q in _GL2 for a01, a10 in ((1, 1), (1, -1), (-1, 1), (-1, -1))
    )


def enumerate_effective_C1() -> list[SingleClifford]:
    """The 24 conjugation-distinct one-qubit Cliffords.

    Ordered by ``Q`` as in :func:`gl2_elements`, then by signs
    (++, +-, -+, --) for ``(alpha01, alpha10)``.
    """
    return list(_effective())


def _canonical_phase(U: np.ndarray) -> np.ndarray:
    flat = U.ravel()
    k = int(np.flatnonzero(np.abs(flat) > 1e-9)[0])
    return U * (abs(flat[k]) / flat[k])


def action_of_unitary(U: np.ndarray, atol: float = 1e-9) -> SingleClifford:
    """Read off ``(Q, alpha01, alpha10)`` from a dense 2x2 Clifford."""
    images = []
    for p in (Z_PAIR, X_PAIR):
        M = U @ PAULI[2 * p[0] + p[1]] @ U.conj().T
        for code in (1, 2, 3):
            overlap = np.trace(PAULI[code] @ M) / 2
            if abs(abs(overlap) - 1) < atol:
                sign = int(round(overlap.real))
                if abs(overlap - sign) > atol:
                    raise ValueError("conjugated Pauli has a non-real phase")
                images.append((sign, ((code >> 1) & 1, code & 1)))
                break
        else:
            raise ValueError("matrix does not normalize the Pauli group")
    (s10, z_img), (s01, x_img) = images
    Q = ((z_img[0], x_img[0]), (z_img[1], x_img[1]))
    return SingleClifford(Q, s01, s10)


@lru_cache(maxsize=None)
def _closure() -> tuple[tuple[SingleClifford, np.ndarray], ...]:
    found: list[np.ndarray] = [np.eye(2, dtype=complex)]
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for G in (HADAMARD, PHASE):
                B = _canonical_phase(G @ A)
                if not any(np.allclose(B, C, atol=1e-10) for C in found):
                    found.append(B)
                    nxt.append(B)
        frontier = nxt
    return tuple((action_of_unitary(U), U) for U in found)


def generator_closure() -> list[np.ndarray]:
    """Dense closure of H and S modulo global phase (first nonzero entry real positive)."""
    return [U.copy() for _, U in _closure()]


@lru_cache(maxsize=None)
def _representatives() -> dict[SingleClifford, np.ndarray]:
    reps: dict[SingleClifford, np.ndarray] = {}
    for c, U in _closure():
        reps.setdefault(c, U)
    return reps


def unitary_of(c: SingleClifford) -> np.ndarray:
    """A dense unitary realising ``c``, taken from the closure of H and S."""
    try:
        return _representatives()[c].copy()
    except KeyError:
        raise RuntimeError(f"no unitary in the H/S closure realises {c}") from None


def random_local_clifford(n: int, seed: Union[int, np.random.Generator, None] = None) -> LocalClifford:
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    table = _effective()
    return LocalClifford(tuple(table[k] for k in rng.integers(0, 24, size=n)))


def local_from_indices(indices: Sequence[int]) -> LocalClifford:
    table = _effective()
    return LocalClifford(tuple(table[k] for k in indices))


def action_table() -> str:
    """One line per effective element: how it maps X, Y, Z."""
    lines = []
    names = {(0, 1): "X", (1, 1): "Y", (1, 0): "Z"}
    for k, c in enumerate(enumerate_effective_C1()):
        cells = []
        for p in NONZERO_PAIRS:
            s, q = conjugate_pauli(c, p)
            cells.append(f"{names[p]}->{'+' if s > 0 else '-'}{names[q]}")
        lines.append(f"{k:2d}  {c}  " + " ".join(cells))
    return "\n".join(lines)
