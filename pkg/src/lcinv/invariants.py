"""Construction and evaluation of the local-Clifford invariants.

Conventions
-----------
* ``x_w = Tr(rho sigma_w)`` for every n-qubit Pauli label ``w``; the table
  is indexed by :attr:`PauliIndex.index` (base-4 codes, qubit 1 first).
* ``p^gamma(rho) = Tr(A_gamma rho^{(x) r})`` with no extra normalisation,
  which equals the signed sum of ``x_{w1} ... x_{wr}`` over the tuples of
  gamma.
* ``signed=True`` (default) weights members of all-odd orbits by their
  orientation.  This is what averaging over the Clifford group produces,
  and the only choice that gives invariant polynomials.  ``signed=False``
  gives the plain orbit sums, which change sign under e.g. a Hadamard when
  some row of gamma is all-odd.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import permutations, product
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from .clifford import PAULI, enumerate_effective_C1, unitary_of
from .gf2 import PauliIndex, all_pair_tuples, support
from .limits import CapExceeded, Limits, current
from .normal_form import OrbitMatrix, gamma_from_matrix
from .orbits import OrbitDescriptor, orbit_members, orbit_of, signed_members

GammaLike = Union[OrbitMatrix, Sequence[OrbitDescriptor]]


def as_gamma(g: GammaLike) -> tuple[OrbitDescriptor, ...]:
    if isinstance(g, OrbitMatrix):
        return gamma_from_matrix(g)
    g = tuple(g)
    if not g or any(not d.parity_valid or d.r != g[0].r for d in g):
        raise ValueError("gamma must be a nonempty tuple of parity-valid orbits with one common r")
    return g


def qubit_count(rho: np.ndarray) -> int:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    d = rho.shape[0]
    n = d.bit_length() - 1
    if d < 1 or 1 << n != d:
        raise ValueError(f"matrix side {d} is not a power of two")
    return n


def pauli_matrix(codes: Sequence[int]) -> np.ndarray:
    """Dense ``sigma_w`` for per-qubit codes (I=0, X=1, Z=2, Y=3)."""
    return reduce(np.kron, (PAULI[c] for c in codes), np.ones((1, 1), dtype=complex))


def pauli_of(w: PauliIndex) -> np.ndarray:
    return pauli_matrix(w.codes())


@dataclass(frozen=True)
class XTable:
    n: int
    values: np.ndarray

    def __getitem__(self, w: Union[PauliIndex, int]) -> complex:
        k = w.index if isinstance(w, PauliIndex) else int(w)
        return complex(self.values[k])

    def __len__(self) -> int:
        return len(self.values)


def x_transform(rho: np.ndarray, n: Optional[int] = None) -> XTable:
    rho = np.asarray(rho, dtype=complex)
    m = qubit_count(rho)
    if n is not None and n != m:
        raise ValueError(f"matrix of side {rho.shape[0]} does not act on {n} qubits")
    if m == 0:
        return XTable(0, np.array([rho[0, 0]]))
    # Tr(rho sigma_w) = sum rho[i, j] sigma_w[j, i], contracted qubit by qubit
    operands: list = [rho.reshape([2] * (2 * m)), list(range(2 * m))]
    for q in range(m):
        operands += [PAULI, [2 * m + q, m + q, q]]
    values = np.einsum(*operands, list(range(2 * m, 3 * m)), optimize="greedy")
    return XTable(m, values.reshape(-1))


def rho_from_x(x: XTable) -> np.ndarray:
    d = 2**x.n
    out = np.zeros((d, d), dtype=complex)
    for k, c in enumerate(x.values):
        if c != 0:
            out += c * pauli_matrix(PauliIndex.from_index(k, x.n).codes())
    return out / d


@lru_cache(maxsize=None)
def _member_arrays(d: OrbitDescriptor, signed: bool) -> tuple[np.ndarray, np.ndarray]:
    if signed:
        members = signed_members(d)
    else:
        members = [(1, t) for t in orbit_members(d)]
    labels = np.array([t.codes() for _, t in members], dtype=np.int64)
    signs = np.array([s for s, _ in members], dtype=float)
    return labels, signs


def _tuple_grid(g: Sequence[OrbitDescriptor], signed: bool) -> tuple[np.ndarray, np.ndarray]:
    """Indices of ``(w^(1), ..., w^(r))`` over all tuples of gamma, and their weights."""
    r = g[0].r
    idx = np.zeros((r,), dtype=np.int64)
    sgn = np.ones(())
    for d in g:
        labels, signs = _member_arrays(d, signed)
        idx = idx[..., None, :] * 4 + labels
        sgn = sgn[..., None] * signs
    return idx.reshape(-1, r), sgn.reshape(-1)


def eval_gamma(x: XTable, g: GammaLike, signed: bool = True) -> complex:
    """``p^gamma`` as a polynomial in the x-variables."""
    g = as_gamma(g)
    if len(g) != x.n:
        raise ValueError(f"gamma has {len(g)} rows but the x-table is for {x.n} qubits")
    idx, sgn = _tuple_grid(g, signed)
    return complex(np.sum(np.prod(x.values[idx], axis=1) * sgn))


def orbit_matrix(d: OrbitDescriptor, signed: bool = True) -> np.ndarray:
    """``A_Gamma`` on r qubits: the (signed) sum of the Pauli strings of the orbit."""
    labels, signs = _member_arrays(d, signed)
    return sum(s * pauli_matrix(row) for row, s in zip(labels, signs))


def _check_dense(side: int, limits: Optional[Limits]) -> None:
    cap = (limits or current()).max_dense_dim
    if side > cap:
        raise CapExceeded(f"dense dimension {side} exceeds the cap of {cap}")


def copy_major(A: np.ndarray, n: int, r: int) -> np.ndarray:
    """Reorder tensor factors from (qubit, copy) order to (copy, qubit) order."""
    perm = [i * r + j for j in range(r) for i in range(n)]
    T = A.reshape([2] * (2 * n * r))
    T = T.transpose(perm + [n * r + p for p in perm])
    return T.reshape(A.shape)


def build_A_gamma(g: GammaLike, signed: bool = True, method: str = "permutation",
                  limits: Optional[Limits] = None) -> np.ndarray:
    """Dense ``A_gamma`` acting on r copies of n qubits (copy-major order).

    ``method="permutation"`` conjugates the tensor product of the per-qubit
    orbit matrices by the factor permutation; ``method="direct"`` sums the
    Pauli strings of all tuples of gamma.
    """
    g = as_gamma(g)
    n, r = len(g), g[0].r
    _check_dense(2 ** (n * r), limits)
    if method == "permutation":
        A = reduce(np.kron, (orbit_matrix(d, signed) for d in g))
        return copy_major(A, n, r)
    if method == "direct":
        idx, sgn = _tuple_grid(g, signed)
        out = np.zeros((2 ** (n * r),) * 2, dtype=complex)
        for row, s in zip(idx, sgn):
            codes = [PauliIndex.from_index(int(k), n).codes() for k in row]
            out += s * pauli_matrix([c for w in codes for c in w])
        return out
    raise ValueError(f"unknown method {method!r}")


def trace_with_power(A: np.ndarray, rho: np.ndarray, r: int) -> complex:
    """``Tr(A rho^{(x) r})`` without forming the tensor power."""
    D = rho.shape[0]
    T = A.reshape([D] * (2 * r))
    operands: list = [T, list(range(2 * r))]
    for k in range(r):
        operands += [rho, [r + k, k]]
    return complex(np.einsum(*operands, [], optimize="greedy"))


def eval_via_matrix(rho: np.ndarray, g: GammaLike, signed: bool = True,
                    limits: Optional[Limits] = None) -> complex:
    g = as_gamma(g)
    rho = np.asarray(rho, dtype=complex)
    if qubit_count(rho) != len(g):
        raise ValueError("rho and gamma act on different numbers of qubits")
    A = build_A_gamma(g, signed=signed, limits=limits)
    return trace_with_power(A, rho, g[0].r)


@lru_cache(maxsize=None)
def _c1_unitaries() -> tuple[np.ndarray, ...]:
    return tuple(unitary_of(c) for c in enumerate_effective_C1())


def averaging_operator(r: int, A: np.ndarray, limits: Optional[Limits] = None) -> np.ndarray:
    """Average of ``U^{(x) r} A U^{(x) r, dag}`` over the 24 conjugation classes of C_1."""
    A = np.asarray(A, dtype=complex)
    if A.shape != (2**r, 2**r):
        raise ValueError(f"expected a {2**r}x{2**r} matrix, got {A.shape}")
    _check_dense(2**r, limits)
    out = np.zeros_like(A)
    for U in _c1_unitaries():
        Ur = reduce(np.kron, [U] * r)
        out += Ur @ A @ Ur.conj().T
    return out / 24


def averaging_constants(r: int) -> list[tuple[OrbitDescriptor, complex, float]]:
    """For each parity-valid orbit: ``c`` with ``R_r(sigma_t) = c A_Gamma`` and the residual.

    ``t`` is the first member of the orbit.  The residual is
    ``|R - c A| / |R|`` in Frobenius norm.
    """
    out = []
    seen = set()
    for t in all_pair_tuples(r):
        d = orbit_of(t)
        if not d.parity_valid or d in seen:
            continue
        seen.add(d)
        R = averaging_operator(r, pauli_matrix(t.codes()))
        A = orbit_matrix(d)
        c = np.vdot(A, R) / np.vdot(A, A)
        out.append((d, complex(c), float(np.linalg.norm(R - c * A) / np.linalg.norm(R))))
    return out


# one qubit: the lambda family

@dataclass(frozen=True)
class LambdaTuple:
    l0: int
    l1: int
    l2: int
    l3: int

    def __post_init__(self) -> None:
        vals = (self.l0, self.l1, self.l2, self.l3)
        if any(v < 0 for v in vals):
            raise ValueError("lambda entries must be non-negative")
        if not self.l1 >= self.l2 >= self.l3:
            raise ValueError("lambda must satisfy l1 >= l2 >= l3")
        if len({self.l1 % 2, self.l2 % 2, self.l3 % 2}) != 1:
            raise ValueError("l1, l2, l3 must be all even or all odd")

    @property
    def r(self) -> int:
        return self.l0 + self.l1 + self.l2 + self.l3

    @classmethod
    def of_orbit(cls, d: OrbitDescriptor) -> LambdaTuple:
        s = sorted(d.sizes, reverse=True)
        return cls(len(d.eta0), *s)

    @property
    def all_odd(self) -> bool:
        return self.l3 % 2 == 1


def enumerate_lambdas(r: int) -> list[LambdaTuple]:
    out = []
    for l1 in range(r + 1):
        for l2 in range(l1 + 1):
            for l3 in range(l2 + 1):
                l0 = r - l1 - l2 - l3
                if l0 >= 0 and len({l1 % 2, l2 % 2, l3 % 2}) == 1:
                    out.append(LambdaTuple(l0, l1, l2, l3))
    return out


def p_lambda(x: XTable, lam: LambdaTuple, signed: bool = False) -> complex:
    """``x00^l0 * sum over S_3 of x01^l(pi1) x10^l(pi2) x11^l(pi3)``.

    With ``signed`` each term is weighted by the sign of the permutation,
    which is the invariant version for all-odd lambda.
    """
    if x.n != 1:
        raise ValueError("the lambda family is defined for one qubit")
    x00, x01, x10, x11 = x.values[0], x.values[1], x.values[2], x.values[3]
    ls = (lam.l1, lam.l2, lam.l3)
    total = 0j
    for perm in permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        w = -1 if (signed and inv % 2) else 1
        total += w * x01 ** ls[perm[0]] * x10 ** ls[perm[1]] * x11 ** ls[perm[2]]
    return complex(x00**lam.l0 * total)


# partial traces and the degree-2 / degree-3 forms

def partial_trace(rho: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Trace out every qubit not in ``keep`` (1-based)."""
    rho = np.asarray(rho, dtype=complex)
    n = qubit_count(rho)
    keep = sorted(set(keep))
    if any(not 1 <= q <= n for q in keep):
        raise ValueError(f"qubits to keep must lie in 1..{n}")
    T = rho.reshape([2] * (2 * n))
    sub = list(range(2 * n))
    for q in range(n):
        if q + 1 not in keep:
            sub[n + q] = q
    out = [q - 1 for q in keep] + [n + q - 1 for q in keep]
    k = len(keep)
    return np.einsum(T, sub, out).reshape(2**k, 2**k)


def depolarize(rho: np.ndarray, qubits: Iterable[int]) -> np.ndarray:
    """``(Tr_S rho) (x) I_S / 2^|S|`` put back in place, for S = ``qubits`` (1-based)."""
    rho = np.asarray(rho, dtype=complex)
    n = qubit_count(rho)
    T = rho.reshape([2] * (2 * n))
    half_eye = np.eye(2) / 2
    for q in sorted(set(qubits)):
        a, b = q - 1, n + q - 1
        rest = [k for k in range(2 * n) if k not in (a, b)]
        sub = list(range(2 * n))
        sub[b] = a
        tr = np.einsum(T, sub, rest)
        T = np.einsum(tr, rest, half_eye, [a, b], list(range(2 * n)))
    return T.reshape(rho.shape)


def _subsets(s: Iterable[int]) -> list[frozenset[int]]:
    s = sorted(s)
    return [frozenset(c for c, bit in zip(s, mask) if bit) for mask in product((0, 1), repeat=len(s))]


def degree2_p(rho: np.ndarray, omega: Iterable[int]) -> complex:
    """Sum of ``x_w^2`` over labels with support exactly ``omega``."""
    x = x_transform(rho)
    omega = frozenset(omega)
    total = 0j
    for k in range(len(x)):
        if support(PauliIndex.from_index(k, x.n)) == omega:
            total += x.values[k] ** 2
    return complex(total)


def purity(rho: np.ndarray, omega: Iterable[int]) -> complex:
    """``Tr{(Tr_{not omega} rho)^2}`` (no conjugation; rho need not be hermitian)."""
    red = partial_trace(rho, omega)
    return complex(np.trace(red @ red))


def degree2_q(rho: np.ndarray, omega: Iterable[int]) -> complex:
    """Sum of ``x_w^2`` over labels supported inside ``omega``.

    Computed from the reduced matrix as ``2^|omega| Tr{(Tr_{not omega} rho)^2}``.
    """
    omega = frozenset(omega)
    return 2 ** len(omega) * purity(rho, omega)


def degree3_supports(g: GammaLike) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Supports of ``w1``, ``w2`` and ``w1 + w2 = w3`` shared by all tuples of gamma."""
    g = as_gamma(g)
    if g[0].r != 3:
        raise ValueError("degree-3 supports need r = 3")
    sets = []
    for j in (1, 2, 3):
        sets.append(frozenset(i for i, d in enumerate(g, start=1) if j not in d.eta0))
    return sets[0], sets[1], sets[2]


def degree3_lu_form(rho: np.ndarray, g: GammaLike) -> complex:
    """Inclusion-exclusion of ``Tr(E1 E2 E3)`` over subsets of the three supports.

    ``E(S)`` keeps the qubits of S and replaces the rest by the maximally
    mixed state.  Each term is a local-unitary invariant.  The sum equals
    ``p^gamma`` (signed) times a constant depending only on gamma.
    """
    g = as_gamma(g)
    rho = np.asarray(rho, dtype=complex)
    n = qubit_count(rho)
    if n != len(g):
        raise ValueError("rho and gamma act on different numbers of qubits")
    w1, w2, w3 = degree3_supports(g)
    everyone = frozenset(range(1, n + 1))
    cache: dict[frozenset[int], np.ndarray] = {}

    def E(S: frozenset[int]) -> np.ndarray:
        if S not in cache:
            cache[S] = depolarize(rho, everyone - S)
        return cache[S]

    total = 0j
    for a in _subsets(w1):
        for b in _subsets(w2):
            AB = E(a) @ E(b)
            for c in _subsets(w3):
                sign = -1 if (len(a) + len(b) + len(c)) % 2 else 1
                total += sign * np.trace(AB @ E(c))
    return complex(total)


# randomness helpers

def random_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussian matrix (not hermitian)."""
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def random_rho(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random complex matrix scaled so the x-variables have mean square 1."""
    G = random_matrix(2**n, rng)
    return G * np.sqrt(2**n) / np.linalg.norm(G)


def term_scale(x: XTable, g: GammaLike) -> float:
    """Sum of the absolute values of the terms of ``p^gamma``; a roundoff yardstick."""
    return eval_gamma(XTable(x.n, np.abs(x.values)), g, signed=False).real


def haar_product_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    return reduce(np.kron, [unitary_group.rvs(2, random_state=rng) for _ in range(n)])


# independent count of the invariant dimension

@lru_cache(maxsize=None)
def _x_space_traces(rmax: int) -> tuple[tuple[int, ...], ...]:
    """``(tr g, tr g^2, ..., tr g^rmax)`` for the 24 actions on one-qubit x-variables."""
    out = []
    for U in _c1_unitaries():
        g = np.array([[np.trace(U.conj().T @ PAULI[a] @ U @ PAULI[b]).real / 2 for b in range(4)]
                      for a in range(4)])
        g = np.rint(g).astype(np.int64)
        traces, P = [], np.eye(4, dtype=np.int64)
        for _ in range(rmax):
            P = P @ g
            traces.append(int(np.trace(P)))
        out.append(tuple(traces))
    return tuple(out)


def molien_dimension(n: int, r: int) -> int:
    """Dimension of the degree-r invariants of C_n^l, from Molien's formula.

    Uses the linear action on the 4^n x-variables; power-sum traces of a
    tensor product are products of per-qubit traces, and the complete
    homogeneous polynomial h_r follows from Newton's identities.
    """
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    if r == 0:
        return 1
    profiles = Counter(_x_space_traces(r))
    combined: Counter = Counter({(1,) * r: 1})
    for _ in range(n):
        nxt: Counter = Counter()
        for prof, k in combined.items():
            for q, m in profiles.items():
                nxt[tuple(a * b for a, b in zip(prof, q))] += k * m
        combined = nxt
    total = Fraction(0)
    for p, k in combined.items():
        h = [Fraction(1)]
        for m in range(1, r + 1):
            h.append(sum(p[j - 1] * h[m - j] for j in range(1, m + 1)) / m)
        total += k * h[r]
    total /= 24**n
    assert total.denominator == 1, total
    return int(total)
