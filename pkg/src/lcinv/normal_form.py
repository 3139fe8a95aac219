"""Orbit matrices and their normal forms.

An n-tuple of orbits ``(Gamma_1, ..., Gamma_n)`` in O_r is written as an
n x r matrix over {0, 1, 2, 3}: row i has 0 on ``eta0(Gamma_i)`` and one
nonzero label per part.  Two matrices describe the same (unsigned)
polynomial iff they differ by a column permutation and a relabelling of
{1, 2, 3} in each row.

The normal-form predicate below is not a complete canonical form: some
classes contain several normal forms (the smallest case is n=2, r=3).
:func:`canonicalize` reports such classes instead of picking one unless
``strict=False`` is passed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from .limits import CapExceeded, Limits, current
from .orbits import OrbitDescriptor

GammaTuple = tuple[OrbitDescriptor, ...]

RELABELINGS: tuple[tuple[int, int, int, int], ...] = tuple(
    (0,) + p for p in permutations((1, 2, 3))
)


class NormalFormError(AssertionError):
    """A class with zero or several normal forms was found."""

    def __init__(self, message: str, candidates: Sequence[OrbitMatrix] = ()):
        super().__init__(message)
        self.candidates = list(candidates)


@dataclass(frozen=True, order=True)
class OrbitMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("an orbit matrix needs at least one row and one column")
        r = len(rows[0])
        for row in rows:
            if len(row) != r:
                raise ValueError("rows of an orbit matrix must have equal length")
            if any(x not in (0, 1, 2, 3) for x in row):
                raise ValueError(f"entries must lie in {{0,1,2,3}}, got row {row}")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def r(self) -> int:
        return len(self.rows[0])

    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> OrbitMatrix:
        return cls(tuple(zip(*cols)))

    @classmethod
    def from_digits(cls, text: str) -> OrbitMatrix:
        """Rows of digits separated by '/', ',' or whitespace, e.g. ``"011/123"``."""
        rows = [s for s in text.replace("/", " ").replace(",", " ").split() if s]
        if not rows:
            raise ValueError("empty matrix")
        for s in rows:
            if not s.isdigit():
                raise ValueError(f"matrix row {s!r} must consist of digits 0-3")
        return cls(tuple(tuple(int(c) for c in s) for s in rows))

    @classmethod
    def from_text(cls, text: str) -> OrbitMatrix:
        """Parse the file format: first line ``n r``, then n lines of r digits."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("matrix file is empty")
        head = lines[0].split()
        if len(head) != 2 or not all(h.isdigit() for h in head):
            raise ValueError(f"first line must be 'n r', got {lines[0]!r}")
        n, r = map(int, head)
        body = [ln.replace(" ", "") for ln in lines[1:]]
        if len(body) != n:
            raise ValueError(f"expected {n} matrix rows, found {len(body)}")
        for k, s in enumerate(body, start=1):
            if len(s) != r or not s.isdigit():
                raise ValueError(f"row {k} must be {r} digits in 0-3, got {s!r}")
        return cls(tuple(tuple(int(c) for c in s) for s in body))

    def digits(self, sep: str = "/") -> str:
        return sep.join("".join(map(str, row)) for row in self.rows)

    def to_text(self) -> str:
        return f"{self.n} {self.r}\n" + "\n".join("".join(map(str, row)) for row in self.rows) + "\n"

    def __str__(self) -> str:
        return self.digits()


def label_counts(row: Sequence[int]) -> tuple[int, int, int]:
    c = Counter(row)
    return c[1], c[2], c[3]


def row_parity_ok(row: Sequence[int]) -> bool:
    return len({k % 2 for k in label_counts(row)}) == 1


def parity_ok(M: OrbitMatrix) -> bool:
    return all(row_parity_ok(row) for row in M.rows)


def _check_gamma(g: Sequence[OrbitDescriptor]) -> GammaTuple:
    g = tuple(g)
    if not g:
        raise ValueError("a gamma tuple needs at least one orbit")
    r = g[0].r
    for k, d in enumerate(g, start=1):
        if d.r != r:
            raise ValueError("all orbits of a gamma tuple must have the same r")
        if not d.parity_valid:
            raise ValueError(f"orbit {k} ({d}) violates the parity condition")
    return g


def matrix_from_gamma(g: Sequence[OrbitDescriptor]) -> OrbitMatrix:
    """Encode a gamma tuple; nonempty parts get labels 1, 2, 3 by smallest element."""
    g = _check_gamma(g)
    rows = []
    for d in g:
        row = [0] * d.r
        nonempty = sorted((p for p in d.parts if p), key=min)
        for label, part in enumerate(nonempty, start=1):
            for j in part:
                row[j - 1] = label
        rows.append(tuple(row))
    return OrbitMatrix(tuple(rows))


def gamma_from_matrix(M: OrbitMatrix) -> GammaTuple:
    out = []
    for i, row in enumerate(M.rows, start=1):
        if not row_parity_ok(row):
            raise ValueError(f"row {i} violates the parity condition: label counts {label_counts(row)}")
        sets = [frozenset(j + 1 for j, x in enumerate(row) if x == a) for a in range(4)]
        out.append(OrbitDescriptor(M.r, sets[0], (sets[1], sets[2], sets[3])))
    return tuple(out)


def u_vector(M: OrbitMatrix, i: int, a: int) -> list[int]:
    """Counts of columns with row i equal to ``a``, binned by the rows above.

    ``i`` is 1-based and at least 2; bins are all (i-1)-digit vectors over
    {0,1,2,3} in lexicographic order, empty bins included.
    """
    if not 2 <= i <= M.n:
        raise ValueError(f"row index must lie in 2..{M.n}, got {i}")
    out = [0] * (4 ** (i - 1))
    for col in M.columns():
        if col[i - 1] == a:
            k = 0
            for x in col[: i - 1]:
                k = 4 * k + x
            out[k] += 1
    return out


def is_normal_form(M: OrbitMatrix) -> bool:
    cols = M.columns()
    if any(cols[j] > cols[j + 1] for j in range(len(cols) - 1)):
        return False
    c1, c2, c3 = label_counts(M.rows[0])
    if not c3 <= c2 <= c1:
        return False
    for i in range(2, M.n + 1):
        u1, u2, u3 = (u_vector(M, i, a) for a in (1, 2, 3))
        if not u3 <= u2 <= u1:
            return False
    return parity_ok(M)


def relabel(M: OrbitMatrix, pis: Sequence[Sequence[int]]) -> OrbitMatrix:
    """Apply a relabelling ``pi_i`` (a map on 0..3 fixing 0) to each row."""
    return OrbitMatrix(tuple(tuple(pi[x] for x in row) for pi, row in zip(pis, M.rows)))


def permute_columns(M: OrbitMatrix, mu: Sequence[int]) -> OrbitMatrix:
    """Column j of the result is column ``mu[j]`` of ``M`` (0-based)."""
    cols = M.columns()
    return OrbitMatrix.from_columns([cols[k] for k in mu])


def sort_columns(M: OrbitMatrix) -> OrbitMatrix:
    return OrbitMatrix.from_columns(sorted(M.columns()))


def normal_form_candidates(M: OrbitMatrix) -> list[OrbitMatrix]:
    """Every normal form equivalent to ``M``, found by trying all 6^n relabellings."""
    found = set()
    for pis in product(RELABELINGS, repeat=M.n):
        N = sort_columns(relabel(M, pis))
        if is_normal_form(N):
            found.add(N)
    return sorted(found)


def class_key(M: OrbitMatrix) -> OrbitMatrix:
    """Lexicographically least matrix with sorted columns in the class of ``M``.

    A complete invariant of the equivalence class, independent of the
    normal-form predicate.
    """
    return min(sort_columns(relabel(M, pis)) for pis in product(RELABELINGS, repeat=M.n))


def canonicalize(M: OrbitMatrix, strict: bool = True) -> OrbitMatrix:
    """The normal form equivalent to ``M``.

    With ``strict`` (the default) a class holding more than one normal form
    raises :class:`NormalFormError` listing them.  With ``strict=False`` the
    least of them is returned, which is still a class invariant.
    """
    if not parity_ok(M):
        raise ValueError(f"matrix {M} violates the parity condition")
    found = normal_form_candidates(M)
    if not found:
        raise NormalFormError(f"no normal form found for {M}")
    if len(found) > 1 and strict:
        listing = ", ".join(map(str, found))
        raise NormalFormError(f"{len(found)} normal forms in the class of {M}: {listing}", found)
    return found[0]


def _check_enum(n: int, r: int, limits: Limits) -> None:
    if n < 1 or r < 1:
        raise ValueError("n and r must be at least 1")
    if n * r > limits.max_enum_cells:
        raise CapExceeded(f"n*r={n * r} exceeds the enumeration cap of {limits.max_enum_cells} cells")
    candidates = comb(r + 4**n - 1, r)
    if candidates > limits.max_enum_candidates:
        raise CapExceeded(
            f"{candidates} column multisets exceed the enumeration cap of {limits.max_enum_candidates}"
        )


def sorted_parity_matrices(n: int, r: int) -> Iterable[OrbitMatrix]:
    """Parity-valid matrices with non-decreasing columns."""
    for cols in combinations_with_replacement(list(product(range(4), repeat=n)), r):
        M = OrbitMatrix.from_columns(cols)
        if parity_ok(M):
            yield M


@lru_cache(maxsize=64)
def _normal_forms(n: int, r: int) -> tuple[OrbitMatrix, ...]:
    return tuple(sorted(M for M in sorted_parity_matrices(n, r) if is_normal_form(M)))


def enumerate_normal_forms(n: int, r: int, limits: Optional[Limits] = None) -> list[OrbitMatrix]:
    """All normal forms, sorted by their row-major digit string."""
    _check_enum(n, r, limits or current())
    return list(_normal_forms(n, r))


def enumerate_classes(n: int, r: int, limits: Optional[Limits] = None) -> list[OrbitMatrix]:
    """One :func:`class_key` per equivalence class."""
    _check_enum(n, r, limits or current())
    return sorted({class_key(M) for M in sorted_parity_matrices(n, r)})


# Burnside count over S_r x S_3^n

def _integer_partitions(r: int, largest: Optional[int] = None) -> Iterable[tuple[int, ...]]:
    largest = r if largest is None else largest
    if r == 0:
        yield ()
        return
    for k in range(min(r, largest), 0, -1):
        for rest in _integer_partitions(r - k, k):
            yield (k,) + rest


def _centralizer_size(cycle_type: Sequence[int]) -> int:
    z = 1
    for k, m in Counter(cycle_type).items():
        z *= k**m * factorial(m)
    return z


def _row_fixed_count(cycle_type: tuple[int, ...], pi: tuple[int, ...]) -> int:
    """Parity-valid rows fixed by (mu, pi) where mu has the given cycle type."""
    # state: parities of the counts of labels 1, 2, 3
    states = Counter({(0, 0, 0): 1})
    for length in cycle_type:
        options = []
        for a in range(4):
            orbit = [a]
            while pi[orbit[-1]] != a:
                orbit.append(pi[orbit[-1]])
            if length % len(orbit):
                continue
            reps = length // len(orbit)
            par = [0, 0, 0]
            for b in orbit:
                if b:
                    par[b - 1] ^= reps & 1
            options.append(tuple(par))
        nxt: Counter = Counter()
        for st, k in states.items():
            for par in options:
                nxt[(st[0] ^ par[0], st[1] ^ par[1], st[2] ^ par[2])] += k
        states = nxt
    return states[(0, 0, 0)] + states[(1, 1, 1)]


@lru_cache(maxsize=None)
def _fixed_sum_by_cycle_type(r: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for ct in _integer_partitions(r):
        out.append((ct, sum(_row_fixed_count(ct, pi) for pi in RELABELINGS)))
    return tuple(out)


def burnside_count(n: int, r: int) -> int:
    """Number of classes: average fixed-point count over S_r x S_3^n.

    A matrix is fixed iff every row is, so for fixed mu the sum over the
    row relabellings factorises into the n-th power of a per-row sum.
    """
    total = Fraction(0)
    for ct, row_sum in _fixed_sum_by_cycle_type(r):
        total += Fraction(row_sum**n, _centralizer_size(ct))
    total /= 6**n
    assert total.denominator == 1, total
    return int(total)


def count_dnr(n: int, r: int, method: str = "enumeration", limits: Optional[Limits] = None) -> int:
    """Dimension count by scanning for normal forms, or by Burnside's lemma.

    The two agree exactly when every class has a single normal form.
    """
    limits = limits or current()
    if method == "enumeration":
        return len(enumerate_normal_forms(n, r, limits))
    if method == "burnside":
        if n < 1 or r < 1:
            raise ValueError("n and r must be at least 1")
        if r > limits.max_burnside_r or n > limits.max_burnside_n:
            raise CapExceeded(
                f"burnside count capped at r<={limits.max_burnside_r}, n<={limits.max_burnside_n}"
            )
        return burnside_count(n, r)
    raise ValueError(f"unknown method {method!r}; use 'enumeration' or 'burnside'")


def bounds_dnr(n: int, r: int) -> tuple[Fraction, int]:
    lower = Fraction((4 ** (r - 1) + 3 * 2 ** (r - 1) + 2) ** n, 6**n * factorial(r))
    upper = comb(r + 4**n - 1, r)
    return lower, upper


# random sampling, for property checks

def random_parity_matrix(n: int, r: int, rng) -> OrbitMatrix:
    """Rows drawn uniformly from the parity-valid rows of length r."""
    rows = []
    while len(rows) < n:
        row = tuple(int(v) for v in rng.integers(0, 4, size=r))
        if row_parity_ok(row):
            rows.append(row)
    return OrbitMatrix(tuple(rows))


def random_shuffle(M: OrbitMatrix, rng) -> OrbitMatrix:
    """A random column permutation and per-row relabelling of ``M``."""
    pis = [RELABELINGS[int(k)] for k in rng.integers(0, 6, size=M.n)]
    mu = [int(k) for k in rng.permutation(M.r)]
    return permute_columns(relabel(M, pis), mu)
