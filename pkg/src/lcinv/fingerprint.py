"""Local-Clifford fingerprints of density matrices and stabilizer codes.

A fingerprint lists the values of the normal-form invariants of every
degree up to ``max_degree``.  Different fingerprints prove that two
matrices are not related by a local Clifford conjugation; equal
fingerprints prove nothing.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .formats import fmt_complex
from .gf2 import PauliIndex, gf2_rank, symplectic_product
from .invariants import eval_gamma, pauli_of, qubit_count, x_transform
from .limits import CapExceeded, Limits, current
from .normal_form import OrbitMatrix, enumerate_normal_forms


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    rows: tuple[PauliIndex, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        rows, signs = tuple(self.rows), tuple(int(s) for s in self.signs)
        if len(rows) != len(signs):
            raise CodeError("need one sign per generator")
        if len(rows) > self.n:
            raise CodeError(f"{len(rows)} generators on {self.n} qubits")
        for k, (w, s) in enumerate(zip(rows, signs), start=1):
            if w.n != self.n:
                raise CodeError(f"generator {k} acts on {w.n} qubits, expected {self.n}")
            if s not in (1, -1):
                raise CodeError(f"generator {k} has sign {s}; only +1/-1 are allowed")
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                if symplectic_product(rows[a], rows[b]):
                    raise CodeError(f"generators {a + 1} and {b + 1} anticommute")
        if gf2_rank([w.u + w.v for w in rows]) != len(rows):
            raise CodeError("generators are linearly dependent over F_2")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "signs", signs)

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def from_text(cls, text: str) -> StabilizerCode:
        """Line 1 ``n k``; then k lines ``+0011`` (sign, u-block, v-block)."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise CodeError("stabilizer file is empty")
        head = lines[0].split()
        if len(head) != 2 or not all(h.isdigit() for h in head):
            raise CodeError(f"first line must be 'n k', got {lines[0]!r}")
        n, k = map(int, head)
        body = lines[1:]
        if len(body) != k:
            raise CodeError(f"expected {k} generator lines, found {len(body)}")
        rows, signs = [], []
        for j, line in enumerate(body, start=1):
            if line[0] not in "+-":
                raise CodeError(f"generator {j} must start with '+' or '-', got {line!r}")
            try:
                w = PauliIndex.from_string(line[1:])
            except ValueError as exc:
                raise CodeError(f"generator {j}: {exc}") from None
            if w.n != n:
                raise CodeError(f"generator {j} has {2 * w.n} bits, expected {2 * n}")
            rows.append(w)
            signs.append(1 if line[0] == "+" else -1)
        return cls(n, tuple(rows), tuple(signs))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        for w, s in zip(self.rows, self.signs):
            lines.append(("+" if s > 0 else "-") + w.to_string())
        return "\n".join(lines) + "\n"


def projector(code: StabilizerCode, limits: Optional[Limits] = None) -> np.ndarray:
    """Product of ``(I + s_i sigma_{g_i}) / 2`` over the generators."""
    d = 2**code.n
    cap = (limits or current()).max_dense_dim
    if d > cap:
        raise CapExceeded(f"projector dimension {d} exceeds the cap of {cap}")
    P = np.eye(d, dtype=complex)
    for w, s in zip(code.rows, code.signs):
        P = P @ (np.eye(d) + s * pauli_of(w)) / 2
    return P


@dataclass(frozen=True)
class Fingerprint:
    n: int
    max_degree: int
    bases: tuple[tuple[OrbitMatrix, ...], ...]
    values: tuple[np.ndarray, ...]

    def degree(self, r: int) -> tuple[tuple[OrbitMatrix, ...], np.ndarray]:
        return self.bases[r - 1], self.values[r - 1]

    def entries(self):
        for r in range(1, self.max_degree + 1):
            for M, v in zip(self.bases[r - 1], self.values[r - 1]):
                yield r, M, complex(v)

    def to_text(self) -> str:
        return "\n".join(f"{r} {M.digits()} {fmt_complex(v)}" for r, M, v in self.entries()) + "\n"


def fingerprint(rho: np.ndarray, max_degree: int = 3, workers: int = 1,
                limits: Optional[Limits] = None) -> Fingerprint:
    """Values of all normal-form invariants of degree 1..max_degree."""
    rho = np.asarray(rho, dtype=complex)
    n = qubit_count(rho)
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    x = x_transform(rho)
    bases, values = [], []
    for r in range(1, max_degree + 1):
        basis = tuple(enumerate_normal_forms(n, r, limits))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                vals = list(pool.map(lambda M: eval_gamma(x, M), basis))
        else:
            vals = [eval_gamma(x, M) for M in basis]
        bases.append(basis)
        values.append(np.array(vals, dtype=complex))
    return Fingerprint(n, max_degree, tuple(bases), tuple(values))


class Verdict(enum.Enum):
    DISTINCT = "distinct"
    INDISTINGUISHABLE = "indistinguishable-at-degree"


def deviation(a: Fingerprint, b: Fingerprint) -> float:
    """Largest ``|a - b| / max(1, |a|, |b|)`` over all entries."""
    if a.n != b.n or a.max_degree != b.max_degree:
        raise ValueError(
            f"cannot compare fingerprints of shape (n={a.n}, degree={a.max_degree}) "
            f"and (n={b.n}, degree={b.max_degree})"
        )
    worst = 0.0
    for va, vb in zip(a.values, b.values):
        if len(va) != len(vb):
            raise ValueError("fingerprints have different basis sizes")
        if len(va):
            scale = np.maximum(1.0, np.maximum(np.abs(va), np.abs(vb)))
            worst = max(worst, float(np.max(np.abs(va - vb) / scale)))
    return worst


def compare(a: Fingerprint, b: Fingerprint, tol: float = 1e-9) -> Verdict:
    return Verdict.DISTINCT if deviation(a, b) > tol else Verdict.INDISTINGUISHABLE


def verdict_line(v: Verdict, max_degree: int) -> str:
    if v is Verdict.DISTINCT:
        return "DISTINCT"
    return f"INDISTINGUISHABLE(max_degree={max_degree})"


def stabilizer_fingerprint(code: StabilizerCode, max_degree: int = 3, workers: int = 1,
                           limits: Optional[Limits] = None) -> Fingerprint:
    return fingerprint(projector(code, limits), max_degree, workers, limits)


def codes_from_strings(n: int, gens: Sequence[str]) -> StabilizerCode:
    """Convenience: ``codes_from_strings(2, ["+0011", "+1100"])``."""
    return StabilizerCode.from_text(f"{n} {len(gens)}\n" + "\n".join(gens))
