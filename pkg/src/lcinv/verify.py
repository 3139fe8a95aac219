"""Self-verification suite behind ``lcinv check``.

Each property is evaluated at a given (n, r) and reported as PASS, FAIL
or SKIP (outside the size range where it is defined or affordable),
together with the measured residual.  All randomness derives from one
seed, and each property draws from its own stream so that adding or
skipping one does not shift the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Callable, Optional

import numpy as np

from .clifford import (
    enumerate_effective_C1,
    generator_closure,
    local_conjugate,
    random_local_clifford,
    conjugate_pauli,
    unitary_of,
)
from .fingerprint import Verdict, compare, fingerprint, projector, StabilizerCode
from .formats import fmt_real
from .gf2 import NONZERO_PAIRS, PauliIndex, all_pair_tuples, eta_sets, in_Vr
from .invariants import (
    averaging_operator,
    build_A_gamma,
    degree2_p,
    degree2_q,
    degree3_lu_form,
    eval_gamma,
    eval_via_matrix,
    haar_product_unitary,
    molien_dimension,
    orbit_matrix,
    pauli_matrix,
    random_rho,
    term_scale,
    x_transform,
)
from .limits import CapExceeded, Limits, current
from .normal_form import (
    bounds_dnr,
    burnside_count,
    canonicalize,
    class_key,
    enumerate_normal_forms,
    gamma_from_matrix,
    normal_form_candidates,
    permute_columns,
    random_parity_matrix,
    random_shuffle,
)
from .orbits import brute_force_orbits, count_Or, enumerate_Or, orbit_members, orbit_of

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class Check:
    name: str
    status: str
    residual: Optional[float] = None
    detail: str = ""
    notes: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        head = f"{self.status} {self.name}"
        if self.residual is not None:
            head += f" residual={fmt_real(self.residual)}"
        if self.detail:
            head += f" | {self.detail}"
        return "\n".join([head] + [f"    {s}" for s in self.notes])


@dataclass
class Report:
    n: int
    r: int
    trials: int
    seed: int
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.checks) for s in (PASS, FAIL, SKIP)}

    def to_text(self) -> str:
        c = self.counts()
        lines = [f"check n={self.n} r={self.r} trials={self.trials} seed={self.seed}"]
        lines += [ch.to_text() for ch in self.checks]
        lines.append(f"summary: {c[PASS]} passed, {c[FAIL]} failed, {c[SKIP]} skipped")
        return "\n".join(lines) + "\n"


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _conj(U: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return U @ rho @ U.conj().T


class _Ctx:
    def __init__(self, n, r, trials, seed, tol, workers, limits):
        self.n, self.r, self.trials, self.seed = n, r, trials, seed
        self.tol, self.workers, self.limits = tol, workers, limits
        self._nf = None

    def rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, stream])

    def normal_forms(self):
        if self._nf is None:
            self._nf = enumerate_normal_forms(self.n, self.r, self.limits)
        return self._nf

    def dense_ok(self, side: int) -> bool:
        return side <= min(self.limits.max_dense_dim, 256)


# individual properties; each returns one Check

def check_vr_parity(c: _Ctx) -> Check:
    name = "Vr membership agrees with eta parity, eta sets partition positions"
    if c.r > 6:
        return Check(name, SKIP, detail="r > 6")
    bad = 0
    for t in all_pair_tuples(c.r):
        e0, ex, ey, ez = eta_sets(t)
        parity = len({len(ex) % 2, len(ey) % 2, len(ez) % 2}) == 1
        cover = e0 | ex | ey | ez
        disjoint = len(e0) + len(ex) + len(ey) + len(ez) == c.r
        bad += (in_Vr(t) != parity) or cover != frozenset(range(1, c.r + 1)) or not disjoint
    return Check(name, _status(bad == 0), detail=f"{4**c.r} tuples, {bad} mismatches")


def check_c1_group(c: _Ctx) -> Check:
    name = "24 effective one-qubit Cliffords: closure, faithfulness, generator closure"
    els = enumerate_effective_C1()
    members = set(els)
    not_closed = sum(a.compose(b) not in members for a in els for b in els)
    worst = 0.0
    for g in els:
        U = unitary_of(g)
        for p in NONZERO_PAIRS:
            s, q = conjugate_pauli(g, p)
            P, Q = pauli_matrix([2 * p[0] + p[1]]), pauli_matrix([2 * q[0] + q[1]])
            worst = max(worst, float(np.max(np.abs(U @ P @ U.conj().T - s * Q))))
    size = len(generator_closure())
    ok = len(els) == 24 and not_closed == 0 and worst <= 1e-12 and size == 24
    return Check(name, _status(ok), worst,
                 f"{len(els)} elements, {not_closed} non-closed products, dense closure size {size}")


def check_orbit_counts(c: _Ctx) -> Check:
    name = "orbit enumeration matches the closed-form count and the brute-force orbits"
    if c.r > 8:
        return Check(name, SKIP, detail="r > 8")
    ds = enumerate_Or(c.r)
    formula = count_Or(c.r)
    detail = f"|O_{c.r}| enumerated {len(ds)}, formula {formula}"
    ok = len(ds) == formula
    if c.r <= 5:
        brute = {frozenset(o) for o in brute_force_orbits(c.r)}
        mine = {frozenset(orbit_members(d)) for d in ds}
        ok &= brute == mine
        total = sum(len(m) for m in mine)
        ok &= total == 4 ** (c.r - 1)
        ok &= all(orbit_of(t) == d for d in ds for t in orbit_members(d))
        detail += f", brute force {len(brute)} orbits, members total {total}"
    return Check(name, _status(ok), detail=detail)


def check_averaging(c: _Ctx) -> Check:
    name = "averaging over C_1 kills t outside V_r and maps t in V_r to c*A_Gamma"
    if c.r > 5:
        return Check(name, SKIP, detail="r > 5")
    worst_zero, worst_prop = 0.0, 0.0
    constants: dict = {}
    bad_const = 0
    for t in all_pair_tuples(c.r):
        R = averaging_operator(c.r, pauli_matrix(t.codes()), c.limits)
        if not in_Vr(t):
            worst_zero = max(worst_zero, float(np.max(np.abs(R))))
            continue
        d = orbit_of(t)
        A = orbit_matrix(d)
        k = complex(np.vdot(A, R) / np.vdot(A, A))
        worst_prop = max(worst_prop, float(np.linalg.norm(R - k * A) / np.linalg.norm(R)))
        if abs(k) < 1e-12:
            bad_const += 1
        constants.setdefault(d, set()).add(Fraction(k.real).limit_denominator(1000))
    # R is a projector that fixes every A_Gamma
    worst_proj = 0.0
    for d in enumerate_Or(c.r):
        A = orbit_matrix(d)
        RA = averaging_operator(c.r, A, c.limits)
        worst_proj = max(worst_proj, float(np.max(np.abs(RA - A))))
    rng = c.rng(4)
    B = rng.normal(size=(2**c.r,) * 2) + 1j * rng.normal(size=(2**c.r,) * 2)
    RB = averaging_operator(c.r, B, c.limits)
    worst_proj = max(worst_proj, float(np.max(np.abs(averaging_operator(c.r, RB, c.limits) - RB))))
    notes = []
    for d in sorted(constants, key=lambda d: d.sort_key()):
        vals = ", ".join(str(v) for v in sorted(constants[d]))
        notes.append(f"c[{d}] = {vals} (orbit size {len(orbit_members(d))})")
    ok = worst_zero <= 1e-10 and worst_prop <= 1e-10 and bad_const == 0 and worst_proj <= 1e-10
    return Check(name, _status(ok), max(worst_zero, worst_prop, worst_proj),
                 f"max |R(sigma_t)| off V_r {fmt_real(worst_zero)}, "
                 f"max relative residual on V_r {fmt_real(worst_prop)}, "
                 f"projector residual {fmt_real(worst_proj)}", notes)


def check_clifford_invariance(c: _Ctx) -> Check:
    name = "normal-form invariants unchanged under random local Clifford conjugation"
    rng = c.rng(5)
    nfs = c.normal_forms()
    worst = 0.0
    for _ in range(max(1, c.trials)):
        rho = random_rho(c.n, rng)
        U = random_local_clifford(c.n, rng).unitary()
        x, y = x_transform(rho), x_transform(_conj(U, rho))
        for M in nfs:
            a, b = eval_gamma(x, M), eval_gamma(y, M)
            worst = max(worst, abs(a - b) / (1 + abs(a)))
    return Check(name, _status(worst <= c.tol), worst, f"{len(nfs)} normal forms, {c.trials} trials")


def check_matrix_invariance(c: _Ctx) -> Check:
    name = "A_gamma commutes with U^(x)r for random local Clifford U"
    side = 2 ** (c.n * c.r)
    if not c.dense_ok(side):
        return Check(name, SKIP, detail=f"dense side {side} too large")
    rng = c.rng(6)
    worst = 0.0
    for M in c.normal_forms():
        A = build_A_gamma(gamma_from_matrix(M), limits=c.limits)
        for _ in range(min(c.trials, 5)):
            U = random_local_clifford(c.n, rng).unitary()
            Ur = reduce(np.kron, [U] * c.r)
            worst = max(worst, float(np.max(np.abs(Ur @ A @ Ur.conj().T - A))))
    return Check(name, _status(worst <= 1e-10), worst)


def check_lu_invariance(c: _Ctx) -> Check:
    name = "degree <= 3 invariants unchanged under Haar-random product unitaries"
    if c.r > 3:
        return Check(name, SKIP, detail="only claimed for r <= 3")
    rng = c.rng(7)
    worst = 0.0
    for _ in range(max(1, c.trials)):
        rho = random_rho(c.n, rng)
        U = haar_product_unitary(c.n, rng)
        x, y = x_transform(rho), x_transform(_conj(U, rho))
        for M in c.normal_forms():
            a, b = eval_gamma(x, M), eval_gamma(y, M)
            worst = max(worst, abs(a - b) / (1 + abs(a)))
    return Check(name, _status(worst <= c.tol), worst)


def check_two_paths(c: _Ctx) -> Check:
    name = "polynomial evaluation equals Tr(A_gamma rho^(x)r)"
    side = 2 ** (c.n * c.r)
    if not c.dense_ok(side):
        return Check(name, SKIP, detail=f"dense side {side} too large")
    rng = c.rng(8)
    worst = 0.0
    rhos = [random_rho(c.n, rng) for _ in range(min(max(1, c.trials), 10))]
    for M in c.normal_forms():
        A = build_A_gamma(gamma_from_matrix(M), limits=c.limits)
        A2 = build_A_gamma(gamma_from_matrix(M), method="direct", limits=c.limits)
        worst = max(worst, float(np.max(np.abs(A - A2))))
        for rho in rhos:
            a = eval_gamma(x_transform(rho), M)
            b = eval_via_matrix(rho, M, limits=c.limits)
            worst = max(worst, _rel(a, b))
    return Check(name, _status(worst <= c.tol), worst)


def _numerical_rank(E: np.ndarray, scale: np.ndarray) -> tuple[int, np.ndarray]:
    """Rank after dividing each column by the size of its terms.

    Normalizing by the term magnitudes rather than the column norm keeps an
    identically vanishing invariant (pure roundoff) at roundoff level.
    """
    norms = np.linalg.norm(scale, axis=0)
    norms[norms == 0] = 1.0
    s = np.linalg.svd(E / norms, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0, s
    return int(np.sum(s > s[0] * 1e-8)), s


def _evaluate(xs, gammas) -> tuple[np.ndarray, np.ndarray]:
    E = np.array([[eval_gamma(x, g) for g in gammas] for x in xs])
    S = np.array([[term_scale(x, g) for g in gammas] for x in xs])
    return E, S


def _rank_data(c: _Ctx):
    rng = c.rng(9)
    nfs = c.normal_forms()
    N = len(nfs) + 10
    xs = [x_transform(random_rho(c.n, rng)) for _ in range(N)]
    E, S = _evaluate(xs, nfs)
    rank, s = _numerical_rank(E, S)
    return nfs, xs, E, S, rank, s


def check_basis_rank(c: _Ctx) -> Check:
    name = "normal-form invariants are linearly independent (rank = number of normal forms)"
    if c.n * c.r > 12:
        return Check(name, SKIP, detail="n*r > 12")
    nfs, xs, E, S, rank, s = _rank_data(c)
    d = len(nfs)
    gap = float(s[d - 1] / s[0]) if d else 1.0
    notes = []
    if rank < d:
        # name the normal forms that add nothing to the span of the earlier ones
        kept = 0
        for k, M in enumerate(nfs):
            rk, _ = _numerical_rank(E[:, : k + 1], S[:, : k + 1])
            if rk == kept:
                notes.append(f"dependent: {M}")
            kept = rk
    ok = rank == d and gap >= 1e-6
    return Check(name, _status(ok), gap,
                 f"d_{c.n},{c.r}={d} normal forms, numerical rank {rank}, "
                 f"smallest/largest singular value {fmt_real(gap)}", notes)


def check_span(c: _Ctx) -> Check:
    name = "adding every orbit tuple gamma does not raise the rank; rank equals Molien dimension"
    if c.n * c.r > 12 or count_Or(c.r) ** c.n > 4000:
        return Check(name, SKIP, detail="too many orbit tuples")
    nfs, xs, E, S, rank, _ = _rank_data(c)
    ds = enumerate_Or(c.r)
    extra, extra_scale = _evaluate(xs, list(product(ds, repeat=c.n)))
    rank_all, _ = _numerical_rank(np.hstack([E, extra]), np.hstack([S, extra_scale]))
    dim = molien_dimension(c.n, c.r)
    ok = rank_all == rank == dim
    return Check(name, _status(ok), detail=f"rank normal forms {rank}, rank with all "
                 f"{extra.shape[1]} tuples {rank_all}, Molien dimension {dim}")


def check_canonical_uniqueness(c: _Ctx) -> Check:
    name = "each sampled class holds exactly one normal form; canonicalize is idempotent and sound"
    if c.n > 3 or c.r > 6:
        return Check(name, SKIP, detail="only for n <= 3, r <= 6")
    rng = c.rng(10)
    multi: dict = {}
    bad = 0
    trials = max(1, c.trials)
    for _ in range(trials):
        M = random_parity_matrix(c.n, c.r, rng)
        S = random_shuffle(M, rng)
        cands = normal_form_candidates(M)
        if len(cands) != 1:
            multi[class_key(M)] = cands
        a, b = canonicalize(M, strict=False), canonicalize(S, strict=False)
        bad += a != b or canonicalize(a, strict=False) != a
        bad += class_key(M) != class_key(S)
    notes = [f"{k}: {len(v)} normal forms: {', '.join(map(str, v))}" for k, v in sorted(multi.items())]
    ok = not multi and bad == 0
    return Check(name, _status(ok),
                 detail=f"{trials} trials, {len(multi)} classes with several normal forms, "
                        f"{bad} idempotence/soundness failures", notes=notes)


def check_counting(c: _Ctx) -> Check:
    name = "normal-form count equals the Burnside class count and lies within the bounds"
    lim = c.limits
    if c.r > lim.max_burnside_r or c.n > lim.max_burnside_n:
        return Check(name, SKIP, detail="outside the Burnside caps")
    enum = len(c.normal_forms())
    burn = burnside_count(c.n, c.r)
    lower, upper = bounds_dnr(c.n, c.r)
    ok = enum == burn and lower <= burn <= upper and lower <= enum <= upper
    return Check(name, _status(ok), detail=f"enumeration {enum}, Burnside {burn}, "
                 f"bounds [{fmt_real(float(lower))}, {upper}]")


def check_permutation_symmetry(c: _Ctx) -> Check:
    name = "invariants are unchanged by permuting the r tensor copies"
    rng = c.rng(11)
    worst = 0.0
    for _ in range(max(1, c.trials)):
        M = random_parity_matrix(c.n, c.r, rng)
        mu = [int(k) for k in rng.permutation(c.r)]
        x = x_transform(random_rho(c.n, rng))
        worst = max(worst, _rel(eval_gamma(x, M), eval_gamma(x, permute_columns(M, mu))))
    return Check(name, _status(worst <= c.tol), worst)


def check_mobius(c: _Ctx) -> Check:
    name = "degree-2 support sums: q_omega = sum p_omega' and the Mobius inverse"
    if c.r != 2 or c.n > 4:
        return Check(name, SKIP, detail="only at r = 2, n <= 4")
    rng = c.rng(12)
    qubits = range(1, c.n + 1)
    subsets = [frozenset(q for q, b in zip(qubits, bits) if b) for bits in product((0, 1), repeat=c.n)]
    worst = 0.0
    for _ in range(max(1, c.trials)):
        rho = random_rho(c.n, rng)
        p = {w: degree2_p(rho, w) for w in subsets}
        q = {w: degree2_q(rho, w) for w in subsets}
        for w in subsets:
            up = sum(p[v] for v in subsets if v <= w)
            down = sum((-1) ** len(w - v) * q[v] for v in subsets if v <= w)
            worst = max(worst, _rel(q[w], up), _rel(p[w], down))
    return Check(name, _status(worst <= 1e-10), worst)


def check_degree3(c: _Ctx) -> Check:
    name = "degree-3 partial-trace form is a constant multiple of each invariant"
    if c.r != 3 or c.n > 3:
        return Check(name, SKIP, detail="only at r = 3, n <= 3")
    rng = c.rng(13)
    rhos = [random_rho(c.n, rng) for _ in range(max(2, c.trials))]
    xs = [x_transform(rho) for rho in rhos]
    worst = 0.0
    notes = []
    ok = True
    for M in c.normal_forms():
        g = gamma_from_matrix(M)
        ps = np.array([eval_gamma(x, g) for x in xs])
        lus = np.array([degree3_lu_form(rho, g) for rho in rhos])
        scale = np.array([max(1.0, term_scale(x, g)) for x in xs])
        if np.all(np.abs(ps) <= 1e-10 * scale):
            vanish = bool(np.all(np.abs(lus) <= 1e-10 * scale))
            ok &= vanish
            notes.append(f"{M}: invariant vanishes identically; partial-trace form "
                         + ("vanishes too" if vanish else "does NOT vanish"))
            continue
        ratios = lus / ps
        mean = ratios.mean()
        spread = float(np.std(ratios) / abs(mean)) if abs(mean) > 0 else float("inf")
        worst = max(worst, spread)
        notes.append(f"{M}: ratio {fmt_real(mean.real)} {fmt_real(mean.imag)} spread {fmt_real(spread)}")
    ok &= worst <= 1e-8
    return Check(name, _status(ok), worst, notes=notes)


def _random_code(n: int, rng: np.random.Generator) -> StabilizerCode:
    """GHZ-type code (X...X and Z_i Z_(i+1)) with random signs, then a random local Clifford."""
    rows = [PauliIndex((0,) * n, (1,) * n)]
    for i in range(n - 1):
        u = [0] * n
        u[i] = u[i + 1] = 1
        rows.append(PauliIndex(tuple(u), (0,) * n))
    signs = [int(s) for s in rng.choice([-1, 1], size=len(rows))]
    L = random_local_clifford(n, rng)
    out = [local_conjugate(L, w) for w in rows]
    return StabilizerCode(n, tuple(w for _, w in out), tuple(s * t for s, (t, _) in zip(signs, out)))


def check_fingerprints(c: _Ctx) -> Check:
    name = "fingerprints: conjugate pairs indistinguishable, homogeneity, projectors"
    deg = min(c.r, 3)
    if c.n * deg > c.limits.max_enum_cells:
        return Check(name, SKIP, detail="outside the enumeration cap")
    rng = c.rng(14)
    distinct = 0
    worst_dev, worst_hom, worst_proj = 0.0, 0.0, 0.0
    for _ in range(max(1, c.trials)):
        rho = random_rho(c.n, rng)
        U = random_local_clifford(c.n, rng).unitary()
        a = fingerprint(rho, deg, c.workers, c.limits)
        b = fingerprint(_conj(U, rho), deg, c.workers, c.limits)
        distinct += compare(a, b, c.tol) is Verdict.DISTINCT
        s = complex(rng.normal(), rng.normal())
        f = fingerprint(s * rho, deg, c.workers, c.limits)
        for r in range(1, deg + 1):
            va, vs = a.values[r - 1], f.values[r - 1]
            for u, v in zip(va, vs):
                worst_hom = max(worst_hom, _rel(s**r * u, v))
        code = _random_code(c.n, rng)
        P = projector(code, c.limits)
        worst_proj = max(worst_proj, float(np.max(np.abs(P @ P - P))), float(np.max(np.abs(P - P.conj().T))))
    ok = distinct == 0 and worst_hom <= c.tol and worst_proj <= 1e-12
    return Check(name, _status(ok), max(worst_hom, worst_proj),
                 f"max degree {deg}, {distinct} of {c.trials} conjugate pairs reported distinct, "
                 f"homogeneity residual {fmt_real(worst_hom)}, projector residual {fmt_real(worst_proj)}")


CHECKS: tuple[Callable[[_Ctx], Check], ...] = (
    check_vr_parity,
    check_c1_group,
    check_orbit_counts,
    check_averaging,
    check_clifford_invariance,
    check_matrix_invariance,
    check_lu_invariance,
    check_two_paths,
    check_basis_rank,
    check_span,
    check_canonical_uniqueness,
    check_counting,
    check_permutation_symmetry,
    check_mobius,
    check_degree3,
    check_fingerprints,
)


def verify_suite(n: int, r: int, trials: int = 20, seed: int = 0, tol: float = 1e-9,
                 workers: int = 1, limits: Optional[Limits] = None) -> Report:
    if n < 1 or r < 1:
        raise ValueError("n and r must be at least 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    c = _Ctx(n, r, trials, seed, tol, workers, limits or current())
    c.normal_forms()  # surface cap violations before running anything
    checks = []
    for fn in CHECKS:
        try:
            checks.append(fn(c))
        except CapExceeded as exc:
            checks.append(Check(fn.__name__[6:], SKIP, detail=str(exc)))
    return Report(n, r, trials, seed, checks)
