import numpy as np
import pytest

from lcinv.clifford import (
    HADAMARD,
    IDENTITY,
    PHASE,
    SingleClifford,
    action_of_unitary,
    conjugate_pauli,
    enumerate_effective_C1,
    generator_closure,
    gl2_elements,
    gl2_order,
    local_conjugate,
    local_from_indices,
    orientation,
    random_local_clifford,
    unitary_of,
)
from lcinv.gf2 import NONZERO_PAIRS, PauliIndex, X_PAIR, Y_PAIR, Z_PAIR, pair_code
from lcinv.invariants import pauli_matrix, pauli_of

SWAP_Q = ((0, 1), (1, 0))


def dense(p):
    return pauli_matrix([pair_code(p)])


def test_gl2_elements():
    els = gl2_elements()
    assert len(els) == 6 and len(set(els)) == 6
    assert ((1, 0), (0, 1)) in els
    assert SWAP_Q in els
    assert sum(gl2_order(Q) == 3 for Q in els) == 2


def test_conjugate_pauli_examples():
    assert conjugate_pauli(IDENTITY, X_PAIR) == (1, X_PAIR)
    assert conjugate_pauli(SingleClifford(SWAP_Q, 1, 1), X_PAIR) == (1, Z_PAIR)
    for c in enumerate_effective_C1():
        assert conjugate_pauli(c, (0, 0)) == (1, (0, 0))


def test_hadamard_flips_Y():
    # H Y H = -Y, so the sign on Y is not the product of the signs on X and Z
    c = action_of_unitary(HADAMARD)
    assert c.Q == SWAP_Q
    assert c.sign(X_PAIR) == 1 and c.sign(Z_PAIR) == 1
    assert c.sign(Y_PAIR) == -1
    H = HADAMARD
    assert np.allclose(H @ dense(Y_PAIR) @ H.conj().T, -dense(Y_PAIR))


def test_Y_sign_rule_uses_orientation():
    for c in enumerate_effective_C1():
        assert c.alpha11 == orientation(c.Q) * c.alpha01 * c.alpha10


def test_effective_set():
    els = enumerate_effective_C1()
    assert len(els) == 24 and len(set(els)) == 24
    assert IDENTITY in els
    rows = {tuple(conjugate_pauli(c, p) for p in NONZERO_PAIRS) for c in els}
    assert len(rows) == 24


def test_composition_closes():
    els = enumerate_effective_C1()
    members = set(els)
    for a in els:
        for b in els:
            ab = a.compose(b)
            assert ab in members
            for p in NONZERO_PAIRS:
                s1, q1 = conjugate_pauli(b, p)
                s2, q2 = conjugate_pauli(a, q1)
                assert conjugate_pauli(ab, p) == (s1 * s2, q2)


def test_dense_faithfulness():
    for c in enumerate_effective_C1():
        U = unitary_of(c)
        assert np.allclose(U @ U.conj().T, np.eye(2), atol=1e-12)
        for p in NONZERO_PAIRS:
            s, q = conjugate_pauli(c, p)
            assert np.max(np.abs(U @ dense(p) @ U.conj().T - s * dense(q))) <= 1e-12


def test_generator_closure_has_24_elements():
    us = generator_closure()
    assert len(us) == 24
    assert {action_of_unitary(U) for U in us} == set(enumerate_effective_C1())
    assert action_of_unitary(PHASE) in set(enumerate_effective_C1())


def test_identity_unitary():
    U = unitary_of(IDENTITY)
    assert np.allclose(U, np.eye(2) * U[0, 0])


def test_invalid_single_clifford_rejected():
    with pytest.raises(ValueError):
        SingleClifford(((1, 1), (1, 1)), 1, 1)
    with pytest.raises(ValueError):
        SingleClifford(((1, 0), (0, 1)), 2, 1)


def test_local_conjugate_matches_dense(rng):
    for _ in range(30):
        L = random_local_clifford(2, rng)
        U = L.unitary()
        for k in range(16):
            w = PauliIndex.from_index(k, 2)
            s, w2 = local_conjugate(L, w)
            assert np.allclose(U @ pauli_of(w) @ U.conj().T, s * pauli_of(w2), atol=1e-12)
            # sign is the product of per-qubit signs
            per = [conjugate_pauli(c, p)[0] for c, p in zip(L.factors, w.pairs())]
            assert s == int(np.prod(per))


def test_local_conjugate_identity_and_mismatch():
    L = local_from_indices([0, 0])
    w = PauliIndex.from_string("0110")
    assert local_conjugate(L, w) == (1, w)
    with pytest.raises(ValueError):
        local_conjugate(local_from_indices([0]), w)


def test_random_local_clifford_determinism_and_coverage():
    assert random_local_clifford(3, 5) == random_local_clifford(3, 5)
    assert random_local_clifford(3, 5).n == 3
    rng = np.random.default_rng(0)
    seen = {random_local_clifford(1, rng).factors[0] for _ in range(10_000)}
    assert len(seen) == 24
