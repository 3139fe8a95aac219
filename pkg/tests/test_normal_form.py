from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcinv.invariants import enumerate_lambdas
from lcinv.limits import CapExceeded, Limits
from lcinv.normal_form import (
    RELABELINGS,
    NormalFormError,
    OrbitMatrix,
    bounds_dnr,
    burnside_count,
    canonicalize,
    class_key,
    count_dnr,
    enumerate_classes,
    enumerate_normal_forms,
    gamma_from_matrix,
    is_normal_form,
    matrix_from_gamma,
    normal_form_candidates,
    parity_ok,
    permute_columns,
    random_parity_matrix,
    random_shuffle,
    relabel,
    row_parity_ok,
    u_vector,
)
from lcinv.orbits import OrbitDescriptor, enumerate_Or

WIDE = OrbitMatrix.from_digits("00011112233/01211123322/12301230312")
WIDE_TWIN = OrbitMatrix.from_digits("00011112233/01211122233/12301231203")


def M(text):
    return OrbitMatrix.from_digits(text)


# brute-force oracles, independent of the normal-form predicate

def all_parity_matrices(n, r):
    rows = [row for row in product(range(4), repeat=r) if row_parity_ok(row)]
    return [OrbitMatrix(rs) for rs in product(rows, repeat=n)]


def brute_force_class_count(n, r):
    """Orbits of S_r x S_3^n by graph search from every parity-valid matrix."""
    todo = set(all_parity_matrices(n, r))
    classes = 0
    while todo:
        classes += 1
        frontier = [todo.pop()]
        while frontier:
            A = frontier.pop()
            nbrs = [permute_columns(A, (1, 0) + tuple(range(2, r)))] if r > 1 else []
            if r > 2:
                nbrs.append(permute_columns(A, tuple(range(1, r)) + (0,)))
            for i in range(n):
                for pi in ((0, 2, 1, 3), (0, 2, 3, 1)):
                    pis = [RELABELINGS[0]] * n
                    pis[i] = pi
                    nbrs.append(relabel(A, pis))
            for B in nbrs:
                if B in todo:
                    todo.remove(B)
                    frontier.append(B)
    return classes


def burnside_direct(n, r):
    """Average number of fixed matrices over every group element."""
    mats = all_parity_matrices(n, r)
    total = 0
    for mu in permutations(range(r)):
        for pis in product(RELABELINGS, repeat=n):
            total += sum(relabel(permute_columns(A, mu), pis) == A for A in mats)
    size = len(list(permutations(range(r)))) * 6**n
    assert total % size == 0
    return total // size


# parsing and conversions

def test_text_formats():
    A = OrbitMatrix.from_text("2 3\n011\n123\n")
    assert A == M("011/123")
    assert OrbitMatrix.from_text(A.to_text()) == A
    for bad in ("", "2 3\n011\n", "1 2\n0a\n", "1 2\n014\n"):
        with pytest.raises(ValueError):
            OrbitMatrix.from_text(bad)
    with pytest.raises(ValueError):
        M("04")


def test_wide_matrix_gamma():
    g = gamma_from_matrix(WIDE)
    assert g[0].eta0 == frozenset({1, 2, 3})
    assert set(g[0].parts) == {frozenset({4, 5, 6, 7}), frozenset({8, 9}), frozenset({10, 11})}
    assert matrix_from_gamma(g) == WIDE


def test_gamma_round_trip_small():
    gp = OrbitDescriptor(2, frozenset(), (frozenset({1, 2}), frozenset(), frozenset()))
    assert matrix_from_gamma((gp,)) == M("11")
    g0 = OrbitDescriptor(1, frozenset({1}), (frozenset(),) * 3)
    assert matrix_from_gamma((g0,)) == M("0")


def test_gamma_from_matrix_rejects_parity_violation():
    with pytest.raises(ValueError):
        gamma_from_matrix(M("12"))


def test_u_vectors_wide_matrix():
    assert u_vector(WIDE, 2, 1)[:2] == [1, 3]
    assert u_vector(WIDE, 2, 2)[:2] == [1, 1]
    assert u_vector(WIDE, 2, 3)[:2] == [0, 0]
    assert u_vector(WIDE, 3, 1)[:3] == [1, 0, 0]
    assert u_vector(WIDE, 3, 2)[:3] == [0, 1, 0]
    assert u_vector(WIDE, 3, 3)[:3] == [0, 0, 1]
    Z = M("0110/0000")
    assert all(v == 0 for a in (1, 2, 3) for v in u_vector(Z, 2, a))


# the predicate

def test_is_normal_form_examples():
    assert is_normal_form(WIDE)
    assert not is_normal_form(permute_columns(WIDE, [1, 0] + list(range(2, 11))))
    assert not is_normal_form(M("22"))
    assert is_normal_form(M("11"))


def test_canonicalize_examples():
    assert canonicalize(M("33")) == M("11")
    assert canonicalize(M("0")) == M("0")


def test_wide_matrix_class_holds_a_second_normal_form():
    assert is_normal_form(WIDE_TWIN)
    assert class_key(WIDE) == class_key(WIDE_TWIN)
    assert set(normal_form_candidates(WIDE)) >= {WIDE, WIDE_TWIN}
    with pytest.raises(NormalFormError) as info:
        canonicalize(WIDE)
    assert WIDE in info.value.candidates
    assert canonicalize(WIDE, strict=False) == min(info.value.candidates)


def test_smallest_ambiguous_class():
    # swapping the column pairs of the first row moves the 1s of the second row
    a, b = M("1122/0011"), M("1122/1100")
    assert is_normal_form(a) and is_normal_form(b)
    assert class_key(a) == class_key(b)
    with pytest.raises(NormalFormError):
        canonicalize(a)


def test_every_small_class_has_a_normal_form():
    for n, r in [(1, 4), (2, 3), (3, 2)]:
        for A in all_parity_matrices(n, r)[:400]:
            assert normal_form_candidates(A)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_non_strict_canonical_form_is_class_invariant(n, r, seed):
    rng = np.random.default_rng(seed)
    A = random_parity_matrix(n, r, rng)
    B = random_shuffle(A, rng)
    c = canonicalize(A, strict=False)
    assert c == canonicalize(B, strict=False)
    assert canonicalize(c, strict=False) == c
    assert is_normal_form(c)
    assert class_key(A) == class_key(B)


def test_unrelated_matrices_get_different_keys():
    assert class_key(M("11/00")) != class_key(M("11/11"))
    assert class_key(M("011/123")) != class_key(M("000/123"))


def test_canonicalize_rejects_parity_violation():
    with pytest.raises(ValueError):
        canonicalize(M("12"))


# enumeration and counting

def test_enumeration_examples():
    assert enumerate_normal_forms(1, 2) == [M("00"), M("11")]
    assert enumerate_normal_forms(1, 1) == [M("0")]
    assert len(enumerate_normal_forms(2, 2)) == 4


@pytest.mark.parametrize("n", range(1, 5))
def test_degree_two_dimension(n):
    assert count_dnr(n, 2) == 2**n
    assert burnside_count(n, 2) == 2**n


@pytest.mark.parametrize("r", range(1, 8))
def test_one_qubit_count_matches_lambda_family(r):
    assert count_dnr(1, r) == len(enumerate_lambdas(r)) == burnside_count(1, r)


@pytest.mark.parametrize("n, r", [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_burnside_matches_direct_sum_and_class_search(n, r):
    b = burnside_count(n, r)
    assert b == burnside_direct(n, r)
    assert b == brute_force_class_count(n, r)
    assert b == len(enumerate_classes(n, r))


def test_known_burnside_values():
    assert [burnside_count(1, r) for r in range(1, 6)] == [1, 2, 3, 5, 6]
    assert burnside_count(2, 3) == 10
    assert burnside_count(2, 4) == 33
    assert burnside_count(3, 3) == 37


def test_normal_forms_outnumber_classes_from_r3():
    assert count_dnr(2, 3) == 12
    assert count_dnr(2, 3, "burnside") == 10


def test_enumeration_is_sorted_and_normal():
    nfs = enumerate_normal_forms(2, 3)
    assert nfs == sorted(nfs)
    assert all(is_normal_form(A) and parity_ok(A) for A in nfs)


def test_bounds_examples():
    lo, hi = bounds_dnr(1, 2)
    assert lo == 1 and hi == 10
    assert bounds_dnr(1, 1)[1] == 4
    for n, r in [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        lo, hi = bounds_dnr(n, r)
        assert isinstance(lo, Fraction)
        assert lo <= burnside_count(n, r) <= hi
        assert lo <= count_dnr(n, r) <= hi


def test_caps():
    tiny = Limits().replace(max_enum_cells=4)
    with pytest.raises(CapExceeded):
        enumerate_normal_forms(2, 3, tiny)
    with pytest.raises(CapExceeded):
        count_dnr(2, 3, "burnside", Limits().replace(max_burnside_r=2))
    with pytest.raises(ValueError):
        count_dnr(1, 2, "guess")


def test_orbit_count_equals_single_row_matrices():
    for r in range(1, 6):
        rows = [row for row in product(range(4), repeat=r) if row_parity_ok(row)]
        assert len({class_key(OrbitMatrix((row,))) for row in rows}) == burnside_count(1, r)
        assert len({gamma_from_matrix(OrbitMatrix((row,)))[0] for row in rows}) == len(enumerate_Or(r))
