"""Dense-matrix oracle: Pauli algebra, projectors, trace enumerators,
classification, partial traces, subspace sampling, and the MC functionals."""

from __future__ import annotations

import numpy as np
import pytest

from qedet.catalog import get_code
from qedet.enumerators import stabilizer_enumerators
from qedet.gf4 import GF4Vector, adjoin_error, all_vectors, label_to_vector, trace_inner
from qedet.oracle import (DETECTED, TRIVIAL, UNDETECTABLE, classify_error,
                          classify_error_dense, close_group, code_projector,
                          enumerators_bruteforce, partial_trace, pauli_matrix,
                          projector, pue_composite_exact, pue_nonstab_mc,
                          uniform_state, verify_mean_projector, verify_fourth_moment)
from qedet.pue import pue_nonstabilizer, pue_stabilizer

CATALOG_NAMES = ("trivial-n1", "bell", "c422", "five13")


def _rng(seed=0):
    return np.random.default_rng(seed)


# --- Pauli tensor algebra -------------------------------------------------


def test_identity_matrix():
    assert np.array_equal(pauli_matrix(GF4Vector.zero(2)), np.eye(4))


def test_single_qubit_matrices_are_hermitian_and_unitary():
    for v in all_vectors(1):
        m = pauli_matrix(v)
        assert np.allclose(m, m.conj().T)
        assert np.allclose(m @ m.conj().T, np.eye(2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trace_orthogonality_exhaustive(n):
    mats = [(v, pauli_matrix(v)) for v in all_vectors(n)]
    for v1, m1 in mats:
        for v2, m2 in mats:
            expected = 2**n if v1 == v2 else 0.0
            assert abs(np.trace(m1 @ m2) - expected) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_commutation_matches_trace_inner_exhaustive(n):
    mats = [(v, pauli_matrix(v)) for v in all_vectors(n)]
    for v1, m1 in mats:
        for v2, m2 in mats:
            sign = -1 if trace_inner(v1, v2) else 1
            assert np.allclose(m1 @ m2, sign * (m2 @ m1), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_conjugation_trace_identity_exhaustive(n):
    # Tr(E1 E2 E1 E2) = (-1)^(e1*e2) 2^n
    mats = [(v, pauli_matrix(v)) for v in all_vectors(n)]
    for v1, m1 in mats:
        for v2, m2 in mats:
            expected = (-1) ** trace_inner(v1, v2) * 2**n
            prod = m1 @ m2
            assert abs(np.sum(prod * prod.T) - expected) < 1e-10


def test_oracle_cap():
    with pytest.raises(ValueError):
        pauli_matrix(GF4Vector.zero(7))
    assert pauli_matrix(GF4Vector.zero(7), cap=7).shape == (128, 128)


# --- signed group closure and projectors ----------------------------------


def test_close_group_c422_signs():
    group = close_group(get_code("c422").generators)
    elements = {str(v): sign for sign, v in group.elements}
    # (XXXX)(ZZZZ) picks up (-i)^4 = +1, so YYYY carries a plus sign.
    assert elements == {"IIII": 1, "XXXX": 1, "ZZZZ": 1, "YYYY": 1}


def test_close_group_single_generator():
    group = close_group([label_to_vector("X")])
    assert [(s, str(v)) for s, v in group.elements] == [(1, "I"), (1, "X")]


def test_close_group_closure_by_dense_multiplication():
    for name in ("bell", "c422"):
        group = close_group(get_code(name).generators, n=get_code(name).n)
        dense = {str(v): sign * pauli_matrix(v) for sign, v in group.elements}
        for la, ma in dense.items():
            for lb, mb in dense.items():
                prod = ma @ mb
                match = [l for l, m in dense.items() if np.allclose(m, prod, atol=1e-12)]
                assert len(match) == 1


def test_close_group_rejects_non_commuting():
    with pytest.raises(ValueError):
        close_group([label_to_vector("X"), label_to_vector("Z")])


def test_close_group_dependent_generators():
    # (XX)(ZZ) = -YY, so adjoining YY with a bare '+' closes on minus the
    # identity; (XZ)(ZX) = +YY, so the same third generator is consistent.
    bad = [label_to_vector(s) for s in ("XX", "ZZ", "YY")]
    with pytest.raises(ValueError):
        close_group(bad)
    ok = close_group([label_to_vector(s) for s in ("XZ", "ZX", "YY")])
    assert ok.size == 4


def test_bell_group_has_a_negative_sign():
    signs = {str(v): s for s, v in close_group(get_code("bell").generators).elements}
    assert signs == {"II": 1, "XX": 1, "ZZ": 1, "YY": -1}


def test_projector_of_trivial_group_is_identity():
    p = projector(close_group([], n=2))
    assert np.array_equal(p, np.eye(4))


@pytest.mark.parametrize("name,trace", [
    ("trivial-n1", 2), ("bell", 1), ("c422", 4), ("five13", 2),
])
def test_projector_assertions_and_trace(name, trace):
    p = code_projector(get_code(name))
    assert abs(np.trace(p).real - trace) < 1e-10
    assert np.allclose(p, p.conj().T)
    assert np.allclose(p @ p, p, atol=1e-12)


def test_projector_five13_eigentest():
    code = get_code("five13")
    p = code_projector(code)
    rng = _rng(3)
    v = uniform_state(p, rng)
    for sign, g in close_group(code.generators).elements:
        assert np.allclose(sign * pauli_matrix(g) @ v, v, atol=1e-10)


def test_adjoin_error_halves_projector_trace():
    code = get_code("c422")
    bigger = adjoin_error(code, label_to_vector("XXII"))
    assert abs(np.trace(code_projector(bigger)).real - 2) < 1e-10


# --- trace-formula enumerators ---------------------------------------------


def test_bruteforce_whole_space_n1():
    pair = enumerators_bruteforce(np.eye(2, dtype=complex), 2)
    assert pair.weights == (1, 0)
    assert pair.dual_weights == (1, 3)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_bruteforce_matches_combinatorial_path(name):
    code = get_code(name)
    pair = stabilizer_enumerators(code)
    brute = enumerators_bruteforce(code_projector(code), code.dim)
    assert brute.weights == pair.weights
    assert brute.dual_weights == pair.dual_weights


def test_bruteforce_rejects_non_projector_input():
    m = np.diag([0.5, 0.25]).astype(complex)
    with pytest.raises(ValueError):
        enumerators_bruteforce(m, 2)


# --- error classification ---------------------------------------------------


def test_classify_examples():
    code = get_code("c422")
    assert classify_error(code, GF4Vector.zero(4)) == TRIVIAL
    assert classify_error(code, label_to_vector("XIII")) == DETECTED
    assert classify_error(code, label_to_vector("XXII")) == UNDETECTABLE


def test_classify_dense_predicates():
    code = get_code("c422")
    p = code_projector(code)
    e_det = pauli_matrix(label_to_vector("XIII"))
    assert np.max(np.abs(p @ e_det @ p)) < 1e-12
    e_und = pauli_matrix(label_to_vector("XXII"))
    assert np.max(np.abs((np.eye(16) - p) @ e_und @ p)) < 1e-12


@pytest.mark.parametrize("name", ["trivial-n1", "bell", "c422"])
def test_classification_agreement_exhaustive(name):
    code = get_code(name)
    p = code_projector(code)
    for e in all_vectors(code.n):
        assert classify_error(code, e) == classify_error_dense(p, e)


def test_classification_agreement_five13_sampled():
    code = get_code("five13")
    p = code_projector(code)
    rng = _rng(7)
    for _ in range(128):
        e = GF4Vector(5, int(rng.integers(32)), int(rng.integers(32)))
        assert classify_error(code, e) == classify_error_dense(p, e)


# --- partial traces ----------------------------------------------------------


def test_partial_trace_identity_factor():
    rng = _rng(0)
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    m = np.kron(np.eye(4), b)
    assert np.allclose(partial_trace(m, (4, 3), "first"), 4 * b)


def test_partial_trace_of_product():
    rng = _rng(1)
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    m = np.kron(a, b)
    assert np.allclose(partial_trace(m, (2, 5), "second"), np.trace(b) * a, atol=1e-12)
    assert np.allclose(partial_trace(m, (2, 5), "first"), np.trace(a) * b, atol=1e-12)


def test_partial_trace_composition():
    rng = _rng(2)
    for _ in range(100):
        m = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
        full = np.trace(m)
        assert abs(np.trace(partial_trace(m, (3, 4), "second")) - full) < 1e-10
        assert abs(np.trace(partial_trace(m, (3, 4), "first")) - full) < 1e-10


def test_partial_trace_shape_mismatch():
    with pytest.raises(ValueError):
        partial_trace(np.eye(6), (2, 2), "first")


# --- uniform subspace sampling ------------------------------------------------


def test_uniform_state_unit_norm():
    p = code_projector(get_code("c422"))
    rng = _rng(4)
    for _ in range(50):
        assert abs(np.linalg.norm(uniform_state(p, rng)) - 1) < 1e-12


def test_uniform_state_rank_one_is_fixed_up_to_phase():
    p = code_projector(get_code("bell"))
    rng = _rng(5)
    v1 = uniform_state(p, rng)
    v2 = uniform_state(p, rng)
    assert abs(abs(np.vdot(v1, v2)) - 1) < 1e-12


def test_uniform_state_zero_projector_fails():
    with pytest.raises(RuntimeError):
        uniform_state(np.zeros((4, 4)), _rng(0))


def test_uniform_state_mean_outer_product():
    code = get_code("trivial-n1")
    p = code_projector(code)
    rng = _rng(6)
    acc = np.zeros((2, 2), dtype=complex)
    n = 20000
    for _ in range(n):
        v = uniform_state(p, rng)
        acc += np.outer(v, v.conj())
    assert np.linalg.norm(acc / n - p / 2) < 4 * np.sqrt(0.5 / n)


# --- moment-identity reports -------------------------------------------------------------


def test_mean_projector_within_band():
    p = code_projector(get_code("five13"))
    report = verify_mean_projector(p, 2, 20000, _rng(8))
    assert report.samples == 20000
    assert report.within(4.0)
    assert report.sigma == pytest.approx(report.expected_rms, rel=0.2)


def test_mean_projector_rank_one_is_deterministic():
    p = code_projector(get_code("bell"))
    report = verify_mean_projector(p, 1, 500, _rng(9))
    assert report.deviation < 1e-12


def test_fourth_moment_within_band():
    report = verify_fourth_moment(2, 20000, _rng(10))
    assert report.within(4.0)


def test_fourth_moment_rank_one_exact():
    report = verify_fourth_moment(1, 200, _rng(11))
    assert report.deviation < 1e-12


def test_fourth_moment_target_trace():
    # The analytic fourth-moment target is Hermitian with unit trace.
    for dim in (2, 3, 4):
        swap = np.zeros((dim * dim, dim * dim))
        for i in range(dim):
            for j in range(dim):
                swap[i * dim + j, j * dim + i] = 1
        target = (np.eye(dim * dim) + swap) / (dim * (dim + 1))
        assert np.allclose(target, target.conj().T)
        assert abs(np.trace(target) - 1) < 1e-12


# --- Monte Carlo of the uniform functional ------------------------------------


def test_pue_nonstab_mc_zero_noise_is_exact_zero():
    p = code_projector(get_code("c422"))
    est = pue_nonstab_mc(p, 4, 0.0, 500, seed=0)
    assert est.estimate == 0.0 and est.stderr == 0.0


def test_pue_nonstab_mc_rank_one_is_zero():
    p = code_projector(get_code("bell"))
    est = pue_nonstab_mc(p, 1, 0.2, 2000, seed=1)
    assert abs(est.estimate) < 1e-12


def test_pue_nonstab_mc_within_band():
    code = get_code("c422")
    p = code_projector(code)
    pair = stabilizer_enumerators(code)
    est = pue_nonstab_mc(p, 4, 0.1, 10000, seed=2)
    target = pue_nonstabilizer(pair, 0.1)
    assert abs(est.estimate - target) <= 4 * est.stderr


def test_pue_nonstab_mc_sampled_error_path():
    code = get_code("five13")
    p = code_projector(code)
    pair = stabilizer_enumerators(code)
    est = pue_nonstab_mc(p, 2, 0.2, 20000, seed=3)
    target = pue_nonstabilizer(pair, 0.2)
    assert abs(est.estimate - target) <= 4 * est.stderr
    assert est.stderr > 0


def test_pue_nonstab_mc_reproducible_across_shards():
    p = code_projector(get_code("c422"))
    a = pue_nonstab_mc(p, 4, 0.1, 3001, seed=5, shards=3)
    b = pue_nonstab_mc(p, 4, 0.1, 3001, seed=5, shards=3)
    assert a == b


# --- composite-system functional -----------------------------------------------


def test_composite_exact_matches_formula():
    for name in ("bell", "c422"):
        code = get_code(name)
        p_op = code_projector(code)
        pair = stabilizer_enumerators(code)
        for p in (0.05, 0.3):
            got = pue_composite_exact(p_op, code.dim, p)
            assert got == pytest.approx(pue_stabilizer(pair, p), abs=1e-10)


def test_composite_exact_zero_noise():
    p_op = code_projector(get_code("c422"))
    assert pue_composite_exact(p_op, 4, 0.0) == 0.0


def test_composite_exact_rank_one_is_zero():
    p_op = code_projector(get_code("bell"))
    assert abs(pue_composite_exact(p_op, 1, 0.3)) < 1e-12


def test_composite_exact_cap():
    p_op = code_projector(get_code("five13"))
    with pytest.raises(ValueError):
        pue_composite_exact(p_op, 2, 0.1)
