import numpy as np
import pytest

from pulseforge import error_basis, netham


def test_d2_elements():
    b = error_basis.generalized_pauli_basis(2)
    assert len(b) == 4
    assert np.allclose(b.element(1), np.eye(2))
    assert np.allclose(b.element(2), np.diag([1, -1]))            # Z
    assert np.allclose(b.element(3), [[0, 1], [1, 0]])            # X
    assert np.allclose(b.element(4), [[0, -1], [1, 0]])           # XZ
    assert b.label(1) == (0, 0) and b.label(4) == (1, 1)


@pytest.mark.parametrize("d", range(2, 9))
def test_unitarity_and_orthogonality(d):
    b = error_basis.generalized_pauli_basis(d)
    eye = np.eye(d)
    for e in b.elements:
        assert np.abs(e.conj().T @ e - eye).max() < 1e-12
    for i in range(d * d):
        for j in range(d * d):
            ip = np.trace(b.elements[i].conj().T @ b.elements[j]) / d
            want = 1.0 if i == j else 0.0
            assert abs(ip - want) < 1e-12


def test_projective_group_compatibility():
    # product of labels matches product of elements up to a unit phase
    for d in (2, 3, 4):
        b = error_basis.generalized_pauli_basis(d)
        g = b.group
        for l1 in range(1, d * d + 1):
            for l2 in range(1, d * d + 1):
                prod = b.element(l1) @ b.element(l2)
                target = b.element(g.mul(l1, l2))
                overlap = np.trace(target.conj().T @ prod) / d
                assert abs(abs(overlap) - 1.0) < 1e-12


def test_annihilate_traceless():
    b2 = error_basis.generalized_pauli_basis(2)
    assert np.abs(error_basis.annihilate(b2, np.diag([1.0, -1.0]))).max() < 1e-12
    b3 = error_basis.generalized_pauli_basis(3)
    assert np.abs(error_basis.annihilate(b3, np.diag([1.0, 0.0, -1.0]))).max() < 1e-12
    # the trace part is fixed
    assert np.allclose(error_basis.annihilate(b2, np.eye(2)), np.eye(2))
    with pytest.raises(ValueError):
        error_basis.annihilate(b2, np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_annihilate_full_su_basis(d):
    b = error_basis.generalized_pauli_basis(d)
    for s in netham.gell_mann_basis(d).sigma:
        assert np.abs(error_basis.annihilate(b, s)).max() < 1e-12


def test_conjugation_preserves_su():
    b = error_basis.generalized_pauli_basis(3)
    rng = np.random.default_rng(2)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a = a + a.conj().T
    a -= np.trace(a) / 3 * np.eye(3)
    for e in b.elements:
        c = e.conj().T @ a @ e
        assert abs(np.trace(c)) < 1e-12
        assert np.abs(c - c.conj().T).max() < 1e-12


def test_minimality():
    assert error_basis.minimality_check(2)
    assert error_basis.minimality_check(3)
    with pytest.raises(ValueError):
        error_basis.minimality_check(4)


def test_basis_validation():
    with pytest.raises(ValueError):
        error_basis.generalized_pauli_basis(9)
    with pytest.raises(ValueError):
        error_basis.UnitaryErrorBasis(2, [np.eye(2)] * 4)     # not orthogonal
    bad = [np.diag([1.0, -1.0]), np.array([[0, 1], [1, 0]]),
           np.array([[0, -1j], [1j, 0]]), np.eye(2)]
    with pytest.raises(ValueError):
        error_basis.UnitaryErrorBasis(2, bad)                 # identity not first
