"""Unitary error bases: the pulse alphabet that array symbols index.

A basis for dimension d has d^2 unitaries, pairwise orthogonal under
tr(A^dag B)/d, labeled by Z_d x Z_d with (0,0) mapped to the identity.
Conjugation averaged over the whole basis kills every traceless
Hermitian operator, which is the mechanism behind decoupling.

Label l in [1, d^2] stands for (a, b) = divmod(l-1, d); this matches
the group tables in :mod:`pulseforge.designs`, so array normal forms
and basis labels compose consistently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import designs

TOL = 1e-12


@dataclass(eq=False)
class UnitaryErrorBasis:
    d: int
    elements: list = field(repr=False)
    group: designs.GroupTable = field(default=None, repr=False)

    def __post_init__(self):
        if self.group is None:
            self.group = designs.pair_cyclic_group(self.d)
        check_error_basis(self)

    def label(self, l: int) -> tuple[int, int]:
        """(a, b) pair for the 1-based element label."""
        return divmod(l - 1, self.d)

    def element(self, l: int) -> np.ndarray:
        return self.elements[l - 1]

    def __len__(self):
        return len(self.elements)


def check_error_basis(basis: UnitaryErrorBasis):
    """Raise unless unitarity, trace-orthogonality and the identity label hold."""
    d = basis.d
    if len(basis.elements) != d * d:
        raise ValueError(f"need d^2 = {d * d} elements, got {len(basis.elements)}")
    eye = np.eye(d)
    if np.abs(basis.elements[0] - eye).max() > TOL:
        raise ValueError("element with label (0,0) must be the identity")
    for i, e in enumerate(basis.elements):
        if e.shape != (d, d):
            raise ValueError(f"element {i + 1} is not {d}x{d}")
        if np.abs(e.conj().T @ e - eye).max() > TOL:
            raise ValueError(f"element {i + 1} is not unitary")
    for i in range(d * d):
        for j in range(i + 1, d * d):
            ip = np.trace(basis.elements[i].conj().T @ basis.elements[j]) / d
            if abs(ip) > TOL:
                raise ValueError(f"elements {i + 1} and {j + 1} are not trace-orthogonal")


def generalized_pauli_basis(d: int) -> UnitaryErrorBasis:
    """Shift/clock basis: label (a, b) maps to X^a Z^b.

    X|j> = |j+1 mod d>, Z|j> = e^{2 pi i j/d}|j>.  For d = 2 the
    elements are 1, Z, X, XZ, phase-equivalent to the Pauli basis.
    """
    if not 2 <= d <= 8:
        raise ValueError(f"node dimension {d} out of supported range [2, 8]")
    w = np.exp(2j * np.pi / d)
    X = np.zeros((d, d), dtype=complex)
    for j in range(d):
        X[(j + 1) % d, j] = 1
    Z = np.diag(w ** np.arange(d))
    elements = []
    for a in range(d):
        for b in range(d):
            elements.append(np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b))
    return UnitaryErrorBasis(d, elements)


def annihilate(basis: UnitaryErrorBasis, a: np.ndarray) -> np.ndarray:
    """Uniform conjugation average (1/d^2) sum_i E_i^dag a E_i.

    Zero (to tolerance) for traceless Hermitian a; the trace part is
    fixed, so the identity maps to itself.
    """
    a = np.asarray(a, dtype=complex)
    if np.abs(a - a.conj().T).max() > 1e-10 * max(1.0, np.abs(a).max()):
        raise ValueError("input must be Hermitian")
    d = basis.d
    out = np.zeros((d, d), dtype=complex)
    for e in basis.elements:
        out += e.conj().T @ a @ e
    return out / (d * d)


def _kills_all(subset, probes, d: int) -> bool:
    for a in probes:
        acc = np.zeros((d, d), dtype=complex)
        for e in subset:
            acc += e.conj().T @ a @ e
        if np.abs(acc / len(subset)).max() > 1e-8:
            return False
    return True


def minimality_check(d: int) -> bool:
    """Confirm no uniform-weight sub-multiset shorter than d^2 annihilates su(d).

    Exhaustive over proper subsets for d = 2; 100 seeded random size-8
    subsets for d = 3.  True when every short subset fails and the full
    basis succeeds.
    """
    from .netham import gell_mann_basis
    import itertools

    if d not in (2, 3):
        raise ValueError("minimality spot check covers d in {2, 3}")
    basis = generalized_pauli_basis(d)
    probes = list(gell_mann_basis(d).sigma)
    if not _kills_all(basis.elements, probes, d):
        return False
    if d == 2:
        for size in range(1, 4):
            for subset in itertools.combinations(basis.elements, size):
                if _kills_all(subset, probes, d):
                    return False
        return True
    rng = np.random.default_rng(0xC0FFEE)
    for _ in range(100):
        pick = rng.choice(9, size=8, replace=False)
        subset = [basis.elements[i] for i in pick]
        if _kills_all(subset, probes, d):
            return False
    return True
