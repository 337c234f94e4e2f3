"""Pair-interaction network Hamiltonians on n nodes of dimension d.

A model is stored coordinate-free: a real symmetric coupling matrix J
of shape (m*n, m*n) with m = d^2-1, zero diagonal blocks, plus a local
coefficient vector r.  Block (k, l) holds the coefficients of
sigma_alpha^(k) sigma_beta^(l); the sum runs over ordered pairs k != l,
so an unordered coupling appears twice, once as J_kl and once as its
transpose.  assemble() realizes the model as a dense Hermitian matrix
on the d^n-dimensional Hilbert space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HILBERT_CAP = 4096
_SYM_TOL = 1e-12


@dataclass(frozen=True)
class SuBasis:
    """Traceless Hermitian basis of su(d) with tr(sigma_a sigma_b) = 2 delta_ab."""

    d: int
    sigma: tuple

    @property
    def m(self) -> int:
        return self.d * self.d - 1


def gell_mann_basis(d: int) -> SuBasis:
    """Generalized Gell-Mann matrices: symmetric, antisymmetric, then diagonal.

    For d = 2 this is exactly (sigma_x, sigma_y, sigma_z).
    """
    if not 2 <= d <= 4:
        raise ValueError(f"node dimension {d} out of supported range [2, 4]")
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1
            mats.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            mats.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        for t in range(l):
            m[t, t] = 1
        m[l, l] = -l
        mats.append(np.sqrt(2.0 / (l * (l + 1))) * m)
    return SuBasis(d, tuple(mats))


@dataclass(eq=False)
class PairHamiltonian:
    """n-node model: symmetric J with zero diagonal blocks, local vector r."""

    n: int
    d: int
    J: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = self.d * self.d - 1
        mn = m * self.n
        self.J = np.asarray(self.J, dtype=float)
        self.r = np.asarray(self.r, dtype=float)
        if self.J.shape != (mn, mn):
            raise ValueError(f"J must be {mn}x{mn}")
        if self.r.shape != (mn,):
            raise ValueError(f"r must have length {mn}")
        scale = max(1.0, float(np.abs(self.J).max(initial=0.0)))
        if np.abs(self.J - self.J.T).max(initial=0.0) > _SYM_TOL * scale:
            raise ValueError("J must be symmetric")
        for k in range(self.n):
            blk = self.J[k * m:(k + 1) * m, k * m:(k + 1) * m]
            if np.any(blk != 0.0):
                raise ValueError("diagonal blocks of J must be zero")

    @property
    def m(self) -> int:
        return self.d * self.d - 1

    def block(self, k: int, l: int) -> np.ndarray:
        m = self.m
        return self.J[k * m:(k + 1) * m, l * m:(l + 1) * m]


def _embed(n: int, d: int, placed: dict) -> np.ndarray:
    """Tensor product over n slots with identity everywhere except `placed`."""
    out = np.eye(1, dtype=complex)
    for k in range(n):
        out = np.kron(out, placed.get(k, np.eye(d, dtype=complex)))
    return out


def assemble(h: PairHamiltonian, basis: SuBasis | None = None) -> np.ndarray:
    """Dense Hermitian realization of the model on (C^d)^{tensor n}."""
    if basis is None:
        basis = gell_mann_basis(h.d)
    if basis.d != h.d:
        raise ValueError("basis dimension does not match the model")
    if h.d ** h.n > HILBERT_CAP:
        raise ValueError(f"Hilbert dimension d^n exceeds {HILBERT_CAP}")
    dim = h.d ** h.n
    H = np.zeros((dim, dim), dtype=complex)
    for k in range(h.n):
        for l in range(k + 1, h.n):
            blk = h.block(k, l)
            for a, b in zip(*np.nonzero(blk)):
                # ordered-pair convention: J_kl and its transpose both contribute
                H += 2.0 * blk[a, b] * _embed(h.n, h.d, {k: basis.sigma[a], l: basis.sigma[b]})
    m = h.m
    for k in range(h.n):
        for a in range(m):
            c = h.r[k * m + a]
            if c:
                H += c * _embed(h.n, h.d, {k: basis.sigma[a]})
    return H


def random_model(n: int, d: int, seed: int) -> PairHamiltonian:
    """Seeded dense model with coupling and local entries in [-1, 1]."""
    rng = np.random.default_rng(seed)
    m = d * d - 1
    J = np.zeros((m * n, m * n))
    for k in range(n):
        for l in range(k + 1, n):
            blk = rng.uniform(-1.0, 1.0, size=(m, m))
            J[k * m:(k + 1) * m, l * m:(l + 1) * m] = blk
            J[l * m:(l + 1) * m, k * m:(k + 1) * m] = blk.T
    r = rng.uniform(-1.0, 1.0, size=m * n)
    return PairHamiltonian(n, d, J, r)


def complete_coupling_model(n: int, d: int, alpha: int, coeff: float = 1.0,
                            with_local: bool = False) -> PairHamiltonian:
    """All-to-all network coupling component alpha to itself on every pair."""
    m = d * d - 1
    if not 0 <= alpha < m:
        raise ValueError("alpha out of range")
    J = np.zeros((m * n, m * n))
    for k in range(n):
        for l in range(n):
            if k != l:
                J[k * m + alpha, l * m + alpha] = coeff
    r = np.zeros(m * n)
    if with_local:
        r[alpha::m] = coeff
    return PairHamiltonian(n, d, J, r)


def eigvals_sym(M: np.ndarray) -> np.ndarray:
    """Real spectrum of a Hermitian matrix, descending."""
    M = np.asarray(M)
    if np.abs(M - M.conj().T).max(initial=0.0) > 1e-9 * max(1.0, np.abs(M).max(initial=0.0)):
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(M)[::-1]


def model_to_json(h: PairHamiltonian) -> dict:
    return {"n": h.n, "d": h.d, "J": h.J.tolist(), "r": h.r.tolist()}


def model_from_json(doc: dict) -> PairHamiltonian:
    return PairHamiltonian(int(doc["n"]), int(doc["d"]),
                           np.array(doc["J"], dtype=float),
                           np.array(doc["r"], dtype=float))
