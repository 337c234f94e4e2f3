"""Pulse schemes and the exact average-Hamiltonian engine.

A scheme runs the network through N intervals; in interval j node k is
conjugated by basis element pulses[k][j] of its own unitary error
basis.  The engine computes the algebraic average
sum_j times[j] U_j^dag H U_j exactly (fast-control limit, no Trotter
error), and the synthesizers pick pulse matrices from orthogonal
arrays:

* decoupling: any strength-2 array with one row per node zeroes every
  coupling and every local term;
* selective recoupling: identity pulses on the kept nodes, array rows
  on the rest, leaves exactly the kept sub-model;
* time reversal: array in normal form with the all-identity first
  column dropped, making the remaining columns sum to -H at time
  overhead N-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import designs, error_basis, netham

RESIDUAL_TOL = 1e-9
_TIME_TOL = 1e-12


@dataclass(eq=False)
class PulseScheme:
    n: int
    N: int
    times: np.ndarray = field(repr=False)
    pulses: np.ndarray = field(repr=False)
    bases: list = field(repr=False)
    target_overhead: float = 1.0

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.pulses = np.asarray(self.pulses, dtype=int)
        if self.times.shape != (self.N,):
            raise ValueError("times must have length N")
        if np.any(self.times <= 0):
            raise ValueError("interval durations must be positive")
        if abs(self.times.sum() - 1.0) > _TIME_TOL:
            raise ValueError("interval durations must sum to 1")
        if self.pulses.shape != (self.n, self.N):
            raise ValueError("pulse matrix must be n x N")
        if len(self.bases) != self.n:
            raise ValueError("need one basis per node")
        for k, b in enumerate(self.bases):
            hi = b.d * b.d
            row = self.pulses[k]
            if row.min() < 1 or row.max() > hi:
                raise ValueError(f"pulse labels of node {k} out of [1, {hi}]")
        if self.target_overhead <= 0:
            raise ValueError("target_overhead must be positive")

    @property
    def dims(self) -> list:
        return [b.d for b in self.bases]


def _interval_unitary(sch: PulseScheme, j: int) -> np.ndarray:
    U = np.eye(1, dtype=complex)
    for k in range(sch.n):
        U = np.kron(U, sch.bases[k].element(int(sch.pulses[k, j])))
    return U


def average_of_matrix(H: np.ndarray, sch: PulseScheme) -> np.ndarray:
    """sum_j times[j] U_j^dag H U_j for an explicit Hermitian H."""
    dim = int(np.prod(sch.dims))
    H = np.asarray(H, dtype=complex)
    if H.shape != (dim, dim):
        raise ValueError(f"H must be {dim}x{dim} for this scheme")
    acc = np.zeros_like(H)
    for j in range(sch.N):
        U = _interval_unitary(sch, j)
        acc += sch.times[j] * (U.conj().T @ H @ U)
    return acc


def average_hamiltonian(hmodel: netham.PairHamiltonian, sch: PulseScheme) -> np.ndarray:
    """Exact average of the assembled model under the scheme."""
    if hmodel.n != sch.n:
        raise ValueError("node counts differ")
    if any(d != hmodel.d for d in sch.dims):
        raise ValueError("scheme bases do not match the node dimension")
    if hmodel.d ** hmodel.n > netham.HILBERT_CAP:
        raise ValueError(f"Hilbert dimension exceeds {netham.HILBERT_CAP}")
    return average_of_matrix(netham.assemble(hmodel), sch)


def _uniform(N: int) -> np.ndarray:
    return np.full(N, 1.0 / N)


def decoupling_scheme(n: int, d: int) -> PulseScheme:
    """Switch off the whole network: strength-2 array over the d^2 labels.

    Efficient (linear-size) arrays exist whenever d is a prime power;
    other dimensions fall back to the exponential product array.
    """
    oa = designs.smallest_oa_for(n, d * d)
    basis = error_basis.generalized_pauli_basis(d)
    return PulseScheme(n, oa.N, _uniform(oa.N), oa.entries, [basis] * n)


def mixed_decoupling_scheme(dims) -> PulseScheme:
    """Decoupling for per-node dimensions via the product array."""
    dims = list(dims)
    entries = designs.mixed_product_array([d * d for d in dims])
    bases = [error_basis.generalized_pauli_basis(d) for d in dims]
    N = entries.shape[1]
    return PulseScheme(len(dims), N, _uniform(N), entries, bases)


def selective_scheme(n: int, d: int, keep) -> PulseScheme:
    """Keep one or two nodes untouched, decouple everything else.

    Kept nodes idle (identity label) while the rest run array rows, so
    the average retains exactly the couplings inside `keep` plus the
    kept local terms.  Node indices are 0-based.  Degenerate case: when
    every node is kept the scheme is a single identity interval.
    """
    keep = sorted(set(keep))
    if not 1 <= len(keep) <= 2 and len(keep) != n:
        raise ValueError("keep must name 1 or 2 nodes")
    if any(not 0 <= k < n for k in keep):
        raise ValueError("keep indices out of range")
    basis = error_basis.generalized_pauli_basis(d)
    others = [k for k in range(n) if k not in keep]
    if not others:
        return PulseScheme(n, 1, np.array([1.0]), np.ones((n, 1), dtype=int),
                           [basis] * n)
    # rows of a strength>=2 array are individually balanced, which is what
    # kills local terms and the kept-vs-rest couplings
    oa = designs.smallest_oa_for(max(2, len(others)), d * d)
    pulses = np.ones((n, oa.N), dtype=int)
    for row, node in enumerate(others):
        pulses[node] = oa.entries[row]
    return PulseScheme(n, oa.N, _uniform(oa.N), pulses, [basis] * n)


def inversion_scheme(n: int, d: int) -> PulseScheme:
    """Simulate -H: normal-form array with the identity column removed.

    The full array averages every term to zero; subtracting the
    identity column leaves -H across the remaining N-1 columns, hence
    time overhead exactly N-1.
    """
    oa = designs.smallest_oa_for(n, d * d)
    oa = designs.normalize_oa(oa, designs.pair_cyclic_group(d))
    if not (oa.entries[:, 0] == 1).all():
        raise RuntimeError("normal form lost the identity column")
    pulses = oa.entries[:, 1:]
    N = oa.N - 1
    basis = error_basis.generalized_pauli_basis(d)
    return PulseScheme(n, N, _uniform(N), pulses, [basis] * n,
                       target_overhead=float(N))


def verify_scheme(hmodel: netham.PairHamiltonian, sch: PulseScheme,
                  target: np.ndarray, overhead: float | None = None) -> dict:
    """Relative Frobenius residual of overhead*average against the target."""
    if overhead is None:
        overhead = sch.target_overhead
    avg = average_hamiltonian(hmodel, sch)
    target = np.asarray(target, dtype=complex)
    num = np.linalg.norm(overhead * avg - target)
    den = max(1.0, np.linalg.norm(target))
    residual = float(num / den)
    return {"ok": residual <= RESIDUAL_TOL, "residual": residual}


# ---------------------------------------------------------------------------
# serialization

def _matrix_to_pairs(m: np.ndarray) -> list:
    return [[[float(c.real), float(c.imag)] for c in row] for row in m]


def _matrix_from_pairs(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def scheme_to_json(sch: PulseScheme) -> dict:
    doc = {
        "n": sch.n,
        "N": sch.N,
        "times": sch.times.tolist(),
        "pulses": sch.pulses.tolist(),
        "target_overhead": sch.target_overhead,
    }
    dims = sch.dims
    if len(set(dims)) == 1 and all(_is_standard_basis(b) for b in sch.bases):
        doc["d"] = dims[0]
        doc["basis"] = "generalized_pauli"
    else:
        doc["d"] = dims
        doc["basis"] = [[_matrix_to_pairs(e) for e in b.elements] for b in sch.bases]
    return doc


def _is_standard_basis(b) -> bool:
    ref = error_basis.generalized_pauli_basis(b.d)
    return all(np.abs(x - y).max() < 1e-12 for x, y in zip(b.elements, ref.elements))


def scheme_from_json(doc: dict) -> PulseScheme:
    if doc.get("basis") == "generalized_pauli":
        d = int(doc["d"])
        bases = [error_basis.generalized_pauli_basis(d)] * int(doc["n"])
    else:
        dims = doc["d"]
        bases = [error_basis.UnitaryErrorBasis(int(dd), [_matrix_from_pairs(e) for e in els])
                 for dd, els in zip(dims, doc["basis"])]
    return PulseScheme(int(doc["n"]), int(doc["N"]),
                       np.array(doc["times"], dtype=float),
                       np.array(doc["pulses"], dtype=int),
                       bases, float(doc.get("target_overhead", 1.0)))
