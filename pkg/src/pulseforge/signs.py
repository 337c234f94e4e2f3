"""Qubit decoupling via sign matrices.

Conjugating a Pauli operator by 1, sigma_x, sigma_y or sigma_z leaves
it fixed up to a sign, so a qubit pulse scheme is fully described by
three n x N sign matrices (one per Pauli axis).  Decoupling needs
every pair of the 3n rows orthogonal and every row balanced; the
entrywise product Sx*Sy = Sz is forced by the conjugation table.

Triples come from two sources: relabeling a strength-2 array over four
symbols, or the line partition of F4^m, whose character map phi turns
each line into three rows of a real Hadamard matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import designs, error_basis, gf, scheme

# signs acquired by (sigma_x, sigma_y, sigma_z) under conjugation by
# 1, sigma_x, sigma_y, sigma_z (in that symbol order)
SIGN_TABLE = {
    "x": (1, 1, -1, -1),
    "y": (1, -1, 1, -1),
    "z": (1, -1, -1, 1),
}

# column pattern (sx, sy, sz) -> conjugating element as a shift/clock label;
# sigma_y and XZ differ by a phase only, so they conjugate identically
_PATTERN_TO_LABEL = {
    (1, 1, 1): 1,      # identity
    (1, -1, -1): 3,    # X
    (-1, 1, -1): 4,    # XZ
    (-1, -1, 1): 2,    # Z
}

# phi: F4 -> rows of the order-4 Hadamard matrix, indexed by the fixed
# field-element encoding [0, 1, w, w^2]
PHI = {
    0: (1, 1, 1, 1),
    1: (1, -1, -1, 1),
    2: (1, -1, 1, -1),
    3: (1, 1, -1, -1),
}


@dataclass(eq=False)
class SignTriple:
    n: int
    N: int
    Sx: np.ndarray = field(repr=False)
    Sy: np.ndarray = field(repr=False)
    Sz: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("Sx", "Sy", "Sz"):
            M = np.asarray(getattr(self, name), dtype=int)
            if M.shape != (self.n, self.N):
                raise ValueError(f"{name} must be n x N")
            if not np.all(np.abs(M) == 1):
                raise ValueError(f"{name} entries must be +-1")
            setattr(self, name, M)


def oa_to_signs(oa: designs.OrthogonalArray) -> SignTriple:
    """Relabel a strength-2 array over four symbols into a sign triple.

    Symbol j means conjugation by the j-th element of (1, sigma_x,
    sigma_y, sigma_z); each Pauli row is an entrywise table lookup.
    """
    if oa.s != 4:
        raise ValueError("need a four-symbol array")
    lut = {axis: np.array(t) for axis, t in SIGN_TABLE.items()}
    idx = oa.entries - 1
    return SignTriple(oa.n, oa.N, lut["x"][idx], lut["y"][idx], lut["z"][idx])


def spread_signs(m: int) -> SignTriple:
    """Sign triple from the line partition of F4^m.

    The (4^m-1)/3 lines partition the nonzero vectors into triples
    {v, w*v, w^2*v}; mapping each vector through the coordinatewise
    character phi gives all distinct non-constant rows of the 2m-fold
    tensor power of the 2x2 Hadamard matrix, pairwise orthogonal by
    construction.
    """
    if not 1 <= m <= 4:
        raise ValueError("m out of supported range [1, 4]")
    f4 = gf.field_new(2, 2)
    es = gf.elements(f4)
    w = es[2]
    w2 = es[3]
    one = es[1]
    N = 4 ** m

    def vec(j):
        out = []
        for _ in range(m):
            out.append(es[j % 4])
            j //= 4
        return out

    def phi(v):
        row = np.array([1])
        for c in v:
            row = np.kron(row, np.array(PHI[c.value]))
        return row

    reps = []
    for j in range(N):
        v = vec(j)
        lead = next((c for c in v if c), None)
        if lead is not None and lead == one:
            reps.append(v)
    n = (N - 1) // 3
    assert len(reps) == n

    Sx = np.empty((n, N), dtype=int)
    Sy = np.empty((n, N), dtype=int)
    Sz = np.empty((n, N), dtype=int)
    for k, v in enumerate(reps):
        Sx[k] = phi([w * c for c in v])
        Sy[k] = phi([w2 * c for c in v])
        Sz[k] = phi(v)
    return SignTriple(n, N, Sx, Sy, Sz)


def verify_signs(st: SignTriple) -> dict:
    """Check Schur product, 3n-row orthogonality and zero row sums."""
    violations = []
    if not np.array_equal(st.Sx * st.Sy, st.Sz):
        bad = np.argwhere(st.Sx * st.Sy != st.Sz)
        for k, j in bad[:16]:
            violations.append({"kind": "schur", "row": int(k), "column": int(j)})
    rows = np.vstack([st.Sx, st.Sy, st.Sz])
    tags = [(axis, k) for axis in ("x", "y", "z") for k in range(st.n)]
    G = rows @ rows.T
    for i in range(3 * st.n):
        for j in range(i + 1, 3 * st.n):
            if G[i, j] != 0:
                violations.append({"kind": "orthogonality",
                                   "rows": (tags[i], tags[j]),
                                   "dot": int(G[i, j])})
    sums = rows.sum(axis=1)
    for i in np.flatnonzero(sums):
        violations.append({"kind": "row_sum", "row": tags[i], "sum": int(sums[i])})
    return {"ok": not violations, "violations": violations}


def signs_to_pulse_scheme(st: SignTriple) -> scheme.PulseScheme:
    """Recover the pulse sequence: each sign column names its conjugator.

    The four valid (sx, sy, sz) patterns are distinct, so the lookup is
    unique; anything else means the triple is corrupted.
    """
    pulses = np.empty((st.n, st.N), dtype=int)
    for k in range(st.n):
        for j in range(st.N):
            pat = (int(st.Sx[k, j]), int(st.Sy[k, j]), int(st.Sz[k, j]))
            label = _PATTERN_TO_LABEL.get(pat)
            if label is None:
                raise ValueError(f"invalid sign pattern {pat} at row {k}, column {j}")
            pulses[k, j] = label
    basis = error_basis.generalized_pauli_basis(2)
    return scheme.PulseScheme(st.n, st.N, np.full(st.N, 1.0 / st.N), pulses,
                              [basis] * st.n)


def signs_to_json(st: SignTriple) -> dict:
    return {"n": st.n, "N": st.N, "Sx": st.Sx.tolist(),
            "Sy": st.Sy.tolist(), "Sz": st.Sz.tolist()}


def signs_from_json(doc: dict) -> SignTriple:
    return SignTriple(int(doc["n"]), int(doc["N"]),
                      np.array(doc["Sx"]), np.array(doc["Sy"]), np.array(doc["Sz"]))
