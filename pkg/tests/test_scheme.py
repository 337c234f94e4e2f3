import numpy as np
import pytest

from pulseforge import designs, error_basis, netham, scheme

SZ = np.diag([1.0, -1.0]).astype(complex)


def _identity_scheme(n, d, N=3):
    basis = error_basis.generalized_pauli_basis(d)
    times = np.array([0.2, 0.5, 0.3])[:N]
    times = times / times.sum()
    return scheme.PulseScheme(n, N, times, np.ones((n, N), dtype=int), [basis] * n)


def test_identity_scheme_returns_h():
    h = netham.random_model(2, 2, 1)
    H = netham.assemble(h)
    avg = scheme.average_hamiltonian(h, _identity_scheme(2, 2))
    assert np.abs(avg - H).max() < 1e-12


def test_two_qubit_product_oa_decouples():
    oa = designs.product_oa(2, 4)
    basis = error_basis.generalized_pauli_basis(2)
    sch = scheme.PulseScheme(2, 16, np.full(16, 1 / 16), oa.entries, [basis] * 2)
    h = netham.random_model(2, 2, 42)
    avg = scheme.average_hamiltonian(h, sch)
    assert np.abs(avg).max() < 1e-10


def test_five_qubit_rao_hamming_decouples():
    oa = designs.rao_hamming_oa(4, 2)
    basis = error_basis.generalized_pauli_basis(2)
    sch = scheme.PulseScheme(5, 16, np.full(16, 1 / 16), oa.entries, [basis] * 5)
    h = netham.random_model(5, 2, 7)
    assert np.abs(scheme.average_hamiltonian(h, sch)).max() < 1e-10


def test_decoupling_scheme_sizes():
    assert scheme.decoupling_scheme(4, 3).N == 81
    assert scheme.decoupling_scheme(5, 2).N == 16
    assert scheme.decoupling_scheme(2, 2).N == 16
    assert scheme.decoupling_scheme(6, 2).N == 64


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (5, 2), (3, 3)])
def test_decoupling_sweep(n, d):
    sch = scheme.decoupling_scheme(n, d)
    dim = d ** n
    for seed in range(3):
        h = netham.random_model(n, d, seed)
        rep = scheme.verify_scheme(h, sch, np.zeros((dim, dim)))
        assert rep["ok"], rep


def test_selective_keep_two():
    h = netham.complete_coupling_model(3, 2, alpha=2, coeff=0.5, with_local=True)
    sch = scheme.selective_scheme(3, 2, keep={0, 1})
    avg = scheme.average_hamiltonian(h, sch)
    eye = np.eye(2)
    want = (np.kron(np.kron(SZ, SZ), eye)
            + 0.5 * np.kron(np.kron(SZ, eye), eye)
            + 0.5 * np.kron(np.kron(eye, SZ), eye))
    assert np.abs(avg - want).max() < 1e-10


def test_selective_keep_one():
    h = netham.complete_coupling_model(3, 2, alpha=2, coeff=0.5, with_local=True)
    sch = scheme.selective_scheme(3, 2, keep={0})
    avg = scheme.average_hamiltonian(h, sch)
    want = 0.5 * np.kron(SZ, np.eye(4))
    assert np.abs(avg - want).max() < 1e-10


def test_selective_keep_all_degenerate():
    h = netham.random_model(2, 2, 3)
    sch = scheme.selective_scheme(2, 2, keep={0, 1})
    assert sch.N == 1
    assert np.abs(scheme.average_hamiltonian(h, sch) - netham.assemble(h)).max() < 1e-12


def test_selective_random_models():
    # the kept sub-model is exactly what survives
    for keep in ({0}, {2}, {0, 2}):
        h = netham.random_model(4, 2, 55)
        sch = scheme.selective_scheme(4, 2, keep)
        m = h.m
        J = np.zeros_like(h.J)
        ks = sorted(keep)
        if len(ks) == 2:
            a, b = ks
            J[a * m:(a + 1) * m, b * m:(b + 1) * m] = h.block(a, b)
            J[b * m:(b + 1) * m, a * m:(a + 1) * m] = h.block(b, a)
        r = np.zeros_like(h.r)
        for k in ks:
            r[k * m:(k + 1) * m] = h.r[k * m:(k + 1) * m]
        want = netham.assemble(netham.PairHamiltonian(h.n, h.d, J, r))
        rep = scheme.verify_scheme(h, sch, want)
        assert rep["ok"], (keep, rep)


def test_selective_errors():
    with pytest.raises(ValueError):
        scheme.selective_scheme(4, 2, keep={0, 1, 2})
    with pytest.raises(ValueError):
        scheme.selective_scheme(3, 2, keep=set())
    with pytest.raises(ValueError):
        scheme.selective_scheme(3, 2, keep={5})


def test_inversion_two_qubits_zz():
    sch = scheme.inversion_scheme(2, 2)
    assert sch.N == 15 and sch.target_overhead == 15.0
    J = np.zeros((6, 6))
    J[2, 5] = J[5, 2] = 0.5
    h = netham.PairHamiltonian(2, 2, J, np.zeros(6))
    avg = scheme.average_hamiltonian(h, sch)
    H = np.kron(SZ, SZ)
    assert np.abs(15.0 * avg + H).max() < 1e-10


@pytest.mark.parametrize("n,d,overhead", [(2, 2, 15), (5, 2, 15), (3, 3, 80)])
def test_inversion_random_models(n, d, overhead):
    sch = scheme.inversion_scheme(n, d)
    assert sch.N == overhead
    for seed in (0, 1):
        h = netham.random_model(n, d, seed)
        H = netham.assemble(h)
        rep = scheme.verify_scheme(h, sch, -H)
        assert rep["ok"], rep


def test_verify_scheme_wrong_overhead():
    sch = scheme.inversion_scheme(2, 2)
    h = netham.random_model(2, 2, 9)
    H = netham.assemble(h)
    assert scheme.verify_scheme(h, sch, -H, overhead=sch.N + 1)["ok"] is False
    assert scheme.verify_scheme(h, sch, -H)["ok"] is True


def test_pairwise_sufficiency():
    # the (0,1) coupling average only sees rows 0 and 1 of the pulse matrix
    m = 3
    J = np.zeros((4 * m, 4 * m))
    blk = np.arange(9).reshape(3, 3) / 10.0
    J[0 * m:1 * m, 1 * m:2 * m] = blk
    J[1 * m:2 * m, 0 * m:1 * m] = blk.T
    h = netham.PairHamiltonian(4, 2, J, np.zeros(4 * m))
    sch = scheme.decoupling_scheme(4, 2)
    base = scheme.average_hamiltonian(h, sch)
    swapped = sch.pulses.copy()
    swapped[[2, 3]] = swapped[[3, 2]]
    sch2 = scheme.PulseScheme(4, sch.N, sch.times, swapped, sch.bases)
    assert np.abs(scheme.average_hamiltonian(h, sch2) - base).max() < 1e-12


def test_clique_sharing_preserves_heisenberg():
    # identical pulse rows leave the exchange coupling untouched
    m = 3
    J = np.zeros((2 * m, 2 * m))
    for a in range(3):
        J[a, m + a] = J[m + a, a] = 0.5
    h = netham.PairHamiltonian(2, 2, J, np.zeros(2 * m))
    H = netham.assemble(h)
    oa = designs.smallest_oa_for(2, 4)
    basis = error_basis.generalized_pauli_basis(2)
    pulses = np.vstack([oa.entries[0], oa.entries[0]])
    sch = scheme.PulseScheme(2, oa.N, np.full(oa.N, 1 / oa.N), pulses, [basis] * 2)
    assert np.abs(scheme.average_hamiltonian(h, sch) - H).max() < 1e-10


def test_mixed_decoupling():
    rng = np.random.default_rng(13)
    dims = [2, 3, 2]

    def rand_traceless(d):
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        a = a + a.conj().T
        return a - np.trace(a) / d * np.eye(d)

    def embed(placed):
        out = np.eye(1, dtype=complex)
        for k, d in enumerate(dims):
            out = np.kron(out, placed.get(k, np.eye(d)))
        return out

    H = np.zeros((12, 12), dtype=complex)
    for k in range(3):
        for l in range(k + 1, 3):
            for _ in range(2):
                H += embed({k: rand_traceless(dims[k]), l: rand_traceless(dims[l])})
        H += embed({k: rand_traceless(dims[k])})
    sch = scheme.mixed_decoupling_scheme(dims)
    assert sch.N == 4 * 9 * 4
    assert np.abs(scheme.average_of_matrix(H, sch)).max() < 1e-10


def test_scheme_validation():
    basis = error_basis.generalized_pauli_basis(2)
    with pytest.raises(ValueError):
        scheme.PulseScheme(1, 2, np.array([0.5, 0.6]), np.ones((1, 2), dtype=int), [basis])
    with pytest.raises(ValueError):
        scheme.PulseScheme(1, 2, np.array([1.0, -0.0]), np.ones((1, 2), dtype=int), [basis])
    with pytest.raises(ValueError):
        scheme.PulseScheme(1, 2, np.array([0.5, 0.5]), np.array([[1, 5]]), [basis])
    h = netham.random_model(3, 2, 0)
    with pytest.raises(ValueError):
        scheme.average_hamiltonian(h, _identity_scheme(2, 2))


def test_scheme_json_roundtrip():
    sch = scheme.inversion_scheme(2, 2)
    doc = scheme.scheme_to_json(sch)
    assert doc["basis"] == "generalized_pauli" and doc["d"] == 2
    back = scheme.scheme_from_json(doc)
    assert (back.pulses == sch.pulses).all()
    assert back.target_overhead == 15.0
    mixed = scheme.mixed_decoupling_scheme([2, 3])
    doc = scheme.scheme_from_json(scheme.scheme_to_json(mixed))
    assert doc.dims == [2, 3]
    h2 = netham.random_model(2, 2, 31)
    sch2 = scheme.decoupling_scheme(2, 2)
    rt = scheme.scheme_from_json(scheme.scheme_to_json(sch2))
    a = scheme.average_hamiltonian(h2, sch2)
    b = scheme.average_hamiltonian(h2, rt)
    assert np.abs(a - b).max() < 1e-12