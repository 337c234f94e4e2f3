"""Spectral lower bounds on simulation time overhead.

Whatever pulse sequence turns a coupling matrix J into an effective
Jtilde, the spectrum of Jtilde is majorized by the spectrum of tau*J
where tau is the total time overhead.  Reading that back gives a
certified lower bound: the smallest tau for which majorization can
hold at all.  These are necessary conditions only; nothing here claims
a scheme achieving the bound exists.
"""

from __future__ import annotations

import numpy as np

from .netham import eigvals_sym

TOL = 1e-9
SEARCH_SEED = 0xC0FFEE


def majorizes(x, y, tol: float = TOL) -> bool:
    """True when x is majorized by y: prefix sums of x below y, totals equal."""
    x = np.sort(np.asarray(x, dtype=float))[::-1]
    y = np.sort(np.asarray(y, dtype=float))[::-1]
    if x.shape != y.shape:
        raise ValueError("vectors must have equal length")
    cx, cy = np.cumsum(x), np.cumsum(y)
    if np.any(cx[:-1] > cy[:-1] + tol):
        return False
    return abs(cx[-1] - cy[-1]) <= tol


def _check_traceless_symmetric(M, name: str):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square")
    scale = max(1.0, np.abs(M).max(initial=0.0))
    if np.abs(M - M.T).max(initial=0.0) > 1e-10 * scale:
        raise ValueError(f"{name} must be symmetric")
    if abs(np.trace(M)) > 1e-8 * scale:
        raise ValueError(f"{name} must be traceless")
    return M


def tau_min(Jtilde, J) -> float:
    """Smallest tau >= 0 with Spec(Jtilde) majorized by Spec(tau*J).

    Maximum over k < D of the prefix-sum ratios of the two descending
    spectra.  Degenerate prefixes (both sums ~ 0) are skipped; a
    vanishing denominator with positive numerator means no tau works
    and the result is inf.
    """
    Jtilde = _check_traceless_symmetric(Jtilde, "Jtilde")
    J = _check_traceless_symmetric(J, "J")
    if Jtilde.shape != J.shape:
        raise ValueError("matrices must have equal shape")
    x = eigvals_sym(Jtilde)
    y = eigvals_sym(J)
    cx, cy = np.cumsum(x), np.cumsum(y)
    best = 0.0
    for k in range(len(x) - 1):
        num, den = cx[k], cy[k]
        if den <= TOL:
            if num > TOL:
                return float("inf")
            continue
        best = max(best, num / den)
    return best


def _rescale_blocks(M: np.ndarray, S: np.ndarray) -> np.ndarray:
    n = S.shape[0]
    m = M.shape[0] // n
    return M * np.kron(S, np.ones((m, m)))


def tau_min_rescaled(Jtilde, J, S) -> float:
    """tau_min after multiplying coupling block (k,l) of both sides by S[k,l]."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError("S must be square")
    if np.abs(S - S.T).max(initial=0.0) > 1e-12:
        raise ValueError("S must be symmetric")
    Jtilde = np.asarray(Jtilde, dtype=float)
    J = np.asarray(J, dtype=float)
    if Jtilde.shape != J.shape:
        raise ValueError("matrices must have equal shape")
    if J.shape[0] % S.shape[0]:
        raise ValueError("S size must divide the matrix size")
    return tau_min(_rescale_blocks(Jtilde, S), _rescale_blocks(J, S))


def rescaled_search(Jtilde, J, n: int, trials: int = 100,
                    seed: int = SEARCH_SEED) -> tuple[float, np.ndarray]:
    """Best rescaled bound over random symmetric +-1 matrices S.

    The all-ones S is always tried first, so the result is never worse
    than the plain tau_min.  Returns (bound, argmax S).
    """
    rng = np.random.default_rng(seed)
    best_S = np.ones((n, n))
    best = tau_min_rescaled(Jtilde, J, best_S)
    for _ in range(trials):
        S = np.where(rng.random((n, n)) < 0.5, -1.0, 1.0)
        S = np.triu(S) + np.triu(S, 1).T
        val = tau_min_rescaled(Jtilde, J, S)
        if val > best:
            best, best_S = val, S
    return best, best_S


def inversion_lower_bound(J) -> float:
    """Overhead floor for simulating -H from H: r/(-q).

    r and q are the extreme eigenvalues of the coupling matrix; q < 0
    whenever J is traceless and nonzero.  Equals the last prefix-sum
    ratio of tau_min(-J, J), hence never exceeds it.
    """
    J = _check_traceless_symmetric(J, "J")
    if np.abs(J).max(initial=0.0) == 0.0:
        raise ValueError("J must be nonzero")
    ev = eigvals_sym(J)
    r, q = ev[0], ev[-1]
    return float(r / -q)


def spectral_check_hamiltonian(Htilde, H, tau: float, tol: float = 1e-8) -> bool:
    """Secondary check at the Hilbert-space level: Spec(Htilde) < tau*Spec(H)."""
    x = eigvals_sym(np.asarray(Htilde))
    y = eigvals_sym(np.asarray(H))
    return majorizes(x, tau * y, tol=tol)


def bound_report(Jtilde, J, n: int, trials: int = 100,
                 seed: int = SEARCH_SEED) -> dict:
    """All bounds in one report; these floors are necessary, not achievable."""
    plain = tau_min(Jtilde, J)
    rescaled, S = rescaled_search(Jtilde, J, n, trials=trials, seed=seed)
    return {
        "tau_min": plain,
        "inversion_bound": inversion_lower_bound(J),
        "rescaled_max": rescaled,
        "S_argmax": S.tolist(),
        "lower_bound": True,
    }
