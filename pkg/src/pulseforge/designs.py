"""Combinatorial designs behind the pulse schemes.

Two structures are provided: orthogonal arrays of strength 2 (every
ordered symbol pair appears equally often in every row pair) and
difference schemes over cyclic groups (every row-pair difference vector
is balanced).  Constructions are deterministic; verifiers recheck the
defining property exhaustively and report located violations.

Symbols of an orthogonal array are labels 1..s so they can double as
indices into a unitary basis; difference schemes use residues 0..u-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf

OA_SIZE_CAP = 10 ** 5
PRODUCT_SIZE_CAP = 10 ** 6


@dataclass(eq=False)
class OrthogonalArray:
    """Strength-2 array: n rows, N columns, entries in [1, s], index lam.

    lam is meaningful for n >= 2 (N = lam * s^2); a single-row array
    stores lam = N // s^2 and is vacuously valid.
    """

    n: int
    N: int
    s: int
    lam: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=int)
        if self.entries.shape != (self.n, self.N):
            raise ValueError("entry matrix shape does not match (n, N)")
        if self.entries.size and (self.entries.min() < 1 or self.entries.max() > self.s):
            raise ValueError("entries must lie in [1, s]")

    def row(self, k: int) -> np.ndarray:
        return self.entries[k]


@dataclass(eq=False)
class DifferenceScheme:
    """n x N array over Z_u: row differences hit every residue N/u times."""

    n: int
    N: int
    u: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=int)
        if self.entries.shape != (self.n, self.N):
            raise ValueError("entry matrix shape does not match (n, N)")
        if self.N % self.u:
            raise ValueError("u must divide N")
        if self.entries.size and (self.entries.min() < 0 or self.entries.max() >= self.u):
            raise ValueError("entries must lie in [0, u)")


# ---------------------------------------------------------------------------
# group tables on labels 1..s

@dataclass(frozen=True)
class GroupTable:
    """Finite group on labels 1..s given by its multiplication table."""

    s: int
    identity: int
    table: tuple  # table[a-1][b-1] = a*b, labels 1..s

    def mul(self, a: int, b: int) -> int:
        return self.table[a - 1][b - 1]

    def inverse(self, a: int) -> int:
        row = self.table[a - 1]
        return row.index(self.identity) + 1


def _check_group(g: GroupTable):
    s = g.s
    labels = range(1, s + 1)
    if len(g.table) != s or any(len(r) != s for r in g.table):
        raise ValueError("group table must be s x s")
    if any(g.mul(g.identity, a) != a or g.mul(a, g.identity) != a for a in labels):
        raise ValueError("designated identity is not an identity")
    for a in labels:
        if sorted(g.table[a - 1]) != list(labels):
            raise ValueError(f"row {a} of the group table is not a permutation")
        if g.identity not in g.table[a - 1]:
            raise ValueError(f"label {a} has no inverse")
    for a in labels:
        for b in labels:
            ab = g.mul(a, b)
            for c in labels:
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)):
                    raise ValueError("group table is not associative")


def cyclic_group(s: int) -> GroupTable:
    """Z_s with label l standing for residue l-1."""
    table = tuple(tuple((a + b) % s + 1 for b in range(s)) for a in range(s))
    return GroupTable(s, 1, table)


def pair_cyclic_group(d: int) -> GroupTable:
    """Z_d x Z_d with label l standing for divmod(l-1, d)."""
    s = d * d

    def mul(a, b):
        ah, al = divmod(a - 1, d)
        bh, bl = divmod(b - 1, d)
        return ((ah + bh) % d) * d + (al + bl) % d + 1

    table = tuple(tuple(mul(a, b) for b in range(1, s + 1)) for a in range(1, s + 1))
    return GroupTable(s, 1, table)


def default_group_for(s: int) -> GroupTable:
    r = int(round(s ** 0.5))
    if r * r == s:
        return pair_cyclic_group(r)
    return cyclic_group(s)


# ---------------------------------------------------------------------------
# constructions

def rao_hamming_oa(s: int, i: int) -> OrthogonalArray:
    """Linear orthogonal array over GF(s): n = (s^i-1)/(s-1), N = s^i.

    Rows are the projectively normalized nonzero vectors of GF(s)^i
    (first nonzero coordinate = 1), columns all vectors; the entry is
    the 1-based enumeration index of the inner product.  Column 0 is
    the zero vector, so the first column is all ones (identity label).
    """
    if gf.is_prime_power(s) is None:
        raise ValueError(f"alphabet size {s} is not a prime power")
    if i < 2:
        raise ValueError("need i >= 2")
    if s ** i > OA_SIZE_CAP:
        raise ValueError(f"s^i = {s ** i} exceeds the {OA_SIZE_CAP} cap")
    spec = gf.field_for_order(s)
    es = gf.elements(spec)
    N = s ** i

    def vec(j):
        out = []
        for _ in range(i):
            out.append(es[j % s])
            j //= s
        return out

    rows = []
    for j in range(N):
        v = vec(j)
        lead = next((c for c in v if c), None)
        if lead is not None and lead == es[1]:
            rows.append(v)
    n = (s ** i - 1) // (s - 1)
    assert len(rows) == n

    entries = np.empty((n, N), dtype=int)
    for k, v in enumerate(rows):
        for j in range(N):
            x = vec(j)
            acc = es[0]
            for vc, xc in zip(v, x):
                acc = acc + vc * xc
            entries[k, j] = acc.value + 1
    return OrthogonalArray(n, N, s, s ** (i - 2), entries)


def product_oa(n: int, s: int) -> OrthogonalArray:
    """Exponential fallback: columns enumerate all of [1,s]^n, N = s^n."""
    if n < 1 or s < 2:
        raise ValueError("need n >= 1 and s >= 2")
    if s ** n > PRODUCT_SIZE_CAP:
        raise ValueError(f"s^n = {s ** n} exceeds the {PRODUCT_SIZE_CAP} cap")
    N = s ** n
    entries = np.empty((n, N), dtype=int)
    j = np.arange(N)
    for k in range(n):
        entries[k] = (j // s ** (n - 1 - k)) % s + 1
    return OrthogonalArray(n, N, s, N // s ** 2, entries)


def mixed_product_array(sizes) -> np.ndarray:
    """All tuples over per-row alphabets [1, sizes[k]]; shape (n, prod sizes)."""
    sizes = list(sizes)
    N = int(np.prod(sizes))
    if N > PRODUCT_SIZE_CAP:
        raise ValueError(f"product {N} exceeds the {PRODUCT_SIZE_CAP} cap")
    n = len(sizes)
    entries = np.empty((n, N), dtype=int)
    j = np.arange(N)
    stride = N
    for k in range(n):
        stride //= sizes[k]
        entries[k] = (j // stride) % sizes[k] + 1
    return entries


def smallest_oa_for(n: int, s: int) -> OrthogonalArray:
    """Smallest array this package can build with at least n rows.

    For prime-power s: the linear construction with the least i whose
    row count covers n, excess rows dropped (row deletion preserves the
    defining property).  Otherwise the exponential product array.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if gf.is_prime_power(s) is not None:
        i = 2
        while (s ** i - 1) // (s - 1) < n:
            i += 1
        oa = rao_hamming_oa(s, i)
        return OrthogonalArray(n, oa.N, oa.s, oa.lam, oa.entries[:n])
    return product_oa(n, s)


def normalize_oa(oa: OrthogonalArray, group: GroupTable | None = None) -> OrthogonalArray:
    """Left-multiply each row by the inverse of its first entry.

    The first column becomes all-identity while the pair-count property
    is untouched (each row is relabeled by a bijection).
    """
    if group is None:
        group = default_group_for(oa.s)
    _check_group(group)
    if group.s != oa.s:
        raise ValueError("group order must equal the alphabet size")
    entries = np.empty_like(oa.entries)
    for k in range(oa.n):
        g = group.inverse(int(oa.entries[k, 0]))
        entries[k] = [group.mul(g, int(e)) for e in oa.entries[k]]
    return OrthogonalArray(oa.n, oa.N, oa.s, oa.lam, entries)


def cyclic_difference_scheme(u: int, n: int) -> DifferenceScheme:
    """Rows k = 0..n-1 of the Z_u multiplication table: entry k*j mod u.

    Rows k and l are balanced iff k-l is invertible mod u, so n may be
    at most u for prime u and at most the smallest prime factor of u
    otherwise.
    """
    if u < 2:
        raise ValueError("need u >= 2")
    limit = u if gf.is_prime(u) else min(p for p in range(2, u + 1) if u % p == 0)
    if not 1 <= n <= limit:
        raise ValueError(f"row count {n} unsupported for u = {u} (max {limit})")
    j = np.arange(u)
    entries = np.array([(k * j) % u for k in range(n)])
    return DifferenceScheme(n, u, u, entries)


def difference_scheme_for(n: int) -> DifferenceScheme:
    """Some D(n, N) over a cyclic group: the smallest prime u >= n works."""
    u = gf.next_prime(max(2, n))
    return cyclic_difference_scheme(u, n)


# ---------------------------------------------------------------------------
# verification

def verify_oa(oa: OrthogonalArray) -> dict:
    """Exhaustive pair-count check; ok iff every count equals lam."""
    violations = []
    s = oa.s
    for k in range(oa.n):
        for l in range(k + 1, oa.n):
            codes = (oa.entries[k] - 1) * s + (oa.entries[l] - 1)
            counts = np.bincount(codes, minlength=s * s)
            for c in np.flatnonzero(counts != oa.lam):
                violations.append({
                    "rows": (k, l),
                    "pair": (int(c) // s + 1, int(c) % s + 1),
                    "count": int(counts[c]),
                    "expected": oa.lam,
                })
    return {"ok": not violations, "violations": violations}


def verify_difference_scheme(ds: DifferenceScheme) -> dict:
    """Row-pair difference vectors must hit every residue N/u times."""
    violations = []
    want = ds.N // ds.u
    for k in range(ds.n):
        for l in range(k + 1, ds.n):
            diff = (ds.entries[k] - ds.entries[l]) % ds.u
            counts = np.bincount(diff, minlength=ds.u)
            for r in np.flatnonzero(counts != want):
                violations.append({
                    "rows": (k, l),
                    "element": int(r),
                    "count": int(counts[r]),
                    "expected": want,
                })
    return {"ok": not violations, "violations": violations}


# ---------------------------------------------------------------------------
# serialization

def design_to_json(obj) -> dict:
    if isinstance(obj, OrthogonalArray):
        return {"kind": "oa", "n": obj.n, "N": obj.N, "s": obj.s,
                "lambda": obj.lam, "entries": obj.entries.tolist()}
    if isinstance(obj, DifferenceScheme):
        return {"kind": "ds", "n": obj.n, "N": obj.N, "u": obj.u,
                "entries": obj.entries.tolist()}
    raise TypeError(f"not a design: {type(obj).__name__}")


def design_from_json(doc: dict):
    kind = doc.get("kind")
    if kind == "oa":
        return OrthogonalArray(doc["n"], doc["N"], doc["s"], doc["lambda"],
                               np.array(doc["entries"]))
    if kind == "ds":
        return DifferenceScheme(doc["n"], doc["N"], doc["u"], np.array(doc["entries"]))
    raise ValueError(f"unknown design kind: {kind!r}")


def entries_to_csv(obj) -> str:
    return "\n".join(",".join(str(int(e)) for e in row) for row in obj.entries) + "\n"
