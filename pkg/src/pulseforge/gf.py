"""Finite field arithmetic GF(p^k) for small prime powers.

Fields are created with :func:`field_new`, which picks the modulus
deterministically (lexicographically smallest monic irreducible
polynomial), so every run and every implementation agrees on the
element labeling.  Elements are immutable coefficient tuples; the
integer encoding ``sum(c_i * p**i)`` doubles as the enumeration index
that design constructions use as a symbol label.

Sizes are capped at 2^16; everything this package builds needs q <= 81.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    c = max(2, n)
    while not is_prime(c):
        c += 1
    return c


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k, or None when n is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            m, k = n, 0
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return (n, 1)


@dataclass(frozen=True)
class FieldSpec:
    """Description of GF(p^k); modulus coefficients are stored leading term first."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.k

    def __repr__(self):
        return f"GF({self.order})"


@dataclass(frozen=True)
class FieldElement:
    """Element of a FieldSpec; coeffs[i] multiplies x**i."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def value(self) -> int:
        """Integer encoding; equals the position under :func:`elements`."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, other)

    def __repr__(self):
        return f"<{self.field!r}:{self.value}>"


def _digits(v: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(v % p)
        v //= p
    return out


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a, m, p):
    # remainder modulo a monic polynomial, coefficients ascending
    dm = len(m) - 1
    a = [c % p for c in a] + [0] * max(0, dm - len(a))
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def _is_irreducible(f, p):
    # trial division by every monic polynomial of degree <= deg(f)/2
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    for d in range(1, k // 2 + 1):
        for v in range(p ** d):
            g = _digits(v, p, d) + [1]
            if not any(_poly_rem(f, g, p)):
                return False
    return True


def field_new(p: int, k: int) -> FieldSpec:
    """Build GF(p^k) with the lexicographically smallest irreducible modulus.

    Candidates are monic degree-k polynomials ordered by their coefficient
    tuple written leading term first, so e.g. GF(4) always gets x^2+x+1.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    q = p ** k
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds the {MAX_ORDER} cap")
    for low in range(q):
        f = _digits(low, p, k) + [1]
        if _is_irreducible(f, p):
            return FieldSpec(p, k, tuple(reversed(f)))
    raise RuntimeError("irreducible polynomial search failed")


def field_for_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    pk = is_prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return field_new(*pk)


def element(spec: FieldSpec, v: int) -> FieldElement:
    """The element whose integer encoding is v, 0 <= v < q."""
    if not 0 <= v < spec.order:
        raise ValueError(f"encoding {v} out of range for {spec!r}")
    return FieldElement(spec, tuple(_digits(v, spec.p, spec.k)))


def zero(spec: FieldSpec) -> FieldElement:
    return element(spec, 0)


def one(spec: FieldSpec) -> FieldElement:
    return element(spec, 1)


def elements(spec: FieldSpec) -> list[FieldElement]:
    """All q elements in a fixed order: zero first, then one, then the rest."""
    return [element(spec, v) for v in range(spec.order)]


def _check_same_field(a: FieldElement, b: FieldElement):
    if a.field != b.field:
        raise ValueError("elements belong to different fields")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    p = a.field.p
    return FieldElement(a.field, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: FieldElement) -> FieldElement:
    p = a.field.p
    return FieldElement(a.field, tuple((-x) % p for x in a.coeffs))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    spec = a.field
    m = list(reversed(spec.modulus))
    prod = _poly_mul(list(a.coeffs), list(b.coeffs), spec.p)
    red = _poly_rem(prod, m, spec.p)
    red += [0] * (spec.k - len(red))
    return FieldElement(spec, tuple(red))


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse via a^(q-2); a must be nonzero."""
    if not a:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    spec = a.field
    e = spec.order - 2
    acc = one(spec)
    base = a
    while e:
        if e & 1:
            acc = mul(acc, base)
        base = mul(base, base)
        e >>= 1
    return acc
