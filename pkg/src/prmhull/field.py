"""Arithmetic in GF(p^k) with canonical integer element indices.

Every element is identified by an integer index in [0, q): the base-p digits
of the index, least significant first, are the coefficients of the element
written as a polynomial in the class of x modulo the field's modulus
polynomial.  The index is the wire/file representation used everywhere in
this package, so all orderings ("ascending elements", "first s nonzero
elements", ...) refer to it.

Polynomials over F_p appear here as little-endian coefficient tuples
(c_0, c_1, ..., c_d); a degree-k modulus is stored with its monic leading 1,
e.g. x^3 + x + 1 over F_2 is (1, 1, 0, 1).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeMismatchError,
    DivisionByZeroError,
    NotPrimeError,
    OutOfRangeError,
    ReducibleModulusError,
)

# Full q x q lookup tables (and the digit-plane matrix kernels that rely on
# them) are built only up to this order; scalar arithmetic keeps working above
# it via direct polynomial computation.
TABLE_MAX_ORDER = 4096


def is_prime(n):
    """Deterministic primality test by trial division (adequate for field sizes here)."""
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


def prime_power_decomposition(q):
    """Write q = p^k with p prime, or raise NotPrimeError."""
    if q < 2:
        raise NotPrimeError(f"{q} is not a prime power")
    p = q
    for f in range(2, q + 1):
        if f * f > q:
            break
        if q % f == 0:
            p = f
            break
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1 or not is_prime(p):
        raise NotPrimeError(f"{q} is not a prime power")
    return p, k


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (little-endian coefficient tuples)
# ---------------------------------------------------------------------------


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm and a:
        a = _trim(a)
        if len(a) - 1 < dm:
            break
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = _trim(a)
    return _trim(a)


def _poly_mulmod(a, b, mod, p):
    return _poly_mod(_poly_mul(a, b, p), mod, p)


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_mod(base, mod, p)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
        b = _trim(b)
    return a


def _prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(coeffs, p):
    """Rabin irreducibility test for a polynomial over F_p (degree >= 1)."""
    coeffs = _trim(coeffs)
    k = len(coeffs) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) must reduce to x modulo the candidate ...
    h = _poly_powmod(x, p**k, coeffs, p)
    if _trim([(hi - xi) % p for hi, xi in zip(h + [0] * 2, x + [0] * len(h))]) != []:
        return False
    # ... and x^(p^(k/r)) - x must be coprime to it for every prime r | k.
    for r in _prime_factors(k):
        h = _poly_powmod(x, p ** (k // r), coeffs, p)
        diff = [(c - (1 if i == 1 else 0)) % p for i, c in enumerate(h + [0] * (2 - len(h)))]
        g = _poly_gcd(coeffs, diff, p)
        if len(g) - 1 != 0:
            return False
    return True


def _default_modulus(p, k):
    """Smallest monic irreducible of degree k over F_p, by canonical index of (c_0..c_{k-1})."""
    if k == 1:
        return (0, 1)
    for idx in range(p**k):
        coeffs = [(idx // p**j) % p for j in range(k)]
        if coeffs[0] == 0:
            continue  # divisible by x
        cand = coeffs + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found (unreachable)")


# ---------------------------------------------------------------------------
# field elements and field specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """One element of a finite field, identified by its canonical index."""

    index: int
    field: "FieldSpec"

    def __int__(self):
        return self.index

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.sub(self, other)

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __truediv__(self, other):
        return self.field.mul(self, self.field.inv(other))

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, e):
        return self.field.pow(self, e)

    def __repr__(self):
        return f"FieldElement({self.index} in GF({self.field.q}))"


def _as_index(a):
    return a.index if isinstance(a, FieldElement) else int(a)


class FieldSpec:
    """Immutable description of GF(p^k) together with its arithmetic tables.

    Scalar operations accept either integer indices or FieldElement values and
    return FieldElement.  For q <= TABLE_MAX_ORDER the object also carries the
    dense lookup tables used by the vectorized matrix kernels.
    """

    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if k < 1:
            raise OutOfRangeError(f"extension degree must be >= 1, got {k}")
        self.p = int(p)
        self.k = int(k)
        self.q = self.p**self.k
        if modulus is None:
            modulus = _default_modulus(self.p, self.k)
        else:
            modulus = tuple(int(c) % self.p for c in modulus)
            if len(modulus) != self.k + 1 or modulus[-1] != 1:
                raise DegreeMismatchError(
                    f"modulus must be monic of degree {self.k}, got {modulus}"
                )
            if not is_irreducible(list(modulus), self.p):
                raise ReducibleModulusError(f"modulus {modulus} is reducible over F_{self.p}")
        self.modulus = modulus
        self._tables_built = False
        if self.q <= TABLE_MAX_ORDER:
            self._build_tables()

    # -- representation helpers ------------------------------------------------

    @property
    def spec_tuple(self):
        """Serialized form: (p, k, modulus coefficient list)."""
        return (self.p, self.k, list(self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def index_to_coeffs(self, i):
        """Base-p digits of an element index (length k, constant term first)."""
        return tuple((int(i) // self.p**j) % self.p for j in range(self.k))

    def coeffs_to_index(self, coeffs):
        return sum(int(c) % self.p * self.p**j for j, c in enumerate(coeffs))

    # -- table construction ----------------------------------------------------

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        idx = np.arange(q, dtype=np.int64)
        digits = np.stack([(idx // p**j) % p for j in range(k)], axis=1)  # (q, k)
        self.DIGITS = digits.astype(np.int16)
        self._pvec = (p ** np.arange(k)).astype(np.int64)

        # multiply-by-x map on coefficient vectors: column i holds digits of x^(i+1)
        T = np.zeros((k, k), dtype=np.int64)
        for i in range(k - 1):
            T[i + 1, i] = 1
        xk = [(-c) % p for c in self.modulus[:k]]  # digits of x^k
        T[:, k - 1] = xk
        self._xmul = T

        # digit planes of a * x^j for every element a and 0 <= j < k
        planes = [digits]
        for _ in range(1, k):
            planes.append((planes[-1] @ T.T) % p)
        # MUL[a, b] = index of a*b, accumulated one output digit at a time
        mul = np.zeros((q, q), dtype=np.int64)
        bt = digits.astype(np.float64)
        for d in range(k):
            a3 = np.stack([pl[:, d] for pl in planes], axis=1).astype(np.float64)  # (q, k)
            sd = (a3 @ bt.T).astype(np.int64) % p
            mul += sd * int(self._pvec[d])
        self.MUL = mul.astype(np.int16)

        add = np.zeros((q, q), dtype=np.int64)
        for d in range(k):
            add += ((digits[:, None, d] + digits[None, :, d]) % p) * int(self._pvec[d])
        self.ADD = add.astype(np.int16)

        self.NEG = (((-digits) % p) @ self._pvec).astype(np.int16)
        inv = np.argmax(self.MUL == 1, axis=1)
        inv[0] = 0  # sentinel; scalar inv() raises before the lookup
        self.INV = inv.astype(np.int16)

        # digits of x^t for t in [0, 2k-2]: recombination vectors for digit-plane products
        powvec = np.zeros((2 * k - 1, k), dtype=np.int16)
        for t in range(2 * k - 1):
            c = _poly_powmod([0, 1], t, list(self.modulus), p)
            for j, cj in enumerate(c):
                powvec[t, j] = cj
        self.POWVEC = powvec

        # scalar-multiplication matrices: digits(s*x) = SMM[s] @ digits(x) mod p
        smm = np.zeros((q, k, k), dtype=np.int16)
        basis = (p ** np.arange(k)).astype(np.int64)  # indices of 1, x, ..., x^(k-1)
        for j in range(k):
            smm[:, :, j] = self.DIGITS[self.MUL[:, basis[j]]]
        self.SMM = smm
        self._tables_built = True

    @property
    def has_tables(self):
        return self._tables_built

    # -- scalar arithmetic -------------------------------------------------------

    def element(self, i):
        i = _as_index(i)
        if not 0 <= i < self.q:
            raise OutOfRangeError(f"element index {i} outside [0, {self.q})")
        return FieldElement(i, self)

    @property
    def zero(self):
        return FieldElement(0, self)

    @property
    def one(self):
        return FieldElement(1, self)

    def elements(self):
        return [FieldElement(i, self) for i in range(self.q)]

    def add(self, a, b):
        a, b = _as_index(a), _as_index(b)
        if self._tables_built:
            return FieldElement(int(self.ADD[a, b]), self)
        ca, cb = self.index_to_coeffs(a), self.index_to_coeffs(b)
        return FieldElement(self.coeffs_to_index([x + y for x, y in zip(ca, cb)]), self)

    def neg(self, a):
        a = _as_index(a)
        if self._tables_built:
            return FieldElement(int(self.NEG[a]), self)
        return FieldElement(self.coeffs_to_index([-c for c in self.index_to_coeffs(a)]), self)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = _as_index(a), _as_index(b)
        if self._tables_built:
            return FieldElement(int(self.MUL[a, b]), self)
        ca, cb = list(self.index_to_coeffs(a)), list(self.index_to_coeffs(b))
        prod = _poly_mulmod(_trim(ca), _trim(cb), list(self.modulus), self.p)
        return FieldElement(self.coeffs_to_index(prod + [0] * (self.k - len(prod))), self)

    def inv(self, a):
        a = _as_index(a)
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        if self._tables_built:
            return FieldElement(int(self.INV[a]), self)
        # a^(q-2) = a^(-1) in GF(q)
        return self.pow(a, self.q - 2)

    def pow(self, a, e):
        a = _as_index(a)
        e = int(e)
        if e < 0:
            a = self.inv(a).index
            e = -e
        if e == 0:
            return FieldElement(1, self)  # 0^0 = 1 convention
        result = 1
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base).index
            base = self.mul(base, base).index
            e >>= 1
        return FieldElement(result, self)

    def power_sum(self, r):
        """Sum of a^r over every a in the field, by literal summation (0^0 = 1)."""
        r = int(r)
        if r < 0:
            raise OutOfRangeError("power_sum exponent must be nonnegative")
        total = 0
        for a in range(self.q):
            total = self.add(total, self.pow(a, r)).index
        return FieldElement(total, self)

    # -- vectorized helpers used by other modules --------------------------------

    def pow_table(self, max_exponent):
        """(max_exponent+1, q) table of a^e with the 0^0 = 1 convention."""
        self._require_tables()
        out = np.zeros((max_exponent + 1, self.q), dtype=np.int16)
        out[0, :] = 1
        row = np.arange(self.q, dtype=np.int16)
        for e in range(1, max_exponent + 1):
            if e == 1:
                out[e] = row
            else:
                out[e] = self.MUL[out[e - 1], row]
        return out

    def _require_tables(self):
        if not self._tables_built:
            raise OutOfRangeError(
                f"field order {self.q} exceeds the table/kernel limit {TABLE_MAX_ORDER}"
            )


@functools.lru_cache(maxsize=None)
def _cached_spec(p, k, modulus):
    return FieldSpec(p, k, modulus)


def field_make(p, k=1, modulus=None):
    """Construct (with caching) GF(p^k); modulus defaults to the smallest irreducible."""
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_spec(int(p), int(k), modulus)


def field_from_order(q):
    """GF(q) for a prime power q, with the default modulus."""
    p, k = prime_power_decomposition(q)
    return field_make(p, k)
