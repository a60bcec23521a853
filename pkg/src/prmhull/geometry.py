"""Projective points in standard form, degree-v monomials, and evaluations.

Points of P^m(F_q) are represented by their standard coordinate vector: the
left-most nonzero coordinate is 1 and everything left of it is 0.  They are
enumerated in blocks i = 0..m; within block i coordinates 0..i-1 are zero,
coordinate i is 1, and the trailing coordinates run over all of F_q in
ascending canonical-index lexicographic order.

Monomials of degree v in m+1 variables are enumerated in descending
lexicographic order on exponent vectors, e.g. (2,0), (1,1), (0,2).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, OutOfRangeError
from .field import FieldSpec


def point_count(q, m):
    """Number of points of P^m(F_q): (q^(m+1)-1)/(q-1)."""
    return (q ** (m + 1) - 1) // (q - 1)


@dataclass(frozen=True)
class ProjectivePoint:
    """A projective point held as its standard-form canonical-index vector."""

    coords: tuple

    def __post_init__(self):
        idx = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", idx)
        nz = [i for i, c in enumerate(idx) if c != 0]
        if not nz or idx[nz[0]] != 1:
            raise OutOfRangeError(f"coordinates {idx} are not in standard form")

    @property
    def indices(self):
        return self.coords


@dataclass(frozen=True)
class Monomial:
    """A monomial held as its exponent vector."""

    exponents: tuple

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise OutOfRangeError(f"exponents {self.exponents} must be nonnegative")

    @property
    def degree(self):
        return sum(self.exponents)

    def __str__(self):
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"


def point_matrix(field, m):
    """(point_count, m+1) int16 array of canonical coordinate indices, block order."""
    q = field.q
    blocks = []
    for i in range(m + 1):
        t = m - i  # number of free trailing coordinates
        rows = np.zeros((q**t, m + 1), dtype=np.int16)
        rows[:, i] = 1
        if t:
            grids = np.meshgrid(*([np.arange(q, dtype=np.int16)] * t), indexing="ij")
            rows[:, i + 1 :] = np.stack(grids, axis=-1).reshape(-1, t)
        blocks.append(rows)
    return np.vstack(blocks)


def enumerate_standard_points(q_or_field, m):
    """Ordered list of the standard-form points of P^m(F_q)."""
    field = q_or_field if isinstance(q_or_field, FieldSpec) else _field_of(q_or_field)
    mat = point_matrix(field, m)
    return [ProjectivePoint(tuple(int(c) for c in row)) for row in mat]


def _field_of(q):
    from .field import field_from_order

    return field_from_order(q)


@functools.lru_cache(maxsize=None)
def monomial_matrix(num_vars, degree):
    """(C(num_vars-1+degree, degree), num_vars) int16 exponent rows, descending lex."""
    if num_vars < 1 or degree < 0:
        raise OutOfRangeError("need num_vars >= 1 and degree >= 0")
    rows = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, num_vars)
    out = np.array(rows, dtype=np.int16)
    out.flags.writeable = False
    return out


def enumerate_monomials(num_vars, degree):
    """Ordered list of Monomial of the given degree in num_vars variables."""
    return [Monomial(tuple(int(e) for e in row)) for row in monomial_matrix(num_vars, degree)]


def evaluate(field, mono, pt):
    """Evaluate one monomial at one point (0^0 = 1); returns a FieldElement."""
    exps = mono.exponents if isinstance(mono, Monomial) else tuple(mono)
    coords = pt.indices if isinstance(pt, ProjectivePoint) else tuple(int(c) for c in pt)
    if len(exps) != len(coords):
        raise DimensionMismatchError(
            f"monomial has {len(exps)} variables but point has {len(coords)} coordinates"
        )
    acc = field.one
    for c, e in zip(coords, exps):
        acc = field.mul(acc, field.pow(c, e))
    return acc


def evaluation_matrix(field, exponents, points):
    """Evaluate each exponent row at each point column: (n_monomials, n_points) int16.

    `exponents` is an integer array (rows of exponent vectors) and `points` an
    integer array of coordinate indices (one point per row); both must have
    m+1 columns.  Uses the 0^0 = 1 convention.
    """
    field._require_tables()
    exponents = np.asarray(exponents, dtype=np.int64)
    points = np.asarray(points, dtype=np.int64)
    if exponents.ndim != 2 or points.ndim != 2 or exponents.shape[1] != points.shape[1]:
        raise DimensionMismatchError(
            f"exponent shape {exponents.shape} incompatible with point shape {points.shape}"
        )
    nvars = exponents.shape[1]
    if exponents.size == 0 or points.size == 0:
        return np.zeros((exponents.shape[0], points.shape[0]), dtype=np.int16)
    max_e = int(exponents.max())
    pw = field.pow_table(max_e)  # (max_e+1, q)
    out = None
    for t in range(nvars):
        factor = pw[exponents[:, t]][:, points[:, t]]  # (rows, npoints)
        out = factor if out is None else field.MUL[out, factor]
    return out.astype(np.int16)


def reduce_exponents(exponents, q):
    """Exponent reduction preserving all evaluations: a -> ((a-1) mod (q-1)) + 1, 0 -> 0."""
    arr = np.asarray(exponents, dtype=np.int64)
    reduced = np.where(arr > 0, (arr - 1) % (q - 1) + 1, 0)
    return reduced.astype(np.int16)
