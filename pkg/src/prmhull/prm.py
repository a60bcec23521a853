"""Projective Reed-Muller codes over GF(q): dimension and distance formulas,
dual structure, hull classification, closed-form hull dimensions with their
excluded monomial sets, and minimum-weight witness codewords.

Throughout, v is the degree order of the code, M = m(q-1) the largest
nontrivial order, and ell = M - v the dual order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import geometry
from .errors import (
    BadLambdasError,
    InternalDisagreementError,
    NotCoveredError,
    OutOfRangeError,
)
from .field import _as_index, field_make, field_from_order, prime_power_decomposition
from .gfmatrix import GfMatrix


def _field_for(q, modulus):
    """GF(q), optionally pinned to an explicit irreducible modulus."""
    if modulus is None:
        return field_from_order(q)
    p, k = prime_power_decomposition(q)
    return field_make(p, k, modulus)


def _binom(a, b):
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def full_order(q, m):
    """M = m(q-1), the largest order with a nontrivial code."""
    return m * (q - 1)


def _check_range(q, m, v):
    M = full_order(q, m)
    if not 1 <= v <= M:
        raise OutOfRangeError(f"order v={v} outside 1..{M} for q={q}, m={m}")


# ---------------------------------------------------------------------------
# basic parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistanceDecomposition:
    """v - 1 = r(q-1) + s with 0 <= s < q-1."""

    r: int
    s: int


def distance_decomposition(q, v):
    if v < 1:
        raise OutOfRangeError(f"order v={v} must be at least 1")
    return DistanceDecomposition(r=(v - 1) // (q - 1), s=(v - 1) % (q - 1))


def prm_dimension(q, m, v):
    """Dimension: sum over degrees t = v mod (q-1), 0 < t <= v, of the number
    of exponent vectors in [0, q-1]^(m+1) of total degree t (inclusion-exclusion)."""
    _check_range(q, m, v)
    total = 0
    for t in range(1, v + 1):
        if (t - v) % (q - 1):
            continue
        total += sum(
            (-1) ** j * _binom(m + 1, j) * _binom(t - j * q + m, t - j * q)
            for j in range(m + 2)
        )
    return total


def prm_min_distance(q, m, v):
    """Minimum distance (q-s) * q^(m-r-1)."""
    _check_range(q, m, v)
    dd = distance_decomposition(q, v)
    return (q - dd.s) * q ** (m - dd.r - 1)


def dual_order(q, m, v):
    """ell = m(q-1) - v."""
    _check_range(q, m, v)
    return full_order(q, m) - v


@dataclass(frozen=True)
class DualStructure:
    """The dual code: the order-ell code itself, or its span with the all-ones
    vector when v = 0 mod (q-1)."""

    with_ones: bool
    ell: int

    def __str__(self):
        name = "SpanWithOnes" if self.with_ones else "PlainDual"
        return f"{name}({self.ell})"

    __repr__ = __str__


def dual_structure(q, m, v):
    _check_range(q, m, v)
    return DualStructure(with_ones=v % (q - 1) == 0, ell=dual_order(q, m, v))


# ---------------------------------------------------------------------------
# classification and hull dimension
# ---------------------------------------------------------------------------

FLAG_ORDER = (
    "SelfDual",
    "SelfOrthogonal",
    "LCD",
    "DualContaining",
    "SpecialEvenMultiple",
    "Generic",
)


def classify(q, m, v):
    """Set of structural flags; {"Generic"} when none apply.

    All half-integer comparisons use doubled integers (2v vs m(q-1))."""
    _check_range(q, m, v)
    M = full_order(q, m)
    flags = set()
    if q % 2 == 1 and m % 2 == 1 and 2 * v == M:
        flags.add("SelfDual")
    if 2 * v <= M and (2 * v) % (q - 1) == 0:
        flags.add("SelfOrthogonal")
    if v == M:
        flags.add("LCD")
    if 2 * v >= M and v < M and (2 * v) % (q - 1) == 0 and v % (q - 1) != 0:
        flags.add("DualContaining")
    if v % (q - 1) == 0 and 2 * v >= M and v < M:
        flags.add("SpecialEvenMultiple")
    return frozenset(flags or {"Generic"})


class HullFormula(NamedTuple):
    value: int
    covering: str


def _wrap_rank(q, v):
    """Rank contribution in the range q-1 < v < 3(q-1)/2."""
    return (3 * q - v - 1) * (v - q + 2) - q + 1


def _high_wrap_rank(q, v):
    """Rank contribution in the range 3(q-1)/2 < v < 2(q-1)."""
    S = sum(
        sum(
            (-1) ** j * _binom(3, j) * _binom(i - q * j + 2, i - q * j)
            for j in range(4)
        )
        for i in range(3 * (q - 1) - v, v + 1)
    )
    return S + (2 * v - 3 * (q - 1) + 1)


def _range_candidates(q, m, w, suffix):
    """Closed-form hull dimensions whose range covers order w (w is v or ell)."""
    out = []
    if 2 * w < q - 1:
        out.append((f"low-range{suffix}", _binom(m + w, w) - 1))
    if (q - 1) < 2 * w < 2 * (q - 1):
        out.append((f"mid-low-range{suffix}", prm_dimension(q, m, w) - (2 * w + 1 - (q - 1))))
    if m >= 3 and (q - 1) < w and 2 * w < 3 * (q - 1):
        out.append((f"wrap-range{suffix}", prm_dimension(q, m, w) - _wrap_rank(q, w)))
    if m >= 4 and 3 * (q - 1) < 2 * w < 4 * (q - 1):
        out.append((f"high-wrap-range{suffix}", prm_dimension(q, m, w) - _high_wrap_rank(q, w)))
    return out


def hull_dim_formula(q, m, v):
    """Closed-form hull dimension with its covering-range tag, or None.

    Every applicable classification value and range formula is computed; if
    they ever disagree that is an internal hard error, never a silent pick."""
    _check_range(q, m, v)
    M = full_order(q, m)
    ell = M - v
    flags = classify(q, m, v)
    cands = []
    if "SelfDual" in flags:
        cands.append(("self-dual", prm_dimension(q, m, v)))
    if "LCD" in flags:
        cands.append(("lcd", 0))
    if "SelfOrthogonal" in flags:
        cands.append(("self-orthogonal", prm_dimension(q, m, v)))
    if "DualContaining" in flags:
        cands.append(("dual-containing", prm_dimension(q, m, ell)))
    if "SpecialEvenMultiple" in flags:
        cands.append(("even-multiple", prm_dimension(q, m, ell)))
    cands.extend(_range_candidates(q, m, v, ""))
    cands.extend(_range_candidates(q, m, ell, "-dual"))
    if not cands:
        return None
    values = {val for _, val in cands}
    if len(values) != 1:
        raise InternalDisagreementError(
            f"hull dimension candidates disagree at (q={q}, m={m}, v={v}): {cands}"
        )
    tag, value = cands[0]
    return HullFormula(value=value, covering=tag)


def excluded_monomials(q, m, v):
    """The degree-v monomials excluded by the covering range description.

    Supported ranges (in v): 2v < q-1; q-1 < 2v < 2(q-1); the wrap range
    q-1 < v < 3(q-1)/2 for m >= 3; and 3(q-1)/2 < v < 2(q-1) for m >= 4.
    The excluded count always equals k - hull_dim."""
    _check_range(q, m, v)
    out = set()
    if 2 * v < q - 1:
        out.add((0,) * m + (v,))
    elif (q - 1) < 2 * v < 2 * (q - 1):
        for a in range(q - 1 - v, v + 1):
            e = [0] * (m + 1)
            e[m - 1] = v - a
            e[m] = a
            out.add(tuple(e))
    elif m >= 3 and (q - 1) < v and 2 * v < 3 * (q - 1):
        out.add((0,) * m + (v,))
        # region 1: small x_{m-2} exponent, large tail exponent
        for a2 in range(0, v - (q - 1) + 1):
            for am in range(v - (q - 1) - a2, q):
                e = [0] * (m + 1)
                e[m - 2] = a2
                e[m - 1] = v - am - a2
                e[m] = am
                out.add(tuple(e))
        # region 2: larger x_{m-2} exponent, unconstrained tail start
        for a2 in range(v - (q - 1) + 1, 2 * v - 2 * (q - 1) + 1):
            for am in range(0, v - a2 + 1):
                e = [0] * (m + 1)
                e[m - 2] = a2
                e[m - 1] = v - am - a2
                e[m] = am
                out.add(tuple(e))
    elif m >= 4 and 3 * (q - 1) < 2 * v < 4 * (q - 1):
        # family A: two-variable monomials with a large tail exponent
        for am in range(3 * (q - 1) - v, v + 1):
            e = [0] * (m + 1)
            e[m - 1] = v - am
            e[m] = am
            out.add(tuple(e))
        # family B: four-variable monomials, last three exponents below q
        for a2 in range(q):
            for a1 in range(q):
                for a0 in range(q):
                    t = a2 + a1 + a0
                    if 3 * (q - 1) - v <= t <= v:
                        e = [0] * (m + 1)
                        e[m - 3] = v - t
                        e[m - 2] = a2
                        e[m - 1] = a1
                        e[m] = a0
                        out.add(tuple(e))
    else:
        raise NotCoveredError(
            f"no excluded-monomial description covers (q={q}, m={m}, v={v})"
        )
    return {geometry.Monomial(e) for e in out}


def hull_min_distance(q, m, v):
    """Minimum distance of the hull: max of the two orders' distances.

    None when v = m(q-1) (the hull is the zero code)."""
    _check_range(q, m, v)
    M = full_order(q, m)
    if v == M:
        return None
    ell = M - v
    return max(prm_min_distance(q, m, v), prm_min_distance(q, m, ell))


def hull_lower_bound(q, m, v):
    """Pre-dual-order bound: the distance at order floor(M/2), valid for 2v <= M."""
    _check_range(q, m, v)
    M = full_order(q, m)
    if 2 * v > M:
        raise OutOfRangeError(f"lower bound requires 2v <= {M}, got v={v}")
    return prm_min_distance(q, m, M // 2)


# ---------------------------------------------------------------------------
# minimum-weight witness codeword
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinWeightWitness:
    """A degree-v product form achieving the minimum distance.

    F(X) = X_r * prod_{i<r} (X_i^(q-1) - X_r^(q-1)) * prod_j (lambda_j X_r - X_(r+1)),
    with (r, s) the distance decomposition of v and lambda_j distinct nonzero."""

    r: int
    s: int
    lambdas: tuple
    polynomial: dict
    factored: str
    codeword: GfMatrix
    weight: int


def _poly_mul_dict(field, a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = int(field.MUL[ca, cb])
            prev = out.get(e, 0)
            tot = int(field.ADD[prev, c])
            if tot:
                out[e] = tot
            else:
                out.pop(e, None)
    return out


def min_weight_witness(q, m, v, lambdas=None, modulus=None):
    """Build the witness form, expand it, and evaluate it at all points."""
    _check_range(q, m, v)
    field = _field_for(q, modulus)
    field._require_tables()
    dd = distance_decomposition(q, v)
    r, s = dd.r, dd.s
    if lambdas is None:
        lam = list(range(1, s + 1))
    else:
        lam = [_as_index(x) for x in lambdas]
    if len(lam) != s:
        raise BadLambdasError(f"need exactly {s} lambdas for v={v}, got {len(lam)}")
    if any(not 0 < x < q for x in lam):
        raise BadLambdasError("lambdas must be nonzero field elements")
    if len(set(lam)) != s:
        raise BadLambdasError("lambdas must be pairwise distinct")

    def unit(i, deg):
        e = [0] * (m + 1)
        e[i] = deg
        return tuple(e)

    neg1 = int(field.NEG[1])
    poly = {unit(r, 1): 1}
    parts = [f"x{r}"]
    for i in range(r):
        poly = _poly_mul_dict(field, poly, {unit(i, q - 1): 1, unit(r, q - 1): neg1})
        parts.append(f"(x{i}^{q - 1} - x{r}^{q - 1})")
    for x in lam:
        poly = _poly_mul_dict(field, poly, {unit(r, 1): x, unit(r + 1, 1): neg1})
        coeff = "" if x == 1 else f"{x}*"
        parts.append(f"({coeff}x{r} - x{r + 1})")

    pm = geometry.point_matrix(field, m).astype(np.int64)
    pw = field.pow_table(q - 1)
    word = pm[:, r].copy()
    for i in range(r):
        f = field.ADD[pw[q - 1][pm[:, i]], field.NEG[pw[q - 1][pm[:, r]]]]
        word = field.MUL[word, f]
    for x in lam:
        f = field.ADD[field.MUL[x, pm[:, r]], field.NEG[pm[:, r + 1]]]
        word = field.MUL[word, f]

    return MinWeightWitness(
        r=r,
        s=s,
        lambdas=tuple(field.element(x) for x in lam),
        polynomial=poly,
        factored="*".join(parts),
        codeword=GfMatrix(field, word[None, :]),
        weight=int(np.count_nonzero(word)),
    )


# ---------------------------------------------------------------------------
# code construction
# ---------------------------------------------------------------------------


def reduced_exponent_rows(q, m, v):
    """Exponent vectors of the reduced-monomial basis, descending lex.

    One row per exponent vector in [0, q-1]^(m+1) whose total degree t
    satisfies t = v mod (q-1) and 0 < t <= v."""
    if v < 1:
        raise OutOfRangeError(f"order v={v} must be at least 1")
    rows = []
    cap = q - 1
    top = (m + 1) * cap

    def rec(prefix, remaining, slots):
        if slots == 1:
            if remaining <= cap:
                rows.append(prefix + [remaining])
            return
        for e in range(min(remaining, cap), -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    t = (v - 1) % (q - 1) + 1
    while t <= min(v, top):
        rec([], t, m + 1)
        t += q - 1
    arr = np.array(rows, dtype=np.int16)
    order = np.lexsort(arr.T[::-1])[::-1]
    out = arr[order]
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class PrmCode:
    """A projective Reed-Muller code with its reduced-monomial generator."""

    field: object
    m: int
    v: int
    n: int
    k: int
    exponents: np.ndarray
    generator: GfMatrix

    @property
    def q(self):
        return self.field.q

    @property
    def monomials(self):
        return [geometry.Monomial(tuple(int(e) for e in row)) for row in self.exponents]

    def __repr__(self):
        return f"PrmCode(q={self.q}, m={self.m}, v={self.v}, n={self.n}, k={self.k})"


def build_code(q, m, v, modulus=None):
    """Construct the code for any v >= 1 (v > m(q-1) gives the whole space)."""
    field = _field_for(q, modulus)
    field._require_tables()
    n = geometry.point_count(q, m)
    exps = reduced_exponent_rows(q, m, v)
    pm = geometry.point_matrix(field, m)
    gen = GfMatrix(field, geometry.evaluation_matrix(field, exps, pm))
    k = int(exps.shape[0])
    expected = prm_dimension(q, m, v) if v <= full_order(q, m) else n
    if k != expected:
        raise InternalDisagreementError(
            f"basis size {k} does not match expected dimension {expected} "
            f"at (q={q}, m={m}, v={v})"
        )
    return PrmCode(field=field, m=m, v=v, n=n, k=k, exponents=exps, generator=gen)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HullReport:
    """Closed-form summary of one (q, m, v) instance."""

    q: int
    m: int
    v: int
    ell: int
    n: int
    k: int
    d: int
    dual: DualStructure
    classification: frozenset
    hull_dim: Optional[int]
    covering: Optional[str]
    hull_min_distance: Optional[int]
    hull_lower_bound: Optional[int]

    def to_text(self):
        flags = [f for f in FLAG_ORDER if f in self.classification]
        lines = [
            f"q: {self.q}",
            f"m: {self.m}",
            f"v: {self.v}",
            f"n: {self.n}",
            f"k: {self.k}",
            f"d: {self.d}",
            f"ell: {self.ell}",
            f"dual: {self.dual}",
            f"classification: {','.join(flags)}",
        ]
        if self.hull_dim is None:
            lines.append("hull_dim: not covered")
            lines.append("covering: none")
        else:
            lines.append(f"hull_dim: {self.hull_dim}")
            lines.append(f"covering: {self.covering}")
        hmd = "none" if self.hull_min_distance is None else str(self.hull_min_distance)
        lines.append(f"hull_min_distance: {hmd}")
        if self.hull_lower_bound is not None:
            lines.append(f"hull_lower_bound: {self.hull_lower_bound}")
        return "\n".join(lines) + "\n"


def build_report(q, m, v):
    _check_range(q, m, v)
    M = full_order(q, m)
    formula = hull_dim_formula(q, m, v)
    return HullReport(
        q=q,
        m=m,
        v=v,
        ell=M - v,
        n=geometry.point_count(q, m),
        k=prm_dimension(q, m, v),
        d=prm_min_distance(q, m, v),
        dual=dual_structure(q, m, v),
        classification=classify(q, m, v),
        hull_dim=None if formula is None else formula.value,
        covering=None if formula is None else formula.covering,
        hull_min_distance=hull_min_distance(q, m, v),
        hull_lower_bound=hull_lower_bound(q, m, v) if 2 * v <= M else None,
    )
