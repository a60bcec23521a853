"""Independent exact verification of every closed-form result.

The hull is computed two ways (Gram-matrix rank and direct subspace
intersection), minimum weights are found by full codeword enumeration when
feasible, and verify_instance runs the whole battery of checks for one
(q, m, v) instance, reporting every check as a structured record:

  dimension                     dimension formula vs generator rank
  duality-orthogonality         dual generator annihilates the code
  duality-dimension             dual rank equals n - k
  ones-augmentation             all-ones row independent of the dual-order code
  classification-self-orthogonal / -self-dual / -lcd / -dual-containing
                                flags vs exact Gram/hull facts
  even-multiple-hull            hull equals the dual-order code when flagged
  hull-dimension                closed-form hull dimension vs oracle
  hull-dimension-uncovered      oracle value recorded where no formula applies
  hull-extraction-agreement     the two hull methods agree (or "skipped")
  witness-weight                witness codeword weight vs distance formula
  witness-in-code               witness lies in the code
  witness-in-hull               witness lies in the hull (when v <= ell)
  distance-brute                enumerated minimum weight vs formula
  hull-distance-brute           enumerated hull minimum weight vs formula
  spanning-exact                non-excluded degree-v monomials span the hull
  excluded-count-rank           excluded-set size equals the Gram rank

No check ever early-exits the instance: a failing check is recorded and the
remaining checks still run, so one report shows every discrepancy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from . import geometry, prm
from .errors import InternalDisagreementError, NotCoveredError
from .gfmatrix import (
    GfMatrix,
    _gemm_dtype,
    _matmul_planes,
    _planes,
    echelon,
    gram,
    matmul,
    nullspace,
    rank,
    reduce_rows_against,
    row_basis,
    rowspace_intersection,
    rowspaces_equal,
    stack,
)

DEFAULT_CAP = 2 * 10**6
# n^3 above which the auto mode skips the intersection cross-check (the Gram
# route is still exact; the second method is a redundant confirmation)
INTERSECTION_VOLUME_LIMIT = 5 * 10**10


@dataclass(frozen=True)
class OracleResult:
    """Hull facts computed from the generator matrix alone."""

    hull_dim_exact: int
    hull_basis: GfMatrix
    min_weight_exact: Optional[int]
    method_tags: tuple


def _generator_of(code_or_matrix):
    return getattr(code_or_matrix, "generator", code_or_matrix)


def hull_exact(code, cross_check="auto", cap=DEFAULT_CAP, _gram=None, _rank=None):
    """Hull dimension and basis via the Gram matrix, cross-checked by
    intersecting the rowspace with its orthogonal complement.

    cross_check is True, False, or "auto" (skip the O(n^3) intersection route
    for very long codes).  The two methods must agree exactly whenever both
    run.  min_weight_exact is filled by full enumeration when the hull has at
    most cap codewords.  The generator rows need not be independent: the hull
    dimension is rank(G) - rank(G G^T), not a row count."""
    gen = _generator_of(code)
    fld = gen.field
    n = gen.cols
    gm = gram(gen) if _gram is None else _gram
    k_rank = rank(gen) if _rank is None else _rank
    coeff = nullspace(gm)  # (rows - rank(gram)) x rows combination rows
    hull_dim = k_rank - (gen.rows - coeff.rows)
    basis = row_basis(matmul(coeff, gen))
    tags = ["gram"]
    if basis.rows != hull_dim:
        raise InternalDisagreementError(
            f"hull basis rank {basis.rows} != rank(G) - rank(gram) = {hull_dim}"
        )
    if cross_check == "auto":
        run_second = n**3 <= INTERSECTION_VOLUME_LIMIT
    else:
        run_second = bool(cross_check)
    if run_second:
        inter = rowspace_intersection(gen, nullspace(gen))
        tags.append("intersection")
        if inter.rows != hull_dim or not rowspaces_equal(inter, basis):
            raise InternalDisagreementError(
                f"gram hull ({hull_dim}) and intersection hull ({inter.rows}) differ"
            )
    else:
        tags.append("intersection-skipped")
    return OracleResult(
        hull_dim_exact=hull_dim,
        hull_basis=basis,
        min_weight_exact=brute_min_weight(basis, cap=cap),
        method_tags=tuple(tags),
    )


def brute_min_weight(code, cap=DEFAULT_CAP):
    """Exact minimum Hamming weight by enumerating all q^k - 1 nonzero
    codewords, or None when q^k exceeds cap.

    Enumeration runs over disjoint message-index ranges whose results merge
    by min-reduction, so the batches are independent."""
    gen = _generator_of(code)
    fld = gen.field
    q, k, n = fld.q, gen.rows, gen.cols
    if k == 0 or q**k > cap:
        return None
    total = q**k
    powers = q ** np.arange(k, dtype=np.int64)
    best = n + 1
    batch = 4096
    dtype = _gemm_dtype(fld, k)
    gp = _planes(fld, gen.data, dtype)
    for start in range(1, total, batch):
        idx = np.arange(start, min(start + batch, total), dtype=np.int64)
        msgs = ((idx[:, None] // powers) % q).astype(np.int16)
        acc, _ = _matmul_planes(fld, _planes(fld, msgs, dtype), gp)
        # a word entry is nonzero iff any digit plane is nonzero there
        weights = (acc != 0).any(axis=0).sum(axis=1)
        best = min(best, int(weights.min()))
    return best


# ---------------------------------------------------------------------------
# per-instance verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckRecord:
    """One structured record: instance triple, check name, both values, verdict."""

    q: int
    m: int
    v: int
    check: str
    formula: object
    oracle: object
    passed: bool

    def as_dict(self):
        return {
            "q": self.q,
            "m": self.m,
            "v": self.v,
            "check": self.check,
            "formula": self.formula,
            "oracle": self.oracle,
            "verdict": "pass" if self.passed else "FAIL",
        }


@dataclass(frozen=True)
class InstanceReport:
    q: int
    m: int
    v: int
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


class _CodeData:
    """A built code plus its echelon form, shared between v and its dual order."""

    def __init__(self, q, m, v, modulus=None):
        self.code = prm.build_code(q, m, v, modulus=modulus)
        self.echelon, self.pivots = echelon(self.code.generator)

    @property
    def rank(self):
        return len(self.pivots)

    @cached_property
    def gram(self):
        return gram(self.code.generator)


def _code_data(cache, q, m, v, modulus=None):
    key = (q, m, v)
    if key not in cache:
        cache[key] = _CodeData(q, m, v, modulus=modulus)
    return cache[key]


def verify_instance(q, m, v, cap=DEFAULT_CAP, cross_check="auto", _cache=None, modulus=None):
    """Run every applicable check for one instance; failures are data, not
    exceptions, and all checks always run."""
    prm._check_range(q, m, v)
    cache = {} if _cache is None else _cache
    records = []

    def add(check, formula, oracle, passed=None):
        ok = (formula == oracle) if passed is None else bool(passed)
        records.append(
            CheckRecord(q=q, m=m, v=v, check=check, formula=formula, oracle=oracle, passed=ok)
        )

    M = prm.full_order(q, m)
    ell = M - v
    flags = prm.classify(q, m, v)
    with_ones = v % (q - 1) == 0

    data = _code_data(cache, q, m, v, modulus=modulus)
    code = data.code
    G = code.generator
    fld = G.field
    n = code.n
    k_formula = prm.prm_dimension(q, m, v)
    add("dimension", k_formula, data.rank)

    ones = GfMatrix(fld, np.ones((1, n), dtype=np.int16))

    # --- duality ----------------------------------------------------------
    if ell >= 1:
        ddata = _code_data(cache, q, m, ell, modulus=modulus)
        G_ell = ddata.code.generator
        dual_gen = stack(ones, G_ell) if with_ones else G_ell
    else:
        ddata = None
        G_ell = None
        dual_gen = ones

    okey = ("orth", q, m, min(v, ell))
    if okey not in cache:
        cache[okey] = matmul(G, G_ell.transpose()).is_zero() if ell >= 1 else True
    orth = cache[okey]
    if with_ones:
        orth = orth and matmul(G, ones.transpose()).is_zero()
    add("duality-orthogonality", True, orth)

    if ell >= 1:
        if with_ones:
            ones_in_ell = reduce_rows_against(ddata.echelon, ddata.pivots, ones).is_zero()
            add("ones-augmentation", True, not ones_in_ell)
            rank_dual = ddata.rank + (0 if ones_in_ell else 1)
        else:
            rank_dual = ddata.rank
    else:
        rank_dual = rank(dual_gen)
    add("duality-dimension", n - k_formula, rank_dual)

    # --- hull and classification -------------------------------------------
    # hull(C) = hull(C^perp), so the Gram route runs on the smaller of the
    # two sides; the intersection route (when enabled) is computed on the
    # code itself and stays fully independent of that shortcut
    if data.rank <= rank_dual:
        small_rows = G
        small_rank = data.rank
        gm_small = data.gram
    else:
        small_rank = rank_dual
        if ell >= 1 and not with_ones:
            small_rows = G_ell
            gm_small = ddata.gram
        else:
            small_rows = dual_gen
            # gram of (ones | G_ell) assembled from the dual-order gram plus
            # its border products against the all-ones row
            corner = matmul(ones, ones.transpose()).data
            if ell >= 1:
                border = matmul(ones, G_ell.transpose()).data
                gm_small = GfMatrix(
                    fld,
                    np.block([[corner, border], [border.T, ddata.gram.data]]),
                )
            else:
                gm_small = GfMatrix(fld, corner)
    hull_dim = small_rank - rank(gm_small)

    if cross_check == "auto":
        run_second = n**3 <= INTERSECTION_VOLUME_LIMIT
    else:
        run_second = bool(cross_check)
    need_basis = run_second or fld.q**hull_dim <= cap or 2 * v < 2 * (q - 1)
    basis = None
    hull_mw = None
    agree_note = "skipped"
    agree_ok = True
    if need_basis:
        coeff = nullspace(gm_small)
        basis = row_basis(matmul(coeff, small_rows))
        if basis.rows != hull_dim:
            agree_note = "basis-rank-mismatch"
            agree_ok = False
        hull_mw = brute_min_weight(basis, cap=cap)
    if run_second and agree_ok:
        inter = rowspace_intersection(G, nullspace(G))
        if inter.rows == hull_dim and rowspaces_equal(inter, basis):
            agree_note = "agree"
        else:
            agree_note = "disagree"
            agree_ok = False
    add("hull-extraction-agreement", True, agree_note, passed=agree_ok)

    # classification facts through exact rank identities:
    # rank(gram(C)) = k - hull_dim, so gram zero <=> hull_dim = k and gram
    # invertible <=> hull_dim = 0
    gram_zero = hull_dim == data.rank
    add("classification-self-orthogonal", "SelfOrthogonal" in flags, gram_zero)
    add("classification-self-dual", "SelfDual" in flags, gram_zero and 2 * data.rank == n)
    add("classification-lcd", "LCD" in flags, hull_dim == 0)
    add("classification-dual-containing", "DualContaining" in flags, hull_dim == n - data.rank)
    if "SpecialEvenMultiple" in flags:
        # hull = dual-order code: contained in the code (annihilated by the
        # dual generator), orthogonal to it, and of the same dimension
        contained = matmul(G_ell, ones.transpose()).is_zero() and ddata.gram.is_zero()
        add("even-multiple-hull", True, contained and orth and hull_dim == ddata.rank)

    try:
        formula = prm.hull_dim_formula(q, m, v)
    except InternalDisagreementError as exc:
        add("hull-dimension", f"disagreeing candidates: {exc}", hull_dim, passed=False)
        formula = None
    else:
        if formula is not None:
            add("hull-dimension", formula.value, hull_dim)
        else:
            add("hull-dimension-uncovered", None, hull_dim, passed=True)

    # --- witness -----------------------------------------------------------
    d_formula = prm.prm_min_distance(q, m, v)
    wit = prm.min_weight_witness(q, m, v, modulus=modulus)
    add("witness-weight", d_formula, wit.weight)
    # membership through the verified dual: w in C iff the dual annihilates w
    w_in_code = matmul(wit.codeword, dual_gen.transpose()).is_zero()
    add("witness-in-code", True, w_in_code)
    if v <= ell:
        w_orth = matmul(wit.codeword, G.transpose()).is_zero()
        add("witness-in-hull", True, w_in_code and w_orth)

    # --- brute-force weights ------------------------------------------------
    bw = brute_min_weight(code, cap=cap)
    if bw is not None:
        add("distance-brute", d_formula, bw)
    if hull_mw is not None:
        add("hull-distance-brute", prm.hull_min_distance(q, m, v), hull_mw)

    # --- excluded-monomial ranges -------------------------------------------
    try:
        excl = prm.excluded_monomials(q, m, v)
    except NotCoveredError:
        excl = None
    if excl is not None:
        if 2 * v < 2 * (q - 1):
            # low ranges: the non-excluded degree-v monomial evaluations span
            # exactly the hull
            allmon = geometry.monomial_matrix(m + 1, v)
            excl_set = {mono.exponents for mono in excl}
            keep = np.array(
                [tuple(int(x) for x in row) not in excl_set for row in allmon]
            )
            pts = geometry.point_matrix(fld, m)
            span = GfMatrix(fld, geometry.evaluation_matrix(fld, allmon[keep], pts))
            rank_span = rank(span)
            ok = rank_span == hull_dim and (
                hull_dim == 0 or rank(stack(span, basis)) == rank_span
            )
            add("spanning-exact", True, ok)
        else:
            # wrap ranges: the stated excluded count equals the Gram rank
            # (the literal spanning claim fails here; see the test suite)
            add("excluded-count-rank", len(excl), data.rank - hull_dim)

    return InstanceReport(q=q, m=m, v=v, checks=tuple(records))


def run_sweep(
    qs=(2, 3, 4, 5, 7, 8, 9), ms=(2, 3, 4), cap=DEFAULT_CAP, cross_check="auto", modulus=None
):
    """Yield an InstanceReport for every (q, m, v) with 1 <= v <= m(q-1).

    Instances are grouped with their dual order so each code and echelon form
    is built exactly once; memory stays bounded by one such pair.  A custom
    modulus only makes sense when qs selects a single field order."""
    for q in qs:
        for m in ms:
            M = m * (q - 1)
            done = set()
            for v in range(1, M + 1):
                if v in done:
                    continue
                group = sorted(w for w in {v, M - v} if 1 <= w <= M)
                cache = {}
                for w in group:
                    done.add(w)
                    yield verify_instance(
                        q, m, w, cap=cap, cross_check=cross_check, _cache=cache, modulus=modulus
                    )
