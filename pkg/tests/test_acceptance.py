"""Acceptance gate: the nine headline requirements, checked end to end.

Criteria 1-4 reproduce the four large hull dimensions (555, 474, 1682, 961)
with the closed form and the exact oracle independently.  Criterion 5 covers
the hull minimum distance 75 instance.  Criterion 6 runs the full sweep
(q in {2,3,4,5,7,8,9}, m in {2,3,4}, every order) through every oracle check.
Criteria 7-8 consume the sweep records for brute-force weight agreement and
the excluded-monomial spanning property.  Criterion 9 covers power sums.

One test is deliberately red: the literal exact-spanning claim for the two
wrap ranges is false (the oracle disproves it), and the failing test records
that fact; see test_criterion_8_wrap_ranges_literal_spanning_is_red.
"""

import time

import numpy as np
import pytest

from prmhull import geometry, oracle, prm
from prmhull.field import field_from_order
from prmhull.gfmatrix import GfMatrix, in_rowspace, rank, stack

SWEEP_QS = (2, 3, 4, 5, 7, 8, 9)
SWEEP_MS = (2, 3, 4)
SWEEP_BUDGET_SECONDS = 1800
BRUTE_LIMIT = 2 * 10**6


@pytest.fixture(scope="session")
def sweep():
    """Run the full verification sweep once; criteria 6, 7 and 8 share it."""
    start = time.monotonic()
    reports = list(oracle.run_sweep(qs=SWEEP_QS, ms=SWEEP_MS))
    elapsed = time.monotonic() - start
    return reports, elapsed


def _unreduced_evaluation_matrix(q, m, v):
    fld = field_from_order(q)
    exps = geometry.monomial_matrix(m + 1, v)
    pts = geometry.point_matrix(fld, m)
    return GfMatrix(fld, geometry.evaluation_matrix(fld, exps, pts))


def _record(report, name):
    matches = [c for c in report.checks if c.check == name]
    assert len(matches) == 1, (report.q, report.m, report.v, name)
    return matches[0]


def test_criterion_1_hull_dim_11_3_14():
    assert prm.hull_dim_formula(11, 3, 14).value == 555
    # oracle run on the full 680-monomial evaluation matrix (not the reduced
    # 635-row basis), with the independent intersection route forced on
    mat = _unreduced_evaluation_matrix(11, 3, 14)
    assert mat.shape == (680, 1464)
    res = oracle.hull_exact(mat, cross_check=True)
    assert res.hull_dim_exact == 555
    assert "intersection" in res.method_tags


def test_criterion_2_hull_dim_11_3_17():
    assert prm.hull_dim_formula(11, 3, 17).value == 474
    res = oracle.hull_exact(prm.build_code(11, 3, 17), cross_check=True)
    assert res.hull_dim_exact == 474


def test_criterion_3_hull_dim_8_4_13():
    assert prm.hull_dim_formula(8, 4, 13).value == 1682
    # the 2380x4681 unreduced evaluation matrix over GF(8)
    mat = _unreduced_evaluation_matrix(8, 4, 13)
    assert mat.shape == (2380, 4681)
    res = oracle.hull_exact(mat)
    assert res.hull_dim_exact == 1682


def test_criterion_4_hull_dim_7_4_13():
    assert prm.hull_dim_formula(7, 4, 13).value == 961
    res = oracle.hull_exact(prm.build_code(7, 4, 13))
    assert res.hull_dim_exact == 961


def test_criterion_5_hull_min_distance_75():
    assert prm.hull_min_distance(5, 3, 3) == 75
    assert prm.hull_min_distance(5, 3, 9) == 75
    # exhausting all 5^17 hull codewords is out of reach; the witness word
    # of the exact minimum weight plus its membership in the oracle hull
    # stands in for the enumeration
    wit = prm.min_weight_witness(5, 3, 3)
    assert wit.weight == 75
    res = oracle.hull_exact(prm.build_code(5, 3, 3), cross_check=True)
    assert in_rowspace(res.hull_basis, wit.codeword)


def test_criterion_6_sweep_zero_failures(sweep):
    reports, elapsed = sweep
    assert len(reports) == sum(m * (q - 1) for q in SWEEP_QS for m in SWEEP_MS)
    failures = [
        (r.q, r.m, r.v, c.check, c.formula, c.oracle)
        for r in reports
        for c in r.failures()
    ]
    assert failures == []
    for r in reports:
        # (a) dimension formula = evaluation-matrix rank
        _record(r, "dimension")
        # (b) duality orthogonality + dimension complement + augmentation
        _record(r, "duality-orthogonality")
        _record(r, "duality-dimension")
        if r.v % (r.q - 1) == 0 and r.v < r.m * (r.q - 1):
            _record(r, "ones-augmentation")
        # (c) hull dimension formula = oracle (present on every instance here)
        _record(r, "hull-dimension")
        # (d) classification flags against the Gram matrix rank facts
        _record(r, "classification-self-orthogonal")
        _record(r, "classification-lcd")
        _record(r, "classification-self-dual")
        _record(r, "classification-dual-containing")
        # (e) witness weight = distance formula
        _record(r, "witness-weight")
    assert elapsed < SWEEP_BUDGET_SECONDS, f"sweep took {elapsed:.0f}s"


def test_criterion_7_brute_force_agreement(sweep):
    reports, _ = sweep
    enumerable = 0
    for r in reports:
        k = prm.prm_dimension(r.q, r.m, r.v)
        if r.q**k > BRUTE_LIMIT:
            continue
        enumerable += 1
        brute = _record(r, "distance-brute")
        assert brute.passed
        assert brute.formula == prm.prm_min_distance(r.q, r.m, r.v)
        hull_dim = _record(r, "hull-dimension").oracle
        if hull_dim > 0:
            hull_brute = _record(r, "hull-distance-brute")
            assert hull_brute.passed
            assert hull_brute.formula == prm.hull_min_distance(r.q, r.m, r.v)
    assert enumerable >= 30


def _band(q, m, v):
    if 2 * v < q - 1:
        return "low"
    if q - 1 < 2 * v < 2 * (q - 1):
        return "mid-low"
    if m >= 3 and q - 1 < v and 2 * v < 3 * (q - 1):
        return "wrap"
    if m >= 4 and 3 * (q - 1) < 2 * v < 4 * (q - 1):
        return "high-wrap"
    return None


def test_criterion_8_spanning_per_range(sweep):
    reports, _ = sweep
    counts = {"low": 0, "mid-low": 0, "wrap": 0, "high-wrap": 0}
    for r in reports:
        band = _band(r.q, r.m, r.v)
        if band is None:
            continue
        counts[band] += 1
        if band in ("low", "mid-low"):
            # exact rowspace equality between the non-excluded monomial
            # evaluations and the oracle hull
            assert _record(r, "spanning-exact").passed, (r.q, r.m, r.v)
        else:
            # wrap ranges: what holds exactly is that the excluded-monomial
            # count equals the Gram rank k - hull_dim (the literal spanning
            # claim fails there; see the red test below)
            rec = _record(r, "excluded-count-rank")
            assert rec.passed, (r.q, r.m, r.v)
    assert all(count >= 10 for count in counts.values()), counts


def test_criterion_8_wrap_ranges_literal_spanning_is_red():
    # DELIBERATELY FAILING.  The requirement literally asks that the
    # non-excluded degree-v monomial evaluations span exactly the hull in
    # the wrap ranges too.  The oracle disproves that: on every wrap-range
    # instance checked, the span is a different subspace (here it even has
    # the right dimension, 24, but stacking it on the hull basis raises the
    # rank).  The count = Gram-rank identity is what actually holds, and is
    # what test_criterion_8_spanning_per_range checks; this test records
    # the literal reading and is expected to fail.
    q, m, v = 4, 3, 4
    code = prm.build_code(q, m, v)
    excluded = {mono.exponents for mono in prm.excluded_monomials(q, m, v)}
    allmon = geometry.monomial_matrix(m + 1, v)
    keep = np.array([tuple(int(x) for x in row) not in excluded for row in allmon])
    pts = geometry.point_matrix(code.field, m)
    span = GfMatrix(code.field, geometry.evaluation_matrix(code.field, allmon[keep], pts))
    res = oracle.hull_exact(code, cross_check=True)
    assert rank(span) == res.hull_dim_exact
    assert rank(stack(span, res.hull_basis)) == res.hull_dim_exact  # fails


def test_criterion_9_power_sums():
    # sum over a in GF(q) of a^r is -1 when (q-1) | r and r > 0, else 0
    for q in (2, 3, 4, 5, 7, 8, 9, 16, 25, 27):
        fld = field_from_order(q)
        minus_one = int(fld.neg(1))
        for r in range(0, 3 * (q - 1) + 1):
            expected = minus_one if r > 0 and r % (q - 1) == 0 else 0
            assert int(fld.power_sum(r)) == expected, (q, r)
