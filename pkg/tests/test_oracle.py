"""Exact oracles: hull extraction, brute-force weights, instance verification."""

import numpy as np
import pytest

import reference
from prmhull import geometry, oracle, prm
from prmhull.field import field_from_order, prime_power_decomposition
from prmhull.gfmatrix import (
    GfMatrix,
    gram,
    in_rowspace,
    matmul,
    nullspace,
    rank,
    rowspaces_equal,
)


def test_hull_exact_frozen_values():
    res = oracle.hull_exact(prm.build_code(5, 3, 12))
    assert res.hull_dim_exact == 0
    assert res.hull_basis.rows == 0
    assert res.min_weight_exact is None
    assert "gram" in res.method_tags and "intersection" in res.method_tags

    code = prm.build_code(5, 3, 6)
    res = oracle.hull_exact(code)
    assert res.hull_dim_exact == code.k == 78  # self-dual: hull is the code
    assert rowspaces_equal(res.hull_basis, code.generator)


def test_hull_exact_matches_reference_on_small_codes():
    rng = np.random.default_rng(21)
    for q in (2, 3, 4, 5):
        fld = field_from_order(q)
        p, k = prime_power_decomposition(q)
        ref = reference.SmallField(p, k, modulus=fld.modulus)
        for trial in range(4):
            a = GfMatrix(fld, rng.integers(0, q, size=(4, 9), dtype=np.int16))
            res = oracle.hull_exact(a, cross_check=True, cap=10**4)
            want = reference.hull_dimension(ref, a.data.tolist())
            assert res.hull_dim_exact == want, (q, trial)
            assert res.hull_basis.rows == want
            for i in range(want):
                row = GfMatrix(fld, res.hull_basis.data[i : i + 1])
                assert in_rowspace(a, row)
                assert matmul(a, row.transpose()).is_zero()
            if want and q**want <= 10**4:
                assert res.min_weight_exact == reference.min_weight(
                    ref, res.hull_basis.data.tolist()
                )


def test_hull_exact_rank_deficient_input():
    # feeding a redundant generating set must not change the answer
    code = prm.build_code(3, 2, 2)
    doubled = GfMatrix(code.field, np.vstack([code.generator.data, code.generator.data]))
    res_a = oracle.hull_exact(code, cross_check=True)
    res_b = oracle.hull_exact(doubled, cross_check=True)
    assert res_a.hull_dim_exact == res_b.hull_dim_exact == 6
    assert rowspaces_equal(res_a.hull_basis, res_b.hull_basis)


def test_hull_of_dual_equals_hull_of_code():
    for q, m, v in [(3, 2, 2), (4, 2, 3), (5, 2, 3), (3, 3, 2)]:
        code = prm.build_code(q, m, v)
        dual = nullspace(code.generator)
        res_c = oracle.hull_exact(code, cross_check=True)
        res_d = oracle.hull_exact(dual, cross_check=True)
        assert res_c.hull_dim_exact == res_d.hull_dim_exact, (q, m, v)
        if res_c.hull_dim_exact:
            assert rowspaces_equal(res_c.hull_basis, res_d.hull_basis)


def test_gram_rank_identity_on_small_instances():
    # rank(G G^T) = k - hull_dim; zero Gram <=> self-orthogonal,
    # invertible Gram <=> empty hull
    for q, m, v in [(3, 2, 2), (3, 2, 4), (5, 2, 3), (4, 2, 6), (2, 3, 3)]:
        code = prm.build_code(q, m, v)
        g = gram(code.generator)
        hull_dim = oracle.hull_exact(code, cross_check=True).hull_dim_exact
        assert rank(g) == code.k - hull_dim, (q, m, v)
        assert g.is_zero() == (hull_dim == code.k)
        assert (rank(g) == code.k) == (hull_dim == 0)


def test_brute_min_weight_values():
    assert oracle.brute_min_weight(prm.build_code(3, 2, 2)) == 6
    assert oracle.brute_min_weight(prm.build_code(2, 2, 1)) == 4
    assert oracle.brute_min_weight(prm.build_code(9, 3, 1), cap=10**6) == 729
    assert oracle.brute_min_weight(prm.build_code(5, 3, 4), cap=100) is None
    fld = field_from_order(3)
    assert oracle.brute_min_weight(GfMatrix.zeros(fld, 0, 5)) is None
    hull6 = oracle.hull_exact(prm.build_code(3, 2, 2))
    assert hull6.min_weight_exact == prm.hull_min_distance(3, 2, 2) == 6


def test_brute_min_weight_matches_reference():
    rng = np.random.default_rng(22)
    for q in (2, 3, 4, 5):
        fld = field_from_order(q)
        p, k = prime_power_decomposition(q)
        ref = reference.SmallField(p, k, modulus=fld.modulus)
        for rows in (1, 2, 3):
            a = GfMatrix(fld, rng.integers(0, q, size=(rows, 8), dtype=np.int16))
            got = oracle.brute_min_weight(a, cap=10**4)
            want = reference.min_weight(ref, a.data.tolist())
            assert got == want, (q, rows)


def test_verify_instance_spread_of_classifications():
    cases = [
        (3, 2, 2),  # self-orthogonal midpoint
        (5, 3, 12),  # LCD
        (2, 2, 1),  # tiny binary, everything brute-forced
        (5, 3, 6),  # self-dual
        (5, 3, 8),  # special even multiple
        (5, 3, 10),  # dual-containing
        (4, 3, 4),  # wrap range
        (5, 3, 3),  # mid-low range
        (5, 3, 1),  # low range
        (4, 4, 5),  # high wrap range
    ]
    for q, m, v in cases:
        report = oracle.verify_instance(q, m, v)
        assert report.passed, (q, m, v, report.failures())
        names = {c.check for c in report.checks}
        assert "dimension" in names
        assert "duality-orthogonality" in names
        assert "duality-dimension" in names
        assert "hull-dimension" in names
        assert "witness-weight" in names


def test_verify_instance_check_selection():
    # low/mid-low ranges carry the exact spanning check, wrap ranges the
    # count = Gram-rank check
    names = {c.check for c in oracle.verify_instance(5, 3, 1).checks}
    assert "spanning-exact" in names and "excluded-count-rank" not in names
    names = {c.check for c in oracle.verify_instance(4, 3, 4).checks}
    assert "excluded-count-rank" in names and "spanning-exact" not in names
    # v = 0 mod (q-1) triggers the all-ones augmentation record
    names = {c.check for c in oracle.verify_instance(3, 2, 2).checks}
    assert "ones-augmentation" in names and "even-multiple-hull" in names
    names = {c.check for c in oracle.verify_instance(3, 2, 3).checks}
    assert "ones-augmentation" not in names
    # witness-in-hull only applies when v <= ell
    names = {c.check for c in oracle.verify_instance(5, 3, 10).checks}
    assert "witness-in-hull" not in names


def test_verify_instance_records_are_structured():
    report = oracle.verify_instance(3, 2, 2)
    rec = report.checks[0]
    d = rec.as_dict()
    assert d["q"] == 3 and d["m"] == 2 and d["v"] == 2
    assert d["check"] == "dimension"
    assert d["verdict"] == "pass"
    assert rec.formula == rec.oracle == 6


def test_verify_instance_custom_modulus():
    report = oracle.verify_instance(9, 2, 3, modulus=(2, 2, 1))
    assert report.passed, report.failures()


def test_run_sweep_covers_each_order_once():
    seen = [(r.q, r.m, r.v) for r in oracle.run_sweep(qs=(3,), ms=(2,))]
    assert sorted(seen) == [(3, 2, v) for v in range(1, 5)]
    seen = [(r.q, r.m, r.v) for r in oracle.run_sweep(qs=(4,), ms=(3,))]
    assert sorted(seen) == [(4, 3, v) for v in range(1, 10)]


def test_run_sweep_small_family_all_pass():
    for report in oracle.run_sweep(qs=(2, 3), ms=(2, 3)):
        assert report.passed, (report.q, report.m, report.v, report.failures())


def test_intersection_cross_check_gate():
    # n = 13 is far below the volume gate: both routes must run and agree
    report = oracle.verify_instance(3, 2, 2, cross_check="auto")
    rec = next(c for c in report.checks if c.check == "hull-extraction-agreement")
    assert rec.oracle == "agree"
    report = oracle.verify_instance(3, 2, 2, cross_check=False)
    rec = next(c for c in report.checks if c.check == "hull-extraction-agreement")
    assert rec.oracle == "skipped" and rec.passed
    assert oracle.INTERSECTION_VOLUME_LIMIT == 5 * 10**10
    assert oracle.DEFAULT_CAP == 2 * 10**6


def test_even_multiple_hull_is_dual_order_code():
    # hull of the special even-multiple case equals the dual-order code
    code = prm.build_code(5, 3, 8)
    res = oracle.hull_exact(code)
    ell_code = prm.build_code(5, 3, 4)
    assert res.hull_dim_exact == ell_code.k
    assert rowspaces_equal(res.hull_basis, ell_code.generator)


def test_witness_lies_in_hull_when_low_order():
    code = prm.build_code(5, 3, 3)
    wit = prm.min_weight_witness(5, 3, 3)
    res = oracle.hull_exact(code)
    assert in_rowspace(res.hull_basis, wit.codeword)
