"""Dense exact linear algebra over GF(q).

A GfMatrix stores canonical element indices as int16.  Heavy operations run
on a digit-plane representation: a (k, rows, cols) float array holding the
base-p coefficient planes of every entry, so multiplication and elimination
reduce to BLAS products between planes, recombined through the digits of
x^(i+j).  Accumulator dtypes are chosen so that every inner product is exact
(below 2^24 for float32, 2^53 for float64); all reductions mod p happen on
integral values, so results are bit-exact.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import DimensionMismatchError, OutOfRangeError
from .field import field_from_order

_PANEL = 64


class GfMatrix:
    """Immutable dense matrix over GF(q) with canonical-index entries."""

    def __init__(self, field, data):
        field._require_tables()
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"matrix data must be 2-dimensional, got {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise OutOfRangeError("matrix entries must be canonical indices in [0, q)")
        self.field = field
        self.data = arr.astype(np.int16)
        self.data.flags.writeable = False

    # -- construction ----------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int16))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int16))

    # -- basic properties --------------------------------------------------------

    @property
    def rows(self):
        return int(self.data.shape[0])

    @property
    def cols(self):
        return int(self.data.shape[1])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def element(self, i, j):
        return self.field.element(int(self.data[i, j]))

    def transpose(self):
        return GfMatrix(self.field, self.data.T)

    def __eq__(self, other):
        return (
            isinstance(other, GfMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __repr__(self):
        return f"GfMatrix({self.rows}x{self.cols} over GF({self.field.q}))"

    def is_zero(self):
        return not self.data.any()


def stack(a, b):
    """Rows of a followed by rows of b."""
    _check_same_field(a, b)
    if a.cols != b.cols:
        raise DimensionMismatchError(f"cannot stack {a.shape} on {b.shape}")
    return GfMatrix(a.field, np.vstack([a.data, b.data]))


def _check_same_field(a, b):
    if a.field != b.field:
        raise DimensionMismatchError("matrices live over different fields")


# ---------------------------------------------------------------------------
# digit-plane kernels
# ---------------------------------------------------------------------------


def _gemm_dtype(field, inner):
    """Float dtype whose integer-exact range holds every digit inner product."""
    bound = field.k * (field.p - 1) ** 2 * (max(int(inner), 1) + 1)
    return np.float32 if bound < 2**24 else np.float64


def _planes(field, data, dtype):
    """(k, R, C) digit planes of an index matrix."""
    d = field.DIGITS[np.asarray(data, dtype=np.int64)]  # (R, C, k)
    return np.ascontiguousarray(d.transpose(2, 0, 1)).astype(dtype)


def _combine(field, planes_slice):
    """Recombine digit planes (k, ...) into canonical indices (int32)."""
    pvec = (field.p ** np.arange(field.k)).astype(planes_slice.dtype)
    return np.tensordot(pvec, planes_slice, axes=([0], [0])).astype(np.int32)


def _budget(dtype):
    """Largest magnitude the float dtype represents exactly as an integer."""
    return 2**24 if dtype == np.float32 else 2**53


def _matmul_planes(field, ap, bp, symmetric=False, reduce=True):
    """Exact product of two plane stacks: (k,R,I) x (k,I,C) -> (k,R,C) planes.

    Everything stays in the input float dtype.  Intermediate reductions mod p
    are skipped whenever the worst-case magnitude still fits the dtype's
    exact-integer range; with reduce=False the returned planes may be left
    unreduced.  Returns (planes, bound) where bound is the guaranteed entry
    magnitude (p-1 when reduced).

    With symmetric=True, bp must be ap transposed; products for digit pairs
    (i,j) and (j,i) are then shared as mutual transposes.
    """
    k, p = field.k, field.p
    R, inner, C = ap.shape[1], ap.shape[2], bp.shape[2]
    raw_bound = (2 * k - 1) * (p - 1) * k * (p - 1) ** 2 * max(inner, 1)
    raw = raw_bound < _budget(ap.dtype)
    powvec = field.POWVEC  # (2k-1, k) digits of x^t
    acc = np.zeros((k, R, C), dtype=ap.dtype)
    s = np.empty((R, C), dtype=ap.dtype)
    tmp = np.empty((R, C), dtype=ap.dtype)
    for t in range(2 * k - 1):
        have = False
        for i in range(max(0, t - k + 1), min(k, t + 1)):
            j = t - i
            if symmetric and i > j:
                continue
            target = s if not have else tmp
            np.matmul(ap[i], bp[j], out=target)
            if symmetric and i != j:
                target += target.T.copy()
            if have:
                s += tmp
            have = True
        if not have:
            continue
        if not raw:
            s %= p
        for d in range(k):
            c = int(powvec[t, d])
            if c == 1:
                acc[d] += s
            elif c:
                np.multiply(s, c, out=tmp)
                acc[d] += tmp
    if reduce:
        acc %= p
        bound = p - 1
    else:
        bound = raw_bound if raw else (2 * k - 1) * (p - 1) ** 2
    return acc, bound


def _indices_from_planes(field, planes):
    """Recombine reduced planes (k, R, C) into an int16 index matrix."""
    out = np.zeros(planes.shape[1:], dtype=np.int32)
    for d in range(field.k):
        out += np.asarray(planes[d] if planes.dtype.kind == "i" else np.rint(planes[d]),
                          dtype=np.int32) * int(field.p**d)
    return out.astype(np.int16)


def matmul_indices(field, a, b):
    """Raw index-matrix product over GF(q); inputs/outputs are integer arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int16)
    dtype = _gemm_dtype(field, a.shape[1])
    planes, _ = _matmul_planes(field, _planes(field, a, dtype), _planes(field, b, dtype))
    return _indices_from_planes(field, planes)


def matmul(a, b):
    """Matrix product over GF(q)."""
    _check_same_field(a, b)
    return GfMatrix(a.field, matmul_indices(a.field, a.data, b.data))


def gram(a):
    """Symmetric Gram product A * A^T."""
    field = a.field
    if a.rows == 0:
        return GfMatrix(field, np.zeros((0, 0), dtype=np.int16))
    dtype = _gemm_dtype(field, a.cols)
    ap = _planes(field, a.data, dtype)
    planes, _ = _matmul_planes(field, ap, ap.transpose(0, 2, 1), symmetric=True)
    return GfMatrix(field, _indices_from_planes(field, planes))


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _eliminate(field, data, want_rref):
    """Blocked Gaussian elimination on digit planes.

    Returns (planes, pivots): planes hold the echelon form (or RREF when
    want_rref) reduced mod p, rows in elimination order; pivots is the list
    of pivot column indices, one per pivot row 0..len(pivots)-1.
    """
    k, p = field.k, field.p
    R, C = data.shape
    dtype = _gemm_dtype(field, _PANEL)
    planes = _planes(field, data, dtype)
    if R == 0 or C == 0:
        return planes, []
    pvec = (field.p ** np.arange(k)).astype(dtype)
    smm = field.SMM.astype(dtype)  # (q, k, k)

    pivots = []
    pr = 0
    col = 0
    # active-region entries may stay unreduced between panels; mag tracks the
    # exact worst-case magnitude so every float op remains an exact integer
    mag = p - 1
    budget = _budget(dtype)
    grow = (2 * k - 1) * (p - 1) * k * (p - 1) ** 2 * _PANEL  # one panel's worth
    while pr < R and col < C:
        c_end = min(col + _PANEL, C)
        w = c_end - col
        pr0 = pr
        if mag + grow > budget:
            active = planes[:, pr0:, col:]
            np.mod(active, p, out=active)
            mag = p - 1
        # work on a contiguous copy of the active panel block; reductions mod p
        # are deferred (digit planes reduce coefficient-wise, and _gemm_dtype
        # bounds the growth over a panel), so each pivot does one fused update
        blk = np.ascontiguousarray(planes[:, pr0:, col:c_end])  # (k, R-pr0, w)
        blk %= p
        nact = R - pr0
        fcols = []
        scales = []
        piv_in_panel = []
        for c_rel in range(w):
            rr = pr - pr0  # next pivot position inside blk
            colvals = blk[:, rr:, c_rel] % p  # reduced copy of the column
            nzmask = (colvals != 0).any(axis=0)
            if not nzmask.any():
                continue
            r_rel = rr + int(np.argmax(nzmask))
            if r_rel != rr:
                blk[:, [rr, r_rel], :] = blk[:, [r_rel, rr], :]
                planes[:, [pr0 + rr, pr0 + r_rel], c_end:] = planes[
                    :, [pr0 + r_rel, pr0 + rr], c_end:
                ]
                for fc in fcols:
                    fc[[rr, r_rel]] = fc[[r_rel, rr]]
            pividx = int(round(float(np.dot(pvec, colvals[:, r_rel - rr]))))
            s = int(field.INV[pividx])
            scales.append(s)
            pivseg = np.matmul(smm[s], blk[:, rr, c_rel:] % p) % p
            blk[:, rr, c_rel:] = pivseg
            # record multipliers for every row below, eliminate on the panel;
            # columns left of c_rel keep stale residues that vanish mod p
            below = blk[:, rr + 1 :, c_rel] % p  # (k, nact-rr-1)
            fidx = _combine(field, below)  # (nact-rr-1,)
            fcol = np.zeros(nact, dtype=np.int32)
            fcol[rr + 1 :] = fidx
            fcols.append(fcol)
            if fidx.any():
                # f*u expands over multiplier digits: sum_j f_j * (x^j * u),
                # one real GEMM instead of a batched per-row product
                xu = np.stack(
                    [np.matmul(smm[p**j], pivseg) % p for j in range(k)], axis=0
                )  # (j, d, w-c_rel)
                fdig = field.DIGITS[fidx].astype(blk.dtype)  # (nact-rr-1, k)
                upd = np.matmul(fdig, xu.reshape(k, -1)).reshape(
                    fdig.shape[0], k, -1
                )
                blk[:, rr + 1 :, c_rel:] -= upd.transpose(1, 0, 2)
            pivots.append(col + c_rel)
            piv_in_panel.append(col + c_rel)
            pr += 1
        blk %= p
        planes[:, pr0:, col:c_end] = blk
        npv = len(piv_in_panel)
        if npv and c_end < C:
            F = np.stack(fcols, axis=1)  # (nact, npv) multiplier indices
            trail = planes[:, pr0:, c_end:]
            # finalize the pivot rows' trailing segments in elimination order
            for i in range(npv):
                ti = trail[:, i, :]
                fi = F[i, :i]
                nz = np.nonzero(fi)[0]
                if nz.size:
                    prods = np.matmul(smm[fi[nz]], trail[:, nz, :].transpose(1, 0, 2))
                    ti = ti - prods.sum(axis=0)
                trail[:, i, :] = np.matmul(smm[scales[i]], ti % p) % p
            # bulk update of all remaining active rows in one plane product
            if nact > npv:
                fb = _planes(field, F[npv:, :], dtype)  # (k, nact-npv, npv)
                u = np.ascontiguousarray(trail[:, :npv, :])
                prod, pb = _matmul_planes(field, fb, u, reduce=False)
                rest = trail[:, npv:, :]
                if mag + pb > budget:
                    np.mod(rest, p, out=rest)
                    mag = p - 1
                np.subtract(rest, prod, out=rest)
                mag += pb
        col = c_end

    if want_rref and pivots:
        _backward(field, planes, pivots, smm, dtype)
    return planes, pivots


def _unit_upper_inverse(field, b):
    """Inverse of a unit-diagonal upper-triangular index matrix (small)."""
    nb = b.shape[0]
    t = np.zeros_like(b)
    t[np.diag_indices(nb)] = 1
    bb = b.copy()
    for j in range(nb - 1, 0, -1):
        colv = bb[:j, j].copy()
        if not colv.any():
            continue
        t[:j, :] = field.ADD[t[:j, :], field.NEG[field.MUL[colv[:, None], t[j, :][None, :]]]]
        bb[:j, :] = field.ADD[bb[:j, :], field.NEG[field.MUL[colv[:, None], bb[j, :][None, :]]]]
    return t


def _backward(field, planes, pivots, smm, dtype):
    """Clear entries above every pivot (pivot rows are already normalized).

    Works right-to-left in pivot blocks: the in-block clearing composes into
    the inverse of the block's unit-triangular pivot-column minor, applied as
    one plane product, followed by one bulk product for the rows above."""
    p = field.p
    b0 = len(pivots)
    while b0 > 0:
        i0 = max(0, b0 - _PANEL)
        nb = b0 - i0
        pivcols = list(pivots[i0:b0])
        c0 = pivcols[0]
        # (a) reduce the block's own pivot rows: rows <- B^(-1) rows, where B
        # is the unit upper-triangular minor at the block's pivot columns
        bidx = _combine(field, planes[:, i0:b0, :][:, :, pivcols]).astype(np.int16)
        tinv = _unit_upper_inverse(field, bidx)
        tp = _planes(field, tinv, dtype)
        u = np.ascontiguousarray(planes[:, i0:b0, c0:])
        w, _ = _matmul_planes(field, tp, u)
        planes[:, i0:b0, c0:] = w
        # (b) bulk pass for every row above the block
        if i0 > 0:
            fplanes = np.ascontiguousarray(planes[:, :i0, :][:, :, pivcols])  # (k, i0, nb)
            prod, _ = _matmul_planes(field, fplanes, w)
            above = planes[:, :i0, c0:]
            np.subtract(above, prod, out=above)
            np.mod(above, p, out=above)
        b0 = i0


def rref(a):
    """Reduced row echelon form (same shape, zero rows kept) and pivot columns."""
    planes, pivots = _eliminate(a.field, a.data, want_rref=True)
    return GfMatrix(a.field, _indices_from_planes(a.field, planes)), tuple(pivots)


def echelon(a):
    """Row echelon form (unit pivots, not reduced above) and pivot columns."""
    planes, pivots = _eliminate(a.field, a.data, want_rref=False)
    return GfMatrix(a.field, _indices_from_planes(a.field, planes)), tuple(pivots)


def rank(a):
    """Number of pivots of the echelon form."""
    _, pivots = _eliminate(a.field, a.data, want_rref=False)
    return len(pivots)


def row_basis(a):
    """The nonzero rows of rref(a): a canonical basis of the rowspace."""
    r, pivots = rref(a)
    return GfMatrix(a.field, r.data[: len(pivots), :])


def nullspace(a):
    """Basis (as rows) of the right kernel {x : A x^T = 0}."""
    field = a.field
    r, pivots = rref(a)
    nr = len(pivots)
    free = [c for c in range(a.cols) if c not in set(pivots)]
    nf = len(free)
    basis = np.zeros((nf, a.cols), dtype=np.int16)
    if nf:
        basis[np.arange(nf), free] = 1
        if nr:
            # pivot-variable values: negated rref entries at the free columns
            neg = field.NEG[r.data[:nr, :][:, free]]  # (nr, nf)
            basis[:, list(pivots)] = neg.T
    return GfMatrix(field, basis)


def left_nullspace(a):
    """Basis (as rows) of {y : y A = 0}."""
    return nullspace(a.transpose())


def rowspace_intersection(a, b):
    """Canonical basis of rowspace(a) ∩ rowspace(b) via the stacked-kernel method."""
    _check_same_field(a, b)
    if a.cols != b.cols:
        raise DimensionMismatchError(
            f"row spaces live in different ambient spaces: {a.cols} vs {b.cols}"
        )
    s = stack(a, b)
    y = left_nullspace(s)  # rows (x1 | x2) with x1*A + x2*B = 0
    x1 = y.data[:, : a.rows]
    inter = matmul_indices(a.field, x1, a.data)
    return row_basis(GfMatrix(a.field, inter))


def rowspaces_equal(a, b):
    """Exact rowspace equality test."""
    ra = rank(a)
    rb = rank(b)
    if ra != rb:
        return False
    return rank(stack(a, b)) == ra


def in_rowspace(a, w):
    """True iff every row of w lies in rowspace(a)."""
    return rank(stack(a, w)) == rank(a)


def reduce_rows_against(basis, pivots, w):
    """Eliminate rows of w against an echelon basis (as from echelon or rref).

    A row of the result is zero iff the corresponding row of w lies in the
    basis rowspace.  Costs one vector operation per pivot instead of a fresh
    elimination of the stacked matrix."""
    _check_same_field(basis, w)
    if basis.cols != w.cols:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {basis.cols} vs {w.cols}"
        )
    field = basis.field
    data = w.data.astype(np.int16).copy()
    for i, pc in enumerate(pivots):
        coef = data[:, pc]
        if not coef.any():
            continue
        scale = field.MUL[field.INV[basis.data[i, pc]], coef]
        row = field.MUL[scale[:, None], basis.data[i][None, :]]
        data = field.ADD[data, field.NEG[row]]
    return GfMatrix(field, data)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def write_matrix(mat, path):
    """Write the bit-exact text format: "q rows cols" then one line per row."""
    lines = [f"{mat.field.q} {mat.rows} {mat.cols}"]
    for row in mat.data:
        lines.append(" ".join(str(int(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def format_matrix(mat):
    """The file format as a string (used when printing to stdout)."""
    lines = [f"{mat.field.q} {mat.rows} {mat.cols}"]
    for row in mat.data:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def read_matrix(path):
    """Parse the text format back into a GfMatrix (default modulus for GF(q))."""
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise DimensionMismatchError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise DimensionMismatchError(f"bad header line: {lines[0]!r}")
    q, rows, cols = (int(x) for x in head)
    field = field_from_order(q)
    data = np.zeros((rows, cols), dtype=np.int64)
    body = [ln for ln in lines[1:] if ln.strip() != ""]
    if len(body) != rows:
        raise DimensionMismatchError(f"expected {rows} rows, found {len(body)}")
    for i, ln in enumerate(body):
        vals = [int(x) for x in ln.split()]
        if len(vals) != cols:
            raise DimensionMismatchError(f"row {i} has {len(vals)} entries, expected {cols}")
        data[i] = vals
    return GfMatrix(field, data)
