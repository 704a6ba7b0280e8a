"""Multi-index bases and matrix powers: Kronecker, compound, symmetric.

Basis orders are fixed so coordinates are reproducible bit for bit:
wedge indices (strictly increasing tuples) and tensor indices run in
ascending lexicographic order, exponent vectors of symmetric powers in
descending graded-lex order, so e.g. for two variables and degree 2 the
monomial basis reads x^2, xy, y^2.
"""

from __future__ import annotations

import itertools
import math
import time

from grembed.linalg import Matrix, ShapeError, matmul, minor
from grembed.reports import CheckReport
from grembed.rings import RingMismatchError


def wedge_indices(n: int, r: int) -> list:
    """Strictly increasing r-tuples in [0, n), ascending lex."""
    return list(itertools.combinations(range(n), r))


def sym_indices(n: int, r: int) -> list:
    """Exponent vectors of length n and total degree r, descending lex."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), r, n)
    return out


def tensor_indices(dims) -> list:
    """Tuples (i_1, ..., i_r) with i_k in [0, dims[k]), ascending lex."""
    return list(itertools.product(*[range(d) for d in dims]))


def multinomial(top: int, parts) -> int:
    """top! / prod(parts!), and 0 whenever any part is negative.

    For all-nonnegative parts the sum must equal top.
    """
    parts = list(parts)
    if any(p < 0 for p in parts):
        return 0
    if sum(parts) != top:
        raise ValueError(f"parts {parts} do not sum to {top}")
    result = 1
    acc = 0
    for p in parts:
        acc += p
        result *= math.comb(acc, p)
    return result


def _common_ring(ms):
    ring = ms[0].ring
    for m in ms[1:]:
        if m.ring != ring:
            raise RingMismatchError("matrices over different rings")
    return ring


def kronecker(ms) -> Matrix:
    """Matrix of the tensor product map in lexicographic tensor bases.

    Entry at (I, J) is the product of the factor entries m_k[I_k, J_k];
    row and column counts multiply.
    """
    ms = list(ms)
    if not ms:
        raise ValueError("kronecker needs at least one matrix")
    ring = _common_ring(ms)
    rows_idx = tensor_indices([m.rows for m in ms])
    cols_idx = tensor_indices([m.cols for m in ms])
    mul = ring.mul
    entries = []
    for idx_r in rows_idx:
        for idx_c in cols_idx:
            acc = ms[0].entry(idx_r[0], idx_c[0])
            for k in range(1, len(ms)):
                acc = mul(acc, ms[k].entry(idx_r[k], idx_c[k]))
            entries.append(acc)
    return Matrix(ring, len(rows_idx), len(cols_idx), tuple(entries))


def compound(m: Matrix, r: int) -> Matrix:
    """Exterior power matrix: entry (I, J) is the r-minor of m on rows I, cols J."""
    if r < 1 or r > min(m.rows, m.cols):
        raise ShapeError(
            f"compound order must satisfy 1 <= r <= min(rows, cols), got r={r}"
        )
    rows_sel = wedge_indices(m.rows, r)
    cols_sel = wedge_indices(m.cols, r)
    entries = tuple(minor(m, I, J) for I in rows_sel for J in cols_sel)
    return Matrix(m.ring, len(rows_sel), len(cols_sel), entries)


def _linear_form_power(ring, coeffs, e):
    """Expansion of (sum_i coeffs[i] x_i)^e as {exponent vector: value}."""
    n = len(coeffs)
    out = {}
    for exps in sym_indices(n, e):
        c = multinomial(e, exps)
        value = ring.from_int(c)
        if ring.is_zero(value):
            continue
        for coeff, power in zip(coeffs, exps):
            if power:
                value = ring.mul(value, ring.pow(coeff, power))
        if not ring.is_zero(value):
            out[exps] = value
    return out


def _expansion_mul(ring, a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            exps = tuple(x + y for x, y in zip(e1, e2))
            c = ring.mul(c1, c2)
            if exps in out:
                c = ring.add(out[exps], c)
            if ring.is_zero(c):
                out.pop(exps, None)
            else:
                out[exps] = c
    return out


def sym_power(m: Matrix, r: int) -> Matrix:
    """Symmetric power matrix in monomial bases (no divided powers).

    The column at exponent vector J is the monomial expansion of the product
    over k of (column k of m, read as a linear form) to the power J_k, so
    multinomial coefficients appear in the entries and characteristic-p
    collapse is faithfully represented.
    """
    if r < 1:
        raise ShapeError(f"symmetric power order must be >= 1, got r={r}")
    ring = m.ring
    target = sym_indices(m.rows, r)
    source = sym_indices(m.cols, r)
    columns = []
    col_forms = [m.col_list(j) for j in range(m.cols)]
    for J in source:
        acc = {(0,) * m.rows: ring.one}
        for k, e in enumerate(J):
            if e:
                acc = _expansion_mul(ring, acc, _linear_form_power(ring, col_forms[k], e))
        columns.append([acc.get(K, ring.zero) for K in target])
    entries = tuple(columns[j][i] for i in range(len(target)) for j in range(len(source)))
    return Matrix(ring, len(target), len(source), entries)


def check_det_tensor_identity(ms) -> CheckReport:
    """Check det of a Kronecker product of square factors against the
    product of factor determinants raised to the complementary sizes."""
    started = time.perf_counter()
    ms = list(ms)
    if not ms:
        raise ValueError("need at least one matrix")
    ring = _common_ring(ms)
    from grembed.linalg import determinant

    for m in ms:
        if m.rows != m.cols:
            raise ShapeError("tensor determinant identity needs square factors")
    sizes = [m.rows for m in ms]
    total = math.prod(sizes)
    lhs = determinant(kronecker(ms))
    rhs = ring.one
    for m, n_i in zip(ms, sizes):
        rhs = ring.mul(rhs, ring.pow(determinant(m), total // n_i))
    failures = []
    if lhs != rhs:
        failures.append(
            {
                "matrices": [m.to_json() for m in ms],
                "lhs": ring.value_to_json(lhs),
                "rhs": ring.value_to_json(rhs),
            }
        )
    parameters = {f"n{i + 1}": n for i, n in enumerate(sizes)}
    return CheckReport.build(
        "det-tensor-identity", ring, parameters, 1, failures, started
    )


def _check_det_power_identity(name, m, d, power_fn, exponent) -> CheckReport:
    started = time.perf_counter()
    if m.rows != m.cols:
        raise ShapeError(f"{name} needs a square matrix")
    from grembed.linalg import determinant

    ring = m.ring
    lhs = determinant(power_fn(m, d))
    rhs = ring.pow(determinant(m), exponent)
    failures = []
    if lhs != rhs:
        failures.append(
            {
                "matrix": m.to_json(),
                "lhs": ring.value_to_json(lhs),
                "rhs": ring.value_to_json(rhs),
            }
        )
    return CheckReport.build(name, ring, {"n": m.rows, "d": d}, 1, failures, started)


def check_det_sym_identity(m: Matrix, d: int) -> CheckReport:
    """det(Sym^d M) must equal det(M)^C(n+d-1, d-1)."""
    exponent = math.comb(m.rows + d - 1, d - 1)
    return _check_det_power_identity("det-sym-identity", m, d, sym_power, exponent)


def check_det_wedge_identity(m: Matrix, d: int) -> CheckReport:
    """det of the d-th compound must equal det(M)^C(n-1, d-1)."""
    exponent = math.comb(m.rows - 1, d - 1)
    return _check_det_power_identity("det-wedge-identity", m, d, compound, exponent)
