"""Exact dense linear algebra over any of the tower fields.

Matrices are lists of lists of field elements (ParamRat, RF, ...).  Field
elements must support +, -, *, /, bool (zero test) and equality.  Everything
here is fraction-based Gaussian elimination; fine at desk scale.
"""

from __future__ import annotations


def mat_shape(m):
    return len(m), len(m[0]) if m else 0


def mat_identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_zero(r, c, zero):
    return [[zero for _ in range(c)] for _ in range(r)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def mat_mul(a, b):
    n, k = mat_shape(a)
    k2, m = mat_shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} * {k2}x{m}")
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = None
            for l in range(k):
                if ai[l]:
                    term = ai[l] * b[l][j]
                    acc = term if acc is None else acc + term
            if acc is None:
                acc = ai[0] * b[0][j]  # zero of the right type
            row.append(acc)
        out.append(row)
    return out


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_apply(a, v):
    """Matrix times column vector (vector as a flat list)."""
    return [sum_nonzero([ai * vi for ai, vi in zip(row, v)]) for row in a]


def sum_nonzero(items):
    acc = None
    for it in items:
        acc = it if acc is None else acc + it
    if acc is None:
        raise ValueError("empty sum without a zero element")
    return acc


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(mat):
    """Reduced row echelon form.  Returns (rows, pivot_columns); input intact."""
    rows = [list(r) for r in mat]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(mat, one, zero):
    """Basis of the right kernel as a list of flat vectors."""
    if not mat:
        return []
    ncols = len(mat[0])
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs, zero):
    """One solution of mat * v = rhs, or None when inconsistent."""
    if not mat:
        return None
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    ncols = len(mat[0])
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    v = [zero] * ncols
    for r, pc in enumerate(pivots):
        v[pc] = rows[r][ncols]
    return v


def mat_inverse(a, one, zero):
    """Inverse of a square matrix, or None when singular."""
    n = len(a)
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(a)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in rows[:n]]


def mat_det(a, one, zero):
    """Determinant by fraction-full elimination (exact field ops)."""
    n = len(a)
    m = [list(row) for row in a]
    det = one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            return zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c]
        m[c] = [v / inv for v in m[c]]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[c])]
    return det


def row_space_basis(vectors):
    """Echelonized basis of the span of the given flat vectors."""
    if not vectors:
        return []
    rows, _ = rref(vectors)
    return rows


def in_span(basis_rows, vector):
    """Whether vector lies in the row space spanned by an echelonized basis."""
    v = list(vector)
    for row in basis_rows:
        lead = next((c for c, val in enumerate(row) if val), None)
        if lead is not None and v[lead]:
            f = v[lead]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


def subspace_leq(basis_a, basis_b):
    """Whether span(basis_a) is contained in span(basis_b)."""
    eb = row_space_basis(basis_b)
    return all(in_span(eb, v) for v in basis_a)
