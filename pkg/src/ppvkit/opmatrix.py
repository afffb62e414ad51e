"""Matrices over the Ore ring and their two-sided diagonal reduction.

diagonalize row- and column-reduces an operator matrix C to U*C*V = D
(diagonal) where U and V are accumulated products of elementary operations;
their inverses are accumulated alongside, so unimodularity is witnessed
constructively and every reduction can be re-verified by exact
multiplication.

param_system_solve uses the reduction to find all rational solution pairs
(Z, c) of  dZ/dx + A Z = c_1 B_1 + ... + c_l B_l.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polynomials import ParamRat, PR_ZERO, PR_ONE
from .fields import RF, RF_ZERO, RF_ONE
from .ore import OrePoly, OP_ZERO, OP_ONE, OP_D, ore_mul, apply_op, \
    right_divide, left_divide
from .ratsolve import ScalarParamProblem, SolutionBasis, rational_solutions
from .linalg import nullspace


class OpMat:
    """Rectangular matrix of OrePoly entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = tuple(tuple(e if isinstance(e, OrePoly) else OrePoly((RF(e),))
                                   for e in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged operator matrix")

    @staticmethod
    def identity(n):
        return OpMat([[OP_ONE if i == j else OP_ZERO for j in range(n)]
                      for i in range(n)])

    @staticmethod
    def companion_of_system(A):
        """C = I*D + A for an RF matrix A (as in d/dx Z + A Z)."""
        n = len(A)
        return OpMat([[OP_D + OrePoly((A[i][j],)) if i == j
                       else OrePoly((A[i][j],)) for j in range(n)]
                      for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, OpMat) and self.entries == other.entries

    def __mul__(self, other):
        if not isinstance(other, OpMat):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch in operator matrix product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = OP_ZERO
                for k in range(self.cols):
                    if self.entries[i][k] and other.entries[k][j]:
                        acc = acc + ore_mul(self.entries[i][k],
                                            other.entries[k][j])
                row.append(acc)
            out.append(row)
        return OpMat(out)

    def apply(self, vec):
        """Apply the operator matrix to a vector of RF functions."""
        if self.cols != len(vec):
            raise ValueError("shape mismatch in operator application")
        out = []
        for i in range(self.rows):
            acc = RF_ZERO
            for k in range(self.cols):
                if self.entries[i][k]:
                    acc = acc + apply_op(self.entries[i][k], vec[k])
            out.append(acc)
        return out

    def is_identity(self):
        return (self.rows == self.cols and
                all(self.entries[i][j] == (OP_ONE if i == j else OP_ZERO)
                    for i in range(self.rows) for j in range(self.cols)))

    def is_diagonal(self):
        return all(not self.entries[i][j]
                   for i in range(self.rows) for j in range(self.cols)
                   if i != j)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row)
                               for row in self.entries) + "]"

    __repr__ = __str__


@dataclass
class DiagReduction:
    """U*C*V = D with elementary (hence unimodular) U, V and exact inverses."""
    U: OpMat
    U_inv: OpMat
    V: OpMat
    V_inv: OpMat
    D: OpMat

    def verify(self, C: OpMat) -> bool:
        if not (self.U * C * self.V == self.D and self.D.is_diagonal()):
            return False
        return ((self.U * self.U_inv).is_identity() and
                (self.V_inv * self.V).is_identity())


class _Reducer:
    """Mutable workspace tracking U, U_inv, V, V_inv through elementary ops."""

    def __init__(self, C: OpMat):
        self.m = [list(row) for row in C.entries]
        self.rows, self.cols = C.rows, C.cols
        self.U = [list(r) for r in OpMat.identity(C.rows).entries]
        self.Ui = [list(r) for r in OpMat.identity(C.rows).entries]
        self.V = [list(r) for r in OpMat.identity(C.cols).entries]
        self.Vi = [list(r) for r in OpMat.identity(C.cols).entries]

    def swap_rows(self, i, j):
        if i == j:
            return
        self.m[i], self.m[j] = self.m[j], self.m[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]
        for row in self.Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.m:
            row[i], row[j] = row[j], row[i]
        for row in self.V:
            row[i], row[j] = row[j], row[i]
        self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def add_row(self, i, L, j):
        """row_i += L * row_j (i != j)."""
        self.m[i] = [self.m[i][k] + ore_mul(L, self.m[j][k])
                     for k in range(self.cols)]
        self.U[i] = [self.U[i][k] + ore_mul(L, self.U[j][k])
                     for k in range(self.rows)]
        # U_inv <- U_inv * E^{-1}: col_j -= col_i * L
        for row in self.Ui:
            row[j] = row[j] - ore_mul(row[i], L)

    def add_col(self, j, i, L):
        """col_j += col_i * L (i != j)."""
        for row in self.m:
            row[j] = row[j] + ore_mul(row[i], L)
        for row in self.V:
            row[j] = row[j] + ore_mul(row[i], L)
        # V_inv <- E^{-1} * V_inv: row_i -= L * row_j
        self.Vi[i] = [self.Vi[i][k] - ore_mul(L, self.Vi[j][k])
                      for k in range(self.cols)]

    def scale_row(self, i, u: RF):
        """row_i *= u (u a nonzero function, an invertible order-0 operator)."""
        op = OrePoly((u,))
        inv = OrePoly((RF_ONE / u,))
        self.m[i] = [ore_mul(op, e) for e in self.m[i]]
        self.U[i] = [ore_mul(op, e) for e in self.U[i]]
        for row in self.Ui:
            row[i] = ore_mul(row[i], inv)


def diagonalize(C: OpMat) -> DiagReduction:
    """Two-sided reduction U*C*V = D by elementary row/column operations.

    Pivot strategy: the nonzero entry of minimal operator order, ties broken
    by (row, col) lexicographic order.  Each clearing pass either empties the
    pivot row and column or strictly lowers the minimal order in the working
    submatrix, so the loop terminates.
    """
    red = _Reducer(C)
    m = red.m
    for k in range(min(red.rows, red.cols)):
        while True:
            pivot = None
            for i in range(k, red.rows):
                for j in range(k, red.cols):
                    e = m[i][j]
                    if e and (pivot is None or e.order < m[pivot[0]][pivot[1]].order):
                        pivot = (i, j)
            if pivot is None:
                break
            red.swap_rows(k, pivot[0])
            red.swap_cols(k, pivot[1])
            clean = True
            for i in range(k + 1, red.rows):
                if m[i][k]:
                    Q, R = right_divide(m[i][k], m[k][k])
                    red.add_row(i, -Q, k)
                    if R:
                        clean = False
            for j in range(k + 1, red.cols):
                if m[k][j]:
                    Q, R = left_divide(m[k][j], m[k][k])
                    red.add_col(j, k, -Q)
                    if R:
                        clean = False
            if clean:
                break
        if m[k][k] and not m[k][k].lc.is_one():
            red.scale_row(k, RF_ONE / m[k][k].lc)
    return DiagReduction(U=OpMat(red.U), U_inv=OpMat(red.Ui),
                         V=OpMat(red.V), V_inv=OpMat(red.Vi),
                         D=OpMat(red.m))


@dataclass(frozen=True)
class ParamSolveResult:
    """Basis of W = {(Z, c) : Z' + A Z = sum c_j B_j}; Z a vector over Q(t)(x)."""
    basis: tuple          # of (Z: tuple[RF], c: tuple[ParamRat]) pairs
    certified_complete: bool

    @property
    def dimension(self):
        return len(self.basis)


def param_system_solve(A, Bs, denominator_bound=None, degree_bound=None) -> ParamSolveResult:
    """All rational solution pairs of Z' + A Z = c_1 B_1 + ... + c_l B_l.

    A is an n x n RF matrix, each B_j an RF vector of length n.  The matrix
    C = I*D + A is diagonalized; each diagonal entry gives one scalar
    parameterized problem, and the branches are stitched back together by
    requiring a common c across components.
    """
    n = len(A)
    A = [[RF(e) for e in row] for row in A]
    Bs = [tuple(RF(e) for e in B) for B in Bs]
    ell = len(Bs)
    C = OpMat.companion_of_system(A)
    red = diagonalize(C)
    UB = [red.U.apply(list(B)) for B in Bs]

    branch = []
    certified = True
    for i in range(n):
        L = red.D.entries[i][i]
        rhs = tuple(UB[j][i] for j in range(ell))
        sol = rational_solutions(ScalarParamProblem(L, rhs),
                                 numerator_degree_bound=degree_bound,
                                 denominator_power_bound=denominator_bound)
        certified = certified and sol.certified_complete
        branch.append(sol.elements)

    # unknowns: one lambda per basis element of each branch; constrain the
    # c-vectors of all branches to agree.
    offsets = []
    total = 0
    for elems in branch:
        offsets.append(total)
        total += len(elems)
    rows = []
    for i in range(1, n):
        for q in range(ell):
            row = [PR_ZERO] * total
            for mdx, (_y, c) in enumerate(branch[0]):
                row[offsets[0] + mdx] = c[q]
            for mdx, (_y, c) in enumerate(branch[i]):
                row[offsets[i] + mdx] = row[offsets[i] + mdx] - c[q]
            rows.append(row)
    if rows:
        kernel = nullspace(rows, PR_ONE, PR_ZERO)
    else:
        kernel = [[PR_ONE if p == q else PR_ZERO for p in range(total)]
                  for q in range(total)]

    basis = []
    for lam in kernel:
        X = []
        for i in range(n):
            acc = RF_ZERO
            for mdx, (y, _c) in enumerate(branch[i]):
                coef = lam[offsets[i] + mdx]
                if coef:
                    acc = acc + RF(coef) * y
            X.append(acc)
        c = tuple(_sum_pr(lam[offsets[0] + mdx] * cq
                          for mdx, (_y, cvec) in enumerate(branch[0])
                          for cq in [cvec[q]])
                  for q in range(ell))
        Z = red.V.apply(X)
        basis.append((tuple(Z), c))
    return ParamSolveResult(tuple(basis), certified)


def _sum_pr(items):
    acc = PR_ZERO
    for it in items:
        acc = acc + it
    return acc


def verify_param_solution(A, Bs, Z, c) -> bool:
    """Check d/dx Z + A Z == sum c_j B_j exactly."""
    n = len(A)
    lhs = [Z[i].dx() + _sum_rf(RF(A[i][k]) * Z[k] for k in range(n))
           for i in range(n)]
    rhs = [_sum_rf(RF(c[j]) * RF(Bs[j][i]) for j in range(len(Bs)))
           for i in range(n)]
    return lhs == rhs


def _sum_rf(items):
    acc = RF_ZERO
    for it in items:
        acc = acc + it
    return acc
