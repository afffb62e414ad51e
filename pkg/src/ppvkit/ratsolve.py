"""Rational solutions over Q(t)(x) of L y = c_1 b_1 + ... + c_l b_l.

The unknown constants c_i range over Q(t).  The method is the classical
bounds-plus-linear-algebra one:

  1. clear denominators so the operator and right-hand sides are polynomial;
  2. bound the denominator of any solution through the indicial polynomial
     at each irreducible factor of the leading coefficient (integer roots
     extracted exactly; roots outside Q(t) cannot be integers and are
     irrelevant for rational solutions);
  3. bound the numerator degree through the indicial polynomial at infinity;
  4. solve one exact linear system over Q(t) for the numerator coefficients
     and the c_i together.

Completeness is certified whenever the bounds come from the indicial
analysis (always, unless a caller-supplied fallback had to stand in).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .polynomials import ParamRat, PR_ZERO, PR_ONE
from .fields import XPoly, XP_ONE, RF, RF_ZERO, RF_ONE, xpoly_gcd
from .ore import OrePoly, ore_mul, apply_op
from . import factoring
from .factoring import _x, _t, _nu
from .linalg import nullspace


@dataclass(frozen=True)
class ScalarParamProblem:
    """L y = c_1 b_1 + ... + c_l b_l with L != 0 and b_i in Q(t)(x)."""
    L: OrePoly
    rhs: tuple

    def __post_init__(self):
        if not self.L:
            raise ValueError("the operator of a scalar problem must be nonzero")
        object.__setattr__(self, "rhs", tuple(RF(b) for b in self.rhs))


@dataclass(frozen=True)
class SolutionBasis:
    """Q(t)-basis of the solution space; elements are (y, c) pairs."""
    elements: tuple
    certified_complete: bool

    @property
    def dimension(self):
        return len(self.elements)

    def homogeneous(self):
        return [y for y, c in self.elements if not any(c)]


def _clear_denominators(L, rhs):
    """Scale the equation so operator coefficients and rhs are in Q(t)[x]."""
    lcm = XP_ONE
    for c in L.coeffs:
        lcm = _xlcm(lcm, c.den)
    for b in rhs:
        lcm = _xlcm(lcm, b.den)
    mu = RF(lcm)
    coeffs = [(c * mu).num for c in L.coeffs]
    rhs_p = [(b * mu).num for b in rhs]
    return coeffs, rhs_p


def _xlcm(a, b):
    if a.is_one():
        return b
    if b.is_one():
        return a
    return (a * b).exact_div(xpoly_gcd(a, b)).monic()


def _vx(poly, p):
    """Multiplicity of the irreducible p in a nonzero polynomial."""
    count = 0
    while True:
        q, r = poly.divmod(p)
        if r:
            return count
        poly = q
        count += 1


def _indicial_finite(coeffs, p):
    """Indicial data of sum(a_i D^i) at the irreducible p (sympy-backed).

    Returns (sigma, integer_roots): v_p(L y) >= v_p(y) + sigma for every y,
    with equality unless v_p(y) is a root of the indicial polynomial; the
    integer roots are returned exactly.
    """
    d = len(coeffs) - 1
    p_s = sympy.expand(factoring.xpoly_to_sympy(p))
    dp_s = sympy.diff(p_s, _x)
    G = sympy.Integer(1)
    Gs = [G]
    for i in range(d):
        G = sympy.expand((_nu - i) * dp_s * G + p_s * sympy.diff(G, _x))
        Gs.append(G)
    E = sympy.expand(sympy.Add(*[
        factoring.xpoly_to_sympy(coeffs[i]) * p_s ** (d - i) * Gs[i]
        for i in range(d + 1)]))
    E = sympy.together(E)
    E = sympy.expand(sympy.fraction(E)[0])  # t-denominators are harmless here
    k = 0
    while True:
        q, r = sympy.div(E, p_s, _x)
        if sympy.expand(r) != 0:
            break
        E = sympy.expand(q)
        k += 1
    res = sympy.expand(sympy.resultant(p_s, E, _x))
    roots = _integer_roots_sympy(res)
    return k - d, roots


def _integer_roots_sympy(expr):
    """Integer roots in nu of a (nu, t)-polynomial, exactly."""
    if expr == 0:
        raise ArithmeticError("indicial resultant vanished identically")
    poly = sympy.Poly(expr, _nu)
    if poly.degree() <= 0:
        return []
    roots = []
    for fac, _m in sympy.factor_list(expr, _nu, _t)[1]:
        fp = sympy.Poly(fac, _nu)
        if fp.degree() != 1:
            continue
        root = sympy.together(-fp.nth(0) / fp.nth(1))
        if root.is_Integer:
            roots.append(int(root))
    return sorted(set(roots))


def _falling_factorial(i):
    """nu*(nu-1)*...*(nu-i+1) as a ParamRat coefficient list in nu."""
    coeffs = [PR_ONE]
    for k in range(i):
        # multiply by (nu - k)
        shifted = [PR_ZERO] + coeffs
        coeffs = [s - ParamRat(k) * c for s, c in
                  zip(shifted, coeffs + [PR_ZERO])]
    return coeffs


def _indicial_infinity(coeffs):
    """(s_inf, nonneg integer roots) of the indicial polynomial at infinity."""
    d = len(coeffs) - 1
    s_inf = None
    for i, a in enumerate(coeffs):
        if a:
            v = a.degree - i
            if s_inf is None or v > s_inf:
                s_inf = v
    ind = [PR_ZERO] * (d + 1)
    for i, a in enumerate(coeffs):
        if a and a.degree - i == s_inf:
            ff = _falling_factorial(i)
            for k, c in enumerate(ff):
                ind[k] = ind[k] + a.lc * c
    while ind and not ind[-1]:
        ind.pop()
    roots = [r for r in factoring.integer_roots(ind)] if ind else []
    return s_inf, [r for r in roots if r >= 0]


def _universal_denominator(coeffs, rhs_p, extra_power=0):
    """Denominator Q multiplying away all possible poles of solutions."""
    lead = coeffs[-1]
    Q = XP_ONE
    for p, _e in factoring.factor_x(lead):
        sigma, roots = _indicial_finite(coeffs, p)
        candidates = [r for r in roots if r < 0]
        nonzero_rhs = [b for b in rhs_p if b]
        if nonzero_rhs:
            beta = min(_vx(b, p) for b in nonzero_rhs)
            if beta - sigma < 0:
                candidates.append(beta - sigma)
        if candidates:
            m = -min(candidates) + extra_power
            Q = Q * p ** m
    return Q


def rational_solutions(problem: ScalarParamProblem,
                       numerator_degree_bound=None,
                       denominator_power_bound=None) -> SolutionBasis:
    """Q(t)-basis of {(y, c) : L y = sum c_j b_j, y rational}.

    Caller bounds, when given, only enlarge the search space; completeness
    stays certified because the indicial bounds are always derived.
    """
    L, rhs = problem.L, list(problem.rhs)
    ell = len(rhs)
    if L.order == 0:
        a0 = RF_ONE / L.coeffs[0]
        elements = []
        for j in range(ell):
            c = tuple(PR_ONE if i == j else PR_ZERO for i in range(ell))
            elements.append((rhs[j] * a0, c))
        return SolutionBasis(tuple(elements), True)

    coeffs, rhs_p = _clear_denominators(L, rhs)
    Q = _universal_denominator(coeffs, rhs_p,
                               extra_power=denominator_power_bound or 0)

    if Q.degree > 0:
        LQ = ore_mul(OrePoly([RF(c) for c in coeffs]),
                     OrePoly.constant(RF(XP_ONE, Q)))
        lcm = XP_ONE
        for c in LQ.coeffs:
            lcm = _xlcm(lcm, c.den)
        mu = RF(lcm)
        coeffs = [(c * mu).num for c in LQ.coeffs]
        rhs_p = [(RF(b) * mu).num for b in rhs_p]

    s_inf, roots_inf = _indicial_infinity(coeffs)
    candidates = list(roots_inf)
    nonzero_rhs = [b for b in rhs_p if b]
    if nonzero_rhs:
        candidates.append(max(b.degree for b in nonzero_rhs) - s_inf)
    if numerator_degree_bound is not None:
        candidates.append(numerator_degree_bound)
    N = max(candidates) if candidates else -1

    # linear system over Q(t) in z_0..z_N and c_1..c_ell
    Lbar = OrePoly([RF(c) for c in coeffs])
    images = []
    xk = RF_ONE
    for k in range(N + 1):
        images.append(apply_op(Lbar, xk).num)
        xk = xk * RF.x()
    max_deg = max([w.degree for w in images if w] +
                  [b.degree for b in nonzero_rhs] + [0])
    rows = []
    for degree in range(max_deg + 1):
        row = [w.coeff(degree) for w in images]
        row += [-b.coeff(degree) for b in rhs_p]
        rows.append(row)
    kernel = nullspace(rows, PR_ONE, PR_ZERO)

    qrf = RF(XP_ONE, Q)
    elements = []
    for vec in kernel:
        zpoly = XPoly(vec[:N + 1])
        y = RF(zpoly) * qrf
        c = tuple(vec[N + 1:])
        elements.append((y, c))
    return SolutionBasis(tuple(elements), True)


def hyperexp_rank1(a: RF, n_max: int):
    """Smallest n in 1..n_max with a nonzero rational solution of y' = n*a*y.

    Returns None when no such n exists up to the bound; each n is decided
    exactly through rational_solutions on D - n*a.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    for n in range(1, n_max + 1):
        L = OrePoly([RF(-n) * a, RF_ONE])
        basis = rational_solutions(ScalarParamProblem(L, ()))
        if any(y for y, _c in basis.elements):
            return n
    return None
