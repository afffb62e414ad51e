"""Bridge to sympy for polynomial factorization and root extraction.

Only factorization-flavored questions go through sympy (irreducible factors
of denominators, roots of indicial and characteristic polynomials, exact
square roots in Q(t)).  All field arithmetic stays in ppvkit's own types;
conversions are exact.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .polynomials import QPoly, ParamRat, PR_ONE, qpoly_lcm
from .fields import XPoly, RF, _clear_t, _qlist_primitive

_x, _t, _nu = sympy.symbols("x t nu")


def qpoly_to_sympy(p: QPoly, sym=_t):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sym ** i
                       for i, c in enumerate(p.coeffs)])


def paramrat_to_sympy(c: ParamRat, sym=_t):
    return qpoly_to_sympy(c.num, sym) / qpoly_to_sympy(c.den, sym)


def xpoly_to_sympy(p: XPoly, xsym=_x, tsym=_t):
    return sympy.Add(*[paramrat_to_sympy(c, tsym) * xsym ** i
                       for i, c in enumerate(p.coeffs)])


def rf_to_sympy(f: RF, xsym=_x, tsym=_t):
    return sympy.together(xpoly_to_sympy(f.num, xsym, tsym) /
                          xpoly_to_sympy(f.den, xsym, tsym))


def sympy_to_qpoly(expr, sym=_t) -> QPoly:
    poly = sympy.Poly(sympy.expand(expr), sym, domain="QQ")
    if poly.is_zero:
        return QPoly()
    coeffs = [Fraction(0)] * (poly.degree() + 1)
    for (k,), c in poly.terms():
        c = sympy.Rational(c)
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return QPoly(coeffs)


def sympy_to_paramrat(expr, sym=_t) -> ParamRat:
    num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
    return ParamRat(sympy_to_qpoly(num, sym), sympy_to_qpoly(den, sym))


def sympy_to_xpoly(expr, xsym=_x, tsym=_t) -> XPoly:
    poly = sympy.Poly(sympy.expand(expr), xsym)
    coeffs = {}
    for (k,), c in poly.terms():
        coeffs[k] = sympy_to_paramrat(c, tsym)
    if not coeffs:
        return XPoly()
    out = [coeffs.get(k, ParamRat(0)) for k in range(max(coeffs) + 1)]
    return XPoly(out)


def _xpoly_key(p: XPoly):
    return tuple((c.num.coeffs, c.den.coeffs) for c in p.coeffs)


_factor_cache = {}


def factor_x(p: XPoly):
    """Monic irreducible factorization of p over Q(t) in x.

    Returns a list of (factor, multiplicity), factor monic in x, sorted
    deterministically.  Factors of x-degree 0 (units of Q(t)[x]) are dropped.
    """
    key = _xpoly_key(p)
    hit = _factor_cache.get(key)
    if hit is not None:
        return hit
    nums, _ = _clear_t(p)
    nums = _qlist_primitive(nums)
    expr = sympy.Add(*[qpoly_to_sympy(c) * _x ** i for i, c in enumerate(nums)])
    _, factors = sympy.factor_list(expr, _x, _t)
    out = []
    for fac, mult in factors:
        fp = sympy.Poly(fac, _x)
        if fp.degree() < 1:
            continue
        out.append((sympy_to_xpoly(fac).monic(), int(mult)))
    out.sort(key=lambda fe: (fe[0].degree, str(fe[0])))
    _factor_cache[key] = out
    return out


def qt_roots(coeffs):
    """Roots in Q(t) of sum(coeffs[k] * nu^k), coeffs ParamRat, via factoring.

    Returns a deterministically sorted list of ParamRat roots (no
    multiplicities).  Roots in proper algebraic extensions are not reported.
    """
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every root")
    den = QPoly(1)
    for c in coeffs:
        den = qpoly_lcm(den, c.den)
    expr = sympy.Add(*[qpoly_to_sympy(c.num * den.exact_div(c.den)) * _nu ** k
                       for k, c in enumerate(coeffs)])
    _, factors = sympy.factor_list(expr, _nu, _t)
    roots = []
    for fac, _mult in factors:
        fp = sympy.Poly(fac, _nu)
        if fp.degree() != 1:
            continue
        a, b = fp.nth(1), fp.nth(0)
        roots.append(sympy_to_paramrat(-b) / sympy_to_paramrat(a))
    roots.sort(key=str)
    return roots


def integer_roots(coeffs):
    """Integer roots (as Python ints) of a nu-polynomial over Q(t)."""
    out = []
    for r in qt_roots(coeffs):
        if r.is_integer():
            out.append(int(r.as_fraction()))
    return sorted(set(out))


def paramrat_sqrt(c: ParamRat):
    """Square root of c in Q(t), or None."""
    from .polynomials import qpoly_sqrt
    if not c:
        return ParamRat(0)
    rn = qpoly_sqrt(c.num)
    rd = qpoly_sqrt(c.den)
    if rn is None or rd is None:
        # try after scaling: num/den = (num*den)/den^2
        rnd = qpoly_sqrt(c.num * c.den)
        if rnd is None:
            return None
        return ParamRat(rnd, c.den)
    return ParamRat(rn, rd)
