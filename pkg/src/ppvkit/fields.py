"""The field tower Q ⊂ Q(t) ⊂ Q(t)(x) with the two commuting derivations.

RF is the working field: rational functions in x whose coefficients are
rational functions in t.  Dx differentiates in x (t constant), Dt in t
(x constant).  Everything is canonical (monic denominators, reduced), so
structural equality is mathematical equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomials import (QPoly, ParamRat, PR_ONE, PR_ZERO, qpoly_lcm,
                          qpoly_gcd)

# Derivation tags.  Tags must be distinct; all derivations commute.  Extra
# parameter tags Dt2, Dt3, ... are structurally valid but their arithmetic
# (fields with several parameters) is out of scope for v1.
DX = "Dx"
DT = "Dt"


def is_param_tag(tag: str) -> bool:
    return tag.startswith("Dt")


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class XPoly:
    """Polynomial in x with ParamRat coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, XPoly):
            self.coeffs = coeffs.coeffs
            return
        if isinstance(coeffs, (int, Fraction, QPoly, ParamRat)):
            coeffs = (coeffs,)
        self.coeffs = _trim([c if isinstance(c, ParamRat) else ParamRat(c)
                             for c in coeffs])

    @staticmethod
    def var():
        return XPoly((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else PR_ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def __eq__(self, other):
        other = _coerce_xp(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("XPoly", self.coeffs))

    def __neg__(self):
        return XPoly([-c for c in self.coeffs])

    def __add__(self, other):
        other = _coerce_xp(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_xp(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_xp(other) - self

    def __mul__(self, other):
        other = _coerce_xp(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XP_ZERO
        out = [PR_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return XPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = XP_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, other):
        other = _coerce_xp(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lc
        quot = [PR_ZERO] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                q = c / lb
                quot[i - db] = q
                for j, bc in enumerate(other.coeffs):
                    rem[i - db + j] = rem[i - db + j] - q * bc
        return XPoly(quot), XPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(_coerce_xp(other))
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self or self.lc.is_one():
            return self
        inv = PR_ONE / self.lc
        return XPoly([c * inv for c in self.coeffs])

    def dx(self):
        return XPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def dt(self):
        return XPoly([c.dt() for c in self.coeffs])

    def eval(self, value):
        """Horner evaluation at a ParamRat (or compatible) point."""
        if not self.coeffs:
            return PR_ZERO * value
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        return acc

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else PR_ZERO

    def __str__(self):
        return xpoly_str(self)

    def __repr__(self):
        return f"XPoly({self})"


def _coerce_xp(v):
    if isinstance(v, XPoly):
        return v
    if isinstance(v, (int, Fraction, QPoly, ParamRat)):
        return XPoly(v)
    return None


XP_ZERO = XPoly()
XP_ONE = XPoly(1)
XP_X = XPoly.var()


def xpoly_str(p: XPoly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        neg = c.num.lc < 0
        mag = -c if neg else c
        if k == 0:
            body = str(mag)
            if " " in body:
                body = f"({body})"
        else:
            v = var if k == 1 else f"{var}^{k}"
            if mag.is_one():
                body = v
            else:
                cs = str(mag)
                if " " in cs:
                    cs = f"({cs})"
                body = f"{cs}*{v}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _clear_t(p: XPoly):
    """Scale p into Q[t][x]: returns (list of QPoly, common QPoly denominator)."""
    den = QPoly(1)
    for c in p.coeffs:
        den = qpoly_lcm(den, c.den)
    nums = [c.num * den.exact_div(c.den) for c in p.coeffs]
    return nums, den


def _qlist_content(nums):
    g = QPoly()
    for c in nums:
        if c:
            g = qpoly_gcd(g, c)
            if g.is_one():
                break
    return g


def _qlist_primitive(nums):
    g = _qlist_content(nums)
    if g and not g.is_one():
        nums = [c.exact_div(g) for c in nums]
    return nums


def xpoly_gcd(a: XPoly, b: XPoly) -> XPoly:
    """Monic gcd in Q(t)[x] via the primitive PRS over Q[t]."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    A = _qlist_primitive(_clear_t(a)[0])
    B = _qlist_primitive(_clear_t(b)[0])
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _qlist_primitive(_bprem(A, B))
        A, B = B, R
    return XPoly([ParamRat(c) for c in A]).monic()


def _bprem(a, b):
    """Pseudo-remainder for QPoly coefficient lists (poly in x over Q[t])."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db:
        ci = a[-1]
        a = [c * lb for c in a]
        shift = len(a) - 1 - db
        for j, bc in enumerate(b):
            a[shift + j] = a[shift + j] - ci * bc
        while a and not a[-1]:
            a.pop()
        if not a:
            break
    return a


def xpoly_xgcd(a: XPoly, b: XPoly):
    """Extended gcd over the field Q(t): returns (g, s, u) with s*a + u*b = g monic."""
    r0, r1 = a, b
    s0, s1 = XP_ONE, XP_ZERO
    t0, t1 = XP_ZERO, XP_ONE
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        raise ValueError("xgcd of (0, 0) is undefined")
    lc_inv = PR_ONE / r0.lc
    return r0.monic(), s0 * lc_inv, t0 * lc_inv


class RF:
    """Element of Q(t)(x): num/den in Q(t)[x], den monic in x, reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if den is None:
            if isinstance(num, RF):
                self.num, self.den = num.num, num.den
                return
            self.num = _coerce_xp(num) if not isinstance(num, XPoly) else num
            if self.num is None:
                raise TypeError(f"cannot build RF from {num!r}")
            self.den = XP_ONE
            return
        num = num if isinstance(num, XPoly) else _coerce_xp(num)
        den = den if isinstance(den, XPoly) else _coerce_xp(den)
        if den is None or num is None:
            raise TypeError("cannot build RF")
        if not den:
            raise ZeroDivisionError("zero denominator in Q(t)(x)")
        if not num:
            self.num, self.den = XP_ZERO, XP_ONE
            return
        g = xpoly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        if not den.lc.is_one():
            inv = PR_ONE / den.lc
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    @staticmethod
    def x():
        return RF(XP_X)

    @staticmethod
    def t():
        return RF(XPoly(ParamRat.var()))

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RF", self.num.coeffs, self.den.coeffs))

    def __neg__(self):
        r = RF.__new__(RF)
        r.num, r.den = -self.num, self.den
        return r

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RF(self.num + other.num, self.den)
        return RF(self.num * other.den + other.num * self.den,
                  self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_rf(other) - self

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return RF_ZERO
        return RF(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero in Q(t)(x)")
        return RF(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, k):
        if k < 0:
            return (RF_ONE / self) ** (-k)
        return RF(self.num ** k, self.den ** k)

    def inv(self):
        return RF_ONE / self

    def dx(self):
        n, d = self.num, self.den
        if d.is_one():
            return RF(n.dx())
        return RF(n.dx() * d - n * d.dx(), d * d)

    def dt(self):
        n, d = self.num, self.den
        if d.is_one():
            return RF(n.dt())
        return RF(n.dt() * d - n * d.dt(), d * d)

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant_x(self):
        """True when the value lies in Q(t)."""
        return self.den.is_one() and self.num.degree <= 0

    def as_paramrat(self):
        if not self.is_constant_x():
            raise ValueError(f"{self} is not in Q(t)")
        return self.num.coeff(0)

    def poly_part(self):
        """Quotient of num by den: the polynomial part of the expansion."""
        return self.num // self.den

    def __str__(self):
        ns = xpoly_str(self.num)
        if self.den.is_one():
            return ns
        ds = xpoly_str(self.den)
        if " " in ns:
            ns = f"({ns})"
        if " " in ds or "*" in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RF({self})"


def _coerce_rf(v):
    if isinstance(v, RF):
        return v
    if isinstance(v, (int, Fraction, QPoly, ParamRat, XPoly)):
        return RF(v)
    return None


RF_ZERO = RF(0)
RF_ONE = RF(1)
RF_X = RF.x()
RF_T = RF.t()


def normalize(num, den) -> RF:
    """Canonical reduced form of num/den; rejects a zero denominator."""
    return RF(num, den)


def derive(f: RF, tag: str) -> RF:
    """Apply a derivation by tag: Dx or Dt."""
    if tag == DX:
        return f.dx()
    if tag == DT:
        return f.dt()
    if is_param_tag(tag):
        raise ValueError(f"parameter tag {tag} has no arithmetic in v1 "
                         "(single-parameter field Q(t))")
    raise ValueError(f"unknown derivation tag {tag!r}")


class UnsplitFactorError(ValueError):
    """A denominator factor the splitter cannot handle; carries the factor."""

    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"unsplit denominator factor: {factor}")


@dataclass(frozen=True)
class PFTerm:
    """One summand numer/p^k of a partial fraction decomposition."""
    numer: XPoly
    p: XPoly
    k: int


@dataclass(frozen=True)
class PartialFractions:
    poly_part: XPoly
    terms: tuple

    def reconstruct(self) -> RF:
        total = RF(self.poly_part)
        for term in self.terms:
            total = total + RF(term.numer, term.p ** term.k)
        return total


def partial_fractions_x(f: RF) -> PartialFractions:
    """Full partial fraction decomposition of f over the factored denominator.

    The denominator is factored into monic irreducibles over Q(t); each term
    has numerator degree < deg p.  The sum of poly_part and all terms
    reconstructs f exactly.
    """
    from .factoring import factor_x

    poly, rest = f.num.divmod(f.den)
    if not rest:
        return PartialFractions(poly, ())
    factors = factor_x(f.den)
    terms = []
    for p, e in factors:
        pe = p ** e
        u = f.den.exact_div(pe)
        # component c/p^e with c = rest * u^{-1} mod p^e
        if u.is_one():
            c = rest % pe
        else:
            g, s, _ = xpoly_xgcd(u, pe)
            if not g.is_one():
                raise UnsplitFactorError(p)
            c = (rest * s) % pe
        # p-adic digits of c
        for j in range(e, 0, -1):
            c, digit = c.divmod(p)
            if digit:
                terms.append(PFTerm(digit, p, j))
    terms.sort(key=lambda T: (T.p.degree, str(T.p), T.k))
    return PartialFractions(poly, tuple(terms))
