"""Dense univariate polynomial arithmetic for the ground levels of the tower.

QPoly is a polynomial in one variable (written ``t``) with Fraction
coefficients; ParamRat is the fraction field Q(t) built from it.  Both are
immutable and kept in canonical form, so ``==`` is mathematical equality.
"""

from __future__ import annotations

import math
from fractions import Fraction

Q = Fraction

_Q0 = Q(0)
_Q1 = Q(1)


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class QPoly:
    """Polynomial in t over Q, dense coefficient tuple, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, QPoly):
            self.coeffs = coeffs.coeffs
            return
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (Q(coeffs),)
        self.coeffs = _trim([Q(c) for c in coeffs])

    @staticmethod
    def var():
        return QPoly((0, 1))

    @property
    def degree(self):
        # degree of 0 is -1
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else _Q0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("QPoly", self.coeffs))

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, QPoly) else QPoly(other).__neg__())

    def __rsub__(self, other):
        return QPoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [_Q0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = QPoly(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lc
        quot = [_Q0] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                q = c / lb
                quot[i - db] = q
                for j, bc in enumerate(other.coeffs):
                    rem[i - db + j] -= q * bc
        return QPoly(quot), QPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self:
            return self
        lb = self.lc
        if lb == 1:
            return self
        return QPoly([c / lb for c in self.coeffs])

    def derivative(self):
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, value):
        """Horner evaluation; value may be a Fraction or any ring element."""
        if not self.coeffs:
            return value * 0
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        return acc

    def shift(self, k):
        """Multiply by t^k."""
        if not self:
            return self
        return QPoly((_Q0,) * k + self.coeffs)

    def __str__(self):
        return qpoly_str(self)

    def __repr__(self):
        return f"QPoly({self})"


QP_ZERO = QPoly()
QP_ONE = QPoly(1)
QP_T = QPoly.var()


def _int_clear(p: QPoly):
    """Coefficients of p scaled to a primitive integer list (may be empty)."""
    if not p:
        return []
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _iprem(a, b):
    """Pseudo-remainder of integer coefficient lists, lc(b)^(da-db+1)*a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        ci = a[i]
        if ci:
            for j in range(len(a)):
                a[j] *= lb
            for j, bc in enumerate(b):
                a[i - db + j] -= ci * bc
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
    return a


def _iprimitive(a):
    g = 0
    for v in a:
        g = math.gcd(g, v)
    if g > 1:
        a = [v // g for v in a]
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


def qpoly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd via the primitive PRS over Z (avoids Fraction blow-up)."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    A, B = _int_clear(a), _int_clear(b)
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _iprimitive(_iprem(A, B))
        A, B = B, R
    return QPoly([Q(v) for v in A]).monic()


def qpoly_lcm(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return QP_ZERO
    return (a * b).exact_div(qpoly_gcd(a, b)).monic()


def qpoly_sqrt(p: QPoly):
    """Exact square root in Q[t], or None when p is not a square."""
    if not p:
        return QP_ZERO
    if p.degree % 2 or p.lc < 0:
        return None
    n = p.degree // 2
    lc_root_sq = p.lc
    num_r = _isqrt_exact(lc_root_sq.numerator)
    den_r = _isqrt_exact(lc_root_sq.denominator)
    if num_r is None or den_r is None:
        return None
    root = [_Q0] * (n + 1)
    root[n] = Q(num_r, den_r)
    # undetermined coefficients from the top down
    for k in range(n - 1, -1, -1):
        # coefficient of t^(k+n) in root^2 must match p
        target = p.coeffs[k + n] if k + n <= p.degree else _Q0
        acc = _Q0
        for i in range(k + 1, n):
            j = k + n - i
            if k + 1 <= j <= n:
                acc += root[i] * root[j]
        root[k] = (target - acc) / (2 * root[n])
    cand = QPoly(root)
    return cand if cand * cand == p else None


def _isqrt_exact(v: int):
    r = math.isqrt(v)
    return r if r * r == v else None


def qpoly_str(p: QPoly, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = str(mag)
        else:
            v = var if k == 1 else f"{var}^{k}"
            body = v if mag == 1 else f"{mag}*{v}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class ParamRat:
    """Element of Q(t): num/den in Q[t], den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if den is None:
            if isinstance(num, ParamRat):
                self.num, self.den = num.num, num.den
                return
            self.num = num if isinstance(num, QPoly) else QPoly(num)
            self.den = QP_ONE
            return
        num = num if isinstance(num, QPoly) else QPoly(num)
        den = den if isinstance(den, QPoly) else QPoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(t)")
        if not num:
            self.num, self.den = QP_ZERO, QP_ONE
            return
        g = qpoly_gcd(num, den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
        lb = den.lc
        if lb != 1:
            num = QPoly([c / lb for c in num.coeffs])
            den = QPoly([c / lb for c in den.coeffs])
        self.num, self.den = num, den

    @staticmethod
    def var():
        return ParamRat(QP_T)

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __eq__(self, other):
        other = _coerce_pr(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("ParamRat", self.num.coeffs, self.den.coeffs))

    def __neg__(self):
        r = ParamRat.__new__(ParamRat)
        r.num, r.den = -self.num, self.den
        return r

    def __add__(self, other):
        other = _coerce_pr(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return ParamRat(self.num + other.num, self.den)
        return ParamRat(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_pr(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_pr(other) - self

    def __mul__(self, other):
        other = _coerce_pr(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return PR_ZERO
        return ParamRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_pr(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero in Q(t)")
        return ParamRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_pr(other) / self

    def __pow__(self, k):
        if k < 0:
            return (PR_ONE / self) ** (-k)
        return ParamRat(self.num ** k, self.den ** k)

    def inv(self):
        return PR_ONE / self

    def dt(self):
        """Derivative with respect to t (quotient rule)."""
        n, d = self.num, self.den
        return ParamRat(n.derivative() * d - n * d.derivative(), d * d)

    def is_constant(self):
        """True when the value lies in Q."""
        return self.num.degree <= 0 and self.den.is_one()

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not in Q")
        return self.num.coeffs[0] if self.num else _Q0

    def is_integer(self):
        return self.is_constant() and self.as_fraction().denominator == 1

    def __str__(self):
        ns = qpoly_str(self.num)
        if self.den.is_one():
            return ns
        ds = qpoly_str(self.den)
        if " " in ns:
            ns = f"({ns})"
        if " " in ds or "*" in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"ParamRat({self})"


def _coerce_pr(v):
    if isinstance(v, ParamRat):
        return v
    if isinstance(v, (int, Fraction, QPoly)):
        return ParamRat(v)
    return None


PR_ZERO = ParamRat(0)
PR_ONE = ParamRat(1)
PR_T = ParamRat.var()
