"""The noncommutative operator ring Q(t)(x)[D] with D*a = a*D + a'.

Operators act through d/dx only; the parameter derivation enters via the
coefficients.  Left and right Euclidean division both exist, giving GCRD
and LCLM.  The zero operator has order -1, a sentinel standing for -infinity
(all comparisons order(0) < order(L != 0) hold).
"""

from __future__ import annotations

from math import comb

from .fields import RF, RF_ZERO, RF_ONE


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class OrePoly:
    """Operator sum(a_i * D^i), coefficients RF, low order first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, OrePoly):
            self.coeffs = coeffs.coeffs
            return
        self.coeffs = _trim([c if isinstance(c, RF) else RF(c)
                             for c in coeffs])

    @staticmethod
    def partial():
        return OrePoly((RF_ZERO, RF_ONE))

    @staticmethod
    def constant(f):
        return OrePoly((f,))

    @property
    def order(self):
        # order of the zero operator is the sentinel -1 (means -infinity)
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else RF_ZERO

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RF_ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("OrePoly", self.coeffs))

    def __neg__(self):
        return OrePoly([-c for c in self.coeffs])

    def __add__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OrePoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_op(other) - self

    def __mul__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return ore_mul(self, other)

    def __rmul__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return ore_mul(other, self)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of an operator")
        result = OrePoly((RF_ONE,))
        for _ in range(k):
            result = ore_mul(result, self)
        return result

    def monic(self):
        if not self or self.lc.is_one():
            return self
        inv = RF_ONE / self.lc
        return OrePoly([c * inv for c in self.coeffs])

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for k in range(self.order, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                sign_neg = str(c).startswith("-")
                body = str(-c) if sign_neg else str(c)
                if " " in body:
                    body = f"({body})"
            else:
                dsym = "D" if k == 1 else f"D^{k}"
                if c.is_one():
                    body, sign_neg = dsym, False
                elif c == RF(-1):
                    body, sign_neg = dsym, True
                else:
                    sign_neg = str(c).startswith("-")
                    cs = str(-c) if sign_neg else str(c)
                    if " " in cs:
                        cs = f"({cs})"
                    body = f"{cs}*{dsym}"
            if not parts:
                parts.append(("-" if sign_neg else "") + body)
            else:
                parts.append((" - " if sign_neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"OrePoly({self})"


def _coerce_op(v):
    if isinstance(v, OrePoly):
        return v
    if isinstance(v, RF):
        return OrePoly((v,))
    if isinstance(v, int):
        return OrePoly((RF(v),))
    return None


OP_ZERO = OrePoly()
OP_ONE = OrePoly((RF_ONE,))
OP_D = OrePoly.partial()


def ore_mul(L: OrePoly, M: OrePoly) -> OrePoly:
    """Product in F[D]: apply(ore_mul(L, M), f) == apply(L, apply(M, f)).

    Uses D^i * b = sum_k C(i,k) * b^(k) * D^(i-k).
    """
    if not L or not M:
        return OP_ZERO
    out = [RF_ZERO] * (L.order + M.order + 1)
    for j, b in enumerate(M.coeffs):
        if not b:
            continue
        # derivatives of b up to the maximal i
        derivs = [b]
        for _ in range(L.order):
            derivs.append(derivs[-1].dx())
        for i, a in enumerate(L.coeffs):
            if not a:
                continue
            for k in range(i + 1):
                term = a * derivs[k]
                if term:
                    out[i - k + j] = out[i - k + j] + comb(i, k) * term
    return OrePoly(out)


def apply_op(L: OrePoly, f: RF) -> RF:
    """sum a_i * (d/dx)^i f."""
    result = RF_ZERO
    current = f
    for i, a in enumerate(L.coeffs):
        if a:
            result = result + a * current
        if i < L.order:
            current = current.dx()
    return result


def right_divide(A: OrePoly, B: OrePoly):
    """Quotient and remainder with A = Q*B + R, order(R) < order(B)."""
    if not B:
        raise ZeroDivisionError("Ore division by zero")
    Q = OP_ZERO
    R = A
    while R and R.order >= B.order:
        k = R.order - B.order
        q = OrePoly([RF_ZERO] * k + [R.lc / B.lc])
        Q = Q + q
        R = R - ore_mul(q, B)
    return Q, R


def left_divide(A: OrePoly, B: OrePoly):
    """Quotient and remainder with A = B*Q + R, order(R) < order(B)."""
    if not B:
        raise ZeroDivisionError("Ore division by zero")
    Q = OP_ZERO
    R = A
    while R and R.order >= B.order:
        k = R.order - B.order
        q = OrePoly([RF_ZERO] * k + [R.lc / B.lc])
        Q = Q + q
        R = R - ore_mul(B, q)
    return Q, R


def gcrd(A: OrePoly, B: OrePoly) -> OrePoly:
    """Greatest common right divisor, monic."""
    if not A and not B:
        raise ValueError("gcrd(0, 0) is undefined")
    while B:
        _, R = right_divide(A, B)
        A, B = B, R
    return A.monic()


def lclm(A: OrePoly, B: OrePoly) -> OrePoly:
    """Least common left multiple, monic.

    Extended right-Euclid: track R_i = S_i*A + T_i*B; when the remainder
    reaches 0, S*A = -T*B is the LCLM.
    """
    if not A and not B:
        raise ValueError("lclm(0, 0) is undefined")
    if not A or not B:
        return OP_ZERO
    r0, r1 = A, B
    s0, s1 = OP_ONE, OP_ZERO
    while r1:
        q, r = right_divide(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - ore_mul(q, s1)
    # now s1*A + t1*B = r1 = 0 with s1 != 0
    return ore_mul(s1, A).monic()
