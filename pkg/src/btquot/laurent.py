"""Precision-tracked arithmetic in K_infinity = F_q((pi)), pi = 1/T.

A Laurent value represents an element known modulo pi^prec: it stores
the field, the valuation of its leading term, the known coefficients
(codes into GF, leading one first, trailing zeros trimmed) and the
absolute precision bound.  A value whose known coefficients all vanish
is "zero at this precision": its true valuation is only bounded below
by prec.  The exact zero is the special value with prec = +infinity.

Operations propagate precision honestly: addition keeps the minimum of
the two precisions, multiplication keeps min(prec1 + val2, prec2 +
val1), inversion keeps the relative precision of its input.  Anything
that needs a leading coefficient that is not determined at the current
precision raises InsufficientPrecisionError, which callers treat as a
signal to retry the whole computation at higher precision.

Polynomials in T embed via T = pi^(-1), so v(f) = -deg(f).
"""

from __future__ import annotations

import math

from .algebra import GF

INF = math.inf


class InsufficientPrecisionError(Exception):
    """The requested quantity is not determined at the current precision."""


class Laurent:
    """An element of F_q((pi)) known modulo pi^prec."""

    __slots__ = ("F", "val", "coeffs", "prec")

    def __init__(self, F: GF, val, coeffs, prec):
        coeffs = list(coeffs)
        # drop coefficients at or beyond the precision bound
        if prec is not INF:
            keep = max(0, min(len(coeffs), int(prec) - val))
            coeffs = coeffs[:keep]
        # advance past leading zeros
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = prec
        if val > prec:
            raise ValueError("valuation above precision bound")
        self.F = F
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, F: GF) -> "Laurent":
        """The exact zero."""
        return cls(F, INF, (), INF)

    @classmethod
    def zero_at(cls, F: GF, prec: int) -> "Laurent":
        """Zero at finite precision: O(pi^prec)."""
        return cls(F, prec, (), prec)

    @classmethod
    def constant(cls, F: GF, c: int, prec: int) -> "Laurent":
        return cls(F, 0, (c,), prec)

    @classmethod
    def pi_power(cls, F: GF, k: int, prec: int) -> "Laurent":
        return cls(F, k, (1,), prec)

    @classmethod
    def from_poly(cls, F: GF, f, prec: int) -> "Laurent":
        """Embed f in A = F_q[T] via T = pi^(-1)."""
        if not f:
            return cls.zero(F)
        d = len(f) - 1
        if prec <= -d:
            raise ValueError("precision must exceed the valuation -deg(f)")
        return cls(F, -d, tuple(reversed(f)), prec)

    # -- structure -------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.prec is INF and not self.coeffs

    @property
    def is_zero_at_prec(self) -> bool:
        """No nonzero coefficient is known (true valuation >= prec)."""
        return not self.coeffs

    def valuation(self) -> int:
        """Exact valuation; raises if only a lower bound is known."""
        if self.coeffs:
            return self.val
        if self.is_exact_zero:
            return INF
        raise InsufficientPrecisionError(
            f"valuation only bounded below by {self.prec}")

    def coeff(self, k: int) -> int:
        """Coefficient of pi^k; raises beyond the precision bound."""
        if self.prec is not INF and k >= self.prec:
            raise InsufficientPrecisionError(
                f"coefficient of pi^{k} at precision O(pi^{self.prec})")
        if not self.coeffs or k < self.val:
            return 0
        i = k - self.val
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def window(self, lo: int, hi: int) -> list[int]:
        """Coefficients of pi^lo .. pi^(hi-1)."""
        return [self.coeff(k) for k in range(lo, hi)]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.F.q != other.F.q:
            raise ValueError("mixed fields")

    def __add__(self, other: "Laurent") -> "Laurent":
        self._check(other)
        prec = min(self.prec, other.prec)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        lo = min(self.val, other.val)
        if lo >= prec:
            return Laurent.zero_at(self.F, prec)
        hi = prec if prec is not INF else max(
            self.val + len(self.coeffs), other.val + len(other.coeffs))
        F = self.F
        out = [F.add(self.coeff(k), other.coeff(k)) for k in range(lo, hi)]
        return Laurent(F, lo, out, prec)

    def __neg__(self) -> "Laurent":
        F = self.F
        return Laurent(F, self.val, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        self._check(other)
        if self.is_exact_zero or other.is_exact_zero:
            return Laurent.zero(self.F)
        prec = min(self.prec + other.val, other.prec + self.val)
        if not self.coeffs or not other.coeffs:
            if prec is INF:
                return Laurent.zero(self.F)
            return Laurent.zero_at(self.F, prec)
        F = self.F
        n1, n2 = len(self.coeffs), len(other.coeffs)
        out = [0] * (n1 + n2 - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Laurent(F, self.val + other.val, out, prec)

    def scale(self, c: int) -> "Laurent":
        """Multiply by the field element c (exact)."""
        F = self.F
        if c == 0:
            return Laurent.zero(F)
        return Laurent(F, self.val, [F.mul(c, x) for x in self.coeffs],
                       self.prec)

    def shift(self, k: int) -> "Laurent":
        """Multiply by pi^k (exact)."""
        if self.is_exact_zero:
            return self
        return Laurent(self.F, self.val + k, self.coeffs, self.prec)

    def inv(self) -> "Laurent":
        """Inverse, to the same relative precision."""
        if self.is_exact_zero:
            raise ZeroDivisionError("inverse of exact zero")
        if not self.coeffs:
            raise InsufficientPrecisionError(
                "inverting a value indistinguishable from zero")
        F = self.F
        rel = (self.prec - self.val if self.prec is not INF
               else len(self.coeffs))
        rel = max(rel, len(self.coeffs))
        c = list(self.coeffs) + [0] * (rel - len(self.coeffs))
        b = [0] * rel
        b[0] = F.inv(c[0])
        for k in range(1, rel):
            acc = 0
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = F.add(acc, F.mul(c[j], b[k - j]))
            b[k] = F.neg(F.mul(acc, b[0]))
        prec = (INF if self.prec is INF else self.prec - 2 * self.val)
        return Laurent(F, -self.val, b, prec)

    def truncate(self, prec: int) -> "Laurent":
        if prec >= self.prec:
            return self
        return Laurent(self.F, self.val if self.coeffs else prec,
                       self.coeffs, prec)

    # -- value identity ----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Laurent) and self.F.q == other.F.q
                and self.val == other.val and self.coeffs == other.coeffs
                and self.prec == other.prec)

    def __hash__(self):
        return hash((self.F.q, self.val, self.coeffs, self.prec))

    def __repr__(self):
        if self.is_exact_zero:
            return "0"
        parts = [f"{c}*pi^{self.val + i}"
                 for i, c in enumerate(self.coeffs) if c]
        parts.append(f"O(pi^{self.prec})")
        return " + ".join(parts)


def poly_to_laurent(F: GF, f, prec: int) -> Laurent:
    """Embed the polynomial f into K_infinity at the given precision."""
    return Laurent.from_poly(F, f, prec)


def newton_sqrt(F: GF, f, prec: int) -> Laurent:
    """Square root of a monic even-degree polynomial, 1-unit branch.

    Returns s = pi^(-m) * (1 + ...) with s^2 = f + O(pi^prec), where
    deg f = 2m.  Digit-by-digit Newton lifting on the 1-unit pi^(2m) f,
    starting from u = 1: at step k the pi^k digit of u^2 - pi^(2m) f is
    halved and subtracted from u.  Each step recomputes the square, so
    the total cost is O(prec^3) field operations.

    The result carries m guard digits beyond the requested precision so
    that re-squaring it is still checkable at precision prec.
    """
    if not f or f[-1] != 1:
        raise ValueError("polynomial must be monic")
    d = len(f) - 1
    if d % 2:
        raise ValueError("polynomial must have even degree")
    m = d // 2
    digits = prec + 2 * m
    if digits < 1:
        raise ValueError("requested precision is too small")
    # a = pi^(2m) f as a coefficient array over pi^0 .. pi^(digits-1)
    a = [0] * digits
    for k in range(min(d + 1, digits)):
        a[k] = f[d - k]
    half = F.inv(F.from_int(2))
    u = [0] * digits
    u[0] = 1
    for k in range(1, digits):
        # pi^k digit of u^2 - a, recomputing the square in full
        sq = 0
        for i in range(k + 1):
            if u[i]:
                sq = F.add(sq, F.mul(u[i], u[k - i]))
        c = F.sub(sq, a[k])
        if c:
            u[k] = F.neg(F.mul(c, half))
    return Laurent(F, -m, u, prec + m)


# ---------------------------------------------------------------------
# 2x2 matrices over K_infinity
# ---------------------------------------------------------------------

class Mat2:
    """A 2x2 matrix of Laurent values."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Laurent, b: Laurent, c: Laurent, d: Laurent):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, F: GF, prec: int) -> "Mat2":
        one = Laurent.constant(F, 1, prec)
        zero = Laurent.zero(F)
        return cls(one, zero, zero, one)

    @classmethod
    def from_polys(cls, F: GF, rows, prec: int) -> "Mat2":
        (fa, fb), (fc, fd) = rows
        return cls(Laurent.from_poly(F, fa, prec) if fa else Laurent.zero(F),
                   Laurent.from_poly(F, fb, prec) if fb else Laurent.zero(F),
                   Laurent.from_poly(F, fc, prec) if fc else Laurent.zero(F),
                   Laurent.from_poly(F, fd, prec) if fd else Laurent.zero(F))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b,
                    self.c + other.c, self.d + other.d)

    def det(self) -> Laurent:
        return self.a * self.d - self.b * self.c

    def inv(self) -> "Mat2":
        dt = self.det()
        if dt.is_exact_zero:
            raise ZeroDivisionError("matrix is singular")
        if dt.is_zero_at_prec:
            raise InsufficientPrecisionError(
                "determinant indistinguishable from zero")
        di = dt.inv()
        return Mat2(self.d * di, -(self.b * di),
                    -(self.c * di), self.a * di)

    def scale(self, s: Laurent) -> "Mat2":
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def min_val(self) -> int:
        """v_infinity of the matrix: minimum of the entry valuations."""
        exact, bounds = [], []
        for x in self.entries():
            if x.is_exact_zero:
                continue
            if x.coeffs:
                exact.append(x.val)
            else:
                bounds.append(x.prec)
        if not exact:
            if not bounds:
                return INF
            raise InsufficientPrecisionError(
                "no entry has a determined valuation")
        m = min(exact)
        if bounds and min(bounds) < m:
            raise InsufficientPrecisionError(
                "an undetermined entry may have smaller valuation")
        return m

    def __eq__(self, other):
        return (isinstance(other, Mat2)
                and self.entries() == other.entries())

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return (f"[[{self.a!r}, {self.b!r}],\n"
                f" [{self.c!r}, {self.d!r}]]")


def mat2_mul(A: Mat2, B: Mat2) -> Mat2:
    return A * B


def mat2_det(A: Mat2) -> Laurent:
    return A.det()


def mat2_inv(A: Mat2) -> Mat2:
    return A.inv()
