"""Arithmetic in F_q, in A = F_q[T], and in residue fields A/(f).

Element representation.  An element of F_q with coordinate vector
(c_0, ..., c_{e-1}) over F_p (meaning c_0 + c_1*x + ... + c_{e-1}*x^{e-1}
modulo the defining polynomial of the field) is coded as the integer
c_0 + c_1*p + ... + c_{e-1}*p^{e-1}.  For prime q the code is just the
residue itself.  All arithmetic on codes goes through a GF instance,
which knows p, e and the defining modulus.

Polynomials over F_q are tuples of element codes, constant coefficient
first, with no trailing zeros; the zero polynomial is the empty tuple.
Tuples are immutable and hashable, so polynomials can serve as dict keys
everywhere else in the package.

Canonical orders.  Elements of F_q are ordered lexicographically by
coordinate vector (c_0, ..., c_{e-1}); for prime q this is 0 < 1 < ... <
p-1.  Polynomials of bounded degree are ordered lexicographically by
coefficient vector read from the constant term up, entries compared in
the element order.  Every deterministic tie-break in this package (the
search for the auxiliary irreducible alpha, square-root branch picks,
label picks in the quotient graph) refers back to these two orders.
"""

from __future__ import annotations

import re
from functools import lru_cache

#: Defining polynomials (constant first) for the supported prime-power
#: fields, each the first monic irreducible of its degree in canonical
#: order.  Callers may override via GF(q, modulus=...).
DEFAULT_MODULI = {
    9: (1, 0, 1),      # x^2 + 1           over F_3
    25: (1, 1, 1),     # x^2 + x + 1       over F_5
    27: (1, 0, 2, 1),  # x^3 + 2x^2 + 1    over F_3
    49: (1, 0, 1),     # x^2 + 1           over F_7
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"not a prime power: {q}")
    return p, e


class GF:
    """The finite field F_q, q = p^e with p an odd prime.

    Elements are ints in range(q), coded as described in the module
    docstring.  The instance carries the arithmetic; elements carry no
    reference back to their field.
    """

    def __init__(self, q: int, modulus: tuple[int, ...] | None = None):
        p, e = _factor_prime_power(q)
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                if q not in DEFAULT_MODULI:
                    raise ValueError(
                        f"no default modulus for q={q}; pass one explicitly")
                modulus = DEFAULT_MODULI[q]
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree e over F_p")
            self.modulus = modulus
            if not self._modulus_irreducible():
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self._tables = None

    # -- element coding ------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        """Coordinate vector (c_0, ..., c_{e-1}) over F_p of the code a."""
        cs = []
        for _ in range(self.e):
            cs.append(a % self.p)
            a //= self.p
        return tuple(cs)

    def from_coords(self, cs) -> int:
        code = 0
        for c in reversed(list(cs)):
            code = code * self.p + (c % self.p)
        return code

    def from_int(self, n: int) -> int:
        """The image of the integer n in F_q (via the prime subfield)."""
        return n % self.p

    def sort_key(self, a: int) -> tuple[int, ...]:
        """Key realizing the canonical element order."""
        return self.coords(a)

    def elements(self) -> list[int]:
        """All element codes in canonical order."""
        return sorted(range(self.q), key=self.sort_key)

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        code, mult = 0, 1
        for _ in range(self.e):
            code += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return code

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        code, mult = 0, 1
        for _ in range(self.e):
            code += ((-a) % p) * mult
            a //= p
            mult *= p
        return code

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce modulo the defining polynomial
        for k in range(len(prod) - 1, self.e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(self.e):
                    prod[k - self.e + j] = (
                        prod[k - self.e + j] - c * self.modulus[j]) % self.p
        return self.from_coords(prod[:self.e])

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1 if self.e == 1 else self.from_coords([1])
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    @property
    def one(self) -> int:
        return 1

    @property
    def zero(self) -> int:
        return 0

    def primitive_root(self) -> int:
        """First generator of F_q^* in canonical element order."""
        n = self.q - 1
        prime_divs = []
        m = n
        d = 2
        while d * d <= m:
            if m % d == 0:
                prime_divs.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            prime_divs.append(m)
        for a in self.elements():
            if a == 0:
                continue
            if all(self.pow(a, n // ell) != 1 for ell in prime_divs):
                return a
        raise RuntimeError("no primitive root found")  # unreachable

    def tables(self):
        """(add, mul, neg, inv) lookup tables as numpy arrays.

        inv[0] is set to 0 as a harmless placeholder.  Useful for
        vectorized linear algebra when e > 1; prime fields are usually
        handled with plain mod-p numpy arithmetic instead.
        """
        if self._tables is None:
            import numpy as np
            q = self.q
            add = np.zeros((q, q), dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            neg = np.zeros(q, dtype=np.int64)
            inv = np.zeros(q, dtype=np.int64)
            for a in range(q):
                neg[a] = self.neg(a)
                if a:
                    inv[a] = self.inv(a)
                for b in range(q):
                    add[a, b] = self.add(a, b)
                    mul[a, b] = self.mul(a, b)
            self._tables = (add, mul, neg, inv)
        return self._tables

    def _modulus_irreducible(self) -> bool:
        base = GF(self.p)
        return is_irreducible(base, self.modulus)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return (isinstance(other, GF) and self.q == other.q
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))


# ---------------------------------------------------------------------
# polynomials over F_q: tuples of codes, constant first, trimmed
# ---------------------------------------------------------------------

ZERO_POLY: tuple[int, ...] = ()
ONE_POLY: tuple[int, ...] = (1,)
T_POLY: tuple[int, ...] = (0, 1)


def poly_trim(coeffs) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_deg(f) -> int:
    """Degree; the zero polynomial gets -1."""
    return len(f) - 1


def poly_add(F: GF, f, g):
    n = max(len(f), len(g))
    return poly_trim(
        F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0)
        for i in range(n))


def poly_neg(F: GF, f):
    return tuple(F.neg(c) for c in f)


def poly_sub(F: GF, f, g):
    return poly_add(F, f, poly_neg(F, g))


def poly_scale(F: GF, c: int, f):
    if c == 0:
        return ZERO_POLY
    return tuple(F.mul(c, x) for x in f)


def poly_mul(F: GF, f, g):
    if not f or not g:
        return ZERO_POLY
    prod = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    return poly_trim(prod)


def poly_pow(F: GF, f, n: int):
    result = ONE_POLY
    base = f
    while n:
        if n & 1:
            result = poly_mul(F, result, base)
        base = poly_mul(F, base, base)
        n >>= 1
    return result


def poly_eval(F: GF, f, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_divmod(F: GF, f, g):
    """Quotient and remainder of f by g; f = q*g + r with deg r < deg g."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(f)
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    quot = [0] * max(0, len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = F.mul(r[k + dg], lead_inv)
        if c:
            quot[k] = c
            for j in range(dg + 1):
                r[k + j] = F.sub(r[k + j], F.mul(c, g[j]))
    return poly_trim(quot), poly_trim(r)


def poly_mod(F: GF, f, g):
    return poly_divmod(F, f, g)[1]


def poly_monic(F: GF, f):
    if not f:
        return f
    return poly_scale(F, F.inv(f[-1]), f)


def poly_gcd(F: GF, f, g):
    """Monic gcd."""
    while g:
        f, g = g, poly_mod(F, f, g)
    return poly_monic(F, f)


def poly_xgcd(F: GF, f, g):
    """(d, s, t) with d = s*f + t*g monic (or zero)."""
    r0, r1 = f, g
    s0, s1 = ONE_POLY, ZERO_POLY
    t0, t1 = ZERO_POLY, ONE_POLY
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if r0:
        c = F.inv(r0[-1])
        r0 = poly_scale(F, c, r0)
        s0 = poly_scale(F, c, s0)
        t0 = poly_scale(F, c, t0)
    return r0, s0, t0


def poly_pow_mod(F: GF, f, n: int, m):
    result = poly_mod(F, ONE_POLY, m)
    base = poly_mod(F, f, m)
    while n:
        if n & 1:
            result = poly_mod(F, poly_mul(F, result, base), m)
        base = poly_mod(F, poly_mul(F, base, base), m)
        n >>= 1
    return result


def poly_sort_key(F: GF, f, length: int | None = None):
    """Key for the canonical polynomial order, padded to the given length."""
    if length is None:
        length = len(f)
    padded = tuple(f) + (0,) * (length - len(f))
    return tuple(F.sort_key(c) for c in padded)


def _prime_divisors(n: int) -> list[int]:
    divs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            divs.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        divs.append(n)
    return divs


def is_irreducible(F: GF, f) -> bool:
    """Deterministic irreducibility test (Rabin) over F_q.

    Constants and the zero polynomial are not irreducible; the zero
    polynomial raises.
    """
    if not f:
        raise ValueError("zero polynomial")
    d = poly_deg(f)
    if d == 0:
        return False
    if d == 1:
        return True
    # x^(q^d) == x mod f, and x^(q^(d/l)) - x coprime to f for prime l | d
    xq = poly_pow_mod(F, T_POLY, F.q, f)  # Frobenius image of T
    frob = {1: xq}

    def frob_power(k: int):
        # T^(q^k) mod f by repeated substitution-free exponentiation
        if k in frob:
            return frob[k]
        prev = frob_power(k - 1)
        frob[k] = poly_pow_mod(F, prev, F.q, f)
        return frob[k]

    top = frob_power(d)
    if poly_sub(F, top, poly_mod(F, T_POLY, f)):
        return False
    for ell in _prime_divisors(d):
        h = poly_sub(F, frob_power(d // ell), poly_mod(F, T_POLY, f))
        if poly_deg(poly_gcd(F, h, f)) != 0:
            return False
    return True


def enumerate_monic_polys(F: GF, degree: int):
    """All monic polynomials of exactly the given degree, canonical order."""
    elems = F.elements()

    def rec(prefix, k):
        if k == degree:
            yield tuple(prefix) + (1,)
            return
        for c in elems:
            yield from rec(prefix + [c], k + 1)

    if degree == 0:
        yield ONE_POLY
        return
    yield from rec([], 0)


def enumerate_monic_irreducibles(F: GF, degree: int):
    """Monic irreducibles of exactly the given degree, canonical order."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for f in enumerate_monic_polys(F, degree):
        if is_irreducible(F, f):
            yield f


def legendre(F: GF, a, varpi) -> int:
    """Legendre symbol of a at the monic irreducible varpi: 0 or +-1.

    0 iff varpi divides a; +1 iff a is a nonzero square in A/(varpi);
    -1 otherwise.  Computed as a^((q^deg - 1)/2) in the residue field.
    """
    if not is_irreducible(F, varpi) or varpi[-1] != 1:
        raise ValueError("varpi must be monic irreducible")
    am = poly_mod(F, a, varpi)
    if not am:
        return 0
    d = poly_deg(varpi)
    s = poly_pow_mod(F, am, (F.q ** d - 1) // 2, varpi)
    if s == ONE_POLY:
        return 1
    if s == (F.neg(1),):
        return -1
    raise AssertionError("Euler criterion produced a non-unit value")


def hilbert_symbol(F: GF, a, b, varpi) -> int:
    """Hilbert symbol (a, b) at the finite place given by varpi.

    With a = varpi^va * u and b = varpi^vb * v, the symbol equals
    (-1)^(va*vb*eps) * legendre(u, varpi)^vb * legendre(v, varpi)^va
    where eps = (q-1)/2 * deg(varpi) mod 2.
    """
    if not a or not b:
        raise ValueError("hilbert_symbol of zero")

    def split(f):
        v = 0
        while True:
            q, r = poly_divmod(F, f, varpi)
            if r:
                return v, f
            f = q
            v += 1

    va, u = split(a)
    vb, v = split(b)
    eps = ((F.q - 1) // 2) * poly_deg(varpi) % 2
    sign = -1 if (va * vb * eps) % 2 else 1
    lu = legendre(F, u, varpi)
    lv = legendre(F, v, varpi)
    result = sign * (lu ** (vb % 2)) * (lv ** (va % 2))
    assert result in (-1, 1)
    return result


def crt(F: GF, residues, moduli):
    """Solve x = residues[i] mod moduli[i]; result reduced mod the product."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli must have equal length")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if poly_deg(poly_gcd(F, moduli[i], moduli[j])) != 0:
                raise ValueError("moduli are not pairwise coprime")
    x = ZERO_POLY
    prod = ONE_POLY
    for r, m in zip(residues, moduli):
        # combine x mod prod with r mod m
        _, s, t = poly_xgcd(F, prod, m)
        # s*prod = 1 mod m, t*m = 1 mod prod
        new_mod = poly_mul(F, prod, m)
        term1 = poly_mul(F, poly_mul(F, r, s), prod)
        term2 = poly_mul(F, poly_mul(F, x, t), m)
        x = poly_mod(F, poly_add(F, term1, term2), new_mod)
        prod = new_mod
    return x


def sqrt_mod_irreducible(F: GF, a, f):
    """A square root of a modulo the monic irreducible f (Tonelli-Shanks).

    Requires legendre(a, f) = +1.  Of the two roots +-x the one with
    smaller canonical polynomial order (coefficient vectors padded to
    deg f, compared from the constant term up) is returned, reduced
    modulo f.
    """
    if legendre(F, a, f) != 1:
        raise ValueError("a is not a nonzero square modulo f")
    d = poly_deg(f)
    Q = F.q ** d
    am = poly_mod(F, a, f)

    def rmul(x, y):
        return poly_mod(F, poly_mul(F, x, y), f)

    def rpow(x, n):
        return poly_pow_mod(F, x, n, f)

    # write Q - 1 = 2^s * t with t odd
    t, s = Q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    # first quadratic non-residue of the residue field, canonical order
    z = None
    elems = F.elements()

    def residues_in_order(k, prefix):
        if k == d:
            yield poly_trim(prefix)
            return
        for c in elems:
            yield from residues_in_order(k + 1, prefix + [c])

    for cand in residues_in_order(0, []):
        if not cand:
            continue
        if rpow(cand, (Q - 1) // 2) != ONE_POLY:
            z = cand
            break
    assert z is not None
    m = s
    c = rpow(z, t)
    x = rpow(am, (t + 1) // 2)
    w = rpow(am, t)
    while w != ONE_POLY:
        # order of w is 2^i
        i = 0
        ww = w
        while ww != ONE_POLY:
            ww = rmul(ww, ww)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = rmul(b, b)
        m = i
        c = rmul(b, b)
        x = rmul(x, b)
        w = rmul(w, c)
    assert rmul(x, x) == am
    other = poly_neg(F, x)
    if poly_sort_key(F, other, d) < poly_sort_key(F, x, d):
        x = other
    return x


# ---------------------------------------------------------------------
# text form: sums of c*T^k terms
# ---------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(\[[^\]]*\]|\d+)\s*\*?\s*)?(T)?(?:\^(\d+))?$")


def parse_poly(F: GF, text: str):
    """Parse the `c*T^k` sum syntax into a polynomial.

    Accepts omitted `*`, omitted `^1`, arbitrary term order, and (for
    e > 1) bracketed coordinate vectors like `[1,2]*T^3`.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial string")
    # split into signed terms at top-level + and -
    terms: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    cur = ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            terms.append((sign, cur.strip()))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif depth == 0 and ch in "+-" and not cur.strip():
            # leading or repeated sign
            if ch == "-":
                sign = -sign
        else:
            cur += ch
    if depth != 0:
        raise ValueError(f"unbalanced brackets in {text!r}")
    if cur.strip():
        terms.append((sign, cur.strip()))
    if not terms:
        raise ValueError(f"cannot parse polynomial {text!r}")

    acc: dict[int, int] = {}
    for sgn, term in terms:
        m = _TERM_RE.match(term.replace(" ", ""))
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        coeff_s, tvar, exp_s = m.groups()
        if exp_s is not None and tvar is None:
            raise ValueError(f"exponent without T in term {term!r}")
        if coeff_s is None:
            coeff = F.one
        elif coeff_s.startswith("["):
            parts = coeff_s[1:-1].split(",")
            cs = [int(x) for x in parts if x.strip() != ""]
            if len(cs) > F.e:
                raise ValueError(f"coordinate vector too long in {term!r}")
            coeff = F.from_coords(cs + [0] * (F.e - len(cs)))
        else:
            coeff = F.from_int(int(coeff_s))
        if sgn < 0:
            coeff = F.neg(coeff)
        k = 0 if tvar is None else (1 if exp_s is None else int(exp_s))
        acc[k] = F.add(acc.get(k, 0), coeff)
    if not acc:
        return ZERO_POLY
    top = max(acc)
    return poly_trim([acc.get(k, 0) for k in range(top + 1)])


def format_poly(F: GF, f) -> str:
    """Canonical descending-degree text form of a polynomial."""
    if not f:
        return "0"

    def coeff_str(c: int) -> str:
        cs = F.coords(c)
        if any(cs[1:]):
            return "[" + ",".join(str(x) for x in cs) + "]"
        return str(cs[0])

    parts = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(coeff_str(c))
        else:
            tpow = "T" if k == 1 else f"T^{k}"
            if c == 1:
                parts.append(tpow)
            else:
                parts.append(f"{coeff_str(c)}*{tpow}")
    return "+".join(parts)


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    """Shared GF(q) instance with the default modulus."""
    return GF(q)
