"""The division quaternion algebra, its maximal order, and the embedding.

The algebra D over K = F_q(T) has generators i, j with i^2 = alpha,
j^2 = r, ij = -ji, where r is the squarefree product of the ramified
primes and alpha is an auxiliary monic irreducible of even degree that
is a non-square modulo every ramified prime.  With epsilon^2 = r +
nu*alpha (deg epsilon < deg alpha), the maximal order is

    Lambda = A + A i + A j + A khat,      khat = (epsilon*i + ij)/alpha,

and elements are stored as coordinate 4-tuples of polynomials in that
basis.  Products are computed through a 4x4x4 tensor of structure
constants derived symbolically at construction time by expanding in the
(1, i, j, ij) basis and converting back; the conversions must divide
exactly by alpha, which is asserted.

The unit group Gamma consists of the elements whose reduced norm lies
in F_q^*; the reduced norm itself is computed as x * conj(x), never
from a closed formula.

The embedding into M_2(K_infinity) sends i to diag(s, -s) with
s = sqrt(alpha) (1-unit branch), j to [[0, 1], [r, 0]], and khat to
(1/s) [[epsilon, 1], [-r, -epsilon]].
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .algebra import (
    GF,
    ONE_POLY,
    ZERO_POLY,
    enumerate_monic_irreducibles,
    format_poly,
    hilbert_symbol,
    is_irreducible,
    legendre,
    parse_poly,
    poly_add,
    poly_deg,
    poly_divmod,
    poly_mul,
    poly_neg,
    poly_scale,
    poly_sub,
    sqrt_mod_irreducible,
)
from .laurent import Laurent, Mat2, newton_sqrt


@dataclass(frozen=True)
class RamificationSet:
    """The finite ramified places: distinct monic irreducibles, even count."""

    primes: tuple
    r: tuple
    d: int
    odd_flag: int  # 1 iff every place has odd degree

    @classmethod
    def make(cls, F: GF, primes) -> "RamificationSet":
        primes = tuple(primes)
        if len(primes) % 2 or len(primes) < 2:
            raise ValueError("ramification set must have even cardinality "
                             ">= 2")
        if len(set(primes)) != len(primes):
            raise ValueError("ramified places must be distinct")
        r = ONE_POLY
        for p in primes:
            if not p or p[-1] != 1 or not is_irreducible(F, p):
                raise ValueError(
                    f"not monic irreducible: {format_poly(F, p)}")
            r = poly_mul(F, r, p)
        odd_flag = 0 if any(poly_deg(p) % 2 == 0 for p in primes) else 1
        return cls(primes, r, poly_deg(r), odd_flag)


def alpha_degree_bound(q: int, num_primes: int, d: int) -> int:
    """Upper bound for deg(alpha) in terms of q, #R and d = deg r."""
    l = num_primes
    if q == 3:
        if l <= 4:
            return d + 7
        if l == 6:
            return d + 5
        return d + 1
    if q in (5, 7):
        return d + 3 if l <= 6 else d + 1
    if q == 9:
        return d + 3 if l <= 4 else d + 1
    return d + 3 if l == 2 else d + 1


def find_alpha(F: GF, ram: RamificationSet, enforce_bound: bool = True):
    """First monic irreducible of even degree that is a non-square at
    every ramified place, searching degrees 2, 4, ... in canonical order."""
    bound = alpha_degree_bound(F.q, len(ram.primes), ram.d)
    degree = 2
    while True:
        if enforce_bound and degree > bound:
            raise RuntimeError(
                f"alpha search exceeded the degree bound {bound}; "
                "this indicates an arithmetic bug")
        for cand in enumerate_monic_irreducibles(F, degree):
            if all(legendre(F, cand, p) == -1 for p in ram.primes):
                return cand
        degree += 2


@dataclass(frozen=True)
class QuatElem:
    """Coordinates (lam1, lam2, lam3, lam4) in the basis (1, i, j, khat)."""

    lam: tuple

    def __iter__(self):
        return iter(self.lam)

    def is_zero(self) -> bool:
        return all(not c for c in self.lam)


QUAT_ZERO = QuatElem((ZERO_POLY,) * 4)
QUAT_ONE = QuatElem((ONE_POLY, ZERO_POLY, ZERO_POLY, ZERO_POLY))


def format_quat(F: GF, x: QuatElem) -> str:
    """`l1 + (l2)*i + (l3)*j + (l4)*k` with k = (epsilon*i + ij)/alpha."""
    l1, l2, l3, l4 = (format_poly(F, c) for c in x.lam)
    return f"{l1} + ({l2})*i + ({l3})*j + ({l4})*k"


def parse_quat(F: GF, text: str) -> QuatElem:
    """Inverse of format_quat.  The scalar part may contain '+', so the
    three bracketed components are peeled off from the right; absent
    components are zero, so plain polynomials parse as scalars."""
    comps = {}
    rest = text.strip()
    for name in ("k", "j", "i"):
        if not rest.replace(" ", "").endswith(f")*{name}"):
            comps[name] = ZERO_POLY
            continue
        idx = rest.rfind("(")
        if idx < 0:
            raise ValueError(f"cannot parse quaternion element {text!r}")
        inner = rest[idx + 1:rest.rfind(")")]
        comps[name] = parse_poly(F, inner)
        rest = rest[:idx].rstrip()
        if not rest.endswith("+"):
            raise ValueError(f"cannot parse quaternion element {text!r}")
        rest = rest[:-1].strip()
    try:
        scalar = parse_poly(F, rest)
    except ValueError:
        raise ValueError(f"cannot parse quaternion element {text!r}") \
            from None
    return QuatElem((scalar, comps["i"], comps["j"], comps["k"]))


class AlgebraData:
    """The algebra (alpha, r / K) with its maximal order and embedding.

    Immutable after construction; the sqrt(alpha) value is memoized at
    the highest precision requested so far (lock-protected).
    """

    def __init__(self, F: GF, primes, enforce_bound: bool = True,
                 verify: bool = True):
        self.F = F
        self.ram = RamificationSet.make(F, primes)
        self.r = self.ram.r
        self.alpha = find_alpha(F, self.ram, enforce_bound)
        self.m = poly_deg(self.alpha) // 2
        self.epsilon = sqrt_mod_irreducible(F, self.r, self.alpha)
        diff = poly_sub(F, poly_mul(F, self.epsilon, self.epsilon), self.r)
        self.nu, rem = poly_divmod(F, diff, self.alpha)
        if rem:
            raise AssertionError("epsilon^2 - r is not divisible by alpha")
        self._tensor = self._derive_structure_constants()
        self._sqrt_lock = threading.Lock()
        self._sqrt_cache = None
        if verify:
            self._verify_ramification()
            self._verify_reduced_discriminant()

    # -- construction-time derivations ---------------------------------

    def _derive_structure_constants(self):
        """Products of basis elements, derived through the (1,i,j,ij) basis.

        Each Lambda-basis element is alpha^(-e) * (vector over (1,i,j,ij))
        with e in {0, 1}; products are expanded with i^2 = alpha,
        j^2 = r, ij = -ji and converted back, asserting exact division.
        """
        F = self.F
        al, r, eps = self.alpha, self.r, self.epsilon

        # basis in (1, i, j, ij) coordinates with denominator alpha^e
        basis = [
            ((ONE_POLY, ZERO_POLY, ZERO_POLY, ZERO_POLY), 0),   # 1
            ((ZERO_POLY, ONE_POLY, ZERO_POLY, ZERO_POLY), 0),   # i
            ((ZERO_POLY, ZERO_POLY, ONE_POLY, ZERO_POLY), 0),   # j
            ((ZERO_POLY, eps, ZERO_POLY, ONE_POLY), 1),         # khat
        ]

        # multiplication table of the (1, i, j, ij) basis itself:
        # row s, column t -> coordinates of b_s * b_t
        Z, O = ZERO_POLY, ONE_POLY
        nal, nr = poly_neg(F, al), poly_neg(F, r)
        ij_table = {
            (0, 0): (O, Z, Z, Z), (0, 1): (Z, O, Z, Z),
            (0, 2): (Z, Z, O, Z), (0, 3): (Z, Z, Z, O),
            (1, 0): (Z, O, Z, Z), (1, 1): (al, Z, Z, Z),
            (1, 2): (Z, Z, Z, O), (1, 3): (Z, Z, al, Z),
            (2, 0): (Z, Z, O, Z), (2, 1): (Z, Z, Z, poly_neg(F, O)),
            (2, 2): (r, Z, Z, Z), (2, 3): (Z, nr, Z, Z),
            (3, 0): (Z, Z, Z, O), (3, 1): (Z, Z, nal, Z),
            (3, 2): (Z, r, Z, Z), (3, 3): (poly_mul(F, nal, r), Z, Z, Z),
        }

        def mul_ij(x, y):
            out = [Z, Z, Z, Z]
            for s in range(4):
                if not x[s]:
                    continue
                for t in range(4):
                    if not y[t]:
                        continue
                    c = poly_mul(F, x[s], y[t])
                    for k, w in enumerate(ij_table[(s, t)]):
                        if w:
                            out[k] = poly_add(F, out[k],
                                              poly_mul(F, c, w))
            return tuple(out)

        def to_lambda(x, denom_exp):
            # (x1, x2, x3, x4) over (1,i,j,ij): ij = alpha*khat - eps*i
            lam = [x[0], poly_sub(F, x[1], poly_mul(F, eps, x[3])), x[2],
                   poly_mul(F, al, x[3])]
            for _ in range(denom_exp):
                for k in range(4):
                    q, rem = poly_divmod(F, lam[k], al)
                    if rem:
                        raise AssertionError(
                            "structure constants not integral over the "
                            "maximal-order basis")
                    lam[k] = q
            return tuple(lam)

        tensor = [[None] * 4 for _ in range(4)]
        for s in range(4):
            xs, es = basis[s]
            for t in range(4):
                yt, et = basis[t]
                tensor[s][t] = to_lambda(mul_ij(xs, yt), es + et)
        return tensor

    def _verify_ramification(self):
        """hilbert_symbol(alpha, r, p) = -1 exactly for p in R."""
        F = self.F
        for p in self.ram.primes:
            if hilbert_symbol(F, self.alpha, self.r, p) != -1:
                raise AssertionError(f"algebra not ramified at {p}")
        if hilbert_symbol(F, self.alpha, self.r, self.alpha) != 1:
            raise AssertionError("algebra unexpectedly ramified at alpha")

    def _verify_reduced_discriminant(self):
        """det(trd(b_s b_t)) must generate the ideal (r^2)."""
        F = self.F
        gram = [[poly_scale(F, F.from_int(2), self._tensor[s][t][0])
                 for t in range(4)] for s in range(4)]
        det = _poly_det4(F, gram)
        r2 = poly_mul(F, self.r, self.r)
        q, rem = poly_divmod(F, det, r2)
        if rem or poly_deg(q) != 0:
            raise AssertionError(
                "reduced discriminant of the order basis is not (r)")

    # -- arithmetic in Lambda -------------------------------------------

    def mul(self, x: QuatElem, y: QuatElem) -> QuatElem:
        F = self.F
        out = [ZERO_POLY] * 4
        for s in range(4):
            if not x.lam[s]:
                continue
            for t in range(4):
                if not y.lam[t]:
                    continue
                c = poly_mul(F, x.lam[s], y.lam[t])
                for k, w in enumerate(self._tensor[s][t]):
                    if w:
                        out[k] = poly_add(F, out[k], poly_mul(F, c, w))
        return QuatElem(tuple(out))

    def add(self, x: QuatElem, y: QuatElem) -> QuatElem:
        F = self.F
        return QuatElem(tuple(poly_add(F, a, b)
                              for a, b in zip(x.lam, y.lam)))

    def scale(self, c: int, x: QuatElem) -> QuatElem:
        return QuatElem(tuple(poly_scale(self.F, c, a) for a in x.lam))

    def neg(self, x: QuatElem) -> QuatElem:
        return QuatElem(tuple(poly_neg(self.F, a) for a in x.lam))

    def conj(self, x: QuatElem) -> QuatElem:
        F = self.F
        l1, l2, l3, l4 = x.lam
        return QuatElem((l1, poly_neg(F, l2), poly_neg(F, l3),
                         poly_neg(F, l4)))

    def nrd(self, x: QuatElem):
        """Reduced norm x * conj(x), asserted scalar."""
        prod = self.mul(x, self.conj(x))
        if any(prod.lam[k] for k in (1, 2, 3)):
            raise AssertionError("x * conj(x) is not scalar")
        return prod.lam[0]

    def trd(self, x: QuatElem):
        return poly_scale(self.F, self.F.from_int(2), x.lam[0])

    def is_unit(self, x: QuatElem) -> bool:
        """Membership in Gamma: reduced norm in F_q^*."""
        n = self.nrd(x)
        return poly_deg(n) == 0

    def inverse_unit(self, x: QuatElem) -> QuatElem:
        """Inverse of a unit: conj(x) / nrd(x)."""
        n = self.nrd(x)
        if poly_deg(n) != 0:
            raise ValueError("not a unit of the order")
        return self.scale(self.F.inv(n[0]), self.conj(x))

    def power(self, x: QuatElem, k: int) -> QuatElem:
        if k < 0:
            return self.power(self.inverse_unit(x), -k)
        acc, base = QUAT_ONE, x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    # -- embedding into M_2(K_infinity) ----------------------------------

    def sqrt_alpha(self, prec: int) -> Laurent:
        """sqrt(alpha) on the 1-unit branch, memoized by precision."""
        with self._sqrt_lock:
            if self._sqrt_cache is None or self._sqrt_cache.prec < prec:
                self._sqrt_cache = newton_sqrt(self.F, self.alpha, prec)
            return self._sqrt_cache.truncate(prec)

    def embed(self, x: QuatElem, prec: int) -> Mat2:
        """iota(x) in M_2(K_infinity), entries at precision >= prec."""
        F = self.F
        maxdeg = max((poly_deg(c) for c in x.lam), default=0)
        pad = 2 * self.m + max(0, maxdeg) + poly_deg(self.r) + 4
        work = prec + pad
        s = self.sqrt_alpha(work)
        si = s.inv()

        def lift(f):
            if not f:
                return Laurent.zero(F)
            return Laurent.from_poly(F, f, work)

        l1, l2, l3, l4 = (lift(c) for c in x.lam)
        eps = lift(self.epsilon)
        r = lift(self.r)
        a = l1 + l2 * s + l4 * eps * si
        b = l3 + l4 * si
        c = l3 * r - l4 * r * si
        d = l1 - l2 * s - l4 * eps * si
        M = Mat2(a, b, c, d)
        for entry in M.entries():
            if not entry.is_exact_zero and entry.prec < prec:
                raise AssertionError(
                    "embedding lost more precision than budgeted")
        return M


def build_algebra(F: GF, primes, enforce_bound: bool = True,
                  verify: bool = True) -> AlgebraData:
    """Construct the algebra ramified exactly at the given primes."""
    return AlgebraData(F, primes, enforce_bound=enforce_bound, verify=verify)


def height(x: QuatElem) -> int:
    """max_i deg(lam_i); raises on the zero element."""
    if x.is_zero():
        raise ValueError("height of the zero element")
    return max(poly_deg(c) for c in x.lam if c)


def _poly_det4(F: GF, m):
    """Determinant of a 4x4 polynomial matrix by Laplace expansion."""

    def det2(a, b, c, d):
        return poly_sub(F, poly_mul(F, a, d), poly_mul(F, b, c))

    def det3(rows):
        (a, b, c), (d, e, f), (g, h, i) = rows
        t1 = poly_mul(F, a, det2(e, f, h, i))
        t2 = poly_mul(F, b, det2(d, f, g, i))
        t3 = poly_mul(F, c, det2(d, e, g, h))
        return poly_add(F, poly_sub(F, t1, t2), t3)

    total = ZERO_POLY
    for col in range(4):
        minor = [[m[r][c] for c in range(4) if c != col]
                 for r in range(1, 4)]
        term = poly_mul(F, m[0][col], det3(minor))
        total = (poly_add(F, total, term) if col % 2 == 0
                 else poly_sub(F, total, term))
    return total
