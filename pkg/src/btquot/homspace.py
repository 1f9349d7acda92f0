"""Equivariant hom sets between tree vertices, by exact linear algebra.

For vertices v, w of the tree, Hom(v, w) = {gamma in Gamma : gamma.v = w}
together with 0 is an F_q-vector space of dimension 0, 1 or 2 inside the
quaternion algebra.  Writing a candidate's four order-basis coordinates
as polynomials of degree <= n + m (the height bound; n is the larger of
the two distances to the base vertex, m = deg(alpha)/2), the condition
gamma.v = w is equivalent to

    pi^((n_w - n_v)/2) * Mw^(-1) * iota(gamma) * Mv  in  M_2(O_infinity),

where Mv, Mw are the vertex normal-form matrices.  Expanding iota(gamma)
over the order basis turns the integrality condition into the vanishing
of every negative-pi-power coefficient — a finite linear system over F_q
in the polynomial coefficients, solved exactly by Gauss elimination.

Solutions automatically have reduced norm in F_q^* and map v to w (the
determinant argument fixes the norm's valuation, and a unit of the order
with the right action is forced); both facts are asserted, never used
as filters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import GF, ONE_POLY, ZERO_POLY, poly_add, poly_scale, poly_trim
from .laurent import INF, InsufficientPrecisionError, Laurent, Mat2
from .quaternion import AlgebraData, QuatElem, height
from .tree import BASE_VERTEX, Vertex, act, distance, retry_with_precision

_ORDER_BASIS = (
    QuatElem((ONE_POLY, ZERO_POLY, ZERO_POLY, ZERO_POLY)),
    QuatElem((ZERO_POLY, ONE_POLY, ZERO_POLY, ZERO_POLY)),
    QuatElem((ZERO_POLY, ZERO_POLY, ONE_POLY, ZERO_POLY)),
    QuatElem((ZERO_POLY, ZERO_POLY, ZERO_POLY, ONE_POLY)),
)


@dataclass(frozen=True)
class HomSet:
    """All gamma with gamma.source = target, as an F_q-basis.

    The nonzero F_q-combinations of the basis are exactly the hom set;
    the basis is in reduced echelon order with leading coefficients 1.
    """

    field: GF
    source: Vertex
    target: Vertex
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def cardinality(self) -> int:
        return self.field.q ** self.dim - 1

    def elements(self):
        """All nonzero F_q-combinations of the basis."""
        F = self.field
        for coeffs in itertools.product(F.elements(), repeat=self.dim):
            if all(c == 0 for c in coeffs):
                continue
            lam = [ZERO_POLY] * 4
            for c, b in zip(coeffs, self.basis):
                if c == 0:
                    continue
                for k in range(4):
                    lam[k] = poly_add(F, lam[k],
                                      poly_scale(F, c, b.lam[k]))
            yield QuatElem(tuple(lam))


def _exact_vertex_matrix(F: GF, v: Vertex) -> Mat2:
    """[[pi^n, g], [0, 1]] with exact entries (the window representative
    of g is a finite pi-expansion)."""
    pi_n = Laurent(F, v.n, (1,), INF)
    g = Laurent(F, v.gval, v.gcoeffs, INF)
    one = Laurent(F, 0, (1,), INF)
    return Mat2(pi_n, g, Laurent.zero(F), one)


def _exact_vertex_matrix_inverse(F: GF, v: Vertex) -> Mat2:
    # [[pi^n, g], [0, 1]]^(-1) = [[pi^(-n), -g*pi^(-n)], [0, 1]]
    pi_neg = Laurent(F, -v.n, (1,), INF)
    neg_g = Laurent(F, v.gval - v.n, tuple(F.neg(c) for c in v.gcoeffs),
                    INF)
    one = Laurent(F, 0, (1,), INF)
    return Mat2(pi_neg, neg_g, Laurent.zero(F), one)


def _system_matrix_columns(alg: AlgebraData, v: Vertex, w: Vertex,
                           prec: int):
    """Columns of the map lambda -> pi^shift * Mw^(-1) iota(lambda) Mv,
    flattened as (a11, a12, a21, a22)."""
    F = alg.F
    shift = (w.n - v.n) // 2
    Mv = _exact_vertex_matrix(F, v)
    Mw_inv = _exact_vertex_matrix_inverse(F, w)
    cols = []
    for b in _ORDER_BASIS:
        Y = Mw_inv * alg.embed(b, prec) * Mv
        cols.append(tuple(e.shift(shift) for e in Y.entries()))
    return cols


def _assemble_equations(F: GF, cols, nm: int):
    """F_q-linear equations forcing all pi^(-t), t >= 1, coefficients of
    M.lambda to vanish, lambda_col = sum_k lam[col][k] * pi^(-k)."""
    vmin = 0
    for col in cols:
        for e in col:
            if e.coeffs:
                vmin = min(vmin, e.val)
    tmax = nm - vmin
    rows = []
    for rho in range(4):
        for t in range(1, tmax + 1):
            row = []
            for col in range(4):
                e = cols[col][rho]
                for k in range(nm + 1):
                    row.append(e.coeff(k - t))
            if any(row):
                rows.append(row)
    return rows


def _kernel_basis(F: GF, rows, ncols: int):
    """Basis of the kernel of the row system, deterministic echelon
    order, each vector scaled so its first nonzero entry is 1."""
    if F.e == 1:
        vecs = _kernel_prime(F.p, rows, ncols)
    else:
        vecs = _kernel_generic(F, rows, ncols)
    out = []
    for vec in vecs:
        lead = next(c for c in vec if c)
        inv = F.inv(lead)
        out.append(tuple(F.mul(inv, c) for c in vec))
    return out


def _kernel_prime(p: int, rows, ncols: int):
    A = (np.array(rows, dtype=np.int64).reshape(-1, ncols) % p
         if rows else np.zeros((0, ncols), dtype=np.int64))
    nrows = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if A[i, c]:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            A[[r, sel]] = A[[sel, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        other = A[:, c].copy()
        other[r] = 0
        A = (A - np.outer(other, A[r])) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = int(-A[i, f]) % p
        basis.append(tuple(vec))
    return basis


def _kernel_generic(F: GF, rows, ncols: int):
    A = [list(row) for row in rows]
    nrows = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, nrows) if A[i][c]), None)
        if sel is None:
            continue
        A[r], A[sel] = A[sel], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = F.neg(A[i][f])
        basis.append(tuple(vec))
    return basis


def _vector_to_quat(vec, nm: int) -> QuatElem:
    lam = []
    for col in range(4):
        coeffs = vec[col * (nm + 1):(col + 1) * (nm + 1)]
        lam.append(poly_trim(tuple(coeffs)))
    return QuatElem(tuple(lam))


def _assert_solution(alg: AlgebraData, gamma: QuatElem, v: Vertex,
                     w: Vertex, nm: int) -> None:
    if not alg.is_unit(gamma):
        raise AssertionError("hom solution is not a unit of the order")
    if height(gamma) > nm:
        raise AssertionError("hom solution violates the height bound")

    def run(prec):
        return act(alg.embed(gamma, prec), v)

    if retry_with_precision(run, 4 * (nm + alg.m + 1) + 8) != w:
        raise AssertionError("hom solution does not map source to target")


def hom(alg: AlgebraData, v: Vertex, w: Vertex) -> HomSet:
    """The set {gamma in Gamma : gamma.v = w} as a HomSet."""
    F = alg.F
    if (v.n - w.n) % 2 != 0:
        return HomSet(F, v, w, ())
    n = max(distance(F, v, BASE_VERTEX), distance(F, w, BASE_VERTEX))
    d = max(alg.ram.d, alg.m)
    nm = n + alg.m
    base_prec = 2 * n + d + alg.m + 1

    def attempt(prec):
        cols = _system_matrix_columns(alg, v, w, prec)
        for col in cols:
            for e in col:
                if not e.is_exact_zero and e.prec < nm:
                    raise InsufficientPrecisionError(
                        "system matrix below required precision")
        return _assemble_equations(F, cols, nm)

    rows = retry_with_precision(attempt, base_prec)
    vecs = _kernel_basis(F, rows, 4 * (nm + 1))
    basis = tuple(_vector_to_quat(vec, nm) for vec in vecs)
    if len(basis) > 2:
        raise AssertionError(
            f"hom space has impossible dimension {len(basis)}")
    for gamma in basis:
        _assert_solution(alg, gamma, v, w, nm)
    return HomSet(F, v, w, basis)


def end_and_classify(alg: AlgebraData, v: Vertex):
    """(End(v), stability): stable iff the endomorphisms are just the
    scalars (dim 1), unstable iff they form a quadratic field (dim 2)."""
    ends = hom(alg, v, v)
    if ends.dim == 1:
        return ends, "stable"
    if ends.dim == 2:
        return ends, "unstable"
    raise AssertionError(
        f"endomorphism algebra of {v!r} has impossible dimension "
        f"{ends.dim}")
