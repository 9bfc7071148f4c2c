"""The group sym(n) x| GL+(n): multiplication, actions, orbit normal form.

Group elements are pairs (x, g) with x symmetric and det(g) > 0, embedded
in Sp(n) as the block matrix (g  x*gcheck; 0  gcheck) with
gcheck = (g^t)^{-1}.  The multiplication implemented here is the one the
embedding induces,

    (x1, g1)(x2, g2) = (x1 + g1 x2 g1^t, g1 g2),

which is associative and makes the embedding a homomorphism; the adjoint
and coadjoint formulas below are its derivatives and are verified against
block-matrix conjugation in the test suite.

Everything is exact on Fraction inputs.  Only the orbit normal form uses
floating point (Cholesky and a real Schur decomposition), with explicit
residual and regularity tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from . import linalg as la
from .errors import DomainError, StructuralError
from .lie import LieBasis, algebra_block, dual_block, trace_pairing


def _is_exact(m) -> bool:
    return all(isinstance(x, (Fraction, int)) for row in m for x in row)


def _det(m):
    if _is_exact(m):
        return la.det(m)
    return float(np.linalg.det(np.asarray(m, dtype=float)))


def _inv(m):
    if _is_exact(m):
        return la.inverse(m)
    return np.linalg.inv(np.asarray(m, dtype=float)).tolist()


def _check_symmetric(m, what: str, tol: float = 1e-9):
    rows, cols = la.shape(m)
    if rows != cols:
        raise StructuralError(f"{what} must be square")
    if _is_exact(m):
        if not la.is_symmetric(m):
            raise DomainError(f"{what} must be symmetric")
    else:
        arr = np.asarray(m, dtype=float)
        scale = max(1.0, float(np.abs(arr).max()))
        if float(np.abs(arr - arr.T).max()) > tol * scale:
            raise DomainError(f"{what} must be symmetric")


@dataclass(frozen=True)
class GroupElement:
    """A pair (x, g), x symmetric, det(g) > 0."""

    x: la.Matrix
    g: la.Matrix

    def __post_init__(self):
        _check_symmetric(self.x, "x block")
        rg, cg = la.shape(self.g)
        if (rg, cg) != la.shape(self.x):
            raise StructuralError("x and g must have the same size")
        d = _det(self.g)
        if not d > 0:
            raise DomainError(f"det(g) = {d} must be positive")

    @property
    def n(self) -> int:
        return len(self.g)


@dataclass(frozen=True)
class DualPoint:
    """A dual-space point (c, a) with c symmetric."""

    c: la.Matrix
    a: la.Matrix

    def __post_init__(self):
        _check_symmetric(self.c, "c block")
        if la.shape(self.a) != la.shape(self.c):
            raise StructuralError("c and a must have the same size")

    @property
    def n(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class LieElement:
    """An algebra element (b, a) with b symmetric (block (a  b; 0  -a^t))."""

    b: la.Matrix
    a: la.Matrix

    def __post_init__(self):
        _check_symmetric(self.b, "b block")
        if la.shape(self.a) != la.shape(self.b):
            raise StructuralError("b and a must have the same size")


def group_identity(n: int) -> GroupElement:
    return GroupElement(la.zeros(n, n), la.identity(n))


def gcheck(g: la.Matrix) -> la.Matrix:
    """The contragredient (g^t)^{-1}."""
    return _inv(la.transpose(g))


def group_multiply(p: GroupElement, q: GroupElement) -> GroupElement:
    """(x1, g1)(x2, g2) = (x1 + g1 x2 g1^t, g1 g2)."""
    if p.n != q.n:
        raise StructuralError("group elements of different sizes")
    x = la.mat_add(p.x, la.mat_mul(la.mat_mul(p.g, q.x), la.transpose(p.g)))
    return GroupElement(x, la.mat_mul(p.g, q.g))


def group_inverse(p: GroupElement) -> GroupElement:
    ginv = _inv(p.g)
    x = la.mat_neg(la.mat_mul(la.mat_mul(ginv, p.x), la.transpose(ginv)))
    return GroupElement(x, ginv)


def embed_sp(p: GroupElement) -> la.Matrix:
    """The symplectic block matrix (g  x*gcheck; 0  gcheck)."""
    n = p.n
    gc = gcheck(p.g)
    xgc = la.mat_mul(p.x, gc)
    out = la.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            out[i][j] = p.g[i][j]
            out[i][n + j] = xgc[i][j]
            out[n + i][n + j] = gc[i][j]
    return out


def adjoint(p: GroupElement, elt: LieElement) -> LieElement:
    """Ad(x,g)(b,a) = (g b g^t - {g a g^-1 x + (g a g^-1 x)^t}, g a g^-1)."""
    g, x = p.g, p.x
    ginv = _inv(g)
    a_new = la.mat_mul(la.mat_mul(g, elt.a), ginv)
    gax = la.mat_mul(a_new, x)
    b_new = la.mat_sub(
        la.mat_mul(la.mat_mul(g, elt.b), la.transpose(g)),
        la.mat_add(gax, la.transpose(gax)),
    )
    return LieElement(b_new, a_new)


def coadjoint(p: GroupElement, pt: DualPoint) -> DualPoint:
    """Ad*(x,g)(c,a) = (gcheck c g^-1, g a g^-1 + x gcheck c g^-1)."""
    g, x = p.g, p.x
    ginv = _inv(g)
    gc = gcheck(g)
    c_new = la.mat_mul(la.mat_mul(gc, pt.c), ginv)
    a_new = la.mat_add(
        la.mat_mul(la.mat_mul(g, pt.a), ginv),
        la.mat_mul(x, c_new),
    )
    return DualPoint(c_new, a_new)


def ad_star(elt: LieElement, pt: DualPoint) -> DualPoint:
    """Derivative of the coadjoint action along the algebra element (b, a).

    Differentiating Ad* along the curves (t*b, I) and (0, I + t*a) gives
    (c, a) -> (-a^t c - c a_dir, a_dir a - a a_dir + b c); the pairing
    duality <ad*_X p, Y> = -<p, [X, Y]> is asserted exactly in tests.
    """
    alpha, beta = elt.a, elt.b
    c_dot = la.mat_neg(
        la.mat_add(la.mat_mul(la.transpose(alpha), pt.c), la.mat_mul(pt.c, alpha))
    )
    a_dot = la.mat_add(
        la.mat_sub(la.mat_mul(alpha, pt.a), la.mat_mul(pt.a, alpha)),
        la.mat_mul(beta, pt.c),
    )
    return DualPoint(c_dot, a_dot)


def pair_dual_algebra(pt: DualPoint, elt: LieElement) -> Fraction:
    """Trace pairing of a dual point against an algebra element."""
    return trace_pairing(dual_block(pt.c, pt.a), algebra_block(elt.a, elt.b))


def basis_lie_element(basis: LieBasis, i: int) -> LieElement:
    return LieElement(basis.sym_part(i), basis.gl_part(i))


def orbit_dimension(pt: DualPoint, basis: LieBasis) -> int:
    """Exact rank of the infinitesimal coadjoint action at ``pt``.

    Rows are the images ad*_{X_i}(pt) in trace-pairing coordinates; the
    rank equals the dimension of the coadjoint orbit through the point.
    """
    if pt.n != basis.n:
        raise StructuralError("point size does not match the basis")
    rows = []
    for i in range(basis.dim):
        image = ad_star(basis_lie_element(basis, i), pt)
        rows.append(
            [
                pair_dual_algebra(image, basis_lie_element(basis, j))
                for j in range(basis.dim)
            ]
        )
    return la.rational_rank(rows)


def is_positive_definite(c: la.Matrix) -> bool:
    """Exact Sylvester criterion for Fraction input, Cholesky for floats."""
    if _is_exact(c) and la.is_symmetric(c):
        n = len(c)
        for k in range(1, n + 1):
            minor = [row[:k] for row in c[:k]]
            if la.det(minor) <= 0:
                return False
        return True
    try:
        np.linalg.cholesky(np.asarray(c, dtype=float))
        return True
    except np.linalg.LinAlgError:
        return False


@dataclass(frozen=True)
class NormalForm:
    """Canonical orbit representative (I, H) and the move that reaches it.

    H is skew with 2x2 blocks (0  l_i; -l_i  0) down the diagonal, sorted
    by decreasing |l_i|, plus a zero row/column when n is odd.  For odd n
    every l_i is nonnegative.  For even n the last parameter carries the
    sign of the Pfaffian of the skew part: no positive-determinant move
    can flip it, and the sign is itself an orbit invariant.
    """

    lambdas: tuple[float, ...]
    H: tuple[tuple[float, ...], ...]
    witness: GroupElement
    residual: float
    regular: bool

    @property
    def n(self) -> int:
        return len(self.H)

    @property
    def k(self) -> int:
        return len(self.lambdas)


def lambda_block_matrix(n: int, lambdas) -> list[list]:
    """Assemble the skew block matrix for given block parameters."""
    k = n // 2
    if len(lambdas) != k:
        raise StructuralError(f"expected {k} block parameters, got {len(lambdas)}")
    zero = Fraction(0) if all(isinstance(l, (Fraction, int)) for l in lambdas) else 0.0
    H = [[zero for _ in range(n)] for _ in range(n)]
    for i, lam in enumerate(lambdas):
        H[2 * i][2 * i + 1] = lam
        H[2 * i + 1][2 * i] = -lam
    return H


def normal_form(pt: DualPoint, tol: float = 1e-9, gap: float = 1e-6) -> NormalForm:
    """Reduce (c, a) to (I, H) by a composition of three coadjoint moves.

    1. (0, g) with g^t g = c (Cholesky) sends c to the identity.
    2. (-sym(a'), I) removes the symmetric part of the transported a.
    3. (0, r) with r special orthogonal block-diagonalizes the skew part
       (real Schur form), sorts blocks by decreasing |l| and normalizes
       signs into the (0  l; -l  0) convention.

    Each step is a group element, so their composition is a witness
    carrying the input to its normal form; the residual of that transport
    is computed and stored.  Raises DomainError when c is not positive
    definite.
    """
    n = pt.n
    c = np.asarray([[float(v) for v in row] for row in pt.c])
    a = np.asarray([[float(v) for v in row] for row in pt.a])
    if not is_positive_definite(pt.c):
        raise DomainError("c block must be positive definite")

    # move 1: make c the identity
    L = np.linalg.cholesky(c)  # c = L L^t
    g1 = L.T  # then g1^t g1 = c
    p1 = GroupElement(np.zeros((n, n)).tolist(), g1.tolist())
    a1 = g1 @ a @ np.linalg.inv(g1)

    # move 2: remove the symmetric part
    x2 = -(a1 + a1.T) / 2.0
    p2 = GroupElement(x2.tolist(), np.eye(n).tolist())
    s = (a1 - a1.T) / 2.0

    # move 3: special orthogonal block diagonalization of the skew part
    T, Z = scipy.linalg.schur(s, output="real")
    scale = max(1.0, float(np.abs(s).max()))
    pair_tol = 1e-12 * scale
    blocks: list[tuple[int, float]] = []
    zeros_at: list[int] = []
    i = 0
    while i < n:
        if i + 1 < n and abs(T[i, i + 1]) > pair_tol:
            blocks.append((i, float(T[i, i + 1])))
            i += 2
        else:
            zeros_at.append(i)
            i += 1
    blocks.sort(key=lambda bm: -abs(bm[1]))

    # W maps Schur coordinates to target coordinates: sorted blocks first
    # (swapped in-block when the parameter is negative), zeros trailing
    W = np.zeros((n, n))
    lambdas: list[float] = []
    row = 0
    for start, mu in blocks:
        if mu >= 0:
            W[row, start] = 1.0
            W[row + 1, start + 1] = 1.0
        else:
            W[row, start + 1] = 1.0
            W[row + 1, start] = 1.0
        lambdas.append(abs(mu))
        row += 2
    for z in zeros_at:
        W[row, z] = 1.0
        row += 1
    # unpaired zero coordinates combine into zero blocks of H
    while len(lambdas) < n // 2:
        lambdas.append(0.0)

    r = W @ Z.T
    if np.linalg.det(r) < 0:
        if zeros_at:
            # the trailing target coordinate belongs to a zero block, so
            # flipping it fixes the determinant without touching H
            r[n - 1, :] *= -1.0
        else:
            # flip the last block; the parameter sign is an invariant
            k = len(lambdas)
            r[[2 * k - 2, 2 * k - 1], :] = r[[2 * k - 1, 2 * k - 2], :]
            lambdas[-1] = -lambdas[-1]
    p3 = GroupElement(np.zeros((n, n)).tolist(), r.tolist())

    witness = group_multiply(p3, group_multiply(p2, p1))
    H = lambda_block_matrix(n, lambdas)
    moved = coadjoint(witness, pt)
    residual = max(
        float(np.abs(np.asarray(moved.c, dtype=float) - np.eye(n)).max()),
        float(np.abs(np.asarray(moved.a, dtype=float) - np.asarray(H, dtype=float)).max()),
    )

    abs_sorted = [abs(l) for l in lambdas]
    regular = bool(lambdas) and min(abs_sorted) > gap * scale
    for u, v in zip(abs_sorted, abs_sorted[1:]):
        if u - v <= gap * scale:
            regular = False
    if n == 1:
        regular = True

    return NormalForm(
        lambdas=tuple(lambdas),
        H=tuple(tuple(row) for row in H),
        witness=witness,
        residual=residual,
        regular=regular,
    )
