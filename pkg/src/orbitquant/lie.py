"""The Lie algebra of sym(n) x| GL+(n) inside sp(n).

The algebra is spanned by block matrices (a  b; 0  -a^t) with a running
over the elementary gl(n) matrices and b over an unnormalized basis of
sym(n) (E_ii on the diagonal, E_ij + E_ji off it), so all structure
constants are integers.

The dual space is realized as the complementary block shape
(a  0; c  -a^t) via the trace form tr(AB), which is nondegenerate on the
product of the two shapes.  Coordinate functions on the dual are the
pairings against the basis itself: x_i(p) = tr(p X_i).  With that choice
the Lie-Poisson bracket of two coordinates is literally the structure
constant expansion, with no normalization factors; the conversion between
coordinates and raw matrix entries of a dual point lives in exactly one
place, ``DualCoordinates``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .errors import StructuralError
from .poly import MultiPoly

ZERO = Fraction(0)
ONE = Fraction(1)


def _elementary(n: int, i: int, j: int) -> la.Matrix:
    m = la.zeros(n, n)
    m[i][j] = ONE
    return m


def _sym_basis_matrix(n: int, i: int, j: int) -> la.Matrix:
    m = la.zeros(n, n)
    if i == j:
        m[i][i] = ONE
    else:
        m[i][j] = ONE
        m[j][i] = ONE
    return m


def algebra_block(a: la.Matrix, b: la.Matrix) -> la.Matrix:
    """Embed (a, b) as the 2n x 2n block matrix (a  b; 0  -a^t)."""
    n = len(a)
    out = la.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
            out[i][n + j] = b[i][j]
            out[n + i][n + j] = -a[j][i]
    return out


def dual_block(c: la.Matrix, a: la.Matrix) -> la.Matrix:
    """Embed a dual point (c, a) as the block matrix (a  0; c  -a^t)."""
    n = len(a)
    out = la.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
            out[n + i][j] = c[i][j]
            out[n + i][n + j] = -a[j][i]
    return out


def standard_symplectic_form(n: int) -> la.Matrix:
    j = la.zeros(2 * n, 2 * n)
    for i in range(n):
        j[i][n + i] = ONE
        j[n + i][i] = -ONE
    return j


def trace_pairing(a: la.Matrix, b: la.Matrix) -> Fraction:
    """tr(AB) for two equally sized square matrices, exactly."""
    ra, ca = la.shape(a)
    rb, cb = la.shape(b)
    if (ra, ca) != (rb, cb) or ra != ca:
        raise StructuralError("trace pairing needs equally sized square matrices")
    total = ZERO
    for i in range(ra):
        for k in range(ca):
            total += a[i][k] * b[k][i]
    return total


@dataclass(frozen=True)
class LieBasis:
    """Basis of the algebra: gl(n) letters first, then sym(n) letters.

    names[i] is 'a{r}{s}' for the gl part and 'b{r}{s}' (r <= s) for the
    sym part; kinds[i] records ('a', r, s) or ('b', r, s) with 0-based
    indices.  elements[i] is the 2n x 2n block matrix.
    """

    n: int
    names: tuple[str, ...]
    kinds: tuple[tuple[str, int, int], ...]
    elements: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.names)

    def element(self, i: int) -> la.Matrix:
        return [list(row) for row in self.elements[i]]

    def gl_part(self, i: int) -> la.Matrix:
        """The a-block of basis element i."""
        kind, r, s = self.kinds[i]
        a = la.zeros(self.n, self.n)
        if kind == "a":
            a[r][s] = ONE
        return a

    def sym_part(self, i: int) -> la.Matrix:
        """The b-block of basis element i."""
        kind, r, s = self.kinds[i]
        b = la.zeros(self.n, self.n)
        if kind == "b":
            b[r][s] = ONE
            b[s][r] = ONE
        return b

    def index_of(self, name: str) -> int:
        return self.names.index(name)


class StructureConstants:
    """Sparse structure constants c_ij^k with [X_i, X_j] = sum c_ij^k X_k."""

    def __init__(self, dim: int, table: dict[tuple[int, int], dict[int, Fraction]]):
        self.dim = dim
        self._table = table  # keys (i, j) with i < j only

    def bracket_coeffs(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        flipped = self._table.get((j, i), {})
        return {k: -v for k, v in flipped.items()}

    def entries(self):
        """Iterate (i, j, k, value) over stored i < j entries."""
        for (i, j), coeffs in self._table.items():
            for k, v in coeffs.items():
                yield i, j, k, v

    def to_json(self) -> list[dict]:
        out = []
        for i, j, k, v in sorted(self.entries()):
            out.append({"i": i, "j": j, "k": k, "value": str(v)})
        return out


def _decompose_in_basis(basis: LieBasis, m: la.Matrix) -> dict[int, Fraction]:
    """Write a block matrix of the algebra shape in the basis, exactly.

    The block structure makes the solve a direct entry read-off: the
    a-block entry (r, s) is the coefficient of letter a{rs}, and the
    b-block entry (r, s), r <= s, the coefficient of letter b{rs}.  The
    reconstruction is verified so a non-member input cannot slip through.
    """
    n = basis.n
    coeffs: dict[int, Fraction] = {}
    for idx, (kind, r, s) in enumerate(basis.kinds):
        if kind == "a":
            v = m[r][s]
        else:
            v = m[r][n + s]
        if v != 0:
            coeffs[idx] = v
    # verify: the matrix must equal the sum it claims to be
    recon = la.zeros(2 * n, 2 * n)
    for idx, v in coeffs.items():
        recon = la.mat_add(recon, la.mat_scale(basis.element(idx), v))
    if recon != m:
        raise StructuralError("matrix does not lie in the spanned subalgebra")
    return coeffs


def build_lie_basis(n: int) -> tuple[LieBasis, StructureConstants]:
    """Construct the block basis and its exact structure constants.

    Structure constants come from exact matrix commutators of the basis
    elements, decomposed back in the basis; closure of the block shape is
    verified on every commutator.
    """
    if n < 1:
        raise StructuralError("n must be at least 1")
    names: list[str] = []
    kinds: list[tuple[str, int, int]] = []
    elements: list[la.Matrix] = []
    for i in range(n):
        for j in range(n):
            names.append(f"a{i + 1}{j + 1}")
            kinds.append(("a", i, j))
            elements.append(algebra_block(_elementary(n, i, j), la.zeros(n, n)))
    for i in range(n):
        for j in range(i, n):
            names.append(f"b{i + 1}{j + 1}")
            kinds.append(("b", i, j))
            elements.append(algebra_block(la.zeros(n, n), _sym_basis_matrix(n, i, j)))
    basis = LieBasis(
        n,
        tuple(names),
        tuple(kinds),
        tuple(tuple(tuple(row) for row in m) for m in elements),
    )
    assert basis.dim == n * n + n * (n + 1) // 2

    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(basis.dim):
        mi = basis.element(i)
        for j in range(i + 1, basis.dim):
            mj = basis.element(j)
            comm = la.mat_sub(la.mat_mul(mi, mj), la.mat_mul(mj, mi))
            coeffs = _decompose_in_basis(basis, comm)
            if coeffs:
                table[(i, j)] = coeffs
    return basis, StructureConstants(basis.dim, table)


@dataclass(frozen=True)
class DualCoordinates:
    """Linear coordinates on the dual space and entry conversions.

    Coordinate i of a dual point p is tr(p X_i).  In terms of the raw
    blocks (c, a) of p this evaluates to 2 a[s][r] for letter a{rs}, to
    c[r][r] for letter b{rr} and to 2 c[r][s] for letter b{rs}, r < s;
    those constant factors are fixed here once and nowhere else.
    """

    basis: LieBasis
    variables: tuple[str, ...] = field(init=False, default=())

    def __post_init__(self):
        object.__setattr__(
            self, "variables", tuple("x" + s for s in self.basis.names)
        )

    def coords_of_point(self, c: la.Matrix, a: la.Matrix) -> list[Fraction]:
        p = dual_block(c, a)
        return [
            trace_pairing(p, self.basis.element(i)) for i in range(self.basis.dim)
        ]

    def point_of_coords(self, coords: Sequence[Fraction]) -> tuple[la.Matrix, la.Matrix]:
        n = self.basis.n
        if len(coords) != self.basis.dim:
            raise StructuralError("wrong coordinate vector length")
        c = la.zeros(n, n)
        a = la.zeros(n, n)
        for idx, (kind, r, s) in enumerate(self.basis.kinds):
            v = Fraction(coords[idx])
            if kind == "a":
                a[s][r] = v / 2
            elif r == s:
                c[r][r] = v
            else:
                half = v / 2
                c[r][s] = half
                c[s][r] = half
        return c, a

    def entry_polynomials(self) -> tuple[list[list[MultiPoly]], list[list[MultiPoly]]]:
        """The raw entries (c, a) of a dual point as linear polynomials.

        Returns symbolic n x n matrices over the coordinate ring; every
        semiinvariant construction goes through these, so the coordinate
        normalization is applied in a single place.
        """
        n = self.basis.n
        zero = MultiPoly.zero(self.variables)
        c_mat = [[zero for _ in range(n)] for _ in range(n)]
        a_mat = [[zero for _ in range(n)] for _ in range(n)]
        for idx, (kind, r, s) in enumerate(self.basis.kinds):
            var = MultiPoly.variable(self.variables, idx)
            if kind == "a":
                a_mat[s][r] = var * Fraction(1, 2)
            elif r == s:
                c_mat[r][r] = var
            else:
                c_mat[r][s] = var * Fraction(1, 2)
                c_mat[s][r] = var * Fraction(1, 2)
        return c_mat, a_mat

    def pairing_matrix(self) -> la.Matrix:
        """Pairing of the algebra basis against the mirrored dual basis.

        The dual-shape basis uses the same letter scheme with the c block
        in place of b.  Nondegeneracy of the trace form on the two shapes
        is the invertibility of this matrix.
        """
        n = self.basis.n
        dual_elems = []
        for kind, r, s in self.basis.kinds:
            if kind == "a":
                dual_elems.append(dual_block(la.zeros(n, n), _elementary(n, r, s)))
            else:
                dual_elems.append(dual_block(_sym_basis_matrix(n, r, s), la.zeros(n, n)))
        return [
            [trace_pairing(self.basis.element(i), d) for d in dual_elems]
            for i in range(self.basis.dim)
        ]


def lie_poisson_bracket(
    f: MultiPoly, g: MultiPoly, sc: StructureConstants
) -> MultiPoly:
    """Lie-Poisson bracket {f, g} = sum c_ij^k x_k (df/dx_i)(dg/dx_j).

    Bilinear, antisymmetric, a derivation in each slot, and satisfies the
    Jacobi identity because the structure constants do.  On coordinate
    functions it returns the bracket's structure constant expansion, which
    pins the sign convention used by the star product's first-order term.
    """
    if f.variables != g.variables:
        raise StructuralError("bracket operands live in different variable lists")
    if len(f.variables) != sc.dim:
        raise StructuralError("variable count does not match the algebra dimension")
    variables = f.variables
    result = MultiPoly.zero(variables)
    partials_f = {}
    partials_g = {}

    def pf(i):
        if i not in partials_f:
            partials_f[i] = f.diff(i)
        return partials_f[i]

    def pg(j):
        if j not in partials_g:
            partials_g[j] = g.diff(j)
        return partials_g[j]

    for i, j, k, value in sc.entries():
        dfi, dgj = pf(i), pg(j)
        dfj, dgi = pf(j), pg(i)
        term = dfi * dgj - dfj * dgi
        if term.is_zero():
            continue
        xk = MultiPoly.variable(variables, k)
        result = result + xk * term * value
    return result


def basis_to_json(basis: LieBasis, sc: StructureConstants) -> dict:
    """Exportable description: names, block matrices, sparse constants."""
    from .jsonio import matrix_to_json

    return {
        "n": basis.n,
        "dim": basis.dim,
        "names": list(basis.names),
        "elements": [matrix_to_json(basis.element(i)) for i in range(basis.dim)],
        "structure_constants": sc.to_json(),
    }
