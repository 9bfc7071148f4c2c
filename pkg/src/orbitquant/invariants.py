"""Invariant functions, semiinvariant polynomials and orbit ideals.

The coadjoint action admits no nonconstant invariant polynomials, but it
has semiinvariants: polynomials rescaled by a power of det(g).  With
S = c a c^-1 - a^t the trace functions tr(S^(2i)) / 2^(2i) are invariant
rational functions, and clearing denominators with the adjugate gives the
polynomial semiinvariants

    h_i = tr(T^(2i)),   T = c a adj(c) - det(c) a^t,

of weight -4i.  For even n there is additionally a Pfaffian semiinvariant
P = Pf((a adj(c) - adj(c) a^t) / 2) of weight 1 - n, whose square joins
the trace family in cutting out regular orbits:

    trace type:    p_i = h_i - alpha_i det(c)^(2i)
    Pfaffian type: p_k = P^2 - alpha_k det(c)^(2k-1)

with alpha constants read off the orbit's normal form.  A degree-bounded
certificate that invariant polynomials are constant is obtained from the
exact kernel of the infinitesimal action on each graded piece.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .errors import CapacityError, DomainError, StructuralError
from .groebner import Capacity, DEFAULT_CAPACITY
from .lie import DualCoordinates, build_lie_basis
from .orbits import DualPoint, NormalForm
from .poly import MultiPoly, monomials_up_to_degree


def pfaffian(m: la.Matrix):
    """Pfaffian of an even-size skew-symmetric matrix, by row expansion.

    Exact and generic over the entry ring (Fractions or polynomials).
    Satisfies Pf(m)^2 = det(m); the 2x2 convention is Pf((0 l; -l 0)) = l.
    """
    rows, cols = la.shape(m)
    if rows != cols or rows % 2 != 0:
        raise DomainError("pfaffian requires an even-size square matrix")
    if not la.is_skew(m):
        raise DomainError("pfaffian requires a skew-symmetric matrix")
    return _pfaffian_rec(m)


def _pfaffian_rec(m: la.Matrix):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 2:
        return m[0][1]
    total = None
    for j in range(1, n):
        entry = m[0][j]
        keep = [i for i in range(1, n) if i != j]
        minor = [[m[r][c] for c in keep] for r in keep]
        term = entry * _pfaffian_rec(minor)
        if j % 2 == 0:
            term = -term
        total = term if total is None else total + term
    return total


def invariant_trace_power(i: int, pt: DualPoint) -> Fraction:
    """The invariant f_i = tr((c a c^-1 - a^t)^(2i)) / 2^(2i), exactly.

    Constant along coadjoint orbits; at a normal form (I, H) it equals
    tr(H^(2i)) = 2 (-1)^i sum_j l_j^(2i).  Requires invertible c.
    """
    if i < 1:
        raise StructuralError("invariant index must be >= 1")
    if la.det(pt.c) == 0:
        raise DomainError("c block must be invertible")
    cinv = la.inverse(pt.c)
    s = la.mat_sub(la.mat_mul(la.mat_mul(pt.c, pt.a), cinv), la.transpose(pt.a))
    power = la.identity(pt.n)
    for _ in range(2 * i):
        power = la.mat_mul(power, s)
    return la.trace(power) / Fraction(4) ** i


def pfaffian_invariant(pt: DualPoint) -> float:
    """Pf((a c^-1 - (a c^-1)^t)/2) * det(c)^(1/2) for even n (float).

    The square root makes this irrational in general, so the value is
    numeric; its sign distinguishes the two real orbits sharing the same
    trace invariants.
    """
    import math

    if pt.n % 2 != 0:
        raise DomainError("the Pfaffian invariant exists only for even n")
    d = la.det(pt.c)
    if d <= 0:
        raise DomainError("c block must be positive definite")
    k = pt.n // 2
    p = pfaffian_semiinvariant_value(pt)
    return float(p) / float(d) ** k * math.sqrt(float(d))


def _denominator_cleared_matrix(pt: DualPoint) -> la.Matrix:
    """T = c a adj(c) - det(c) a^t; equals det(c) (c a c^-1 - a^t)."""
    adj = la.adjugate(pt.c)
    d = la.det(pt.c)
    return la.mat_sub(
        la.mat_mul(la.mat_mul(pt.c, pt.a), adj),
        la.mat_scale(la.transpose(pt.a), d),
    )


def trace_semiinvariant_value(i: int, pt: DualPoint) -> Fraction:
    """h_i(pt) = tr(T^(2i)) by direct matrix arithmetic (fast path)."""
    t = _denominator_cleared_matrix(pt)
    power = la.identity(pt.n)
    for _ in range(2 * i):
        power = la.mat_mul(power, t)
    return la.trace(power)


def pfaffian_semiinvariant_value(pt: DualPoint) -> Fraction:
    """P(pt) = Pf((a adj(c) - adj(c) a^t) / 2) by direct arithmetic."""
    adj = la.adjugate(pt.c)
    aadj = la.mat_mul(pt.a, adj)
    skew = la.mat_scale(la.mat_sub(aadj, la.transpose(aadj)), Fraction(1, 2))
    return pfaffian(skew)


@dataclass(frozen=True)
class SemiinvariantFamily:
    """The polynomial semiinvariants in dual coordinates, with weights.

    ``generators[m]`` transforms under the coadjoint action of (x, g) by
    the exact factor det(g)**weights[m].  ``kinds`` marks each generator
    as "trace" (h_i) or "pfaffian" (P); ``composite_even`` stores, for
    even n, the determinant-cleared square det(c) * P**2 whose weight
    matches the -4m law of the trace family.
    """

    n: int
    k: int
    coords: DualCoordinates
    generators: tuple[MultiPoly, ...]
    kinds: tuple[str, ...]
    weights: tuple[int, ...]
    det_poly: MultiPoly
    composite_even: MultiPoly | None = None

    def evaluate(self, m: int, pt: DualPoint) -> Fraction:
        vec = self.coords.coords_of_point(pt.c, pt.a)
        return self.generators[m].evaluate(vec)


def symbolic_dual_matrices(coords: DualCoordinates):
    """(c, a, adj(c), det(c)) as exact symbolic matrices/polynomials."""
    c_mat, a_mat = coords.entry_polynomials()
    adj_c = la.adjugate(c_mat)
    det_c = la.det(c_mat)
    return c_mat, a_mat, adj_c, det_c


def semiinvariant_family(n: int, coords: DualCoordinates | None = None) -> SemiinvariantFamily:
    """Construct the semiinvariant generators for matrix size n >= 2.

    Odd n: trace generators h_1 .. h_k.  Even n: h_1 .. h_(k-1) plus the
    Pfaffian generator P.  Weights of the trace type are -4i by the
    semiinvariance law; the Pfaffian generator's weight 1 - n follows
    from Pf(g K g^t) = det(g) Pf(K) and is measured empirically by the
    verification suite rather than assumed.
    """
    if n < 2:
        raise StructuralError("semiinvariants need n >= 2")
    if coords is None:
        basis, _ = build_lie_basis(n)
        coords = DualCoordinates(basis)
    c_mat, a_mat, adj_c, det_c = symbolic_dual_matrices(coords)
    k = n // 2

    t_mat = la.mat_sub(
        la.mat_mul(la.mat_mul(c_mat, a_mat), adj_c),
        la.mat_scale(la.transpose(a_mat), det_c),
    )

    def trace_of_even_power(mat, i):
        # tr(m^(2i)) = sum_jk (m^i)_jk (m^i)_kj avoids one matrix product
        half = mat
        for _ in range(i - 1):
            half = la.mat_mul(half, mat)
        size = len(mat)
        acc = MultiPoly.zero(coords.variables)
        for r in range(size):
            for s in range(size):
                acc = acc + half[r][s] * half[s][r]
        return acc

    generators: list[MultiPoly] = []
    kinds: list[str] = []
    weights: list[int] = []
    trace_count = k if n % 2 == 1 else k - 1
    for i in range(1, trace_count + 1):
        generators.append(trace_of_even_power(t_mat, i))
        kinds.append("trace")
        weights.append(-4 * i)

    composite = None
    if n % 2 == 0:
        aadj = la.mat_mul(a_mat, adj_c)
        skew = la.mat_scale(la.mat_sub(aadj, la.transpose(aadj)), Fraction(1, 2))
        p_poly = pfaffian(skew)
        generators.append(p_poly)
        kinds.append("pfaffian")
        weights.append(1 - n)
        if n == 2:
            # the determinant-cleared square; at larger even n its term
            # count is beyond desk scale and nothing consumes it
            composite = det_c * p_poly * p_poly

    return SemiinvariantFamily(
        n=n,
        k=k,
        coords=coords,
        generators=tuple(generators),
        kinds=tuple(kinds),
        weights=tuple(weights),
        det_poly=det_c,
        composite_even=composite,
    )


def measure_weight(family: SemiinvariantFamily, m: int, rng: random.Random, samples: int = 6) -> int:
    """Empirically determine the det(g)-exponent of generator m.

    Uses group elements with determinant pinned to 2 to solve for the
    exponent, then verifies the law on further samples with arbitrary
    rational determinants.  Raises CertificationError when the values do
    not follow a power law.
    """
    from .errors import CertificationError
    from .sampling import random_gplus_point, random_group_element

    n = family.n
    poly = family.generators[m]
    exponent: int | None = None
    for _ in range(samples):
        pt = random_gplus_point(n, rng)
        vec = family.coords.coords_of_point(pt.c, pt.a)
        base = poly.evaluate(vec)
        if base == 0:
            continue
        elt = random_group_element(n, rng, det_numerator=2)
        from .orbits import coadjoint

        moved = coadjoint(elt, pt)
        mvec = family.coords.coords_of_point(moved.c, moved.a)
        ratio = poly.evaluate(mvec) / base
        w = _integer_log(ratio, Fraction(2))
        if w is None:
            raise CertificationError(
                f"generator {m} is not semiinvariant: ratio {ratio} is not a power of det"
            )
        if exponent is None:
            exponent = w
        elif exponent != w:
            raise CertificationError(
                f"generator {m} has unstable weight: {exponent} vs {w}"
            )
    if exponent is None:
        raise CertificationError("could not find a nonvanishing sample point")
    return exponent


def _integer_log(value: Fraction, base: Fraction) -> int | None:
    if value <= 0:
        return None
    w = 0
    v = value
    while v > 1:
        v /= base
        w += 1
    while v < 1:
        v *= base
        w -= 1
    return w if v == 1 else None


def verify_semiinvariance(
    family: SemiinvariantFamily,
    m: int,
    weight: int,
    rng: random.Random,
    samples: int = 20,
) -> bool:
    """Exact check of generator m's transformation law on random data."""
    from .orbits import coadjoint
    from .sampling import random_gplus_point, random_group_element

    poly = family.generators[m]
    for _ in range(samples):
        pt = random_gplus_point(family.n, rng)
        elt = random_group_element(family.n, rng)
        detg = la.det(elt.g)
        vec = family.coords.coords_of_point(pt.c, pt.a)
        moved = coadjoint(elt, pt)
        mvec = family.coords.coords_of_point(moved.c, moved.a)
        if poly.evaluate(mvec) != detg**weight * poly.evaluate(vec):
            return False
    return True


@dataclass(frozen=True)
class OrbitIdeal:
    """Generators cutting out a regular orbit, with their constants.

    ``alphas[i]`` is the constant value the corresponding invariant takes
    on the orbit and ``det_exponents[i]`` the power of det(c) clearing it
    into a polynomial: trace type h_i - alpha_i det(c)^(2i); Pfaffian
    type P^2 - alpha_k det(c)^(2k-1).
    """

    n: int
    k: int
    lambdas: tuple[Fraction, ...]
    alphas: tuple[Fraction, ...]
    det_exponents: tuple[int, ...]
    kinds: tuple[str, ...]
    generators: tuple[MultiPoly, ...]
    family: SemiinvariantFamily
    _jacobian: list = field(default_factory=list, compare=False, repr=False)

    def jacobian_polys(self) -> list[list[MultiPoly]]:
        """Rows of partial derivatives of the generators (cached)."""
        if not self._jacobian:
            nvars = len(self.family.coords.variables)
            for g in self.generators:
                self._jacobian.append([g.diff(j) for j in range(nvars)])
        return self._jacobian

    def normal_form_point(self) -> DualPoint:
        from .orbits import lambda_block_matrix

        H = lambda_block_matrix(self.n, list(self.lambdas))
        return DualPoint(la.identity(self.n), H)


def regular_lambdas(lambdas) -> bool:
    """Distinct nonzero absolute values: the regular-orbit condition."""
    mags = sorted((abs(Fraction(l)) for l in lambdas), reverse=True)
    if any(m == 0 for m in mags):
        return False
    return all(u > v for u, v in zip(mags, mags[1:]))


def orbit_ideal(lambdas, family: SemiinvariantFamily) -> OrbitIdeal:
    """Build the orbit ideal for exact block parameters.

    The alphas are the values the cleared invariants take on the normal
    form (I, H): trace type tr((2H)^(2i)) = 2 (-1)^i 4^i sum_j l_j^(2i),
    Pfaffian type (prod_j l_j)^2.
    """
    lambdas = tuple(Fraction(l) for l in lambdas)
    n, k = family.n, family.k
    if len(lambdas) != k:
        raise StructuralError(f"expected {k} parameters, got {len(lambdas)}")
    if not regular_lambdas(lambdas):
        raise DomainError("orbit ideal requires a regular point: distinct nonzero parameters")

    alphas: list[Fraction] = []
    exponents: list[int] = []
    generators: list[MultiPoly] = []
    for m, kind in enumerate(family.kinds):
        if kind == "trace":
            i = m + 1
            alpha = Fraction(2) * (-1) ** i * Fraction(4) ** i * sum(
                l ** (2 * i) for l in lambdas
            )
            exponent = 2 * i
            gen = family.generators[m] - family.det_poly**exponent * alpha
        else:
            alpha = Fraction(1)
            for l in lambdas:
                alpha *= l
            alpha = alpha * alpha
            exponent = 2 * k - 1
            p = family.generators[m]
            gen = p * p - family.det_poly**exponent * alpha
        alphas.append(alpha)
        exponents.append(exponent)
        generators.append(gen)

    return OrbitIdeal(
        n=n,
        k=k,
        lambdas=lambdas,
        alphas=tuple(alphas),
        det_exponents=tuple(exponents),
        kinds=family.kinds,
        generators=tuple(generators),
        family=family,
    )


def orbit_ideal_from_normal_form(nf: NormalForm, family: SemiinvariantFamily) -> OrbitIdeal:
    """Orbit ideal at the exact rational values of a numeric normal form.

    Floats convert exactly to Fractions, so downstream variety checks on
    translates of the induced (I, H) remain exact; only the relation back
    to the original point carries the normal form's numeric tolerance.
    """
    if not nf.regular:
        raise DomainError("normal form is not regular")
    return orbit_ideal([Fraction(l) for l in nf.lambdas], family)


def membership_residual(ideal: OrbitIdeal, pt: DualPoint) -> list[Fraction]:
    vec = ideal.family.coords.coords_of_point(pt.c, pt.a)
    return [g.evaluate(vec) for g in ideal.generators]


def regularity_check(ideal: OrbitIdeal, pts: list[DualPoint], tol: float = 1e-9) -> bool:
    """True iff the generator Jacobian has full rank k at every point.

    Points must lie on the variety: a nonvanishing generator value is an
    input error, exact for rational points and up to ``tol`` otherwise.
    """
    jac = ideal.jacobian_polys()
    coords = ideal.family.coords
    for pt in pts:
        vec = coords.coords_of_point(pt.c, pt.a)
        for g, value in zip(ideal.generators, [g.evaluate(vec) for g in ideal.generators]):
            if isinstance(value, Fraction):
                if value != 0:
                    raise DomainError(f"point is not on the variety: generator value {value}")
            elif abs(value) > tol:
                raise DomainError(f"point is not on the variety: generator value {value}")
        rows = [[entry.evaluate(vec) for entry in row] for row in jac]
        if la.rational_rank(rows) != ideal.k:
            return False
    return True


def coadjoint_vector_fields(coords: DualCoordinates) -> list[list[MultiPoly]]:
    """Infinitesimal coadjoint action in coordinates, symbolically.

    Row i is the vector field of basis letter X_i: entry j is the linear
    polynomial x_j(ad*_{X_i} p) of the moving point p.  Derived from the
    same ad* formula as the numeric action and cross-checked against it in
    the tests.
    """
    basis = coords.basis
    c_mat, a_mat = coords.entry_polynomials()
    zero = MultiPoly.zero(coords.variables)
    fields: list[list[MultiPoly]] = []
    for i in range(basis.dim):
        alpha = basis.gl_part(i)
        beta = basis.sym_part(i)
        alpha_sym = [[MultiPoly.constant(coords.variables, v) for v in row] for row in alpha]
        beta_sym = [[MultiPoly.constant(coords.variables, v) for v in row] for row in beta]
        c_dot = la.mat_neg(
            la.mat_add(
                la.mat_mul(la.transpose(alpha_sym), c_mat),
                la.mat_mul(c_mat, alpha_sym),
            )
        )
        a_dot = la.mat_add(
            la.mat_sub(la.mat_mul(alpha_sym, a_mat), la.mat_mul(a_mat, alpha_sym)),
            la.mat_mul(beta_sym, c_mat),
        )
        row = []
        for j in range(basis.dim):
            kind, r, s = basis.kinds[j]
            # x_j = tr(p X_j): 2 a[s][r] for a-letters, c[r][r] or 2 c[r][s]
            if kind == "a":
                row.append(a_dot[s][r] * 2)
            elif r == s:
                row.append(c_dot[r][r])
            else:
                row.append(c_dot[r][s] * 2)
        fields.append(row)
    return fields


@dataclass(frozen=True)
class InvariantCertificate:
    """Kernel dimensions of the invariance equations up to a degree."""

    n: int
    degree_bound: int
    kernel_dimension: int
    per_degree: tuple[int, ...]

    @property
    def only_constants(self) -> bool:
        return self.kernel_dimension == 1


def no_invariants_certificate(
    n: int,
    degree: int,
    coords: DualCoordinates | None = None,
    capacity: Capacity = DEFAULT_CAPACITY,
) -> InvariantCertificate:
    """Exact dimension of degree-bounded invariant polynomials.

    Assembles, per homogeneous degree, the linear system L_i F = 0 over
    all monomials, where L_i is the infinitesimal coadjoint action along
    basis letter i, and computes the exact kernel dimension.  Degree zero
    contributes the constants; the certificate passes when nothing else
    does.
    """
    if coords is None:
        basis, _ = build_lie_basis(n)
        coords = DualCoordinates(basis)
    nvars = len(coords.variables)
    fields = coadjoint_vector_fields(coords)
    per_degree = [1]
    for delta in range(1, degree + 1):
        monos = [e for e in monomials_up_to_degree(nvars, delta) if sum(e) == delta]
        if len(monos) > capacity.max_terms:
            raise CapacityError(
                f"degree {delta} needs {len(monos)} monomials, over cap"
            )
        col_index = {e: idx for idx, e in enumerate(monos)}
        rows: dict[tuple[int, tuple[int, ...]], dict[int, Fraction]] = {}
        for bidx, exp in enumerate(monos):
            for i, field_row in enumerate(fields):
                # L_i(x^exp) = sum_j exp_j * v_ij * x^(exp - e_j)
                for j in range(nvars):
                    e = exp[j]
                    if e == 0:
                        continue
                    v = field_row[j]
                    if v.is_zero():
                        continue
                    lowered = list(exp)
                    lowered[j] -= 1
                    for vexp, vcoeff in v.terms.items():
                        target = tuple(x + y for x, y in zip(lowered, vexp))
                        row = rows.setdefault((i, target), {})
                        row[bidx] = row.get(bidx, Fraction(0)) + vcoeff * e
        clean_rows = [
            {c: v for c, v in row.items() if v != 0} for row in rows.values()
        ]
        rank = la.sparse_rank(r for r in clean_rows if r)
        per_degree.append(len(monos) - rank)
    return InvariantCertificate(
        n=n,
        degree_bound=degree,
        kernel_dimension=sum(per_degree),
        per_degree=tuple(per_degree),
    )
