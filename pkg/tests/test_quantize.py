"""The orbit quantization engine: reduction, star product, axioms."""

import random
from fractions import Fraction

import pytest

from orbitquant.errors import CapacityError, CertificationError, StructuralError
from orbitquant.groebner import divide
from orbitquant.hpoly import HPoly
from orbitquant.lie import lie_poisson_bracket
from orbitquant.ncpoly import NCPoly, word_of_exponent
from orbitquant.poly import MultiPoly
from orbitquant.quantize import (
    OrbitQuantization,
    QuotientElement,
    check_deformation_axioms,
    torsion_check,
)


@pytest.fixture(scope="module")
def engine():
    return OrbitQuantization(2, [Fraction(1)], deg_cap=6)


def test_standard_monomials_avoid_leading_term(engine):
    lead = engine.groebner[0].leading()[0]
    for exp in engine.standard_exponents:
        assert any(e < l for e, l in zip(exp, lead))
    # degree <= 2 monomials are all standard (the leading term has degree 4)
    low = [e for e in engine.standard_exponents if sum(e) <= 2]
    assert len(low) == 36


def test_standard_monomial_count_vs_multiplication_rank(engine):
    # dimension oracle: in degrees <= D the ideal piece of a principal
    # ideal is the image of multiplication by the generator, so
    # #standard = #monomials - rank(multiplication map)
    from orbitquant import linalg as la
    from orbitquant.groebner import standard_monomials
    from orbitquant.poly import monomials_up_to_degree

    p = engine.groebner[0]
    D = 5
    nvars = len(engine.variables)
    monos = monomials_up_to_degree(nvars, D)
    col_index = {e: i for i, e in enumerate(monos)}
    rows = []
    for q_exp in monomials_up_to_degree(nvars, D - p.total_degree()):
        product = MultiPoly.monomial(engine.variables, q_exp) * p
        rows.append(
            {col_index[e]: c for e, c in product.terms.items()}
        )
    rank = la.sparse_rank(iter(rows))
    standard = standard_monomials(engine.groebner, max_degree=D)
    assert len(standard) == len(monos) - rank


def test_weight_table_structure(engine):
    # letters: a11 a12 a21 a22 b11 b12 b22; the scalar is nonzero exactly
    # on the diagonal gl letters, where it is -w h for weight w = -2
    names = engine.basis.names
    for e, name in enumerate(names):
        f = engine.weight_table[0][e]
        if name in ("a11", "a22"):
            assert f == HPoly.h(1, 2)
        else:
            assert f.is_zero()


def test_weight_table_matches_classical_eigenvalue(engine):
    # {x_e, p} = chi(e) p commutatively; the quantum scalar is h * chi(e)
    p = engine.ideal.generators[0]
    for e in range(engine.basis.dim):
        xe = MultiPoly.variable(engine.variables, e)
        bracket = lie_poisson_bracket(xe, p, engine.sc)
        f = engine.weight_table[0][e]
        if f.is_zero():
            assert bracket.is_zero()
        else:
            chi = f.coefficient(1)
            assert bracket == p * chi


def test_quantum_scalar_ties_three_routes_together(engine):
    # one number, three derivations: the det(g)-exponent of the ideal
    # generator measured by sampling the group action, the eigenvalue of
    # the generator under the Poisson bracket with a diagonal letter, and
    # the quantum commutator scalar; they must satisfy F = -w h exactly
    from orbitquant.orbits import coadjoint
    from orbitquant.sampling import random_gplus_point, random_group_element
    from orbitquant import linalg as la

    rng = random.Random(67)
    gen = engine.ideal.generators[0]
    pt = random_gplus_point(2, rng)
    vec = engine.coords.coords_of_point(pt.c, pt.a)
    elt = random_group_element(2, rng, det_numerator=2)
    moved = coadjoint(elt, pt)
    mvec = engine.coords.coords_of_point(moved.c, moved.a)
    ratio = gen.evaluate(mvec) / gen.evaluate(vec)
    assert ratio == Fraction(1, 4)  # det(g)^w with det = 2: weight w = -2
    w = -2
    for e, name in enumerate(engine.basis.names):
        if name in ("a11", "a22"):
            assert engine.weight_table[0][e] == HPoly.h(1, -w)
            xe = MultiPoly.variable(engine.variables, e)
            assert lie_poisson_bracket(xe, gen, engine.sc) == gen * (-w)


def test_generator_and_left_multiples_reduce_to_zero(engine):
    sym_gen = engine.sym_generators[0]
    assert engine.reduce(sym_gen).is_zero()
    for e in range(engine.basis.dim):
        left = NCPoly.letter(engine.algebra, e) * sym_gen
        assert engine.reduce(left).is_zero()


def test_right_multiples_reduce_to_zero(engine):
    # P * X_e = X_e * P - F(X_e) P lies in the left span; the reduction
    # certifies the two-sided ideal collapses to left multiples
    sym_gen = engine.sym_generators[0]
    for e in range(engine.basis.dim):
        right = sym_gen * NCPoly.letter(engine.algebra, e)
        assert engine.reduce(right).is_zero()
        # and the claimed identity holds literally
        left_form = NCPoly.letter(engine.algebra, e) * sym_gen - sym_gen.scale(
            engine.weight_table[0][e]
        )
        assert right == left_form


def test_reduction_is_linear_and_idempotent(engine):
    rng = random.Random(61)
    monos = [e for e in engine.standard_exponents if sum(e) <= 3]
    for _ in range(10):
        w1 = word_of_exponent(rng.choice(monos))
        w2 = word_of_exponent(rng.choice(monos))
        u = NCPoly(engine.algebra, {w1: HPoly.of(2), w2: HPoly.h(1, 3)})
        v = NCPoly(engine.algebra, {w2: HPoly.of(-1)})
        ru, rv = engine.reduce(u), engine.reduce(v)
        assert engine.reduce(u + v) == ru + rv
        assert engine.reduce(ru) == ru


def test_star_with_unit(engine):
    one = MultiPoly.constant(engine.variables, 1)
    f = MultiPoly.variable(engine.variables, 0) * MultiPoly.variable(engine.variables, 5)
    assert engine.star(one, f) == QuotientElement.from_multipoly(f)
    assert engine.star(f, one) == QuotientElement.from_multipoly(f)


def test_star_linear_commutator_is_poisson(engine):
    for i in range(engine.basis.dim):
        for j in range(engine.basis.dim):
            xi = MultiPoly.variable(engine.variables, i)
            xj = MultiPoly.variable(engine.variables, j)
            lhs = engine.star(xi, xj) - engine.star(xj, xi)
            rhs = engine.poisson_reduced(xi, xj).scale(HPoly.h(1))
            assert lhs == rhs


def test_star_mod_h_is_commutative_product(engine):
    rng = random.Random(62)
    monos = [e for e in engine.standard_exponents if sum(e) <= 2]
    from orbitquant.sampling import random_polynomial

    for _ in range(20):
        f = random_polynomial(engine.variables, rng, monos)
        g = random_polynomial(engine.variables, rng, monos)
        star = engine.star(f, g)
        assert star.h_coefficient(0) == divide(f * g, engine.groebner)


def test_star_coefficient_degree_bound(engine):
    # coefficients of a star product of degree-d1, d2 inputs are h-polys
    # of degree at most d1 + d2
    rng = random.Random(63)
    monos = [e for e in engine.standard_exponents if sum(e) == 2]
    from orbitquant.sampling import random_polynomial

    for _ in range(10):
        f = random_polynomial(engine.variables, rng, monos)
        g = random_polynomial(engine.variables, rng, monos)
        star = engine.star(f, g)
        assert star.max_h_degree() <= 4


def test_star_requires_standard_support(engine):
    lead = engine.groebner[0].leading()[0]
    bad = MultiPoly.monomial(engine.variables, lead)
    one = MultiPoly.constant(engine.variables, 1)
    with pytest.raises(StructuralError):
        engine.star(bad, one)


def test_star_degree_cap(engine):
    x0 = MultiPoly.variable(engine.variables, 0)
    f = x0**4
    with pytest.raises(CapacityError):
        engine.star(f, f)


def test_deformation_axioms_report(engine):
    rep = check_deformation_axioms(engine, random.Random(64), random_pairs=20, triples=10)
    assert rep["passed"]
    assert rep["module_freeness"]["independent_and_spanning"]
    assert rep["reduces_mod_h"]["failures"] == 0
    assert rep["first_order_poisson"]["failures"] == 0
    assert rep["associativity"]["failures"] == 0


def test_torsion_report(engine):
    rep = torsion_check(engine, random.Random(65), samples=25)
    assert rep["passed"]


def test_perturbed_generator_fails_certification():
    # corrupting the orbit parameter leaves the same leading structure but
    # the commutator scalars survive; corrupting the generator itself must
    # break the proportionality certificate
    from orbitquant.ncpoly import symmetrize
    from orbitquant.quantize import commutator_weight

    good = OrbitQuantization(2, [Fraction(1)], deg_cap=4)
    p = good.ideal.generators[0]
    x0 = MultiPoly.variable(good.variables, 0)
    corrupted = p + x0 * x0
    sym = symmetrize(good.algebra, corrupted)
    with pytest.raises(CertificationError):
        for e in range(good.basis.dim):
            commutator_weight(good.algebra, sym, e)


def test_quotient_element_round_trip(engine):
    rng = random.Random(66)
    monos = [e for e in engine.standard_exponents if sum(e) <= 2]
    from orbitquant.sampling import random_polynomial

    f = random_polynomial(engine.variables, rng, monos)
    g = random_polynomial(engine.variables, rng, monos)
    star = engine.star(f, g)
    assert QuotientElement.from_json(star.to_json()) == star


def test_reduction_engine_capacity_gate():
    # the full reduction at n = 3 needs the degree-8 truncation of a
    # 15-variable algebra (about half a million columns): the guard must
    # refuse quickly instead of attempting it
    import time

    t0 = time.perf_counter()
    with pytest.raises(CapacityError):
        OrbitQuantization(3, [Fraction(1)], deg_cap=8)
    assert time.perf_counter() - t0 < 60


def test_different_orbit_different_constant():
    # the lambda = 2 orbit has alpha = 4: its generator differs and the
    # star product of the same inputs changes accordingly
    e1 = OrbitQuantization(2, [Fraction(1)], deg_cap=4)
    e2 = OrbitQuantization(2, [Fraction(2)], deg_cap=4)
    assert e2.ideal.alphas == (Fraction(4),)
    assert e1.ideal.generators[0] != e2.ideal.generators[0]


@pytest.mark.parametrize("lam", [Fraction(2), Fraction(3, 2)])
def test_axioms_hold_on_other_orbits(lam):
    eng = OrbitQuantization(2, [lam], deg_cap=6)
    rep = check_deformation_axioms(eng, random.Random(68), random_pairs=8, triples=4)
    assert rep["passed"]


def test_degree_eight_cap():
    # one degree step beyond the default: 12870 columns, 495 left-multiple
    # rows, all of them pivots off the standard monomials
    eng = OrbitQuantization(2, [Fraction(1)], deg_cap=8)
    basis_report = eng.basis_report()
    assert basis_report["reduction_rank"] == 495
    assert basis_report["independent_and_spanning"]
    assert torsion_check(eng, random.Random(69), samples=10)["passed"]
