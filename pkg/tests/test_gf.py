import cmath
import random

import pytest

from padic_deform.errors import DivisionByZero, OddCharRequired, ParentMismatch
from padic_deform.gf import (
    GF,
    ff_arith,
    gauss_sum_sign,
    poly_is_separable,
    poly_roots,
    quadratic_residue,
    solve_artin_schreier,
    sqrt_ff,
)

F2 = GF(2)
F4 = GF(2, 2)
F5 = GF(5)
F9 = GF(3, 2)


def test_defining_polys_are_the_fixed_choices():
    assert GF(2).defining_poly == (0, 1)
    assert F4.defining_poly == (1, 1, 1)
    assert F9.defining_poly == (1, 0, 1)
    assert GF(5, 2).defining_poly == (2, 0, 1)


def test_basic_arithmetic():
    assert F5.from_int(2) * F5.from_int(3) == F5.one()
    g = F4.gen()
    assert g * g == g + 1
    assert ff_arith(F5.from_int(2), None, "inv") == F5.from_int(3)
    assert ff_arith(F5.from_int(2), 3, "pow") == F5.from_int(3)
    with pytest.raises(DivisionByZero):
        F5.zero().inv()
    with pytest.raises(ParentMismatch):
        F5.one() + F4.one()


@pytest.mark.parametrize("p,n", [(2, 2), (5, 1), (2, 3), (3, 2), (5, 2)])
def test_frobenius_additivity(p, n):
    field = GF(p, n)
    rng = random.Random(p * 100 + n)
    for _ in range(50):
        a = field.element(rng.randrange(field.q))
        b = field.element(rng.randrange(field.q))
        assert (a + b) ** p == a ** p + b ** p


def test_quadratic_residue_values():
    assert quadratic_residue(F5.from_int(4)) == 1
    assert quadratic_residue(F5.from_int(2)) == -1
    assert quadratic_residue(F5.zero()) == 0
    assert quadratic_residue(F9.generator()) == -1
    with pytest.raises(OddCharRequired):
        quadratic_residue(F4.one())


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2), (5, 2)])
def test_quadratic_residue_is_multiplicative_and_balanced(p, n):
    field = GF(p, n)
    rng = random.Random(7)
    for _ in range(100):
        a = field.element(rng.randrange(1, field.q))
        b = field.element(rng.randrange(1, field.q))
        assert quadratic_residue(a * b) == quadratic_residue(a) * quadratic_residue(b)
    values = [quadratic_residue(x) for x in field.elements() if x.code]
    assert values.count(-1) == (field.q - 1) // 2


def test_artin_schreier_roots():
    assert solve_artin_schreier(F2.zero()) == F2.zero()
    assert solve_artin_schreier(F2.one()) is None
    r = solve_artin_schreier(F4.one())
    assert r is not None and r * r - r == F4.one()
    # the other root differs by 1
    s = r + F4.one()
    assert s * s - s == F4.one()


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3)])
def test_artin_schreier_solvable_iff_trace_zero(p, n):
    field = GF(p, n)
    solvable = 0
    for a in field.elements():
        root = solve_artin_schreier(a)
        if a.trace() == 0:
            assert root is not None and root * root - root == a
            solvable += 1
        else:
            assert root is None
    assert solvable == field.q // 2


def test_sqrt():
    g = F4.gen()
    assert sqrt_ff(g) == g + 1  # (g+1)^2 = g^2 + 1 = g
    assert sqrt_ff(F5.from_int(4)) in (F5.from_int(2), F5.from_int(3))
    assert sqrt_ff(F5.from_int(2)) is None
    for field in (F5, F9, GF(5, 2), GF(13)):
        for x in field.elements():
            r = sqrt_ff(x)
            if r is not None:
                assert r * r == x
            if field.p != 2 and x.code:
                assert (r is not None) == (quadratic_residue(x) == 1)


def test_gauss_sum_signs():
    assert abs(gauss_sum_sign(F5) - 1) < 1e-9
    assert abs(gauss_sum_sign(GF(3)) - 1j) < 1e-9
    # direct-summation values for the extension fields
    assert abs(gauss_sum_sign(F9) - 1) < 1e-9
    assert abs(gauss_sum_sign(GF(5, 2)) - (-1)) < 1e-9
    with pytest.raises(OddCharRequired):
        gauss_sum_sign(F4)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2), (7, 1)])
def test_gauss_sum_magnitude(p, n):
    field = GF(p, n)
    for u in list(field.elements())[1:4]:
        g = gauss_sum_sign(field, u)
        assert abs(abs(g) - 1) < 1e-9


def test_generator_has_full_order():
    for field in (F4, F5, F9, GF(2, 3), GF(5, 2)):
        g = field.generator()
        seen = set()
        x = field.one()
        for _ in range(field.q - 1):
            x = x * g
            seen.add(x.code)
        assert len(seen) == field.q - 1


def test_embedding_is_a_field_hom():
    emb = F4.embedding(GF(2, 4))
    big = GF(2, 4)
    rng = random.Random(3)
    for _ in range(40):
        a = F4.element(rng.randrange(4))
        b = F4.element(rng.randrange(4))
        assert emb[(a + b).code] == big.fadd(emb[a.code], emb[b.code])
        assert emb[(a * b).code] == big.fmul(emb[a.code], emb[b.code])


def test_poly_roots_and_separability():
    # x^3 - x over F_5 factors with three simple roots
    coeffs = [F5.zero(), -F5.one(), F5.zero(), F5.one()]
    roots = poly_roots(coeffs)
    assert sorted(r.code for r, _ in roots) == [0, 1, 4]
    assert all(m == 1 for _, m in roots)
    assert poly_is_separable(coeffs)
    # (x - 1)^2 over F_5
    coeffs = [F5.one(), F5.from_int(3), F5.one()]
    roots = poly_roots(coeffs)
    assert roots == [(F5.from_int(1), 2)] or roots[0][1] == 2
    assert not poly_is_separable(coeffs)


def test_serialization_coords():
    g = F4.gen()
    assert (g + 1).coords == [1, 1]
    assert repr(g + 1) == "g+1"
    assert F4.from_coords([1, 1]) == g + 1
