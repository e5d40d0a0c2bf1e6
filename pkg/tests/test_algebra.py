import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilingdyn import algebra
from tilingdyn.errors import (
    NoRealRootAboveOne,
    NotExpanding,
    NotPrimitive,
    ReduciblePolynomial,
)

GOLDEN = (1 + math.sqrt(5)) / 2  # float oracle: quadratic formula


@pytest.fixture(scope="module")
def fib_field():
    return algebra.field_create((-1, -1, 1))  # x^2 - x - 1


def test_field_create_golden_ratio(fib_field):
    lam = fib_field.generator()
    lo, hi = lam.approx(Fraction(1, 10**12))
    assert lo <= Fraction(GOLDEN).limit_denominator(10**10) <= hi or abs(
        lam.to_float() - GOLDEN
    ) < 1e-11


def test_field_create_degree_one():
    f = algebra.field_create((-2, 1))  # x - 2
    assert f.degree == 1
    assert f.generator().as_rational() == 2


def test_field_create_reducible_rejected():
    with pytest.raises(ReduciblePolynomial):
        algebra.field_create((-4, 0, 1))  # x^2 - 4 = (x-2)(x+2)


def test_field_create_no_root_above_one():
    with pytest.raises(NoRealRootAboveOne):
        algebra.field_create((1, 1))  # x + 1, root -1
    with pytest.raises(NoRealRootAboveOne):
        algebra.field_create((1, 0, 1))  # x^2 + 1, no real root


def test_exact_ring_ops(fib_field):
    lam = fib_field.generator()
    # lambda^2 = lambda + 1 holds exactly
    assert lam * lam == lam + 1
    x = fib_field.element((Fraction(3, 2), Fraction(-2, 7)))
    assert (x * lam) / lam == x
    assert x - x == fib_field.zero
    assert (x**3) == x * x * x


def test_exact_str_roundtrip_format(fib_field):
    x = fib_field.element((Fraction(1, 2), Fraction(-3, 2)))
    assert x.exact_str() == "1/2-3/2*r"
    assert fib_field.zero.exact_str() == "0"
    assert fib_field.generator().exact_str() == "r"


small_rats = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)


@settings(max_examples=150, deadline=None)
@given(a0=small_rats, a1=small_rats, b0=small_rats, b1=small_rats)
def test_field_ops_cancel_exactly(a0, a1, b0, b1):
    f = algebra.field_create((-1, -1, 1))
    a = f.element((a0, a1))
    b = f.element((b0, b1))
    assert (a + b) - b == a
    if not b.is_zero():
        assert (a * b) / b == a


def test_sign_agrees_with_high_precision_float(fib_field):
    rng = random.Random(20240)
    for _ in range(1000):
        coords = (
            Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
            Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
        )
        x = fib_field.element(coords)
        exact = x.sign()
        # 100-bit interval evaluation as independent check
        lo, hi = x.approx(Fraction(1, 1 << 100))
        if lo > 0:
            assert exact == 1
        elif hi < 0:
            assert exact == -1
        else:
            assert x.is_zero() and exact == 0


def test_ordering_and_floor(fib_field):
    lam = fib_field.generator()
    assert lam > 1
    assert lam < 2
    assert lam.floor() == 1
    assert (lam * lam).floor() == 2
    assert (-lam).floor() == -2
    assert fib_field.from_rational(Fraction(7, 2)).floor() == 3


def test_star_galois_conjugation(fib_field):
    lam = fib_field.generator()
    conj = fib_field.star(lam)
    # conjugate root of x^2 - x - 1 is 1 - lambda
    assert conj == fib_field.one - lam
    x = fib_field.element((Fraction(2), Fraction(5)))
    assert fib_field.star(fib_field.star(x)) == x
    # star is a ring homomorphism
    y = fib_field.element((Fraction(-1), Fraction(3)))
    assert fib_field.star(x * y) == fib_field.star(x) * fib_field.star(y)


# -- Perron data -------------------------------------------------------------


def test_perron_fibonacci():
    # oracle: characteristic polynomial x^2 - x - 1, eigenvector (1, phi - 1)
    pd = algebra.perron([[1, 1], [1, 0]])
    f = pd.field
    lam = pd.eigenvalue
    assert f.minimal_polynomial.coefficients == (-1, -1, 1)
    assert pd.right_vector[0] == f.one
    assert pd.right_vector[1] == lam - 1
    # exact eigen equation entry-wise
    assert lam * pd.right_vector[0] == pd.right_vector[0] + pd.right_vector[1]
    assert lam * pd.right_vector[1] == pd.right_vector[0]


def test_perron_constant_length():
    pd = algebra.perron([[1, 1], [1, 1]])
    assert pd.eigenvalue.as_rational() == 2
    assert pd.right_vector[0] == pd.field.one
    assert pd.right_vector[1] == pd.field.one


def test_perron_not_primitive():
    with pytest.raises(NotPrimitive):
        algebra.perron([[1, 0], [0, 1]])


def test_perron_not_expanding():
    with pytest.raises(NotExpanding):
        algebra.perron([[1]])


def test_primitivity_exponent():
    assert algebra.primitivity_exponent([[1, 1], [1, 0]]) == 2
    assert algebra.primitivity_exponent([[1, 1], [1, 1]]) == 1
    assert algebra.primitivity_exponent([[1, 1], [0, 1]]) is None


# -- conjugates ----------------------------------------------------------------


def test_conjugates_golden(fib_field):
    boxes = algebra.conjugates(fib_field.generator())
    centers = sorted(b.center().real for b in boxes)
    # oracle: quadratic formula gives (1 - sqrt5)/2, (1 + sqrt5)/2
    assert abs(centers[0] - (1 - math.sqrt(5)) / 2) < 1e-9
    assert abs(centers[1] - (1 + math.sqrt(5)) / 2) < 1e-9
    small = [b for b in boxes if b.modulus_sq_bounds()[1] < 1]
    assert len(small) == 1  # |1 - phi| < 1


def test_conjugates_rational():
    f = algebra.field_create((-2, 1))
    boxes = algebra.conjugates(f.generator())
    assert len(boxes) == 1
    assert boxes[0].re == (2, 2)


def test_conjugates_x2_x_3():
    f = algebra.field_create((-3, -1, 1))  # x^2 - x - 3
    boxes = algebra.conjugates(f.generator())
    centers = sorted(b.center().real for b in boxes)
    # oracle: (1 +- sqrt 13)/2
    assert abs(centers[0] - (1 - math.sqrt(13)) / 2) < 1e-9
    assert abs(centers[1] - (1 + math.sqrt(13)) / 2) < 1e-9
    # the small conjugate has modulus > 1 here
    outside = [b for b in boxes if b.modulus_sq_bounds()[0] > 1]
    assert len(outside) == 2


def test_conjugates_refinement_shrinks(fib_field):
    box = algebra.conjugates(fib_field.generator())[0]
    finer = box.refine()
    assert finer.width() < box.width()


# -- unit circle test ----------------------------------------------------------


def test_unit_circle_root_count():
    assert algebra.unit_circle_root_count((-1, -1, 1)) == 0  # x^2-x-1
    assert algebra.unit_circle_root_count((-2, 1)) == 0  # x - 2
    # Salem-like check: x^4 - x^3 - x^2 - x + 1 is irreducible, palindromic,
    # and has two roots on the unit circle (the Lehmer-style quartic)
    assert algebra.unit_circle_root_count((1, -1, -1, -1, 1)) == 2
    # x^2 - 3x + 1 is palindromic with both roots real off the circle
    assert algebra.unit_circle_root_count((1, -3, 1)) == 0


def test_minimal_polynomial_of_element(fib_field):
    lam = fib_field.generator()
    assert algebra.minimal_polynomial_of(lam) == (-1, -1, 1)
    # oracle: sum of conjugates of phi^2 is 3, product is 1 => x^2 - 3x + 1
    assert algebra.minimal_polynomial_of(lam * lam) == (1, -3, 1)


def test_minimal_polynomial_of_rational(fib_field):
    x = fib_field.from_rational(5)
    assert algebra.minimal_polynomial_of(x) == (-5, 1)
