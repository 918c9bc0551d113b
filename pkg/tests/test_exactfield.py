import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import jordan_sizes_oracle
from schurtwist.errors import NotAUnit, NotNilpotent
from schurtwist.exactfield import (
    QQ,
    EtaleAlgebra,
    Matrix,
    Q,
    QuotientAlgebra,
    algebra_invert,
    cyclotomic_field,
    cyclotomic_polynomial,
    determinant,
    fixed_points_shift,
    inverse,
    kernel,
    nilpotent_block_structure,
    nilpotent_jordan_matrix,
    rank,
    shift_apply,
    sigma,
    solve,
)

GAUSS = QuotientAlgebra([1, 0, 1])
SMALL = st.integers(-5, 5)


def test_rationals_are_normalized():
    x = Q("6/-4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert Q(Fraction(2, 4)) == Q(1, 2)


def test_invert_examples():
    assert algebra_invert(GAUSS.one()) == GAUSS.one()
    x = GAUSS.gen()
    assert algebra_invert(x) == -x
    assert x * -x == 1
    with pytest.raises(NotAUnit):
        algebra_invert(QuotientAlgebra([0, -1, 1]).gen())


@given(st.lists(SMALL, min_size=3, max_size=3))
def test_invert_is_an_involution(coeffs):
    alg = QuotientAlgebra([1, 1, 0, 1])
    a = alg.element(coeffs)
    if a.is_zero():
        return
    b = algebra_invert(a)
    assert a * b == 1
    assert algebra_invert(b) == a


def test_quotient_tower():
    inner = QuotientAlgebra([-2, 0, 1])
    outer = QuotientAlgebra([inner.gen() * -1, 0, 1], base=inner, name="y")
    y = outer.gen()
    assert y * y == inner.gen()
    assert (y ** 4) == 2
    assert y.inverse() * y == 1


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(6) == [1, -1, 1]
    z = cyclotomic_field(6).gen()
    assert z ** 6 == 1 and z ** 3 == -1


def test_shift_apply_examples():
    assert shift_apply(("a", "b", "c"), 1) == ("c", "a", "b")
    assert shift_apply(("a", "b", "c"), 0) == ("a", "b", "c")
    assert shift_apply(("a", "b", "c"), 3) == ("a", "b", "c")


@settings(max_examples=50)
@given(st.integers(1, 4), st.data())
def test_shift_is_a_ring_automorphism_of_order_f(f, data):
    alg = EtaleAlgebra(GAUSS, f)
    draw = lambda: alg.element([GAUSS.element(data.draw(st.lists(SMALL, min_size=2, max_size=2)))
                                for _ in range(f)])
    a, b = draw(), draw()
    assert (a * b).shift(1) == a.shift(1) * b.shift(1)
    assert (a + b).shift(1) == a.shift(1) + b.shift(1)
    assert a.shift(f) == a
    assert sigma(Q(3), 1) == Q(3)


@pytest.mark.parametrize("f", range(1, 7))
@pytest.mark.parametrize("base", [QQ, GAUSS], ids=["Q", "Q(i)"])
def test_fixed_points_are_the_diagonal(f, base):
    alg = EtaleAlgebra(base, f)
    basis = fixed_points_shift(alg)
    assert len(basis) == base.absolute_degree
    assert all(v.is_diagonal() for v in basis)


def test_fixed_points_examples():
    (v,) = fixed_points_shift(EtaleAlgebra(QQ, 3))
    assert v.is_diagonal() and not v.is_zero()
    assert len(fixed_points_shift(EtaleAlgebra(QQ, 1))) == 1


def test_nilpotent_block_examples():
    assert nilpotent_block_structure(Matrix.zeros(3)) == (1, 1, 1)
    assert nilpotent_block_structure(nilpotent_jordan_matrix([3])) == (3,)
    j2 = nilpotent_jordan_matrix([2])
    i2 = Matrix.identity(2)
    assert nilpotent_block_structure(j2.kron(i2) + i2.kron(j2)) == (3, 1)
    with pytest.raises(NotNilpotent):
        nilpotent_block_structure(Matrix.identity(2))


def _random_invertible(rng, n):
    while True:
        p = Matrix([[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if rank(p) == n:
            return p


@pytest.mark.parametrize("seed", range(30))
def test_nilpotent_blocks_match_kernel_dimensions(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    sizes = []
    while sum(sizes) < n:
        sizes.append(rng.randint(1, n - sum(sizes)))
    p = _random_invertible(rng, n)
    m = inverse(p) @ nilpotent_jordan_matrix(sizes) @ p
    got = nilpotent_block_structure(m)
    assert got == tuple(sorted(sizes, reverse=True))
    assert got == jordan_sizes_oracle(m.rows)


@settings(max_examples=40)
@given(st.integers(1, 4), st.data())
def test_linear_algebra_consistency(n, data):
    rows = data.draw(st.lists(st.lists(SMALL, min_size=n, max_size=n), min_size=n, max_size=n))
    m = Matrix([[Q(x) for x in r] for r in rows])
    r = rank(m)
    ker = kernel(m)
    assert len(ker) == n - r
    for v in ker:
        assert all(x == 0 for x in (m @ Matrix([[x] for x in v])).entries())
    if r == n:
        assert (m @ inverse(m)).is_identity()
        assert determinant(m) != 0
        b = [Q(i) for i in range(n)]
        x = solve(m, b)
        assert list((m @ Matrix([[v] for v in x])).entries()) == b
    else:
        assert determinant(m) == 0


def test_solve_reports_inconsistency():
    m = Matrix([[Q(1), Q(1)], [Q(1), Q(1)]])
    assert solve(m, [Q(0), Q(1)]) is None


def test_matrix_components_split_etale_entries():
    alg = EtaleAlgebra(QQ, 2)
    m = Matrix([[alg.element([1, 2])]])
    a, b = m.components()
    assert a.rows == ((1,),) and b.rows == ((2,),)
    assert m.sigma(1).rows[0][0] == alg.element([2, 1])
