import random
from math import comb

import pytest

from oracles import schur_matrix_oracle, straighten_oracle, to_sympy
from schurtwist.exactfield import Matrix, Q, QuotientAlgebra
from schurtwist.schur import (
    SchurSpace,
    nu_rightmost,
    schur_derivation,
    schur_matrix,
    straighten,
    straighten_columns,
)
from schurtwist.tableaux import (
    Partition,
    Tableau,
    content_vector,
    enumerate_tableaux,
    fillings,
    partitions,
    standard_tableau,
)

SHAPES_4 = [u for n in range(1, 5) for u in partitions(n)]


def random_matrix(rng, d, lo=-2, hi=2):
    return Matrix([[Q(rng.randint(lo, hi)) for _ in range(d)] for _ in range(d)])


def test_straighten_examples():
    t = Tableau([[1, 2], [2]])
    v = straighten(t, 2)
    assert v.coords == (0, 1)
    assert straighten([[2], [1]], 2).coords == (-1,)
    assert straighten([[1], [1]], 2).coords == (0,)
    # frozen from the Young-symmetrizer oracle
    assert straighten([[2, 1], [1]], 2).coords == (-1, 0)
    assert straighten([[2, 1], [3]], 3).support() == {
        Tableau([[1, 2], [3]]): 1, Tableau([[1, 3], [2]]): -1}


@pytest.mark.parametrize("u,d", [((2, 1), 2), ((2, 1), 3), ((2, 2), 3), ((3, 1), 2),
                                 ((2, 1, 1), 3), ((2, 2), 2), ((3, 2), 2)])
def test_straighten_matches_young_oracle(u, d):
    basis = enumerate_tableaux(u, d)
    basis_rows = [t.to_json() for t in basis]
    for filling in fillings(u, d):
        got = straighten(filling, d).coords
        assert [to_sympy(c) for c in got] == straighten_oracle(filling.to_json(), basis_rows)


def test_straighten_is_idempotent_on_basis():
    for u in SHAPES_4:
        for d in range(1, 4):
            for k, t in enumerate(enumerate_tableaux(u, d)):
                v = straighten(t, d)
                assert v.coords == tuple(1 if j == k else 0 for j in range(len(v.coords)))


def test_repeated_column_entry_vanishes():
    assert straighten_columns([(1, 1), (2,)]) == {}


def test_schur_matrix_examples():
    for u in SHAPES_4:
        for d in range(1, 4):
            dim = SchurSpace(u, d).dim
            if dim:
                assert schur_matrix(Matrix.identity(d), u).is_identity()
    a = Matrix([[Q(2), Q(3), Q(1)], [Q(-1), Q(4), Q(0)], [Q(5), Q(1), Q(1)]])
    assert schur_matrix(a, (1, 1, 1)).rows == ((Q(-10),),)
    x, y = Q(5), Q(7)
    assert schur_matrix(Matrix.diag([x, y]), (2,)) == Matrix.diag([x * x, x * y, y * y])


@pytest.mark.parametrize("seed", range(12))
def test_schur_matrix_matches_young_oracle(seed):
    rng = random.Random(seed)
    u = rng.choice([v for v in SHAPES_4 if v.size >= 2 and v.rows <= 3])
    d = rng.randint(max(2, u.rows), 3)
    a = random_matrix(rng, d)
    basis_rows = [t.to_json() for t in enumerate_tableaux(u, d)]
    expected = schur_matrix_oracle([[int(x) for x in r] for r in a.rows], basis_rows)
    got = schur_matrix(a, u)
    assert [[to_sympy(x) for x in r] for r in got.rows] == expected


@pytest.mark.parametrize("seed", range(25))
def test_functoriality(seed):
    rng = random.Random(1000 + seed)
    u = rng.choice(SHAPES_4)
    d = rng.randint(1, 4)
    a, b = random_matrix(rng, d), random_matrix(rng, d)
    assert schur_matrix(a @ b, u) == schur_matrix(a, u) @ schur_matrix(b, u)


@pytest.mark.parametrize("n", range(1, 6))
def test_trace_of_diagonal_is_schur_polynomial(n):
    xs = [Q(2), Q(-3), Q(5), Q(1, 2)]
    for u in partitions(n):
        for d in range(1, 5):
            diag = Matrix.diag(xs[:d])
            expected = sum((_monomial(xs, content_vector(t, d))
                            for t in enumerate_tableaux(u, d)), Q(0))
            assert schur_matrix(diag, u).trace() == expected


def _monomial(xs, exps):
    out = Q(1)
    for x, e in zip(xs, exps):
        out *= x ** e
    return out


@pytest.mark.parametrize("seed", range(15))
def test_derivation_is_the_dual_number_derivative(seed):
    rng = random.Random(seed)
    dual = QuotientAlgebra([0, 0, 1], name="eps")
    eps = dual.gen()
    u = rng.choice(SHAPES_4)
    d = rng.randint(1, 4)
    theta = random_matrix(rng, d)
    lifted = Matrix([[(1 if i == j else 0) + eps * theta.rows[i][j] for j in range(d)]
                     for i in range(d)], d)
    image = schur_matrix(lifted, u)
    deriv = schur_derivation(theta, u)
    for r, s in zip(image.rows, deriv.rows):
        for z, w in zip(r, s):
            z = dual.coerce(z)
            assert z.coeffs[1] == w


def test_derivation_examples():
    a = [Q(1), Q(-2), Q(1, 3)]
    for u in SHAPES_4:
        space = SchurSpace(u, 3)
        if not space.dim:
            continue
        deriv = schur_derivation(Matrix.diag(a), u)
        sums = [sum((a[x - 1] for x in t.reading_word()), Q(0)) for t in space.basis]
        assert deriv == Matrix.diag(sums)
        assert schur_derivation(Matrix.zeros(3), u).is_zero()
    assert schur_derivation(Matrix([[0, 1], [0, 0]]), (1, 1)).is_zero()


@pytest.mark.parametrize("u", ["1", "2", "3", "2,1", "2,2", "3,1", "2,1,1", "3,2", "1,1"])
def test_unipotent_one_step_rule(u):
    """``g(e_T') = e_T' + nu c e_T`` for the binomial unipotent on a Jordan chain."""
    u = Partition.parse(u)
    d = u.rows + 1
    ring = QuotientAlgebra([0] * (u.size * d + 2) + [1], name="c")
    c = ring.gen()
    g = Matrix([[comb(k, j) * c ** (k - j) if k >= j else 0 for k in range(d)]
                for j in range(d)], d)
    t = standard_tableau(u)
    nu = nu_rightmost(u)
    bumped = t.replace((nu - 1, u.parts[0] - 1), nu + 1)
    space = SchurSpace(u, d)
    image = schur_matrix(g, u)
    col = [image.rows[i][space.index[bumped.columns()]] for i in range(space.dim)]
    expected = [0] * space.dim
    expected[space.index[bumped.columns()]] = 1
    expected[space.index[t.columns()]] = nu * c
    assert all(ring.coerce(a) == ring.coerce(b) for a, b in zip(col, expected))


def test_nu_rightmost_examples():
    assert nu_rightmost((2, 1)) == 1
    assert nu_rightmost((2, 2)) == 2
    assert nu_rightmost((3, 1, 1)) == 1


def test_schur_matrix_over_etale_entries_is_componentwise():
    from schurtwist.exactfield import EtaleAlgebra, QQ
    alg = EtaleAlgebra(QQ, 2)
    rng = random.Random(5)
    a, b = random_matrix(rng, 3), random_matrix(rng, 3)
    m = Matrix([[alg.element([x, y]) for x, y in zip(r, s)] for r, s in zip(a.rows, b.rows)])
    first, second = schur_matrix(m, (2, 1)).components()
    assert first == schur_matrix(a, (2, 1)) and second == schur_matrix(b, (2, 1))
