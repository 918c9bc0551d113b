"""Independent reference computations used only by the tests.

Nothing here calls the straightening, tableau-product or Jordan-structure
code under test; linear algebra goes through sympy.
"""
from functools import lru_cache
from itertools import permutations, product

import sympy


def to_sympy(x):
    return sympy.Rational(int(x.numerator), int(x.denominator)) if hasattr(
        x, "denominator") else sympy.Integer(int(x))


def _sign(perm):
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, n = i, 0
            while not seen[j]:
                seen[j], j, n = True, perm[j], n + 1
            sign *= -1 if n % 2 == 0 else 1
    return sign


def young_image(rows):
    """Row symmetrization of the column antisymmetrization of the filling ``rows``.

    Row symmetrization is realized by sorting each row, i.e. by mapping into
    the tensor product of symmetric powers indexed by rows.
    """
    shape = [len(r) for r in rows]
    ncols = shape[0] if shape else 0
    col_len = [sum(1 for p in shape if p > j) for j in range(ncols)]
    col_perms = [list(permutations(range(v))) for v in col_len]
    out = {}
    for choice in product(*col_perms):
        sign = 1
        new = [list(r) for r in rows]
        for j, perm in enumerate(choice):
            sign *= _sign(perm)
            for i in range(col_len[j]):
                new[i][j] = rows[perm[i]][j]
        key = tuple(tuple(sorted(r)) for r in new)
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def _express(target, images):
    """Coordinates of ``target`` in the span of ``images`` (dicts), via sympy."""
    keys = sorted(set(target).union(*[set(im) for im in images]))
    mat = sympy.Matrix([[im.get(k, 0) for im in images] for k in keys])
    rhs = sympy.Matrix([target.get(k, 0) for k in keys])
    sol, params = mat.gauss_jordan_solve(rhs)
    assert params.shape[0] == 0, "images of semistandard fillings are not independent"
    return list(sol)


def straighten_oracle(rows, basis_rows):
    """Coefficients of the filling ``rows`` in the basis given by semistandard ``basis_rows``."""
    return _express(young_image(rows), [young_image(b) for b in basis_rows])


def schur_matrix_oracle(a_rows, basis_rows):
    """Matrix of the induced map, built from the Young images of expanded tensors."""
    d = len(a_rows)
    images = [young_image(b) for b in basis_rows]
    columns = []
    for t in basis_rows:
        cells = [x for r in t for x in r]
        target = {}
        for word in product(range(1, d + 1), repeat=len(cells)):
            coeff = 1
            for y, x in zip(word, cells):
                coeff *= a_rows[y - 1][x - 1]
                if coeff == 0:
                    break
            if coeff == 0:
                continue
            it = iter(word)
            filling = [[next(it) for _ in r] for r in t]
            for k, v in young_image(filling).items():
                target[k] = target.get(k, 0) + coeff * v
        columns.append(_express({k: v for k, v in target.items() if v}, images))
    n = len(basis_rows)
    return [[columns[j][i] for j in range(n)] for i in range(n)]


def schur_polynomial(parts, xs):
    """Bialternant formula ``a_{lambda+delta} / a_delta``."""
    n = len(xs)
    lam = list(parts) + [0] * (n - len(parts))
    num = sympy.Matrix(n, n, lambda i, j: xs[i] ** (lam[j] + n - 1 - j)).det()
    den = sympy.Matrix(n, n, lambda i, j: xs[i] ** (n - 1 - j)).det()
    return sympy.Poly(sympy.cancel(num / den), *xs)


def schur_expansion(poly, xs):
    """Peel leading monomials off a symmetric polynomial: ``{partition: coefficient}``."""
    out = {}
    while not poly.is_zero:
        monom, coeff = poly.terms(order="lex")[0]
        parts = tuple(e for e in monom if e)
        out[parts] = coeff
        poly = poly - schur_polynomial(parts, xs) * coeff
    return out


@lru_cache(maxsize=None)
def lr_expansion(lam, mu):
    """``s_lam * s_mu`` expanded in Schur polynomials."""
    n = len(lam) + len(mu)
    xs = sympy.symbols(f"x0:{n}")
    prod_poly = schur_polynomial(lam, xs) * schur_polynomial(mu, xs)
    return schur_expansion(prod_poly, xs)


def lr_oracle(lam, mu, u):
    return int(lr_expansion(tuple(lam), tuple(mu)).get(tuple(u), 0))


def jordan_sizes_oracle(rows):
    """Jordan block sizes of a nilpotent matrix from kernel dimensions of its powers (sympy)."""
    m = sympy.Matrix([[to_sympy(x) for x in r] for r in rows])
    n = m.rows
    kernels = [0]
    power = sympy.eye(n)
    while kernels[-1] < n:
        power = power * m
        kernels.append(n - power.rank())
        if len(kernels) > n + 1:
            raise ValueError("matrix is not nilpotent")
    at_least = [kernels[k] - kernels[k - 1] for k in range(1, len(kernels))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exact)
    return tuple(sizes)
