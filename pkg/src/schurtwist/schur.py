"""Schur modules of free modules: straightening, induced matrices, derivations.

``Schur^u(M)`` is the quotient of ``Λ^{v_1} M ⊗ ... ⊗ Λ^{v_k} M`` (one factor
per column of ``u``) by the Garnir relations. A filling is stored as its
tuple of column words; the wedge factors are ordered by columns left to
right with entries read top to bottom, so a semistandard filling is the
basis vector ``e_T`` with coefficient ``+1``.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .exactfield import Matrix
from .tableaux import Partition, Tableau, enumerate_tableaux


def _parity(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def normalize_columns(cols):
    """Sort each column, tracking the sign; ``(0, None)`` if a column repeats an entry."""
    sign = 1
    out = []
    for c in cols:
        if len(set(c)) != len(c):
            return 0, None
        order = sorted(range(len(c)), key=c.__getitem__)
        sign *= _parity(order)
        out.append(tuple(c[k] for k in order))
    return sign, tuple(out)


def _violation(cols):
    for j in range(len(cols) - 1):
        left, right = cols[j], cols[j + 1]
        for i in range(len(right)):
            if left[i] > right[i]:
                return j, i
    return None


@lru_cache(maxsize=None)
def _straighten(cols):
    """Expansion of a column-sorted filling as ``((columns, coeff), ...)`` over semistandard ones."""
    bad = _violation(cols)
    if bad is None:
        return ((cols, 1),)
    j, i = bad
    left, right = cols[j], cols[j + 1]
    a_part, b_part = left[i:], right[:i + 1]
    values = a_part + b_part
    pos = {x: k for k, x in enumerate(values)}
    acc = {}
    for chosen in combinations(values, len(b_part)):
        chosen_set = set(chosen)
        if chosen_set == set(b_part):
            continue
        new_a = tuple(sorted(x for x in values if x not in chosen_set))
        new_b = tuple(sorted(chosen))
        shuffle_sign = _parity([pos[x] for x in new_a + new_b])
        new_cols = list(cols)
        new_cols[j] = left[:i] + new_a
        new_cols[j + 1] = new_b + right[i + 1:]
        sign, normal = normalize_columns(new_cols)
        if sign == 0:
            continue
        # Garnir: the alternating sum over all shuffles vanishes, so
        # T = -sum of the other shuffles.
        for key, c in _straighten(normal):
            acc[key] = acc.get(key, 0) - shuffle_sign * sign * c
    return tuple((k, c) for k, c in sorted(acc.items()) if c != 0)


def straighten_columns(cols):
    """Expand an arbitrary filling, given by column words, into semistandard column words."""
    sign, normal = normalize_columns(tuple(tuple(c) for c in cols))
    if sign == 0:
        return {}
    return {k: sign * c for k, c in _straighten(normal)}


@dataclass(frozen=True)
class SchurSpace:
    shape: Partition
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "shape", Partition.parse(self.shape))

    @property
    def basis(self):
        return _basis(self.shape.parts, self.rank)[0]

    @property
    def index(self):
        return _basis(self.shape.parts, self.rank)[1]

    @property
    def dim(self):
        return len(self.basis)

    def vector(self, coeffs):
        return SchurVector(self, tuple(coeffs))


@lru_cache(maxsize=None)
def _basis(parts, d):
    basis = tuple(enumerate_tableaux(Partition(parts), d))
    index = {t.columns(): k for k, t in enumerate(basis)}
    return basis, index


@dataclass(frozen=True)
class SchurVector:
    space: SchurSpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise ValueError("coordinate vector has the wrong length")

    def __getitem__(self, t):
        if isinstance(t, Tableau):
            t = self.space.index[t.columns()]
        return self.coords[t]

    def support(self):
        return {self.space.basis[k]: c for k, c in enumerate(self.coords) if c != 0}


def straighten(filling, d, shape=None):
    """Expansion of ``m_T`` for an arbitrary filling in the basis ``(e_S)``."""
    if not isinstance(filling, Tableau):
        filling = Tableau(tuple(tuple(r) for r in filling))
    space = SchurSpace(shape or filling.shape, d)
    coords = [0] * space.dim
    for cols, c in straighten_columns(filling.columns()).items():
        coords[space.index[cols]] += c
    return SchurVector(space, tuple(coords))


_PERMS = {}


def _signed_perms(n):
    if n not in _PERMS:
        _PERMS[n] = [(p, _parity(p)) for p in permutations(range(n))]
    return _PERMS[n]


def _minor(a, rows, cols):
    acc = None
    for perm, sign in _signed_perms(len(cols)):
        term = None
        for k, r in enumerate(rows):
            x = a.rows[r][cols[perm[k]]]
            if x == 0:
                term = None
                break
            term = x if term is None else term * x
        if term is None:
            continue
        term = term if sign == 1 else -term
        acc = term if acc is None else acc + term
    return acc


def _column_images(a, col, cache):
    """Nonzero ``(subset, minor)`` pairs for ``A`` applied to one wedge factor."""
    if col not in cache:
        idx = [x - 1 for x in col]
        out = []
        for rows in combinations(range(a.nrows), len(col)):
            m = _minor(a, rows, idx)
            if m is not None and m != 0:
                out.append((tuple(r + 1 for r in rows), m))
        cache[col] = out
    return cache[col]


def _is_one(c):
    return type(c) is int and c == 1


def _add_scaled(acc, key, coeff):
    acc[key] = coeff if key not in acc else acc[key] + coeff


def _to_matrix(columns, dim):
    rows = [[0] * dim for _ in range(dim)]
    for t, col in enumerate(columns):
        for s, x in col.items():
            rows[s][t] = x
    return Matrix(rows, dim)


def schur_matrix(a, u):
    """Matrix of ``Schur^u(A)`` in the basis ``(e_T)``: apply A to every wedge factor, straighten."""
    u = Partition.parse(u)
    if a.nrows != a.ncols:
        raise ValueError("schur_matrix needs a square matrix")
    space = SchurSpace(u, a.nrows)
    cache = {}
    columns = []
    for t in space.basis:
        partial = {(): 1}
        for col in t.columns():
            images = _column_images(a, col, cache)
            nxt = {}
            for key, c in partial.items():
                for sub, m in images:
                    _add_scaled(nxt, key + (sub,), m if _is_one(c) else c * m)
            partial = nxt
            if not partial:
                break
        image = {}
        for cols, c in partial.items():
            for basis_cols, k in _straighten(cols):
                _add_scaled(image, space.index[basis_cols], c if k == 1 else c * k)
        columns.append(image)
    return _to_matrix(columns, space.dim)


def schur_derivation(theta, u):
    """Matrix of the derivation induced by ``theta`` on ``Schur^u`` (one slot at a time)."""
    u = Partition.parse(u)
    d = theta.nrows
    space = SchurSpace(u, d)
    columns = []
    for t in space.basis:
        cols = t.columns()
        image = {}
        for j, col in enumerate(cols):
            for k, x in enumerate(col):
                for s in range(1, d + 1):
                    coeff = theta.rows[s - 1][x - 1]
                    if coeff == 0:
                        continue
                    new_col = col[:k] + (s,) + col[k + 1:]
                    new_cols = cols[:j] + (new_col,) + cols[j + 1:]
                    for basis_cols, c in straighten_columns(new_cols).items():
                        _add_scaled(image, space.index[basis_cols],
                                    coeff if c == 1 else coeff * c)
        columns.append(image)
    return _to_matrix(columns, space.dim)


def nu_rightmost(u):
    """Length of the rightmost column of ``u``."""
    return Partition.parse(u).columns[-1]
