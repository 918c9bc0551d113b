"""Immutable dense matrices over any commutative scalar ring.

Entries may be Python ints, ``mpq``, :class:`AlgebraElement` or
:class:`EtaleElement`; nothing here assumes a field except the elimination
routines (:func:`rank`, :func:`kernel`, :func:`solve`, :func:`inverse`), which
divide by pivots and therefore raise ``NotAUnit`` on zero divisors.
"""
from .algebra import EtaleElement, algebra_invert, sigma
from ..errors import NotNilpotent


_ZERO = 0


def _dot(row, col):
    acc = None
    for x, y in zip(row, col):
        if x is _ZERO or y is _ZERO:
            continue
        p = x * y
        acc = p if acc is None else acc + p
    return 0 if acc is None else acc


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix rows")

    @classmethod
    def identity(cls, n, one=1, zero=0):
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, n, m=None, zero=0):
        m = n if m is None else m
        return cls([[zero] * m for _ in range(n)], m)

    @classmethod
    def diag(cls, values, zero=0):
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        return "Matrix(" + repr([list(r) for r in self.rows]) + ")"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return Matrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols)

    def __sub__(self, other):
        return Matrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols)

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self.rows], self.ncols)

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            return NotImplemented
        return Matrix([[x * scalar for x in r] for r in self.rows], self.ncols)

    def __rmul__(self, scalar):
        if isinstance(scalar, Matrix):
            return NotImplemented
        return Matrix([[scalar * x for x in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return Matrix([[_dot(r, c) for c in cols] for r in self.rows], other.ncols)

    def __pow__(self, k):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result @ base
            base = base @ base
            k >>= 1
        return Matrix.identity(self.nrows) if result is None else result

    @property
    def T(self):
        return Matrix(list(zip(*self.rows)) if self.rows else [], self.nrows)

    def map(self, fn):
        return Matrix([[fn(x) for x in r] for r in self.rows], self.ncols)

    def entries(self):
        return [x for r in self.rows for x in r]

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def is_identity(self):
        return self.nrows == self.ncols and all(
            (x == 1 if i == j else x == 0)
            for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_scalar(self):
        """True when the matrix equals ``c * Id`` with ``c`` its top-left entry."""
        if self.nrows != self.ncols:
            return False
        if self.nrows == 0:
            return True
        c = self.rows[0][0]
        return all((x == c if i == j else x == 0)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def first_nonzero(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x != 0:
                    return (i, j, x)
        return None

    def sigma(self, k=1):
        """Entrywise cyclic shift on étale entries."""
        if k == 0:
            return self
        return self.map(lambda x: sigma(x, k))

    def kron(self, other):
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([x * y for x in r for y in s])
        return Matrix(rows, self.ncols * other.ncols)

    def block(self, row_idx, col_idx):
        return Matrix([[self.rows[i][j] for j in col_idx] for i in row_idx], len(col_idx))

    def trace(self):
        acc = 0
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def components(self):
        """Split a matrix with étale entries into one matrix per coordinate."""
        f = None
        for x in self.entries():
            if isinstance(x, EtaleElement):
                f = x.parent.arity
                break
        if f is None:
            return [self]
        return [self.map(lambda x, i=i: x.comps[i] if isinstance(x, EtaleElement) else x)
                for i in range(f)]


def kron(a, b):
    return a.kron(b)


def _is_zero(x):
    return x == 0


def _echelon(m):
    """Row-reduce a copy of ``m``; returns (rows, pivot columns)."""
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if not _is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = algebra_invert(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not _is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m):
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(_echelon(m)[1])


def kernel(m):
    """Basis (list of coordinate lists) of the right kernel ``{v : m v = 0}``."""
    rows, pivots = _echelon(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m.ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution ``x`` of ``a x = b`` (b a list), or ``None`` if inconsistent."""
    aug = Matrix([list(r) + [bi] for r, bi in zip(a.rows, b)], a.ncols + 1)
    rows, pivots = _echelon(aug)
    if a.ncols in pivots:
        return None
    x = [0] * a.ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][a.ncols]
    return x


def inverse(m):
    n = m.nrows
    aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)]
                  for i, r in enumerate(m.rows)], 2 * n)
    rows, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in rows[:n]], n)


def nilpotent_jordan_matrix(sizes):
    """Block-diagonal nilpotent matrix with one Jordan block (ones above the diagonal) per size."""
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    start = 0
    for s in sizes:
        for k in range(s - 1):
            rows[start + k][start + k + 1] = 1
        start += s
    return Matrix(rows, n)


def nilpotent_block_structure(m):
    """Jordan block sizes of a nilpotent matrix, largest first.

    Uses the rank sequence: the number of blocks of size ``s`` is
    ``rank(M^(s-1)) - 2 rank(M^s) + rank(M^(s+1))``.
    """
    n = m.nrows
    if n == 0:
        return ()
    ranks = [n]
    power = Matrix.identity(n)
    for _ in range(n + 1):
        power = power @ m
        ranks.append(rank(power))
    if ranks[n] != 0:
        raise NotNilpotent(f"M^{n} has rank {ranks[n]}", witness=ranks)
    sizes = []
    for s in range(n, 0, -1):
        count = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
        sizes.extend([s] * count)
    return tuple(sizes)


def determinant(m):
    """Division-free determinant (Berkowitz), valid over any commutative ring."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = m.rows
    coeffs = [1, -a[0][0]]
    for k in range(1, n):
        row = a[k][:k]
        vec = [a[i][k] for i in range(k)]
        toeplitz = [1, -a[k][k]]
        for _ in range(k):
            toeplitz.append(-_dot(row, vec))
            vec = [_dot(a[i][:k], vec) for i in range(k)]
        coeffs = [sum((toeplitz[i - j] * coeffs[j] for j in range(min(i, k) + 1)), 0)
                  for i in range(k + 2)]
    return coeffs[n] if n % 2 == 0 else -coeffs[n]
