"""Partitions, semistandard tableaux and the combinatorics built on them.

Tableaux are ordered by their row reading word (rows top to bottom, each
left to right) compared lexicographically; this order fixes the basis of
every Schur module in :mod:`schurtwist.schur`.
"""
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod

from .errors import ChainUnavailable


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text):
        """``"2,1"`` or ``[2, 1]`` -> Partition((2, 1))."""
        if isinstance(text, Partition):
            return text
        if isinstance(text, str):
            text = [t for t in text.replace(" ", "").split(",") if t]
        return cls(tuple(int(t) for t in text))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    @property
    def size(self):
        return sum(self.parts)

    @property
    def rows(self):
        return len(self.parts)

    @property
    def columns(self):
        """Column lengths ``v_1 >= v_2 >= ...`` (the conjugate partition)."""
        if not self.parts:
            return ()
        return tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))

    def conjugate(self):
        return Partition(self.columns)

    def is_rectangle(self):
        return len(set(self.parts)) <= 1

    def cells(self):
        return [(i, j) for i, p in enumerate(self.parts) for j in range(p)]

    def contains(self, other):
        return len(other.parts) <= len(self.parts) and all(
            a >= b for a, b in zip(self.parts, other.parts))


def partitions(n, max_part=None):
    """All partitions of ``n`` in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest.parts)


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram; ``rows[i][j]`` is the entry in row i, column j."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self):
        return Partition(tuple(len(r) for r in self.rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"Tableau({[list(r) for r in self.rows]})"

    def __lt__(self, other):
        return self.reading_word() < other.reading_word()

    def reading_word(self):
        return tuple(x for r in self.rows for x in r)

    def columns(self):
        """Column words, left to right, each read top to bottom."""
        shape = self.shape
        return tuple(tuple(self.rows[i][j] for i in range(v)) for j, v in enumerate(shape.columns))

    @classmethod
    def from_columns(cls, cols):
        nrows = len(cols[0]) if cols else 0
        return cls(tuple(tuple(c[i] for c in cols if len(c) > i) for i in range(nrows)))

    def is_semistandard(self):
        for r in self.rows:
            if any(a > b for a, b in zip(r, r[1:])):
                return False
        for c in self.columns():
            if any(a >= b for a, b in zip(c, c[1:])):
                return False
        return True

    def replace(self, cell, value):
        i, j = cell
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return Tableau(tuple(tuple(r) for r in rows))

    def to_json(self):
        return [list(r) for r in self.rows]


def r_of(u):
    """``r + 1`` when the diagram of ``u`` is a rectangle with r rows, else ``r``."""
    u = Partition.parse(u)
    return u.rows + 1 if u.is_rectangle() else u.rows


@lru_cache(maxsize=None)
def _tableaux(parts, d):
    shape = Partition(parts)
    cells = shape.cells()
    out = []
    grid = [[0] * p for p in parts]

    def fill(k):
        if k == len(cells):
            out.append(Tableau(tuple(tuple(r) for r in grid)))
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, grid[i][j - 1])
        if i > 0:
            lo = max(lo, grid[i - 1][j] + 1)
        # leave room for the cells below in this column
        below = shape.columns[j] - i - 1
        for x in range(lo, d - below + 1):
            grid[i][j] = x
            fill(k + 1)
        grid[i][j] = 0

    fill(0)
    out.sort(key=Tableau.reading_word)
    return tuple(out)


def enumerate_tableaux(u, d):
    """All semistandard tableaux of shape ``u`` with entries in ``1..d``, in reading-word order."""
    u = Partition.parse(u)
    return list(_tableaux(u.parts, d))


def hook_content_count(u, d):
    """Number of semistandard tableaux via the hook-content formula."""
    u = Partition.parse(u)
    cols = u.columns
    num, den = 1, 1
    for i, j in u.cells():
        hook = (u.parts[i] - j) + (cols[j] - i) - 1
        num *= d + j - i
        den *= hook
    return num // den


def standard_tableau(u):
    """The tableau with ``i`` in every box of row ``i``."""
    u = Partition.parse(u)
    return Tableau(tuple((i + 1,) * p for i, p in enumerate(u.parts)))


def content_vector(t, d):
    """``(m_T(1), ..., m_T(d))``: how often each value occurs in ``t``."""
    counts = Counter(t.reading_word())
    if counts and (max(counts) > d or min(counts) < 1):
        raise ValueError(f"tableau entries must lie in 1..{d}")
    return tuple(counts.get(i, 0) for i in range(1, d + 1))


def _one_cell_change(a, b):
    """Return ``(cell, old, new)`` if ``a`` and ``b`` differ in exactly one box."""
    diff = [(i, j) for i, (ra, rb) in enumerate(zip(a.rows, b.rows))
            for j, (x, y) in enumerate(zip(ra, rb)) if x != y]
    if len(diff) != 1:
        return None
    i, j = diff[0]
    return (i, j), a.rows[i][j], b.rows[i][j]


def chain_steps(chain):
    """Map each value ``i`` to the consecutive pair index whose single change is ``i -> i+1``."""
    steps = {}
    for k, (a, b) in enumerate(zip(chain, chain[1:])):
        change = _one_cell_change(a, b)
        if change is not None and change[2] == change[1] + 1:
            steps.setdefault(change[1], k)
    return steps


def standard_chain(u, d):
    """Tableaux ``T_1, ..., T_d`` linking every value ``i`` to ``i + 1`` by a one-box change.

    ``T_1`` is the standard tableau. Each later tableau differs from its
    predecessor in a single box, where ``i`` is replaced by ``i + 1``, and
    every ``i`` in ``1..d-1`` is used exactly once. Found by depth-first
    search, trying the lowest box of the rightmost column first.
    """
    u = Partition.parse(u)
    if d < r_of(u):
        raise ChainUnavailable(f"d={d} < r(u)={r_of(u)} for u={u.parts}",
                               witness={"d": d, "r_of": r_of(u)})
    start = standard_tableau(u)
    cells = sorted(u.cells(), key=lambda c: (-c[1], -c[0]))

    def moves(t, used):
        for cell in cells:
            i, j = cell
            x = t.rows[i][j]
            if x in used or x >= d:
                continue
            nxt = t.replace(cell, x + 1)
            if nxt.is_semistandard():
                yield x, nxt

    def search(chain, used):
        if len(chain) == d:
            return chain
        for x, nxt in moves(chain[-1], used):
            found = search(chain + [nxt], used | {x})
            if found:
                return found
        return None

    chain = search([start], frozenset())
    if chain is None:
        raise ChainUnavailable(f"no chain found for u={u.parts}, d={d}")
    return chain


# -- Littlewood-Richardson coefficients via the tableau product -------------

def _row_insert(rows, x):
    rows = [list(r) for r in rows]
    for r in rows:
        pos = next((k for k, y in enumerate(r) if y > x), None)
        if pos is None:
            r.append(x)
            return rows
        r[pos], x = x, r[pos]
    rows.append([x])
    return rows


def tableau_product(t, s):
    """Row-insert the reading word of ``s`` (rows bottom to top) into ``t``."""
    rows = [list(r) for r in t.rows]
    for r in reversed(s.rows):
        for x in r:
            rows = _row_insert(rows, x)
    return Tableau(tuple(tuple(r) for r in rows))


def lr_coefficient(lam, mu, u):
    """``c^u_{lam,mu}``: pairs (T of shape lam, U of shape mu) with ``T.U`` standard on ``u``."""
    lam, mu, u = (Partition.parse(x) for x in (lam, mu, u))
    if lam.size + mu.size != u.size or not u.contains(lam) or not u.contains(mu):
        return 0
    target = standard_tableau(u)
    d = u.rows
    want = Counter(target.reading_word())
    right = {}
    for s in _tableaux(mu.parts, d):
        right.setdefault(tuple(sorted(s.reading_word())), []).append(s)
    count = 0
    for t in _tableaux(lam.parts, d):
        rest = want - Counter(t.reading_word())
        if sum(rest.values()) != mu.size:
            continue
        key = tuple(sorted(rest.elements()))
        for s in right.get(key, ()):
            if tableau_product(t, s) == target:
                count += 1
    return count


def schur_polynomial_terms(u, d):
    """Monomials of ``s_u(x_1..x_d)`` as a Counter of exponent vectors."""
    return Counter(content_vector(t, d) for t in enumerate_tableaux(u, d))


def fillings(u, d):
    """Every filling of ``u`` with values in ``1..d`` (not necessarily semistandard)."""
    u = Partition.parse(u)
    for values in product(range(1, d + 1), repeat=u.size):
        it = iter(values)
        yield Tableau(tuple(tuple(next(it) for _ in range(p)) for p in u.parts))


def prod_hooks(u):
    u = Partition.parse(u)
    cols = u.columns
    return prod((u.parts[i] - j) + (cols[j] - i) - 1 for i, j in u.cells())
