"""Weight and Jordan-block calculus for Sen operators of C_p- and B_dR-representations.

An object is summarised by :class:`ClassData`: a multiset of blocks
``(weight, depth)``, one per indecomposable summand whose operator is
``weight * Id + J`` with ``J`` a nilpotent Jordan block of size ``depth + 1``.
For the ``"dR"`` flavor only the weight class modulo Z is meaningful, so
weights are stored reduced to their representative with constant term in
``[0, 1)``.
"""
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import floor

from gmpy2 import mpq

from .errors import EmptySchur, FlavorMismatch, NoSolution, RankTooSmall, ShapeMismatch
from .exactfield import (
    AlgebraElement,
    EtaleElement,
    Matrix,
    Q,
    is_rational,
    nilpotent_block_structure,
    nilpotent_jordan_matrix,
    rank,
)
from .schur import SchurSpace, schur_derivation
from .tableaux import Partition, chain_steps, enumerate_tableaux, r_of, standard_chain

FLAVORS = ("HT", "dR")


# -- scalar helpers ---------------------------------------------------------

def _coerce_weight(w):
    if isinstance(w, (AlgebraElement, EtaleElement)):
        return w
    if isinstance(w, str) or is_rational(w):
        return Q(w)
    raise TypeError(f"unsupported weight {w!r}")


def is_integral(w):
    """True when ``w`` is a rational integer (componentwise for étale weights)."""
    if isinstance(w, EtaleElement):
        return all(is_integral(c) for c in w.comps)
    if isinstance(w, AlgebraElement):
        return w.is_integer()
    return Q(w).denominator == 1


def reduce_mod_integers(w):
    """Representative of ``w + Z`` whose rational constant term lies in ``[0, 1)``."""
    if isinstance(w, EtaleElement):
        return w.parent.element([reduce_mod_integers(c) for c in w.comps])
    if isinstance(w, AlgebraElement):
        coeffs = list(w.coeffs)
        coeffs[0] = reduce_mod_integers(coeffs[0])
        return w.parent.element(coeffs)
    w = Q(w)
    return w - floor(w)


def weight_key(w):
    if isinstance(w, EtaleElement):
        return (2, w.parent.flatten(w))
    if isinstance(w, AlgebraElement):
        return (1, w.parent.flatten(w))
    return (0, (Q(w),))


def _p_valuation(x, p):
    x = Q(x)
    if x == 0:
        return None
    v = 0
    num, den = int(x.numerator), int(x.denominator)
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# -- classification data ----------------------------------------------------

@dataclass(frozen=True)
class ClassData:
    blocks: tuple
    flavor: str = "HT"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        blocks = []
        for w, depth in self.blocks:
            w = _coerce_weight(w)
            depth = int(depth)
            if depth < 0:
                raise ValueError("depth must be >= 0")
            if self.flavor == "dR":
                w = reduce_mod_integers(w)
            blocks.append((w, depth))
        blocks.sort(key=lambda b: (weight_key(b[0]), b[1]))
        object.__setattr__(self, "blocks", tuple(blocks))

    @property
    def rank(self):
        return sum(d + 1 for _, d in self.blocks)

    def weights(self):
        """Weight multiset, each block counted ``depth + 1`` times, in basis order."""
        return [w for w, d in self.blocks for _ in range(d + 1)]

    def block_sizes(self):
        return tuple(d + 1 for _, d in self.blocks)

    def theta(self):
        """Explicit block-diagonal operator: weight on the diagonal plus Jordan blocks."""
        n = self.rank
        ws = self.weights()
        nil = nilpotent_jordan_matrix(self.block_sizes())
        return Matrix([[(ws[i] if i == j else 0) + nil.rows[i][j] for j in range(n)]
                       for i in range(n)], n)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class EmbeddedClassData:
    """One :class:`ClassData` per embedding label, as after splitting ``B ⊗ F``."""

    components: tuple

    def __post_init__(self):
        comps = tuple((str(h), c) for h, c in self.components)
        ranks = {c.rank for _, c in comps}
        flavors = {c.flavor for _, c in comps}
        if len(ranks) > 1:
            raise ValueError("all embeddings must carry the same rank")
        if len(flavors) > 1:
            raise FlavorMismatch("mixed flavors across embeddings")
        object.__setattr__(self, "components", comps)

    @property
    def labels(self):
        return tuple(h for h, _ in self.components)

    @property
    def rank(self):
        return self.components[0][1].rank if self.components else 0

    def __getitem__(self, label):
        return dict(self.components)[label]


@dataclass(frozen=True)
class WeightSystem:
    """Per-embedding weight multisets, all of the same cardinality, in a fixed order."""

    weights: tuple

    def __post_init__(self):
        items = self.weights.items() if isinstance(self.weights, dict) else self.weights
        items = tuple((str(h), tuple(_coerce_weight(w) for w in ws)) for h, ws in items)
        if len({len(ws) for _, ws in items}) > 1:
            raise ValueError("weight multisets must have equal cardinality")
        object.__setattr__(self, "weights", items)

    @property
    def labels(self):
        return tuple(h for h, _ in self.weights)

    @property
    def rank(self):
        return len(self.weights[0][1]) if self.weights else 0

    def __getitem__(self, label):
        return dict(self.weights)[label]

    def twisted(self, mu, sign=-1):
        """Shift every weight at ``h`` by ``sign * mu[h]``."""
        return WeightSystem(tuple((h, tuple(w + sign * mu[h] for w in ws))
                                  for h, ws in self.weights))

    def to_class_data(self, flavor="HT"):
        return EmbeddedClassData(tuple(
            (h, ClassData(tuple((w, 0) for w in ws), flavor)) for h, ws in self.weights))


@dataclass(frozen=True)
class CharacterWeights:
    """One weight per embedding; ``report`` carries solver or constructor details."""

    weights: tuple
    report: dict = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        items = self.weights.items() if isinstance(self.weights, dict) else self.weights
        object.__setattr__(self, "weights",
                           tuple((str(h), _coerce_weight(w)) for h, w in items))

    @property
    def labels(self):
        return tuple(h for h, _ in self.weights)

    def __getitem__(self, label):
        return dict(self.weights)[label]


# -- operations -------------------------------------------------------------

def _check_flavor(a, b):
    if a.flavor != b.flavor:
        raise FlavorMismatch(f"cannot combine {a.flavor} with {b.flavor}")


def clebsch_gordan(m, n):
    """Jordan block sizes of ``J_m ⊗ I + I ⊗ J_n`` over a field of characteristic 0."""
    return tuple(m + n - 2 * k + 1 for k in range(1, min(m, n) + 1))


def class_tensor(a, b):
    """Classification of the tensor product: weights add, blocks follow Clebsch-Gordan."""
    if isinstance(a, EmbeddedClassData) or isinstance(b, EmbeddedClassData):
        if a.labels != b.labels:
            raise ShapeMismatch("embedding labels differ")
        return EmbeddedClassData(tuple((h, class_tensor(x, y)) for (h, x), (_, y)
                                       in zip(a.components, b.components)))
    _check_flavor(a, b)
    blocks = []
    for w, d in a.blocks:
        for w2, d2 in b.blocks:
            for size in clebsch_gordan(d + 1, d2 + 1):
                blocks.append((w + w2, size - 1))
    return ClassData(tuple(blocks), a.flavor)


def class_direct_sum(a, b):
    _check_flavor(a, b)
    return ClassData(a.blocks + b.blocks, a.flavor)


def class_restrict(a):
    """Restriction to an open subgroup: the classification data is unchanged."""
    return a


def class_extend_scalars(a, algebra=None):
    """Coefficient extension: weights are reinterpreted in ``algebra``, nothing else moves."""
    if algebra is None:
        return a
    return ClassData(tuple((algebra.coerce(w), d) for w, d in a.blocks), a.flavor)


@lru_cache(maxsize=None)
def _nilpotent_schur(sizes, parts):
    return schur_derivation(nilpotent_jordan_matrix(sizes), Partition(parts))


@lru_cache(maxsize=None)
def _restricted_blocks(sizes, parts, indices):
    full = _nilpotent_schur(sizes, parts)
    return nilpotent_block_structure(full.block(indices, indices))


def class_schur(a, u):
    """Classification of ``Schur^u`` applied to ``a``.

    The induced operator splits as a diagonal part (tableau weight sums,
    exact) plus the induced nilpotent part; the blocks are read off from the
    nilpotent part restricted to each weight's span of basis tableaux.
    """
    u = Partition.parse(u)
    if isinstance(a, EmbeddedClassData):
        return EmbeddedClassData(tuple((h, class_schur(c, u)) for h, c in a.components))
    ws = a.weights()
    if any(isinstance(w, EtaleElement) for w in ws):
        raise TypeError("étale weights: apply split_components before class_schur")
    space = SchurSpace(u, a.rank)
    if space.dim == 0:
        raise EmptySchur(f"Schur^{u.parts} of a rank {a.rank} object is zero",
                         witness={"rank": a.rank, "rows": u.rows})
    groups = {}
    for k, t in enumerate(space.basis):
        total = sum((ws[x - 1] for x in t.reading_word()), start=0)
        if a.flavor == "dR":
            total = reduce_mod_integers(total)
        groups.setdefault(total, []).append(k)
    sizes = a.block_sizes()
    blocks = []
    for w, indices in groups.items():
        for size in _restricted_blocks(sizes, u.parts, tuple(indices)):
            blocks.append((w, size - 1))
    return ClassData(tuple(blocks), a.flavor)


def class_from_theta(theta, eigenvalues, flavor="HT"):
    """Classify an explicit operator whose distinct eigenvalues are supplied.

    Block counts per eigenvalue come from ranks of powers of ``theta - λ``.
    """
    n = theta.nrows
    blocks = []
    for lam in eigenvalues:
        shifted = theta - Matrix.identity(n, one=lam)
        ranks = [n]
        power = Matrix.identity(n)
        while True:
            power = power @ shifted
            ranks.append(rank(power))
            if ranks[-1] == ranks[-2]:
                break
        ranks.append(ranks[-1])
        for s in range(1, len(ranks) - 1):
            count = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
            blocks.extend([(lam, s - 1)] * count)
    result = ClassData(tuple(blocks), flavor)
    if result.rank != n:
        raise ValueError(f"eigenvalues account for rank {result.rank}, operator has {n}")
    return result


def _require(a, flavor):
    if a.flavor != flavor:
        raise FlavorMismatch(f"expected {flavor} data, got {a.flavor}")


def is_hodge_tate(a):
    """Semisimple with integer weights."""
    if isinstance(a, EmbeddedClassData):
        return all(is_hodge_tate(c) for _, c in a.components)
    _require(a, "HT")
    return all(d == 0 and is_integral(w) for w, d in a.blocks)


def is_de_rham(a):
    """Semisimple with weights in the class of 0 modulo Z."""
    if isinstance(a, EmbeddedClassData):
        return all(is_de_rham(c) for _, c in a.components)
    _require(a, "dR")
    return all(d == 0 and is_integral(w) for w, d in a.blocks)


def twist_class(a, w):
    """Shift every weight by ``w``; depths are unchanged."""
    if isinstance(a, EmbeddedClassData):
        return EmbeddedClassData(tuple((h, twist_class(c, w[h] if isinstance(w, CharacterWeights)
                                                       else w)) for h, c in a.components))
    w = _coerce_weight(w)
    return ClassData(tuple((x + w, d) for x, d in a.blocks), a.flavor)


def tensor_twist_solve(w1, w2):
    """Weights of a character ``μ`` with ``W(μ^-1)`` and ``W'(μ)`` integral.

    Every pairwise sum must be an integer; the returned weight at ``h`` is
    the first stored weight of ``w1`` at ``h``.
    """
    if w1.labels != w2.labels:
        raise ShapeMismatch(f"embedding labels differ: {w1.labels} vs {w2.labels}")
    out = []
    for (h, a), (_, b) in zip(w1.weights, w2.weights):
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if not is_integral(x + y):
                    raise NoSolution(f"weight sum at {h} is not an integer",
                                     witness={"embedding": h, "i": i + 1, "j": j + 1,
                                              "sum": x + y})
        out.append((h, a[0]))
    return CharacterWeights(tuple(out))


def schur_twist_solve(w, u):
    """Weights of ``μ`` with ``W(μ^-1)`` integral, given integral tableau sums for ``Schur^u``."""
    u = Partition.parse(u)
    d = w.rank
    if d < r_of(u):
        raise RankTooSmall(f"rank {d} < r(u) = {r_of(u)}", witness={"rank": d, "r_of": r_of(u)})
    tableaux = enumerate_tableaux(u, d)
    chain = standard_chain(u, d)
    steps = chain_steps(chain)
    out = []
    report = {}
    for h, a in w.weights:
        for t in tableaux:
            total = sum((a[x - 1] for x in t.reading_word()), start=0)
            if not is_integral(total):
                raise NoSolution(f"tableau sum at {h} is not an integer",
                                 witness={"embedding": h, "tableau": t.to_json(), "sum": total})
        # consecutive chain tableaux differ by a_{i+1} - a_i in exactly one box
        offsets = [Q(0)]
        for i in range(1, d):
            k = steps[i]
            before = sum((a[x - 1] for x in chain[k].reading_word()), start=0)
            after = sum((a[x - 1] for x in chain[k + 1].reading_word()), start=0)
            step = after - before
            assert step == a[i] - a[i - 1] and is_integral(step)
            offsets.append(offsets[-1] + step)
        out.append((h, a[0]))
        report[h] = {"offsets": offsets}
    return CharacterWeights(tuple(out), report)


def charwts_construct(targets, p=2):
    """Validate target weights and record ``ω = p^-n ω'`` with ``n >= 0`` minimal."""
    report = {}
    for h, w in targets.weights:
        if isinstance(w, AlgebraElement):
            vals = [_p_valuation(c, p) for c in w.parent.flatten(w)]
        elif isinstance(w, EtaleElement):
            raise TypeError("character weights must be scalars")
        else:
            vals = [_p_valuation(w, p)]
        vals = [v for v in vals if v is not None]
        n = max([0] + [-v for v in vals])
        report[h] = {"n": n, "omega_prime": w * mpq(p) ** n, "p": p}
    return CharacterWeights(targets.weights, report)


def split_components(x):
    """Per-embedding slices of an embedded object or of étale-weighted data."""
    if isinstance(x, EmbeddedClassData):
        return [c for _, c in x.components]
    if isinstance(x, WeightSystem):
        return [WeightSystem(((h, ws),)) for h, ws in x.weights]
    if isinstance(x, ClassData):
        arities = {w.parent.arity for w, _ in x.blocks if isinstance(w, EtaleElement)}
        if not arities:
            return [x]
        (f,) = arities
        return [ClassData(tuple((w.comps[i] if isinstance(w, EtaleElement) else w, d)
                                for w, d in x.blocks), x.flavor) for i in range(f)]
    raise TypeError(f"cannot split {type(x).__name__}")


def weight_multiset(a):
    """Counter of weights with multiplicity ``depth + 1``."""
    return Counter(a.weights())
