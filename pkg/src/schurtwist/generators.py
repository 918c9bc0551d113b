"""Seeded instance generators for property suites and the ``verify`` command.

All randomness flows through a ``random.Random`` built from an integer seed
(Python's Mersenne Twister), so every instance is reproducible.
"""
import random
from itertools import combinations_with_replacement, product
from math import gcd

from .exactfield import (
    QQ,
    EtaleAlgebra,
    Matrix,
    Q,
    cyclotomic_field,
    determinant,
    nilpotent_jordan_matrix,
)
from .pst import GaloisShape, PhiNGalModule, base_change, module_tensor
from .sen import ClassData, WeightSystem
from .tableaux import Partition, partitions, r_of


def rng_for(seed):
    return random.Random(seed)


# -- groups -----------------------------------------------------------------

def _compose(a, b):
    """``(a b)(x) = a(b(x))``."""
    return tuple(a[x] for x in b)


def _closure(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def shape_from_permutations(gens, inertia_gens, omega):
    """GaloisShape of the permutation group generated by ``gens``."""
    n = len(gens[0])
    elems = _closure(gens, n)
    index = {e: k for k, e in enumerate(elems)}
    table = [[index[_compose(a, b)] for b in elems] for a in elems]
    inertia = [index[e] for e in _closure(inertia_gens, n)] if inertia_gens else [
        index[tuple(range(n))]]
    f = len(elems) // len(inertia)
    return GaloisShape(table, inertia, index[tuple(omega)], f)


def _cycle(n, offset, length, total):
    perm = list(range(total))
    for k in range(length):
        perm[offset + k] = offset + (k + 1) % length
    return tuple(perm)


def cyclic_shape(n, f):
    """``Z/n`` with inertia of index ``f``; omega is a generator."""
    if n % f:
        raise ValueError("f must divide n")
    gen = _cycle(n, 0, n, n)
    sub = tuple((x + f) % n for x in range(n))
    return shape_from_permutations([gen], [sub] if f < n else [], gen)


def product_shape(a, b):
    """``Z/a x Z/b`` with inertia ``Z/a`` and ``f = b``."""
    total = a + b
    ca, cb = _cycle(total, 0, a, total), _cycle(total, a, b, total)
    return shape_from_permutations([ca, cb], [ca], cb)


def dihedral_shape(k):
    """Dihedral group of order ``2k`` with the rotations as inertia (``f = 2``)."""
    rot = tuple((x + 1) % k for x in range(k))
    ref = tuple((-x) % k for x in range(k))
    return shape_from_permutations([rot, ref], [rot], ref)


def alternating4_shape():
    """``A_4`` with the Klein four-group as inertia (``f = 3``)."""
    three = (1, 2, 0, 3)
    return shape_from_permutations([three, (1, 0, 3, 2)], [(1, 0, 3, 2), (2, 3, 0, 1)], three)


SHAPES = {
    "trivial": lambda: cyclic_shape(1, 1),
    "C2-ramified": lambda: cyclic_shape(2, 1),
    "C2-unramified": lambda: cyclic_shape(2, 2),
    "C3-unramified": lambda: cyclic_shape(3, 3),
    "C4-f2": lambda: cyclic_shape(4, 2),
    "C6-f2": lambda: cyclic_shape(6, 2),
    "C6-f3": lambda: cyclic_shape(6, 3),
    "C8-f2": lambda: cyclic_shape(8, 2),
    "C12-f3": lambda: cyclic_shape(12, 3),
    "C3xC2": lambda: product_shape(3, 2),
    "C2xC3": lambda: product_shape(2, 3),
    "C4xC3": lambda: product_shape(4, 3),
    "S3": lambda: dihedral_shape(3),
    "D4": lambda: dihedral_shape(4),
    "D6": lambda: dihedral_shape(6),
    "A4": alternating4_shape,
}


# -- characters of inertia ----------------------------------------------------

def _exponent(shape):
    out = 1
    for g in shape.inertia:
        k, x = 1, g
        while x != shape.identity:
            x = shape.mul(x, g)
            k += 1
        out = out * k // gcd(out, k)
    return out


def inertia_characters(shape):
    """Conjugation-invariant homomorphisms ``inertia -> Z/m`` as exponent dicts, with ``m``."""
    m = _exponent(shape)
    gens, span = [], {shape.identity}
    for g in shape.inertia:
        if g not in span:
            gens.append(g)
            span = _subgroup(shape, gens)
    out = []
    for assignment in product(range(m), repeat=len(gens)):
        chi = _extend_hom(shape, gens, assignment, m)
        if chi is None:
            continue
        if all(chi[shape.conj(shape.omega, g)] == chi[g] for g in shape.inertia):
            out.append(chi)
    return out, m


def _subgroup(shape, gens):
    span = {shape.identity}
    frontier = [shape.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = shape.mul(x, g)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return span


def _extend_hom(shape, gens, values, m):
    chi = {shape.identity: 0}
    frontier = [shape.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, v in zip(gens, values):
                y = shape.mul(x, g)
                val = (chi[x] + v) % m
                if y in chi:
                    if chi[y] != val:
                        return None
                else:
                    chi[y] = val
                    nxt.append(y)
        frontier = nxt
    return chi


def coefficient_field(m):
    """Smallest cyclotomic model containing the m-th roots of unity; Q when m <= 2."""
    return QQ if m <= 2 else cyclotomic_field(m)


def root_of_unity(field, m, k):
    """``zeta_m^k`` in ``field``; for ``m <= 2`` this is ``(-1)^k`` or 1."""
    k %= m
    if field is QQ:
        return Q(-1) ** k if m == 2 else Q(1)
    return field.gen() ** k


class EtaCharacter:
    """A planted character of inertia, callable on group elements."""

    def __init__(self, shape, exponents, m, field):
        self.shape, self.exponents, self.m, self.field = shape, exponents, m, field

    def __call__(self, g):
        return root_of_unity(self.field, self.m, self.exponents[g])

    def inverse(self):
        return EtaCharacter(self.shape, {g: -k % self.m for g, k in self.exponents.items()},
                            self.m, self.field)

    def order_divides(self, n):
        return all(k * n % self.m == 0 for k in self.exponents.values())


# -- modules ----------------------------------------------------------------

def character_line(shape, eta, lam=1, p=2):
    """Rank-one module on which ``g' omega^i`` acts by ``eta(g') u_i`` with ``u = (c, 1, ..., 1)``."""
    field, f = eta.field, shape.f
    alg = EtaleAlgebra(field, f)
    c = eta(shape.power(shape.omega, f))
    u = alg.element([c] + [1] * (f - 1))
    partial = [alg.one()]
    for i in range(1, f):
        partial.append(partial[-1] * u.shift(i - 1))
    rho = {g: Matrix([[alg.diagonal(eta(gp)) * partial[i]]], 1)
           for g, (gp, i) in shape.factor.items()}
    phi = Matrix([[alg.diagonal(Q(lam)) * u]], 1)
    return PhiNGalModule(shape, phi, Matrix([[alg.zero()]], 1), rho, p, field)


def unramified_block(shape, field, jordan, lam=1, p=2, permute=False):
    """Module with trivial inertia action, ``Phi`` diagonal with p-powers along Jordan chains of ``N``.

    ``permute`` (only for ``N = 0``, rank ``f``) lets ``g`` act by the cyclic
    permutation matrix raised to ``deg(g)``.
    """
    d = sum(jordan)
    p = Q(p)
    diag = []
    for size in jordan:
        diag.extend(Q(lam) * p ** k for k in range(size))
    phi = Matrix.diag(diag)
    nmat = nilpotent_jordan_matrix(jordan)
    if permute:
        if d != shape.f or any(s != 1 for s in jordan):
            raise ValueError("permutation action needs N = 0 and rank f")
        cyc = Matrix([[1 if i == (j + 1) % d else 0 for j in range(d)] for i in range(d)], d)
        rho = {g: cyc ** shape.deg[g] for g in shape.elements}
    else:
        rho = {g: Matrix.identity(d) for g in shape.elements}
    return PhiNGalModule(shape, phi, nmat, rho, p, field)


def random_change_of_basis(rng, alg, d, spread=2):
    """Random matrix over ``E^f`` invertible in every coordinate."""
    base = alg.base
    while True:
        comps = []
        for _ in range(alg.arity):
            m = Matrix([[_random_scalar(rng, base, spread) for _ in range(d)] for _ in range(d)], d)
            if determinant(m) == 0:
                break
            comps.append(m)
        else:
            return Matrix([[alg.element([c.rows[i][j] for c in comps]) for j in range(d)]
                           for i in range(d)], d)


def _random_scalar(rng, base, spread):
    if base is QQ:
        return Q(rng.randint(-spread, spread))
    return base.element([rng.randint(-spread, spread) for _ in range(base.degree)])


def random_jordan(rng, d, crystalline):
    if crystalline:
        return (1,) * d
    parts = list(rng.choice([p for p in partitions(d)]).parts)
    rng.shuffle(parts)
    return tuple(parts)


def planted_module(rng, shape, eta, d, crystalline=False, p=2):
    """``L_eta (x) D_0`` in a random basis; ``D_0`` has trivial inertia action."""
    lam = Q(rng.choice([1, 2, 3, -1, Q(1, 2)]))
    permute = d == shape.f and shape.f > 1 and crystalline and rng.random() < 0.5
    jordan = (1,) * d if permute else random_jordan(rng, d, crystalline)
    block = unramified_block(shape, eta.field, jordan, lam, p, permute=permute)
    line = character_line(shape, eta, Q(rng.choice([1, 3, Q(1, 3)])), p)
    combined = module_tensor(line, block)
    return base_change(combined, random_change_of_basis(rng, combined.algebra, d))


def pick_character(rng, shape, schur_size=None):
    chars, m = inertia_characters(shape)
    if schur_size is not None:
        field = coefficient_field(m)
        chars = [c for c in chars if EtaCharacter(shape, c, m, field).order_divides(schur_size)]
    return EtaCharacter(shape, rng.choice(chars), m, coefficient_field(m))


def tensor_instance(rng, crystalline=False, shape_name=None, rank=None, p=2):
    name = shape_name or rng.choice(sorted(SHAPES))
    shape = SHAPES[name]()
    eta = pick_character(rng, shape)
    d1 = rank or rng.randint(1, 3)
    d2 = rng.randint(1, 3)
    first = planted_module(rng, shape, eta, d1, crystalline, p)
    second = planted_module(rng, shape, eta.inverse(), d2, crystalline, p)
    return {"shape": name, "eta": eta, "modules": (first, second)}


SCHUR_SHAPES = [Partition(x) for x in
                [(1,), (2,), (3,), (4,), (1, 1), (2, 1), (2, 2), (3, 1), (2, 1, 1)]]


def schur_instance(rng, crystalline=False, shape_name=None, rank=None, u=None, p=2):
    name = shape_name or rng.choice(sorted(SHAPES))
    shape = SHAPES[name]()
    if u is None:
        d = rank or rng.randint(2, 3)
        u = rng.choice([v for v in SCHUR_SHAPES if r_of(v) <= d])
    else:
        u = Partition.parse(u)
        d = rank or max(r_of(u), 1)
    eta = pick_character(rng, shape, schur_size=u.size)
    module = planted_module(rng, shape, eta, d, crystalline, p)
    return {"shape": name, "eta": eta, "module": module, "u": u}


# -- mutations --------------------------------------------------------------

def mutate(d, kind, rng=None):
    """Break exactly one kind of relation of a valid module.

    ``rho``: scale ``U_g`` by 2 for one g. ``nilpotent``: add the identity to
    N. ``prime``: change p (breaks the N-phi relation when N != 0).
    ``phi``: multiply Phi by the non-fixed scalar ``(2, 1, ..., 1)`` (breaks
    phi-commutation when f >= 2).
    """
    rng = rng or random.Random(0)
    alg = d.algebra
    if kind == "rho":
        g = rng.choice(d.shape.elements)
        rho = dict(d.rho)
        rho[g] = rho[g] * 2
        return d.with_matrices(rho=rho)
    if kind == "nilpotent":
        return d.with_matrices(nmat=d.nmat + d.identity())
    if kind == "prime":
        if d.nmat.is_zero():
            raise ValueError("prime mutation needs N != 0")
        return PhiNGalModule(d.shape, d.phi, d.nmat, d.rho, d.p + 1, d.base)
    if kind == "phi":
        if d.shape.f < 2:
            raise ValueError("phi mutation needs f >= 2")
        t = alg.element([2] + [1] * (d.shape.f - 1))
        return d.with_matrices(phi=d.phi * t)
    raise ValueError(f"unknown mutation {kind!r}")


MUTATIONS = {
    "rho": "rho not a twisted homomorphism",
    "nilpotent": "N not nilpotent",
    "prime": "N phi relation",
    "phi": "rho does not commute with phi",
}


# -- classification data ----------------------------------------------------

def enumerate_class_data(max_rank, max_depth, weights, flavor="HT"):
    """Every ClassData with total rank ``1..max_rank`` built from the given blocks."""
    blocks = [(w, k) for w in weights for k in range(max_depth + 1)]
    seen = set()
    for n in range(1, max_rank + 1):
        for combo in combinations_with_replacement(blocks, n):
            if sum(k + 1 for _, k in combo) > max_rank:
                continue
            data = ClassData(combo, flavor)
            if data not in seen:
                seen.add(data)
                yield data


def random_ht_weights(rng, labels, rank, spread=3):
    return WeightSystem({h: [Q(rng.randint(-spread, spread)) for _ in range(rank)]
                         for h in labels})


def random_rational(rng, max_den=6, spread=2):
    den = rng.randint(1, max_den)
    return Q(rng.randint(-spread * den, spread * den), den)


def twist_weights(w, mu, sign=1):
    """Add ``sign * mu[h]`` to every weight at ``h``."""
    return WeightSystem({h: [x + sign * mu[h] for x in ws] for h, ws in w.weights})
