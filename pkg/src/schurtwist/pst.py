"""Finite (phi, N, Gal(L/K))-modules over the split algebra E^f.

Conventions. A module of rank d is a free ``E^f``-module with:

* ``phi(v) = Phi * sigma(v)``;
* ``g(v) = U_g * sigma^deg(g)(v)`` where ``g = g' * omega^deg(g)`` with ``g'`` in inertia;
* an ``E^f``-linear nilpotent ``N``.

These force the matrix relations checked by :func:`validate`:

* ``U_gh = U_g * sigma^deg(g)(U_h)``;
* ``Phi * sigma(U_g) = U_g * sigma^deg(g)(Phi)``;
* ``N * U_g = U_g * sigma^deg(g)(N)``;
* ``N * Phi = p * Phi * sigma(N)``.
"""
from dataclasses import dataclass, field

from .errors import (
    ContextNotSemistable,
    HypothesisNotMet,
    InvalidModule,
    NotAUnit,
    NotConjInvariant,
    NotScalar,
    RankTooSmall,
    ShapeMismatch,
)
from .exactfield import (
    QQ,
    AlgebraElement,
    EtaleAlgebra,
    EtaleElement,
    Matrix,
    Q,
    QuotientAlgebra,
    determinant,
    inverse,
)
from .exactfield.algebra import _poly_divmod
from .schur import schur_derivation, schur_matrix
from .tableaux import Partition, r_of


# -- groups -----------------------------------------------------------------

class GaloisShape:
    """A finite group (multiplication table on ``0..n-1``) with inertia subgroup and Frobenius lift.

    ``deg`` may be supplied; it is checked against the unique factorization
    ``g = g' * omega^i`` with ``g'`` in inertia and ``0 <= i < f``.
    """

    def __init__(self, table, inertia, omega, f, deg=None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.elements = tuple(range(self.order))
        self.inertia = tuple(sorted(int(g) for g in inertia))
        self.omega = int(omega)
        self.f = int(f)
        self._check_group()
        self.identity = next(e for e in self.elements
                             if all(self.table[e][g] == g for g in self.elements))
        self.inv = tuple(next(h for h in self.elements if self.table[g][h] == self.identity)
                         for g in self.elements)
        self._check_inertia()
        self.factor = self._factorize()
        self.deg = {g: i for g, (_, i) in self.factor.items()}
        if deg is not None:
            given = {int(g): int(i) for g, i in (deg.items() if isinstance(deg, dict)
                                                   else enumerate(deg))}
            bad = [g for g in self.elements if given.get(g) != self.deg[g]]
            if bad:
                raise InvalidModule(f"deg disagrees with the factorization at {bad[0]}",
                                    witness={"g": bad[0], "given": given.get(bad[0]),
                                             "expected": self.deg[bad[0]]})

    def __eq__(self, other):
        return isinstance(other, GaloisShape) and (
            self.table, self.inertia, self.omega, self.f) == (
            other.table, other.inertia, other.omega, other.f)

    def __hash__(self):
        return hash((self.table, self.inertia, self.omega, self.f))

    def __repr__(self):
        return f"GaloisShape(order={self.order}, inertia={list(self.inertia)}, " \
               f"omega={self.omega}, f={self.f})"

    def mul(self, g, h):
        return self.table[g][h]

    def power(self, g, k):
        out = self.identity
        for _ in range(k):
            out = self.table[out][g]
        return out

    def conj(self, g, x):
        """``g x g^-1``."""
        return self.table[self.table[g][x]][self.inv[g]]

    def _check_group(self):
        n = self.order
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in self.table):
            raise InvalidModule("multiplication table is not square on 0..n-1")
        for row in self.table:
            if len(set(row)) != n:
                raise InvalidModule("multiplication table rows are not permutations")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise InvalidModule("multiplication is not associative",
                                            witness={"a": a, "b": b, "c": c})

    def _check_inertia(self):
        inertia = set(self.inertia)
        if self.identity not in inertia:
            raise InvalidModule("inertia does not contain the identity")
        for a in inertia:
            for b in inertia:
                if self.table[a][b] not in inertia:
                    raise InvalidModule("inertia is not closed", witness={"g": a, "h": b})
        for g in self.elements:
            for x in inertia:
                if self.conj(g, x) not in inertia:
                    raise InvalidModule("inertia is not normal", witness={"g": g, "x": x})
        if self.f < 1 or self.order != self.f * len(inertia):
            raise InvalidModule(f"f={self.f} is not the index of inertia")
        for i in range(1, self.f):
            if self.power(self.omega, i) in inertia:
                raise InvalidModule("omega does not generate the quotient of order f",
                                    witness={"i": i})
        if self.power(self.omega, self.f) not in inertia:
            raise InvalidModule("omega^f is not in inertia")

    def _factorize(self):
        inertia = set(self.inertia)
        omega_inv = self.inv[self.omega]
        out = {}
        for g in self.elements:
            hits = [(self.table[g][self.power(omega_inv, i)], i) for i in range(self.f)]
            hits = [(h, i) for h, i in hits if h in inertia]
            if len(hits) != 1:
                raise InvalidModule(f"element {g} has no unique factorization")
            out[g] = hits[0]
        return out


# -- characters -------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """Values ``g -> unit of algebra`` on a set of group elements."""

    algebra: object
    values: dict = field(hash=False)

    def __call__(self, g):
        return self.values[g]

    @property
    def domain(self):
        return tuple(sorted(self.values))

    def is_multiplicative(self, shape):
        dom = set(self.values)
        return all(self.values[shape.mul(g, h)] == self.values[g] * self.values[h]
                   for g in dom for h in dom if shape.mul(g, h) in dom)


# -- modules ----------------------------------------------------------------

class PhiNGalModule:
    """Matrices ``phi``, ``nmat`` and ``rho[g]`` with entries in ``E^f``."""

    def __init__(self, shape, phi, nmat, rho, p=2, base=QQ):
        self.shape = shape
        self.p = Q(p)
        self.base = base
        self.algebra = EtaleAlgebra(base, shape.f)
        self.phi = self._lift(phi)
        self.nmat = self._lift(nmat)
        self.rho = {int(g): self._lift(m) for g, m in rho.items()}
        self.rank = self.phi.nrows
        for name, m in [("phi", self.phi), ("N", self.nmat)] + [
                (f"rho[{g}]", m) for g, m in self.rho.items()]:
            if m.shape != (self.rank, self.rank):
                raise InvalidModule(f"{name} is not {self.rank}x{self.rank}")
        missing = [g for g in shape.elements if g not in self.rho]
        if missing:
            raise InvalidModule(f"rho is missing element {missing[0]}")

    def _lift(self, m):
        alg = self.algebra
        return m if all(alg.contains(x) for x in m.entries()) else m.map(alg.coerce)

    def __repr__(self):
        return f"PhiNGalModule(rank={self.rank}, {self.shape!r}, base={self.base!r})"

    def identity(self):
        return Matrix.identity(self.rank, self.algebra.one(), self.algebra.zero())

    def with_matrices(self, phi=None, nmat=None, rho=None):
        return PhiNGalModule(self.shape, self.phi if phi is None else phi,
                             self.nmat if nmat is None else nmat,
                             self.rho if rho is None else rho, self.p, self.base)


def _residual(lhs, rhs):
    hit = (lhs - rhs).first_nonzero()
    if hit is None:
        return None
    i, j, _ = hit
    return {"entry": [i, j], "lhs": lhs.rows[i][j], "rhs": rhs.rows[i][j]}


def _is_unit(x):
    try:
        x.inverse() if isinstance(x, (AlgebraElement, EtaleElement)) else QQ.inverse(x)
    except (NotAUnit, ZeroDivisionError):
        return False
    return True


def validate(d):
    """Check every structural relation; returns ``{"valid": bool, "failures": [...]}``."""
    failures = []

    def fail(check, witness):
        failures.append({"check": check, "witness": witness})

    shape = d.shape
    det = determinant(d.phi)
    if not _is_unit(det):
        fail("phi not invertible", {"det": det})
    power = d.nmat ** d.rank if d.rank else d.nmat
    if not power.is_zero():
        fail("N not nilpotent", {"power": d.rank, "entry": list(power.first_nonzero()[:2])})
    res = _residual(d.nmat @ d.phi, d.p * (d.phi @ d.nmat.sigma(1)))
    if res:
        fail("N phi relation", res)
    if not d.rho[shape.identity].is_identity():
        fail("rho(1) not identity", {"g": shape.identity})
    for g in shape.elements:
        ug, dg = d.rho[g], shape.deg[g]
        for h in shape.elements:
            res = _residual(d.rho[shape.mul(g, h)], ug @ d.rho[h].sigma(dg))
            if res:
                fail("rho not a twisted homomorphism", {"g": g, "h": h, **res})
                break
        res = _residual(d.phi @ ug.sigma(1), ug @ d.phi.sigma(dg))
        if res:
            fail("rho does not commute with phi", {"g": g, **res})
        res = _residual(d.nmat @ ug, ug @ d.nmat.sigma(dg))
        if res:
            fail("rho does not commute with N", {"g": g, **res})
    return {"valid": not failures, "failures": failures}


def _require_valid(d, check):
    if not check:
        return
    report = validate(d)
    if not report["valid"]:
        first = report["failures"][0]
        raise InvalidModule(first["check"], witness=first["witness"])


def is_semistable(d, check=True):
    """Inertia acts trivially."""
    _require_valid(d, check)
    return all(d.rho[g].is_identity() for g in d.shape.inertia)


def is_crystalline(d, check=True):
    """Semistable with ``N = 0``."""
    return is_semistable(d, check) and d.nmat.is_zero()


def module_tensor(d1, d2):
    if d1.shape != d2.shape:
        raise ShapeMismatch("modules have different Galois shapes")
    if d1.base != d2.base or d1.p != d2.p:
        raise ShapeMismatch("modules have different coefficients or prime")
    i1, i2 = d1.identity(), d2.identity()
    return PhiNGalModule(
        d1.shape, d1.phi.kron(d2.phi),
        d1.nmat.kron(i2) + i1.kron(d2.nmat),
        {g: d1.rho[g].kron(d2.rho[g]) for g in d1.shape.elements},
        d1.p, d1.base)


def module_schur(d, u):
    u = Partition.parse(u)
    if u.rows > d.rank:
        raise ShapeMismatch(f"u={u.parts} has more rows than the rank {d.rank}")
    return PhiNGalModule(
        d.shape, schur_matrix(d.phi, u), schur_derivation(d.nmat, u),
        {g: schur_matrix(m, u) for g, m in d.rho.items()}, d.p, d.base)


# -- contexts ---------------------------------------------------------------

@dataclass(frozen=True)
class TensorWith:
    other: PhiNGalModule


@dataclass(frozen=True)
class SchurShape:
    u: Partition

    def __post_init__(self):
        object.__setattr__(self, "u", Partition.parse(self.u))


def _context_module(d, context):
    if isinstance(context, TensorWith):
        return module_tensor(d, context.other)
    if isinstance(context, SchurShape):
        return module_schur(d, context.u)
    raise TypeError(f"unknown context {context!r}")


def inertia_scalar_extract(d, context, context_module=None):
    """The character ``eta`` of inertia with ``rho(g) = eta(g) * Id``.

    The context module must be semistable; this is checked before the rank
    bound of the Schur case.
    """
    built = context_module if context_module is not None else _context_module(d, context)
    if not is_semistable(built, check=False):
        g = next(g for g in d.shape.inertia if not built.rho[g].is_identity())
        raise ContextNotSemistable("inertia acts nontrivially on the context module",
                                   witness={"g": g})
    if isinstance(context, SchurShape) and d.rank < r_of(context.u):
        raise RankTooSmall(f"rank {d.rank} < r(u) = {r_of(context.u)}",
                           witness={"rank": d.rank, "r_of": r_of(context.u)})
    shape = d.shape
    values = {}
    for g in shape.inertia:
        m = d.rho[g]
        if not m.is_scalar():
            raise NotScalar(f"rho({g}) is not scalar", witness={"g": g})
        c = m.rows[0][0] if d.rank else d.algebra.one()
        if not c.is_diagonal():
            raise NotScalar(f"rho({g}) is scalar but not sigma-fixed", witness={"g": g})
        values[g] = c.comps[0]
    eta = Character(d.base, values)
    _check_conj_invariant(eta, shape)
    return eta


def _check_conj_invariant(eta, shape):
    for g in shape.inertia:
        h = shape.conj(shape.omega, g)
        if eta(h) != eta(g):
            raise NotConjInvariant(f"eta differs on {g} and its omega-conjugate {h}",
                                   witness={"g": g, "conjugate": h})


def extend_character(eta, shape, factor=None):
    """``mu(g' omega^i) = eta(g') x^i`` on ``F = E[x]/(x^f - eta(omega^f))``.

    ``factor``, a monic divisor of ``x^f - c`` over E given little-endian,
    replaces the modulus so that F can be cut down to a field.
    """
    _check_conj_invariant(eta, shape)
    base = eta.algebra
    f = shape.f
    c = base.coerce(eta(shape.power(shape.omega, f)))
    modulus = [-c] + [base.zero()] * (f - 1) + [base.one()]
    if factor is not None:
        factor = [base.coerce(x) for x in factor]
        _, rem = _poly_divmod(modulus, factor, base)
        if any(x != 0 for x in rem):
            raise ValueError("factor does not divide x^f - c")
        modulus = factor
    algebra = QuotientAlgebra(modulus, base=base, name="xi")
    x = algebra.gen()
    mu = Character(algebra, {g: algebra.coerce(eta(gp)) * x ** i
                             for g, (gp, i) in shape.factor.items()})
    if not mu.is_multiplicative(shape):
        raise NotConjInvariant("extension is not multiplicative; eta is not a character")
    assert all(mu(g) == algebra.coerce(eta(g)) for g in shape.inertia)
    assert mu(shape.omega) ** f == algebra.coerce(c)
    return mu


def twist_module(d, mu, sign):
    """Extend coefficients to ``mu.algebra`` and scale ``rho(g)`` by ``mu(g)^sign``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    target = mu.algebra
    alg = EtaleAlgebra(target, d.shape.f)

    def extend(x):
        return alg.element([target.coerce(c) for c in x.comps])

    rho = {}
    for g, m in d.rho.items():
        scale = alg.diagonal(mu(g) if sign == 1 else mu(g).inverse())
        rho[g] = m.map(lambda x, s=scale: s * extend(x))
    return PhiNGalModule(d.shape, d.phi.map(extend), d.nmat.map(extend), rho, d.p, target)


def monodromy_descend(d, context):
    """From ``N = 0`` on the context module, conclude ``N = 0`` on the factors.

    Raises HypothesisNotMet when N does not vanish on the context. The
    returned verdict records whether the conclusion held.
    """
    if isinstance(context, TensorWith):
        other = context.other
        n_ctx = d.nmat.kron(other.identity()) + d.identity().kron(other.nmat)
        factors = [("N", d.nmat), ("N'", other.nmat)]
    elif isinstance(context, SchurShape):
        if d.rank < r_of(context.u):
            raise RankTooSmall(f"rank {d.rank} < r(u) = {r_of(context.u)}")
        n_ctx = schur_derivation(d.nmat, context.u)
        factors = [("N", d.nmat)]
    else:
        raise TypeError(f"unknown context {context!r}")
    hit = n_ctx.first_nonzero()
    if hit is not None:
        raise HypothesisNotMet("N is nonzero on the context module",
                               witness={"entry": list(hit[:2]), "value": hit[2]})
    for name, m in factors:
        hit = m.first_nonzero()
        if hit is not None:
            return {"name": "monodromy_descend", "passed": False,
                    "witness": {"matrix": name, "entry": list(hit[:2]), "value": hit[2]}}
    return {"name": "monodromy_descend", "passed": True, "witness": None}


# -- pipelines --------------------------------------------------------------

@dataclass
class PipelineResult:
    mu: Character
    algebra: object
    twisted: tuple
    verdicts: list

    @property
    def passed(self):
        return all(v["passed"] for v in self.verdicts)


def _verdict(name, passed, witness=None):
    return {"name": name, "passed": bool(passed), "witness": witness}


def _character_verdicts(mu, eta, shape):
    f = shape.f
    c = mu.algebra.coerce(eta(shape.power(shape.omega, f)))
    return [
        _verdict("mu restricts to eta on inertia",
                 all(mu(g) == mu.algebra.coerce(eta(g)) for g in shape.inertia)),
        _verdict("mu(omega)^f = eta(omega^f)", mu(shape.omega) ** f == c),
        _verdict("mu multiplicative", mu.is_multiplicative(shape)),
    ]


def pipeline_sst_tensor(d1, d2, factor=None):
    """Recover ``mu`` with ``D(mu^-1)`` and ``D'(mu)`` semistable from a semistable ``D (x) D'``."""
    context = TensorWith(d2)
    built = module_tensor(d1, d2)
    eta = inertia_scalar_extract(d1, context, context_module=built)
    mu = extend_character(eta, d1.shape, factor)
    t1, t2 = twist_module(d1, mu, -1), twist_module(d2, mu, 1)
    verdicts = _character_verdicts(mu, eta, d1.shape)
    verdicts.append(_verdict("D(mu^-1) semistable", is_semistable(t1, check=False)))
    verdicts.append(_verdict("D'(mu) semistable", is_semistable(t2, check=False)))
    if built.nmat.is_zero():
        verdicts.append(monodromy_descend(d1, context))
        verdicts.append(_verdict("D(mu^-1) crystalline", is_crystalline(t1, check=False)))
        verdicts.append(_verdict("D'(mu) crystalline", is_crystalline(t2, check=False)))
    return PipelineResult(mu, mu.algebra, (t1, t2), verdicts)


def pipeline_sst_schur(d, u, factor=None):
    """Recover ``mu`` with ``D(mu^-1)`` semistable from a semistable ``Schur^u(D)``."""
    u = Partition.parse(u)
    if d.rank < r_of(u):
        raise RankTooSmall(f"rank {d.rank} < r(u) = {r_of(u)}",
                           witness={"rank": d.rank, "r_of": r_of(u)})
    context = SchurShape(u)
    built = module_schur(d, u)
    eta = inertia_scalar_extract(d, context, context_module=built)
    mu = extend_character(eta, d.shape, factor)
    twisted = twist_module(d, mu, -1)
    verdicts = _character_verdicts(mu, eta, d.shape)
    verdicts.append(_verdict("D(mu^-1) semistable", is_semistable(twisted, check=False)))
    if built.nmat.is_zero():
        verdicts.append(monodromy_descend(d, context))
        verdicts.append(_verdict("D(mu^-1) crystalline", is_crystalline(twisted, check=False)))
    return PipelineResult(mu, mu.algebra, (twisted,), verdicts)


def base_change(d, p_mat):
    """The same module in the basis given by the columns of ``p_mat``."""
    p_mat = d._lift(p_mat)
    p_inv = etale_inverse(p_mat, d.algebra)
    return d.with_matrices(
        phi=p_inv @ d.phi @ p_mat.sigma(1),
        nmat=p_inv @ d.nmat @ p_mat,
        rho={g: p_inv @ m @ p_mat.sigma(d.shape.deg[g]) for g, m in d.rho.items()})


def etale_inverse(m, algebra):
    """Invert a matrix over ``E^f`` one coordinate at a time."""
    comps = [inverse(c) for c in m.map(algebra.coerce).components()]
    n = m.nrows
    return Matrix([[algebra.element([c.rows[i][j] for c in comps]) for j in range(n)]
                   for i in range(n)], n)


__all__ = [
    "GaloisShape", "Character", "PhiNGalModule", "TensorWith", "SchurShape", "PipelineResult",
    "validate", "is_semistable", "is_crystalline", "module_tensor", "module_schur",
    "inertia_scalar_extract", "extend_character", "twist_module", "monodromy_descend",
    "pipeline_sst_tensor", "pipeline_sst_schur", "base_change", "etale_inverse",
]
