"""Exact scalars: rationals, univariate quotient algebras and split étale algebras.

Rationals are ``gmpy2.mpq`` values (always reduced, positive denominator).
A :class:`QuotientAlgebra` is ``B[x]/(q(x))`` for a monic ``q`` over a base
ring ``B``; the base is :data:`QQ` unless algebras are stacked into a tower.
The modulus need not be irreducible, so zero divisors can occur and
inversion may raise :class:`~schurtwist.errors.NotAUnit`.

:class:`EtaleAlgebra` is the product ring ``E^f`` with the cyclic coordinate
shift ``sigma(x)_i = x_{i-1 mod f}``.
"""
from fractions import Fraction
from functools import reduce

from gmpy2 import mpq

from ..errors import NotAUnit

_RATIONAL_TYPES = (int, type(mpq(0)), Fraction)


def Q(value, den=None):
    """Coerce ``value`` (int, str ``"p/q"``, Fraction, mpq) to a reduced rational."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    return mpq(value)


def is_rational(x):
    return isinstance(x, _RATIONAL_TYPES) and not isinstance(x, bool)


class RationalField:
    """The base field Q, with the same small protocol as QuotientAlgebra."""

    degree = 1
    absolute_degree = 1

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"

    def zero(self):
        return mpq(0)

    def one(self):
        return mpq(1)

    def coerce(self, x):
        if is_rational(x):
            return Q(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def contains(self, x):
        return is_rational(x)

    def inverse(self, x):
        if x == 0:
            raise NotAUnit("0 is not invertible in QQ", witness=x)
        return 1 / Q(x)

    def flatten(self, x):
        return (Q(x),)

    def unflatten(self, vec):
        (v,) = vec
        return Q(v)


QQ = RationalField()


# -- dense polynomials over a base ring, little-endian tuples ---------------

def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x - y)
    return _trim(out)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _poly_divmod(a, b, base):
    """Divide ``a`` by ``b`` (leading coefficient must be a unit of ``base``)."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = base.inverse(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b) and rem:
        c = rem[-1] * lead_inv
        shift = len(rem) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = rem[shift + i] - c * y
        rem = _trim(rem[:-1]) if rem[-1] == 0 else _trim(rem)
    return _trim(quot), rem


def _poly_gcdex(a, b, base):
    """Return ``(g, s)`` with ``s*a = g (mod b)`` and ``g`` monic-normalized gcd."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [base.one()], []
    while r1:
        q, r = _poly_divmod(r0, r1, base)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r0:
        return [], []
    lead_inv = base.inverse(r0[-1])
    return [c * lead_inv for c in r0], [c * lead_inv for c in s0]


class QuotientAlgebra:
    """``base[x]/(modulus)`` with ``modulus`` monic, coefficients little-endian."""

    def __init__(self, modulus, base=QQ, name="x"):
        coeffs = tuple(base.coerce(c) for c in modulus)
        coeffs = tuple(_trim(coeffs))
        if len(coeffs) < 2:
            raise ValueError("modulus must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = coeffs
        self.base = base
        self.name = name
        self.degree = len(coeffs) - 1
        self.absolute_degree = self.degree * base.absolute_degree
        self._key = (self.modulus, base)
        self._hash = hash(("QuotientAlgebra",) + self._key)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, QuotientAlgebra) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"QuotientAlgebra({[str(c) for c in self.modulus]}, base={self.base!r})"

    def __call__(self, value):
        return self.coerce(value)

    def element(self, coeffs):
        coeffs = [self.base.coerce(c) for c in coeffs]
        if len(coeffs) > self.degree:
            coeffs = self._reduce(coeffs)
        coeffs = coeffs + [self.base.zero()] * (self.degree - len(coeffs))
        return AlgebraElement(self, tuple(coeffs))

    def zero(self):
        return AlgebraElement(self, (self.base.zero(),) * self.degree)

    def one(self):
        return self.element([self.base.one()])

    def gen(self):
        return self.element([self.base.zero(), self.base.one()])

    def coerce(self, x):
        if isinstance(x, AlgebraElement) and x.parent == self:
            return x
        if isinstance(x, (list, tuple)):
            return self.element(x)
        return self.element([self.base.coerce(x)])

    def contains(self, x):
        return isinstance(x, AlgebraElement) and x.parent == self

    def inverse(self, x):
        return self.coerce(x).inverse()

    def flatten(self, x):
        x = self.coerce(x)
        out = []
        for c in x.coeffs:
            out.extend(self.base.flatten(c))
        return tuple(out)

    def unflatten(self, vec):
        step = self.base.absolute_degree
        vec = list(vec)
        return self.element([self.base.unflatten(vec[i * step:(i + 1) * step])
                             for i in range(self.degree)])

    def _reduce(self, coeffs):
        mod = self.modulus
        n = self.degree
        r = list(coeffs)
        for k in range(len(r) - 1, n - 1, -1):
            c = r[k]
            if c == 0:
                continue
            off = k - n
            for i in range(n):
                if mod[i] != 0:
                    r[off + i] = r[off + i] - c * mod[i]
        return r[:n]


class AlgebraElement:
    """Immutable element of a :class:`QuotientAlgebra`."""

    __slots__ = ("parent", "coeffs", "_hash")

    def __init__(self, parent, coeffs):
        self.parent = parent
        self.coeffs = coeffs
        self._hash = None

    # coercion of the other operand; NotImplemented for foreign objects
    def _other(self, other):
        if isinstance(other, AlgebraElement):
            if other.parent is self.parent or other.parent == self.parent:
                return other
            try:
                return self.parent.coerce(other)
            except TypeError:
                return None
        try:
            return self.parent.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.parent, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.parent, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AlgebraElement(self.parent, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if is_rational(other):
            c = self.parent.base.coerce(other) if self.parent.base is QQ else None
            if c is not None:
                return AlgebraElement(self.parent, tuple(a * c for a in self.coeffs))
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = self.parent.degree
        if n == 1:
            return AlgebraElement(self.parent, (a[0] * b[0],))
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                prod[i + j] = prod[i + j] + x * y
        base = self.parent.base
        red = self.parent._reduce(prod)
        return AlgebraElement(self.parent, tuple(base.coerce(c) if isinstance(c, int) else c
                                                 for c in red))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.parent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"({c})*{self.parent.name}")
            else:
                terms.append(f"({c})*{self.parent.name}^{i}")
        return " + ".join(terms) if terms else "0"

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_constant(self):
        return all(c == 0 for c in self.coeffs[1:])

    @property
    def constant(self):
        return self.coeffs[0]

    def is_rational(self):
        if not self.is_constant():
            return False
        c = self.coeffs[0]
        return is_rational(c) or c.is_rational()

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        c = self.coeffs[0]
        return Q(c) if is_rational(c) else c.to_rational()

    def is_integer(self):
        return self.is_rational() and self.to_rational().denominator == 1

    def inverse(self):
        base = self.parent.base
        g, s = _poly_gcdex(list(self.coeffs), list(self.parent.modulus), base)
        if len(g) != 1:
            raise NotAUnit(f"{self!r} is a zero divisor in {self.parent!r}", witness=self)
        return self.parent.element(s) if s else self.parent.zero()


def algebra_invert(a):
    """Inverse of ``a`` in its quotient algebra (extended Euclid on the lift)."""
    if is_rational(a):
        return QQ.inverse(a)
    return a.inverse()


def cyclotomic_polynomial(n):
    """Integer coefficients (little-endian) of the ``n``-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod([Q(c) for c in poly],
                                [Q(c) for c in cyclotomic_polynomial(d)], QQ)
            assert not r
            poly = [int(c) for c in q]
    return poly


def cyclotomic_field(n):
    return QuotientAlgebra(cyclotomic_polynomial(n), name=f"z{n}")


class EtaleAlgebra:
    """The split algebra ``base^f`` with Frobenius acting by cyclic shift."""

    def __init__(self, base, arity):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.base = base
        self.arity = arity
        self.absolute_degree = arity * base.absolute_degree
        self._key = (base, arity)

    def __eq__(self, other):
        return self is other or (isinstance(other, EtaleAlgebra) and self._key == other._key)

    def __hash__(self):
        return hash(("EtaleAlgebra",) + self._key)

    def __repr__(self):
        return f"EtaleAlgebra({self.base!r}, {self.arity})"

    def __call__(self, value):
        return self.coerce(value)

    def element(self, comps):
        comps = tuple(self.base.coerce(c) for c in comps)
        if len(comps) != self.arity:
            raise ValueError(f"expected {self.arity} components, got {len(comps)}")
        return EtaleElement(self, comps)

    def diagonal(self, x):
        x = self.base.coerce(x)
        return EtaleElement(self, (x,) * self.arity)

    def zero(self):
        return self.diagonal(self.base.zero())

    def one(self):
        return self.diagonal(self.base.one())

    def coerce(self, x):
        if isinstance(x, EtaleElement) and x.parent == self:
            return x
        if isinstance(x, (list, tuple)):
            return self.element(x)
        return self.diagonal(x)

    def contains(self, x):
        return isinstance(x, EtaleElement) and x.parent == self

    def inverse(self, x):
        return self.coerce(x).inverse()

    def flatten(self, x):
        x = self.coerce(x)
        out = []
        for c in x.comps:
            out.extend(self.base.flatten(c))
        return tuple(out)

    def unflatten(self, vec):
        step = self.base.absolute_degree
        vec = list(vec)
        return self.element([self.base.unflatten(vec[i * step:(i + 1) * step])
                             for i in range(self.arity)])


class EtaleElement:
    """Element of ``E^f``; arithmetic is componentwise."""

    __slots__ = ("parent", "comps")

    def __init__(self, parent, comps):
        self.parent = parent
        self.comps = comps

    def _other(self, other):
        if isinstance(other, EtaleElement):
            return other if other.parent == self.parent else None
        try:
            return self.parent.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return EtaleElement(self.parent, tuple(a + b for a, b in zip(self.comps, o.comps)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return EtaleElement(self.parent, tuple(a - b for a, b in zip(self.comps, o.comps)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return EtaleElement(self.parent, tuple(-a for a in self.comps))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return EtaleElement(self.parent, tuple(a * b for a, b in zip(self.comps, o.comps)))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return EtaleElement(self.parent, tuple(c ** k for c in self.comps))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.comps == o.comps

    def __hash__(self):
        if self.is_diagonal():
            return hash(self.comps[0])
        return hash(self.comps)

    def __bool__(self):
        return any(c != 0 for c in self.comps)

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.comps) + ")"

    def is_zero(self):
        return all(c == 0 for c in self.comps)

    def is_diagonal(self):
        first = self.comps[0]
        return all(c == first for c in self.comps[1:])

    def inverse(self):
        return EtaleElement(self.parent, tuple(algebra_invert(c) for c in self.comps))

    def shift(self, k=1):
        return EtaleElement(self.parent, tuple(shift_apply(self.comps, k)))

    def component(self, i):
        return self.comps[i]


def shift_apply(v, k):
    """Cyclic shift ``v_i -> v_{i-k mod f}``; ``(a, b, c)`` with ``k=1`` gives ``(c, a, b)``."""
    v = tuple(v)
    f = len(v)
    k %= f
    return v[f - k:] + v[:f - k] if k else v


def sigma(x, k=1):
    """Apply the shift to an étale element; scalars of other rings are left fixed."""
    if isinstance(x, EtaleElement):
        return x.shift(k)
    return x


def fixed_points_shift(algebra):
    """Q-basis of ``{v in E^f : shift(v) = v}``, computed as a kernel over Q."""
    from .matrix import Matrix, kernel

    dim = algebra.absolute_degree
    cols = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        v = algebra.unflatten(e)
        cols.append([a - b for a, b in zip(algebra.flatten(v.shift(1)), algebra.flatten(v))])
    op = Matrix([[cols[j][i] for j in range(dim)] for i in range(dim)])
    return [algebra.unflatten(vec) for vec in kernel(op)]


def lcm(*values):
    from math import gcd

    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)
