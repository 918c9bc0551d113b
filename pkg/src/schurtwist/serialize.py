"""JSON encodings.

* Rational: ``"p/q"`` (integers as ``"p"``).
* Element of ``B[x]/(q)``: ``{"mod": [q_0, ..., 1], "val": [c_0, ...]}``, little-endian,
  coefficients themselves encoded recursively (towers nest).
* Element of ``E^f``: ``{"comps": [c_0, ..., c_{f-1}]}``; the shift sends
  coordinate ``i`` to ``i + 1 mod f``.
* Matrix: ``{"rows": r, "cols": c, "data": [...]}`` row-major.
* ClassData: ``{"flavor": "HT" | "dR", "blocks": [[weight, depth], ...]}``.
* Module: ``{"group", "inertia", "omega", "f", "phi", "N", "rho", "p"}`` plus
  optional ``"deg"`` and ``"E"`` (modulus of the coefficient field).
"""
import json

from gmpy2 import mpq

from .errors import ParseError, SchurTwistError
from .exactfield import (
    QQ,
    AlgebraElement,
    EtaleElement,
    Matrix,
    Q,
    QuotientAlgebra,
    is_rational,
)
from .pst import Character, GaloisShape, PhiNGalModule, PipelineResult
from .sen import CharacterWeights, ClassData, EmbeddedClassData, WeightSystem
from .tableaux import Partition, Tableau


# -- encoding ---------------------------------------------------------------

def encode_rational(x):
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_algebra(alg):
    if alg is QQ or alg == QQ:
        return "Q"
    return [encode(c) for c in alg.modulus]


def encode(obj):
    """Convert any library value into plain JSON data."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if is_rational(obj):
        return encode_rational(obj)
    if isinstance(obj, AlgebraElement):
        return {"mod": [encode(c) for c in obj.parent.modulus],
                "val": [encode(c) for c in obj.coeffs]}
    if isinstance(obj, EtaleElement):
        return {"comps": [encode(c) for c in obj.comps]}
    if isinstance(obj, Matrix):
        return {"rows": obj.nrows, "cols": obj.ncols, "data": [encode(x) for x in obj.entries()]}
    if isinstance(obj, ClassData):
        return {"flavor": obj.flavor, "blocks": [[encode(w), k] for w, k in obj.blocks]}
    if isinstance(obj, EmbeddedClassData):
        return {"embeddings": {h: encode(c) for h, c in obj.components}}
    if isinstance(obj, WeightSystem):
        return {"weights": {h: [encode(w) for w in ws] for h, ws in obj.weights}}
    if isinstance(obj, CharacterWeights):
        out = {"weights": {h: encode(w) for h, w in obj.weights}}
        if obj.report is not None:
            out["report"] = encode(obj.report)
        return out
    if isinstance(obj, Partition):
        return list(obj.parts)
    if isinstance(obj, Tableau):
        return obj.to_json()
    if isinstance(obj, GaloisShape):
        return {"group": [list(r) for r in obj.table], "inertia": list(obj.inertia),
                "omega": obj.omega, "f": obj.f}
    if isinstance(obj, PhiNGalModule):
        return encode_module(obj)
    if isinstance(obj, Character):
        return {"F": encode_algebra(obj.algebra),
                "values": {str(g): encode(v) for g, v in sorted(obj.values.items())}}
    if isinstance(obj, PipelineResult):
        return {"mu": encode(obj.mu), "F": encode_algebra(obj.algebra),
                "twisted": [encode(t) for t in obj.twisted],
                "verdicts": encode(obj.verdicts), "passed": obj.passed}
    if isinstance(obj, SchurTwistError):
        return {"error": obj.name, "message": str(obj), "witness": encode(obj.witness)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [encode(x) for x in items]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def encode_module(d):
    out = {"group": [list(r) for r in d.shape.table], "inertia": list(d.shape.inertia),
           "omega": d.shape.omega, "f": d.shape.f,
           "deg": [d.shape.deg[g] for g in d.shape.elements],
           "phi": encode(d.phi), "N": encode(d.nmat),
           "rho": {str(g): encode(m) for g, m in sorted(d.rho.items())},
           "p": encode_rational(d.p)}
    if d.base is not QQ:
        out["E"] = encode_algebra(d.base)
    return out


def dumps(obj):
    """Deterministic JSON text (sorted keys, fixed separators)."""
    return json.dumps(encode(obj), sort_keys=True, indent=2)


# -- decoding ---------------------------------------------------------------

def _fail(path, message):
    raise ParseError(f"{path}: {message}", witness={"path": path})


def decode_rational(value, path="$"):
    if isinstance(value, bool):
        _fail(path, "expected a rational, got a boolean")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, str):
        try:
            return Q(value)
        except (ValueError, ZeroDivisionError):
            _fail(path, f"bad rational {value!r}")
    _fail(path, f"expected a rational, got {type(value).__name__}")


def decode_algebra(value, path="$"):
    if value in (None, "Q"):
        return QQ
    if not isinstance(value, list):
        _fail(path, "expected a modulus coefficient list or \"Q\"")
    coeffs = [decode_scalar(c, f"{path}[{k}]") for k, c in enumerate(value)]
    parents = {c.parent for c in coeffs if isinstance(c, AlgebraElement)}
    if len(parents) > 1:
        _fail(path, "modulus coefficients live in different algebras")
    base = parents.pop() if parents else QQ
    try:
        return QuotientAlgebra(coeffs, base=base)
    except ValueError as exc:
        _fail(path, str(exc))


def decode_scalar(value, path="$"):
    """Rational, quotient-algebra element, or (for ``{"comps": ...}``) a list of scalars."""
    if isinstance(value, dict):
        if "mod" in value and "val" in value:
            alg = decode_algebra(value["mod"], f"{path}.mod")
            if not isinstance(value["val"], list):
                _fail(f"{path}.val", "expected a list")
            vals = [decode_scalar(c, f"{path}.val[{k}]") for k, c in enumerate(value["val"])]
            try:
                return alg.element(vals)
            except (TypeError, ValueError) as exc:
                _fail(path, str(exc))
        if "comps" in value:
            if not isinstance(value["comps"], list):
                _fail(f"{path}.comps", "expected a list")
            return [decode_scalar(c, f"{path}.comps[{k}]") for k, c in enumerate(value["comps"])]
        _fail(path, "expected {\"mod\", \"val\"} or {\"comps\"}")
    return decode_rational(value, path)


def decode_matrix(value, path="$"):
    if not isinstance(value, dict) or not {"rows", "cols", "data"} <= set(value):
        _fail(path, "expected {\"rows\", \"cols\", \"data\"}")
    r, c, data = value["rows"], value["cols"], value["data"]
    if not (isinstance(r, int) and isinstance(c, int) and r >= 0 and c >= 0):
        _fail(path, "rows and cols must be natural numbers")
    if not isinstance(data, list) or len(data) != r * c:
        _fail(f"{path}.data", f"expected {r * c} entries")
    entries = [decode_scalar(x, f"{path}.data[{k}]") for k, x in enumerate(data)]
    return Matrix([entries[i * c:(i + 1) * c] for i in range(r)], c)


def decode_partition(value, path="$"):
    try:
        return Partition.parse(value)
    except (ValueError, TypeError) as exc:
        _fail(path, str(exc))


def decode_class_data(value, path="$"):
    if isinstance(value, dict) and "embeddings" in value:
        return EmbeddedClassData(tuple(
            (h, decode_class_data(v, f"{path}.embeddings.{h}"))
            for h, v in value["embeddings"].items()))
    if not isinstance(value, dict) or "blocks" not in value:
        _fail(path, "expected {\"flavor\", \"blocks\"}")
    flavor = value.get("flavor", "HT")
    if flavor not in ("HT", "dR"):
        _fail(f"{path}.flavor", f"unknown flavor {flavor!r}")
    blocks = []
    for k, b in enumerate(value["blocks"]):
        if not (isinstance(b, list) and len(b) == 2 and isinstance(b[1], int) and b[1] >= 0):
            _fail(f"{path}.blocks[{k}]", "expected [weight, depth]")
        w = decode_scalar(b[0], f"{path}.blocks[{k}][0]")
        if isinstance(w, list):
            _fail(f"{path}.blocks[{k}][0]", "split etale weights with split_components first")
        blocks.append((w, b[1]))
    return ClassData(tuple(blocks), flavor)


def decode_weight_system(value, path="$"):
    if not isinstance(value, dict) or not isinstance(value.get("weights"), dict):
        _fail(path, "expected {\"weights\": {embedding: [w, ...]}}")
    out = {}
    for h, ws in value["weights"].items():
        if not isinstance(ws, list):
            _fail(f"{path}.weights.{h}", "expected a list")
        out[h] = [decode_scalar(w, f"{path}.weights.{h}[{k}]") for k, w in enumerate(ws)]
    return WeightSystem(out)


def decode_character_weights(value, path="$"):
    if not isinstance(value, dict) or not isinstance(value.get("weights"), dict):
        _fail(path, "expected {\"weights\": {embedding: w}}")
    return CharacterWeights({h: decode_scalar(w, f"{path}.weights.{h}")
                             for h, w in value["weights"].items()})


def _scalars(m):
    for x in m.entries():
        if isinstance(x, list):
            yield from x
        else:
            yield x


def decode_module(value, path="$"):
    if not isinstance(value, dict):
        _fail(path, "expected a module object")
    for key in ("group", "inertia", "omega", "f", "phi", "N", "rho"):
        if key not in value:
            _fail(path, f"missing key {key!r}")
    try:
        shape = GaloisShape(value["group"], value["inertia"], value["omega"], value["f"],
                            value.get("deg"))
    except (TypeError, IndexError, ValueError) as exc:
        _fail(f"{path}.group", str(exc))
    phi = decode_matrix(value["phi"], f"{path}.phi")
    nmat = decode_matrix(value["N"], f"{path}.N")
    if not isinstance(value["rho"], dict):
        _fail(f"{path}.rho", "expected {gid: matrix}")
    rho = {}
    for g, m in value["rho"].items():
        try:
            gid = int(g)
        except ValueError:
            _fail(f"{path}.rho", f"bad group element {g!r}")
        rho[gid] = decode_matrix(m, f"{path}.rho.{g}")
    p = decode_rational(value.get("p", "2"), f"{path}.p")
    if "E" in value:
        base = decode_algebra(value["E"], f"{path}.E")
    else:
        parents = {x.parent for m in [phi, nmat, *rho.values()] for x in _scalars(m)
                   if isinstance(x, AlgebraElement)}
        if len(parents) > 1:
            _fail(path, "entries live in different coefficient algebras; give \"E\"")
        base = parents.pop() if parents else QQ
    f = shape.f

    def lift(m, where):
        def one(x):
            if isinstance(x, list):
                if len(x) != f:
                    _fail(where, f"expected {f} components, got {len(x)}")
                return [base.coerce(c) for c in x]
            return base.coerce(x)
        try:
            return m.map(one)
        except TypeError as exc:
            _fail(where, str(exc))

    return PhiNGalModule(shape, lift(phi, f"{path}.phi"), lift(nmat, f"{path}.N"),
                         {g: lift(m, f"{path}.rho.{g}") for g, m in rho.items()}, p, base)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}", witness={"path": str(path)}) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}",
                         witness={"path": str(path), "line": exc.lineno}) from exc
