import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurtwist.errors import ParseError, RankTooSmall
from schurtwist.exactfield import EtaleAlgebra, Matrix, Q, QQ, QuotientAlgebra, cyclotomic_field
from schurtwist.generators import rng_for, tensor_instance
from schurtwist.pst import validate
from schurtwist.sen import ClassData, EmbeddedClassData, WeightSystem
from schurtwist.serialize import (
    decode_algebra,
    decode_class_data,
    decode_matrix,
    decode_module,
    decode_partition,
    decode_rational,
    decode_scalar,
    decode_weight_system,
    dumps,
    encode,
    load_json,
)

RATIONALS = st.builds(Q, st.integers(-50, 50), st.integers(1, 12))


@given(RATIONALS)
def test_rational_round_trip(x):
    assert decode_rational(encode(x)) == x


def test_rational_encoding():
    assert encode(Q(3)) == "3"
    assert encode(Q(-1, 2)) == "-1/2"
    assert decode_rational(7) == 7
    for bad in [True, 1.5, "x/2", "1/0", None]:
        with pytest.raises(ParseError):
            decode_rational(bad)


@given(st.lists(RATIONALS, min_size=2, max_size=2))
def test_algebra_element_round_trip(coeffs):
    tower = QuotientAlgebra([QuotientAlgebra([1, 0, 1]).gen() * -1, 0, 1],
                            base=QuotientAlgebra([1, 0, 1]), name="y")
    for alg in [QuotientAlgebra([1, 0, 1]), cyclotomic_field(3)]:
        x = alg.element(coeffs)
        assert decode_scalar(json.loads(json.dumps(encode(x)))) == x
    y = tower.gen() * coeffs[0] + coeffs[1]
    assert decode_scalar(encode(y)) == y


def test_matrix_round_trip_and_errors():
    m = Matrix([[Q(1, 2), Q(0)], [Q(-3), Q(4)]], 2)
    assert decode_matrix(encode(m)) == m
    alg = EtaleAlgebra(QQ, 2)
    e = Matrix([[alg.element([1, 2])]], 1)
    assert encode(e) == {"rows": 1, "cols": 1, "data": [{"comps": ["1", "2"]}]}
    with pytest.raises(ParseError, match=r"\$\.data"):
        decode_matrix({"rows": 2, "cols": 2, "data": ["1"]})
    with pytest.raises(ParseError, match=r"\$\.data\[1\]"):
        decode_matrix({"rows": 1, "cols": 2, "data": ["1", "q"]})
    with pytest.raises(ParseError):
        decode_algebra(5)


def test_class_data_round_trip():
    a = ClassData(((Q(1, 2), 1), (Q(-3), 0)))
    assert decode_class_data(encode(a)) == a
    b = ClassData(((Q(1, 2), 0),), "dR")
    assert decode_class_data(encode(b)) == b
    emb = EmbeddedClassData((("h1", a), ("h2", a)))
    assert decode_class_data(encode(emb)) == emb
    with pytest.raises(ParseError, match="flavor"):
        decode_class_data({"flavor": "X", "blocks": []})
    with pytest.raises(ParseError, match=r"blocks\[0\]"):
        decode_class_data({"blocks": [[0, -1]]})


def test_weight_system_and_partition():
    w = WeightSystem({"h": [Q(1, 2), Q(3, 2)]})
    assert decode_weight_system(encode(w)) == w
    assert decode_partition("2,1").parts == (2, 1)
    assert decode_partition([3]).parts == (3,)
    with pytest.raises(ParseError):
        decode_partition("1,2")


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_module_round_trip(seed):
    d = tensor_instance(rng_for(seed))["modules"][0]
    text = dumps(d)
    back = decode_module(json.loads(text))
    assert back.phi == d.phi and back.nmat == d.nmat and back.rho == d.rho
    assert back.shape == d.shape and back.p == d.p
    assert validate(back)["valid"]
    assert dumps(back) == text


def test_module_errors_carry_paths():
    with pytest.raises(ParseError, match="missing key 'rho'"):
        decode_module({"group": [[0]], "inertia": [0], "omega": 0, "f": 1,
                       "phi": {"rows": 1, "cols": 1, "data": ["1"]},
                       "N": {"rows": 1, "cols": 1, "data": ["0"]}})


def test_errors_encode_with_witness():
    out = encode(RankTooSmall("too small", witness={"rank": 1}))
    assert out == {"error": "RankTooSmall", "message": "too small", "witness": {"rank": 1}}


def test_load_json_errors(tmp_path):
    with pytest.raises(ParseError):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  oops")
    with pytest.raises(ParseError) as exc:
        load_json(bad)
    assert exc.value.witness["line"] == 2
