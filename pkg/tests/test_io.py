import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ordlab.convergence import decide_o_convergence, verify_certificate
from ordlab.corpus import random_family
from ordlab.io import (SchemaError, dumps, encode, encode_family, parse_certificate, parse_family,
                       parse_gallery_family, parse_operator, parse_semiorder_space, parse_space,
                       parse_vector_at)
from ordlab.gallery import UnitVectors
from ordlab.space import K4, ORTH

O3 = ORTH(3)


def test_rationals_are_strings():
    assert encode(Fraction(-3, 4)) == "-3/4"
    assert parse_vector_at(["1/2", 3, "-0"], "v") == (Fraction(1, 2), 3, 0)


@pytest.mark.parametrize("bad,where", [(["1/0"], "v[0]"), (["x"], "v[0]"), ("12", "v")])
def test_bad_vectors_name_the_field(bad, where):
    with pytest.raises(SchemaError) as e:
        parse_vector_at(bad, "v")
    assert e.value.path.startswith(where)


def test_dimension_is_checked():
    with pytest.raises(SchemaError):
        parse_vector_at([1, 2], "v", 3)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_family_round_trip(seed):
    x = random_family(random.Random(seed), K4)
    data = json.loads(dumps(encode_family(x)))
    y = parse_family(data, K4)
    assert all(x.at(n) == y.at(n) for n in range(1, 30))
    assert y.limit == x.limit


def test_certificate_round_trip():
    x = random_family(random.Random(7), O3)
    v = decide_o_convergence(x)
    for c in v.certificates:
        back = parse_certificate(json.loads(dumps(encode(c))), O3)
        assert back.kind == c.kind
        assert verify_certificate(x, v.limit, back).accepted


def test_spaces():
    assert parse_space("K4") is not None and parse_space("K4").dim == 3
    s = parse_space({"name": "wedge", "generators": [[1, 0], [1, 1]]})
    assert s.cone.contains((2, 1)) and not s.cone.contains((0, 1))
    with pytest.raises(SchemaError):
        parse_space("NOPE")
    with pytest.raises(SchemaError):
        parse_space({"name": "x", "colour": 1})


def test_family_field_errors():
    with pytest.raises(SchemaError) as e:
        parse_family({"limit": [0, 0, 0], "terms": [{"coeff": [1, 0, 0], "rho": "-1", "exp": 0}]}, 3)
    assert e.value.path == "family.terms[0].rho"
    with pytest.raises(SchemaError):
        parse_family({"limit": [0, 0, 0], "prefix": {"0": [1, 1, 1]}}, 3)
    with pytest.raises(SchemaError):
        parse_family({"terms": []}, 3)


def test_gallery_and_operators():
    assert parse_gallery_family({"shape": "unit_vectors", "c": "2"}) == UnitVectors(Fraction(2))
    sos = parse_semiorder_space({"w": "K4", "t": [[1, 0], [0, 1], [1, 1]]})
    assert sos.v == 2
    el = parse_semiorder_space({"w": "linfrep", "t": "elin"})
    assert el.is_gallery
    op = parse_operator({"domain": "ORTH2", "codomain": "ORTH3", "matrix": [[1, 0], [0, 1], [1, 1]]})
    assert op((1, 2)) == (1, 2, 3)
    with pytest.raises(SchemaError):
        parse_operator({"domain": "ORTH2", "codomain": "ORTH3", "matrix": [[1, 0]]})


def test_dumps_is_deterministic():
    d = {"b": Fraction(1, 3), "a": [K4]}
    assert dumps(encode(d)) == dumps(encode(d))
    assert list(json.loads(dumps(encode(d)))) == ["a", "b"]
