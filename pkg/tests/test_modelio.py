import json
import random

import jsonschema
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from crskit.catalog import EXAMPLES, emit, make_example, make_salem
from crskit.errors import AntisymmetryViolation, ParseError, ValidationError
from crskit.modelio import dumps_model, loads_model, parse_model, schema, triple_to_model

from gen import random_invertible, random_nilpotent_triple

MODEL_SCHEMA = schema("model")


def base_model(**extra):
    m = {"dimension": 2, "labels": ["Z", "W"], "brackets": {"Z,W": {"W": "1"}},
         "real_basis": [["1", "0"], ["0", "1"], ["0", "i"]]}
    m.update(extra)
    return m


def roundtrip(T):
    text = dumps_model(triple_to_model(T))
    jsonschema.validate(json.loads(text), MODEL_SCHEMA)
    U, _ = loads_model(text)
    return U


def test_catalog_round_trip(tmp_path):
    for name in EXAMPLES:
        T = make_example(name)
        assert roundtrip(T) == T
        path = tmp_path / f"{name}.json"
        emit(name, None, path)
        U, assertions = parse_model(path)
        assert U == T and assertions == {}


def test_emitted_salem_equals_constructor(tmp_path):
    path = tmp_path / "salem.json"
    emit("salem", {}, path)
    assert parse_model(path)[0] == make_salem()


def test_real_form_round_trip():
    rng = random.Random(1)
    for name in ("salem", "inoue", "nondiag", "lemma31"):
        T = make_example(name)
        U = T.transform(random_invertible(rng, T.dim))
        assert roundtrip(U) == U


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_random_round_trip(seed):
    T = random_nilpotent_triple(random.Random(seed))
    assert roundtrip(T) == T


def test_antisymmetry_violation():
    m = base_model(brackets={"Z,W": {"W": "1"}, "W,Z": {"W": "1"}})
    with pytest.raises(AntisymmetryViolation):
        loads_model(json.dumps(m))
    m = base_model(brackets={"Z,Z": {"W": "1"}})
    with pytest.raises(AntisymmetryViolation):
        loads_model(json.dumps(m))
    # consistent reversed pair is fine
    m = base_model(brackets={"Z,W": {"W": "1"}, "W,Z": {"W": "-1"}})
    loads_model(json.dumps(m))


def test_dependent_g0():
    m = base_model(real_basis=[["1", "0"], ["2", "0"], ["0", "1"], ["0", "i"]])
    with pytest.raises(ValidationError):
        loads_model(json.dumps(m))


def test_json_syntax_error_location():
    text = '{\n  "dimension": 2,\n  "labels": [\n}'
    with pytest.raises(ParseError) as exc:
        loads_model(text)
    assert exc.value.line == 4


def test_bad_scalar_location():
    m = base_model(brackets={"Z,W": {"W": "1 +* i"}})
    with pytest.raises(ParseError):
        loads_model(json.dumps(m, indent=2))


def test_unknown_label_and_constant():
    with pytest.raises(ValidationError):
        loads_model(json.dumps(base_model(brackets={"Z,Q": {"W": "1"}})))
    with pytest.raises(ValidationError):
        loads_model(json.dumps(base_model(brackets={"Z,W": {"W": {"const": "nope"}}})))


def test_constants_and_assertions():
    m = base_model(
        brackets={"Z,W": {"W": {"const": "s", "coef": "i"}}},
        constants={"s": {"real": True, "enclosure": ["1.25", "1.5"]}},
        assertions={"no_holomorphic_functions": True, "reduction_base_dim": 1},
    )
    jsonschema.validate(m, MODEL_SCHEMA)
    T, a = loads_model(json.dumps(m))
    assert T.has_constants
    assert a == {"no_holomorphic_functions": True, "reduction_base_dim": 1}
    assert T.constants["s"].surrogate is not None


def test_bad_enclosure():
    m = base_model(
        brackets={"Z,W": {"W": {"const": "s"}}},
        constants={"s": {"real": True, "enclosure": ["2", "1"]}},
    )
    with pytest.raises(ValidationError):
        loads_model(json.dumps(m))


def test_mixed_square_roots():
    m = base_model(brackets={"Z,W": {"W": "sqrt(2)"}}, real_basis=[["sqrt(3)", "0"], ["0", "1"], ["0", "i"]])
    with pytest.raises((ParseError, ValidationError)):
        loads_model(json.dumps(m))


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        parse_model(tmp_path / "missing.json")
