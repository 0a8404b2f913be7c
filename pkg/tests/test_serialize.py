import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from adelic_weil import sampling
from adelic_weil.bruhat import indicator
from adelic_weil.errors import SchemaError
from adelic_weil.heisenberg import HeisElement
from adelic_weil.lattice import standard_lattice
from adelic_weil.scalars import NormFactor, cyclo_unit
from adelic_weil.serialize import (
    canonicalize,
    cyclo_to_json,
    dumps,
    heis_to_json,
    lattice_to_json,
    matrix_to_json,
    melement_to_json,
    norm_to_json,
    parse_cyclo,
    parse_heis,
    parse_lattice,
    parse_melement,
    parse_norm,
    parse_rational,
    parse_spmatrix,
)
from adelic_weil.weil import SpMatrix

from conftest import rng_of, seeds

F_JSON = {
    "dim": 1,
    "K": {"dim": 1, "den": "1", "rows": [[2]]},
    "prefactor": {"q": "1/1", "r": "1/1"},
    "support": [
        {"rep": ["1/2"], "value": {"order": 1, "terms": [[0, "2/1"]]}},
        {"rep": ["1/1"], "value": {"order": 1, "terms": [[0, "1/1"]]}},
    ],
}


def test_frozen_encodings():
    assert cyclo_to_json(cyclo_unit(F(1, 3))) == {"order": 3, "terms": [[1, "1/1"]]}
    assert norm_to_json(NormFactor(F(1, 2), 8)) == {"q": "1/1", "r": "2/1"}
    assert lattice_to_json(standard_lattice(2, F(1, 2))) == {"dim": 2, "den": "2", "rows": [[1, 0], [0, 1]]}
    assert heis_to_json(HeisElement((F(1, 2),), (3,), F(-1, 4))) == {"vplus": ["1/2"], "vminus": ["3/1"], "alpha": "-1/4"}
    assert matrix_to_json(SpMatrix.J(1)) == [["0/1", "1/1"], ["-1/1", "0/1"]]


def test_canonical_document_is_fixed_point():
    text = dumps(F_JSON)
    assert dumps(canonicalize(json.loads(text))) == text


def test_unsorted_input_is_canonicalised():
    messy = dict(F_JSON, support=[F_JSON["support"][1], {"rep": ["5/2"], "value": "2"}])
    out = canonicalize(messy)
    assert out == F_JSON
    assert canonicalize(out) == out


def test_rationals():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational(7) == 7
    for bad in ("x", 1.5, True, None):
        with pytest.raises(SchemaError):
            parse_rational(bad)


def test_zero_denominator_names_field():
    bad = json.loads(json.dumps(F_JSON))
    bad["support"][1]["rep"] = ["1/0"]
    with pytest.raises(SchemaError) as info:
        parse_melement(bad)
    assert info.value.path == "/support/1/rep/0"
    assert "1/0" in str(info.value)


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"dim": 1, "rows": [[1]]}, "/den"),
        ({"dim": 2, "den": "1", "rows": [[1, 0], [2]]}, "/rows/1"),
        ({"dim": 2, "den": "1", "rows": [[1, 2], [2, 4]]}, "/rows"),
        ({"dim": 1, "den": "0", "rows": [[1]]}, "/den"),
    ],
)
def test_lattice_schema_errors(doc, path):
    with pytest.raises(SchemaError) as info:
        parse_lattice(doc)
    assert info.value.path == path


def test_other_schema_errors():
    with pytest.raises(SchemaError):
        parse_cyclo({"order": 0, "terms": []})
    with pytest.raises(SchemaError):
        parse_norm({"q": "-1", "r": "2"})
    with pytest.raises(SchemaError):
        parse_spmatrix([["1", "1"], ["1", "1"]])
    with pytest.raises(SchemaError) as info:
        parse_heis({"vplus": ["1"], "vminus": ["1", "2"], "alpha": "0"})
    assert info.value.path == "/vminus"


@given(seeds)
def test_roundtrip(seed):
    rng = rng_of(seed)
    f = sampling.melement(rng, 2)
    assert parse_melement(json.loads(dumps(melement_to_json(f)))) == f
    L = sampling.lattice(rng, 3)
    assert parse_lattice(lattice_to_json(L)) == L
    h = sampling.heis_element(rng, 2)
    assert parse_heis(heis_to_json(h)) == h
    c = sampling.root_of_unity_value(rng)
    assert parse_cyclo(cyclo_to_json(c)) == c


@given(seeds)
def test_prefactor_roundtrip(seed):
    rng = rng_of(seed)
    f = sampling.melement(rng, 1)
    from adelic_weil.weil import weil_dilate

    g = weil_dilate([[F(2, 3)]], f)
    assert g.root != 1
    assert parse_melement(melement_to_json(g)) == g
    assert dumps(canonicalize(melement_to_json(g))) == dumps(melement_to_json(g))
    assert indicator(standard_lattice(1)) != g
