import copy
import json

import pytest

from conftest import mixed_space
from flagforge.errors import SchemaError
from flagforge.exactlin import F4, GF, QQ, Matrix, field_from_desc, quadratic_extension
from flagforge.groups import GroupElement
from flagforge.hermitian import is_symmetric_flag
from flagforge.jsonio import (
    dumps,
    emit_cover,
    emit_flag,
    emit_group_element,
    emit_hermitian,
    emit_idemps,
    emit_lflag,
    emit_matrix_file,
    emit_outer_idemps,
    load_file,
    loads,
    parse_cover,
    parse_flag,
    parse_group_element,
    parse_hermitian,
    parse_idemps,
    parse_lflag,
    parse_matrix_file,
    parse_outer_idemps,
)


def _text(fixtures, name):
    return (fixtures / name).read_text()


@pytest.mark.parametrize(
    "name,parse,emit",
    [
        ("mixed_lflag.json", parse_lflag, emit_lflag),
        ("flag_f3.json", parse_flag, emit_flag),
        ("idemps_f3.json", parse_idemps, emit_idemps),
    ],
)
def test_fixture_round_trip_byte_identical(fixtures, name, parse, emit):
    text = _text(fixtures, name)
    assert dumps(emit(parse(loads(text)))) == text


def test_mixed_cover_fixture(fixtures):
    f = parse_lflag(load_file(fixtures / "mixed_lflag.json"))
    assert f.space.base.components == ("x", "y", "z")
    assert [f.space.is_split(i) for i in range(3)] == [True, False, True]
    assert is_symmetric_flag(f)


def test_field_descriptors():
    for F in (QQ, GF(5), quadratic_extension(GF(3), 2), F4()):
        assert field_from_desc(F.desc()) == F
        assert field_from_desc(json.loads(json.dumps(F.desc()))) == F


def test_rational_matrix_round_trip():
    m = parse_matrix_file({"field": {"kind": "Q"}, "matrix": [["1/2", "-3"], [0, "4/6"]]})
    assert m.rows[1][1] == QQ.decode("2/3")
    assert emit_matrix_file(m)["matrix"] == [["1/2", "-3"], ["0", "2/3"]]


def test_zero_denominator_rejected():
    with pytest.raises(SchemaError) as e:
        parse_matrix_file({"field": {"kind": "Q"}, "matrix": [["1", "3/0"]]})
    assert e.value.path == "/matrix/0/1"


def test_path_precise_errors(fixtures):
    good = load_file(fixtures / "flag_f3.json")
    bad = copy.deepcopy(good)
    bad["flags"][1]["chain"][0][0] = [1, 2]
    with pytest.raises(SchemaError) as e:
        parse_flag(bad)
    assert e.value.path == "/flags/1/chain/0/0"
    bad = copy.deepcopy(good)
    del bad["d"]
    with pytest.raises(SchemaError) as e:
        parse_flag(bad)
    assert e.value.path == "/d"
    bad = copy.deepcopy(good)
    bad["flags"][0]["component"] = "W"
    with pytest.raises(SchemaError) as e:
        parse_flag(bad)
    assert e.value.path == "/flags/0/component"


def test_bad_split_member_path(fixtures):
    bad = load_file(fixtures / "mixed_lflag.json")
    bad["flags"][0]["chain"][0]["sheets"].pop()
    with pytest.raises(SchemaError) as e:
        parse_lflag(bad)
    assert e.value.path == "/flags/0/chain/0/sheets"


def test_unknown_tag_and_missing_component():
    cover = {"base": {"field": {"kind": "Fp", "p": 3}, "components": ["a", "b"]}, "cover": [{"component": "a", "tag": "split"}]}
    with pytest.raises(SchemaError) as e:
        parse_cover(cover)
    assert e.value.path == "/cover"
    cover["cover"].append({"component": "b", "tag": "ramified"})
    with pytest.raises(SchemaError) as e:
        parse_cover(cover)
    assert e.value.path == "/cover/1/tag"


def test_cover_and_hermitian_round_trip():
    space = mixed_space(2)
    assert parse_cover(emit_cover(space.cover)) == space.cover
    assert parse_hermitian(emit_hermitian(space)) == space


def test_non_hermitian_gram_is_schema_error():
    data = emit_hermitian(mixed_space(2))
    data["gram"][0] = [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]
    with pytest.raises(SchemaError):
        parse_hermitian(data)


def test_outer_idemps_round_trip():
    space = mixed_space(2)
    one = (1, 0, 0, 1)
    F = space.carrier_field(1)
    fone = (F.one, F.zero, F.zero, F.one)
    from flagforge.hermitian import OuterIdempTuple

    t = OuterIdempTuple(space, (((one, one),), (fone,), ((one, one),)))
    assert parse_outer_idemps(emit_outer_idemps(t)) == t


def test_group_element_forms(F2):
    g = GroupElement((Matrix.from_ints(F2, [[1, 1], [0, 1]]),))
    assert parse_group_element(emit_group_element(g)) == g
    assert parse_group_element({"field": {"kind": "Fp", "p": 2}, "matrix": [[1, 1], [0, 1]]}) == g
    with pytest.raises(SchemaError):
        parse_group_element({"field": {"kind": "Fp", "p": 2}, "matrix": [[1, 1], [1, 1]]})


def test_invalid_json_text():
    with pytest.raises(SchemaError):
        loads("{not json")


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'
