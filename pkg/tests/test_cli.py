import json

import pytest

from flagforge.cli import main
from flagforge.jsonio import dumps, emit_group_element, emit_idemps
from flagforge.azumaya import IdempTuple, coordinate_idempotent
from flagforge.base import BaseSpace
from flagforge.exactlin import GF, Matrix
from flagforge.groups import GroupElement


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_flag_type(capsys, fixtures):
    code, out, _ = run(capsys, "flag", "type", fixtures / "flag_f3.json")
    assert code == 0
    assert set(json.loads(out)["types"]) == {"U", "V"}


def test_flag_raise_restrict_glue(capsys, fixtures, tmp_path):
    code, out, _ = run(capsys, "flag", "raise", fixtures / "flag_f3.json")
    assert code == 0 and set(json.loads(out)) == {"base", "d", "raised"}
    code, out, _ = run(capsys, "flag", "restrict", fixtures / "flag_f3.json", "--keep", "V")
    assert code == 0
    restricted = json.loads(out)
    assert restricted["base"]["components"] == ["V"]
    code, out, err = run(capsys, "flag", "restrict", fixtures / "flag_f3.json", "--keep", "W")
    assert code == 2 and err.startswith("error:")


def test_json_output_file(capsys, fixtures, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "flag", "type", fixtures / "flag_f3.json", "--json", target)
    assert code == 0
    assert target.read_text() == out


def test_ideal_from_sub_and_ann(capsys, fixtures, tmp_path):
    code, out, _ = run(capsys, "ideal", "from-sub", fixtures / "flag_f3.json")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "ideal" and data["d"] == 3
    ideal = tmp_path / "i.json"
    ideal.write_text(json.dumps({"field": {"kind": "Fp", "p": 2}, "d": 2, "basis": [[1, 0, 0, 0], [0, 1, 0, 0]]}))
    code, out, _ = run(capsys, "ideal", "ann", ideal)
    assert code == 0
    # matrices with first column zero
    assert json.loads(out)["basis"] == [[0, 1, 0, 0], [0, 0, 0, 1]]


def test_idemp_commands(capsys, fixtures, tmp_path):
    code, out, _ = run(capsys, "idemp", "validate", fixtures / "idemps_f3.json")
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(capsys, "idemp", "to-flag", fixtures / "idemps_f3.json")
    assert code == 0 and json.loads(out)["kind"] == "ideal"
    F2 = GF(2)
    bad = IdempTuple(BaseSpace(F2, ("c0",)), ((coordinate_idempotent(F2, 2, [0]), coordinate_idempotent(F2, 2, [0])),))
    path = tmp_path / "bad.json"
    path.write_text(dumps(emit_idemps(bad)))
    code, out, _ = run(capsys, "idemp", "validate", path)
    assert code == 1
    assert json.loads(out)["problems"]


def test_herm_commands(capsys, fixtures):
    f = fixtures / "mixed_lflag.json"
    code, out, _ = run(capsys, "herm", "type", f)
    data = json.loads(out)
    assert code == 0 and data["symmetric"] and data["equivariant"]
    code, out, _ = run(capsys, "herm", "pih", f)
    data = json.loads(out)
    assert data.pop("symmetric") is True
    assert data == json.loads(f.read_text())
    for cmd in ("perp", "gap", "to-ideal"):
        code, _, err = run(capsys, "herm", cmd, f)
        assert code == 0, err


def test_herm_ideal_pipeline(capsys, fixtures, tmp_path):
    code, out, _ = run(capsys, "herm", "from-inner", fixtures / "flag_f3.json")
    assert code == 0
    outer = tmp_path / "outer.json"
    outer.write_text(out)
    code, out, _ = run(capsys, "herm", "to-ideal", outer)
    ideal = tmp_path / "ideal.json"
    ideal.write_text(out)
    code, out, _ = run(capsys, "herm", "op", ideal)
    assert code == 0
    code, out, _ = run(capsys, "herm", "sb-fiber", ideal, "--sheet", "any")
    data = json.loads(out)
    # U sits in the (1)/(2) orbit, but V carries a complete flag
    assert code == 0 and data["selected"] is False
    assert data["types"]["U"] == [[2], [1]]


def test_group_commands(capsys, tmp_path):
    F2 = GF(2)
    t = IdempTuple(BaseSpace(F2, ("c0",)), ((coordinate_idempotent(F2, 2, [0]), coordinate_idempotent(F2, 2, [1])),))
    ip = tmp_path / "t.json"
    ip.write_text(dumps(emit_idemps(t)))
    upper = tmp_path / "u.json"
    upper.write_text(dumps(emit_group_element(GroupElement((Matrix.from_ints(F2, [[1, 1], [0, 1]]),)))))
    lower = tmp_path / "l.json"
    lower.write_text(dumps(emit_group_element(GroupElement((Matrix.from_ints(F2, [[1, 0], [1, 1]]),)))))
    code, out, _ = run(capsys, "group", "limit", "--idemps", ip, "--g", upper)
    up = json.loads(out)
    code, out, _ = run(capsys, "group", "limit", "--idemps", ip, "--g", lower)
    low = json.loads(out)
    assert up != low
    code, out, _ = run(capsys, "group", "levi", "--idemps", ip, "--g", upper)
    assert code == 0
    code, out, _ = run(capsys, "group", "standard", "--partition", "2,2")
    assert json.loads(out)["type"] == [1, 3]


def test_verify_single_suite(capsys, tmp_path):
    target = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify", "--suite", "type-complement", "--json", target)
    assert code == 0
    assert out.startswith("PASS type-complement")
    data = json.loads(target.read_text())
    assert data["failed"] == 0


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and "nope" in err


def test_config_file(capsys, tmp_path, fixtures):
    cfg = tmp_path / "flagforge.toml"
    cfg.write_text('default_field = "f3"\nseed = 11\n')
    code, _, _ = run(capsys, "flag", "type", fixtures / "flag_f3.json", "--config", cfg)
    assert code == 0
    cfg.write_text('colour = "blue"\n')
    code, _, err = run(capsys, "flag", "type", fixtures / "flag_f3.json", "--config", cfg)
    assert code == 2 and "unknown keys" in err


def test_schema_error_exit(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"base": {"field": {"kind": "Q"}, "components": ["a"]}, "d": 2, "flags": [{"component": "a", "chain": [[["1", "3/0"]]]}]}')
    code, _, err = run(capsys, "flag", "type", p)
    assert code == 2 and "/flags/0/chain/0/0/1" in err


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main(["flag"])
