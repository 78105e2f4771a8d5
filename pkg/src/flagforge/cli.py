"""Command-line entry point.  Every command is a thin wrapper over the library."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Sequence

from . import jsonio
from .azumaya import (
    flag_to_ideal_flag,
    idemp_problems,
    idemp_to_flag,
    left_annihilator_space,
    rho_idemp,
)
from .base import BaseSpace, Restriction
from .errors import FlagforgeError
from .exactlin import GF, QQ, Field
from .flags import ComponentFlag, GlobalLoweredFlag, glue_flags, raise_flag, restrict_flag, type_of_flag
from .groups import (
    BlockPartition,
    ParabolicHandle,
    in_levi,
    in_limit_parabolic,
    stabilizes,
    standard_parabolic,
    type_of_parabolic,
)
from .hermitian import (
    LFlag,
    gap_L,
    inner_to_outer_flag,
    is_symmetric_flag,
    is_symmetric_ideal_flag,
    lsub_full,
    lsub_zero,
    opposite_iso,
    outer_ideal_iso,
    outer_type,
    perp,
    pi_B,
    pi_h,
    sb_fiber,
    subrank_L,
    tau_ann,
)
from .suites import SUITES, run_suite

FIELDS = {"q": QQ, "f2": GF(2), "f3": GF(3)}
EXIT_CAP = 100
DEFAULTS = {"default_field": "f2", "default_d": None, "seed": 7}


def load_config(path: str | None) -> dict:
    """Read flagforge.toml (explicit path, or the working directory when present)."""
    cfg = dict(DEFAULTS)
    if path is None:
        if not os.path.exists("flagforge.toml"):
            return cfg
        path = "flagforge.toml"
    try:
        import tomllib  # type: ignore[import-not-found]
    except ModuleNotFoundError:  # Python < 3.11
        import tomli as tomllib
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    data = data.get("flagforge", data)
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise FlagforgeError(f"{path}: unknown keys {sorted(unknown)}")
    cfg.update(data)
    return cfg


# ---------------------------------------------------------------------------
# helpers


def _read(path: str) -> Any:
    return jsonio.load_file(path)


def _raised_json(base: BaseSpace, d: int, chains, kind: str = "module") -> dict:
    out = {"base": jsonio.emit_base(base), "d": d}
    if kind != "module":
        out["kind"] = kind
    out["raised"] = [{"component": n, "chain": [v.encode() for v in c]} for n, c in zip(base.components, chains)]
    return out


def _lsub_json(v):
    return jsonio._emit_lsub(v)


# ---------------------------------------------------------------------------
# flag


def cmd_flag_type(a) -> dict:
    return jsonio.emit_type_section(type_of_flag(jsonio.parse_flag(_read(a.file))))


def cmd_flag_glue(a) -> dict:
    comps: list[ComponentFlag] = []
    names: list[str] = []
    field = None
    d = None
    for path in a.files:
        f = jsonio.parse_flag(_read(path))
        if field is not None and (f.field != field or f.ambient_dim != d):
            raise FlagforgeError(f"{path}: field or rank differs from the other pieces")
        field, d = f.field, f.ambient_dim
        names.extend(f.base.components)
        comps.extend(f.components)
    g = glue_flags(BaseSpace(field, tuple(names)), comps)
    return jsonio.emit_flag(g)


def cmd_flag_raise(a) -> dict:
    f = jsonio.parse_flag(_read(a.file))
    r = raise_flag(f)
    return _raised_json(f.base, f.ambient_dim, r.chains)


def cmd_flag_restrict(a) -> dict:
    f = jsonio.parse_flag(_read(a.file))
    kept = tuple(c.strip() for c in a.keep.split(",") if c.strip())
    return jsonio.emit_flag(restrict_flag(f, Restriction(f.base, kept)))


# ---------------------------------------------------------------------------
# ideal / idemp


def cmd_ideal_from_sub(a) -> dict:
    f = jsonio.parse_flag(_read(a.file))
    return jsonio.emit_flag(flag_to_ideal_flag(f), "ideal", f.ambient_dim)


def cmd_ideal_ann(a) -> dict:
    raw = _read(a.file)
    carrier = jsonio.parse_ideal(raw)
    d = raw["d"]
    ann = left_annihilator_space(carrier)
    out = jsonio.emit_ideal(ann, d)
    out["side"] = "left"
    return out


def cmd_idemp_validate(a) -> dict:
    t = jsonio.parse_idemps(_read(a.file))
    probs = idemp_problems(t)
    return {"valid": not probs, "problems": probs}


def cmd_idemp_to_flag(a) -> dict:
    t = jsonio.parse_idemps(_read(a.file))
    return jsonio.emit_flag(idemp_to_flag(t), "ideal", t.d)


def cmd_idemp_raise(a) -> dict:
    t = jsonio.parse_idemps(_read(a.file))
    r = rho_idemp(t)
    return {
        "base": jsonio.emit_base(t.base),
        "d": t.d,
        "raised": [{"component": n, "es": [e.encode() for e in es]} for n, es in zip(t.base.components, r.es)],
    }


# ---------------------------------------------------------------------------
# herm


def _lflag(a) -> LFlag:
    return jsonio.parse_lflag(_read(a.file))


def cmd_herm_perp(a) -> dict:
    f = _lflag(a)
    if f.kind == "module":
        op = perp
    else:
        op = tau_ann
    return {
        "kind": f.kind,
        "perps": [
            {"component": n, "chain": [_lsub_json(op(f.space, i, v)) for v in chain]}
            for i, (n, chain) in enumerate(zip(f.base.components, f.chains))
        ],
    }


def cmd_herm_gap(a) -> dict:
    f = _lflag(a)
    out = []
    for i, (n, chain) in enumerate(zip(f.base.components, f.chains)):
        members = [lsub_zero(f.space, i, f.ambient)] + list(chain) + [lsub_full(f.space, i, f.ambient)]
        out.append(
            {
                "component": n,
                "gaps": [gap_L(v, w) for v, w in zip(members, members[1:])],
                "subranks": [subrank_L(v) for v in chain],
            }
        )
    return {"kind": f.kind, "components": out}


def cmd_herm_pih(a) -> dict:
    f = _lflag(a)
    g = pi_h(f) if f.kind == "module" else pi_B(f)
    out = jsonio.emit_lflag(g)
    out["symmetric"] = g == f
    return out


def cmd_herm_type(a) -> dict:
    f = _lflag(a)
    symmetric = is_symmetric_flag(f) if f.kind == "module" else is_symmetric_ideal_flag(f)
    t = outer_type(f)
    return {"types": t.as_lists(), "symmetric": symmetric, "equivariant": t.is_equivariant()}


def cmd_herm_op(a) -> dict:
    return jsonio.emit_lflag(opposite_iso(_lflag(a)))


def cmd_herm_sb_fiber(a) -> dict:
    f = _lflag(a)
    sheet = None if a.sheet == "any" else int(a.sheet)
    return {"selected": sb_fiber(f, sheet), "types": outer_type(f).as_lists()}


def cmd_herm_from_inner(a) -> dict:
    return jsonio.emit_lflag(inner_to_outer_flag(jsonio.parse_flag(_read(a.file))))


def cmd_herm_to_ideal(a) -> dict:
    return jsonio.emit_lflag(outer_ideal_iso(_lflag(a)))


# ---------------------------------------------------------------------------
# group


def cmd_group_limit(a) -> dict:
    t = jsonio.parse_idemps(_read(a.idemps))
    g = jsonio.parse_group_element(_read(a.g))
    return {"in_limit_parabolic": in_limit_parabolic(g, t), "in_levi": in_levi(g, t)}


def cmd_group_levi(a) -> dict:
    t = jsonio.parse_idemps(_read(a.idemps))
    g = jsonio.parse_group_element(_read(a.g))
    return {"in_levi": in_levi(g, t)}


def _any_flag(raw: Any):
    if isinstance(raw, dict) and "space" in raw:
        return jsonio.parse_lflag(raw)
    return jsonio.parse_flag(raw)


def cmd_group_stab(a) -> dict:
    f = _any_flag(_read(a.flag))
    g = jsonio.parse_group_element(_read(a.g))
    return {"stabilizes": stabilizes(g, f)}


def cmd_group_standard(a) -> dict:
    try:
        parts = tuple(int(x) for x in a.partition.split(","))
    except ValueError:
        raise FlagforgeError(f"bad partition {a.partition!r}") from None
    handle, pattern = standard_parabolic(BlockPartition(parts), _field(a))
    return {
        "partition": list(parts),
        "flag": jsonio.emit_flag(handle.flag),
        "pattern": [[int(x) for x in row] for row in pattern],
        "type": list(type_of_parabolic(handle).tuples[0].entries),
    }


def cmd_group_type(a) -> dict:
    raw = _read(a.flag)
    f = jsonio.parse_flag(raw)
    return jsonio.emit_type_section(type_of_parabolic(ParabolicHandle(f, raw.get("kind", "module"))))


# ---------------------------------------------------------------------------
# verify


def cmd_verify(a) -> tuple[dict, int]:
    names = list(SUITES) if a.suite == "all" else [a.suite]
    reports = []
    for name in names:
        rep = run_suite(name, field=_field(a), d=a.d, seed=a.seed, trials=a.trials)
        print(rep.summary(), file=sys.stderr if a.quiet else sys.stdout)
        reports.append(rep)
    failed = sum(1 for r in reports if not r.passed)
    return {"reports": [r.to_dict() for r in reports], "failed": failed}, min(failed, EXIT_CAP)


# ---------------------------------------------------------------------------
# parser


def _field(a) -> Field:
    return FIELDS[a.field]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=sorted(FIELDS), default=argparse.SUPPRESS, help="field for generated data")
    common.add_argument("--d", type=int, default=argparse.SUPPRESS, help="rank d")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled suites")
    common.add_argument("--json", metavar="OUT", default=argparse.SUPPRESS, help="also write the JSON result here")
    common.add_argument("--config", default=argparse.SUPPRESS, help="path to flagforge.toml")

    p = argparse.ArgumentParser(prog="flagforge", description="Lowered flags, idempotents and limit subgroups.", parents=[common])
    top = p.add_subparsers(dest="group", required=True)

    def leaf(sub, name, fn, help_):
        q = sub.add_parser(name, parents=[common], help=help_)
        q.set_defaults(fn=fn)
        return q

    g = top.add_parser("flag", help="lowered flags").add_subparsers(dest="cmd", required=True)
    leaf(g, "type", cmd_flag_type, "type section of a flag").add_argument("file")
    leaf(g, "glue", cmd_flag_glue, "glue per-component flags").add_argument("files", nargs="+")
    leaf(g, "raise", cmd_flag_raise, "raised form").add_argument("file")
    q = leaf(g, "restrict", cmd_flag_restrict, "restrict to components")
    q.add_argument("file")
    q.add_argument("--keep", required=True, help="comma-separated component names")

    g = top.add_parser("ideal", help="right ideals").add_subparsers(dest="cmd", required=True)
    leaf(g, "from-sub", cmd_ideal_from_sub, "submodule flag to ideal flag").add_argument("file")
    leaf(g, "ann", cmd_ideal_ann, "left annihilator of an ideal").add_argument("file")

    g = top.add_parser("idemp", help="idempotent tuples").add_subparsers(dest="cmd", required=True)
    leaf(g, "validate", cmd_idemp_validate, "check the tuple axioms").add_argument("file")
    leaf(g, "to-flag", cmd_idemp_to_flag, "partial-sum ideal flag").add_argument("file")
    leaf(g, "raise", cmd_idemp_raise, "raised tuple").add_argument("file")

    g = top.add_parser("herm", help="hermitian and outer flags").add_subparsers(dest="cmd", required=True)
    leaf(g, "perp", cmd_herm_perp, "perpendicular (or tau-annihilator) of each member").add_argument("file")
    leaf(g, "gap", cmd_herm_gap, "L-gaps and L-subranks").add_argument("file")
    leaf(g, "pih", cmd_herm_pih, "apply pi_h (modules) or pi_B (ideals)").add_argument("file")
    leaf(g, "type", cmd_herm_type, "outer type section").add_argument("file")
    leaf(g, "op", cmd_herm_op, "image in the opposite algebra").add_argument("file")
    q = leaf(g, "sb-fiber", cmd_herm_sb_fiber, "Severi-Brauer fiber test")
    q.add_argument("file")
    q.add_argument("--sheet", choices=["0", "1", "any"], default="0")
    leaf(g, "from-inner", cmd_herm_from_inner, "inner flag to symmetric flag (split cover)").add_argument("file")
    leaf(g, "to-ideal", cmd_herm_to_ideal, "V -> I_(L,V)").add_argument("file")

    g = top.add_parser("group", help="parabolics and limit subgroups").add_subparsers(dest="cmd", required=True)
    for name, fn in (("limit", cmd_group_limit), ("levi", cmd_group_levi)):
        q = leaf(g, name, fn, f"{name} membership")
        q.add_argument("--idemps", required=True)
        q.add_argument("--g", required=True)
    q = leaf(g, "stab", cmd_group_stab, "does g stabilize the flag")
    q.add_argument("--flag", required=True)
    q.add_argument("--g", required=True)
    leaf(g, "standard", cmd_group_standard, "standard parabolic of a block partition").add_argument("--partition", required=True)
    leaf(g, "type", cmd_group_type, "type of the stabilizer of a flag").add_argument("--flag", required=True)

    q = top.add_parser("verify", parents=[common], help="run verification suites")
    q.set_defaults(fn=cmd_verify)
    q.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or all")
    q.add_argument("--trials", type=int, default=500)
    q.add_argument("--quiet", action="store_true", help="summaries to stderr")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        cfg = load_config(getattr(a, "config", None))
        if not hasattr(a, "field"):
            a.field = cfg["default_field"]
        if a.field not in FIELDS:
            raise FlagforgeError(f"unknown field {a.field!r}; use one of {sorted(FIELDS)}")
        if not hasattr(a, "d"):
            a.d = cfg["default_d"]
        if not hasattr(a, "seed"):
            a.seed = cfg["seed"]
        result = a.fn(a)
    except (FlagforgeError, KeyError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(result, tuple):
        result, code = result
    text = jsonio.dumps(result)
    out = getattr(a, "json", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if a.fn is not cmd_verify:
        sys.stdout.write(text)
    if a.fn is cmd_idemp_validate and not result["valid"]:
        code = 1
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
