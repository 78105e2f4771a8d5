"""JSON parse/emit for every file format; emit(parse(x)) is canonical and stable.

Malformed input raises SchemaError carrying a JSON-pointer-like path.
"""

from __future__ import annotations

import json
from typing import Any, Callable

from .azumaya import IdempTuple
from .base import BaseSpace, DoubleCover, FieldComponent, Split
from .errors import FlagforgeError, SchemaError
from .exactlin import F4, Field, Matrix, Quadratic, Subspace, field_from_desc, quadratic_extension, span
from .flags import ComponentFlag, GlobalLoweredFlag, TypeSection
from .groups import GroupElement
from .hermitian import HermitianSpace, LFlag, OuterIdempTuple, OuterTypeSection, SplitPair


def _need(obj: Any, key: str, path: str, kind: type | tuple = object):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}/{key}", "missing")
    val = obj[key]
    if kind is not object and (not isinstance(val, kind) or (kind is int and isinstance(val, bool))):
        raise SchemaError(f"{path}/{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


def _guard(path: str, fn: Callable, *args):
    try:
        return fn(*args)
    except SchemaError:
        raise
    except (FlagforgeError, ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        raise SchemaError(path, str(e)) from None


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        raise SchemaError(path, "expected an array")
    return x


# ---------------------------------------------------------------------------
# fields, scalars, matrices


def parse_field(x: Any, path: str = "") -> Field:
    return _guard(path, field_from_desc, x)


def emit_field(F: Field) -> dict:
    return F.desc()


def parse_scalar(F: Field, x: Any, path: str):
    return _guard(path, F.decode, x)


def parse_rows(F: Field, x: Any, path: str, ncols: int | None = None) -> list[tuple]:
    rows = []
    for i, r in enumerate(_list(x, path)):
        r = _list(r, f"{path}/{i}")
        if ncols is not None and len(r) != ncols:
            raise SchemaError(f"{path}/{i}", f"expected {ncols} entries, got {len(r)}")
        rows.append(tuple(parse_scalar(F, a, f"{path}/{i}/{j}") for j, a in enumerate(r)))
    return rows


def parse_matrix(F: Field, x: Any, path: str, d: int | None = None) -> Matrix:
    rows = parse_rows(F, x, path, d)
    if d is not None and len(rows) != d:
        raise SchemaError(path, f"expected {d} rows, got {len(rows)}")
    if not rows:
        raise SchemaError(path, "empty matrix")
    return _guard(path, Matrix.of, F, rows)


def parse_subspace(F: Field, m: int, x: Any, path: str) -> Subspace:
    return _guard(path, span, F, m, parse_rows(F, x, path, m))


def parse_matrix_file(x: Any, path: str = "") -> Matrix:
    F = parse_field(_need(x, "field", path), f"{path}/field")
    return parse_matrix(F, _need(x, "matrix", path), f"{path}/matrix")


def emit_matrix_file(m: Matrix) -> dict:
    return {"field": emit_field(m.field), "matrix": m.encode()}


# ---------------------------------------------------------------------------
# base spaces and covers


def parse_base(x: Any, path: str = "") -> BaseSpace:
    F = parse_field(_need(x, "field", path), f"{path}/field")
    comps = _need(x, "components", path, list)
    for i, c in enumerate(comps):
        if not isinstance(c, str):
            raise SchemaError(f"{path}/components/{i}", "component names are strings")
    return _guard(f"{path}/components", BaseSpace, F, tuple(comps))


def emit_base(b: BaseSpace) -> dict:
    return {"field": emit_field(b.field), "components": list(b.components)}


def parse_cover(x: Any, path: str = "") -> DoubleCover:
    base = parse_base(_need(x, "base", path), f"{path}/base")
    entries = _need(x, "cover", path, list)
    tags: dict[str, Any] = {}
    for i, e in enumerate(entries):
        p = f"{path}/cover/{i}"
        name = _need(e, "component", p, str)
        tag = _need(e, "tag", p, str)
        if name not in base.components:
            raise SchemaError(f"{p}/component", f"unknown component {name!r}")
        if name in tags:
            raise SchemaError(f"{p}/component", f"duplicate component {name!r}")
        if tag == "split":
            tags[name] = Split()
        elif tag == "field":
            delta = e.get("delta")
            if delta is not None:
                delta = parse_scalar(base.field, delta, f"{p}/delta")
            tags[name] = FieldComponent(_guard(p, quadratic_extension, base.field, delta))
        else:
            raise SchemaError(f"{p}/tag", f"unknown tag {tag!r}")
    missing = [c for c in base.components if c not in tags]
    if missing:
        raise SchemaError(f"{path}/cover", f"no tag for {missing}")
    return _guard(path, DoubleCover, base, tuple(tags[c] for c in base.components))


def emit_cover(c: DoubleCover) -> dict:
    return {
        "base": emit_base(c.base),
        "cover": [{"component": name, **t.encode()} for name, t in c.items()],
    }


# ---------------------------------------------------------------------------
# flags


def _by_component(entries: list, base: BaseSpace, path: str, key: str) -> dict[str, tuple[int, Any]]:
    out: dict[str, tuple[int, Any]] = {}
    for i, e in enumerate(entries):
        name = _need(e, "component", f"{path}/{i}", str)
        if name not in base.components:
            raise SchemaError(f"{path}/{i}/component", f"unknown component {name!r}")
        if name in out:
            raise SchemaError(f"{path}/{i}/component", f"duplicate component {name!r}")
        out[name] = (i, _need(e, key, f"{path}/{i}"))
    missing = [c for c in base.components if c not in out]
    if missing:
        raise SchemaError(path, f"no entry for {missing}")
    return out


def parse_flag(x: Any, path: str = "") -> GlobalLoweredFlag:
    """{"base", "d", "flags": [{"component", "chain": [basis rows, ...]}]}; "kind": "ideal" uses d*d."""
    base = parse_base(_need(x, "base", path), f"{path}/base")
    d = _need(x, "d", path, int)
    kind = x.get("kind", "module")
    if kind not in ("module", "ideal"):
        raise SchemaError(f"{path}/kind", f"unknown kind {kind!r}")
    m = d if kind == "module" else d * d
    entries = _by_component(_need(x, "flags", path, list), base, f"{path}/flags", "chain")
    comps = []
    for name in base.components:
        i, chain = entries[name]
        p = f"{path}/flags/{i}/chain"
        members = tuple(parse_subspace(base.field, m, c, f"{p}/{j}") for j, c in enumerate(_list(chain, p)))
        comps.append(_guard(p, ComponentFlag, base.field, m, members))
    return _guard(path, GlobalLoweredFlag, base, tuple(comps))


def emit_flag(f: GlobalLoweredFlag, kind: str = "module", d: int | None = None) -> dict:
    if d is None:
        d = f.ambient_dim if kind == "module" else int(round(f.ambient_dim ** 0.5))
    out = {"base": emit_base(f.base), "d": d}
    if kind != "module":
        out["kind"] = kind
    out["flags"] = [{"component": n, "chain": [v.encode() for v in c.chain]} for n, c in zip(f.base.components, f.components)]
    return out


def parse_ideal(x: Any, path: str = "") -> Subspace:
    F = parse_field(_need(x, "field", path), f"{path}/field")
    d = _need(x, "d", path, int)
    return parse_subspace(F, d * d, _need(x, "basis", path), f"{path}/basis")


def emit_ideal(carrier: Subspace, d: int) -> dict:
    return {"field": emit_field(carrier.field), "d": d, "basis": carrier.encode()}


def emit_type_section(t: TypeSection | OuterTypeSection) -> dict:
    return {"types": t.as_lists()}


# ---------------------------------------------------------------------------
# idempotents


def parse_idemps(x: Any, path: str = "") -> IdempTuple:
    base = parse_base(_need(x, "base", path), f"{path}/base")
    d = _need(x, "d", path, int)
    entries = _by_component(_need(x, "idemps", path, list), base, f"{path}/idemps", "es")
    es = []
    for name in base.components:
        i, lst = entries[name]
        p = f"{path}/idemps/{i}/es"
        es.append(tuple(parse_matrix(base.field, m, f"{p}/{j}", d) for j, m in enumerate(_list(lst, p))))
    return _guard(path, IdempTuple, base, tuple(es))


def emit_idemps(t: IdempTuple | Any, base: BaseSpace | None = None) -> dict:
    base = base or t.base
    d = t.es[0][0].nrows
    return {
        "base": emit_base(base),
        "d": d,
        "idemps": [{"component": n, "es": [e.encode() for e in es]} for n, es in zip(base.components, t.es)],
    }


# ---------------------------------------------------------------------------
# hermitian spaces, L-flags, outer idempotents


def parse_hermitian(x: Any, path: str = "") -> HermitianSpace:
    cover = parse_cover(_need(x, "cover", path), f"{path}/cover")
    d = _need(x, "d", path, int)
    field_idx = [i for i, t in enumerate(cover.tags) if isinstance(t, FieldComponent)]
    grams_in = x.get("gram")
    if grams_in is None:
        grams_in = [None] * len(field_idx)
    grams_in = _list(grams_in, f"{path}/gram")
    if len(grams_in) != len(field_idx):
        raise SchemaError(f"{path}/gram", f"expected {len(field_idx)} Gram matrices, one per field component")
    grams: list = [None] * len(cover.tags)
    for k, i in enumerate(field_idx):
        ext = cover.tags[i].ext
        g = grams_in[k]
        grams[i] = Matrix.identity(ext, d) if g is None else parse_matrix(ext, g, f"{path}/gram/{k}", d)
    return _guard(path, HermitianSpace, cover, d, tuple(grams))


def emit_hermitian(s: HermitianSpace) -> dict:
    return {"cover": emit_cover(s.cover), "d": s.d, "gram": [g.encode() for g in s.grams if g is not None]}


def _parse_lsub(space: HermitianSpace, i: int, m: int, x: Any, path: str):
    F = space.carrier_field(i)
    if space.is_split(i):
        sheets = _need(x, "sheets", path, list)
        if len(sheets) != 2:
            raise SchemaError(f"{path}/sheets", "split members have two sheets")
        return SplitPair(
            parse_subspace(F, m, sheets[0], f"{path}/sheets/0"),
            parse_subspace(F, m, sheets[1], f"{path}/sheets/1"),
        )
    return parse_subspace(F, m, x, path)


def _emit_lsub(v) -> Any:
    if isinstance(v, SplitPair):
        return {"sheets": [v.first.encode(), v.second.encode()]}
    return v.encode()


def parse_lflag(x: Any, path: str = "") -> LFlag:
    """{"space": hermitian, "kind", "flags": [{"component", "chain": [member]}]}.

    A member is {"sheets": [rows, rows]} on split components, extension rows on field ones.
    """
    space = parse_hermitian(_need(x, "space", path), f"{path}/space")
    kind = x.get("kind", "module")
    if kind not in ("module", "ideal"):
        raise SchemaError(f"{path}/kind", f"unknown kind {kind!r}")
    m = space.d if kind == "module" else space.d * space.d
    entries = _by_component(_need(x, "flags", path, list), space.base, f"{path}/flags", "chain")
    chains = []
    for ci, name in enumerate(space.base.components):
        i, chain = entries[name]
        p = f"{path}/flags/{i}/chain"
        chains.append(tuple(_parse_lsub(space, ci, m, c, f"{p}/{j}") for j, c in enumerate(_list(chain, p))))
    return _guard(path, LFlag, space, tuple(chains), kind)


def emit_lflag(f: LFlag) -> dict:
    out = {"space": emit_hermitian(f.space)}
    if f.kind != "module":
        out["kind"] = f.kind
    out["flags"] = [
        {"component": n, "chain": [_emit_lsub(v) for v in chain]} for n, chain in zip(f.base.components, f.chains)
    ]
    return out


def parse_outer_idemps(x: Any, path: str = "") -> OuterIdempTuple:
    space = parse_hermitian(_need(x, "space", path), f"{path}/space")
    d = space.d
    entries = _by_component(_need(x, "idemps", path, list), space.base, f"{path}/idemps", "es")
    es = []
    for ci, name in enumerate(space.base.components):
        i, lst = entries[name]
        p = f"{path}/idemps/{i}/es"
        F = space.carrier_field(ci)
        row = []
        for j, e in enumerate(_list(lst, p)):
            if space.is_split(ci):
                e = _list(e, f"{p}/{j}")
                if len(e) != 2:
                    raise SchemaError(f"{p}/{j}", "split entries are pairs of matrices")
                row.append(tuple(parse_matrix(F, e[k], f"{p}/{j}/{k}", d).flatten() for k in range(2)))
            else:
                row.append(parse_matrix(F, e, f"{p}/{j}", d).flatten())
        es.append(tuple(row))
    return OuterIdempTuple(space, tuple(es))


def _unflatten(F: Field, flat: tuple, d: int) -> list:
    return [[F.encode(flat[r * d + c]) for c in range(d)] for r in range(d)]


def emit_outer_idemps(t: OuterIdempTuple) -> dict:
    s = t.space
    comps = []
    for ci, (name, es) in enumerate(zip(s.base.components, t.es)):
        F = s.carrier_field(ci)
        if s.is_split(ci):
            enc = [[_unflatten(F, e[0], s.d), _unflatten(F, e[1], s.d)] for e in es]
        else:
            enc = [_unflatten(F, e, s.d) for e in es]
        comps.append({"component": name, "es": enc})
    return {"space": emit_hermitian(s), "idemps": comps}


def parse_group_element(x: Any, path: str = "") -> GroupElement:
    """{"field", "mats": [matrix per component]} or {"field", "matrix"} for a single matrix."""
    F = parse_field(_need(x, "field", path), f"{path}/field")
    if "matrix" in x:
        return _guard(path, GroupElement, (parse_matrix(F, x["matrix"], f"{path}/matrix"),))
    mats = _need(x, "mats", path, list)
    return _guard(path, GroupElement, tuple(parse_matrix(F, m, f"{path}/mats/{i}") for i, m in enumerate(mats)))


def emit_group_element(g: GroupElement) -> dict:
    return {"field": emit_field(g.mats[0].field), "mats": [m.encode() for m in g.mats]}


# ---------------------------------------------------------------------------
# text helpers


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("", f"invalid JSON: {e}") from None


def load_file(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


__all__ = [n for n in dir() if n.startswith(("parse_", "emit_"))] + ["dumps", "loads", "load_file"]
