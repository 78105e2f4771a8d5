"""Finite-component base spaces and degree-2 covers.

A base space is an ordered list of named components sharing one field.  A
double cover tags each component as split (two sheets exchanged by the
swap) or as a field component carrying a quadratic extension whose
conjugation plays the role of the swap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .errors import DimensionMismatch, EmptyRestriction, FieldMismatch
from .exactlin import F4, Field, Matrix, Quadratic, quadratic_extension


@dataclass(frozen=True)
class BaseSpace:
    field: Field
    components: tuple[str, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a base space needs at least one component")
        if len(set(comps)) != len(comps):
            raise ValueError(f"duplicate component names in {comps}")

    @classmethod
    def standard(cls, field: Field, n: int) -> "BaseSpace":
        return cls(field, tuple(f"c{i}" for i in range(n)))

    def index(self, component: str) -> int:
        try:
            return self.components.index(component)
        except ValueError:
            raise KeyError(f"unknown component {component!r}") from None

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class Restriction:
    source: BaseSpace
    kept: tuple[str, ...]

    def __post_init__(self):
        kept = tuple(self.kept)
        if not kept:
            raise EmptyRestriction("restriction keeps no components")
        unknown = [c for c in kept if c not in self.source.components]
        if unknown:
            raise KeyError(f"components {unknown} are not in the source")
        # keep source order
        object.__setattr__(self, "kept", tuple(c for c in self.source.components if c in kept))

    @property
    def target(self) -> BaseSpace:
        return BaseSpace(self.source.field, self.kept)

    def then(self, other: "Restriction") -> "Restriction":
        """Restrict further along ``other`` whose source is this target."""
        if other.source != self.target:
            raise ValueError("restrictions do not compose")
        return Restriction(self.source, other.kept)


def restriction(base: BaseSpace, kept: Sequence[str]) -> Restriction:
    return Restriction(base, tuple(kept))


@dataclass(frozen=True)
class Split:
    """Two copies of the component, exchanged by the swap."""

    def encode(self) -> dict:
        return {"tag": "split"}


@dataclass(frozen=True)
class FieldComponent:
    """One sheet carrying a quadratic extension with conjugation."""

    ext: Field

    def encode(self) -> dict:
        out: dict[str, Any] = {"tag": "field"}
        if isinstance(self.ext, Quadratic):
            out["delta"] = self.ext.base.encode(self.ext.delta)
        return out


CoverTag = Split | FieldComponent


@dataclass(frozen=True)
class DoubleCover:
    base: BaseSpace
    tags: tuple[CoverTag, ...]

    def __post_init__(self):
        tags = tuple(self.tags)
        object.__setattr__(self, "tags", tags)
        if len(tags) != len(self.base.components):
            raise ValueError("one tag per base component is required")
        for t in tags:
            if isinstance(t, FieldComponent):
                if not t.ext.is_extension or t.ext.base_field() != self.base.field:
                    raise FieldMismatch(f"{t.ext} is not a quadratic extension of {self.base.field}")

    @classmethod
    def all_split(cls, base: BaseSpace) -> "DoubleCover":
        return cls(base, tuple(Split() for _ in base.components))

    @classmethod
    def all_field(cls, base: BaseSpace, delta: Any = None) -> "DoubleCover":
        ext = quadratic_extension(base.field, delta)
        return cls(base, tuple(FieldComponent(ext) for _ in base.components))

    def tag(self, component: str) -> CoverTag:
        return self.tags[self.base.index(component)]

    def is_split(self, component: str) -> bool:
        return isinstance(self.tag(component), Split)

    def items(self):
        return zip(self.base.components, self.tags)


@dataclass(frozen=True)
class SheetPermutation:
    """Per component: the permutation of sheet indices and a conjugation flag."""

    perms: tuple[tuple[int, ...], ...]
    conjugates: tuple[bool, ...]

    def compose(self, other: "SheetPermutation") -> "SheetPermutation":
        perms = tuple(tuple(p[q[i]] for i in range(len(q))) for p, q in zip(self.perms, other.perms))
        conj = tuple(a != b for a, b in zip(self.conjugates, other.conjugates))
        return SheetPermutation(perms, conj)

    def is_identity(self) -> bool:
        return all(p == tuple(range(len(p))) for p in self.perms) and not any(self.conjugates)


def swap(cover: DoubleCover) -> SheetPermutation:
    perms, conj = [], []
    for t in cover.tags:
        if isinstance(t, Split):
            perms.append((1, 0))
            conj.append(False)
        else:
            perms.append((0,))
            conj.append(True)
    return SheetPermutation(tuple(perms), tuple(conj))


def restrict_cover(cover: DoubleCover, r: Restriction) -> DoubleCover:
    if r.source != cover.base:
        raise ValueError("restriction source is not the cover's base")
    return DoubleCover(r.target, tuple(cover.tag(c) for c in r.kept))


def sheets(cover: DoubleCover, component: str) -> int:
    return 2 if cover.is_split(component) else 1


def ext_action_matrix(ext: Field, c) -> Matrix:
    """Matrix over the base field of multiplication by ``c`` on ext = base^2.

    Coordinates are (a, b) for a + b*w where w is sqrt(delta) or the F4 generator.
    """
    B = ext.base_field()
    one = ext.embed(B.one)
    w = ext.sqrt_delta() if isinstance(ext, Quadratic) else ext.generator()
    c1 = ext.mul(c, one)
    cw = ext.mul(c, w)
    return Matrix.of(B, [[c1[0], cw[0]], [c1[1], cw[1]]])


def realify(ext: Field, v: Sequence) -> tuple:
    """ext^d as a 2d-dimensional base space: (a_1, b_1, ..., a_d, b_d)."""
    return tuple(x for a in v for x in a)


def scalar_action_matrix(cover: DoubleCover, component: str, c, d: int) -> Matrix:
    """Base-field matrix of the L-scalar ``c`` on the rank-d module over a field component."""
    t = cover.tag(component)
    if isinstance(t, Split):
        raise ValueError("split components act sheetwise; use l_scalar_action")
    block = ext_action_matrix(t.ext, c)
    B = t.ext.base_field()
    rows = [[B.zero] * (2 * d) for _ in range(2 * d)]
    for k in range(d):
        for i in range(2):
            for j in range(2):
                rows[2 * k + i][2 * k + j] = block[i, j]
    return Matrix.of(B, rows)


def l_scalar_action(cover: DoubleCover, component: str, sheet: int, c, v: Sequence) -> tuple:
    """Multiply ``v`` by the L-scalar ``c``.

    On a split component ``c`` is a pair (c0, c1) and sheet ``s`` sees ``c[s]``.
    On a field component ``c`` is an extension element and ``v`` lies in ext^d.
    """
    t = cover.tag(component)
    if isinstance(t, Split):
        if sheet not in (0, 1):
            raise IndexError(f"split components have sheets 0 and 1, not {sheet}")
        F = cover.base.field
        s = c[sheet]
        return tuple(F.mul(s, x) for x in v)
    if sheet != 0:
        raise IndexError("field components have a single sheet")
    ext = t.ext
    try:
        return tuple(ext.mul(c, x) for x in v)
    except (TypeError, IndexError):
        raise FieldMismatch(f"scalar {c!r} is not in {ext}") from None


@dataclass(frozen=True)
class LModuleShape:
    """Rank-d L-module: a pair of F^d on split components, ext^d on field components."""

    cover: DoubleCover
    d: int

    def base_rank(self, component: str) -> int:
        return 2 * self.d

    def carrier_field(self, component: str) -> Field:
        t = self.cover.tag(component)
        return self.cover.base.field if isinstance(t, Split) else t.ext


def check_dim(v: Sequence, d: int):
    if len(v) != d:
        raise DimensionMismatch(f"expected length {d}, got {len(v)}")


__all__ = [
    "BaseSpace",
    "Restriction",
    "restriction",
    "Split",
    "FieldComponent",
    "DoubleCover",
    "SheetPermutation",
    "swap",
    "restrict_cover",
    "sheets",
    "ext_action_matrix",
    "realify",
    "scalar_action_matrix",
    "l_scalar_action",
    "LModuleShape",
    "F4",
]
