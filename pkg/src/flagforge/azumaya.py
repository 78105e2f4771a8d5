"""Right ideals of matrix algebras, annihilators and idempotent tuples.

Matrices of Mat_d are flattened row-major into F^(d*d), so an ideal is a
``Subspace`` of that space together with a closure check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .base import BaseSpace, Restriction
from .errors import InvalidIdempotents, NotAnIdeal
from .exactlin import (
    Field,
    Matrix,
    Subspace,
    flat_matmul,
    flat_transpose,
    identity_rows,
    nullspace_rows,
    orthogonal,
    rank_rows,
    span,
)
from .flags import ComponentFlag, GlobalLoweredFlag, TypeSection, TypeTuple

# ---------------------------------------------------------------------------
# ideals


def _unit_column_moves(F: Field, a: tuple, d: int):
    """a * E_kl for all k, l: column k of a moved to column l."""
    z = F.zero
    for k in range(d):
        col = [a[i * d + k] for i in range(d)]
        for l in range(d):
            out = [z] * (d * d)
            for i in range(d):
                out[i * d + l] = col[i]
            yield tuple(out)


def _unit_row_moves(F: Field, a: tuple, d: int):
    """E_kl * a for all k, l: row l of a moved to row k."""
    z = F.zero
    for l in range(d):
        row = a[l * d:(l + 1) * d]
        for k in range(d):
            out = [z] * (d * d)
            out[k * d:(k + 1) * d] = row
            yield tuple(out)


def is_right_ideal(carrier: Subspace, d: int) -> bool:
    F = carrier.field
    gens = [m for a in carrier.basis for m in _unit_column_moves(F, a, d)]
    return rank_rows(F, carrier.basis + tuple(gens), d * d) == carrier.dim


def is_left_ideal(carrier: Subspace, d: int) -> bool:
    F = carrier.field
    gens = [m for a in carrier.basis for m in _unit_row_moves(F, a, d)]
    return rank_rows(F, carrier.basis + tuple(gens), d * d) == carrier.dim


def _degree(carrier: Subspace) -> int:
    d = math.isqrt(carrier.ambient_dim)
    if d * d != carrier.ambient_dim:
        raise NotAnIdeal(f"ambient dimension {carrier.ambient_dim} is not a square")
    return d


@dataclass(frozen=True)
class RightIdeal:
    d: int
    carrier: Subspace

    def __post_init__(self):
        if self.carrier.ambient_dim != self.d * self.d:
            raise NotAnIdeal("carrier does not live in Mat_d")
        if not is_right_ideal(self.carrier, self.d):
            raise NotAnIdeal("subspace is not closed under right multiplication")
        if self.carrier.dim % self.d:
            raise NotAnIdeal(f"dimension {self.carrier.dim} is not divisible by {self.d}")

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self) -> Field:
        return self.carrier.field


@dataclass(frozen=True)
class LeftIdeal:
    d: int
    carrier: Subspace

    def __post_init__(self):
        if not is_left_ideal(self.carrier, self.d):
            raise NotAnIdeal("subspace is not closed under left multiplication")

    @property
    def dim(self) -> int:
        return self.carrier.dim


def matrix_span(F: Field, d: int, mats: Sequence[Matrix | tuple]) -> Subspace:
    flat = [m.flatten() if isinstance(m, Matrix) else tuple(m) for m in mats]
    return span(F, d * d, flat)


def ideal_from_submodule(v: Subspace) -> RightIdeal:
    """I_V: matrices whose columns all lie in V."""
    F, d = v.field, v.ambient_dim
    z = F.zero
    gens = []
    for b in v.basis:
        for j in range(d):
            m = [z] * (d * d)
            for i in range(d):
                m[i * d + j] = b[i]
            gens.append(tuple(m))
    return RightIdeal(d, span(F, d * d, gens))


def submodule_from_ideal(ideal: RightIdeal | Subspace) -> Subspace:
    """V_I: span of all columns of all matrices in I."""
    carrier = ideal.carrier if isinstance(ideal, RightIdeal) else ideal
    d = _degree(carrier)
    cols = [tuple(a[i * d + j] for i in range(d)) for a in carrier.basis for j in range(d)]
    return span(carrier.field, d, cols)


def left_annihilator_space(carrier: Subspace) -> Subspace:
    """{b : b a = 0 for all a in the carrier} by solving the linear system in b's entries."""
    F = carrier.field
    d = _degree(carrier)
    eqs = []
    z = F.zero
    for a in carrier.basis:
        for i in range(d):
            for j in range(d):
                row = [z] * (d * d)
                for k in range(d):
                    row[i * d + k] = a[k * d + j]
                eqs.append(tuple(row))
    if not eqs:
        return span(F, d * d, identity_rows(F, d * d))
    return span(F, d * d, nullspace_rows(F, tuple(eqs), d * d))


def right_annihilator_space(carrier: Subspace) -> Subspace:
    """{b : a b = 0 for all a}, via transposition."""
    return transpose_space(left_annihilator_space(transpose_space(carrier)))


def left_annihilator(ideal: RightIdeal) -> LeftIdeal:
    return LeftIdeal(ideal.d, left_annihilator_space(ideal.carrier))


def transpose_space(carrier: Subspace) -> Subspace:
    d = _degree(carrier)
    return span(carrier.field, d * d, [flat_transpose(a, d) for a in carrier.basis])


def transpose_left_ideal(ideal: LeftIdeal) -> RightIdeal:
    """Transposition turns left ideals into right ideals (the opposite algebra)."""
    return RightIdeal(ideal.d, transpose_space(ideal.carrier))


def dual_submodule(v: Subspace) -> Subspace:
    """V^perp for the standard dot product on F^d."""
    return orthogonal(v)


# ---------------------------------------------------------------------------
# ideal flags


def _ideal_component(c: ComponentFlag) -> ComponentFlag:
    d = c.ambient_dim
    return ComponentFlag(c.field, d * d, tuple(ideal_from_submodule(v).carrier for v in c.chain))


def flag_to_ideal_flag(f: GlobalLoweredFlag) -> GlobalLoweredFlag:
    """Componentwise V -> I_V; the result lives in F^(d*d)."""
    return GlobalLoweredFlag(f.base, tuple(_ideal_component(c) for c in f.components))


def ideal_flag_to_flag(f: GlobalLoweredFlag) -> GlobalLoweredFlag:
    comps = []
    d = _degree_of_flag(f)
    for c in f.components:
        chain = []
        for i, member in enumerate(c.chain):
            if not is_right_ideal(member, d):
                raise NotAnIdeal(f"member {i} is not a right ideal")
            chain.append(submodule_from_ideal(member))
        comps.append(ComponentFlag(c.field, d, tuple(chain)))
    return GlobalLoweredFlag(f.base, tuple(comps))


def _degree_of_flag(f: GlobalLoweredFlag) -> int:
    d = math.isqrt(f.ambient_dim)
    if d * d != f.ambient_dim:
        raise NotAnIdeal(f"ambient dimension {f.ambient_dim} is not a square")
    return d


def type_of_ideal_flag(f: GlobalLoweredFlag) -> TypeSection:
    d = _degree_of_flag(f)
    tuples = []
    for c in f.components:
        dims = []
        for v in c.chain:
            if v.dim % d:
                raise NotAnIdeal(f"ideal dimension {v.dim} is not divisible by {d}")
            dims.append(v.dim // d)
        tuples.append(TypeTuple(d - 1, tuple(dims)))
    return TypeSection(f.base, tuple(tuples))


def act_on_ideal_flag(gs: Sequence[Matrix] | Matrix, f: GlobalLoweredFlag) -> GlobalLoweredFlag:
    """Left multiplication g * I on every member."""
    d = _degree_of_flag(f)
    if isinstance(gs, Matrix):
        gs = [gs] * len(f.components)
    comps = []
    for g, c in zip(gs, f.components):
        gf = g.flatten()
        chain = tuple(span(c.field, d * d, [flat_matmul(c.field, gf, a, d) for a in v.basis]) for v in c.chain)
        comps.append(ComponentFlag(c.field, d * d, chain))
    return GlobalLoweredFlag(f.base, tuple(comps))


# ---------------------------------------------------------------------------
# idempotent tuples


@dataclass(frozen=True)
class IdempTuple:
    """Per-component idempotent lists, all padded with zeros to one global length."""

    base: BaseSpace
    es: tuple[tuple[Matrix, ...], ...]

    def __post_init__(self):
        es = tuple(tuple(c) for c in self.es)
        object.__setattr__(self, "es", es)
        if len(es) != len(self.base.components):
            raise InvalidIdempotents("one idempotent list per component is required")
        if len({len(c) for c in es}) > 1:
            raise InvalidIdempotents("idempotent lists must share one global length")

    @property
    def length(self) -> int:
        """Number of entries, i.e. l+1."""
        return len(self.es[0]) if self.es else 0

    @property
    def d(self) -> int:
        return self.es[0][0].nrows

    @property
    def field(self) -> Field:
        return self.es[0][0].field

    def component(self, name: str) -> tuple[Matrix, ...]:
        return self.es[self.base.index(name)]

    def component_length(self, name: str) -> int:
        return sum(1 for e in self.component(name) if not e.is_zero())


def idemp_problems(t: IdempTuple) -> list[str]:
    """Human-readable violations; empty means the tuple is valid and lowered."""
    probs = []
    if t.length == 0:
        return ["empty tuple"]
    for name, es in zip(t.base.components, t.es):
        d = es[0].nrows
        F = es[0].field
        one = Matrix.identity(F, d)
        total = Matrix.zeros(F, d, d)
        for i, e in enumerate(es):
            if e.shape != (d, d):
                probs.append(f"{name}: entry {i} is not {d}x{d}")
                return probs
            if e @ e != e:
                probs.append(f"{name}: e{i + 1} is not idempotent")
            for j, f in enumerate(es):
                if i != j and not (e @ f).is_zero():
                    probs.append(f"{name}: e{i + 1} e{j + 1} != 0")
            total = total + e
        if total != one:
            probs.append(f"{name}: idempotents do not sum to 1")
        seen_zero = False
        for i, e in enumerate(es):
            if e.is_zero():
                seen_zero = True
            elif seen_zero:
                probs.append(f"{name}: e{i + 1} is nonzero after a zero entry")
                break
    if all(es[-1].is_zero() for es in t.es):
        probs.append("last entry is zero on every component")
    return probs


def validate_idemp(t: IdempTuple) -> bool:
    return not idemp_problems(t)


def check_idemp(t: IdempTuple) -> IdempTuple:
    probs = idemp_problems(t)
    if probs:
        raise InvalidIdempotents("; ".join(probs))
    return t


def _strip_zero_tail(es_lists: Sequence[Sequence[Matrix]]) -> list[list[Matrix]]:
    lists = [list(c) for c in es_lists]
    while lists and len(lists[0]) > 1 and all(c[-1].is_zero() for c in lists):
        for c in lists:
            c.pop()
    return lists


def restrict_idemp(t: IdempTuple, r: Restriction) -> IdempTuple:
    if r.source != t.base:
        raise ValueError("restriction source is not the tuple's base")
    kept = [t.component(c) for c in r.kept]
    return IdempTuple(r.target, tuple(tuple(c) for c in _strip_zero_tail(kept)))


def glue_idemps(base: BaseSpace, pieces: Sequence[Sequence[Matrix]]) -> IdempTuple:
    """Pad each component's nonzero list with zeros to the longest length."""
    pieces = [[e for e in p if not e.is_zero()] for p in pieces]
    m = max(len(p) for p in pieces)
    out = []
    for p in pieces:
        F, d = p[0].field, p[0].nrows
        out.append(tuple(p) + (Matrix.zeros(F, d, d),) * (m - len(p)))
    return IdempTuple(base, tuple(out))


@dataclass(frozen=True)
class RaisedIdempTuple:
    base: BaseSpace
    es: tuple[tuple[Matrix, ...], ...]


def rho_idemp(t: IdempTuple) -> RaisedIdempTuple:
    """Slide each component's nonzero prefix to the end, zeros in front."""
    out = []
    for es in t.es:
        nz = tuple(e for e in es if not e.is_zero())
        zeros = tuple(e for e in es if e.is_zero())
        out.append(zeros + nz)
    return RaisedIdempTuple(t.base, tuple(out))


def lower_idemp(r: RaisedIdempTuple) -> IdempTuple:
    out = []
    for es in r.es:
        nz = tuple(e for e in es if not e.is_zero())
        zeros = tuple(e for e in es if e.is_zero())
        out.append(nz + zeros)
    return IdempTuple(r.base, tuple(out))


def principal_right_ideal(e: Matrix) -> Subspace:
    """e * Mat_d, spanned by e * E_kl."""
    d = e.nrows
    return span(e.field, d * d, list(_unit_column_moves(e.field, e.flatten(), d)))


def idemp_to_flag(t: IdempTuple) -> GlobalLoweredFlag:
    """Member k on a component is (e_1 + ... + e_k) Mat_d, for the proper partial sums."""
    comps = []
    for es in t.es:
        F, d = es[0].field, es[0].nrows
        nz = [e for e in es if not e.is_zero()]
        chain = []
        acc = Matrix.zeros(F, d, d)
        for e in nz[:-1]:
            acc = acc + e
            chain.append(principal_right_ideal(acc))
        comps.append(ComponentFlag(F, d * d, tuple(chain)))
    return GlobalLoweredFlag(t.base, tuple(comps))


def column_space(m: Matrix) -> Subspace:
    return span(m.field, m.nrows, m.transpose().rows)


def idemp_images(t: IdempTuple) -> tuple[tuple[Subspace, ...], ...]:
    """The direct-sum decomposition (Img e_1, ..., Img e_{l+1}) per component."""
    return tuple(tuple(column_space(e) for e in es) for es in t.es)


def projections(parts: Sequence[Subspace]) -> tuple[Matrix, ...]:
    """Projections onto each summand of F^d = (+) parts, killing the others."""
    F, d = parts[0].field, parts[0].ambient_dim
    cols = [b for p in parts for b in p.basis]
    if len(cols) != d or rank_rows(F, tuple(cols), d) != d:
        raise InvalidIdempotents("parts do not form a direct sum decomposition")
    basis = Matrix.of(F, cols).transpose()  # columns are the adapted basis
    binv = basis.inverse()
    out = []
    start = 0
    for p in parts:
        sel = [[F.one if (i == j and start <= i < start + p.dim) else F.zero for j in range(d)] for i in range(d)]
        out.append(basis @ Matrix.of(F, sel) @ binv)
        start += p.dim
    return tuple(out)


def flag_to_idemp(f: GlobalLoweredFlag) -> IdempTuple:
    """A lowered idempotent tuple whose image flag is f (greedy complements)."""
    from .exactlin import complement

    pieces = []
    for c in f.components:
        full = c.full()
        prev = c.zero()
        parts = []
        for v in c.chain + (full,):
            parts.append(complement(prev, v))
            prev = v
        pieces.append(projections(parts))
    return glue_idemps(f.base, pieces)


def coordinate_idempotent(F: Field, d: int, indices: Sequence[int]) -> Matrix:
    s = set(indices)
    return Matrix.of(F, [[F.one if (i == j and i in s) else F.zero for j in range(d)] for i in range(d)])


def ordered_set_partitions(items: Sequence[int]):
    items = list(items)
    if not items:
        yield []
        return
    from itertools import combinations

    n = len(items)
    for k in range(1, n + 1):
        for first in combinations(items, k):
            rest = [x for x in items if x not in first]
            for tail in ordered_set_partitions(rest):
                yield [list(first)] + tail


def coordinate_idemp_tuples(F: Field, d: int, base: BaseSpace | None = None) -> list[IdempTuple]:
    """All lowered tuples of diagonal 0/1 idempotents on one component."""
    base = base or BaseSpace(F, ("c0",))
    out = []
    for parts in ordered_set_partitions(range(d)):
        es = tuple(coordinate_idempotent(F, d, p) for p in parts)
        out.append(IdempTuple(base, (es,)))
    return out
