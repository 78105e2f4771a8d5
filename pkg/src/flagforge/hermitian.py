"""Hermitian forms over double covers and the outer (symmetric) flag theory.

An L-submodule of the rank-d module is, per component:

* split: a ``SplitPair`` (first, second) of subspaces of F^m, one per sheet;
* field: an extension-linear ``Subspace`` of ext^m.

Here m = d for submodules and m = d*d for right ideals of the endomorphism
algebra.  The split form is h((x, y), (z, w)) = (y.z, w.x); on a field
component it is h(x, y) = conj(x)^t H y for a hermitian Gram matrix H.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .azumaya import (
    is_right_ideal,
    left_annihilator_space,
    principal_right_ideal,
    transpose_space,
)
from .base import BaseSpace, DoubleCover, FieldComponent, Restriction, Split, restrict_cover
from .errors import ContainmentError, DimensionMismatch, InvalidFlag, InvalidIdempotents, NotAnIdeal, UnsupportedCover
from .exactlin import (
    Field,
    Matrix,
    Subspace,
    all_subspaces,
    complement,
    contains,
    flat_matmul,
    flat_transpose,
    full_space,
    identity_rows,
    orthogonal,
    rank_rows,
    span,
    sum_,
    zero_space,
)
from .flags import (
    ComponentFlag,
    GlobalLoweredFlag,
    TypeTuple,
    raise_flag,
    random_component_flag,
    vee,
)


@dataclass(frozen=True)
class SplitPair:
    first: Subspace
    second: Subspace

    def factors(self) -> tuple[Subspace, Subspace]:
        return (self.first, self.second)

    def swapped(self) -> "SplitPair":
        return SplitPair(self.second, self.first)


LSub = Union[SplitPair, Subspace]


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class HermitianSpace:
    """Rank-d hermitian module over a double cover; ``grams`` is None on split components."""

    cover: DoubleCover
    d: int
    grams: tuple[Matrix | None, ...]

    def __post_init__(self):
        grams = tuple(self.grams)
        object.__setattr__(self, "grams", grams)
        if len(grams) != len(self.cover.tags):
            raise ValueError("one Gram entry per component is required")
        for name, tag, H in zip(self.cover.base.components, self.cover.tags, grams):
            if isinstance(tag, Split):
                if H is not None:
                    raise ValueError(f"{name}: split components use the standard pairing")
                continue
            if H is None or H.field != tag.ext or H.shape != (self.d, self.d):
                raise ValueError(f"{name}: needs a {self.d}x{self.d} Gram matrix over {tag.ext}")
            if H.conjugate().transpose() != H:
                raise ValueError(f"{name}: Gram matrix is not hermitian")
            if not H.is_invertible():
                raise ValueError(f"{name}: Gram matrix is singular")

    @classmethod
    def standard(cls, cover: DoubleCover, d: int) -> "HermitianSpace":
        grams = []
        for t in cover.tags:
            grams.append(None if isinstance(t, Split) else Matrix.identity(t.ext, d))
        return cls(cover, d, tuple(grams))

    @property
    def base(self) -> BaseSpace:
        return self.cover.base

    def is_split(self, component: str | int) -> bool:
        i = component if isinstance(component, int) else self.base.index(component)
        return isinstance(self.cover.tags[i], Split)

    def carrier_field(self, i: int) -> Field:
        t = self.cover.tags[i]
        return self.base.field if isinstance(t, Split) else t.ext

    def gram(self, i: int) -> Matrix | None:
        return self.grams[i]

    def restrict(self, r: Restriction) -> "HermitianSpace":
        idx = [self.base.index(c) for c in r.kept]
        return HermitianSpace(restrict_cover(self.cover, r), self.d, tuple(self.grams[i] for i in idx))


def _idx(space: HermitianSpace, component: str | int) -> int:
    return component if isinstance(component, int) else space.base.index(component)


# ---------------------------------------------------------------------------
# L-submodule primitives (m is the ambient size: d for modules, d*d for ideals)


def lsub_zero(space: HermitianSpace, i: int, m: int) -> LSub:
    F = space.carrier_field(i)
    z = zero_space(F, m)
    return SplitPair(z, z) if space.is_split(i) else z


def lsub_full(space: HermitianSpace, i: int, m: int) -> LSub:
    F = space.carrier_field(i)
    f = full_space(F, m)
    return SplitPair(f, f) if space.is_split(i) else f


def lsub_contains(a: LSub, b: LSub) -> bool:
    """b inside a."""
    if isinstance(a, SplitPair):
        return contains(a.first, b.first) and contains(a.second, b.second)
    return contains(a, b)


def lsub_sum(a: LSub, b: LSub) -> LSub:
    if isinstance(a, SplitPair):
        return SplitPair(sum_(a.first, b.first), sum_(a.second, b.second))
    return sum_(a, b)


def lsub_is_zero(a: LSub) -> bool:
    if isinstance(a, SplitPair):
        return a.first.is_zero() and a.second.is_zero()
    return a.is_zero()


def lsub_is_full(a: LSub) -> bool:
    if isinstance(a, SplitPair):
        return a.first.is_full() and a.second.is_full()
    return a.is_full()


def base_rank(a: LSub) -> int:
    """Rank over the base field: a field component counts each ext-dimension twice."""
    if isinstance(a, SplitPair):
        return a.first.dim + a.second.dim
    return 2 * a.dim


def ext_dims(a: LSub) -> tuple[int, ...]:
    if isinstance(a, SplitPair):
        return (a.first.dim, a.second.dim)
    return (a.dim,)


def gap_L(v: LSub, w: LSub) -> int:
    """Smallest per-factor dimension jump of v inside w."""
    if not lsub_contains(w, v):
        raise ContainmentError("gap needs v inside w")
    if isinstance(v, SplitPair):
        return min(w.first.dim - v.first.dim, w.second.dim - v.second.dim)
    return w.dim - v.dim


def subrank_L(v: LSub) -> int:
    if isinstance(v, SplitPair):
        return min(v.first.dim, v.second.dim)
    return v.dim


# ---------------------------------------------------------------------------
# the form, perpendiculars and the adjoint involution


def h_eval(space: HermitianSpace, component: str | int, x, y):
    """Split: x = (x0, x1), y = (y0, y1) give (x1.y0, y1.x0).  Field: conj(x)^t H y."""
    i = _idx(space, component)
    F = space.carrier_field(i)
    d = space.d

    def dot(u, v):
        if len(u) != d or len(v) != d:
            raise DimensionMismatch(f"vectors must have length {d}")
        acc = F.zero
        for a, b in zip(u, v):
            acc = F.add(acc, F.mul(a, b))
        return acc

    if space.is_split(i):
        return (dot(x[1], y[0]), dot(y[1], x[0]))
    H = space.gram(i)
    return dot([F.conj(a) for a in x], H.apply(y))


def perp(space: HermitianSpace, component: str | int, v: LSub) -> LSub:
    i = _idx(space, component)
    if space.is_split(i):
        return SplitPair(orthogonal(v.second), orthogonal(v.first))
    # x in v^perp iff conj(x)^t H y = 0 for y in v iff x . conj(H y) = 0
    F = space.carrier_field(i)
    H = space.gram(i)
    gens = [tuple(F.conj(a) for a in H.apply(b)) for b in v.basis]
    return orthogonal(span(F, space.d, gens))


def tau_matrix(space: HermitianSpace, component: str | int, m) -> tuple:
    """The involution on f_*(B).  Split: (B1, B2) -> (B2^t, B1^t).  Field: H^-1 conj(M)^t H.

    Matrices are flat row-major tuples; split elements are pairs of them.
    """
    i = _idx(space, component)
    d = space.d
    if space.is_split(i):
        return (flat_transpose(m[1], d), flat_transpose(m[0], d))
    F = space.carrier_field(i)
    H = space.gram(i)
    Hf = H.flatten()
    Hinv = H.inverse().flatten()
    mc = flat_transpose(tuple(F.conj(a) for a in m), d)
    return flat_matmul(F, flat_matmul(F, Hinv, mc, d), Hf, d)


def _tau_space(space: HermitianSpace, i: int, carrier: Subspace) -> Subspace:
    F = space.carrier_field(i)
    d = space.d
    return span(F, d * d, [tau_matrix(space, i, a) for a in carrier.basis])


def is_l_right_ideal(space: HermitianSpace, i: int, ideal: LSub) -> bool:
    d = space.d
    if isinstance(ideal, SplitPair):
        return is_right_ideal(ideal.first, d) and is_right_ideal(ideal.second, d)
    return is_right_ideal(ideal, d)


def tau_ann(space: HermitianSpace, component: str | int, ideal: LSub) -> LSub:
    """tau of the left annihilator; an order-two, order-reversing map on L-right ideals."""
    i = _idx(space, component)
    if not is_l_right_ideal(space, i, ideal):
        raise NotAnIdeal("tau_ann needs an L-right ideal")
    if isinstance(ideal, SplitPair):
        a0 = left_annihilator_space(ideal.first)
        a1 = left_annihilator_space(ideal.second)
        return SplitPair(transpose_space(a1), transpose_space(a0))
    return _tau_space(space, i, left_annihilator_space(ideal))


def l_ideal_from_submodule(space: HermitianSpace, component: str | int, v: LSub) -> LSub:
    """I_{L,V} = Hom_L(f_*(H), V): matrices with all columns in V."""
    i = _idx(space, component)
    if isinstance(v, SplitPair):
        return SplitPair(_ideal_carrier(v.first), _ideal_carrier(v.second))
    return _ideal_carrier(v)


def _ideal_carrier(v: Subspace) -> Subspace:
    F, d = v.field, v.ambient_dim
    z = F.zero
    gens = []
    for b in v.basis:
        for j in range(d):
            m = [z] * (d * d)
            for r in range(d):
                m[r * d + j] = b[r]
            gens.append(tuple(m))
    return span(F, d * d, gens)


def l_submodule_from_ideal(space: HermitianSpace, component: str | int, ideal: LSub) -> LSub:
    def cols(c: Subspace) -> Subspace:
        d = space.d
        return span(c.field, d, [tuple(a[r * d + j] for r in range(d)) for a in c.basis for j in range(d)])

    if isinstance(ideal, SplitPair):
        return SplitPair(cols(ideal.first), cols(ideal.second))
    return cols(ideal)


# ---------------------------------------------------------------------------
# L-lowered flags


@dataclass(frozen=True)
class LFlag:
    """Per-component chains of proper L-submodules (kind 'module') or L-right ideals (kind 'ideal')."""

    space: HermitianSpace
    chains: tuple[tuple[LSub, ...], ...]
    kind: str = "module"

    def __post_init__(self):
        chains = tuple(tuple(c) for c in self.chains)
        object.__setattr__(self, "chains", chains)
        if self.kind not in ("module", "ideal"):
            raise ValueError(f"unknown flag kind {self.kind!r}")
        if len(chains) != len(self.space.base.components):
            raise ValueError("one chain per component is required")
        for i, chain in enumerate(chains):
            problem = _chain_problem(self.space, i, chain, self.ambient)
            if problem:
                raise InvalidFlag(f"{self.space.base.components[i]}: {problem}")
            if self.kind == "ideal":
                for j, member in enumerate(chain):
                    if not is_l_right_ideal(self.space, i, member):
                        raise NotAnIdeal(f"{self.space.base.components[i]}: member {j} is not an L-right ideal")

    @property
    def ambient(self) -> int:
        return self.space.d if self.kind == "module" else self.space.d * self.space.d

    @property
    def global_length(self) -> int:
        return max(len(c) for c in self.chains)

    @property
    def base(self) -> BaseSpace:
        return self.space.base

    def padded(self) -> tuple[tuple[LSub, ...], ...]:
        m = self.global_length
        return tuple(
            chain + (lsub_full(self.space, i, self.ambient),) * (m - len(chain)) for i, chain in enumerate(self.chains)
        )


def _chain_problem(space: HermitianSpace, i: int, chain: Sequence[LSub], m: int) -> str | None:
    prev = lsub_zero(space, i, m)
    full = lsub_full(space, i, m)
    for j, v in enumerate(chain + (full,) if isinstance(chain, tuple) else list(chain) + [full]):
        if space.is_split(i) != isinstance(v, SplitPair):
            return f"member {j} has the wrong shape for this component"
        if not lsub_contains(v, prev):
            return f"member {j} does not contain its predecessor"
        if gap_L(prev, v) == 0:
            return f"zero L-gap below member {j}"
        prev = v
    for j, v in enumerate(chain):
        if lsub_is_full(v):
            return f"member {j} is the whole module"
    return None


def is_l_lowered(space: HermitianSpace, padded_chains: Sequence[Sequence[LSub]], m: int | None = None) -> bool:
    """Zero L-gap between consecutive padded members only when both are the whole module."""
    m = space.d if m is None else m
    for i, chain in enumerate(padded_chains):
        prev = lsub_zero(space, i, m)
        for v in chain:
            if not lsub_contains(v, prev):
                return False
            if gap_L(prev, v) == 0 and not (lsub_is_full(prev) and lsub_is_full(v)):
                return False
            prev = v
    return True


def restrict_lflag(f: LFlag, r: Restriction) -> LFlag:
    idx = [f.base.index(c) for c in r.kept]
    return LFlag(f.space.restrict(r), tuple(f.chains[i] for i in idx), f.kind)


def glue_lflags(space: HermitianSpace, pieces: Sequence[Sequence[LSub]], kind: str = "module") -> LFlag:
    return LFlag(space, tuple(tuple(p) for p in pieces), kind)


def pi_h(f: LFlag) -> LFlag:
    """Per component, (V_1 < ... < V_k) -> (V_k^perp < ... < V_1^perp)."""
    if f.kind != "module":
        raise ValueError("pi_h acts on submodule flags; use pi_B for ideals")
    chains = tuple(tuple(perp(f.space, i, v) for v in reversed(chain)) for i, chain in enumerate(f.chains))
    return LFlag(f.space, chains, "module")


def pi_B(f: LFlag) -> LFlag:
    """Same recipe as pi_h with tau_ann in place of the perpendicular."""
    if f.kind != "ideal":
        raise ValueError("pi_B acts on ideal flags")
    chains = tuple(tuple(tau_ann(f.space, i, v) for v in reversed(chain)) for i, chain in enumerate(f.chains))
    return LFlag(f.space, chains, "ideal")


def is_symmetric_flag(f: LFlag) -> bool:
    return pi_h(f) == f


def is_symmetric_ideal_flag(f: LFlag) -> bool:
    return f.kind == "ideal" and pi_B(f) == f


def swap_sheets(f: LFlag) -> LFlag:
    """Apply the cover's involution: exchange sheets on split components, conjugate on field ones."""
    space = f.space
    grams = []
    chains = []
    for i, chain in enumerate(f.chains):
        if space.is_split(i):
            grams.append(None)
            chains.append(tuple(v.swapped() for v in chain))
        else:
            F = space.carrier_field(i)
            grams.append(space.gram(i).conjugate())
            chains.append(tuple(span(F, v.ambient_dim, [tuple(F.conj(a) for a in r) for r in v.basis]) for v in chain))
    return LFlag(HermitianSpace(space.cover, space.d, tuple(grams)), tuple(chains), f.kind)


# ---------------------------------------------------------------------------
# inner <-> outer and submodules <-> ideals


def _require_split(space: HermitianSpace):
    for name, t in space.cover.items():
        if not isinstance(t, Split):
            raise UnsupportedCover(f"component {name} is not split")


def inner_to_outer_flag(f: GlobalLoweredFlag, space: HermitianSpace | None = None) -> LFlag:
    """(V_i) -> (V_i x W_{l+1-i}^perp) with W the raised flag; needs an all-split cover."""
    if space is None:
        from .base import DoubleCover as _DC

        space = HermitianSpace.standard(_DC.all_split(f.base), f.ambient_dim)
    _require_split(space)
    if space.base != f.base or space.d != f.ambient_dim:
        raise ValueError("flag and hermitian space do not match")
    lowered = f.padded()
    raised = raise_flag(f).chains
    m = f.global_length
    chains = []
    for comp_v, comp_w in zip(lowered, raised):
        members = []
        for i in range(m):
            v = comp_v[i]
            w_perp = orthogonal(comp_w[m - 1 - i])
            pair = SplitPair(v, w_perp)
            if not lsub_is_full(pair):
                members.append(pair)
        chains.append(tuple(members))
    return LFlag(space, tuple(chains), "module")


def outer_to_inner_flag(f: LFlag) -> GlobalLoweredFlag:
    """First-factor projection; inverse of inner_to_outer_flag on symmetric flags."""
    _require_split(f.space)
    comps = []
    for chain in f.chains:
        F = f.space.base.field
        comps.append(ComponentFlag(F, f.space.d, tuple(v.first for v in chain)))
    return GlobalLoweredFlag(f.base, tuple(comps))


def outer_ideal_iso(f: LFlag) -> LFlag:
    """Componentwise V -> I_{L,V}."""
    if f.kind != "module":
        raise ValueError("outer_ideal_iso needs a submodule flag")
    chains = tuple(tuple(l_ideal_from_submodule(f.space, i, v) for v in chain) for i, chain in enumerate(f.chains))
    return LFlag(f.space, chains, "ideal")


def outer_ideal_iso_inverse(f: LFlag) -> LFlag:
    chains = tuple(tuple(l_submodule_from_ideal(f.space, i, v) for v in chain) for i, chain in enumerate(f.chains))
    return LFlag(f.space, chains, "module")


# ---------------------------------------------------------------------------
# outer types


@dataclass(frozen=True)
class OuterTypeSection:
    """Per component: (sheet-0, sheet-1) tuples on split components, a single tuple on field ones."""

    base: BaseSpace
    tuples: tuple[tuple[TypeTuple, ...], ...]

    def is_equivariant(self) -> bool:
        for ts in self.tuples:
            if len(ts) == 2 and ts[1] != vee(ts[0]):
                return False
            if len(ts) == 1 and ts[0] != vee(ts[0]):
                return False
        return True

    def swapped(self) -> "OuterTypeSection":
        return OuterTypeSection(self.base, tuple(tuple(reversed(ts)) for ts in self.tuples))

    def map(self, fn) -> "OuterTypeSection":
        return OuterTypeSection(self.base, tuple(tuple(fn(t) for t in ts) for ts in self.tuples))

    def as_lists(self) -> dict:
        return {c: [list(t.entries) for t in ts] for c, ts in zip(self.base.components, self.tuples)}


def outer_type(f: LFlag) -> OuterTypeSection:
    d = f.space.d
    scale = 1 if f.kind == "module" else d
    out = []
    for i, chain in enumerate(f.chains):
        sheets = 2 if f.space.is_split(i) else 1
        per_sheet = []
        for s in range(sheets):
            dims = []
            for v in chain:
                k = ext_dims(v)[s]
                if k % scale:
                    raise NotAnIdeal(f"ideal dimension {k} is not divisible by {d}")
                dims.append(k // scale)
            per_sheet.append(TypeTuple(d - 1, tuple(dims)))
        out.append(tuple(per_sheet))
    return OuterTypeSection(f.base, tuple(out))


def opposite_space(space: HermitianSpace) -> HermitianSpace:
    """The transposed model of B^op: split data is unchanged, a Gram matrix H becomes conj(H)^-1."""
    grams = tuple(None if H is None else H.conjugate().inverse() for H in space.grams)
    return HermitianSpace(space.cover, space.d, grams)


def opposite_iso(f: LFlag) -> LFlag:
    """(I_1 < ... < I_k) -> (0I_k < ... < 0I_1) as right ideals of B^op (transposed carriers)."""
    if f.kind != "ideal":
        raise ValueError("opposite_iso needs an ideal flag")
    space = f.space
    chains = []
    for chain in f.chains:
        members = []
        for v in reversed(chain):
            if isinstance(v, SplitPair):
                members.append(
                    SplitPair(
                        transpose_space(left_annihilator_space(v.first)),
                        transpose_space(left_annihilator_space(v.second)),
                    )
                )
            else:
                members.append(transpose_space(left_annihilator_space(v)))
        chains.append(tuple(members))
    return LFlag(opposite_space(space), tuple(chains), "ideal")


def sb_fiber(f: LFlag, sheet: int | None = 0) -> bool:
    """Is the section in the Severi-Brauer fiber over the (1) component?

    On a split component the outer type must be ((1), (n)) read from
    ``sheet`` (0 by default); ``sheet=None`` accepts either sheet, i.e. the
    whole (1)/(n) orbit.  For n < 2 the pair collapses to a symmetric type,
    and field components carry symmetric types only, so neither is selected.
    """
    if f.kind != "ideal" or not is_symmetric_ideal_flag(f):
        return False
    n = f.space.d - 1
    if n < 2:
        return False
    one = TypeTuple(n, (1,))
    for ts in outer_type(f).tuples:
        if len(ts) == 1:
            return False
        if sheet is None:
            if one not in ts:
                return False
        elif ts[sheet] != one:
            return False
    return True


# ---------------------------------------------------------------------------
# outer Stiefel tuples


def _raise_tuple(entries: Sequence[LSub]) -> tuple[LSub, ...]:
    nz = [v for v in entries if not lsub_is_zero(v)]
    zs = [v for v in entries if lsub_is_zero(v)]
    return tuple(zs + nz)


def outer_stiefel_problems(space: HermitianSpace, t: Sequence[Sequence[LSub]]) -> list[str]:
    """Check a per-component tuple (V_1..V_{l+1}) of L-submodules, padded with zeros."""
    probs: list[str] = []
    t = [tuple(c) for c in t]
    if len(t) != len(space.base.components) or len({len(c) for c in t}) != 1:
        return ["tuples must have one common length on every component"]
    L = len(t[0])
    if L == 0:
        return ["empty tuple"]
    for i, entries in enumerate(t):
        name = space.base.components[i]
        full = lsub_full(space, i, space.d)
        acc = lsub_zero(space, i, space.d)
        total = 0
        for v in entries:
            acc = lsub_sum(acc, v)
            total += base_rank(v)
        if acc != full or total != base_rank(full):
            probs.append(f"{name}: not a direct sum decomposition")
            continue
        seen_zero = False
        for j, v in enumerate(entries):
            if seen_zero and not lsub_is_zero(v):
                probs.append(f"{name}: index {j + 1}: nonzero after a zero-subrank entry")
                break
            if subrank_L(v) == 0:
                seen_zero = True
        raised = _raise_tuple(entries)
        for j in range(L):
            others = lsub_zero(space, i, space.d)
            for k in range(L):
                if k != L - 1 - j:
                    others = lsub_sum(others, raised[k])
            if entries[j] != perp(space, i, others):
                probs.append(f"{name}: index {j + 1}: fails the perpendicular symmetry")
                break
    if all(lsub_is_zero(c[-1]) for c in t):
        probs.append("last entry is zero on every component")
    return probs


def validate_outer_stiefel(space: HermitianSpace, t: Sequence[Sequence[LSub]]) -> bool:
    return not outer_stiefel_problems(space, t)


def inner_stiefel_to_outer(space: HermitianSpace, parts: Sequence[Sequence[Subspace]]) -> tuple[tuple[SplitPair, ...], ...]:
    """(V_1..V_{l+1}) -> (V_i x (sum_{j != l+2-i} V'_j)^perp) with V' the raised tuple."""
    _require_split(space)
    L = max(len([v for v in p if not v.is_zero()]) for p in parts)
    out = []
    for p in parts:
        F = p[0].field
        d = p[0].ambient_dim
        nz = [v for v in p if not v.is_zero()]
        lowered = nz + [zero_space(F, d)] * (L - len(nz))
        raised = [zero_space(F, d)] * (L - len(nz)) + nz
        row = []
        for i in range(L):
            others = zero_space(F, d)
            for k in range(L):
                if k != L - 1 - i:
                    others = sum_(others, raised[k])
            row.append(SplitPair(lowered[i], orthogonal(others)))
        # entries beyond the component's own length are the zero module
        row = [pair if not lowered[i].is_zero() else SplitPair(zero_space(F, d), zero_space(F, d)) for i, pair in enumerate(row)]
        out.append(tuple(row))
    return tuple(out)


def stiefel_to_flag(space: HermitianSpace, t: Sequence[Sequence[LSub]]) -> LFlag:
    """Partial sums V_1, V_1+V_2, ..., dropping members equal to the whole module."""
    chains = []
    for i, entries in enumerate(t):
        acc = lsub_zero(space, i, space.d)
        members = []
        for v in entries[:-1]:
            acc = lsub_sum(acc, v)
            if not lsub_is_full(acc) and (not members or members[-1] != acc):
                members.append(acc)
        chains.append(tuple(members))
    return LFlag(space, tuple(chains), "module")


# ---------------------------------------------------------------------------
# outer idempotent tuples


@dataclass(frozen=True)
class OuterIdempTuple:
    """Per component, entries of f_*(B) padded with zeros: pairs of flat matrices on split
    components, flat ext-matrices on field components."""

    space: HermitianSpace
    es: tuple[tuple, ...]

    @property
    def length(self) -> int:
        return len(self.es[0])


def _alg_ops(space: HermitianSpace, i: int):
    d = space.d
    F = space.carrier_field(i)
    z = tuple([F.zero] * (d * d))
    one = tuple(a for r in identity_rows(F, d) for a in r)

    def mul(a, b):
        return flat_matmul(F, a, b, d)

    def add(a, b):
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def is_zero(a):
        return all(F.is_zero(x) for x in a)

    if space.is_split(i):
        return (
            lambda a, b: (mul(a[0], b[0]), mul(a[1], b[1])),
            lambda a, b: (add(a[0], b[0]), add(a[1], b[1])),
            lambda a: is_zero(a[0]) and is_zero(a[1]),
            (z, z),
            (one, one),
        )
    return mul, add, is_zero, z, one


def idemp_ideal(space: HermitianSpace, i: int, e) -> LSub:
    """The L-right ideal e f_*(B)."""
    d = space.d
    F = space.carrier_field(i)

    def principal(flat):
        return principal_right_ideal(Matrix(F, tuple(tuple(flat[r * d:(r + 1) * d]) for r in range(d)), d))

    if space.is_split(i):
        return SplitPair(principal(e[0]), principal(e[1]))
    return principal(e)


def idemp_image(space: HermitianSpace, i: int, e) -> LSub:
    """Img(e) as an L-submodule of f_*(H)."""
    d = space.d
    F = space.carrier_field(i)

    def img(flat):
        return span(F, d, [tuple(flat[r * d + j] for r in range(d)) for j in range(d)])

    if space.is_split(i):
        return SplitPair(img(e[0]), img(e[1]))
    return img(e)


def outer_idemp_problems(t: OuterIdempTuple) -> list[str]:
    space = t.space
    probs: list[str] = []
    if len(t.es) != len(space.base.components) or len({len(c) for c in t.es}) != 1:
        return ["entries must have one common length on every component"]
    L = t.length
    if L == 0:
        return ["empty tuple"]
    for i, es in enumerate(t.es):
        name = space.base.components[i]
        mul, add, is_zero, z, one = _alg_ops(space, i)
        total = z
        for a, e in enumerate(es):
            if mul(e, e) != e:
                probs.append(f"{name}: e{a + 1} is not idempotent")
            for b, f in enumerate(es):
                if a != b and not is_zero(mul(e, f)):
                    probs.append(f"{name}: e{a + 1} e{b + 1} != 0")
            total = add(total, e)
        if total != one:
            probs.append(f"{name}: entries do not sum to 1")
        seen = False
        for a, e in enumerate(es):
            if seen and not is_zero(e):
                probs.append(f"{name}: e{a + 1} is nonzero after a zero-subrank entry")
                break
            if subrank_L(idemp_ideal(space, i, e)) == 0:
                seen = True
        nz = [e for e in es if not is_zero(e)]
        raised = [z] * (L - len(nz)) + nz
        for a, e in enumerate(es):
            if tau_matrix(space, i, e) != raised[L - 1 - a]:
                probs.append(f"{name}: tau(e{a + 1}) != e'{L - a}")
                break
    if all(_alg_ops(space, i)[2](es[-1]) for i, es in enumerate(t.es)):
        probs.append("last entry is zero on every component")
    return probs


def validate_outer_idemp(t: OuterIdempTuple) -> bool:
    return not outer_idemp_problems(t)


def outer_idemp_from_inner(space: HermitianSpace, t) -> OuterIdempTuple:
    """((e_i, (e'_{l+2-i})^t)) with e' the raised inner tuple; all-split covers only."""
    from .azumaya import rho_idemp

    _require_split(space)
    d = space.d
    raised = rho_idemp(t).es
    out = []
    for es, rs in zip(t.es, raised):
        L = len(es)
        row = []
        for i, e in enumerate(es):
            r = rs[L - 1 - i]
            if e.is_zero():
                row.append((e.flatten(), e.flatten()))
            else:
                row.append((e.flatten(), flat_transpose(r.flatten(), d)))
        out.append(tuple(row))
    return OuterIdempTuple(space, tuple(out))


def outer_idemp_to_stiefel(t: OuterIdempTuple) -> tuple[tuple[LSub, ...], ...]:
    return tuple(tuple(idemp_image(t.space, i, e) for e in es) for i, es in enumerate(t.es))


def outer_idemp_to_flag(t: OuterIdempTuple) -> LFlag:
    """Partial sums (e_1 + ... + e_k) f_*(B), dropping members equal to the whole algebra."""
    space = t.space
    chains = []
    for i, es in enumerate(t.es):
        mul, add, is_zero, z, one = _alg_ops(space, i)
        nz = [e for e in es if not is_zero(e)]
        acc = z
        members = []
        for e in nz[:-1]:
            acc = add(acc, e)
            members.append(idemp_ideal(space, i, acc))
        chains.append(tuple(members))
    return LFlag(space, tuple(chains), "ideal")


# ---------------------------------------------------------------------------
# enumeration and sampling


def all_lsubs(space: HermitianSpace, i: int, m: int | None = None) -> Iterator[LSub]:
    m = space.d if m is None else m
    F = space.carrier_field(i)
    subs = list(all_subspaces(F, m))
    if space.is_split(i):
        for a, b in itertools.product(subs, subs):
            yield SplitPair(a, b)
    else:
        yield from subs


def all_lflag_chains(space: HermitianSpace, i: int) -> Iterator[tuple[LSub, ...]]:
    """Every L-lowered chain on one component (finite fields)."""
    m = space.d
    zero = lsub_zero(space, i, m)
    full = lsub_full(space, i, m)
    members = [v for v in all_lsubs(space, i) if gap_L(zero, v) > 0 and gap_L(v, full) > 0]

    def extend(chain):
        yield chain
        last = chain[-1] if chain else zero
        for v in members:
            if lsub_contains(v, last) and gap_L(last, v) > 0:
                yield from extend(chain + (v,))

    yield from extend(())


def random_lsub_chain(rng: random.Random, space: HermitianSpace, i: int, length: int | None = None) -> tuple[LSub, ...]:
    d = space.d
    if length is None:
        length = rng.randrange(d)
    F = space.carrier_field(i)
    if space.is_split(i):
        a = random_component_flag(rng, F, d, length).chain
        b = random_component_flag(rng, F, d, length).chain
        return tuple(SplitPair(x, y) for x, y in zip(a, b))
    return random_component_flag(rng, F, d, length).chain


def random_lflag(rng: random.Random, space: HermitianSpace) -> LFlag:
    return LFlag(space, tuple(random_lsub_chain(rng, space, i) for i in range(len(space.base.components))))


def random_symmetric_flag(rng: random.Random, space: HermitianSpace) -> LFlag:
    """A symmetric flag: symmetrize a random half-chain on every component."""
    chains = []
    for i in range(len(space.base.components)):
        chains.append(_random_symmetric_chain(rng, space, i))
    return LFlag(space, tuple(chains), "module")


def _random_symmetric_chain(rng: random.Random, space: HermitianSpace, i: int) -> tuple[LSub, ...]:
    d = space.d
    F = space.carrier_field(i)
    if space.is_split(i):
        inner = random_component_flag(rng, F, d).chain
        k = len(inner)
        return tuple(SplitPair(inner[j], orthogonal(inner[k - 1 - j])) for j in range(k))
    # field components: isotropic chains V_1 < ... < V_j with V_j inside V_j^perp, then perps
    for _ in range(200):
        iso = _random_isotropic_chain(rng, space, i)
        top = perp(space, i, iso[-1]) if iso else full_space(F, d)
        tail = [perp(space, i, v) for v in reversed(iso)]
        middle = [top] if iso and top != iso[-1] and rng.random() < 0.5 else []
        if middle and middle[0].is_full():
            middle = []
        chain = list(iso) + middle + tail[1:] if not middle else list(iso) + tail
        chain = [v for v in chain if not v.is_full()]
        dedup = []
        for v in chain:
            if not dedup or dedup[-1] != v:
                dedup.append(v)
        try:
            cand = LFlag(space, tuple(() if j != i else tuple(dedup) for j in range(len(space.base.components))))
        except (InvalidFlag, ValueError):
            continue
        if pi_h(cand).chains[i] == tuple(dedup):
            return tuple(dedup)
    return ()


def _random_isotropic_chain(rng: random.Random, space: HermitianSpace, i: int) -> list[Subspace]:
    d = space.d
    F = space.carrier_field(i)
    els = F.elements()
    chain: list[Subspace] = []
    cur = zero_space(F, d)
    while rng.random() < 0.7:
        cands = []
        for _ in range(30):
            x = tuple(rng.choice(els) for _ in range(d))
            if cur.contains_vector(x):
                continue
            bigger = sum_(cur, span(F, d, [x]))
            if lsub_contains(perp(space, i, bigger), bigger):
                cands.append(bigger)
        if not cands:
            break
        cur = rng.choice(cands)
        chain.append(cur)
    return chain
