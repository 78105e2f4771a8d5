"""Lowered and raised flags over a finite-component base, and type tuples.

A global lowered flag stores, per component, the chain of proper subspaces
(strictly increasing, last member not the whole space).  Its global length is
the longest chain; the padded form fills shorter chains with copies of the
whole space at the top.  The raised form instead slides each chain to the
top and fills the bottom with zeros.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .base import BaseSpace, Restriction
from .errors import DimensionMismatch, InvalidFlag, NotInvertible
from .exactlin import (
    Field,
    Matrix,
    Subspace,
    all_subspaces,
    contains,
    full_space,
    span,
    zero_space,
)


# ---------------------------------------------------------------------------
# type tuples


@dataclass(frozen=True, order=True)
class TypeTuple:
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(self.entries)
        object.__setattr__(self, "entries", e)
        if any(b <= a for a, b in zip(e, e[1:])):
            raise ValueError(f"type entries must strictly increase: {e}")
        if e and (e[0] < 1 or e[-1] > self.n):
            raise ValueError(f"type entries must lie in 1..{self.n}: {e}")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def vee(t: TypeTuple) -> TypeTuple:
    """Dynkin reflection r -> n+1-r."""
    return TypeTuple(t.n, tuple(sorted(t.n + 1 - r for r in t.entries)))


def comp(t: TypeTuple) -> TypeTuple:
    """Complement inside {1..n}."""
    s = set(t.entries)
    return TypeTuple(t.n, tuple(r for r in range(1, t.n + 1) if r not in s))


def all_type_tuples(n: int) -> list[TypeTuple]:
    out = []
    for k in range(n + 1):
        out.extend(TypeTuple(n, c) for c in itertools.combinations(range(1, n + 1), k))
    return out


def symmetric_types(n: int) -> list[TypeTuple]:
    return [t for t in all_type_tuples(n) if vee(t) == t]


def lex_types(n: int) -> list[TypeTuple]:
    """Tuples strictly lex-smaller than their reflection (one per swapped pair)."""
    return [t for t in all_type_tuples(n) if t.entries < vee(t).entries]


@dataclass(frozen=True)
class TypeSection:
    base: BaseSpace
    tuples: tuple[TypeTuple, ...]

    def __getitem__(self, component: str) -> TypeTuple:
        return self.tuples[self.base.index(component)]

    def map(self, fn) -> "TypeSection":
        return TypeSection(self.base, tuple(fn(t) for t in self.tuples))

    def as_lists(self) -> dict:
        return {c: list(t.entries) for c, t in zip(self.base.components, self.tuples)}


# ---------------------------------------------------------------------------
# flags


@dataclass(frozen=True)
class ComponentFlag:
    """Constant-rank flag 0 < V_1 < ... < V_l < F^d on one component."""

    field: Field
    ambient_dim: int
    chain: tuple[Subspace, ...] = ()

    def __post_init__(self):
        chain = tuple(self.chain)
        object.__setattr__(self, "chain", chain)
        prev = 0
        for i, v in enumerate(chain):
            if v.field != self.field or v.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(f"member {i} lives in a different ambient space")
            if v.dim <= prev:
                raise InvalidFlag(f"member {i} does not strictly grow (dim {v.dim})")
            if v.is_full():
                raise InvalidFlag(f"member {i} is the whole space; chains list proper members only")
            if i and not contains(v, chain[i - 1]):
                raise InvalidFlag(f"member {i - 1} is not contained in member {i}")
            prev = v.dim

    def __len__(self) -> int:
        return len(self.chain)

    def dims(self) -> tuple[int, ...]:
        return tuple(v.dim for v in self.chain)

    def full(self) -> Subspace:
        return full_space(self.field, self.ambient_dim)

    def zero(self) -> Subspace:
        return zero_space(self.field, self.ambient_dim)


@dataclass(frozen=True)
class GlobalLoweredFlag:
    base: BaseSpace
    components: tuple[ComponentFlag, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != len(self.base.components):
            raise ValueError("one component flag per base component is required")
        if len({(c.field, c.ambient_dim) for c in comps}) > 1:
            raise DimensionMismatch("all components must share field and rank")

    @property
    def global_length(self) -> int:
        return max(len(c) for c in self.components)

    @property
    def field(self) -> Field:
        return self.components[0].field

    @property
    def ambient_dim(self) -> int:
        return self.components[0].ambient_dim

    def component(self, name: str) -> ComponentFlag:
        return self.components[self.base.index(name)]

    def padded(self) -> tuple[tuple[Subspace, ...], ...]:
        m = self.global_length
        return tuple(c.chain + (c.full(),) * (m - len(c)) for c in self.components)


def is_lowered(base: BaseSpace, padded_chains: Sequence[Sequence[Subspace]]) -> bool:
    """Every consecutive equality on a component happens at the whole space."""
    if len(padded_chains) != len(base.components):
        return False
    lengths = {len(c) for c in padded_chains}
    if len(lengths) > 1:
        return False
    for chain in padded_chains:
        for a, b in zip(chain, chain[1:]):
            if not contains(b, a):
                return False
            if a == b and not a.is_full():
                return False
            if a.is_full() and not b.is_full():
                return False
    return True


def from_padded(base: BaseSpace, padded_chains: Sequence[Sequence[Subspace]], field: Field, d: int) -> GlobalLoweredFlag:
    """Read a padded lowered flag; trailing copies of the whole space are dropped."""
    if not is_lowered(base, padded_chains):
        raise InvalidFlag("chains are not a lowered flag")
    comps = []
    for chain in padded_chains:
        proper = tuple(v for v in chain if not v.is_full())
        comps.append(ComponentFlag(field, d, proper))
    return GlobalLoweredFlag(base, tuple(comps))


def restrict_flag(f: GlobalLoweredFlag, r: Restriction) -> GlobalLoweredFlag:
    if r.source != f.base:
        raise ValueError("restriction source is not the flag's base")
    return GlobalLoweredFlag(r.target, tuple(f.component(c) for c in r.kept))


def glue_flags(base: BaseSpace, pieces: Sequence[ComponentFlag]) -> GlobalLoweredFlag:
    """Unique lowered global flag restricting to the given component flags."""
    return GlobalLoweredFlag(base, tuple(pieces))


# ---------------------------------------------------------------------------
# raising


@dataclass(frozen=True)
class GlobalRaisedFlag:
    """Padded chains with zeros at the bottom; equality only at zero."""

    base: BaseSpace
    field: Field
    ambient_dim: int
    chains: tuple[tuple[Subspace, ...], ...]

    def __post_init__(self):
        chains = tuple(tuple(c) for c in self.chains)
        object.__setattr__(self, "chains", chains)
        if not is_raised(self.base, chains):
            raise InvalidFlag("chains are not a raised flag")

    @property
    def global_length(self) -> int:
        return len(self.chains[0]) if self.chains else 0


def is_raised(base: BaseSpace, chains: Sequence[Sequence[Subspace]]) -> bool:
    if len(chains) != len(base.components) or len({len(c) for c in chains}) > 1:
        return False
    for chain in chains:
        for a, b in zip(chain, chain[1:]):
            if not contains(b, a):
                return False
            if a == b and not a.is_zero():
                return False
            if not a.is_zero() and b.is_zero():
                return False
        if chain and chain[-1].is_full():
            return False
    return True


def raise_flag(f: GlobalLoweredFlag) -> GlobalRaisedFlag:
    """Slide each component's proper chain to the top slots, zeros below."""
    m = f.global_length
    chains = []
    for c in f.components:
        chains.append((c.zero(),) * (m - len(c)) + c.chain)
    return GlobalRaisedFlag(f.base, f.field, f.ambient_dim, tuple(chains))


def lower_flag(r: GlobalRaisedFlag) -> GlobalLoweredFlag:
    comps = []
    for chain in r.chains:
        comps.append(ComponentFlag(r.field, r.ambient_dim, tuple(v for v in chain if not v.is_zero())))
    return GlobalLoweredFlag(r.base, tuple(comps))


# ---------------------------------------------------------------------------
# types and group action


def type_of_component(c: ComponentFlag) -> TypeTuple:
    return TypeTuple(c.ambient_dim - 1, c.dims())


def type_of_flag(f: GlobalLoweredFlag) -> TypeSection:
    return TypeSection(f.base, tuple(type_of_component(c) for c in f.components))


def act_gl(gs: Sequence[Matrix] | Matrix, f: GlobalLoweredFlag) -> GlobalLoweredFlag:
    """Apply g (one matrix, or one per component) to every member."""
    if isinstance(gs, Matrix):
        gs = [gs] * len(f.components)
    if len(gs) != len(f.components):
        raise ValueError("one matrix per component is required")
    comps = []
    for g, c in zip(gs, f.components):
        if g.shape != (c.ambient_dim, c.ambient_dim):
            raise DimensionMismatch(f"matrix of shape {g.shape} on rank {c.ambient_dim}")
        if not g.is_invertible():
            raise NotInvertible("group elements must be invertible")
        comps.append(ComponentFlag(c.field, c.ambient_dim, tuple(v.image(g) for v in c.chain)))
    return GlobalLoweredFlag(f.base, tuple(comps))


# ---------------------------------------------------------------------------
# enumeration and sampling


def coordinate_flag(field: Field, d: int, dims: Iterable[int]) -> ComponentFlag:
    """Chain of spans of the first k standard basis vectors."""
    chain = []
    for k in dims:
        rows = [[field.one if j == i else field.zero for j in range(d)] for i in range(k)]
        chain.append(span(field, d, rows))
    return ComponentFlag(field, d, tuple(chain))


def all_component_flags(field: Field, d: int) -> Iterator[ComponentFlag]:
    """Every constant-rank flag of field^d (finite fields)."""
    proper = [v for v in all_subspaces(field, d) if 0 < v.dim < d]
    yield ComponentFlag(field, d, ())

    def extend(chain):
        for v in proper:
            if v.dim > chain[-1].dim and contains(v, chain[-1]):
                new = chain + (v,)
                yield new
                yield from extend(new)

    for v in proper:
        yield ComponentFlag(field, d, (v,))
        for ch in extend((v,)):
            yield ComponentFlag(field, d, ch)


def random_invertible(rng: random.Random, field: Field, d: int) -> Matrix:
    els = field.elements()
    while True:
        g = Matrix.of(field, [[rng.choice(els) for _ in range(d)] for _ in range(d)])
        if g.is_invertible():
            return g


def random_component_flag(rng: random.Random, field: Field, d: int, length: int | None = None) -> ComponentFlag:
    if length is None:
        length = rng.randrange(d)
    dims = sorted(rng.sample(range(1, d), length))
    g = random_invertible(rng, field, d)
    chain = tuple(span(field, d, g.rows[:k]) for k in dims)
    return ComponentFlag(field, d, chain)


def random_flag(rng: random.Random, base: BaseSpace, d: int) -> GlobalLoweredFlag:
    return GlobalLoweredFlag(base, tuple(random_component_flag(rng, base.field, d) for _ in base.components))
