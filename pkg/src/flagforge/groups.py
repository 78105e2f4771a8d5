"""Group membership: stabilizers, standard parabolics, cocharacters and limit subgroups.

Parabolic and Levi subgroups are handled as membership predicates.  A
cocharacter is a list of (exponent, idempotent) terms per component;
conjugating g by it gives sum_{p,q} t^(a_p - a_q) e_p g e_q, and g lies in
the limit parabolic when no negative power of t survives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .azumaya import IdempTuple, check_idemp, type_of_ideal_flag
from .base import BaseSpace
from .errors import DimensionMismatch, InvalidIdempotents, NotInvertible
from .exactlin import Field, Matrix, Subspace, flat_matmul, span
from .flags import (
    ComponentFlag,
    GlobalLoweredFlag,
    TypeSection,
    TypeTuple,
    comp,
    coordinate_flag,
    type_of_flag,
)
from .hermitian import HermitianSpace, LFlag, OuterIdempTuple, SplitPair, tau_matrix, validate_outer_idemp


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class GroupElement:
    """One invertible matrix per component.

    On a split component the matrix A stands for the pair (A, (A^-1)^t); on a
    field component it is a matrix over the extension.
    """

    mats: tuple[Matrix, ...]

    def __post_init__(self):
        mats = tuple(self.mats)
        object.__setattr__(self, "mats", mats)
        for m in mats:
            if not m.is_invertible():
                raise NotInvertible("group elements must be invertible")

    @classmethod
    def single(cls, m: Matrix, copies: int = 1) -> "GroupElement":
        return cls((m,) * copies)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(a @ b for a, b in zip(self.mats, other.mats)))

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(m.inverse() for m in self.mats))


def _as_element(g, count: int) -> GroupElement:
    if isinstance(g, GroupElement):
        if len(g.mats) == count:
            return g
        if len(g.mats) == 1:
            return GroupElement.single(g.mats[0], count)
        raise ValueError("one matrix per component is required")
    if isinstance(g, Matrix):
        return GroupElement.single(g, count)
    return GroupElement(tuple(g))


def is_unitary(g, space: HermitianSpace) -> bool:
    """tau(g) = g^-1 on every component; automatic on split components."""
    g = _as_element(g, len(space.base.components))
    for i, A in enumerate(g.mats):
        if A.shape != (space.d, space.d):
            raise DimensionMismatch(f"expected {space.d}x{space.d}, got {A.shape}")
        if space.is_split(i):
            continue
        H = space.gram(i)
        if H.inverse() @ A.conjugate().transpose() @ H != A.inverse():
            return False
    return True


def left_mult_space(A: Matrix, carrier: Subspace) -> Subspace:
    """{A X : X in carrier} for carriers of flat d x d matrices."""
    d = A.nrows
    a = A.flatten()
    return span(A.field, d * d, [flat_matmul(A.field, a, x, d) for x in carrier.basis])


def _act_subspace(A: Matrix, v: Subspace) -> Subspace:
    if v.ambient_dim == A.nrows:
        return v.image(A)
    if v.ambient_dim == A.nrows ** 2:
        return left_mult_space(A, v)
    raise DimensionMismatch(f"cannot act by a {A.shape} matrix on ambient {v.ambient_dim}")


def _act_lsub(A: Matrix, split: bool, v):
    if split:
        return SplitPair(_act_subspace(A, v.first), _act_subspace(A.inverse().transpose(), v.second))
    return _act_subspace(A, v)


def stabilizes(g, f: Union[GlobalLoweredFlag, LFlag]) -> bool:
    """g V = V for every member: the matrix action on submodules, left multiplication on ideals."""
    if isinstance(f, LFlag):
        g = _as_element(g, len(f.base.components))
        for i, (A, chain) in enumerate(zip(g.mats, f.chains)):
            split = f.space.is_split(i)
            for v in chain:
                if _act_lsub(A, split, v) != v:
                    return False
        return True
    g = _as_element(g, len(f.components))
    for A, c in zip(g.mats, f.components):
        for v in c.chain:
            if _act_subspace(A, v) != v:
                return False
    return True


# ---------------------------------------------------------------------------
# standard parabolics and types


@dataclass(frozen=True)
class BlockPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")

    @property
    def d(self) -> int:
        return sum(self.parts)

    def partial_sums(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.parts))[:-1]

    def block_of(self, i: int) -> int:
        acc = 0
        for b, p in enumerate(self.parts):
            acc += p
            if i < acc:
                return b
        raise IndexError(i)


def compositions(d: int) -> list[BlockPartition]:
    out = []
    for cuts in itertools.product((False, True), repeat=d - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(BlockPartition(tuple(parts)))
    return out


@dataclass(frozen=True)
class ParabolicHandle:
    """The stabilizer of a flag (kind 'module' or 'ideal'), as a membership predicate."""

    flag: GlobalLoweredFlag
    kind: str = "module"

    def contains(self, g) -> bool:
        return stabilizes(g, self.flag)

    @property
    def d(self) -> int:
        m = self.flag.ambient_dim
        return m if self.kind == "module" else int(round(m ** 0.5))


def standard_parabolic(p: BlockPartition, field: Field, base: BaseSpace | None = None) -> tuple[ParabolicHandle, tuple[tuple[bool, ...], ...]]:
    """Coordinate flag of partial sums and the pattern of allowed entries (zero below the diagonal blocks)."""
    base = base or BaseSpace(field, ("c0",))
    cf = coordinate_flag(field, p.d, p.partial_sums())
    flag = GlobalLoweredFlag(base, tuple(cf for _ in base.components))
    pattern = tuple(tuple(p.block_of(i) <= p.block_of(j) for j in range(p.d)) for i in range(p.d))
    return ParabolicHandle(flag), pattern


def type_of_parabolic(p: ParabolicHandle) -> TypeSection:
    t = type_of_flag(p.flag) if p.kind == "module" else type_of_ideal_flag(p.flag)
    return t.map(comp)


def structural_type(p: ParabolicHandle) -> TypeSection:
    """{i : 1 + E_(i+1,i) lies in P} per component: the negative simple roots P contains."""
    F = p.flag.field
    d = p.d
    out = []
    for ci in range(len(p.flag.components)):
        entries = []
        for i in range(1, d):
            m = [[F.one if r == c else F.zero for c in range(d)] for r in range(d)]
            m[i][i - 1] = F.one
            g = [Matrix.identity(F, d)] * len(p.flag.components)
            g[ci] = Matrix.of(F, m)
            if all(_act_subspace(g[ci], v) == v for v in p.flag.components[ci].chain):
                entries.append(i)
        out.append(TypeTuple(d - 1, tuple(entries)))
    return TypeSection(p.flag.base, tuple(out))


# ---------------------------------------------------------------------------
# cocharacters


@dataclass(frozen=True)
class Cocharacter:
    """Per component, terms (exponent, idempotent) with t -> sum t^a e.

    Idempotents are Matrix objects for inner tuples, flat tuples (or pairs of
    flat tuples on split components) for outer ones.
    """

    terms: tuple[tuple[tuple[int, object], ...], ...]

    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(a for a, _ in comp_terms) for comp_terms in self.terms)


def _lengths(es, is_zero) -> list:
    return [e for e in es if not is_zero(e)]


def cochar_from_idemps(t: Union[IdempTuple, OuterIdempTuple]) -> Cocharacter:
    """sum_i t^(a+1-2i) e_i with a the component length (nonzero entries only)."""
    if isinstance(t, OuterIdempTuple):
        if not validate_outer_idemp(t):
            raise InvalidIdempotents("invalid outer idempotent tuple")
        from .hermitian import _alg_ops

        out = []
        for i, es in enumerate(t.es):
            nz = _lengths(es, _alg_ops(t.space, i)[2])
            a = len(nz)
            out.append(tuple((a + 1 - 2 * (k + 1), e) for k, e in enumerate(nz)))
        return Cocharacter(tuple(out))
    check_idemp(t)
    out = []
    for es in t.es:
        nz = _lengths(es, lambda e: e.is_zero())
        a = len(nz)
        out.append(tuple((a + 1 - 2 * (k + 1), e) for k, e in enumerate(nz)))
    return Cocharacter(tuple(out))


def laurent_cochar(t: IdempTuple) -> tuple[dict, ...]:
    """The cocharacter as Laurent polynomials {exponent: matrix}, one per component."""
    out = []
    for es in t.es:
        a = sum(1 for e in es if not e.is_zero())
        poly: dict[int, Matrix] = {}
        for i, e in enumerate(es, start=1):
            k = a + 1 - 2 * i
            poly[k] = poly[k] + e if k in poly else e
        out.append({k: m for k, m in poly.items() if not m.is_zero()})
    return tuple(out)


def laurent_cochar_raised(t: IdempTuple) -> tuple[dict, ...]:
    """Same cocharacter written through the raised tuple: sum_i t^(-a-1+2i) e'_(l+2-i)."""
    from .azumaya import rho_idemp

    raised = rho_idemp(t).es
    out = []
    for es, rs in zip(t.es, raised):
        a = sum(1 for e in es if not e.is_zero())
        L = len(rs)
        poly: dict[int, Matrix] = {}
        for i in range(1, L + 1):
            k = -a - 1 + 2 * i
            e = rs[L - i]
            poly[k] = poly[k] + e if k in poly else e
        out.append({k: m for k, m in poly.items() if not m.is_zero()})
    return tuple(out)


def outer_cochar_is_unitary(t: OuterIdempTuple) -> bool:
    """tau(lambda(t)) = lambda(t)^-1: tau sends the term at exponent a to the term at -a."""
    lam = cochar_from_idemps(t)
    for i, terms in enumerate(lam.terms):
        by_exp = {a: e for a, e in terms}
        for a, e in terms:
            if by_exp.get(-a) != tau_matrix(t.space, i, e):
                return False
    return True


def _terms_of(t) -> tuple[tuple[tuple[int, Matrix], ...], ...]:
    if isinstance(t, Cocharacter):
        return t.terms
    return cochar_from_idemps(t).terms


def conjugate_by_cochar(g, t) -> tuple[dict, ...]:
    """lambda(t) g lambda(t)^-1 as {exponent: matrix} per component."""
    terms = _terms_of(t)
    g = _as_element(g, len(terms))
    out = []
    for A, comp_terms in zip(g.mats, terms):
        poly: dict[int, Matrix] = {}
        for (ap, ep), (aq, eq) in itertools.product(comp_terms, repeat=2):
            k = ap - aq
            m = ep @ A @ eq
            poly[k] = poly[k] + m if k in poly else m
        out.append({k: m for k, m in poly.items() if not m.is_zero()})
    return tuple(out)


def in_limit_parabolic_laurent(g, t) -> bool:
    """No negative powers of t in lambda(t) g lambda(t)^-1."""
    return all(k >= 0 for poly in conjugate_by_cochar(g, t) for k in poly)


def _bigrading_upper(A: Matrix, es: Sequence[Matrix]) -> bool:
    for p, q in itertools.combinations(range(len(es)), 2):
        # p < q: the block e_q A e_p sits below the diagonal
        if not (es[q] @ A @ es[p]).is_zero():
            return False
    return True


def in_limit_parabolic(g, t) -> bool:
    """e_p g e_q = 0 for p > q on every component, checked for g and g^-1."""
    terms = _terms_of(t)
    g = _as_element(g, len(terms))
    for A, comp_terms in zip(g.mats, terms):
        es = [e for _, e in sorted(comp_terms, key=lambda ae: -ae[0])]
        up = _bigrading_upper(A, es)
        if up != _bigrading_upper(A.inverse(), es):
            raise AssertionError("limit parabolic membership disagrees for g and its inverse")
        if not up:
            return False
    return True


def in_levi(g, t) -> bool:
    """g commutes with every idempotent of the tuple."""
    terms = _terms_of(t)
    g = _as_element(g, len(terms))
    for A, comp_terms in zip(g.mats, terms):
        for _, e in comp_terms:
            if A @ e != e @ A:
                return False
    return True


def conj_transport(g, t: IdempTuple) -> IdempTuple:
    """(g e_1 g^-1, ..., g e_{l+1} g^-1)."""
    g = _as_element(g, len(t.es))
    es = []
    for A, comp_es in zip(g.mats, t.es):
        Ai = A.inverse()
        es.append(tuple(A @ e @ Ai for e in comp_es))
    return IdempTuple(t.base, tuple(es))


def limit_parabolic_handle(t: IdempTuple) -> ParabolicHandle:
    from .azumaya import idemp_to_flag

    return ParabolicHandle(idemp_to_flag(t), "ideal")
