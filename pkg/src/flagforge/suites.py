"""Brute-force verification suites, one per acceptance property.

Each suite returns a VerifyReport; failures list the case, the expected and
the actual value.  Sampled suites are deterministic for a fixed seed.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable

from .azumaya import (
    coordinate_idemp_tuples,
    flag_to_idemp,
    idemp_to_flag,
    ideal_from_submodule,
    is_right_ideal,
    lower_idemp,
    rho_idemp,
    submodule_from_ideal,
    validate_idemp,
    _ideal_component,
)
from .base import BaseSpace, DoubleCover, FieldComponent, Restriction, Split
from .exactlin import F4, GF, QQ, Field, Matrix, all_subspaces, contains, general_linear, intersect, sum_
from .flags import (
    ComponentFlag,
    GlobalLoweredFlag,
    TypeTuple,
    all_component_flags,
    comp,
    glue_flags,
    is_lowered,
    lower_flag,
    raise_flag,
    random_flag,
    restrict_flag,
    vee,
)
from .groups import (
    Cocharacter,
    compositions,
    in_levi,
    in_limit_parabolic,
    in_limit_parabolic_laurent,
    laurent_cochar,
    laurent_cochar_raised,
    stabilizes,
    standard_parabolic,
    structural_type,
    type_of_parabolic,
)
from .hermitian import (
    HermitianSpace,
    LFlag,
    SplitPair,
    all_lflag_chains,
    all_lsubs,
    base_rank,
    gap_L,
    inner_to_outer_flag,
    is_symmetric_ideal_flag,
    lsub_contains,
    lsub_sum,
    opposite_iso,
    outer_ideal_iso,
    outer_to_inner_flag,
    outer_type,
    perp,
    pi_B,
    pi_h,
    random_lflag,
    random_symmetric_flag,
    sb_fiber,
    subrank_L,
    swap_sheets,
    tau_ann,
)

MAX_D = 4
MAX_FIELD = 4


@dataclass
class VerifyReport:
    suite: str
    cases: int = 0
    failures: list[dict] = dc_field(default_factory=list)
    wall_time: float = 0.0
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, case: Any, expected: Any, actual: Any) -> bool:
        if expected != actual:
            self.failures.append({"case": str(case), "expected": str(expected), "actual": str(actual)})
            return False
        return True

    def to_dict(self, with_time: bool = True) -> dict:
        out = {"suite": self.suite, "cases": self.cases, "passed": self.passed, "failures": self.failures}
        if self.seed is not None:
            out["seed"] = self.seed
        if with_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        seed = f" seed={self.seed}" if self.seed is not None else ""
        return f"{status} {self.suite}: {self.cases} cases, {len(self.failures)} failures ({self.wall_time:.2f}s){seed}"


@dataclass(frozen=True)
class SuiteParams:
    field: Field = GF(2)
    d: int | None = None
    seed: int = 7
    trials: int = 500


def max_enum() -> int:
    return int(os.environ.get("FLAGFORGE_MAX_ENUM", "200000"))


def _guard(p: SuiteParams, d: int):
    if d > MAX_D:
        raise ValueError(f"d = {d} exceeds the bound {MAX_D}")
    if p.field.finite and p.field.order() > MAX_FIELD:
        raise ValueError(f"|F| = {p.field.order()} exceeds the bound {MAX_FIELD}")


def _enum_guard(n: int, what: str):
    if n > max_enum():
        raise ValueError(f"{what}: {n} cases exceed FLAGFORGE_MAX_ENUM={max_enum()}")


def _finite(p: SuiteParams) -> Field:
    if not p.field.finite:
        raise ValueError("this suite enumerates and needs a finite field")
    return p.field


# ---------------------------------------------------------------------------
# suites


def ideal_bijection(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    d = p.d or 3
    _guard(p, d)
    subs = list(all_subspaces(F, d))
    ideals = [ideal_from_submodule(v) for v in subs]
    for v, I in zip(subs, ideals):
        r.cases += 1
        r.check(("V_I = V", v.basis), v, submodule_from_ideal(I))
        r.check(("rank I_V", v.basis), d * v.dim, I.dim)
        r.check(("I_(V_I) = I", v.basis), I, ideal_from_submodule(submodule_from_ideal(I)))
        r.check(("right ideal", v.basis), True, is_right_ideal(I.carrier, d))
    for (v, I), (w, J) in itertools.product(zip(subs, ideals), repeat=2):
        r.check(("order", v.basis, w.basis), contains(w, v), contains(J.carrier, I.carrier))


def _split_space(F: Field, d: int, n: int = 1) -> HermitianSpace:
    return HermitianSpace.standard(DoubleCover.all_split(BaseSpace(F, tuple(f"c{i}" for i in range(n)))), d)


def annihilator_duality(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    d = p.d or 2
    _guard(p, d)
    S = _split_space(F, d)
    subs = list(all_subspaces(F, d))
    ideals = [SplitPair(ideal_from_submodule(a).carrier, ideal_from_submodule(b).carrier) for a in subs for b in subs]
    _enum_guard(len(ideals) ** 2, "annihilator-duality")
    ann = {I: tau_ann(S, 0, I) for I in ideals}
    for I in ideals:
        r.cases += 1
        A = ann[I]
        r.check(("rank tau(0I)", I), 2 * d * d - base_rank(I), base_rank(A))
        r.check(("d divides rank", I), 0, base_rank(A) % d)
        r.check(("order two", I), I, tau_ann(S, 0, A))
    for I, J in itertools.product(ideals, repeat=2):
        if lsub_contains(J, I):
            r.check(("gap reversal", I, J), gap_L(I, J), gap_L(ann[J], ann[I]))


def perp_involution(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    d = p.d or 3
    _guard(p, d)
    S = _split_space(F, d)
    for v in all_lsubs(S, 0):
        r.cases += 1
        w = perp(S, 0, v)
        r.check(("perp perp", v), v, perp(S, 0, w))
        r.check(("rank", v), 2 * d - base_rank(v), base_rank(w))
    # field component over the quadratic extension, H = I
    if F == GF(2):
        dq = 2
        Sf = HermitianSpace.standard(DoubleCover(BaseSpace(F, ("c0",)), (FieldComponent(F4()),)), dq)
        for v in all_lsubs(Sf, 0):
            r.cases += 1
            w = perp(Sf, 0, v)
            r.check(("field perp perp", v), v, perp(Sf, 0, w))
            r.check(("field rank", v), 2 * dq - base_rank(v), base_rank(w))


def _disjoint_pairs(F: Field, d: int):
    subs = list(all_subspaces(F, d))
    return [(a, b) for a in subs for b in subs if intersect(a, b).is_zero()]


def gap_subrank(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    top = p.d or 3
    _guard(p, top)
    for d in range(1, top + 1):
        pairs = _disjoint_pairs(F, d)
        _enum_guard(len(pairs) ** 2, "gap-subrank")
        for (v0, w0), (v1, w1) in itertools.product(pairs, repeat=2):
            r.cases += 1
            v, w = SplitPair(v0, v1), SplitPair(w0, w1)
            r.check(("gap(V, V+W)", d, v, w), subrank_L(w), gap_L(v, lsub_sum(v, w)))


def _counterexample(F: Field) -> tuple[BaseSpace, list[ComponentFlag], tuple]:
    """Ideal chains of lengths 2 and 3 in Mat_4 over two components."""
    from .flags import coordinate_flag

    d = 4
    base = BaseSpace(F, ("U", "V"))
    x = _ideal_component(coordinate_flag(F, d, (1, 2)))
    y = _ideal_component(coordinate_flag(F, d, (1, 2, 3)))
    return base, [x, y], (x.full(), y.full())


def sheaf_axioms(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    d = p.d or 3
    _guard(p, d)
    rng = random.Random(p.seed)
    r.seed = p.seed
    base = BaseSpace(F, ("c0", "c1", "c2"))
    subsets = [c for k in (1, 2, 3) for c in itertools.combinations(base.components, k)]
    for trial in range(p.trials):
        pieces = [random_flag(rng, BaseSpace(F, (c,)), d).components[0] for c in base.components]
        g = glue_flags(base, pieces)
        r.cases += 1
        r.check((trial, "lowered"), True, is_lowered(base, g.padded()))
        for kept in subsets:
            res = restrict_flag(g, Restriction(base, kept))
            r.check((trial, kept), tuple(pieces[base.index(c)] for c in kept), res.components)
        # any section agreeing on every component is the glued one
        r.check((trial, "unique"), g, glue_flags(base, [g.component(c) for c in base.components]))
    # separatedness witness: two unequal non-lowered candidates, one lowered gluing
    base2, (x, y), (fx, fy) = _counterexample(F)
    i1, i2 = x.chain
    j1, j2, j3 = y.chain
    glued = glue_flags(base2, [x, y])
    expected = ((i1, i2, fx), (j1, j2, j3))
    r.cases += 1
    r.check("counterexample glue", expected, glued.padded())
    cand_a = ((i1, i1, i2), (j1, j2, j3))
    cand_b = ((i1, i2, i2), (j1, j2, j3))
    r.check("candidate 1 not lowered", False, is_lowered(base2, cand_a))
    r.check("candidate 2 not lowered", False, is_lowered(base2, cand_b))
    lowered = [
        cx for cx in itertools.product((i1, i2, fx), repeat=3)
        if set(v for v in cx if not v.is_full()) == {i1, i2} and is_lowered(base2, (cx, (j1, j2, j3)))
    ]
    r.check("unique lowered candidate", [expected[0]], lowered)
    for kept, piece in ((("U",), x), (("V",), y)):
        r.check(("counterexample restrict", kept), (piece,), restrict_flag(glued, Restriction(base2, kept)).components)


def raising_round_trip(p: SuiteParams, r: VerifyReport):
    F = _finite(p) if p.field.finite else p.field
    d = p.d or 4
    _guard(p, d)
    rng = random.Random(p.seed)
    r.seed = p.seed
    base = BaseSpace(F, ("c0", "c1", "c2"))
    for trial in range(p.trials):
        f = random_flag(rng, base, d)
        up = raise_flag(f)
        r.cases += 1
        r.check((trial, "flag"), f, lower_flag(up))
        r.check((trial, "length"), f.global_length, up.global_length)
        r.check((trial, "component lengths"), [len(c) for c in f.components], [sum(1 for v in ch if not v.is_zero()) for ch in up.chains])
        t = flag_to_idemp(f)
        r.check((trial, "idemp valid"), True, validate_idemp(t))
        rt = rho_idemp(t)
        r.check((trial, "idemp"), t, lower_idemp(rt))
        r.check((trial, "idemp length"), t.length, len(rt.es[0]))
        r.check((trial, "idemp flag"), [len(c) for c in f.components], [len(c) for c in idemp_to_flag(t).components])


def type_complement(p: SuiteParams, r: VerifyReport):
    d = p.d or 4
    _guard(p, d)
    F = p.field
    for part in compositions(d):
        handle, _ = standard_parabolic(part, F)
        r.cases += 1
        expected = comp(TypeTuple(d - 1, part.partial_sums()))
        r.check(("structural", part.parts), expected, structural_type(handle).tuples[0])
        r.check(("type map", part.parts), expected, type_of_parabolic(handle).tuples[0])
        if d == 4 and part.parts == (2, 2):
            r.check("(2,2) gives (1,3)", TypeTuple(3, (1, 3)), structural_type(handle).tuples[0])


def _gl3(F: Field):
    G = general_linear(F, 3)
    _enum_guard(len(G), "GL3")
    return G


def gl3_limit_example(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    G = _gl3(F)
    e1 = Matrix.from_ints(F, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    e2 = Matrix.from_ints(F, [[0, 0, 0], [0, 1, 0], [0, 0, 1]])
    lam = Cocharacter((((-1, e1), (-2, e2)),))
    for g in G:
        r.cases += 1
        pattern = F.is_zero(g[1, 0]) and F.is_zero(g[2, 0])
        r.check(("laurent", g.rows), pattern, in_limit_parabolic_laurent(g, lam))
        r.check(("bigrading", g.rows), pattern, in_limit_parabolic(g, lam))


def gl3_limit(p: SuiteParams, r: VerifyReport):
    gl3_limit_example(p, r)
    F = _finite(p)
    G = _gl3(F)
    for t in coordinate_idemp_tuples(F, 3):
        f = idemp_to_flag(t)
        r.check(("raised expression", t.es), laurent_cochar(t), laurent_cochar_raised(t))
        for g in G:
            r.cases += 1
            r.check(("Stab = P", t.es, g.rows), stabilizes(g, f), in_limit_parabolic(g, t))


def idemp_injectivity(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    G = _gl3(F)
    seen: dict = {}
    for t in coordinate_idemp_tuples(F, 3):
        r.cases += 1
        P = tuple(in_limit_parabolic(g, t) for g in G)
        L = tuple(in_levi(g, t) for g in G)
        r.check(("L inside P", t.es), True, all(a or not b for a, b in zip(P, L)))
        key = (P, L)
        r.check(("distinct (P, L)", t.es), None, seen.get(key))
        seen[key] = t.es


def _mixed_space(F: Field, d: int) -> HermitianSpace:
    base = BaseSpace(F, ("c0", "c1", "c2"))
    ext = F4() if F == GF(2) else None
    if ext is None:
        return HermitianSpace.standard(DoubleCover.all_split(base), d)
    return HermitianSpace.standard(DoubleCover(base, (Split(), FieldComponent(ext), Split())), d)


def outer_symmetry(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    d = p.d or 3
    _guard(p, d)
    rng = random.Random(p.seed)
    r.seed = p.seed
    S = _mixed_space(F, d)
    for trial in range(p.trials):
        f = random_lflag(rng, S)
        r.cases += 1
        r.check((trial, "pi_h order two"), f, pi_h(pi_h(f)))
        I = outer_ideal_iso(f)
        r.check((trial, "pi_B order two"), I, pi_B(pi_B(I)))
        s = random_symmetric_flag(rng, S)
        r.check((trial, "symmetric"), s, pi_h(s))
        t = outer_type(s)
        r.check((trial, "equivariant"), True, t.is_equivariant())
        r.check((trial, "swap"), t.swapped(), outer_type(swap_sheets(s)))
        r.check((trial, "swap symmetric"), True, pi_h(swap_sheets(s)) == swap_sheets(s))
        for i, ts in enumerate(t.tuples):
            if not S.is_split(i):
                r.check((trial, "r = r^v"), ts[0], vee(ts[0]))
        Is = outer_ideal_iso(s)
        r.check((trial, "ideal symmetric"), True, is_symmetric_ideal_flag(Is))
        r.check((trial, "ideal type"), t, outer_type(Is))
    # exhaustive bijection on one split component
    S1 = _split_space(F, d)
    base = S1.base
    fixed = set()
    for chain in all_lflag_chains(S1, 0):
        if pi_h(LFlag(S1, (chain,))).chains[0] == chain:
            fixed.add(chain)
    inner = [GlobalLoweredFlag(base, (c,)) for c in all_component_flags(F, d)]
    images = set()
    for f in inner:
        r.cases += 1
        o = inner_to_outer_flag(f, S1)
        images.add(o.chains[0])
        r.check(("round trip", f.components[0].dims()), f, outer_to_inner_flag(o))
    r.check("count inner = fixed", len(inner), len(fixed))
    r.check("images = fixed", True, images == fixed)


def sb_fiber_count(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    d = p.d or 3
    _guard(p, d)
    S = _split_space(F, d)
    sections = []
    for chain in all_lflag_chains(S, 0):
        f = LFlag(S, (chain,))
        if pi_h(f) == f:
            sections.append(outer_ideal_iso(f))
    lines = sum(1 for _ in all_subspaces(F, d, 1))
    r.cases = len(sections)
    over0 = [s for s in sections if sb_fiber(s, 0)]
    over1 = [s for s in sections if sb_fiber(s, 1)]
    r.check("fiber over sheet 0", lines, len(over0))
    r.check("fiber over sheet 1", lines, len(over1))
    r.check("whole orbit", 2 * lines, sum(1 for s in sections if sb_fiber(s, None)))
    images = []
    n = d - 1
    for s in over0:
        o = opposite_iso(s)
        images.append(o)
        r.check(("op involutive", s.chains), s, opposite_iso(o))
        r.check(("op type", s.chains), outer_type(s).map(vee), outer_type(o))
        r.check(("op lands on sheet 1", s.chains), True, sb_fiber(o, 1))
        r.check(("(1) to (n)", s.chains), (TypeTuple(n, (n,)), TypeTuple(n, (1,))), outer_type(o).tuples[0])
    r.check("op is a bijection of fibers", set(over1), set(images))


def pih_involution(p: SuiteParams, r: VerifyReport):
    F = _finite(p)
    d = p.d or 3
    _guard(p, d)
    rng = random.Random(p.seed)
    r.seed = p.seed
    S = _mixed_space(F, d)
    for trial in range(p.trials):
        f = random_lflag(rng, S)
        r.cases += 1
        r.check(trial, f, pi_h(pi_h(f)))


SUITES: dict[str, Callable[[SuiteParams, VerifyReport], None]] = {
    "ideal-bijection": ideal_bijection,
    "annihilator-duality": annihilator_duality,
    "perp-involution": perp_involution,
    "gap-subrank": gap_subrank,
    "sheaf-axioms": sheaf_axioms,
    "raising-round-trip": raising_round_trip,
    "type-complement": type_complement,
    "gl3-limit": gl3_limit,
    "idemp-injectivity": idemp_injectivity,
    "outer-symmetry": outer_symmetry,
    "sb-fiber-count": sb_fiber_count,
}

EXTRA_SUITES: dict[str, Callable[[SuiteParams, VerifyReport], None]] = {
    "gl3-limit-example": gl3_limit_example,
    "pih-involution": pih_involution,
}


def run_suite(name: str, field: Field | None = None, d: int | None = None, seed: int = 7, trials: int = 500) -> VerifyReport:
    fn = SUITES.get(name) or EXTRA_SUITES.get(name)
    if fn is None:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(list(SUITES) + list(EXTRA_SUITES))}")
    params = SuiteParams(field or GF(2), d, seed, trials)
    report = VerifyReport(name)
    start = time.perf_counter()
    fn(params, report)
    report.wall_time = time.perf_counter() - start
    return report


def run_all(**kw) -> list[VerifyReport]:
    return [run_suite(name, **kw) for name in SUITES]
