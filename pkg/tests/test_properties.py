import random

from hypothesis import given, settings
from hypothesis import strategies as st

from flagforge.azumaya import (
    flag_to_ideal_flag,
    flag_to_idemp,
    idemp_problems,
    idemp_to_flag,
    lower_idemp,
    rho_idemp,
)
from flagforge.base import BaseSpace, Restriction
from flagforge.exactlin import GF, QQ, Matrix, orthogonal, rref
from flagforge.flags import (
    TypeTuple,
    comp,
    glue_flags,
    lower_flag,
    raise_flag,
    random_flag,
    restrict_flag,
    type_of_flag,
    vee,
)
from flagforge.hermitian import outer_type, pi_h, random_lflag, random_symmetric_flag, swap_sheets
from conftest import mixed_space

seeds = st.integers(min_value=0, max_value=2 ** 32)
fields = st.sampled_from([GF(2), GF(3), GF(5)])


@st.composite
def type_tuples(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    entries = draw(st.sets(st.integers(min_value=1, max_value=n)))
    return TypeTuple(n, tuple(sorted(entries)))


@given(type_tuples())
def test_vee_and_comp_commute(t):
    assert vee(comp(t)) == comp(vee(t))
    assert vee(vee(t)) == t and comp(comp(t)) == t
    assert len(comp(t).entries) == t.n - len(t.entries)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_is_idempotent_over_q(rows):
    m = Matrix.of(QQ, [tuple(QQ.decode(x) for x in r) for r in rows])
    once = rref(m)
    assert rref(once) == once


@given(fields, st.integers(1, 4), seeds)
@settings(max_examples=40, deadline=None)
def test_restrict_then_glue_is_identity(F, d, seed):
    rng = random.Random(seed)
    base = BaseSpace.standard(F, 3)
    f = random_flag(rng, base, d)
    pieces = [restrict_flag(f, Restriction(base, (c,))).components[0] for c in base.components]
    assert glue_flags(base, pieces) == f


@given(fields, st.integers(1, 4), seeds)
@settings(max_examples=40, deadline=None)
def test_raise_lower_inverse(F, d, seed):
    f = random_flag(random.Random(seed), BaseSpace.standard(F, 2), d)
    assert lower_flag(raise_flag(f)) == f
    assert raise_flag(f).global_length == f.global_length


@given(st.sampled_from([GF(2), GF(3)]), st.integers(1, 3), seeds)
@settings(max_examples=30, deadline=None)
def test_flag_idempotent_section(F, d, seed):
    f = random_flag(random.Random(seed), BaseSpace.standard(F, 2), d)
    t = flag_to_idemp(f)
    assert idemp_problems(t) == []
    assert idemp_to_flag(t) == flag_to_ideal_flag(f)
    assert lower_idemp(rho_idemp(t)) == t


@given(fields, st.integers(1, 5), seeds)
@settings(max_examples=40, deadline=None)
def test_orthogonal_is_involution(F, d, seed):
    f = random_flag(random.Random(seed), BaseSpace(F, ("c0",)), d)
    for v in f.components[0].chain:
        w = orthogonal(v)
        assert w.dim == d - v.dim
        assert orthogonal(w) == v


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_pi_h_order_two_on_mixed_cover(seed):
    f = random_lflag(random.Random(seed), mixed_space(3))
    assert pi_h(pi_h(f)) == f


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_symmetric_types_are_equivariant(seed):
    f = random_symmetric_flag(random.Random(seed), mixed_space(3))
    t = outer_type(f)
    assert t.is_equivariant()
    assert outer_type(swap_sheets(f)) == t.swapped()


@given(fields, st.integers(2, 4), seeds)
@settings(max_examples=30, deadline=None)
def test_type_is_gl_invariant(F, d, seed):
    from flagforge.flags import act_gl

    rng = random.Random(seed)
    f = random_flag(rng, BaseSpace(F, ("c0",)), d)
    while True:
        g = Matrix.of(F, [tuple(rng.randrange(F.p) for _ in range(d)) for _ in range(d)])
        if g.is_invertible():
            break
    assert type_of_flag(act_gl(g, f)) == type_of_flag(f)
