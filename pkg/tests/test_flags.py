import itertools
import random

import pytest

from flagforge.base import BaseSpace, Restriction
from flagforge.errors import InvalidFlag, NotInvertible
from flagforge.exactlin import GF, Matrix, general_linear, span
from flagforge.flags import (
    ComponentFlag,
    GlobalLoweredFlag,
    TypeTuple,
    act_gl,
    all_component_flags,
    all_type_tuples,
    comp,
    coordinate_flag,
    from_padded,
    glue_flags,
    is_lowered,
    lex_types,
    lower_flag,
    raise_flag,
    random_flag,
    restrict_flag,
    symmetric_types,
    type_of_flag,
    vee,
)


def _two(F, d=3):
    return BaseSpace(F, ("U", "V"))


def test_component_flag_validation(F2):
    line = span(F2, 3, [(1, 0, 0)])
    plane = span(F2, 3, [(1, 0, 0), (0, 1, 0)])
    other = span(F2, 3, [(0, 0, 1)])
    ComponentFlag(F2, 3, (line, plane))
    with pytest.raises(InvalidFlag):
        ComponentFlag(F2, 3, (plane, line))
    with pytest.raises(InvalidFlag):
        ComponentFlag(F2, 3, (other, plane))
    with pytest.raises(InvalidFlag):
        ComponentFlag(F2, 3, (line, span(F2, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])))


def test_flag_counts_over_f2(F2):
    flags = list(all_component_flags(F2, 3))
    assert len(flags) == 36
    assert sum(1 for f in flags if len(f) == 2) == 21


def test_length_bound(F2):
    rng = random.Random(0)
    base = BaseSpace.standard(F2, 3)
    for _ in range(50):
        assert random_flag(rng, base, 4).global_length < 4


def test_is_lowered_examples(F2):
    base = BaseSpace(F2, ("c0",))
    f = coordinate_flag(F2, 3, (1, 2))
    assert is_lowered(base, [f.chain])
    full = f.full()
    assert is_lowered(base, [(f.chain[0], full, full)])
    assert not is_lowered(base, [(f.chain[0], f.chain[0], full)])


def test_glue_restrict_intro_shape(F2):
    base = _two(F2)
    x = coordinate_flag(F2, 4, (1, 2))
    y = coordinate_flag(F2, 4, (1, 2, 3))
    g = glue_flags(base, [x, y])
    assert g.global_length == 3
    assert g.padded() == ((x.chain[0], x.chain[1], x.full()), y.chain)
    assert restrict_flag(g, Restriction(base, ("U",))).components == (x,)
    assert restrict_flag(g, Restriction(base, ("U",))).global_length == 2
    # the two candidates repeating a proper member are not lowered
    i1, i2 = x.chain
    assert not is_lowered(base, [(i1, i1, i2), y.chain])
    assert not is_lowered(base, [(i1, i2, i2), y.chain])


def test_glue_empty(F2):
    base = BaseSpace.standard(F2, 2)
    g = glue_flags(base, [ComponentFlag(F2, 3), ComponentFlag(F2, 3)])
    assert g.global_length == 0
    assert type_of_flag(g).as_lists() == {"c0": [], "c1": []}


def test_restriction_round_trip(F2):
    rng = random.Random(1)
    base = BaseSpace.standard(F2, 3)
    for _ in range(30):
        f = random_flag(rng, base, 3)
        pieces = [restrict_flag(f, Restriction(base, (c,))).components[0] for c in base.components]
        assert glue_flags(base, pieces) == f
        r = Restriction(base, ("c0", "c2"))
        assert restrict_flag(f, Restriction(base, base.components)) == f
        assert restrict_flag(restrict_flag(f, r), Restriction(r.target, ("c2",))) == restrict_flag(f, Restriction(base, ("c2",)))


def test_from_padded_drops_full_tail(F2):
    base = _two(F2)
    x = coordinate_flag(F2, 3, (1,))
    y = coordinate_flag(F2, 3, (1, 2))
    g = glue_flags(base, [x, y])
    assert from_padded(base, g.padded(), F2, 3) == g
    with pytest.raises(InvalidFlag):
        from_padded(base, [(x.chain[0], x.chain[0]), y.chain], F2, 3)


def test_raise_staircase(F2):
    base = _two(F2)
    x = coordinate_flag(F2, 3, (1,))
    y = coordinate_flag(F2, 3, (1, 2))
    r = raise_flag(glue_flags(base, [x, y]))
    assert r.chains[0] == (x.zero(), x.chain[0])
    assert r.chains[1] == y.chain
    assert lower_flag(r) == glue_flags(base, [x, y])


def test_raise_fixes_constant_length(F2):
    base = _two(F2)
    x = coordinate_flag(F2, 3, (1, 2))
    g = glue_flags(base, [x, x])
    assert raise_flag(g).chains == g.padded()


def test_raise_round_trip_random(F2):
    rng = random.Random(2)
    base = BaseSpace.standard(F2, 3)
    for _ in range(40):
        f = random_flag(rng, base, 4)
        r = raise_flag(f)
        assert lower_flag(r) == f
        for c, chain in zip(f.components, r.chains):
            assert set(c.chain) == {v for v in chain if not v.is_zero()}


def test_type_examples(F2):
    base = BaseSpace(F2, ("c0",))
    line = GlobalLoweredFlag(base, (coordinate_flag(F2, 4, (1,)),))
    assert type_of_flag(line).tuples[0] == TypeTuple(3, (1,))
    plane = GlobalLoweredFlag(base, (coordinate_flag(F2, 4, (2,)),))
    assert comp(type_of_flag(plane).tuples[0]) == TypeTuple(3, (1, 3))


def test_vee_comp_examples():
    assert vee(TypeTuple(3, (1, 3))) == TypeTuple(3, (1, 3))
    assert comp(TypeTuple(3, (1, 3))) == TypeTuple(3, (2,))
    assert vee(TypeTuple(4, (1, 2))) == TypeTuple(4, (3, 4))
    assert comp(TypeTuple(4, (1, 2))) == TypeTuple(4, (3, 4))


def test_type_tuple_validation():
    with pytest.raises(ValueError):
        TypeTuple(3, (2, 1))
    with pytest.raises(ValueError):
        TypeTuple(3, (4,))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_vee_comp_commuting_involutions_and_partition(n):
    all_t = all_type_tuples(n)
    assert len(all_t) == 2 ** n
    for t in all_t:
        assert vee(vee(t)) == t and comp(comp(t)) == t
        assert vee(comp(t)) == comp(vee(t))
    sym = set(symmetric_types(n))
    lex = set(lex_types(n))
    lex_v = {vee(t) for t in lex}
    assert not (sym & lex) and not (sym & lex_v) and not (lex & lex_v)
    assert sym | lex | lex_v == set(all_t)


def test_act_gl_preserves_type_exhaustive(F2):
    base = BaseSpace(F2, ("c0",))
    f = GlobalLoweredFlag(base, (coordinate_flag(F2, 3, (1, 2)),))
    t = type_of_flag(f)
    for g in general_linear(F2, 3):
        assert type_of_flag(act_gl(g, f)) == t
    assert act_gl(Matrix.identity(F2, 3), f) == f


def test_act_gl_permutation(F2):
    base = BaseSpace(F2, ("c0",))
    f = GlobalLoweredFlag(base, (coordinate_flag(F2, 3, (1,)),))
    p = Matrix.from_ints(F2, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert act_gl(p, f).components[0].chain == (span(F2, 3, [(0, 0, 1)]),)
    with pytest.raises(NotInvertible):
        act_gl(Matrix.zeros(F2, 3, 3), f)
