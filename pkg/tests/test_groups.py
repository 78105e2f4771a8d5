import itertools

import pytest

from conftest import field_space, split_space
from flagforge.azumaya import IdempTuple, coordinate_idemp_tuples, coordinate_idempotent, idemp_to_flag
from flagforge.base import BaseSpace
from flagforge.errors import NotInvertible
from flagforge.exactlin import GF, Matrix, general_linear
from flagforge.flags import GlobalLoweredFlag, TypeTuple, comp, coordinate_flag
from flagforge.groups import (
    BlockPartition,
    GroupElement,
    compositions,
    conj_transport,
    conjugate_by_cochar,
    in_levi,
    in_limit_parabolic,
    in_limit_parabolic_laurent,
    is_unitary,
    laurent_cochar,
    laurent_cochar_raised,
    limit_parabolic_handle,
    outer_cochar_is_unitary,
    stabilizes,
    standard_parabolic,
    structural_type,
    type_of_parabolic,
)
from flagforge.hermitian import outer_idemp_from_inner

GL3 = list(general_linear(GF(2), 3))


def _diag3(F):
    return IdempTuple(BaseSpace(F, ("c0",)), (tuple(coordinate_idempotent(F, 3, [i]) for i in range(3)),))


def test_gl3_order():
    assert len(GL3) == 168


def test_borel_stabilizer(F2):
    f = GlobalLoweredFlag(BaseSpace(F2, ("c0",)), (coordinate_flag(F2, 3, (1, 2)),))
    assert sum(1 for g in GL3 if stabilizes(g, f)) == 8


def test_group_element(F2):
    a = Matrix.from_ints(F2, [[1, 1], [0, 1]])
    g = GroupElement((a, Matrix.identity(F2, 2)))
    assert (g @ g.inverse()).mats == (Matrix.identity(F2, 2),) * 2
    with pytest.raises(NotInvertible):
        GroupElement((Matrix.zeros(F2, 2, 2),))


def test_limit_parabolic_three_ways_agree(F2):
    for t in coordinate_idemp_tuples(F2, 3):
        handle = limit_parabolic_handle(t)
        for g in GL3:
            a = in_limit_parabolic(g, t)
            assert a == in_limit_parabolic_laurent(g, t)
            assert a == handle.contains(g)


def test_limit_and_levi_pairs_distinct(F2):
    pairs = set()
    for t in coordinate_idemp_tuples(F2, 3):
        p = frozenset(i for i, g in enumerate(GL3) if in_limit_parabolic(g, t))
        l = frozenset(i for i, g in enumerate(GL3) if in_levi(g, t))
        assert l <= p
        pairs.add((p, l))
    assert len(pairs) == 13


def test_levi_sizes(F2):
    assert sum(1 for g in GL3 if in_levi(g, _diag3(F2))) == 1
    base = BaseSpace(F2, ("c0",))
    t = IdempTuple(base, ((coordinate_idempotent(F2, 3, [0, 1]), coordinate_idempotent(F2, 3, [2])),))
    assert sum(1 for g in GL3 if in_levi(g, t)) == 6
    assert sum(1 for g in GL3 if in_limit_parabolic(g, t)) == 24


def test_conjugate_by_cochar_levi_is_degree_zero(F2):
    t = _diag3(F2)
    for g in GL3[:30]:
        poly = conjugate_by_cochar(g, t)[0]
        assert (set(poly) <= {0}) == in_levi(g, t)


def test_raised_cochar_agrees(F2):
    for t in coordinate_idemp_tuples(F2, 3):
        assert laurent_cochar(t) == laurent_cochar_raised(t)


def test_conj_transport_conjugates_parabolic(F2):
    t = _diag3(F2)
    for h in GL3[:12]:
        s = conj_transport(h, t)
        hi = h.inverse()
        for g in GL3[::7]:
            assert in_limit_parabolic(g, s) == in_limit_parabolic(hi @ g @ h, t)


def test_compositions():
    assert len(compositions(4)) == 8
    assert {c.parts for c in compositions(3)} == {(3,), (1, 2), (2, 1), (1, 1, 1)}
    with pytest.raises(ValueError):
        BlockPartition((2, 0))


def test_standard_parabolic_pattern(F2):
    handle, pattern = standard_parabolic(BlockPartition((1, 2)), F2)
    for g in GL3:
        allowed = all(pattern[i][j] or g.rows[i][j] == 0 for i in range(3) for j in range(3))
        assert allowed == handle.contains(g)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_type_of_standard_parabolics(d):
    F = GF(2)
    for p in compositions(d):
        handle, _ = standard_parabolic(p, F)
        assert type_of_parabolic(handle) == structural_type(handle)


def test_two_two_example():
    handle, _ = standard_parabolic(BlockPartition((2, 2)), GF(2))
    assert type_of_parabolic(handle).tuples[0] == TypeTuple(3, (1, 3))
    assert comp(TypeTuple(3, (1, 3))) == TypeTuple(3, (2,))


def test_unitary_examples():
    space = field_space(2)
    F = space.carrier_field(0)
    o, z = F.one, F.zero
    assert is_unitary(Matrix.of(F, [[z, o], [o, z]]), space)
    assert not is_unitary(Matrix.of(F, [[o, o], [z, o]]), space)
    # split components impose nothing
    assert is_unitary(Matrix.from_ints(GF(2), [[1, 1], [0, 1]]), split_space(GF(2), 2))


def test_outer_cochar_unitary(F2):
    space = split_space(F2, 3)
    for t in coordinate_idemp_tuples(F2, 3):
        assert outer_cochar_is_unitary(outer_idemp_from_inner(space, t))


def test_idemp_flag_type_matches_parabolic(F2):
    t = IdempTuple(BaseSpace(F2, ("c0",)), ((coordinate_idempotent(F2, 3, [0]), coordinate_idempotent(F2, 3, [1, 2])),))
    handle = limit_parabolic_handle(t)
    assert handle.d == 3
    assert type_of_parabolic(handle).tuples[0] == comp(TypeTuple(2, (1,)))
    assert idemp_to_flag(t) == handle.flag
