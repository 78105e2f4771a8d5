import pytest

from flagforge.base import (
    BaseSpace,
    DoubleCover,
    FieldComponent,
    Restriction,
    Split,
    ext_action_matrix,
    l_scalar_action,
    restrict_cover,
    scalar_action_matrix,
    swap,
)
from flagforge.errors import EmptyRestriction, FieldMismatch
from flagforge.exactlin import F4, GF, Matrix, quadratic_extension


def _mixed():
    F = GF(3)
    base = BaseSpace(F, ("c0", "c1", "c2"))
    return DoubleCover(base, (Split(), FieldComponent(quadratic_extension(F, 2)), Split()))


def test_base_space_validation():
    with pytest.raises(ValueError):
        BaseSpace(GF(2), ())
    with pytest.raises(ValueError):
        BaseSpace(GF(2), ("a", "a"))
    assert BaseSpace.standard(GF(2), 3).components == ("c0", "c1", "c2")


def test_swap_all_split():
    s = swap(DoubleCover.all_split(BaseSpace.standard(GF(2), 2)))
    assert s.perms == ((1, 0), (1, 0))
    assert not any(s.conjugates)


def test_swap_all_field():
    s = swap(DoubleCover.all_field(BaseSpace.standard(GF(3), 2), 2))
    assert s.perms == ((0,), (0,))
    assert all(s.conjugates)


def test_swap_is_order_two():
    s = swap(_mixed())
    assert s.compose(s).is_identity()
    assert not s.is_identity()


def test_field_tag_must_extend_base():
    with pytest.raises(FieldMismatch):
        DoubleCover(BaseSpace(GF(3), ("c0",)), (FieldComponent(F4()),))


def test_restrict_cover():
    cov = _mixed()
    assert restrict_cover(cov, Restriction(cov.base, cov.base.components)) == cov
    one = restrict_cover(cov, Restriction(cov.base, ("c1",)))
    assert one.base.components == ("c1",) and one.tags == (cov.tags[1],)
    with pytest.raises(EmptyRestriction):
        Restriction(cov.base, ())


def test_restriction_composition():
    cov = _mixed()
    r1 = Restriction(cov.base, ("c2", "c0"))
    assert r1.kept == ("c0", "c2")
    r2 = Restriction(r1.target, ("c2",))
    assert r1.then(r2) == Restriction(cov.base, ("c2",))
    assert restrict_cover(restrict_cover(cov, r1), r2) == restrict_cover(cov, r1.then(r2))


def test_split_scalar_action():
    cov = _mixed()
    v = (1, 2, 0)
    assert l_scalar_action(cov, "c0", 0, (1, 0), v) == v
    assert l_scalar_action(cov, "c0", 1, (1, 0), v) == (0, 0, 0)
    assert l_scalar_action(cov, "c0", 1, (1, 1), v) == v
    with pytest.raises(IndexError):
        l_scalar_action(cov, "c0", 2, (1, 1), v)


def test_field_scalar_action():
    cov = _mixed()
    ext = cov.tag("c1").ext
    v = ((1, 0), (0, 1))
    assert l_scalar_action(cov, "c1", 0, ext.one, v) == v
    with pytest.raises(FieldMismatch):
        l_scalar_action(cov, "c1", 0, 5, v)


def test_sqrt_delta_action_squares_to_delta():
    cov = _mixed()
    ext = cov.tag("c1").ext
    m = scalar_action_matrix(cov, "c1", ext.sqrt_delta(), 2)
    F = GF(3)
    assert m @ m == Matrix.identity(F, 4).scale(2)


def test_split_idempotent_of_l():
    # L = O x O on a split component; e = (1, 0)
    F = GF(2)
    e = (1, 0)
    mul = lambda a, b: tuple(F.mul(x, y) for x, y in zip(a, b))
    assert mul(e, e) == e
    assert mul(e, (0, 1)) == (0, 0)


def test_conjugation_fixes_exactly_the_base():
    for ext in (quadratic_extension(GF(3), 2), F4()):
        fixed = [a for a in ext.elements() if ext.conj(a) == a]
        assert sorted(fixed) == sorted(ext.embed(b) for b in ext.base_field().elements())
        for a in ext.elements():
            assert ext_action_matrix(ext, ext.conj(ext.conj(a))) == ext_action_matrix(ext, a)
