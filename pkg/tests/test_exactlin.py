import itertools
import random
from fractions import Fraction

import pytest

from flagforge.errors import ContainmentError, DimensionMismatch, FieldMismatch, NotInvertible
from flagforge.exactlin import (
    F4,
    GF,
    QQ,
    Matrix,
    Quadratic,
    Scalar,
    all_subspaces,
    complement,
    conjugate,
    contains,
    field_from_desc,
    full_space,
    general_linear,
    intersect,
    orthogonal,
    quadratic_extension,
    rref,
    span,
    sum_,
    zero_space,
)


# -- fields ----------------------------------------------------------------


def test_prime_field_arithmetic():
    F = GF(5)
    assert F.mul(3, 4) == 2
    assert F.inv(2) == 3
    assert F.sub(1, 3) == 3
    with pytest.raises(ValueError):
        GF(6)


def test_prime_field_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GF(3).inv(0)


def test_quadratic_rejects_squares_and_nesting():
    with pytest.raises(ValueError):
        Quadratic(GF(3), 1)
    with pytest.raises(ValueError):
        Quadratic(QQ, 4)
    with pytest.raises(ValueError):
        Quadratic(GF(2), 1)
    F9 = Quadratic(GF(3), 2)
    with pytest.raises(ValueError):
        Quadratic(F9, (2, 0))


def test_conjugate_over_q_is_identity():
    assert conjugate(Scalar(QQ, Fraction(3, 4))) == Scalar(QQ, Fraction(3, 4))


def test_conjugate_times_original_is_norm():
    K = Quadratic(QQ, 2)
    x = Scalar(K, (Fraction(1), Fraction(1)))
    assert conjugate(x).value == (1, -1)
    assert (x * conjugate(x)).value == (-1, 0)


def test_f9_conjugation_exhaustive(F9):
    for a in F9.elements():
        assert F9.conj(F9.conj(a)) == a
        for b in F9.elements():
            assert F9.conj(F9.mul(a, b)) == F9.mul(F9.conj(a), F9.conj(b))
            assert F9.conj(F9.add(a, b)) == F9.add(F9.conj(a), F9.conj(b))
    fixed = [a for a in F9.elements() if F9.conj(a) == a]
    assert fixed == [F9.embed(x) for x in range(3)]


def test_f4_field_axioms():
    F = F4()
    els = F.elements()
    assert len(els) == 4
    for a in els:
        assert F.conj(F.conj(a)) == a
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one
    w = F.generator()
    assert F.mul(w, w) == F.add(w, F.one)
    assert sorted(a for a in els if F.conj(a) == a) == [(0, 0), (1, 0)]


def test_field_descriptors_round_trip(F9):
    for F in (QQ, GF(3), F9, F4(), Quadratic(QQ, 5)):
        assert field_from_desc(F.desc()) == F


def test_quadratic_extension_helper():
    assert quadratic_extension(GF(2)) == F4()
    with pytest.raises(ValueError):
        quadratic_extension(GF(3))


def test_scalar_mixing_fields_fails():
    with pytest.raises(FieldMismatch):
        Scalar(GF(3), 1) + Scalar(GF(5), 1)


# -- matrices --------------------------------------------------------------


def test_rref_examples():
    assert rref(Matrix.from_ints(QQ, [[2, 4], [1, 2]])).rows == ((1, 2),)
    eye = Matrix.identity(QQ, 3)
    assert rref(eye) == eye


def test_rref_idempotent_random_gf2():
    rng = random.Random(3)
    F = GF(2)
    for _ in range(50):
        m = Matrix.of(F, [[rng.randrange(2) for _ in range(4)] for _ in range(4)])
        once = rref(m)
        assert rref(once) == once


def test_matrix_inverse_and_errors():
    F = GF(3)
    m = Matrix.from_ints(F, [[1, 2], [0, 1]])
    assert m @ m.inverse() == Matrix.identity(F, 2)
    with pytest.raises(NotInvertible):
        Matrix.from_ints(F, [[1, 1], [1, 1]]).inverse()
    with pytest.raises(DimensionMismatch):
        m @ Matrix.from_ints(F, [[1, 2, 0]])


def test_gl3_f2_has_168_elements():
    assert len(general_linear(GF(2), 3)) == 168


# -- subspaces -------------------------------------------------------------


def test_span_examples():
    F = GF(2)
    assert span(QQ, 3, []).dim == 0
    allv = [v for v in itertools.product(range(2), repeat=3) if any(v)]
    assert span(F, 3, allv).is_full()
    assert span(F, 3, [(1, 0, 0), (1, 1, 0)]).basis == ((1, 0, 0), (0, 1, 0))


def test_span_length_mismatch():
    with pytest.raises(DimensionMismatch):
        span(QQ, 3, [(1, 2)])


def test_rref_uniqueness_across_generating_sets():
    F = GF(3)
    a = span(F, 3, [(1, 2, 0), (0, 1, 1)])
    b = span(F, 3, [(1, 0, 1), (1, 1, 2), (2, 1, 0)])
    assert a == b


def test_subspace_counts():
    assert sum(1 for _ in all_subspaces(GF(2), 3)) == 16
    assert sum(1 for _ in all_subspaces(GF(3), 2)) == 6
    assert sum(1 for _ in all_subspaces(GF(2), 3, 1)) == 7


def test_sum_and_intersect_basics():
    F = GF(2)
    for v in all_subspaces(F, 3):
        assert sum_(v, zero_space(F, 3)) == v
        assert intersect(v, full_space(F, 3)) == v


def test_two_lines_span_a_plane():
    F = GF(2)
    lines = list(all_subspaces(F, 3, 1))
    for a, b in itertools.combinations(lines, 2):
        p = sum_(a, b)
        assert p.dim == 2 and contains(p, a) and contains(p, b)


def test_dimension_formula_exhaustive():
    F = GF(2)
    for n in (1, 2, 3):
        subs = list(all_subspaces(F, n))
        for v, w in itertools.product(subs, repeat=2):
            assert sum_(v, w).dim + intersect(v, w).dim == v.dim + w.dim


def test_intersection_matches_vector_enumeration_gf3():
    F = GF(3)
    rng = random.Random(11)
    subs = list(all_subspaces(F, 3))
    for _ in range(40):
        v, w = rng.choice(subs), rng.choice(subs)
        common = set(v.vectors()) & set(w.vectors())
        assert set(intersect(v, w).vectors()) == common


def test_modular_law_gf3():
    F = GF(3)
    rng = random.Random(5)
    subs = list(all_subspaces(F, 3))
    for _ in range(60):
        a, b, c = (rng.choice(subs) for _ in range(3))
        if contains(c, a):
            assert intersect(sum_(a, b), c) == sum_(a, intersect(b, c))


def test_complement():
    F = GF(2)
    subs = list(all_subspaces(F, 3))
    for v, w in itertools.product(subs, repeat=2):
        if not contains(w, v):
            with pytest.raises(ContainmentError):
                complement(v, w)
            continue
        c = complement(v, w)
        assert sum_(v, c) == w
        assert intersect(v, c).is_zero()
    assert complement(zero_space(F, 3), full_space(F, 3)) == full_space(F, 3)


def test_orthogonal_involution():
    for F in (GF(2), GF(3)):
        for v in all_subspaces(F, 3):
            o = orthogonal(v)
            assert o.dim == 3 - v.dim
            assert orthogonal(o) == v


def test_conjugate_subspace(F9):
    v = span(F9, 2, [[(1, 0), (0, 1)]])
    c = conjugate(v)
    assert c == span(F9, 2, [[(1, 0), (0, 2)]])
    assert conjugate(c) == v
