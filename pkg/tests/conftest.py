import pathlib

import pytest

from flagforge.base import BaseSpace, DoubleCover, FieldComponent, Split
from flagforge.exactlin import F4, GF, QQ, Matrix, quadratic_extension
from flagforge.hermitian import HermitianSpace

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def F2():
    return GF(2)


@pytest.fixture
def F3():
    return GF(3)


@pytest.fixture
def F9():
    return quadratic_extension(GF(3), 2)


@pytest.fixture
def fixtures():
    return FIXTURES


def split_space(F, d, names=("c0",)):
    return HermitianSpace.standard(DoubleCover.all_split(BaseSpace(F, tuple(names))), d)


def field_space(d, gram=None):
    F = GF(2)
    cover = DoubleCover(BaseSpace(F, ("c0",)), (FieldComponent(F4()),))
    if gram is None:
        return HermitianSpace.standard(cover, d)
    return HermitianSpace(cover, d, (gram,))


def mixed_space(d):
    F = GF(2)
    base = BaseSpace(F, ("x", "y", "z"))
    return HermitianSpace.standard(DoubleCover(base, (Split(), FieldComponent(F4()), Split())), d)


def mat(F, rows):
    return Matrix.from_ints(F, rows)
