"""Exact lowered flags, generalized Severi-Brauer sections, hermitian flags,
idempotent tuples and limit subgroups for type A groups."""

from .base import BaseSpace, DoubleCover, FieldComponent, Restriction, Split
from .errors import FlagforgeError, SchemaError
from .exactlin import F4, GF, QQ, Matrix, Subspace, quadratic_extension, span
from .flags import ComponentFlag, GlobalLoweredFlag, TypeSection, TypeTuple
from .azumaya import IdempTuple
from .hermitian import HermitianSpace, LFlag, OuterIdempTuple, OuterTypeSection, SplitPair
from .groups import BlockPartition, Cocharacter, GroupElement, ParabolicHandle
from .suites import VerifyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BaseSpace",
    "DoubleCover",
    "FieldComponent",
    "Restriction",
    "Split",
    "FlagforgeError",
    "SchemaError",
    "F4",
    "GF",
    "QQ",
    "Matrix",
    "Subspace",
    "quadratic_extension",
    "span",
    "ComponentFlag",
    "GlobalLoweredFlag",
    "TypeSection",
    "TypeTuple",
    "IdempTuple",
    "HermitianSpace",
    "LFlag",
    "OuterIdempTuple",
    "OuterTypeSection",
    "SplitPair",
    "BlockPartition",
    "Cocharacter",
    "GroupElement",
    "ParabolicHandle",
    "VerifyReport",
    "run_suite",
]
