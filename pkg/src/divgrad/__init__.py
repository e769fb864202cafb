"""Division gradings on M_n(R), M_n(C) and M_n(H) in exact arithmetic."""
from .classify import (AmbientMismatch, ClassificationError, ClassificationRecord, DeferredCase, NotDivisionGrading,
                       classify, is_equivalent, is_isomorphic)
from .gda import DocumentError, format_document, format_record, parse_document, parse_record
from .graded import (BLOCK_NAMES, GradedMatrixAlgebra, GradingError, build_block, check_division_grading,
                     check_grading, coarsen_along_hom, relabel_degrees, tensor_product)
from .groups import FinAbelianGroup, GroupHom
from .matrices import MatrixExact
from .realize import canonical_representative, realize_from_invariants
from .refine import StructureConstants, clifford_presentation, double_centralizer_split, refine
from .scalars import Cyclo8, QuaternionQ2, RealQuad, scalar_format, scalar_parse

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch", "BLOCK_NAMES", "ClassificationError", "ClassificationRecord", "Cyclo8", "DeferredCase",
    "DocumentError", "FinAbelianGroup", "GradedMatrixAlgebra", "GradingError", "GroupHom", "MatrixExact",
    "NotDivisionGrading", "QuaternionQ2", "RealQuad", "StructureConstants", "build_block",
    "canonical_representative", "check_division_grading", "check_grading", "classify", "clifford_presentation",
    "coarsen_along_hom", "double_centralizer_split", "format_document", "format_record", "is_equivalent",
    "is_isomorphic", "parse_document", "parse_record", "realize_from_invariants", "refine", "relabel_degrees",
    "scalar_format", "scalar_parse", "tensor_product",
]
