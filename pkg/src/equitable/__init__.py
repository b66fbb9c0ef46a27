"""Exact finite-dimensional modules for U_q(sl2) in its equitable presentation."""
from .errors import (
    ArtifactError, ConsistencyError, EvaluationError, NeedsHintError, NotAModuleError, NotRecurrentError,
    ParameterError, ParseError, RecognitionError, ResourceLimitError, ShapeError,
)
from .exactla import ExactMatrix, Subspace, constrained_endomorphism_space, kernel, span
from .modmodel import (
    DecompId, FreeScalars, ModuleSpec, basis_vectors, change_of_coordinates, decomposition, eta, flag, gram,
    make_spec,
)
from .recognize import (
    INDETERMINATE, Branch, RecognitionResult, ShapeTriple, detect_b, irreducibility_certificate, recognize_triple,
)
from .repkit import (
    ALL_BASES, Axis, BasisId, CanonicalFamily, Flavor, Generator, SpaceId, build_canonical, dagger_transpose_check,
    family, rep, verify_algebra,
)
from .report import Check, VerificationReport
from .scalars import Q, SYMBOLIC, Backend, format_scalar, parse_scalar, q_binom, q_factorial, q_int
from .suites import SUITES, run_suites
from .transit import rotator_rep, transition

__all__ = [
    "ArtifactError", "ConsistencyError", "EvaluationError", "NeedsHintError", "NotAModuleError", "NotRecurrentError",
    "ParameterError", "ParseError", "RecognitionError", "ResourceLimitError", "ShapeError",
    "ExactMatrix", "Subspace", "constrained_endomorphism_space", "kernel", "span",
    "DecompId", "FreeScalars", "ModuleSpec", "basis_vectors", "change_of_coordinates", "decomposition", "eta", "flag",
    "gram", "make_spec",
    "INDETERMINATE", "Branch", "RecognitionResult", "ShapeTriple", "detect_b", "irreducibility_certificate",
    "recognize_triple",
    "ALL_BASES", "Axis", "BasisId", "CanonicalFamily", "Flavor", "Generator", "SpaceId", "build_canonical",
    "dagger_transpose_check", "family", "rep", "verify_algebra",
    "Check", "VerificationReport",
    "Q", "SYMBOLIC", "Backend", "format_scalar", "parse_scalar", "q_binom", "q_factorial", "q_int",
    "SUITES", "run_suites",
    "rotator_rep", "transition",
]
