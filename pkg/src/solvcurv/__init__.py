"""Metric solvable Lie algebras of noncompact symmetric spaces.

Build the solvable model of a symmetric space from explicit matrix bases,
deform it by sign flags (associate) or restrict it along a characteristic
grading (attach), and certify the Einstein property numerically.
"""

from .algebra import (
    BasisSet,
    StructureTensor,
    bracket,
    embed_complex,
    embed_complex_matrix,
    embed_quaternion,
    embed_quaternion_matrix,
    extract_structure_constants,
    gram_matrix,
)
from .builders import (
    AmbientRealization,
    MetricSolvLieAlgebra,
    SignFlagAssignment,
    association_flags,
    build_symmetric,
    count_constructions,
    verify_adapted,
    verify_iwasawa,
)
from .curvature import (
    CurvatureReport,
    Fingerprint,
    curvature_report,
    einstein_check,
    find_positive_plane,
    fingerprint,
    killing_form_s,
    levi_civita,
    mean_curvature,
    paper_preset_plane,
    ricci_full,
    ricci_wolter,
    sectional,
    u_form,
)
from .roots import (
    CharacteristicElement,
    LanglandsDecomposition,
    Root,
    RootSystem,
    build_root_system,
    dual_basis,
    grade,
    is_trivial_subset,
    lambda_prime,
    langlands,
)
from .transforms import associate, associate_via_ambient, attach, commute_check

__version__ = "0.1.0"

__all__ = [
    "AmbientRealization",
    "BasisSet",
    "CharacteristicElement",
    "CurvatureReport",
    "Fingerprint",
    "LanglandsDecomposition",
    "MetricSolvLieAlgebra",
    "Root",
    "RootSystem",
    "SignFlagAssignment",
    "StructureTensor",
    "associate",
    "associate_via_ambient",
    "association_flags",
    "attach",
    "bracket",
    "build_root_system",
    "build_symmetric",
    "commute_check",
    "count_constructions",
    "curvature_report",
    "dual_basis",
    "einstein_check",
    "embed_complex",
    "embed_complex_matrix",
    "embed_quaternion",
    "embed_quaternion_matrix",
    "extract_structure_constants",
    "find_positive_plane",
    "fingerprint",
    "grade",
    "gram_matrix",
    "is_trivial_subset",
    "killing_form_s",
    "lambda_prime",
    "langlands",
    "levi_civita",
    "mean_curvature",
    "paper_preset_plane",
    "ricci_full",
    "ricci_wolter",
    "sectional",
    "u_form",
    "verify_adapted",
    "verify_iwasawa",
]
