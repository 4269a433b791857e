"""SLOCC classification of small pure states: invariants, ranks, secants and singularities."""

from .secant import secant_dimension_estimate, zak_dichotomy
from .singularity import (
    LocalGerm,
    NonIsolatedError,
    NotCriticalError,
    Poly,
    hyperplane_section_poly,
    milnor_number,
    singular_point_analysis,
    singularity_type,
)
from .tensors import (
    B1,
    B2,
    B3,
    EPR,
    GHZ,
    SEP,
    W,
    SloccClass,
    StateTensor,
    cayley_hyperdet,
    classify_3qubit,
    classify_3qubit_report,
    flattening_ranks,
    random_slocc,
    two_qubit_separable,
)

__all__ = [
    "B1", "B2", "B3", "EPR", "GHZ", "SEP", "W",
    "LocalGerm", "NonIsolatedError", "NotCriticalError", "Poly", "SloccClass", "StateTensor",
    "cayley_hyperdet", "classify_3qubit", "classify_3qubit_report", "flattening_ranks",
    "hyperplane_section_poly", "milnor_number", "random_slocc", "secant_dimension_estimate",
    "singular_point_analysis", "singularity_type", "two_qubit_separable", "zak_dichotomy",
]
