"""Characters of U(N) and character expansions of invariant functions.

``prod_i G(t_i)`` over the eigenvalues ``t_i`` of a unitary ``U`` is expanded
as a sum of irreducible characters whose coefficients are Toeplitz-type
minors ``det(A_{n_j + i - j})`` of the coefficients of ``G``.
"""
__version__ = "0.1.0"

from .errors import (
    ConvergenceDomainError,
    DegenerateEigenvaluesError,
    InvalidLabelError,
    ResourceLimitError,
    SingularEvaluationError,
    SingularInputError,
    UnsupportedRankError,
    UnsupportedSupportError,
)
from .partitions import (
    GeneralizedLabel,
    Partition,
    boxes,
    enumerate_labels,
    enumerate_partitions,
    format_label,
    from_exponents,
    from_m_vector,
    parse_label,
)
from .symfunc import (
    EigenvalueSet,
    char,
    char_generalized,
    char_jacobi_trudi,
    char_weyl,
    complete_symmetric,
    vandermonde,
)
from .genfunc import (
    CoefficientSequence,
    bessel_like,
    chebyshev_u,
    exponential,
    finite,
    geometric,
    quadratic,
    series_product,
)
from .expansion import Expansion, ExpansionTerm, coefficient, direct_product, expand, reconstruct
from .haar import (
    IntegralEstimate,
    UnitaryMatrix,
    bessel_check,
    eigenphases,
    extract_coefficient,
    haar_sample,
    mc_integrate,
    torus_integrate,
)
