"""semilaurent: exact semi-linear cocycle trivialization over k((t)).

The library models truncated Laurent series over the rationals or a cyclotomic
field, matrix cocycles for multiplicative subsemigroups of N acting by
t -> t^p, and the gauge algorithms that reduce such a cocycle to a constant
representation with a checkable certificate. A separate symbolic engine
verifies the degree-one cocycle formulas for projective transformation groups
and a Cremona subgroup.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ContractionViolated,
    CyclicSearchFailed,
    DegenerateMap,
    DimMismatch,
    DivisibilityViolated,
    DivisionByZero,
    FieldExtensionRequired,
    FieldMismatch,
    IndistinguishableFromZero,
    MissingCoprimePair,
    NotACocycle,
    NotExtendable,
    NotIntegral,
    OrderNotAvailable,
    PreconditionViolated,
    SemilaurentError,
    SingularAtZero,
    SingularWithinPrecision,
    SubstitutionPole,
)
from .scalars import FieldDescriptor, Scalar, poly_roots_in_field  # noqa: F401
from .series import DEFAULT_PRECISION, LaurentSeries  # noqa: F401
from .matrices import (  # noqa: F401
    ConstantMatrix,
    SeriesMatrix,
    eigenvector_in_field,
    stable_decomposition,
)
from .cocycles import (  # noqa: F401
    ConstantRepresentation,
    GaugeTransform,
    Semigroup,
    SemigroupCocycle,
    TrivializationCertificate,
    induce_constant,
    random_gauge,
    twist,
    verify_certificate,
    verify_cocycle,
)
from .localsolve import (  # noqa: F401
    block_triangularize,
    classify_degree_one,
    cyclic_vector,
    integral_limit_gauge,
    rescale_companion,
    trivialize,
    upper_triangular_to_constant,
)
from .ratfunc import (  # noqa: F401
    MultiPoly,
    RationalFunction,
    jacobian_det,
    parse_rational,
)
from .pgl import (  # noqa: F401
    BirationalMap,
    PGLDegreeOneClass,
    ProjectiveTransform,
    cremona_identities,
    degree_one_cocycle_value,
    h_functional_equation_check,
    omega_class_check,
    transform_action,
    verify_chain_rule,
)
