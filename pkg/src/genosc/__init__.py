"""genosc: verification workbench for the Ricci-flat generalized oscillator.

Closed-form Kähler geometry, the Poisson algebra of moment-map observables,
and their exact geometric quantization on holomorphic polynomial states,
together with the numerical cross-checks tying the three layers together.
"""

__version__ = "0.1.0"

from .errors import (
    ConditioningError,
    DimensionMismatch,
    DomainError,
    ExhaustionError,
    GenoscError,
)
from .exact import ComplexRational
from .geometry import (
    MetricData,
    OscillatorParams,
    PhasePoint,
    PotentialProfile,
    metric_at,
    radial_profile,
    ricci_at,
    sample_points,
    wirtinger,
)
from .observables import (
    AlgebraElement,
    ObservableDecomposition,
    PolarizationReport,
    basis_decomposition,
    closed_form_field,
    evaluate,
    preserves_polarization,
    structure_bracket,
)
from .quantization import (
    MonomialBasis,
    QuantumOperator,
    SpectralLine,
    dirac_residual,
    monomial_basis,
    quantize,
    spectrum_of_H,
)
from .symplectic import (
    TangentVector,
    hamiltonian_field,
    lie_bracket_fields,
    omega_at,
    poisson_bracket,
)

__all__ = [
    "__version__",
    "GenoscError",
    "DomainError",
    "ConditioningError",
    "ExhaustionError",
    "DimensionMismatch",
    "ComplexRational",
    "OscillatorParams",
    "PhasePoint",
    "PotentialProfile",
    "MetricData",
    "radial_profile",
    "metric_at",
    "wirtinger",
    "ricci_at",
    "sample_points",
    "TangentVector",
    "omega_at",
    "hamiltonian_field",
    "poisson_bracket",
    "lie_bracket_fields",
    "AlgebraElement",
    "ObservableDecomposition",
    "PolarizationReport",
    "evaluate",
    "structure_bracket",
    "closed_form_field",
    "preserves_polarization",
    "basis_decomposition",
    "MonomialBasis",
    "QuantumOperator",
    "SpectralLine",
    "monomial_basis",
    "quantize",
    "dirac_residual",
    "spectrum_of_H",
]
