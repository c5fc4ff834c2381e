"""Peter-Weyl Fourier analysis and local spectral radius experiments.

Numerical laboratory for the compact groups T^d and SU(2): exact
band-limited Haar quadrature, the operator-valued Fourier transform and
its inverse, central differential operators acting as Fourier
multipliers, and the local-spectrum / spectral-radius machinery built on
top of them.
"""

__version__ = "0.1.0"

from .central import (
    CentralElement,
    GeneratorCharacterTable,
    character_of_contragredient,
    dagger,
    infinitesimal_character,
)
from .derivatives import (
    apply_central_element_fd,
    left_invariant_derivative,
    left_invariant_second_derivative,
)
from .fourier import (
    BandLimitError,
    FourierCoefficients,
    SampledFunction,
    SupportSet,
    evaluate_at,
    forward_transform,
    inverse_transform,
    parseval_norm,
    random_band_limited,
    schwartz_seminorm,
    support,
)
from .groups import QuadratureGrid, SU2Group, TorusGroup, make_group
from .presets import build_preset, list_presets
from .spectral import (
    BoundsReport,
    OperatorAction,
    ResolventProbe,
    SpectrumReport,
    apply_power,
    holomorphy_check,
    local_spectrum,
    lp_norm,
    radius_sequence,
    resolvent_probe,
    sandwich_bounds,
)

__all__ = [
    "BandLimitError",
    "BoundsReport",
    "CentralElement",
    "FourierCoefficients",
    "GeneratorCharacterTable",
    "OperatorAction",
    "QuadratureGrid",
    "ResolventProbe",
    "SU2Group",
    "SampledFunction",
    "SpectrumReport",
    "SupportSet",
    "TorusGroup",
    "__version__",
    "apply_central_element_fd",
    "apply_power",
    "build_preset",
    "character_of_contragredient",
    "dagger",
    "evaluate_at",
    "forward_transform",
    "holomorphy_check",
    "infinitesimal_character",
    "inverse_transform",
    "left_invariant_derivative",
    "left_invariant_second_derivative",
    "list_presets",
    "local_spectrum",
    "lp_norm",
    "make_group",
    "parseval_norm",
    "radius_sequence",
    "random_band_limited",
    "resolvent_probe",
    "sandwich_bounds",
    "schwartz_seminorm",
    "support",
]
