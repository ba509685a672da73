"""flatproj: flattened projectors and what they induce.

Smoothed step/point projectors built from delta sequences, Hilbert-type and
dispersion relations with flattening-generated subtraction terms, induced
double layers and graded reflection at planar interfaces, and windowed
spectral operators (shift series, sinc spectra, sampling reconstruction).
"""

from .boundary import (
    DoubleLayerResult,
    EvanescentWaveWarning,
    FieldDecomposition,
    InterfaceScenario,
    LayerKind,
    Polarization,
    StackResult,
    decompose_field,
    double_layer_density,
    fresnel_coefficients,
    graded_interface_reflection,
    induced_layer,
    intensity_decomposition,
    kz_components,
    layer_depths,
    magnetic_layer_density,
    scenario_amplitudes,
)
from .dispersion import (
    KKIntegrand,
    KKMode,
    ModelKind,
    SusceptibilityModel,
    f_hilbert,
    kk_imag_from_real,
    kk_real_from_imag,
    model_grid,
    subtraction_expansion,
    susceptibility_eval,
)
from .errors import AccuracyError, ConvergenceError, DomainError, TransientZoneError
from .evolution import (
    WindowAxis,
    WindowSpec,
    bandpass_double_layer,
    commutator_first_order,
    duhamel_spectrum,
    graded_permittivity_profile,
    shannon_reconstruct,
    shifted_window_vs_series,
    smoothed_window,
    window_projector,
)
from .numerics import (
    Grid,
    SampledFunction,
    discrete_fourier,
    inverse_discrete_fourier,
    pv_integral,
)
from .projectors import (
    DeltaFamily,
    FlatteningParams,
    GaussOrientation,
    PointProjectorSeries,
    SwitchingSpec,
    ZETA_FLOOR,
    delta_seq,
    fourier_modulation,
    kappa,
    make_switching_function,
    point_projector_apply,
    theta_flat,
    zeta_derivative,
    zeta_flat,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ConvergenceError",
    "DeltaFamily",
    "DomainError",
    "DoubleLayerResult",
    "EvanescentWaveWarning",
    "FieldDecomposition",
    "FlatteningParams",
    "GaussOrientation",
    "Grid",
    "InterfaceScenario",
    "KKIntegrand",
    "KKMode",
    "LayerKind",
    "ModelKind",
    "PointProjectorSeries",
    "Polarization",
    "SampledFunction",
    "StackResult",
    "SusceptibilityModel",
    "SwitchingSpec",
    "TransientZoneError",
    "WindowAxis",
    "WindowSpec",
    "ZETA_FLOOR",
    "bandpass_double_layer",
    "commutator_first_order",
    "decompose_field",
    "delta_seq",
    "discrete_fourier",
    "double_layer_density",
    "duhamel_spectrum",
    "f_hilbert",
    "fourier_modulation",
    "fresnel_coefficients",
    "graded_interface_reflection",
    "graded_permittivity_profile",
    "induced_layer",
    "intensity_decomposition",
    "inverse_discrete_fourier",
    "kappa",
    "kk_imag_from_real",
    "kk_real_from_imag",
    "kz_components",
    "layer_depths",
    "magnetic_layer_density",
    "make_switching_function",
    "model_grid",
    "point_projector_apply",
    "pv_integral",
    "scenario_amplitudes",
    "shannon_reconstruct",
    "shifted_window_vs_series",
    "smoothed_window",
    "subtraction_expansion",
    "susceptibility_eval",
    "theta_flat",
    "window_projector",
    "zeta_derivative",
    "zeta_flat",
]
