"""Multifractal detrended fluctuation analysis with overlapping windows
and flexible per-segment detrending.

The pipeline mirrors the textbook MFDFA steps -- profile, segmentation,
detrending, q-order aggregation, scaling fit, Legendre transform -- with
two modifications: segments may partly overlap (stride floor(s/k)), and
the trend model may be chosen per segment from a small basis set by
coefficient of determination instead of being one fixed polynomial.
"""

from .cli import AnalysisConfig, ResultDocument, analyze_series
from .detrend import (
    BasisFunction,
    DesignFit,
    FitResult,
    FixedPolynomial,
    FlexibleBasis,
    coefficient_of_determination,
    default_basis_set,
    fit_least_squares,
    polynomial_basis,
    select_trend,
)
from .errors import InputError, NumericalError
from .fluctuation import (
    FluctuationSurface,
    default_q_grid,
    fluctuation_function,
    segment_variance,
)
from .generators import (
    CascadeOracle,
    CascadeSpec,
    FbmSpec,
    cascade_oracle,
    fgn_autocovariance,
    generate_cascade,
    generate_fgn,
)
from .segmentation import SegmentLayout, default_scale_grid, layout
from .signal import Profile, as_series, build_profile, log_returns
from .spectrum import (
    GeneralizedHurst,
    SingularitySpectrum,
    fit_hurst,
    legendre_transform,
    spectrum_width,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig", "ResultDocument", "analyze_series",
    "BasisFunction", "DesignFit", "FitResult", "FixedPolynomial", "FlexibleBasis",
    "coefficient_of_determination", "default_basis_set", "fit_least_squares",
    "polynomial_basis", "select_trend",
    "InputError", "NumericalError",
    "FluctuationSurface", "default_q_grid", "fluctuation_function", "segment_variance",
    "CascadeOracle", "CascadeSpec", "FbmSpec", "cascade_oracle",
    "fgn_autocovariance", "generate_cascade", "generate_fgn",
    "SegmentLayout", "default_scale_grid", "layout",
    "Profile", "as_series", "build_profile", "log_returns",
    "GeneralizedHurst", "SingularitySpectrum", "fit_hurst", "legendre_transform",
    "spectrum_width",
    "__version__",
]
