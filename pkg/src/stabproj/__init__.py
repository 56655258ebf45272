"""Stability of sampled frequency responses by stable/unstable projection.

A filtered frequency response is mapped to the unit circle, expanded in a
Fourier series and split into the part analytic in the right half-plane
(stable) and the rest (unstable).  An unstable part well above the
interpolation-error floor flags an instability; its poles can be estimated
with Kung's method.
"""
from .bandlimit import (FilterSpec, RationalFilter, apply_filter, design_band_filter,
                        design_elliptic_lowpass, design_filter, evaluate)
from .decomposition import (DEFAULT_THRESHOLD_DB, Decomposition, StabilityReport,
                            reconstruct_parts, unstable_peaks, verdict)
from .disc import (DiscSamples, ErrorEstimate, FourierCoefficients, MoebiusMap,
                   UniformDiscGrid, estimate_interp_error, fft_coefficients,
                   interpolate_disc, resample_uniform, to_disc)
from .errors import *  # noqa: F401,F403
from .frf import FullAxisFrf, Frf, hermitian_extend, recombine_ssb, split_ssb
from .io import parse_csv, write_csv, write_curves
from .pipeline import AnalysisConfig, AnalysisResult, project
from .poles import (LocalRationalModel, Pole, PoleSet, hankel_matrix, kung_realization,
                    kung_unstable_poles, local_rational_fit)
from .report import Report, ReportEntry
from .synth import (AnalyticSplit, PolesResiduesSystem, analytic_split, appendix_fun,
                    appendix_function, eval_frf, period_doubling_system,
                    random_mixed_system, random_system)

__version__ = "0.1.0"
