"""Noise-channel evolution and concurrence of four-level entangled states.

The package models a pure state a|a1 b1> + b|a1 b2> + c|a2 b1> + d|a2 b2>
sent through amplitude-damping, phase-damping or depolarizing noise, either
acting on the four-level system as a whole (intraparticle) or locally on the
two two-level factors (interparticle).  It computes the Wootters concurrence
of the output both numerically and through closed forms, and analyzes
sudden death, revival and creation of entanglement along the channel
strength.
"""

from .analysis import (
    AdRevivalExtrema,
    NonMarkovParams,
    RevivalReport,
    SweepSeries,
    TrajectoryClass,
    analyze_state,
    c_tilde,
    classify_trajectory,
    compare_intra_inter,
    esd_ad_intra,
    esd_dp_intra,
    esd_pd_intra,
    golden_section_min,
    nonmarkov_p,
    p_grid,
    refine_extremum_numeric,
    revival_extrema_ad_intra,
    sweep,
)
from .channels import (
    ChannelKind,
    ChannelSpec,
    KrausSet,
    Locality,
    apply_channel,
    build_channel,
    completeness_defect,
    kraus_ad_inter,
    kraus_ad_intra,
    kraus_dp_inter,
    kraus_dp_intra,
    kraus_pd_inter,
    kraus_pd_intra,
    weyl_operator,
)
from .concurrence import (
    ADIntraParts,
    RSpectrum,
    ad_inter_spectrum,
    ad_intra_parts,
    ad_intra_spectrum,
    concurrence_ad_inter,
    concurrence_ad_intra,
    concurrence_ad_intra_polar,
    concurrence_dp_intra,
    concurrence_from_spectrum,
    concurrence_numeric,
    concurrence_pd_intra,
    dp_intra_spectrum,
    pd_intra_spectrum,
    r_matrix,
    r_spectrum,
    spin_flip,
)
from .errors import (
    ComplexStateUnsupported,
    GridTooCoarse,
    IndexOutOfRange,
    IntraentError,
    InvalidParams,
    NotHermitian,
    NotNormalized,
    NotPSD,
    ParamOutOfRange,
    TraceNotOne,
    ZeroVector,
)
from .linalg import adjoint, eig_hermitian4, mat_mul, psd_sqrt, tensor2x2
from .states import (
    DensityMatrix4,
    PolarParams,
    PureState4,
    delta_theta,
    delta_theta_defined,
    density_from_pure,
    density_violations,
    parse_state_text,
    state_from_cartesian,
    state_from_polar,
    to_polar,
    validate_density,
)
from .verification import VerificationReport, run_verification

__version__ = "0.1.0"
