"""Numerical laboratory for singular gauge potentials on punctured domains."""
from .abeffect import (
    InterferencePattern,
    SolenoidConfig,
    TwoPathSetup,
    ab_relative_phase,
    default_setup,
    enclosed_flux,
    interference_pattern,
    kappa_invariance_experiment,
)
from .calculus import (
    QuadratureConfig,
    StokesCase,
    StokesReport,
    line_integral,
    line_integral_result,
    numeric_curl,
    stokes_annular,
    surface_flux,
)
from .errors import (
    DomainError,
    FieldSingularOnSurface,
    GaugeLabError,
    InvalidN,
    MultipleInterceptions,
    NoConvergence,
    NotClosed,
    OnSolenoidShell,
    OutsideDomain,
    PathTouchesAxis,
)
from .gauge import (
    ChargeSpec,
    ChargeSpectrum,
    QuantizationReport,
    charge_spectrum,
    dirac_condition,
    holonomy,
    kappa_condition,
    kappa_spectrum,
    single_valuedness,
    string_gauge_difference,
)
from .geometry import (
    ParamPath,
    ParamSurface,
    PatchSpec,
    Point3,
    path_in_patch,
    to_cylindrical,
    winding_number,
)
from .kernels import BACKEND
from .potentials import (
    FieldSample,
    PotentialKind,
    PotentialSpec,
    eval_monopole_field,
    eval_potential,
    eval_solenoid_field,
)

__version__ = "0.1.0"
