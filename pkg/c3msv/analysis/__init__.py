"""Steering, decoherence, Wigner negativity and the Fock-basis cross-checks"""

from .steering import (SteeringCase, SteeringResult, RgsResult, STEERING_CASES, CASE_LABELS, get_case,
                       gaussian_steering, steering_closed_form, steering_table, steering_values,
                       monogamy_deficits, residual_gaussian_steering, steering_direction)
from .decoherence import (ChannelParams, SteeringTrajectory, evolve_cm, evolve_moments, steering_vs_time,
                          sudden_death_time, sudden_death_table, select_decay_variant)
from .schemes import (SubtractionScheme, SUBTRACTION_SCHEMES, SCHEME_TAGS, ZERO_NEGATIVITY_SCHEMES,
                      PARTIAL_ZERO_NEGATIVITY_SCHEMES, get_scheme)
from .quadrature import QuadratureSpec, QuadratureResult
from .wigner import (GaussPolyWigner, wigner_c3msv, wigner_closed_form, wigner_gaussian, negativity,
                     negativity_scan, additivity_report)
from .fock import (FockState, DensityMatrix, build_c3msv_fock, subtract_and_reduce, wigner_from_density,
                   negativity_oracle, displacement_matrix, auto_cutoff)
from .moments import MomentSpec, moment_fock, moment_generating, fock_covariance
