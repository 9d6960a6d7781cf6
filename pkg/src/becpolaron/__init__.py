"""Open-system dynamics of an impurity in a d-dimensional Bose-Einstein
condensate: spectral densities, memory kernels, propagators, diffusion and
energy observables, steady-state squeezing, and non-Markovianity measures.
"""

from .constants import CONSTANTS, HBAR, K_B, BOHR_RADIUS, PhysicalConstants
from .params import (CondensateParams, ImpurityParams, DerivedBath, FrohlichCheck,
                     derive_bath, critical_coupling, critical_coupling_xi_form,
                     check_frohlich, check_high_temperature, high_temperature_threshold)
from .numerics import (QuadratureSpec, ZakianConstants, DEFAULT_ZAKIAN,
                       zakian_invert, zakian_invert_grid, integrate_adaptive,
                       integrate_principal_value, hyp1f2, QuadratureError)
from .spectral import (SpectralKind, SpectralModel, KernelSample, spectral_scalar,
                       spectral_component_xx, spectral_tensor, spectral_from_modes, noise_kernel,
                       noise_kernel_t0_closed, damping_kernel_time,
                       damping_kernel_time_zero, damping_laplace, damping_fourier,
                       lambda_kernel, thermal_factor)
from .propagators import (PropagatorSamples, StabilityReport, green_laplace,
                          propagators_zakian, propagators_asymptotic_free,
                          stability_probe)
from .free_dynamics import (InitialState, SeriesOutput, RegimeWarning, HtPeak,
                            msd_numeric, msd_brute_force, superdiffusion_coefficient,
                            superdiffusion_ht_beta_form, ht_peak, energy,
                            energy_steady_t0, energy_classical)
from .steady_state import (SqueezingPoint, susceptibility_sq_and_imag,
                           position_variance_ss, momentum_variance_ss,
                           squeezing_profile)
from .non_markov import (BackflowResult, backflow_delta, non_markovianity_measure,
                         j_distance)
from .config import ScenarioConfig, RunConfig, ConfigError, default_config, load_config, write_config

__version__ = "0.1.0"
