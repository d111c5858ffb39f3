"""Point-dipole emitters in inhomogeneous dielectrics via multiple scattering.

Decay rates, radiative shifts, medium-dressed dipole-dipole couplings and
two-atom super/subradiance, specialized to free space and a partially
reflecting plane (a delta-function dielectric sheet of strength d_eff).

Scaled units throughout: lengths in the transition wavelength lambda,
rates/shifts/couplings in the free-space rate Gamma0, frequencies in the
transition frequency Omega, so c = 1/(2 pi) and k = 2 pi omega.
"""

__version__ = "0.1.0"

from .core import (C_LIGHT, Dipole, HomogeneousMedium, PlaneMedium, Units,
                   contract)
from .coupling import (Coupling, gamma_and_delta, gamma_free, j_free, j_plane,
                       self_coupling)
from .green_free import (delta_transverse_regular, g0_longitudinal, g0_total,
                         g0_transverse, imaginary_part_at_origin,
                         volume_integral_sum_rule, wavenumber)
from .multiatom import (G_DEFAULT, AtomSystem, TMatrix, m_matrix,
                        pair_coupling, reduced_detuning, self_x, single_t,
                        t_n)
from .plane_green import (KSpaceGreen, angle_averaged_s_transmission, g0_ss,
                          g0_vv, g_scattered_ss, g_scattered_vv,
                          guided_mode_kappa, kspace_green, kz_from_kpar,
                          s_transmission_amplitude, t_ss, t_vv)
from .quad import (PVResult, QuadratureError, QuadSpec, integrate_adaptive,
                   integrate_evanescent_tail, integrate_principal_value)
from .superradiance import (PairSolution, alpha_and_amplitudes,
                            intensity_trace, pair_solution)

__all__ = [
    "__version__", "C_LIGHT", "Dipole", "HomogeneousMedium", "PlaneMedium",
    "Units", "contract", "Coupling", "gamma_and_delta", "gamma_free",
    "j_free", "j_plane", "self_coupling", "delta_transverse_regular",
    "g0_longitudinal", "g0_total", "g0_transverse",
    "imaginary_part_at_origin", "volume_integral_sum_rule", "wavenumber",
    "G_DEFAULT", "AtomSystem", "TMatrix", "m_matrix", "pair_coupling",
    "reduced_detuning", "self_x", "single_t", "t_n", "KSpaceGreen",
    "angle_averaged_s_transmission", "g0_ss", "g0_vv", "g_scattered_ss",
    "g_scattered_vv", "guided_mode_kappa", "kspace_green", "kz_from_kpar",
    "s_transmission_amplitude", "t_ss", "t_vv", "PVResult",
    "QuadratureError", "QuadSpec", "integrate_adaptive",
    "integrate_evanescent_tail", "integrate_principal_value", "PairSolution",
    "alpha_and_amplitudes", "intensity_trace", "pair_solution",
]
