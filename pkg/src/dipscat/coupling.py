"""Dipole couplings, decay rates and radiative shifts from Green functions.

All outputs are in Gamma0 units. The scalar Green contraction maps to the
coupling through one calibration constant:

    j = mu_rel1 * mu_rel2 * (3 pi c omega^2) * [u1 . G(R1, R2, omega) . u2]

(scaled units, frequencies in Omega), pinned so that -2 Im j -> 1 as the
separation of parallel unit dipoles goes to zero. Every observable in the
package inherits its normalization from this single constant.

Free space: j_free evaluates the closed-form dyadic directly.

Near the plane the coupling splits into the analytic free part plus the
plane-scattered part

    j_sc = mu1 mu2 (3 c omega^2 / 4) int_0^inf dk_par k_par (G_sc^ss + G_sc^vv),

with the integral evaluated per regime after exact variable changes:

  * radiative: k_par dk_par = -k_z dk_z turns the interval into k_z in
    [0, omega/c] with smooth integrands polynomial * exp(i k_z b),
  * evanescent: k_par dk_par = kappa dkappa with integrands decaying as
    exp(-kappa b); the s channel crosses the guided-mode pole at kappa0
    and is taken as a principal value plus its +i pi residue term, which
    is what feeds the guided mode's positive contribution to the decay
    rate.

Here b = |z1 - z_plane| + |z2 - z_plane| for scattered terms. Decay rate
and shift at a point use the scattered part only:

    gamma = mu_rel^2 omega^3 - 2 Im j_sc(z, z),    delta = Re j_sc(z, z),

because the free-space real part is absorbed into the observable
transition frequency; only the environment-induced remainder is physical.
"""

from dataclasses import dataclass

import numpy as np

from .core import C_LIGHT, Dipole, HomogeneousMedium, PlaneMedium, contract
from .green_free import g0_total
from .plane_green import (g0_ss_kz, g0_vv_kz, guided_mode_kappa, k_omega,
                          t_ss_kz, t_vv_kz)
from .quad import (QuadSpec, integrate_adaptive, integrate_evanescent_tail,
                   integrate_principal_value)

# 3 pi c in scaled units; the one calibration constant (see module docstring)
_J_PREFACTOR = 3.0 * np.pi * C_LIGHT

_COINCIDENT_TOL = 1e-12
_ON_PLANE_TOL = 1e-12
_AXIS_TOL = 1e-9


@dataclass(frozen=True)
class Coupling:
    """Aggregate of the three observables derived from one Green tensor."""

    j: complex        # environment-induced (scattered) self-coupling [Gamma0]
    gamma: float      # amplitude decay rate [Gamma0]
    delta: float      # radiative shift [Gamma0]

    def __post_init__(self):
        # nonnegative by construction; tolerance absorbs quadrature noise
        if self.gamma < -1e-9:
            raise ValueError(f"decay rate must be nonnegative, got {self.gamma!r}")


def j_free(d1, d2, omega=1.0):
    """Free-space coupling between two dipoles at distinct positions."""
    r = d2.position - d1.position
    if np.linalg.norm(r) < _COINCIDENT_TOL:
        raise ValueError("use gamma_free / delta conventions")
    g = contract(g0_total(r, HomogeneousMedium(1.0), omega),
                 d1.orientation, d2.orientation)
    return d1.mu_rel * d2.mu_rel * _J_PREFACTOR * omega ** 2 * g


def gamma_free(d, omega=1.0):
    """Free-space decay rate mu_rel^2 omega^3 [Gamma0]; shift is zero."""
    return d.mu_rel ** 2 * omega ** 3


def _require_plane_geometry(dipoles, require_on_axis):
    u0 = dipoles[0].orientation
    for d in dipoles:
        if abs(d.orientation[2]) > _AXIS_TOL:
            raise ValueError("dipole orientation must be parallel to the plane")
        if abs(abs(float(u0 @ d.orientation)) - 1.0) > _AXIS_TOL:
            raise ValueError("dipole orientations must be parallel to each other")
        if require_on_axis and (abs(d.position[0]) > _AXIS_TOL
                                or abs(d.position[1]) > _AXIS_TOL):
            raise ValueError("positions must lie on the z axis (x = y = 0)")


def _scattered_kpar_integral(z1, z2, omega, plane, spec):
    """int dk_par k_par (G_sc^ss + G_sc^vv) for on-axis points, in-plane dipoles."""
    kk = k_omega(omega)
    kap0 = guided_mode_kappa(plane, omega)
    a1 = z1 - plane.z_plane
    a2 = plane.z_plane - z2
    b = abs(a1) + abs(a2)

    def radiative(kz):
        s = g0_ss_kz(kz, a1) * t_ss_kz(kz, omega, plane) * g0_ss_kz(kz, a2)
        v = (g0_vv_kz(kz, a1, omega) * t_vv_kz(kz, omega, plane)
             * g0_vv_kz(kz, a2, omega))
        return kz * (s + v)

    rad = integrate_adaptive(radiative, 0.0, kk, spec)

    def evanescent_vv(kappa):
        kz = 1j * kappa
        return kappa * (g0_vv_kz(kz, a1, omega) * t_vv_kz(kz, omega, plane)
                        * g0_vv_kz(kz, a2, omega))

    ev_v = integrate_evanescent_tail(evanescent_vv, 0.0, b, spec)

    def evanescent_ss(kappa):
        kz = 1j * kappa
        return kappa * (g0_ss_kz(kz, a1) * t_ss_kz(kz, omega, plane)
                        * g0_ss_kz(kz, a2))

    # guided-mode pole: principal value across [0, 2 kappa0] plus the
    # retarded half-residue, then the plain exponential remainder
    residue = -(kap0 / 2.0) * np.exp(-kap0 * b)
    pv = integrate_principal_value(evanescent_ss, 0.0, 2.0 * kap0, kap0,
                                   residue, spec)
    tail = integrate_evanescent_tail(evanescent_ss, 2.0 * kap0, b, spec)
    return rad + ev_v + pv.principal_value + pv.residue_term + tail


def _free_kpar_integral(z1, z2, omega, spec):
    """int dk_par k_par (G_0^ss + G_0^vv) for distinct on-axis points.

    Cross-validation route for the analytic free-space tensor; the real
    part converges only for z1 != z2.
    """
    d = abs(z1 - z2)
    kk = k_omega(omega)

    def radiative(kz):
        return kz * (g0_ss_kz(kz, d) + g0_vv_kz(kz, d, omega))

    def evanescent(kappa):
        kz = 1j * kappa
        return kappa * (g0_ss_kz(kz, d) + g0_vv_kz(kz, d, omega))

    return (integrate_adaptive(radiative, 0.0, kk, spec)
            + integrate_evanescent_tail(evanescent, 0.0, d, spec))


def j_plane(d1, d2, omega=1.0, plane=None, spec=None, free_part="analytic",
            scattered_only=False):
    """Coupling between two on-axis dipoles in the presence of the plane.

    free_part selects how the homogeneous contribution is computed:
    "analytic" (closed-form dyadic, default) or "kspace" (radiative plus
    evanescent k-parallel integrals; slower, used for cross-validation).
    scattered_only=True returns just the plane-induced part, defined for
    coincident positions as well; that is what self-coupling uses.
    """
    if plane is None:
        raise ValueError("j_plane requires a PlaneMedium")
    spec = spec or QuadSpec()
    _require_plane_geometry((d1, d2), require_on_axis=True)
    z1 = float(d1.position[2])
    z2 = float(d2.position[2])
    if (abs(z1 - plane.z_plane) < _ON_PLANE_TOL
            or abs(z2 - plane.z_plane) < _ON_PLANE_TOL):
        raise ValueError("shift diverges on plane")

    udot = float(d1.orientation @ d2.orientation)   # +-1 after validation
    pref = d1.mu_rel * d2.mu_rel * (3.0 * C_LIGHT / 4.0) * omega ** 2
    scattered = udot * pref * _scattered_kpar_integral(z1, z2, omega, plane, spec)
    if scattered_only:
        return scattered

    if abs(z1 - z2) < _COINCIDENT_TOL:
        raise ValueError("use gamma_free / delta conventions")
    if free_part == "analytic":
        free = j_free(d1, d2, omega)
    elif free_part == "kspace":
        free = udot * pref * _free_kpar_integral(z1, z2, omega, spec)
    else:
        raise ValueError(f"unknown free_part {free_part!r}")
    return free + scattered


def gamma_and_delta(d, omega=1.0, plane=None, spec=None):
    """Decay rate and radiative shift of one dipole [Gamma0].

    Free space gives (mu_rel^2 omega^3, 0). Near the plane the scattered
    self-coupling is added; the free-space real part never enters because
    it is already absorbed into the observable transition frequency.
    """
    if plane is None:
        return (gamma_free(d, omega), 0.0)
    spec = spec or QuadSpec()
    _require_plane_geometry((d,), require_on_axis=False)
    z = float(d.position[2])
    if abs(z - plane.z_plane) < _ON_PLANE_TOL:
        raise ValueError("shift diverges on plane")
    pref = d.mu_rel ** 2 * (3.0 * C_LIGHT / 4.0) * omega ** 2
    sc = pref * _scattered_kpar_integral(z, z, omega, plane, spec)
    gamma = gamma_free(d, omega) - 2.0 * sc.imag
    return (float(gamma), float(sc.real))


def self_coupling(d, omega=1.0, plane=None, spec=None):
    """Coupling record (scattered j, gamma, delta) at one dipole position."""
    if plane is None:
        return Coupling(j=0.0 + 0.0j, gamma=gamma_free(d, omega), delta=0.0)
    spec = spec or QuadSpec()
    _require_plane_geometry((d,), require_on_axis=False)
    z = float(d.position[2])
    if abs(z - plane.z_plane) < _ON_PLANE_TOL:
        raise ValueError("shift diverges on plane")
    pref = d.mu_rel ** 2 * (3.0 * C_LIGHT / 4.0) * omega ** 2
    sc = pref * _scattered_kpar_integral(z, z, omega, plane, spec)
    return Coupling(j=complex(sc),
                    gamma=float(gamma_free(d, omega) - 2.0 * sc.imag),
                    delta=float(sc.real))
