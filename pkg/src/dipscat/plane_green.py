"""Plane-wave (k-parallel) Green components for a partially reflecting plane.

An infinitely thin plane normal to z scatters s- and p-polarized waves
independently; its strength is the single effective thickness d_eff. For
in-plane wavevector k_par at frequency omega the normal wavevector is

    k_z = sqrt((omega/c)^2 - k_par^2),   branch Im k_z >= 0,

real in the radiative regime k_par < omega/c and equal to i kappa with
kappa > 0 in the evanescent regime. All wavevectors in this module are in
1/lambda units, so omega/c evaluates to 2 pi omega.

Free propagator per polarization leg:

    G_0^ss = exp(i k_z |z1 - z2|) / (2 i k_z),   G_0^vv = (k_z c/omega)^2 G_0^ss

Plane T-matrices (per polarization, on the Im k_z >= 0 branch):

    T^ss = -[ (d_eff (omega/c)^2)^-1 - i/(2 k_z) ]^-1
    T^vv = -[ (d_eff (omega/c)^2)^-1 - i k_z c^2/(2 omega^2) ]^-1

T^ss has a real pole in the evanescent regime at kappa0 = d_eff (omega/c)^2 / 2
(a guided mode, handled by pole-aware quadrature in the coupling module);
T^vv has none. The plane-scattered Green component is the one-bounce product
G_0 (source to plane) * T * G_0 (plane to observer), exact for a single
plane because repeated bounces are already summed inside T.
"""

from dataclasses import dataclass

import numpy as np

from .core import C_LIGHT, PlaneMedium
from .quad import QuadSpec, integrate_adaptive

_POLE_TOL = 1e-12


def k_omega(omega):
    """omega/c in 1/lambda units."""
    return omega / C_LIGHT


def guided_mode_kappa(plane, omega=1.0):
    """Evanescent decay constant kappa0 of the s-polarized guided mode."""
    return plane.d_eff * k_omega(omega) ** 2 / 2.0


def kz_from_kpar(k_par, omega=1.0):
    """Normal wavevector on the Im k_z >= 0 branch; 0 gets rejected."""
    kk = k_omega(omega)
    if k_par == kk:
        raise ValueError("k_z = 0; integrate in the k_z variable")
    if k_par < kk:
        return complex(np.sqrt(kk ** 2 - k_par ** 2))
    return 1j * np.sqrt(k_par ** 2 - kk ** 2)


# Internal kernels parametrized directly by k_z (complex, Im >= 0). The
# quadrature in the coupling module substitutes variables so these are
# evaluated on arrays of real k_z (radiative) or k_z = i kappa (evanescent)
# and the k_par = omega/c point is never sampled.

def g0_ss_kz(kz, dz):
    return np.exp(1j * kz * abs(dz)) / (2j * kz)


def g0_vv_kz(kz, dz, omega=1.0):
    return (kz / k_omega(omega)) ** 2 * g0_ss_kz(kz, dz)


def t_ss_kz(kz, omega, plane):
    strength = plane.d_eff * k_omega(omega) ** 2
    return -1.0 / (1.0 / strength - 1j / (2.0 * kz))


def t_vv_kz(kz, omega, plane):
    strength = plane.d_eff * k_omega(omega) ** 2
    return -1.0 / (1.0 / strength - 1j * kz / (2.0 * k_omega(omega) ** 2))


# Public single-point operations in the k_par variable.

def g0_ss(k_par, z1, z2, omega=1.0):
    """Free s-polarized component exp(i k_z |z1-z2|)/(2 i k_z)."""
    if k_par < 0:
        raise ValueError("k_par must be nonnegative")
    return complex(g0_ss_kz(kz_from_kpar(k_par, omega), z1 - z2))


def g0_vv(k_par, z1, z2, omega=1.0):
    """Free p-polarized component (k_z c / omega)^2 G_0^ss."""
    if k_par < 0:
        raise ValueError("k_par must be nonnegative")
    return complex(g0_vv_kz(kz_from_kpar(k_par, omega), z1 - z2, omega))


def t_ss(k_par, omega, plane):
    """s-polarization plane T-matrix; errors on the guided-mode pole."""
    kz = kz_from_kpar(k_par, omega)
    if kz.real == 0.0:
        kappa = kz.imag
        if abs(kappa - guided_mode_kappa(plane, omega)) < _POLE_TOL:
            raise ValueError("on guided-mode pole; use pole-aware quadrature")
    return complex(t_ss_kz(kz, omega, plane))


def t_vv(k_par, omega, plane):
    """p-polarization plane T-matrix; no evanescent pole exists."""
    return complex(t_vv_kz(kz_from_kpar(k_par, omega), omega, plane))


def g_scattered_ss(k_par, z1, z2, omega, plane):
    """Plane-scattered s component G_0(z1, zp) T^ss G_0(zp, z2)."""
    kz = kz_from_kpar(k_par, omega)
    if kz.real == 0.0 and abs(kz.imag - guided_mode_kappa(plane, omega)) < _POLE_TOL:
        raise ValueError("on guided-mode pole; use pole-aware quadrature")
    return complex(g0_ss_kz(kz, z1 - plane.z_plane) * t_ss_kz(kz, omega, plane)
                   * g0_ss_kz(kz, plane.z_plane - z2))


def g_scattered_vv(k_par, z1, z2, omega, plane):
    """Plane-scattered p component G_0^vv T^vv G_0^vv."""
    kz = kz_from_kpar(k_par, omega)
    return complex(g0_vv_kz(kz, z1 - plane.z_plane, omega)
                   * t_vv_kz(kz, omega, plane)
                   * g0_vv_kz(kz, plane.z_plane - z2, omega))


@dataclass(frozen=True)
class KSpaceGreen:
    """One k-parallel sample of the s and p Green components."""

    k_par: float
    k_z: complex          # Im k_z >= 0 branch
    g_ss: complex
    g_vv: complex
    regime: str           # "radiative" or "evanescent"


def kspace_green(k_par, z1, z2, omega=1.0, plane=None):
    """Sample the total (free plus plane-scattered) components at one k_par."""
    kz = kz_from_kpar(k_par, omega)
    gss = g0_ss_kz(kz, z1 - z2)
    gvv = g0_vv_kz(kz, z1 - z2, omega)
    if plane is not None:
        gss = gss + g_scattered_ss(k_par, z1, z2, omega, plane)
        gvv = gvv + g_scattered_vv(k_par, z1, z2, omega, plane)
    regime = "radiative" if kz.real > 0.0 else "evanescent"
    return KSpaceGreen(k_par=float(k_par), k_z=complex(kz),
                       g_ss=complex(gss), g_vv=complex(gvv), regime=regime)


def s_transmission_amplitude(kz, omega, plane):
    """Transmission amplitude t = 1 + T^ss/(2 i k_z) for a real k_z mode.

    The transmitted field is the incident wave plus the forward-scattered
    wave with propagator 1/(2 i k_z); for the lossless plane |t|^2 + |r|^2
    = 1 with r = T^ss/(2 i k_z).
    """
    return 1.0 + t_ss_kz(kz, omega, plane) / (2j * kz)


def angle_averaged_s_transmission(plane, omega=1.0, spec=None):
    """Intensity transmission of s-polarized light averaged over angles.

    Averages |t(cos theta)|^2 over the incidence hemisphere, with
    k_z = (omega/c) cos theta; by symmetry this equals the full-sphere
    average. Returned value lies in [0, 1].
    """
    spec = spec or QuadSpec()
    kk = k_omega(omega)

    def integrand(mu):
        t = s_transmission_amplitude(kk * mu, omega, plane)
        return np.abs(t) ** 2 + 0.0j

    value = integrate_adaptive(integrand, 0.0, 1.0, spec)
    return float(value.real)
