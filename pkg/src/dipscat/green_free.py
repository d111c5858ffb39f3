"""Closed-form dyadic Green functions of a homogeneous dielectric.

Convention: the scalar Green function of (nabla^2 + k^2) g = delta(r) is
g(r) = -exp(ikr)/(4 pi r) with k = n omega / c, and the dyadic solution of
the vector wave equation splits into transverse and longitudinal parts

  G_T(r) = -(I - 3 rr)/(4 pi k^2 r^3) - (e^{ikr}/(4 pi r)) [P(ikr) I + Q(ikr) rr]
  G_L(r) = +(I - 3 rr)/(4 pi k^2 r^3)   (regular part; the delta term is
                                         a documented weight, see below)

with P(z) = 1 - 1/z + 1/z^2 and Q(z) = -1 + 3/z - 3/z^2. The static
r^-3 dipole terms cancel in the sum, so the full tensor is

  G_0(r) = -(e^{ikr}/(4 pi r)) [P(ikr) I + Q(ikr) rr].

Distributional delta contributions are never returned pointwise. The
transverse delta dyadic carries weight DELTA_T_WEIGHT = 2/3 and the
longitudinal one DELTA_L_WEIGHT = 1/3 (they sum to the full delta); the
only place they matter numerically is the sum-rule volume integral, where
the regular parts integrate to zero with the sphere radius.

Small arguments: evaluating e^z P(z) directly below |z| ~ 1e-3 loses
digits to cancellation between the 1/z and 1/z^2 pieces, so the kernels
switch to an exact Laurent head plus a Taylor series:

  e^z P(z)       = 1/z^2 + sum_m [1/m! - 1/(m+1)! + 1/(m+2)!] z^m
  e^z (P+Q)(z)   = -2/z^2 + sum_m [2/(m+1)! - 2/(m+2)!] z^m
"""

from math import factorial

import numpy as np

from .core import C_LIGHT, HomogeneousMedium
from .quad import QuadSpec, integrate_adaptive

DELTA_T_WEIGHT = 2.0 / 3.0   # weight of delta(r) I in the transverse delta dyadic
DELTA_L_WEIGHT = 1.0 / 3.0   # weight of delta(r) I in the longitudinal one

_SMALL_Z = 1e-3
_N_SERIES = 12
_CP = np.array([1.0 / factorial(m) - 1.0 / factorial(m + 1) + 1.0 / factorial(m + 2)
                for m in range(_N_SERIES)])
_CPQ = np.array([2.0 / factorial(m + 1) - 2.0 / factorial(m + 2)
                 for m in range(_N_SERIES)])


def wavenumber(medium, omega):
    """k = n omega / c in 1/lambda units; equals 2 pi n omega."""
    return medium.n * omega / C_LIGHT


def exp_p(z):
    """e^z (1 - 1/z + 1/z^2), stable for small |z|. Scalar or array."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < _SMALL_Z
    out = np.empty_like(z)
    zb = np.where(small, 1.0, z)  # avoid 0-division warnings on masked lanes
    out[...] = np.exp(zb) * (1.0 - 1.0 / zb + 1.0 / zb ** 2)
    if np.any(small):
        zs = z[small]
        acc = np.zeros_like(zs)
        for c in _CP[::-1]:
            acc = acc * zs + c
        out[small] = 1.0 / zs ** 2 + acc
    return out if out.shape else complex(out)


def exp_pq(z):
    """e^z (P(z) + Q(z)) = e^z (2/z - 2/z^2), stable for small |z|."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < _SMALL_Z
    out = np.empty_like(z)
    zb = np.where(small, 1.0, z)
    out[...] = np.exp(zb) * (2.0 / zb - 2.0 / zb ** 2)
    if np.any(small):
        zs = z[small]
        acc = np.zeros_like(zs)
        for c in _CPQ[::-1]:
            acc = acc * zs + c
        out[small] = -2.0 / zs ** 2 + acc
    return out if out.shape else complex(out)


def _geometry(r):
    r = np.asarray(r, dtype=float).reshape(3)
    rn = float(np.linalg.norm(r))
    if rn == 0.0:
        return rn, None
    rhat = r / rn
    return rn, np.outer(rhat, rhat)


def g0_total(r, medium=HomogeneousMedium(1.0), omega=1.0):
    """Full free-space dyadic G_0(r) = G_T + regular G_L (no delta terms)."""
    rn, rr = _geometry(r)
    if rn == 0.0:
        raise ValueError(
            "transverse Green tensor singular at origin; use imaginary_part_at_origin")
    k = wavenumber(medium, omega)
    z = 1j * k * rn
    perp = exp_p(z)                # coefficient for directions normal to r
    para = exp_pq(z)               # coefficient along r
    eye = np.eye(3)
    return (-1.0 / (4.0 * np.pi * rn)) * (perp * (eye - rr) + para * rr)


def g0_transverse(r, medium=HomogeneousMedium(1.0), omega=1.0):
    """Transverse part G_T, including its near-field r^-3 dipole term."""
    rn, rr = _geometry(r)
    if rn == 0.0:
        raise ValueError(
            "transverse Green tensor singular at origin; use imaginary_part_at_origin")
    k = wavenumber(medium, omega)
    dipole = (np.eye(3) - 3.0 * rr) / (4.0 * np.pi * k ** 2 * rn ** 3)
    return g0_total(r, medium, omega) - dipole


def g0_longitudinal(r, medium=HomogeneousMedium(1.0), omega=1.0):
    """Regular part of G_L; the delta(r)/(3 k^2) term is never pointwise."""
    rn, rr = _geometry(r)
    if rn == 0.0:
        raise ValueError("longitudinal Green tensor is distributional at origin")
    k = wavenumber(medium, omega)
    return (np.eye(3) - 3.0 * rr) / (4.0 * np.pi * k ** 2 * rn ** 3)


def delta_transverse_regular(r):
    """Regular dipole part -(I - 3 rr)/(4 pi r^3) of the transverse delta."""
    rn, rr = _geometry(r)
    if rn == 0.0:
        raise ValueError("transverse delta dyadic singular at origin")
    return -(np.eye(3) - 3.0 * rr) / (4.0 * np.pi * rn ** 3)


def imaginary_part_at_origin(medium=HomogeneousMedium(1.0), omega=1.0):
    """Im[u . G_T(r -> 0) . u] = -n omega / (6 pi c), orientation-free."""
    return -medium.n * omega / (6.0 * np.pi * C_LIGHT)


def volume_integral_sum_rule(radius, omega=1.0, spec=None):
    """Volume integral of u . (regular K_0) . u over a sphere of given radius.

    K_0 coincides with G_0 away from the origin, so the integrand is the
    full regular tensor contracted twice with a fixed unit dipole (taken
    along z; the result is orientation-free). Done as nested 1-D adaptive
    quadrature: inner over the polar cosine, outer over the radius. The
    r^-3 pieces integrate to zero over angles, so the result vanishes as
    radius^2 for small spheres and the delta-term weights dominate there.
    """
    if not radius > 0.0:
        raise ValueError("sum-rule radius must be positive")
    if not radius < 0.5:
        raise ValueError("sum-rule radius must stay below half a wavelength")
    spec = spec or QuadSpec()
    k = wavenumber(HomogeneousMedium(1.0), omega)

    def shell(rs):
        out = np.empty(rs.shape, dtype=complex)
        for i, r in enumerate(rs):
            z = 1j * k * r
            perp = exp_p(z)
            para = exp_pq(z)

            def angular(mu, perp=perp, para=para):
                return perp * (1.0 - mu ** 2) + para * mu ** 2

            # The two 1/z^2 Laurent heads cancel only after the angle
            # integral, so at small r the integrand carries a roundoff
            # floor of eps * max|f|; don't ask the inner loop for more.
            floor = 4e-16 * (abs(perp) + abs(para)) * 2.0
            inner_spec = QuadSpec(rel_tol=spec.rel_tol,
                                  abs_tol=max(spec.abs_tol, floor),
                                  max_subdivisions=spec.max_subdivisions,
                                  tail_bound_tol=spec.tail_bound_tol)
            inner = integrate_adaptive(angular, -1.0, 1.0, inner_spec)
            # 2 pi from azimuth, r^2 dr volume element, -1/(4 pi r) prefactor
            out[i] = -0.5 * r * inner
        return out

    return integrate_adaptive(shell, 0.0, float(radius), spec)
