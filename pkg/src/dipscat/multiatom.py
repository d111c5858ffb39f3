"""Coupled-atom scattering: reduced detunings and the N-atom T-matrix.

A two-level atom with transition frequency Omega_a and free-space rate
Gamma0 is a resonant point scatterer. Near resonance every frequency
enters through the reduced detuning

    nu = (omega^2 - Omega_a^2) / (2 Omega_a g),   g = Gamma0 / Omega_a,

which is (omega - Omega_a) in Gamma0 units up to O(g) corrections. The
environment dresses the resonance through X = delta - i gamma / 2
[Gamma0], giving the single-atom T-matrix element

    T = mu_rel^2 (omega / Omega_a)^2 / (nu - X).

N atoms couple through the off-diagonal j_mn; the dressed amplitudes t_n
solve the linear system

    t_n = T_n + sum_{m != n} t_m J_mn (mu_n / mu_m) S_n,
    S_n = 1 / (nu_n - X_n),

written here as t = M^{-T} T with M_mn = delta_mn - (1 - delta_mn)
J_mn (mu_n / mu_m) S_n. Free space admits complex omega (analytic
continuation for pole searches); with the plane present, X and J are
evaluated at Re omega, which is exact to O(g) since poles sit within
~g of the real axis.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .coupling import gamma_and_delta, j_free, j_plane
from .core import PlaneMedium

# Gamma0 / Omega: sets the scale separation between optical frequencies
# and decay rates; observables below depend on it only at O(g)
G_DEFAULT = 1e-6

# nu computed from a float omega carries ~eps/(2 g) absolute noise, so the
# pole guards must sit well above that; physical evaluations at real omega
# keep |nu - X| >= Gamma/2 and |det M| orders of magnitude larger still
_RESONANCE_TOL = 1e-9
_DET_TOL = 1e-7
_COND_WARN = 1e8


@dataclass(frozen=True)
class AtomSystem:
    """Static arrangement of atoms, optionally facing the plane."""

    dipoles: tuple
    plane: PlaneMedium | None = None
    g: float = G_DEFAULT

    def __post_init__(self):
        object.__setattr__(self, "dipoles", tuple(self.dipoles))
        if len(self.dipoles) < 1:
            raise ValueError("at least one atom required")
        if not self.g > 0.0:
            raise ValueError("g = Gamma0/Omega must be positive")
        pos = [d.position for d in self.dipoles]
        for i in range(len(pos)):
            for k in range(i + 1, len(pos)):
                if np.linalg.norm(pos[i] - pos[k]) < 1e-12:
                    raise ValueError("atoms must sit at distinct positions")

    def t_matrix(self, omega, spec=None):
        tees = np.array([single_t(d, omega, self.plane, self.g, spec)
                         for d in self.dipoles])
        return TMatrix(omega=complex(omega), t_single=tees,
                       t_n=t_n(self.dipoles, omega, self.plane, self.g, spec))


@dataclass(frozen=True)
class TMatrix:
    """Single-atom tees and their environment-dressed counterparts."""

    omega: complex
    t_single: np.ndarray
    t_n: np.ndarray


def reduced_detuning(omega, atom_omega=1.0, g=G_DEFAULT):
    """nu = (omega^2 - atom_omega^2) / (2 atom_omega g) [Gamma0]."""
    return (omega ** 2 - atom_omega ** 2) / (2.0 * atom_omega * g)


def self_x(d, omega=1.0, plane=None, spec=None):
    """Dressed resonance parameter X = delta - i gamma / 2 [Gamma0]."""
    if plane is None:
        return -0.5j * d.mu_rel ** 2 * omega ** 3
    gam, delta = gamma_and_delta(d, float(np.real(omega)), plane, spec)
    return delta - 0.5j * gam


def pair_coupling(d1, d2, omega=1.0, plane=None, spec=None):
    """Off-diagonal coupling j(R1, R2) [Gamma0], free or plane-dressed."""
    if plane is None:
        return j_free(d1, d2, omega)
    return j_plane(d1, d2, float(np.real(omega)), plane, spec)


def single_t(d, omega=1.0, plane=None, g=G_DEFAULT, spec=None):
    """Uncoupled single-atom T-matrix element [Gamma0]."""
    nu = reduced_detuning(omega, d.omega, g)
    x = self_x(d, omega, plane, spec)
    den = nu - x
    if abs(den) < _RESONANCE_TOL * (1.0 + abs(x)):
        raise ValueError("at resonance pole")
    return d.mu_rel ** 2 * (omega / d.omega) ** 2 / den


def _nu_x_s(dipoles, omega, plane, g, spec):
    nu = np.array([reduced_detuning(omega, d.omega, g) for d in dipoles])
    x = np.array([self_x(d, omega, plane, spec) for d in dipoles])
    return nu, x, 1.0 / (nu - x)


def m_matrix(dipoles, omega=1.0, plane=None, g=G_DEFAULT, spec=None):
    """Coupling matrix M of the linear system; identity when uncoupled."""
    n = len(dipoles)
    _, _, s = _nu_x_s(dipoles, omega, plane, g, spec)
    mu = np.array([d.mu_rel for d in dipoles])
    m = np.eye(n, dtype=complex)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            jab = pair_coupling(dipoles[a], dipoles[b], omega, plane, spec)
            m[a, b] = -jab * (mu[b] / mu[a]) * s[b]
    return m


def t_n(dipoles, omega=1.0, plane=None, g=G_DEFAULT, spec=None):
    """Environment-dressed amplitudes t_n = sum_m T_m (M^{-1})_mn."""
    tees = np.array([single_t(d, omega, plane, g, spec) for d in dipoles])
    m = m_matrix(dipoles, omega, plane, g, spec)
    scale = max(1.0, float(np.max(np.abs(m)))) ** len(dipoles)
    if abs(np.linalg.det(m)) <= _DET_TOL * scale:
        raise ValueError("collective resonance at this frequency")
    cond = np.linalg.cond(m)
    if cond > _COND_WARN:
        warnings.warn(f"coupling matrix nearly singular (cond = {cond:.2e}); "
                      "dressed amplitudes may lose precision")
    return np.linalg.solve(m.T, tees)
