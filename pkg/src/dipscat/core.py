"""Unit conventions and the value types shared by every other module.

Scaled units throughout the package:

  * lengths in units of the reference transition wavelength, lambda = 1
  * rates, shifts and couplings in units of the free-space amplitude decay
    rate of the reference dipole, Gamma0 = 1
  * frequencies in units of the reference transition frequency, Omega = 1

Because lambda = 2 pi c / Omega, the speed of light is c = 1/(2 pi) in
these units and omega/c = 2 pi omega. Every public observable is emitted
in scaled units; conversion to SI needs the physical dipole moment mu and
transition frequency Omega and lives in the Units helpers, nowhere else.

Dyadics (3x3 complex arrays) are plain numpy arrays; `contract` evaluates
the u . D . v scalar that all observables reduce to.
"""

from dataclasses import dataclass

import numpy as np

C_LIGHT = 1.0 / (2.0 * np.pi)  # c in (lambda * Omega) units

# SI constants, used only for presentation-layer conversion
HBAR_SI = 1.054571817e-34    # J s
EPS0_SI = 8.8541878128e-12   # F / m
C_SI = 299792458.0           # m / s


class Units:
    """Conversions between scaled units and SI for a given (mu, Omega).

    mu_si is the transition dipole moment in C m, omega_si the transition
    angular frequency in rad/s. All methods are static; the class is a
    convention marker, not a state holder.
    """

    @staticmethod
    def gamma0_si(mu_si, omega_si):
        """Free-space amplitude decay rate mu^2 omega^3 / (3 pi hbar eps0 c^3)."""
        return mu_si ** 2 * omega_si ** 3 / (3.0 * np.pi * HBAR_SI * EPS0_SI * C_SI ** 3)

    @staticmethod
    def wavelength_si(omega_si):
        return 2.0 * np.pi * C_SI / omega_si

    @staticmethod
    def rate_to_si(value, mu_si, omega_si):
        return value * Units.gamma0_si(mu_si, omega_si)

    @staticmethod
    def rate_from_si(value_si, mu_si, omega_si):
        return value_si / Units.gamma0_si(mu_si, omega_si)

    @staticmethod
    def length_to_si(value, omega_si):
        return value * Units.wavelength_si(omega_si)

    @staticmethod
    def length_from_si(value_si, omega_si):
        return value_si / Units.wavelength_si(omega_si)

    @staticmethod
    def frequency_to_si(value, omega_si):
        return value * omega_si

    @staticmethod
    def frequency_from_si(value_si, omega_si):
        return value_si / omega_si


@dataclass(frozen=True, eq=False)
class Dipole:
    """A point dipole: position [lambda], unit orientation, transition data."""

    position: np.ndarray                 # 3-vector [lambda]
    orientation: np.ndarray              # real unit 3-vector
    omega: float = 1.0                   # transition frequency [Omega]
    mu_rel: float = 1.0                  # dipole moment relative to the reference

    def __post_init__(self):
        object.__setattr__(self, "position",
                           np.asarray(self.position, dtype=float).reshape(3))
        object.__setattr__(self, "orientation",
                           np.asarray(self.orientation, dtype=float).reshape(3))
        norm = np.linalg.norm(self.orientation)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"dipole orientation must be a unit vector, |u| = {norm!r}")
        if not self.omega > 0.0:
            raise ValueError("dipole transition frequency must be positive")
        if not self.mu_rel > 0.0:
            raise ValueError("dipole moment must be positive")


@dataclass(frozen=True)
class PlaneMedium:
    """Partially reflecting plane normal to z, fully set by one thickness."""

    z_plane: float       # plane position [lambda]
    d_eff: float         # effective thickness [lambda], controls opacity

    def __post_init__(self):
        if not self.d_eff > 0.0:
            raise ValueError("plane effective thickness d_eff must be positive")
        if not np.isfinite(self.z_plane):
            raise ValueError("plane position must be finite")


@dataclass(frozen=True)
class HomogeneousMedium:
    """Uniform dielectric with real refractive index n >= 1."""

    n: float = 1.0

    def __post_init__(self):
        if not self.n >= 1.0:
            raise ValueError("refractive index must be >= 1")


# A CDyad is a plain (3, 3) complex ndarray; no wrapper class. Reciprocity
# (transpose symmetry on argument swap) is a property of the builders in
# green_free and is enforced by tests, not by the type.
CDyad = np.ndarray


def contract(dyad, u, v):
    """u . D . v for a 3x3 dyadic and two vectors; plain bilinear form."""
    u = np.asarray(u)
    v = np.asarray(v)
    return complex(u @ np.asarray(dyad) @ v)
