"""Two-atom collective decay: super- and subradiant modes and emission traces.

Diagonalizing the coupled pair [[X1, J], [X2 mirrored]] gives complex
collective frequencies in Gamma0 units,

    wt_pm = (X1 + X2)/2 +- S,    S = sqrt(((X1 - X2)/2)^2 + J^2),

with rates gamma_pm = -2 Im wt_pm (their sum equals gamma_1 + gamma_2
identically) and shifts Re wt_pm. Physical frequencies follow to first
order in g as Omega_pm = Omega_a + g wt_pm [Omega]. The mixing angle

    sin(alpha) = (X1 - X2) / Lambda,   cos(alpha) = 2 J / Lambda,
    Lambda = 2 S  (branch-signed),

is complex in general; the collective amplitudes on the two atoms are
c1_pm = 1 +- sin(alpha) and c2 = cos(alpha). The sign of S is a branch
choice; pass branch_seed (Gamma0 units, a previous wt_plus) to track one
mode continuously along a parameter sweep.

Emission trace: with one excitation shared as psi(0) ~ p b1 + e^{i phi}
sqrt(1 - p^2) b2, the detected field at z_det is a sum of two decaying
branches per atom,

    L1_pm(t) = rho_pm [k1 (1 +- sin a) +- k2 cos a] e^{-i wt_pm t} theta(t - t_d),
    L2_pm(t) = rho_pm [k2 (1 -+ sin a) +- k1 cos a] e^{-i wt_pm t} theta(t - t_d),

where k_i is the free-space transverse propagator contraction from atom i
to the detector at the bare frequency, t_d the retardation from the
nearer atom in 1/Gamma0, and rho_pm = Omega_pm (Omega_a + Omega_pm) /
(Omega_r (Omega_a + Omega_r)) a frequency prefactor relative to the
free reference atom (Omega_r = Omega_a + g X_free). Propagation to the
detector uses the free kernel; the medium enters through the collective
frequencies and the mixing angle. Intensity is normalized to the peak a
single free atom at the nearer position would produce, so a coincident
symmetric pair peaks at 2 and decays at 2 Gamma0.
"""

from dataclasses import dataclass

import numpy as np

from .core import C_LIGHT, HomogeneousMedium, contract
from .green_free import g0_total
from .multiatom import G_DEFAULT, pair_coupling, self_x
from .quad import QuadSpec

_DEGENERATE_TOL = 1e-14
_DETECTOR_TOL = 1e-9
_VACUUM = HomogeneousMedium(1.0)


@dataclass(frozen=True)
class PairSolution:
    """Collective modes of one atom pair, all rates and shifts in Gamma0."""

    omega_plus: complex      # physical frequency Omega_a + g wt_plus [Omega]
    omega_minus: complex
    gamma_plus: float
    gamma_minus: float
    shift_plus: float
    shift_minus: float
    alpha: complex
    lambda_cap: complex      # branch-signed splitting 2 S
    c1_plus: complex
    c1_minus: complex
    c2: complex
    x1: complex
    x2: complex
    j: complex
    atom_omega: float
    g: float

    @property
    def wt_plus(self):
        return self.shift_plus - 0.5j * self.gamma_plus

    @property
    def wt_minus(self):
        return self.shift_minus - 0.5j * self.gamma_minus


def alpha_and_amplitudes(x1, x2, j):
    """Mixing angle and amplitudes (alpha, c1_plus, c1_minus, c2, Lambda).

    Principal branch: Lambda = 2 sqrt(((x1-x2)/2)^2 + j^2) with Re >= 0
    preferred by the square root. Flip the sign of Lambda externally to
    select the other branch.
    """
    half = 0.5 * (x1 - x2)
    lam = 2.0 * np.sqrt(complex(half ** 2 + j ** 2))
    if abs(lam) < _DEGENERATE_TOL:
        raise ValueError("degenerate pair; atoms effectively uncoupled and equivalent")
    sin_a = (x1 - x2) / lam
    cos_a = 2.0 * j / lam
    alpha = -1j * np.log(cos_a + 1j * sin_a)
    return alpha, 1.0 + sin_a, 1.0 - sin_a, cos_a, lam


def pair_solution(d1, d2, plane=None, g=G_DEFAULT, spec=None, branch_seed=None):
    """Collective modes of two atoms, free or facing the plane.

    X_i and J are evaluated at the shared bare frequency; branch_seed
    (complex, Gamma0 units) picks the root closer to a previous wt_plus
    for continuous tracking along sweeps.
    """
    if abs(d1.omega - d2.omega) > 1e-12:
        raise ValueError("pair modes assume a common transition frequency")
    spec = spec or QuadSpec()
    omega0 = d1.omega
    x1 = self_x(d1, omega0, plane, spec)
    x2 = self_x(d2, omega0, plane, spec)
    j = pair_coupling(d1, d2, omega0, plane, spec)

    mean = 0.5 * (x1 + x2)
    s = np.sqrt(complex((0.5 * (x1 - x2)) ** 2 + j ** 2))
    if branch_seed is not None and (abs(mean + s - branch_seed)
                                    > abs(mean - s - branch_seed)):
        s = -s
    if abs(s) < _DEGENERATE_TOL:
        raise ValueError("degenerate pair; atoms effectively uncoupled and equivalent")

    lam = 2.0 * s
    sin_a = (x1 - x2) / lam
    cos_a = 2.0 * j / lam
    alpha = -1j * np.log(cos_a + 1j * sin_a)
    wt_p = mean + s
    wt_m = mean - s
    return PairSolution(
        omega_plus=complex(omega0 + g * wt_p),
        omega_minus=complex(omega0 + g * wt_m),
        gamma_plus=float(-2.0 * wt_p.imag),
        gamma_minus=float(-2.0 * wt_m.imag),
        shift_plus=float(wt_p.real),
        shift_minus=float(wt_m.real),
        alpha=complex(alpha),
        lambda_cap=complex(lam),
        c1_plus=complex(1.0 + sin_a),
        c1_minus=complex(1.0 - sin_a),
        c2=complex(cos_a),
        x1=complex(x1), x2=complex(x2), j=complex(j),
        atom_omega=float(omega0), g=float(g),
    )


def _detector_kernel(d, z_det):
    """Free transverse propagator contraction atom -> on-axis detector."""
    r = np.array([0.0, 0.0, z_det]) - d.position
    return d.mu_rel * contract(g0_total(r, _VACUUM, d.omega),
                               d.orientation, d.orientation)


def intensity_trace(dipoles, z_det, times, p=None, phi=0.0, plane=None,
                    g=G_DEFAULT, spec=None, branch_seed=None):
    """Normalized detected intensity after releasing one shared excitation.

    dipoles: one or two atoms (in-plane parallel orientations). p, phi set
    the initial state p b1 + e^{i phi} sqrt(1-p^2) b2 (default p = 1/sqrt2,
    phi = 0 for a pair; p is ignored for a single atom). times in 1/Gamma0.
    Returns intensity relative to the peak of a free reference atom at the
    nearer position.
    """
    dipoles = tuple(dipoles)
    if len(dipoles) not in (1, 2):
        raise ValueError("intensity trace supports one or two atoms")
    times = np.asarray(times, dtype=float)
    dists = [abs(z_det - float(d.position[2])) for d in dipoles]
    if min(dists) < _DETECTOR_TOL:
        raise ValueError("detector coincides with an atom")

    d1 = dipoles[0]
    omega0 = d1.omega
    x_free = -0.5j * d1.mu_rel ** 2 * omega0 ** 3
    omega_ref = omega0 + g * x_free
    d_ref = min(dists)
    t_delay = d_ref / C_LIGHT * g          # 1/Gamma0: (d/c)[1/Omega] * g
    step = np.where(times >= t_delay, 1.0, 0.0)

    def rho(om_dressed):
        return (om_dressed * (omega0 + om_dressed)
                / (omega_ref * (omega0 + omega_ref)))

    if len(dipoles) == 1:
        k1 = _detector_kernel(d1, z_det)
        x1 = self_x(d1, omega0, plane, spec)
        amp = 2.0 * rho(omega0 + g * x1) * k1 * np.exp(-1j * x1 * times) * step
    else:
        d2 = dipoles[1]
        if abs(float(d1.orientation @ d2.orientation) - 1.0) > 1e-9:
            raise ValueError("intensity trace requires equally oriented dipoles")
        sol = pair_solution(d1, d2, plane, g, spec, branch_seed)
        sin_a = 0.5 * (sol.c1_plus - sol.c1_minus)
        cos_a = sol.c2
        k1 = _detector_kernel(d1, z_det)
        k2 = _detector_kernel(d2, z_det)
        if p is None:
            p = 1.0 / np.sqrt(2.0)
        if not 0.0 <= p <= 1.0:
            raise ValueError("initial-state weight p must lie in [0, 1]")
        q = np.sqrt(max(0.0, 1.0 - p * p)) * np.exp(1j * phi)

        e_p = np.exp(-1j * sol.wt_plus * times) * step
        e_m = np.exp(-1j * sol.wt_minus * times) * step
        r_p = rho(sol.omega_plus)
        r_m = rho(sol.omega_minus)
        l1 = (r_p * (k1 * (1.0 + sin_a) + k2 * cos_a) * e_p
              + r_m * (k1 * (1.0 - sin_a) - k2 * cos_a) * e_m)
        l2 = (r_p * (k2 * (1.0 - sin_a) + k1 * cos_a) * e_p
              + r_m * (k2 * (1.0 + sin_a) - k1 * cos_a) * e_m)
        amp = p * l1 + q * l2

    nearest = min(dipoles, key=lambda d: abs(z_det - float(d.position[2])))
    ref_kernel = _detector_kernel(nearest, z_det)
    gamma_ref = nearest.mu_rel ** 2 * omega0 ** 3
    ref_peak = 4.0 * abs(ref_kernel) ** 2 * np.exp(-gamma_ref * t_delay)
    return np.abs(amp) ** 2 / ref_peak
