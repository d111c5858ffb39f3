"""Adaptive quadrature for complex integrands.

Three entry points cover everything the Green-function integrals need:

  * integrate_adaptive: globally adaptive Gauss7/Kronrod15 bisection on a
    finite interval. All nodes are interior, so integrands may be singular
    at the endpoints after a variable change (1/k_z endpoints, PV poles
    placed on interval edges) without ever being sampled there.
  * integrate_evanescent_tail: semi-infinite integral of an exponentially
    decaying integrand with a certified truncation point derived from an
    envelope bound.
  * integrate_principal_value: Cauchy principal value across a simple pole
    by analytic subtraction of residue/(x - pole); the half-intervals meet
    exactly at the pole so the regularized integrand is only evaluated at
    interior nodes on either side. The causal (retarded) branch adds the
    half-residue term +i pi residue, returned separately.

Integrands must accept a 1-D numpy array of abscissae and return an array
of complex values of the same shape.
"""

import heapq
from dataclasses import dataclass

import numpy as np

# 15-point Kronrod abscissae on [-1, 1]; the 7 Gauss points are the odd
# entries. Interior nodes only: endpoints are never evaluated.
_XK = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
])


@dataclass
class QuadSpec:
    """Error targets for the adaptive integrators; all tolerances > 0."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    tail_bound_tol: float = 1e-12

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.tail_bound_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


@dataclass
class PVResult:
    """Principal value plus the separated causal half-residue term."""

    principal_value: complex
    residue_term: complex      # +i pi * residue for the retarded branch
    pole_location: float

    @property
    def value(self):
        return self.principal_value + self.residue_term


class QuadratureError(RuntimeError):
    """Raised when the error target is not met; carries the best estimate."""

    def __init__(self, message, estimate, error_bound):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


def _panel(f, a, b):
    """One Gauss-Kronrod evaluation: (kronrod, |kronrod - gauss|)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * _XK), dtype=complex)
    k = half * np.sum(_WK * fx)
    g = half * np.sum(_WG * fx[1::2])
    return k, abs(k - g)


def integrate_adaptive(f, a, b, spec=None):
    """Adaptive complex integral of f over [a, b].

    Certifies err <= max(abs_tol, rel_tol * |result|) or raises
    QuadratureError with the best estimate attached.
    """
    spec = spec or QuadSpec()
    if not a < b:
        raise ValueError("integration interval requires a < b")

    # Start from four panels so a feature hiding between the nodes of a
    # single coarse rule cannot fake convergence on long intervals.
    edges = np.linspace(a, b, 5)
    heap = []
    total = 0.0 + 0.0j
    total_err = 0.0
    count = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _panel(f, lo, hi)
        total += val
        total_err += err
        heapq.heappush(heap, (-err, count, lo, hi, val))
        count += 1

    subdivisions = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if subdivisions >= spec.max_subdivisions:
            raise QuadratureError(
                f"adaptive quadrature failed to converge after "
                f"{spec.max_subdivisions} subdivisions "
                f"(estimate {total}, error bound {total_err:g})",
                total, total_err)
        neg_err, _, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _panel(f, lo, mid)
        v2, e2 = _panel(f, mid, hi)
        total += v1 + v2 - val
        total_err += e1 + e2 - (-neg_err)
        heapq.heappush(heap, (-e1, count, lo, mid, v1))
        count += 1
        heapq.heappush(heap, (-e2, count, mid, hi, v2))
        count += 1
        subdivisions += 1
    return total


def tail_cutoff(f, kappa_min, decay_rate, spec=None):
    """Truncation point for an integrand bounded by B exp(-decay_rate kappa).

    The envelope coefficient B is estimated by sampling |f| over the first
    few decay lengths; the cutoff solves (B/rate) exp(-rate (k - k_min)) <
    tail_bound_tol with a safety margin of five decay lengths.
    """
    spec = spec or QuadSpec()
    if not decay_rate > 0.0:
        raise ValueError("non-decaying evanescent integrand")
    # first sample strictly inside: integrands may have a removable 0/0
    # at the lower endpoint (measure factor against a 1/k_z leg)
    offsets = np.array([0.02, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0]) / decay_rate
    ks = kappa_min + offsets
    fs = np.abs(np.asarray(f(ks), dtype=complex))
    bound = float(np.max(fs * np.exp(decay_rate * offsets)))
    if bound == 0.0:
        return kappa_min + 1.0 / decay_rate
    span = (np.log(max(bound, 1e-300) / (decay_rate * spec.tail_bound_tol)) + 5.0)
    span = max(span, 10.0) / decay_rate
    return kappa_min + span


def integrate_evanescent_tail(f, kappa_min, decay_rate, spec=None):
    """Integral of an exponentially decaying f over [kappa_min, infinity).

    The interval is truncated at tail_cutoff and split into geometrically
    growing segments (a few per decade of decay) so that no single panel
    spans many decay lengths.
    """
    spec = spec or QuadSpec()
    if not decay_rate > 0.0:
        raise ValueError("non-decaying evanescent integrand")
    kappa_max = tail_cutoff(f, kappa_min, decay_rate, spec)

    edges = [kappa_min]
    step = 2.0 / decay_rate
    while edges[-1] + step < kappa_max:
        edges.append(edges[-1] + step)
        step *= 2.0
    edges.append(kappa_max)

    total = 0.0 + 0.0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += integrate_adaptive(f, lo, hi, spec)
    return total


def integrate_principal_value(f, a, b, pole, residue, spec=None):
    """Cauchy principal value of f over [a, b] across a simple pole.

    The caller supplies the analytic residue; the regularized integrand
    f(x) - residue/(x - pole) is integrated adaptively on [a, pole] and
    [pole, b] (the pole sits on panel edges, never on a node), and the
    subtracted term is restored as residue * log((b - pole)/(pole - a)).
    The retarded branch's half-circle contribution +i pi residue is
    reported separately in residue_term.
    """
    spec = spec or QuadSpec()
    if not (a < pole < b):
        raise ValueError("pole must lie strictly inside the integration interval")
    residue = complex(residue)

    if residue == 0.0:
        val = integrate_adaptive(f, a, b, spec)
        return PVResult(principal_value=val, residue_term=0.0 + 0.0j,
                        pole_location=pole)

    def regularized(x):
        return np.asarray(f(x), dtype=complex) - residue / (x - pole)

    pv = (integrate_adaptive(regularized, a, pole, spec)
          + integrate_adaptive(regularized, pole, b, spec)
          + residue * np.log((b - pole) / (pole - a)))
    return PVResult(principal_value=pv,
                    residue_term=1j * np.pi * residue,
                    pole_location=pole)
