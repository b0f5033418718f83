"""Closed-form evaluation of the four decoherence functions.

The local factor for one photon is

    kappa_j(tau) = e^{i eta tau} Integral phi(x) e^{i theta_j(x)} e^{i tau x} dx

with phi the standard normal density, and the nonlocal pair is the analogous
double integral over the correlated bivariate normal with the phases added
(kappa_12, frequency-sum channel) or subtracted (Lambda_12, difference
channel).  Closed forms exist for

* any phases at K = 0 (the dynamics factorizes into local products),
* constant/zigzag pairs at K = +-1 (degenerate ridge; truncated Fourier
  series of |cos| turns the integral into a sum of displaced Gaussians),
* constant/parabola pairs at any K (complex Gaussian integrals).

Mixtures of components are evaluated component-wise and weight-summed: the
underlying integrals are linear in the frequency distribution.  Everything
else raises :class:`UnsupportedAnalytic`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, UnsupportedAnalytic
from .model import (
    Constant,
    DecoherenceSet,
    FrequencySpec,
    Parabola,
    PhaseProfile,
    ScenarioConfig,
    Zigzag,
)

# Correlations this close to 0 or +-1 are treated as exactly degenerate.
_K_TOL = 1e-12


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the zigzag Fourier series.

    Summation stops at ``max_terms`` or once a term's coefficient bound falls
    below ``term_floor``, whichever comes first.
    """

    max_terms: int = 64
    term_floor: float = 1e-14

    def __post_init__(self):
        if self.max_terms < 1:
            raise InvalidParameter(f"max_terms must be >= 1, got {self.max_terms}")
        if self.term_floor < 0:
            raise InvalidParameter(f"term_floor must be >= 0, got {self.term_floor}")


DEFAULT_SERIES = SeriesControl()


def _E(s):
    """Gaussian kernel e^{-s^2/2} of a frequency-shift argument."""
    return np.exp(-0.5 * np.square(s))


def _floor_width(term_floor: float) -> float:
    # Shift beyond which e^{-s^2/2} is guaranteed under the floor.
    if term_floor <= 0:
        return 39.0  # below double-precision underflow
    return math.sqrt(max(2.0 * math.log(1.0 / term_floor), 1.0))


def _cos_modes(alpha: float, ctl: SeriesControl, reach: float | None = None):
    """Cosine-series modes of |cos(alpha x)|: DC term plus 2 n alpha harmonics.

    ``reach`` bounds the largest shift the surrounding Gaussian factors can
    undergo; harmonics beyond it contribute less than the term floor and are
    dropped.  Without ``reach`` (two interacting series) only ``max_terms``
    and the coefficient floor truncate.
    """
    if alpha == 0.0:
        return np.array([1.0]), np.array([0.0])
    n_terms = ctl.max_terms
    if reach is not None:
        needed = int(math.ceil((reach + _floor_width(ctl.term_floor)) / (2.0 * abs(alpha))))
        n_terms = max(1, min(n_terms, needed))
    n = np.arange(1, n_terms + 1)
    coef = (4.0 / np.pi) * (-1.0) ** n / (1.0 - 4.0 * n * n)
    keep = np.abs(coef) >= ctl.term_floor
    n, coef = n[keep], coef[keep]
    return (
        np.concatenate(([2.0 / np.pi], coef)),
        np.concatenate(([0.0], 2.0 * n * alpha)),
    )


def _cc(a, t):
    """Integral of phi(x) cos(a x) cos(t x)."""
    return 0.5 * (_E(a - t) + _E(a + t))


def _ss(a, t):
    """Integral of phi(x) sin(a x) sin(t x)."""
    return 0.5 * (_E(a - t) - _E(a + t))


def _css(a, b, t):
    """Integral of phi(x) cos(a x) sin(b x) sin(t x)."""
    return 0.25 * (_E(a + b - t) + _E(a - b + t) - _E(a + b + t) - _E(a - b - t))


# ---------------------------------------------------------------------------
# Local decoherence function
# ---------------------------------------------------------------------------

def local_kappa(
    phase: PhaseProfile,
    eta: float,
    tau,
    ctl: SeriesControl = DEFAULT_SERIES,
) -> np.ndarray | complex:
    """Closed-form local decoherence function kappa_j(tau).

    Independent of any frequency correlation: both marginals of the
    correlated Gaussian are the same standard normal.
    """
    tau_arr = np.atleast_1d(np.asarray(tau, dtype=float))
    if isinstance(phase, Constant):
        out = np.exp(-0.5 * tau_arr**2 + 1j * (eta * tau_arr + phase.theta0))
    elif isinstance(phase, Parabola):
        out = _parabola_local(phase.beta, eta, tau_arr)
    elif isinstance(phase, Zigzag):
        out = np.exp(1j * eta * tau_arr) * _zigzag_local_real(phase.alpha, tau_arr, ctl)
    else:
        raise InvalidParameter(f"unknown phase profile {phase!r}")
    return out if np.ndim(tau) else complex(out[0])


def _parabola_local(beta: float, eta: float, tau: np.ndarray) -> np.ndarray:
    w = 2.0 * beta + 1j
    return np.sqrt(1j / w) * np.exp(1j * (eta * tau - tau**2 / (2.0 * w)))


def _zigzag_local_real(alpha: float, tau: np.ndarray, ctl: SeriesControl) -> np.ndarray:
    if alpha == 0.0:
        return _E(tau)
    reach = float(np.max(np.abs(tau), initial=0.0))
    coef, freq = _cos_modes(alpha, ctl, reach=reach)
    s = coef @ _cc(freq[:, None], tau[None, :])
    return s - _ss(alpha, tau)


# ---------------------------------------------------------------------------
# Zigzag/constant pair kernel on a degenerate ridge
# ---------------------------------------------------------------------------

_CHUNK = 512


def _zigzag_pair_kernel(a1: float, a2: float, t: np.ndarray, ctl: SeriesControl) -> np.ndarray:
    """J(a1, a2, t) = Integral phi(x) e^{i(z(x,a1)+z(x,a2))} e^{i t x} dx.

    Real-valued for all arguments (the odd part of the integrand cancels).
    Exact reductions are used when the two zigzags cancel (a2 = -a1) or
    coincide (a2 = a1); otherwise the |cos| series of each factor is
    truncated per ``ctl``.
    """
    if a1 == -a2:
        # z(x, a) + z(x, -a) = 0: the phases cancel identically.
        return _E(t)
    if a1 == a2 and a1 != 0.0:
        return _equal_zigzag_kernel(a1, t, ctl)

    tmax = float(np.max(np.abs(t), initial=0.0))
    # With one photon constant the displaced Gaussians can only reach tmax +
    # |alpha_other|; two interacting series have resonances at arbitrary
    # harmonic pairs, so only max_terms truncates them.
    single = a1 == 0.0 or a2 == 0.0
    c1, f1 = _cos_modes(a1, ctl, reach=(tmax + abs(a2)) if single else None)
    c2, f2 = _cos_modes(a2, ctl, reach=(tmax + abs(a1)) if single else None)

    pair_coef = (c1[:, None] * c2[None, :]).ravel()
    plus = (f1[:, None] + f2[None, :]).ravel()
    minus = (f1[:, None] - f2[None, :]).ravel()

    out = np.empty_like(t)
    for lo in range(0, t.size, _CHUNK):
        tc = t[lo : lo + _CHUNK][None, :]
        g = _E(plus[:, None] + tc) + _E(plus[:, None] - tc)
        g += _E(minus[:, None] + tc) + _E(minus[:, None] - tc)
        out[lo : lo + _CHUNK] = 0.25 * (pair_coef @ g)

    out -= 0.5 * (_cc(a1 - a2, t) - _cc(a1 + a2, t))  # phi sin(a1 x) sin(a2 x) cos(t x)
    out -= c1 @ _css(f1[:, None], a2, t[None, :])
    out -= c2 @ _css(f2[:, None], a1, t[None, :])
    return out


def _equal_zigzag_kernel(a: float, t: np.ndarray, ctl: SeriesControl) -> np.ndarray:
    # e^{2 i z(x,a)} = cos(2 a x) + 2 i sin(a x)|cos(a x)|: the cosine part is
    # smooth and exact, only the odd part needs the series.
    out = _cc(2.0 * a, t)
    tmax = float(np.max(np.abs(t), initial=0.0))
    coef, freq = _cos_modes(a, ctl, reach=tmax + abs(a))
    # sin(a x) * cos(freq x) = (sin((freq+a)x) - sin((freq-a)x)) / 2
    odd = coef @ (0.5 * (_ss(freq[:, None] + a, t[None, :]) - _ss(freq[:, None] - a, t[None, :])))
    return out - 2.0 * odd


def _offset_and_alpha(phase: PhaseProfile) -> tuple[float, float]:
    if isinstance(phase, Constant):
        return phase.theta0, 0.0
    if isinstance(phase, Zigzag):
        return 0.0, phase.alpha
    raise UnsupportedAnalytic(f"{phase!r} has no zigzag/constant decomposition")


def _offset_and_beta(phase: PhaseProfile) -> tuple[float, float]:
    if isinstance(phase, Constant):
        return phase.theta0, 0.0
    if isinstance(phase, Parabola):
        return 0.0, phase.beta
    raise UnsupportedAnalytic(f"{phase!r} has no parabola/constant decomposition")


def _is_ridge_pair(p1: PhaseProfile, p2: PhaseProfile) -> bool:
    return all(isinstance(p, (Constant, Zigzag)) for p in (p1, p2))


def _is_gaussian_pair(p1: PhaseProfile, p2: PhaseProfile) -> bool:
    return all(isinstance(p, (Constant, Parabola)) for p in (p1, p2))


# ---------------------------------------------------------------------------
# Nonlocal pair
# ---------------------------------------------------------------------------

def _parabola_pair(
    k: float, p1: PhaseProfile, p2: PhaseProfile, eta: float, tau: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    c1, b1 = _offset_and_beta(p1)
    c2, b2 = _offset_and_beta(p2)
    one_m_k2 = 1.0 - k * k

    d_sum = 1.0 - 4.0 * b1 * b2 * one_m_k2 - 2j * (b1 + b2)
    kappa12 = d_sum ** -0.5 * np.exp(
        -((1.0 + k) - 1j * (b1 + b2) * one_m_k2) / d_sum * tau**2
        + 1j * (2.0 * eta * tau + c1 + c2)
    )
    d_diff = 1.0 + 4.0 * b1 * b2 * one_m_k2 - 2j * (b1 - b2)
    lambda12 = d_diff ** -0.5 * np.exp(
        -((1.0 - k) - 1j * (b1 - b2) * one_m_k2) / d_diff * tau**2 + 1j * (c1 - c2)
    )
    return kappa12, lambda12


def _ridge_pair(
    k: float, p1: PhaseProfile, p2: PhaseProfile, eta: float, tau: np.ndarray, ctl: SeriesControl
) -> tuple[np.ndarray, np.ndarray]:
    # On the ridge x2 = k x1 (k = +-1) both integrals collapse to 1D; the
    # second photon's zigzag flips sign with k since z is odd.
    c1, a1 = _offset_and_alpha(p1)
    c2, a2 = _offset_and_alpha(p2)
    kappa12 = np.exp(1j * (2.0 * eta * tau + c1 + c2)) * _zigzag_pair_kernel(
        a1, k * a2, (1.0 + k) * tau, ctl
    )
    lambda12 = np.exp(1j * (c1 - c2)) * _zigzag_pair_kernel(a1, -k * a2, (1.0 - k) * tau, ctl)
    return kappa12, lambda12


def _component_pair(
    k: float,
    p1: PhaseProfile,
    p2: PhaseProfile,
    eta: float,
    tau: np.ndarray,
    ctl: SeriesControl,
) -> tuple[np.ndarray, np.ndarray]:
    if abs(k) <= _K_TOL:
        k1 = local_kappa(p1, eta, tau, ctl)
        k2 = local_kappa(p2, eta, tau, ctl)
        return k1 * k2, k1 * np.conj(k2)
    if _is_gaussian_pair(p1, p2):
        return _parabola_pair(k, p1, p2, eta, tau)
    if abs(abs(k) - 1.0) <= _K_TOL and _is_ridge_pair(p1, p2):
        return _ridge_pair(math.copysign(1.0, k), p1, p2, eta, tau, ctl)
    raise UnsupportedAnalytic(
        f"no closed form for K={k} with phases ({type(p1).__name__}, {type(p2).__name__}); "
        "use the quadrature oracle"
    )


def nonlocal_pair(
    freq: FrequencySpec,
    phase1: PhaseProfile,
    phase2: PhaseProfile,
    tau,
    ctl: SeriesControl = DEFAULT_SERIES,
) -> tuple[np.ndarray | complex, np.ndarray | complex]:
    """Closed-form (kappa_12, Lambda_12); mixtures are weight-summed."""
    tau_arr = np.atleast_1d(np.asarray(tau, dtype=float))
    kappa12 = np.zeros(tau_arr.shape, dtype=complex)
    lambda12 = np.zeros(tau_arr.shape, dtype=complex)
    for comp in freq.components:
        k, l = _component_pair(comp.k, phase1, phase2, freq.eta, tau_arr, ctl)
        kappa12 += comp.weight * k
        lambda12 += comp.weight * l
    if np.ndim(tau):
        return kappa12, lambda12
    return complex(kappa12[0]), complex(lambda12[0])


def decoherence_set(
    cfg: ScenarioConfig,
    tau: float,
    ctl: SeriesControl = DEFAULT_SERIES,
    fallback: bool = False,
) -> DecoherenceSet:
    """All four decoherence values of a scenario at one scaled time.

    With ``fallback=True`` an unsupported (correlation, phase pair)
    combination is routed to the quadrature oracle instead of raising.
    """
    eta = cfg.freq.eta
    k1 = local_kappa(cfg.phase1, eta, tau, ctl)
    k2 = local_kappa(cfg.phase2, eta, tau, ctl)
    try:
        k12, l12 = nonlocal_pair(cfg.freq, cfg.phase1, cfg.phase2, tau, ctl)
    except UnsupportedAnalytic:
        if not fallback:
            raise
        from .oracle import oracle_nonlocal

        k12, l12 = oracle_nonlocal(cfg.freq, cfg.phase1, cfg.phase2, tau)
    return DecoherenceSet(k1, k2, k12, l12)
