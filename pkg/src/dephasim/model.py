"""Domain types for the two-photon dephasing model.

Everything downstream works in scaled, dimensionless variables: the centered
frequency ``x = (omega - mu) / sigma`` and the scaled time ``tau = sigma *
delta_n * t``.  Physical units enter only through :func:`physical_to_tau`.
All types are immutable value objects once validated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import (
    GridViolation,
    InvalidParameter,
    NormViolation,
    WeightViolation,
)

NORM_TOL = 1e-12
MAGNITUDE_TOL = 1e-9

# Grid large enough to contain every feature of the built-in reference
# scenarios (the slowest zigzag echo used there sits at tau = 15).
DEFAULT_TAU_MAX = 20.0
DEFAULT_TAU_STEP = 0.01


# ---------------------------------------------------------------------------
# Phase profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constant:
    """Flat differential phase theta(x) = theta0."""

    theta0: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.theta0):
            raise InvalidParameter(f"theta0 must be finite, got {self.theta0}")


@dataclass(frozen=True)
class Zigzag:
    """Triangle-wave phase theta(x) = arcsin(sin(alpha * x)).

    Values lie in [-pi/2, pi/2]; the profile is odd in x and produces
    recoherence echoes at tau = |alpha| and tau = 2 n |alpha|.
    """

    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise InvalidParameter(f"alpha must be finite, got {self.alpha}")


@dataclass(frozen=True)
class Parabola:
    """Quadratic phase theta(x) = beta * x**2."""

    beta: float

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise InvalidParameter(f"beta must be finite, got {self.beta}")


PhaseProfile = Union[Constant, Zigzag, Parabola]


def eval_phase(profile: PhaseProfile, x) -> np.ndarray | float:
    """Evaluate a phase profile at centered frequency ``x`` (radians out)."""
    x = np.asarray(x, dtype=float)
    if isinstance(profile, Constant):
        out = np.full_like(x, profile.theta0)
    elif isinstance(profile, Zigzag):
        out = np.arcsin(np.sin(profile.alpha * x))
    elif isinstance(profile, Parabola):
        out = profile.beta * x * x
    else:
        raise InvalidParameter(f"unknown phase profile {profile!r}")
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Frequency specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianComponent:
    """One bivariate-Gaussian mixture component with correlation ``k``."""

    weight: float
    k: float

    def __post_init__(self):
        if not (0.0 < self.weight <= 1.0):
            raise WeightViolation(f"component weight must be in (0, 1], got {self.weight}")
        if not (-1.0 <= self.k <= 1.0):
            raise InvalidParameter(f"correlation must be in [-1, 1], got {self.k}")


@dataclass(frozen=True)
class FrequencySpec:
    """Weighted mixture of correlated bivariate Gaussians with common moments.

    Only the dimensionless ratio ``eta = mu / sigma`` enters the scaled-time
    dynamics, so ``mu`` and ``sigma`` are optional; when both are supplied
    they must be consistent with ``eta``.
    """

    components: tuple[GaussianComponent, ...]
    eta: float = 0.0
    mu: float | None = None
    sigma: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise WeightViolation("at least one mixture component is required")
        total = math.fsum(c.weight for c in self.components)
        if abs(total - 1.0) > NORM_TOL:
            raise WeightViolation(f"mixture weights must sum to 1, got {total!r}")
        if not math.isfinite(self.eta):
            raise InvalidParameter(f"eta must be finite, got {self.eta}")
        if (self.mu is None) != (self.sigma is None):
            raise InvalidParameter("mu and sigma must be given together")
        if self.sigma is not None:
            if self.sigma <= 0:
                raise InvalidParameter(f"sigma must be positive, got {self.sigma}")
            if abs(self.eta - self.mu / self.sigma) > NORM_TOL * max(1.0, abs(self.eta)):
                raise InvalidParameter(
                    f"eta={self.eta} inconsistent with mu/sigma={self.mu / self.sigma}"
                )

    @classmethod
    def gaussian(cls, k: float, eta: float = 0.0) -> "FrequencySpec":
        """Single component with correlation ``k``."""
        return cls((GaussianComponent(1.0, k),), eta=eta)

    @classmethod
    def correlated_mixture(cls, eta: float = 0.0) -> "FrequencySpec":
        """Equal-weight mixture of perfectly correlated and anticorrelated pairs."""
        return cls((GaussianComponent(0.5, 1.0), GaussianComponent(0.5, -1.0)), eta=eta)

    @classmethod
    def from_physical(cls, components, mu: float, sigma: float) -> "FrequencySpec":
        if sigma <= 0:
            raise InvalidParameter(f"sigma must be positive, got {sigma}")
        return cls(tuple(components), eta=mu / sigma, mu=mu, sigma=sigma)


# ---------------------------------------------------------------------------
# Polarization amplitudes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AmplitudeVector:
    """Initial amplitudes (a, b, c, d) over the basis {HH, HV, VH, VV}."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        norm = abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise NormViolation(f"|a|^2+|b|^2+|c|^2+|d|^2 must be 1, got {norm!r}")

    @classmethod
    def balanced(cls) -> "AmplitudeVector":
        return cls(0.5, 0.5, 0.5, 0.5)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)


# ---------------------------------------------------------------------------
# Time grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of scaled times starting at tau = 0."""

    tau_max: float = DEFAULT_TAU_MAX
    step: float = DEFAULT_TAU_STEP

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise GridViolation(f"step must be positive and finite, got {self.step}")
        if self.tau_max < self.step:
            raise GridViolation(
                f"tau_max must allow at least two points, got tau_max={self.tau_max} step={self.step}"
            )

    @property
    def values(self) -> np.ndarray:
        n = int(round(self.tau_max / self.step))
        return self.step * np.arange(n + 1)

    @classmethod
    def from_values(cls, tau_values) -> "TimeGrid":
        tau = np.asarray(tau_values, dtype=float)
        if tau.size < 2:
            raise GridViolation("grid needs at least two points")
        if tau[0] != 0.0:
            raise GridViolation(f"grid must start at tau = 0, got {tau[0]}")
        steps = np.diff(tau)
        if np.any(steps <= 0):
            raise GridViolation("grid must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=0, atol=1e-9 * max(1.0, steps[0])):
            raise GridViolation("grid must be uniform")
        return cls(tau_max=float(tau[-1]), step=float(steps[0]))


# ---------------------------------------------------------------------------
# Scenario bundle and decoherence values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScenarioConfig:
    """One complete simulation setup: frequencies, two phases, amplitudes, grid."""

    freq: FrequencySpec
    phase1: PhaseProfile
    phase2: PhaseProfile
    amplitudes: AmplitudeVector = field(default_factory=AmplitudeVector.balanced)
    grid: TimeGrid = field(default_factory=TimeGrid)


def validate_scenario(cfg: ScenarioConfig) -> ScenarioConfig:
    """Re-run every type invariant; returns ``cfg`` unchanged when valid.

    Dataclass construction already validates, so this is mainly useful for
    configurations assembled through ``__dict__`` surgery or deserialization.
    """
    AmplitudeVector(cfg.amplitudes.a, cfg.amplitudes.b, cfg.amplitudes.c, cfg.amplitudes.d)
    FrequencySpec(cfg.freq.components, cfg.freq.eta, cfg.freq.mu, cfg.freq.sigma)
    TimeGrid(cfg.grid.tau_max, cfg.grid.step)
    for p in (cfg.phase1, cfg.phase2):
        if not isinstance(p, (Constant, Zigzag, Parabola)):
            raise InvalidParameter(f"unknown phase profile {p!r}")
    return cfg


@dataclass(frozen=True)
class DecoherenceSet:
    """The four complex decoherence values at one scaled time."""

    kappa1: complex
    kappa2: complex
    kappa12: complex
    lambda12: complex

    def __post_init__(self):
        for name in ("kappa1", "kappa2", "kappa12", "lambda12"):
            v = getattr(self, name)
            if abs(v) > 1.0 + MAGNITUDE_TOL:
                raise InvalidParameter(f"|{name}| = {abs(v)} exceeds 1")

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.kappa1, self.kappa2, self.kappa12, self.lambda12)


# ---------------------------------------------------------------------------
# Unit conversion
# ---------------------------------------------------------------------------

def physical_to_tau(sigma: float, delta_n: float, t: float) -> float:
    """Convert a lab time to the scaled time tau = sigma * delta_n * t.

    ``sigma`` is the frequency spread (rad/s), ``delta_n`` the birefringent
    index difference, ``t`` the interaction time in seconds.
    """
    if not (sigma > 0):
        raise InvalidParameter(f"sigma must be positive, got {sigma}")
    return sigma * delta_n * t
