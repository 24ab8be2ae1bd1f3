"""Laboratory units: imprinted phase, notch velocity, time-of-flight shift, resolvance."""
from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt
from typing import Optional

__all__ = [
    "HBAR",
    "MASS_RB87",
    "LaserPulse",
    "LabContext",
    "MissingLaserBlock",
    "imprinted_phase",
    "phase_for_metrics",
    "pulse_duration_for_phase",
    "velocity_scale",
    "notch_velocity",
    "notch_displacement",
    "resolvance",
    "reference_lab_context",
]

HBAR = 1.054571817e-34  # J s, CODATA 2018 (exact in SI since 2019)
MASS_RB87 = 1.44316060e-25  # kg

_SLOPE = (pi / 2) ** 1.5 / pi


class MissingLaserBlock(ValueError):
    pass


@dataclass(frozen=True)
class LaserPulse:
    rabi: float  # rad/s
    detuning: float  # rad/s, sign kept
    t_pulse: float  # s

    def __post_init__(self):
        if not (self.rabi > 0 and self.t_pulse > 0):
            raise ValueError("rabi frequency and pulse duration must be positive")
        if self.detuning == 0:
            raise ValueError("detuning must be nonzero")


@dataclass(frozen=True)
class LabContext:
    mass: float
    omega: float
    t_flight: float
    delta_s: float
    laser: Optional[LaserPulse] = None

    def __post_init__(self):
        if not (self.mass > 0 and self.omega > 0 and self.delta_s > 0):
            raise ValueError("mass, omega and delta_s must be positive")
        if self.t_flight < 0:
            raise ValueError("t_flight must be nonnegative")


def reference_lab_context() -> LabContext:
    """Rb-87, 2 kHz trap, 200 ms flight, 5 micron imaging resolution."""
    return LabContext(MASS_RB87, 2 * pi * 2e3, 0.2, 5e-6)


def imprinted_phase(ctx: LabContext) -> float:
    """Signed phase ``-V t / hbar`` with light shift ``V = hbar Omega^2 / (4 Delta)``."""
    if ctx.laser is None:
        raise MissingLaserBlock("lab context has no laser block")
    las = ctx.laser
    return -(las.rabi**2) / (4 * las.detuning) * las.t_pulse


def phase_for_metrics(phi: float) -> float:
    """``|phi| mod 2 pi`` as used by the notch metrics."""
    return abs(phi) % (2 * pi)


def pulse_duration_for_phase(phi: float, rabi: float, detuning: float) -> float:
    """Invert ``phi = -Omega^2 t / (4 Delta)`` for the pulse length."""
    t = -4 * detuning * phi / rabi**2
    if t <= 0:
        raise ValueError("phase sign is incompatible with the detuning sign")
    return t


def velocity_scale(ctx: LabContext) -> float:
    """``sqrt(hbar omega / m)``: one dimensionless momentum unit as a velocity."""
    return sqrt(HBAR * ctx.omega / ctx.mass)


def notch_velocity(phi: float, ctx: LabContext) -> float:
    """``sqrt(hbar omega/m) (pi/2)^{3/2} (phi - pi)/pi`` in m/s."""
    return velocity_scale(ctx) * _SLOPE * (phi - pi)


def notch_displacement(phi: float, ctx: LabContext) -> float:
    """Distance the notch moves during free flight, ``t * v``."""
    return ctx.t_flight * notch_velocity(phi, ctx)


def resolvance(ctx: LabContext) -> float:
    """``r = pi / dphi = (t / ds) sqrt(hbar omega / m) (pi/2)^{3/2}``."""
    return ctx.t_flight / ctx.delta_s * velocity_scale(ctx) * (pi / 2) ** 1.5
