"""Unit-carrying scalar types and decibel arithmetic.

Every physical value in the toolkit is wrapped in one of these small frozen
dataclasses so that mixing units (dBm vs W, V vs J, ...) fails loudly instead
of producing silently wrong numbers. Only the units the toolkit actually
needs are defined; this is not a general units framework.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PowerDbm",
    "PowerWatt",
    "EnergyJoule",
    "Volt",
    "Farad",
    "Seconds",
    "Grams",
    "DecibelGain",
    "dbm_to_watt",
    "watt_to_dbm",
    "apply_gain",
]


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def _non_negative(name: str, value: float) -> float:
    value = float(value)
    if not value >= 0.0:  # also rejects NaN
        raise ValueError(f"{name} must be >= 0, got {value!r}")
    return value


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0.0:
        raise ValueError(f"{name} must be > 0, got {value!r}")
    return value


@dataclass(frozen=True, order=True)
class PowerDbm:
    """RF power level in dBm (log domain, referenced to 1 mW)."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _finite("PowerDbm", self.value))


@dataclass(frozen=True, order=True)
class PowerWatt:
    """Power in watts (linear-domain twin of :class:`PowerDbm`)."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _non_negative("PowerWatt", self.value))


@dataclass(frozen=True, order=True)
class EnergyJoule:
    """Energy in joules."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _non_negative("EnergyJoule", self.value))


@dataclass(frozen=True, order=True)
class Volt:
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _non_negative("Volt", self.value))


@dataclass(frozen=True, order=True)
class Farad:
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _positive("Farad", self.value))


@dataclass(frozen=True, order=True)
class Seconds:
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _non_negative("Seconds", self.value))


@dataclass(frozen=True, order=True)
class Grams:
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _non_negative("Grams", self.value))


@dataclass(frozen=True, order=True)
class DecibelGain:
    """Gain (positive) or loss (negative) in dB."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _finite("DecibelGain", self.value))


def dbm_to_watt(p: PowerDbm) -> PowerWatt:
    """Convert a dBm level to watts: 1 mW * 10^(p/10)."""
    return PowerWatt(1e-3 * 10.0 ** (p.value / 10.0))


def watt_to_dbm(p: PowerWatt) -> PowerDbm:
    """Inverse of :func:`dbm_to_watt`; zero or negative power has no dBm value."""
    if p.value <= 0.0:
        raise ValueError(f"cannot express {p.value} W in dBm")
    return PowerDbm(10.0 * math.log10(p.value / 1e-3))


def apply_gain(p: PowerDbm, g: DecibelGain) -> PowerDbm:
    """Apply a dB gain (or loss, if negative) to a dBm level."""
    return PowerDbm(p.value + g.value)
