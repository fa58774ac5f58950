"""Storage capacitor model: sizing, stored energy, threshold drain dynamics.

The node buffers harvested energy in a single capacitor. The harvester
enables the buck converter once the capacitor reaches ``v_chrdy`` and
disables it again at ``v_ovdis``; ``v_floor`` is the lowest voltage at which
the load still runs (by default equal to ``v_ovdis``). ESR and leakage are
not modeled: charge intervals are minutes, not days, and the chosen
aluminum-electrolytic parts are specifically low-ESR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quantities import EnergyJoule, Farad, Volt

__all__ = [
    "BufferSpec",
    "BufferState",
    "InsufficientCharge",
    "size_buffer",
    "stored_energy",
    "extractable_energy",
    "drain",
    "buffer_470uf",
    "buffer_1mf",
]


class InsufficientCharge(Exception):
    """Requested drain exceeds the energy stored in the capacitor."""

    def __init__(self, deficit: EnergyJoule):
        self.deficit = deficit
        super().__init__(f"drain exceeds stored energy by {deficit.value:.3e} J")


@dataclass(frozen=True)
class BufferSpec:
    """Storage capacitor with its harvester threshold voltages.

    ``c_nominal`` is the label value, ``c_measured`` the bench-measured
    capacitance actually used in every computation.
    """

    c_nominal: Farad
    c_measured: Farad
    v_chrdy: Volt
    v_ovdis: Volt
    v_floor: Volt

    def __post_init__(self) -> None:
        if not 0.0 < self.v_floor.value <= self.v_ovdis.value < self.v_chrdy.value:
            raise ValueError(
                "thresholds must satisfy 0 < v_floor <= v_ovdis < v_chrdy, got "
                f"{self.v_floor.value} / {self.v_ovdis.value} / {self.v_chrdy.value}"
            )


@dataclass(frozen=True)
class BufferState:
    """Instantaneous charge state of a buffer."""

    voltage: Volt


def buffer_470uf() -> BufferSpec:
    """The 470 uF build (measured 490 uF), thresholds 4.5 V / 1.9 V."""
    return BufferSpec(
        c_nominal=Farad(470e-6),
        c_measured=Farad(490e-6),
        v_chrdy=Volt(4.5),
        v_ovdis=Volt(1.9),
        v_floor=Volt(1.9),
    )


def buffer_1mf() -> BufferSpec:
    """The 1 mF build (measured 1.1 mF), thresholds 4.5 V / 1.9 V."""
    return BufferSpec(
        c_nominal=Farad(1e-3),
        c_measured=Farad(1.1e-3),
        v_chrdy=Volt(4.5),
        v_ovdis=Volt(1.9),
        v_floor=Volt(1.9),
    )


def size_buffer(e_req: EnergyJoule, v_chrdy: Volt, v_ovdis: Volt) -> Farad:
    """Capacitance needed to deliver ``e_req`` between the two thresholds.

    C = 2 * E_req / (v_chrdy^2 - v_ovdis^2)
    """
    if e_req.value <= 0.0:
        raise ValueError("e_req must be > 0")
    if v_chrdy.value <= v_ovdis.value:
        raise ValueError(
            f"v_chrdy ({v_chrdy.value} V) must exceed v_ovdis ({v_ovdis.value} V)"
        )
    return Farad(2.0 * e_req.value / (v_chrdy.value**2 - v_ovdis.value**2))


def stored_energy(c: Farad, v: Volt) -> EnergyJoule:
    """Total energy on the capacitor, C*V^2/2."""
    return EnergyJoule(0.5 * c.value * v.value**2)


def extractable_energy(spec: BufferSpec, v_hi: Volt, v_lo: Volt) -> EnergyJoule:
    """Energy released by discharging the measured capacitance from v_hi to v_lo."""
    if v_hi.value < v_lo.value:
        raise ValueError(f"v_hi ({v_hi.value}) below v_lo ({v_lo.value})")
    return EnergyJoule(0.5 * spec.c_measured.value * (v_hi.value**2 - v_lo.value**2))


def drain(spec: BufferSpec, state: BufferState, e: EnergyJoule) -> BufferState:
    """Remove ``e`` joules from the buffer and return the new state.

    Raises :class:`InsufficientCharge` (carrying the deficit) when the buffer
    does not hold that much energy.
    """
    c = spec.c_measured.value
    v_sq = state.voltage.value**2 - 2.0 * e.value / c
    if v_sq < 0.0:
        raise InsufficientCharge(EnergyJoule(-0.5 * c * v_sq))
    return BufferState(Volt(math.sqrt(v_sq)))
