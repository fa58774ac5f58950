"""Path loss anchored at an on-leaf measurement, plus regulatory checks.

The only measured propagation point is 40 dB of loss at 1 m with the node
attached to a leaf; that anchor already contains the leaf-attachment excess
over free space. A log-distance term with a configurable exponent extends it
over the 1-2 m deployment range. No fading, antenna patterns or polarization
effects are modeled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quantities import DecibelGain, PowerDbm

__all__ = [
    "PathLossModel",
    "RegulatoryRegion",
    "ComplianceVerdict",
    "REGIONS",
    "path_loss",
    "received_power",
    "required_tx_power",
    "check_regulatory",
]


@dataclass(frozen=True)
class PathLossModel:
    """Log-distance path loss: anchor_loss + 10 * exponent * log10(d / anchor)."""

    anchor_loss: DecibelGain = DecibelGain(40.0)
    anchor_distance_m: float = 1.0
    exponent: float = 2.0

    def __post_init__(self) -> None:
        if self.anchor_distance_m <= 0.0:
            raise ValueError("anchor_distance_m must be > 0")
        if self.exponent <= 0.0:
            raise ValueError("exponent must be > 0")
        if self.anchor_loss.value <= 0.0:
            raise ValueError("anchor_loss must be > 0 dB")


@dataclass(frozen=True)
class RegulatoryRegion:
    """A band and its radiated-power limit (EIRP or ERP, kept as a label)."""

    name: str
    band_low_mhz: float
    band_high_mhz: float
    limit: PowerDbm
    limit_kind: str  # "EIRP" | "ERP"

    def __post_init__(self) -> None:
        if self.band_low_mhz >= self.band_high_mhz:
            raise ValueError("band_low_mhz must be below band_high_mhz")
        if self.limit_kind not in ("EIRP", "ERP"):
            raise ValueError(f"limit_kind must be 'EIRP' or 'ERP', got {self.limit_kind!r}")


# The two regions relevant to the 915 MHz ISM deployment. ERP is compared
# directly against EIRP without the 2.15 dB dipole conversion.
REGIONS: dict[str, RegulatoryRegion] = {
    "fcc": RegulatoryRegion("FCC 902-928 MHz", 902.0, 928.0, PowerDbm(36.0), "EIRP"),
    "eu": RegulatoryRegion("EU 915-921 MHz", 915.0, 921.0, PowerDbm(36.0), "ERP"),
}


@dataclass(frozen=True)
class ComplianceVerdict:
    in_band: bool
    compliant: bool
    margin: DecibelGain


def path_loss(model: PathLossModel, d_m: float) -> DecibelGain:
    """Loss in dB at distance ``d_m`` meters."""
    if d_m <= 0.0:
        raise ValueError("distance must be > 0")
    return DecibelGain(
        model.anchor_loss.value
        + 10.0 * model.exponent * math.log10(d_m / model.anchor_distance_m)
    )


def received_power(tx: PowerDbm, model: PathLossModel, d_m: float) -> PowerDbm:
    return PowerDbm(tx.value - path_loss(model, d_m).value)


def required_tx_power(sensitivity: PowerDbm, model: PathLossModel, d_m: float) -> PowerDbm:
    """Minimum transmit power that still reaches ``sensitivity`` at ``d_m``."""
    return PowerDbm(sensitivity.value + path_loss(model, d_m).value)


def check_regulatory(tx: PowerDbm, region: RegulatoryRegion, freq_mhz: float) -> ComplianceVerdict:
    """Check a transmit level against a region; the verdict carries all outcomes."""
    return ComplianceVerdict(
        in_band=region.band_low_mhz <= freq_mhz <= region.band_high_mhz,
        compliant=tx.value <= region.limit.value,
        margin=DecibelGain(region.limit.value - tx.value),
    )
