"""Weight accounting for the battery-powered and batteryless design variants.

The batteryless builds drop the battery and its mount in favor of a storage
capacitor plus harvesting parts, which is where essentially all of the weight
saving comes from. Sensors sit directly on leaves, so totals are checked
against the 5 g placement limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quantities import Grams

__all__ = [
    "Component",
    "DesignVariant",
    "VariantRow",
    "WEIGHT_LIMIT_G",
    "builtin_variants",
    "weight_report",
]

CATEGORIES = ("pcb", "additional", "storage")
WEIGHT_LIMIT_G = 5.0


@dataclass(frozen=True)
class Component:
    label: str
    weight: Grams
    category: str

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"category must be one of {CATEGORIES}, got {self.category!r}")


@dataclass(frozen=True)
class DesignVariant:
    name: str
    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("a variant needs at least one component")

    @property
    def total(self) -> Grams:
        return Grams(sum(c.weight.value for c in self.components))


@dataclass(frozen=True)
class VariantRow:
    """One line of the weight report.

    ``delta_pct`` is the weight reduction relative to the baseline (positive
    means lighter), kept at full precision; ``delta_display`` renders it the
    way the comparison chart does (integer percent, minus sign for savings).
    """

    name: str
    total: Grams
    delta_pct: float
    delta_display: str
    under_limit: bool


def builtin_variants() -> tuple[DesignVariant, ...]:
    """The three weighed builds: battery-powered baseline and the two capacitor sizes."""
    return (
        DesignVariant(
            "battery-powered",
            (
                Component("populated PCB", Grams(1.4), "pcb"),
                Component("additional components", Grams(1.17), "additional"),
                Component("battery + mount", Grams(3.01), "storage"),
            ),
        ),
        DesignVariant(
            "case1",
            (
                Component("populated PCB", Grams(1.4), "pcb"),
                Component("additional components", Grams(0.6), "additional"),
                Component("470uF capacitor", Grams(0.97), "storage"),
            ),
        ),
        DesignVariant(
            "case2",
            (
                Component("populated PCB", Grams(1.4), "pcb"),
                Component("additional components", Grams(0.6), "additional"),
                Component("1mF capacitor", Grams(1.44), "storage"),
            ),
        ),
    )


def _display(delta_pct: float) -> str:
    rounded = round(delta_pct)
    if rounded == 0:
        return "0%"
    return f"-{rounded}%" if rounded > 0 else f"+{-rounded}%"


def weight_report(
    variants: tuple[DesignVariant, ...] | list[DesignVariant],
    baseline: str,
) -> list[VariantRow]:
    """Totals and weight savings vs the named baseline variant."""
    by_name = {v.name: v for v in variants}
    if baseline not in by_name:
        raise ValueError(f"unknown baseline variant {baseline!r}")
    base_total = by_name[baseline].total.value
    rows = []
    for v in variants:
        delta = 100.0 * (1.0 - v.total.value / base_total)
        rows.append(
            VariantRow(
                name=v.name,
                total=v.total,
                delta_pct=delta,
                delta_display=_display(delta),
                under_limit=v.total.value < WEIGHT_LIMIT_G,
            )
        )
    return rows
