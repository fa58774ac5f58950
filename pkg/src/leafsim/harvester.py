"""RF harvester model: sensitivity cutoff, two-phase efficiency, charge times.

The harvester charges the storage capacitor at a rate set by the RF input
power and a conversion efficiency. Below ``v_phase`` the boost circuit runs
in its lossy cold-start regime; above it the main boost takes over.
Efficiencies are not datasheet numbers: they are calibrated from measured
charge times of the two production buffers (`CHARGE_TIME_DATA` below), and
the two-phase split is what makes those measurements mutually consistent
across capacitor sizes (roughly 8% cold vs 31% main at 0 dBm input).

Within a phase the input power seen by the capacitor is constant, so charge
time and voltage evolution have closed forms; the simulator relies on that
for exact, deterministic event times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .energy_buffer import BufferSpec
from .quantities import Farad, PowerDbm, Seconds, Volt, dbm_to_watt

__all__ = [
    "EfficiencyCurve",
    "HarvesterModel",
    "ChargeObservation",
    "NoHarvest",
    "CalibrationError",
    "efficiency_at",
    "charge_time",
    "voltage_after",
    "calibrate",
    "CHARGE_TIME_DATA",
    "builtin_observations",
    "builtin_model",
]


class NoHarvest(Exception):
    """Input power below the harvester sensitivity; charge time is unbounded."""


class CalibrationError(ValueError):
    """Charge-time observations are missing or mutually inconsistent."""


@dataclass(frozen=True)
class EfficiencyCurve:
    """Conversion efficiency vs input power, as (dBm, fraction) points."""

    points: tuple[tuple[PowerDbm, float], ...]

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise ValueError("efficiency curve needs at least 2 points")
        powers = [p.value for p, _ in self.points]
        if any(b <= a for a, b in zip(powers, powers[1:])):
            raise ValueError("efficiency curve powers must be strictly increasing")
        for _, eta in self.points:
            if not 0.0 < eta < 1.0:
                raise ValueError(f"efficiency must lie in (0, 1), got {eta}")


def efficiency_at(curve: EfficiencyCurve, p: PowerDbm) -> float:
    """Interpolate the curve linearly in the dBm domain, clamped at the ends.

    The measurement grid is uniform in dBm, so log-domain interpolation keeps
    errors symmetric; outside the covered range the nearest calibrated value
    is used rather than extrapolating.
    """
    pts = curve.points
    x = p.value
    if x <= pts[0][0].value:
        return pts[0][1]
    if x >= pts[-1][0].value:
        return pts[-1][1]
    for (p0, e0), (p1, e1) in zip(pts, pts[1:]):
        if p0.value <= x <= p1.value:
            f = (x - p0.value) / (p1.value - p0.value)
            return e0 + f * (e1 - e0)
    raise AssertionError("unreachable: curve points are ordered")


@dataclass(frozen=True)
class HarvesterModel:
    """Two-phase harvester: cold-start efficiency below v_phase, main above."""

    eta_cold: EfficiencyCurve
    eta_main: EfficiencyCurve
    sensitivity: PowerDbm = PowerDbm(-15.0)
    v_phase: Volt = Volt(1.9)

    def __post_init__(self) -> None:
        if self.v_phase.value <= 0.0:
            raise ValueError("v_phase must be > 0")


@dataclass(frozen=True)
class ChargeObservation:
    """One measured charge-time point: capacitor, voltage span, power, time."""

    c: Farad
    v_start: Volt
    v_target: Volt
    p_in: PowerDbm
    t_measured: Seconds
    kind: str  # "cold" (from 0 V) or "successive" (from the discharge floor)

    def __post_init__(self) -> None:
        if self.kind not in ("cold", "successive"):
            raise ValueError(f"kind must be 'cold' or 'successive', got {self.kind!r}")
        if self.t_measured.value <= 0.0:
            raise ValueError("t_measured must be > 0")
        if self.v_target.value <= self.v_start.value:
            raise ValueError("v_target must exceed v_start")


def _phase_time(c: float, v_a: float, v_b: float, eta: float, p_watt: float) -> float:
    return c * (v_b**2 - v_a**2) / (2.0 * eta * p_watt)


def charge_time(
    model: HarvesterModel,
    spec: BufferSpec,
    v_start: Volt,
    v_target: Volt,
    p_in: PowerDbm,
) -> Seconds:
    """Time to charge the buffer from v_start to v_target at constant input power.

    Piecewise closed form: within a constant-efficiency phase,
    t = C * (v_b^2 - v_a^2) / (2 * eta * P_in). Raises :class:`NoHarvest`
    below the sensitivity threshold.
    """
    if v_target.value <= v_start.value:
        raise ValueError("v_target must exceed v_start")
    if p_in < model.sensitivity:
        raise NoHarvest(
            f"{p_in.value} dBm is below the {model.sensitivity.value} dBm sensitivity"
        )
    c = spec.c_measured.value
    p_watt = dbm_to_watt(p_in).value
    v0, v1, vp = v_start.value, v_target.value, model.v_phase.value
    t = 0.0
    if v0 < vp:
        hi = min(v1, vp)
        t += _phase_time(c, v0, hi, efficiency_at(model.eta_cold, p_in), p_watt)
        v0 = hi
    if v1 > v0:
        t += _phase_time(c, v0, v1, efficiency_at(model.eta_main, p_in), p_watt)
    return Seconds(t)


def voltage_after(
    model: HarvesterModel,
    spec: BufferSpec,
    v_start: Volt,
    p_in: PowerDbm,
    dt: Seconds,
) -> Volt:
    """Buffer voltage after harvesting for ``dt`` seconds at constant input power.

    Inverse of :func:`charge_time`: v(t) = sqrt(v0^2 + 2*eta*P*t/C), applied
    per phase with the phase crossing handled exactly. The result is capped
    at v_chrdy (regulation stops charging there). Below sensitivity the
    voltage is simply unchanged.
    """
    if p_in < model.sensitivity:
        return v_start
    c = spec.c_measured.value
    p_watt = dbm_to_watt(p_in).value
    v = min(v_start.value, spec.v_chrdy.value)
    vp = model.v_phase.value
    remaining = dt.value
    if v < vp and remaining > 0.0:
        eta = efficiency_at(model.eta_cold, p_in)
        t_cross = _phase_time(c, v, min(vp, spec.v_chrdy.value), eta, p_watt)
        if remaining < t_cross:
            return Volt(math.sqrt(v**2 + 2.0 * eta * p_watt * remaining / c))
        v = min(vp, spec.v_chrdy.value)
        remaining -= t_cross
    if remaining > 0.0 and v < spec.v_chrdy.value:
        eta = efficiency_at(model.eta_main, p_in)
        v_sq = v**2 + 2.0 * eta * p_watt * remaining / c
        v = min(math.sqrt(v_sq), spec.v_chrdy.value)
    return Volt(v)


def calibrate(
    observations: Iterable[ChargeObservation],
    v_phase: Volt = Volt(1.9),
    sensitivity: PowerDbm = PowerDbm(-15.0),
) -> HarvesterModel:
    """Fit the two-phase efficiency curves to measured charge times.

    A successive observation (floor -> target) pins the main-boost
    efficiency at its input power:

        eta_main = C * (v_target^2 - v_phase^2) / (2 * P * t_successive)

    A cold observation at the same power then isolates the cold-start phase,
    whose duration is the cold time minus the successive time:

        eta_cold = C * v_phase^2 / (2 * P * (t_cold - t_successive))

    Several observations at one power are averaged. Every power point needs
    at least one successive observation; cold observations are optional.
    """
    by_power: dict[float, dict[str, list[ChargeObservation]]] = {}
    for obs in observations:
        slot = by_power.setdefault(obs.p_in.value, {"cold": [], "successive": []})
        slot[obs.kind].append(obs)
    if not by_power:
        raise CalibrationError("no charge-time observations given")

    vp = v_phase.value
    main_pts: list[tuple[PowerDbm, float]] = []
    cold_pts: list[tuple[PowerDbm, float]] = []
    for p in sorted(by_power):
        cold, succ = by_power[p]["cold"], by_power[p]["successive"]
        if not succ:
            raise CalibrationError(f"no successive observation at {p} dBm")
        p_watt = dbm_to_watt(PowerDbm(p)).value
        etas = [
            0.5 * o.c.value * (o.v_target.value**2 - vp**2) / (p_watt * o.t_measured.value)
            for o in succ
        ]
        main_pts.append((PowerDbm(p), sum(etas) / len(etas)))
        if cold:
            t_succ = sum(o.t_measured.value for o in succ) / len(succ)
            etas = []
            for o in cold:
                dt = o.t_measured.value - t_succ
                if dt <= 0.0:
                    raise CalibrationError(
                        f"cold charge time at {p} dBm ({o.t_measured.value:.3f} s) does "
                        f"not exceed the successive time ({t_succ:.3f} s)"
                    )
                etas.append(0.5 * o.c.value * vp**2 / (p_watt * dt))
            cold_pts.append((PowerDbm(p), sum(etas) / len(etas)))

    if len(main_pts) < 2:
        raise CalibrationError("need observations at two or more input powers")
    if not cold_pts:
        # No cold data: fall back to the main curve for the (short) cold phase.
        cold_pts = main_pts
    elif len(cold_pts) < 2:
        cold_pts = [cold_pts[0], (PowerDbm(cold_pts[0][0].value + 1e-6), cold_pts[0][1])]
    return HarvesterModel(
        eta_cold=EfficiencyCurve(tuple(cold_pts)),
        eta_main=EfficiencyCurve(tuple(main_pts)),
        sensitivity=sensitivity,
        v_phase=v_phase,
    )


# Bench-measured charge times (minutes) of the two production buffers on a
# uniform input-power grid, charging to 4.5 V. "cold" starts from 0 V,
# "successive" from the 1.9 V discharge floor. Capacitances are the measured
# values (490 uF and 1.1 mF).
_POWER_GRID_DBM = (-15.0, -12.5, -10.0, -7.5, -5.0, -2.5, 0.0)

CHARGE_TIME_DATA: dict[tuple[str, str], tuple[float, ...]] = {
    ("470uF", "cold"): (
        51.6674441655477,
        14.2852517127991,
        6.51599034865697,
        3.03283656040827,
        1.5777442574501,
        0.794835801919301,
        0.399235741297404,
    ),
    ("470uF", "successive"): (
        32.4160100777944,
        8.42984786430995,
        3.60942230621974,
        1.63517007827759,
        0.830230331420899,
        0.426346508661906,
        0.219642905394236,
    ),
    ("1mF", "cold"): (
        116.099621045589,
        30.0775133252144,
        13.095721968015,
        6.31956293185552,
        3.19734695752462,
        1.65223197937012,
        0.86369704802831,
    ),
    ("1mF", "successive"): (
        77.8878621260325,
        18.9325842062632,
        7.41878706614176,
        3.46779428720474,
        1.74288170337677,
        0.882898986339569,
        0.460833887259165,
    ),
}

_MEASURED_CAP = {"470uF": 490e-6, "1mF": 1.1e-3}


def builtin_observations(buffer: str) -> tuple[ChargeObservation, ...]:
    """The bundled charge-time measurements for ``"470uF"`` or ``"1mF"``."""
    if buffer not in _MEASURED_CAP:
        raise ValueError(f"unknown buffer {buffer!r}; expected '470uF' or '1mF'")
    c = Farad(_MEASURED_CAP[buffer])
    obs = []
    for kind in ("cold", "successive"):
        v_start = Volt(0.0) if kind == "cold" else Volt(1.9)
        for p, minutes in zip(_POWER_GRID_DBM, CHARGE_TIME_DATA[(buffer, kind)]):
            obs.append(
                ChargeObservation(
                    c=c,
                    v_start=v_start,
                    v_target=Volt(4.5),
                    p_in=PowerDbm(p),
                    t_measured=Seconds(minutes * 60.0),
                    kind=kind,
                )
            )
    return tuple(obs)


def builtin_model(buffer: str = "470uF") -> HarvesterModel:
    """Harvester model calibrated on the bundled data for one buffer."""
    return calibrate(builtin_observations(buffer))


def nearest_builtin(c_measured: Farad) -> str:
    """Name of the bundled dataset whose capacitor is closest to ``c_measured``."""
    return min(_MEASURED_CAP, key=lambda k: abs(_MEASURED_CAP[k] - c_measured.value))
