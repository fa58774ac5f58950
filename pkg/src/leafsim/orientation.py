"""IMU noise propagation and gravity/compass attitude math.

Orientation comes from accelerometer and magnetometer only; the slow angular
motion of a leaf makes a gyroscope unnecessary. Conventions (aerospace,
body z down):

    pitch = atan2(-ax, sqrt(ay^2 + az^2))      pitch in [-90, 90] deg
    roll  = atan2(ay, az)                      roll in (-180, 180] deg
    yaw   = atan2(-mh_y, mh_x)                 yaw in [0, 360) deg

where (mh_x, mh_y) is the magnetic reading rotated back into the horizontal
plane. A level node reading accel (0, 0, 1) g is pitch 0, roll 0; a level
node whose magnetometer reads straight north is yaw 0.

The Monte Carlo accuracy estimate treats the accelerometer RMS figure as
already including the sensor's internal averaging, while magnetometer
samples are averaged on the host (n_avg of them).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "ImuNoiseSpec",
    "SensorSample",
    "EulerAngles",
    "AngleNoise",
    "rms_from_nsd",
    "average_samples",
    "euler_from_accel",
    "yaw_from_mag",
    "angle_noise_mc",
]

Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class ImuNoiseSpec:
    """Noise figures of the accelerometer/magnetometer pair.

    ``accel_rms_mg`` is the post-internal-averaging RMS noise per axis and is
    what drives the accuracy analysis; the NSD/NBW pair documents where it
    comes from. The magnetometer has no measured noise figure: 0.6 uT is a
    placeholder, and ``mag_field_ut`` is the horizontal field strength the
    yaw estimate works against.
    """

    accel_nsd_ug_rthz: float = 230.0
    accel_rms_mg: float = 1.91
    dlpf_nbw_hz: float = 8.3
    mag_rate_hz: float = 100.0
    n_avg: int = 32
    mag_rms_ut: float = 0.6
    mag_field_ut: float = 20.0

    def __post_init__(self) -> None:
        if self.accel_nsd_ug_rthz <= 0 or self.dlpf_nbw_hz <= 0 or self.mag_rate_hz <= 0:
            raise ValueError("spectral density, bandwidth and rate must be > 0")
        if self.accel_rms_mg < 0 or self.mag_rms_ut < 0:
            raise ValueError("RMS noise must be >= 0")
        if self.mag_field_ut <= 0:
            raise ValueError("mag_field_ut must be > 0")
        if self.n_avg < 1:
            raise ValueError("n_avg must be >= 1")


@dataclass(frozen=True)
class SensorSample:
    accel_g: Vec3
    mag_ut: Vec3

    def __post_init__(self) -> None:
        if not all(math.isfinite(x) for x in (*self.accel_g, *self.mag_ut)):
            raise ValueError("sample components must be finite")


@dataclass(frozen=True)
class EulerAngles:
    pitch_deg: float
    roll_deg: float
    yaw_deg: float = 0.0

    def __post_init__(self) -> None:
        if not -90.0 <= self.pitch_deg <= 90.0:
            raise ValueError("pitch must lie in [-90, 90] deg")
        if not -180.0 < self.roll_deg <= 180.0:
            raise ValueError("roll must lie in (-180, 180] deg")
        if not 0.0 <= self.yaw_deg < 360.0:
            raise ValueError("yaw must lie in [0, 360) deg")


@dataclass(frozen=True)
class AngleNoise:
    """Per-angle standard deviations, in degrees."""

    pitch_std_deg: float
    roll_std_deg: float
    yaw_std_deg: float


def rms_from_nsd(nsd_ug_rthz: float, nbw_hz: float) -> float:
    """RMS noise in mg from a spectral density (ug/sqrt(Hz)) and bandwidth."""
    if nsd_ug_rthz <= 0.0:
        raise ValueError("nsd must be > 0")
    if nbw_hz < 0.0:
        raise ValueError("nbw must be >= 0")
    return nsd_ug_rthz * math.sqrt(nbw_hz) / 1000.0


def average_samples(samples: Sequence[SensorSample]) -> SensorSample:
    """Component-wise mean of a batch of samples."""
    if not samples:
        raise ValueError("cannot average an empty sample list")
    n = len(samples)
    accel = tuple(sum(s.accel_g[i] for s in samples) / n for i in range(3))
    mag = tuple(sum(s.mag_ut[i] for s in samples) / n for i in range(3))
    return SensorSample(accel, mag)


def euler_from_accel(accel_g: Vec3) -> tuple[float, float]:
    """Pitch and roll (degrees) from a gravity reading; scale-invariant."""
    ax, ay, az = accel_g
    if ax == 0.0 and ay == 0.0 and az == 0.0:
        raise ValueError("zero acceleration vector has no attitude")
    pitch = math.degrees(math.atan2(-ax, math.hypot(ay, az)))
    roll = math.degrees(math.atan2(ay, az))
    return pitch, roll


def yaw_from_mag(mag_ut: Vec3, pitch_deg: float, roll_deg: float) -> float:
    """Tilt-compensated compass heading in [0, 360) degrees."""
    mx, my, mz = mag_ut
    sp, cp = math.sin(math.radians(pitch_deg)), math.cos(math.radians(pitch_deg))
    sr, cr = math.sin(math.radians(roll_deg)), math.cos(math.radians(roll_deg))
    xh = mx * cp + (my * sr + mz * cr) * sp
    yh = my * cr - mz * sr
    if xh == 0.0 and yh == 0.0:
        raise ValueError("degenerate horizontal field: heading undefined")
    return math.degrees(math.atan2(-yh, xh)) % 360.0


def _body_from_nav(yaw_deg: float, pitch_deg: float, roll_deg: float) -> np.ndarray:
    """Rotation taking nav-frame (north, east, down) vectors into the body frame."""
    y, p, r = (math.radians(a) for a in (yaw_deg, pitch_deg, roll_deg))
    rz = np.array(
        [[math.cos(y), math.sin(y), 0.0], [-math.sin(y), math.cos(y), 0.0], [0.0, 0.0, 1.0]]
    )
    ry = np.array(
        [[math.cos(p), 0.0, -math.sin(p)], [0.0, 1.0, 0.0], [math.sin(p), 0.0, math.cos(p)]]
    )
    rx = np.array(
        [[1.0, 0.0, 0.0], [0.0, math.cos(r), math.sin(r)], [0.0, -math.sin(r), math.cos(r)]]
    )
    return rx @ ry @ rz


def angle_noise_mc(
    noise: ImuNoiseSpec,
    true_attitude: EulerAngles,
    trials: int,
    seed: int,
) -> AngleNoise:
    """Monte Carlo standard deviation of the three Euler angles.

    Each trial perturbs the true (averaged) readings with Gaussian noise:
    accel_rms per accelerometer axis, mag_rms/sqrt(n_avg) per magnetometer
    axis. Deterministic for a given seed.
    """
    if trials < 1000:
        raise ValueError("trials must be >= 1000 for a stable estimate")
    rng = np.random.default_rng(seed)
    r = _body_from_nav(true_attitude.yaw_deg, true_attitude.pitch_deg, true_attitude.roll_deg)
    accel_true = r @ np.array([0.0, 0.0, 1.0])
    mag_true = r @ np.array([noise.mag_field_ut, 0.0, 0.0])

    accel = accel_true + rng.normal(0.0, noise.accel_rms_mg * 1e-3, size=(trials, 3))
    mag_sigma = noise.mag_rms_ut / math.sqrt(noise.n_avg)
    mag = mag_true + rng.normal(0.0, mag_sigma, size=(trials, 3))

    pitch = np.degrees(np.arctan2(-accel[:, 0], np.hypot(accel[:, 1], accel[:, 2])))
    roll = np.degrees(np.arctan2(accel[:, 1], accel[:, 2]))
    sp, cp = np.sin(np.radians(pitch)), np.cos(np.radians(pitch))
    sr, cr = np.sin(np.radians(roll)), np.cos(np.radians(roll))
    xh = mag[:, 0] * cp + (mag[:, 1] * sr + mag[:, 2] * cr) * sp
    yh = mag[:, 1] * cr - mag[:, 2] * sr
    yaw = np.degrees(np.arctan2(-yh, xh)) % 360.0
    # Wrap the circular angles' deviations before taking the spread, so that
    # attitudes near the roll/yaw seams do not inflate the statistics.
    roll_dev = (roll - true_attitude.roll_deg + 180.0) % 360.0 - 180.0
    yaw_dev = (yaw - true_attitude.yaw_deg + 180.0) % 360.0 - 180.0

    return AngleNoise(
        pitch_std_deg=float(np.std(pitch, ddof=1)),
        roll_std_deg=float(np.std(roll_dev, ddof=1)),
        yaw_std_deg=float(np.std(yaw_dev, ddof=1)),
    )
