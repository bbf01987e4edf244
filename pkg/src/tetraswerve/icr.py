"""Layer 1: mapping pose error to a desired instantaneous center of rotation.

The tracking error is rotated into the body frame, split into a driving
direction and a heading error, and condensed into a single rotation-center
target in body-frame polar form: a driving angle in [-pi/2, pi/2], a signed
radius bounded by a saturation value, and a drive sign that extends the
half-plane angle range to the full plane (negative sign drives the wheels
backward instead of swinging them around).

The radius comes from a hyperbolic-tangent law: it equals speed/turn-rate
when that is small and saturates smoothly at ``r_max`` instead of diverging
when the platform should drive straight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import wrap_half_pi, wrap_pi
from .geometry import icr_point
from .kinematics import Pose


@dataclass(frozen=True)
class TrackingError:
    """Body-frame position error (meters) and heading error (radians)."""

    x: float
    y: float
    theta: float

    def distance(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class HeadingGains:
    """Heading-loop PID gains plus the radius saturation bound (meters)."""

    kp: float = 2.0
    ki: float = 0.0
    kd: float = 0.0
    r_max: float = 10.0

    def __post_init__(self) -> None:
        if self.kp <= 0:
            raise ValueError("heading kp must be positive")
        if self.r_max <= 0:
            raise ValueError("r_max must be positive")


@dataclass(frozen=True)
class IcrTarget:
    """Desired rotation center in body-frame polar coordinates.

    gamma: driving angle in [-pi/2, pi/2]; the centroid velocity direction
        is gamma when drive_sign is +1 and gamma + pi when it is -1.
    radius: signed distance to the rotation center, |radius| <= r_max;
        positive puts the center on the +y side of the driving direction.
    saturated: the radius hit its bound, i.e. the platform should translate;
        the steering target degrades to four parallel headings at gamma.
    """

    gamma: float
    radius: float
    drive_sign: float = 1.0
    saturated: bool = False

    def point(self) -> tuple[float, float]:
        """Finite body-frame rotation center (undefined direction if saturated)."""
        return icr_point(self.gamma, self.radius)

    def homogeneous(self) -> np.ndarray:
        """Rotation center as a homogeneous point (x, y, w).

        A saturated target maps to the point at infinity in the direction
        perpendicular-left of the driving angle, which every axis line of a
        translating platform passes through.
        """
        if self.saturated:
            return np.array([-math.sin(self.gamma), math.cos(self.gamma), 0.0])
        x, y = self.point()
        return np.array([x, y, 1.0])


def body_error(current: Pose, desired: Pose) -> TrackingError:
    """Rotate the world-frame pose error into the current body frame."""
    dx = desired.x - current.x
    dy = desired.y - current.y
    c, s = math.cos(current.theta), math.sin(current.theta)
    return TrackingError(
        x=c * dx + s * dy,
        y=-s * dx + c * dy,
        theta=wrap_pi(desired.theta - current.theta),
    )


def driving_angle(
    err: TrackingError, previous: tuple[float, float] = (0.0, 1.0)
) -> tuple[float, float]:
    """Driving angle in [-pi/2, pi/2] plus drive sign for a position error.

    The full-plane direction of the error is folded into the half plane by
    reversing the rolling direction instead of steering past +-pi/2.  A zero
    position error keeps the previous target (hold semantics); the drive
    sign at x = 0 is +1.
    """
    if err.x == 0.0 and err.y == 0.0:
        return previous
    if err.x < 0.0:
        return math.atan2(-err.y, -err.x), -1.0
    return math.atan2(err.y, err.x), 1.0


def heading_rate(theta_e: float, gains: HeadingGains) -> float:
    """Proportional desired platform turn rate for a heading error."""
    return gains.kp * theta_e


def desired_radius(speed: float, theta_dot: float, r_max: float) -> float:
    """Signed rotation radius, smoothly saturated at ``r_max``.

    Equals speed / theta_dot in the unsaturated regime (relative error below
    x^2/3 for |speed / (theta_dot * r_max)| = x < 1); the zero-turn-rate
    limit is +-r_max rather than a singularity.  ``speed`` may carry the
    drive sign.
    """
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    if theta_dot == 0.0:
        if speed == 0.0:
            return 0.0
        return math.copysign(r_max, speed)
    return r_max * math.tanh(speed / (theta_dot * r_max))


def equivalent_diff_drive(
    speed: float, theta_dot: float, track: float
) -> tuple[float, float]:
    """Equivalent two-wheel speeds (left, right) for a signed centroid speed,
    turn rate and half-track; diagnostic view of the turning-radius law."""
    return speed + track * theta_dot, speed - track * theta_dot


@dataclass
class IcrPlan:
    """One planning step: the rotation-center target plus speed demands."""

    icr: IcrTarget
    speed: float
    theta_dot: float
    error: TrackingError


class IcrPlanner:
    """Stateful layer-1 planner; holds the last driving direction.

    The only state is the hold register for the driving angle and drive
    sign, used when the position error vanishes; one planner instance is
    stepped sequentially by a single control loop.
    """

    def __init__(
        self,
        gains: HeadingGains,
        cruise_speed: float = 0.2,
        approach_gain: float = 1.5,
        parallel_threshold: float = 0.99,
    ) -> None:
        if cruise_speed <= 0:
            raise ValueError("cruise_speed must be positive")
        self.gains = gains
        self.cruise_speed = cruise_speed
        self.approach_gain = approach_gain
        self.parallel_threshold = parallel_threshold
        self._hold: tuple[float, float] = (0.0, 1.0)

    def reset(self) -> None:
        self._hold = (0.0, 1.0)

    def step(self, err: TrackingError) -> IcrPlan:
        gamma, sign = driving_angle(err, previous=self._hold)
        gamma = wrap_half_pi(gamma) if abs(gamma) > 0.5 * math.pi else gamma
        self._hold = (gamma, sign)
        speed = min(self.cruise_speed, self.approach_gain * err.distance())
        theta_dot = heading_rate(err.theta, self.gains)
        radius = desired_radius(sign * speed, theta_dot, self.gains.r_max)
        saturated = abs(radius) >= self.parallel_threshold * self.gains.r_max
        icr = IcrTarget(gamma=gamma, radius=radius, drive_sign=sign, saturated=saturated)
        return IcrPlan(icr=icr, speed=speed, theta_dot=theta_dot, error=err)
