"""Forward and inverse kinematics of the four-module platform.

The platform pose is the body-frame origin (centroid of the steering axes)
plus the body orientation.  Each module contributes a rolling speed ``v_i``
along its wheel heading; treating the platform as rigid, the body twist is
recovered from the four module velocity vectors and, conversely, a desired
body twist induces a unique velocity vector at each steering axis.

Per module, the differential pair maps between (wheel rates) and (rolling
speed, steering rate): the wheel-rate sum drives translation and the
difference, scaled by the wheel offset, steers the module about its axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .angles import wrap_pi
from .geometry import GeometricParams, Morphology


@dataclass(frozen=True)
class Pose:
    """World-frame pose (x, y, theta); theta wrapped to (-pi, pi]."""

    x: float
    y: float
    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", wrap_pi(float(self.theta)))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.theta])


@dataclass(frozen=True)
class Twist:
    """Planar twist (vx, vy, omega) tagged with its reference frame."""

    vx: float
    vy: float
    omega: float
    frame: Literal["world", "body"] = "body"

    def as_array(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.omega])

    def to_world(self, theta: float) -> "Twist":
        if self.frame == "world":
            return self
        c, s = math.cos(theta), math.sin(theta)
        return Twist(c * self.vx - s * self.vy, s * self.vx + c * self.vy,
                     self.omega, frame="world")

    def to_body(self, theta: float) -> "Twist":
        if self.frame == "body":
            return self
        c, s = math.cos(theta), math.sin(theta)
        return Twist(c * self.vx + s * self.vy, -s * self.vx + c * self.vy,
                     self.omega, frame="body")


@dataclass(frozen=True)
class ModuleVelocities:
    """Per-module rolling speeds, steering angles and steering rates.

    Angles are chassis-relative steering angles wrapped to (-pi, pi];
    speeds are signed along the wheel heading.
    """

    v: np.ndarray
    beta: np.ndarray
    beta_dot: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.v, dtype=float).reshape(4)
        beta = np.array([wrap_pi(b) for b in np.asarray(self.beta, dtype=float).reshape(4)])
        beta_dot = np.asarray(self.beta_dot, dtype=float).reshape(4)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "beta_dot", beta_dot)


@dataclass(frozen=True)
class WheelRates:
    """Left/right wheel angular rates (rad/s) for modules 1..4."""

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", np.asarray(self.left, dtype=float).reshape(4))
        object.__setattr__(self, "right", np.asarray(self.right, dtype=float).reshape(4))

    def max_abs(self) -> float:
        return float(max(np.abs(self.left).max(), np.abs(self.right).max()))


def g_matrix(morph: Morphology, betas: np.ndarray) -> np.ndarray:
    """Linear map (3, 4) from module rolling speeds to the body twist.

    The translation rows average the four heading unit vectors.  The
    rotation row projects each module velocity onto the tangential direction
    about the centroid and normalizes by the total squared axis distance,
    which recovers the rigid-body rate exactly for any consistent velocity
    field (the centroid being the mean of the axes makes the cross terms
    cancel).
    """
    psis = morph.headings(np.asarray(betas, dtype=float).reshape(4))
    hx, hy = np.cos(psis), np.sin(psis)
    rx, ry = morph.centers[:, 0], morph.centers[:, 1]
    # r_perp . h with r_perp = (-ry, rx)
    tangential = -ry * hx + rx * hy
    denom = float(np.sum(rx * rx + ry * ry))
    return np.vstack([0.25 * hx, 0.25 * hy, tangential / denom])


def body_twist_from_modules(morph: Morphology, mv: ModuleVelocities) -> Twist:
    """Body-frame twist implied by the module speeds and headings."""
    vx, vy, omega = g_matrix(morph, mv.beta) @ mv.v
    return Twist(float(vx), float(vy), float(omega), frame="body")


def forward_kinematics(morph: Morphology, mv: ModuleVelocities, theta: float) -> Twist:
    """World-frame twist of the platform for given module speeds and headings."""
    return body_twist_from_modules(morph, mv).to_world(theta)


def module_velocity_field(morph: Morphology, twist: Twist) -> np.ndarray:
    """(4, 2) rigid-body velocity vectors at the steering axes for a body twist."""
    if twist.frame != "body":
        raise ValueError("module_velocity_field expects a body-frame twist")
    rx, ry = morph.centers[:, 0], morph.centers[:, 1]
    return np.column_stack([twist.vx - twist.omega * ry, twist.vy + twist.omega * rx])


def inverse_kinematics(
    morph: Morphology,
    twist: Twist,
    beta_hint: np.ndarray | None = None,
) -> ModuleVelocities:
    """Module speeds and headings realizing a body twist without skidding.

    Evaluates the rigid-body velocity field at each steering axis; the wheel
    heading is the field direction and the rolling speed its magnitude.
    This is the unique velocity assignment consistent with the no-skid
    constraint, so it inverts :func:`forward_kinematics` exactly.  Modules
    whose field vanishes (on the rotation center, or a zero twist) keep the
    hint angle, with zero speed.
    """
    field = module_velocity_field(morph, twist)
    speeds = np.hypot(field[:, 0], field[:, 1])
    hints = (np.zeros(4) if beta_hint is None
             else np.asarray(beta_hint, dtype=float).reshape(4))
    betas = np.empty(4)
    v = np.empty(4)
    for i in range(4):
        if speeds[i] < 1e-15:
            betas[i] = hints[i]
            v[i] = 0.0
        else:
            psi = math.atan2(field[i, 1], field[i, 0])
            betas[i] = wrap_pi(psi - morph.hinge_offsets[i])
            v[i] = speeds[i]
    return ModuleVelocities(v=v, beta=betas, beta_dot=np.zeros(4))


def inverse_kinematics_pinv(
    morph: Morphology, twist: Twist, betas: np.ndarray
) -> np.ndarray:
    """Least-squares module speeds for a body twist at fixed wheel headings.

    Pseudo-inverse of the forward map with the headings frozen.  Unlike
    :func:`inverse_kinematics` this does not adjust the headings, so the
    result can demand skidding when the axis lines are not concurrent; it
    exists for the comparison experiment.
    """
    if twist.frame != "body":
        raise ValueError("inverse_kinematics_pinv expects a body-frame twist")
    return np.linalg.pinv(g_matrix(morph, betas)) @ twist.as_array()


def module_to_wheels(
    v: float, beta_dot: float, params: GeometricParams
) -> tuple[float, float]:
    """Left/right wheel rates for one module's rolling speed and steering rate."""
    left = (v + params.wheel_offset * beta_dot) / params.wheel_radius
    right = (v - params.wheel_offset * beta_dot) / params.wheel_radius
    return left, right


def wheels_to_module(
    left: float, right: float, params: GeometricParams
) -> tuple[float, float]:
    """Rolling speed and steering rate from one module's wheel rates."""
    v = 0.5 * params.wheel_radius * (left + right)
    beta_dot = 0.5 * params.wheel_radius * (left - right) / params.wheel_offset
    return v, beta_dot


def modules_to_wheel_rates(
    v: np.ndarray, beta_dot: np.ndarray, params: GeometricParams
) -> WheelRates:
    """Vectorized :func:`module_to_wheels` over all four modules."""
    v = np.asarray(v, dtype=float).reshape(4)
    beta_dot = np.asarray(beta_dot, dtype=float).reshape(4)
    left = (v + params.wheel_offset * beta_dot) / params.wheel_radius
    right = (v - params.wheel_offset * beta_dot) / params.wheel_radius
    return WheelRates(left=left, right=right)


def wheel_rates_to_modules(
    rates: WheelRates, params: GeometricParams
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`wheels_to_module`; returns (v, beta_dot) arrays."""
    v = 0.5 * params.wheel_radius * (rates.left + rates.right)
    beta_dot = 0.5 * params.wheel_radius * (rates.left - rates.right) / params.wheel_offset
    return v, beta_dot
