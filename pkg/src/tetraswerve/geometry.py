"""Morphology geometry for the four-module tetromino platform.

The robot is a chain of four differential-drive locomotion modules hinged
together.  Depending on how the chain is folded it takes one of the seven
tetromino layouts I, L, Z, O, T, S, J.  Each module steers about a vertical
axis through its center; the steering angle ``beta_i`` is measured in that
module's chassis frame, which is rotated from the robot body frame by a
fixed hinge offset ``alpha(i)``.  The body frame origin is the centroid of
the four steering-axis centers and its orientation is anchored to module 2's
chassis.

Module centers are placed on the unit tetromino cell grid with pitch ``l``
(the module side length) and then translated so the centroid is exactly at
the origin.  Every coordinate is an exact multiple of ``l/4`` so the layout
relations below hold with exact float arithmetic.

Per-layout relations among the center coordinates (used by the concurrency
algebra and verified by the test suite):

    I:  x1=x2=x3=x4=0            y1=3*y2=-3*y3=-y4
    O:  x1=x2=-x3=-x4            y1=-y2=-y3=y4
    Z:  x2=x3=0, x1=-x4          y1=y2=-y3=-y4
    S:  x2=x3=0, x1=-x4          y1=y2=-y3=-y4   (mirror of Z in y)
    T:  x1=x3=x4=-x2/3           y2=y3=0, y1=-y4
    L:  x1=x2=x3=-x4/3           y1=5*y2, y3=y4=-3*y2
    J:  x1=x2=x3=-x4/3           y1=5*y2, y3=y4=-3*y2  (mirror of L in x)

The chain is edge-adjacent between consecutive modules except for the T
layout, whose fold requires one corner hinge (modules 1-2 sit diagonally).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .angles import wrap_half_pi, wrap_pi

SHAPES = ("I", "L", "Z", "O", "T", "S", "J")

# Integer cell positions of modules 1..4 on the unit grid, in chain order.
_SHAPE_CELLS: dict[str, tuple[tuple[int, int], ...]] = {
    "I": ((0, 3), (0, 2), (0, 1), (0, 0)),
    "O": ((1, 1), (1, 0), (0, 0), (0, 1)),
    "Z": ((-1, 1), (0, 1), (0, 0), (1, 0)),
    "S": ((-1, 0), (0, 0), (0, 1), (1, 1)),
    "L": ((0, 2), (0, 1), (0, 0), (1, 0)),
    "J": ((0, 2), (0, 1), (0, 0), (-1, 0)),
    "T": ((0, 2), (1, 1), (0, 1), (0, 0)),
}


class ShapeError(ValueError):
    """Raised for an unknown morphology shape letter."""


def parse_shape(name: str) -> str:
    """Normalize a shape letter (case-insensitive) to its canonical form."""
    shape = str(name).strip().upper()
    if shape not in SHAPES:
        raise ShapeError(
            f"unknown shape {name!r}; expected one of {', '.join(SHAPES)}"
        )
    return shape


@dataclass(frozen=True)
class GeometricParams:
    """Physical module dimensions, all in meters.

    wheel_radius: radius of each drive wheel (r_w)
    wheel_offset: distance from a wheel to the module's steering axis (d)
    module_length: side length of one square module (l)
    """

    wheel_radius: float = 0.03
    wheel_offset: float = 0.05
    module_length: float = 0.25

    def __post_init__(self) -> None:
        if not (self.wheel_radius > 0 and self.wheel_offset > 0 and self.module_length > 0):
            raise ValueError("all geometric parameters must be strictly positive")
        if not self.wheel_offset < 0.5 * self.module_length:
            raise ValueError("wheel_offset must be smaller than module_length / 2")


@dataclass(frozen=True)
class Morphology:
    """One tetromino layout of the four-module chain.

    centers: (4, 2) steering-axis positions in the body frame, meters.
    hinge_offsets: (4,) chassis orientation of each module relative to the
        body frame; steering angle beta_i plus hinge_offsets[i] is the wheel
        heading in the body frame.
    """

    shape: str
    centers: np.ndarray
    hinge_offsets: np.ndarray
    params: GeometricParams = field(default_factory=GeometricParams)

    def __post_init__(self) -> None:
        centers = np.asarray(self.centers, dtype=float).reshape(4, 2)
        offsets = np.asarray(self.hinge_offsets, dtype=float).reshape(4)
        centers.setflags(write=False)
        offsets.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "hinge_offsets", offsets)

    def heading(self, index: int, beta: float) -> float:
        """Body-frame wheel heading of one module at steering angle ``beta``."""
        return beta + float(self.hinge_offsets[index])

    def headings(self, betas: np.ndarray) -> np.ndarray:
        return np.asarray(betas, dtype=float) + self.hinge_offsets


@dataclass(frozen=True)
class WheelAxisLine:
    """Wheel-axis line of one module in normalized normal form.

    The line runs through the module center perpendicular to the wheel's
    rolling direction: points q with n . q = c, where the unit normal n
    points along the wheel heading.  Any no-skid rotation center must lie
    on this line.
    """

    nx: float
    ny: float
    c: float

    def homogeneous(self) -> np.ndarray:
        """Coefficients (nx, ny, -c) so that the line is {p : coeffs . p = 0}
        for homogeneous points p = (x, y, w)."""
        return np.array([self.nx, self.ny, -self.c])

    def point_residual(self, x: float, y: float) -> float:
        """Signed distance from a finite point to the line."""
        return self.nx * x + self.ny * y - self.c


def build_morphology(shape: str, params: GeometricParams | None = None) -> Morphology:
    """Construct the canonical body-frame layout for one tetromino shape.

    Centers are cell centers of the unit tetromino grid scaled by the module
    length and shifted so their centroid is exactly the origin.  Hinge
    offsets orient each module's chassis along its outgoing chain segment,
    relative to module 2's chassis (which defines the body frame).
    """
    shape = parse_shape(shape)
    if params is None:
        params = GeometricParams()
    cells = np.array(_SHAPE_CELLS[shape], dtype=int)
    # 4*cell - sum(cells) keeps everything integer, so centering is exact.
    quarters = 4 * cells - cells.sum(axis=0)
    centers = quarters * (params.module_length / 4.0)

    segs = np.diff(cells, axis=0).astype(float)  # chain segments 1->2, 2->3, 3->4
    seg_angles = np.arctan2(segs[:, 1], segs[:, 0])
    # Module chassis align with segments (d1, d2, d3, d3); module 2 anchors
    # the body frame, so offsets are measured against segment 2.
    raw = np.array([seg_angles[0], seg_angles[1], seg_angles[2], seg_angles[2]])
    offsets = np.array([wrap_pi(a - seg_angles[1]) for a in raw])
    return Morphology(shape=shape, centers=centers, hinge_offsets=offsets, params=params)


def all_morphologies(params: GeometricParams | None = None) -> dict[str, Morphology]:
    """Build every one of the seven layouts with shared parameters."""
    if params is None:
        params = GeometricParams()
    return {shape: build_morphology(shape, params) for shape in SHAPES}


def shape_cells(shape: str) -> tuple[tuple[int, int], ...]:
    """Integer grid cells of modules 1..4 for one shape (chain order)."""
    return _SHAPE_CELLS[parse_shape(shape)]


def wheel_axis_line(morph: Morphology, index: int, beta: float) -> WheelAxisLine:
    """Axis line of module ``index`` (0..3) at steering angle ``beta``.

    Well defined for every heading; the normal form avoids the tangent
    singularities of the slope representation at headings 0 and pi/2.
    """
    psi = morph.heading(index, beta)
    nx, ny = math.cos(psi), math.sin(psi)
    x, y = morph.centers[index]
    return WheelAxisLine(nx=nx, ny=ny, c=nx * x + ny * y)


def axis_line_matrix(morph: Morphology, betas: Iterable[float]) -> np.ndarray:
    """Stack the four homogeneous axis-line coefficient rows into a (4, 3) matrix.

    A homogeneous point p = (x, y, w) lies on all four lines iff M p = 0;
    the lines are concurrent (or all parallel, meeting at infinity) iff the
    matrix has a nontrivial null space.
    """
    psis = morph.headings(np.fromiter(betas, dtype=float, count=4))
    nx = np.cos(psis)
    ny = np.sin(psis)
    c = nx * morph.centers[:, 0] + ny * morph.centers[:, 1]
    return np.column_stack([nx, ny, -c])


def equivalent_track(morph: Morphology, gamma: float) -> float:
    """Half-spread of the module centers across the driving direction.

    Projects the centers onto the axis perpendicular to the driving angle
    ``gamma`` and returns half the peak-to-peak spread: the track width of
    the equivalent two-wheel differential-drive abstraction.  If all centers
    project to the same point (driving along a single-file layout) the
    module's own wheel track is returned as a fallback.
    """
    p = -morph.centers[:, 0] * math.sin(gamma) + morph.centers[:, 1] * math.cos(gamma)
    spread = float(p.max() - p.min())
    if spread < 1e-12:
        return morph.params.wheel_offset
    return 0.5 * spread


def icr_point(gamma: float, radius: float) -> tuple[float, float]:
    """Body-frame rotation center for driving angle ``gamma`` and signed radius.

    The platform's centroid velocity points along ``gamma``; the rotation
    center sits at distance ``radius`` along the perpendicular, on the +y
    side of the driving direction when ``radius`` is positive.
    """
    return (-radius * math.sin(gamma), radius * math.cos(gamma))


def tangent_heading(icr_homogeneous: np.ndarray, center: np.ndarray) -> float | None:
    """Wheel heading (mod pi) that keeps a module's axis line through a point.

    The point is homogeneous (x, y, w); w = 0 encodes a rotation center at
    infinity (pure translation), in which case every axis line is parallel
    to (x, y).  Returns None when the point coincides with the module center
    (heading undefined, module speed must be zero there).
    """
    px, py, pw = (float(v) for v in icr_homogeneous)
    dx = px - center[0] * pw
    dy = py - center[1] * pw
    if math.hypot(dx, dy) < 1e-12:
        return None
    return wrap_half_pi(math.atan2(dy, dx) - 0.5 * math.pi)
