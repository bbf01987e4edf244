"""Angle wrapping helpers shared across the package.

Steering headings are direction-of-rolling angles: a wheel pointing at
``psi`` and one pointing at ``psi + pi`` span the same axis line, so most
steering math works modulo pi and uses the half-open representative
``(-pi/2, pi/2]``.  Poses and chassis orientations use ``(-pi, pi]``.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi


def wrap_pi(angle: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    r = math.remainder(angle, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def wrap_half_pi(angle: float) -> float:
    """Wrap an angle to (-pi/2, pi/2], i.e. reduce modulo pi."""
    r = math.remainder(angle, math.pi)
    if r <= -0.5 * math.pi:
        r += math.pi
    return r
