"""Ensemble parameters, equilibrium density, support and angular regions.

The ensemble is the random normal matrix model with radial potential
``V(z) = |z|**alpha`` and weight ``exp(-n V)``. Points in the plane are plain
Python ``complex`` values (or numpy complex arrays where vectorised).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# slack on the closed support test so grid points placed exactly on the
# boundary radius survive rounding
_SUPPORT_RTOL = 1e-12


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class EnsembleParams:
    alpha: float
    n: int

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha < 2:
            raise DomainError(f"alpha must be a finite real >= 2, got {self.alpha!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "n", int(self.n))


def as_complex(z, name="z"):
    """Validate and coerce a scalar to a finite ``complex``."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return z


def as_complex_array(z, name="z"):
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def support_radius(params: EnsembleParams) -> float:
    return (2.0 / params.alpha) ** (1.0 / params.alpha)


def in_support(params: EnsembleParams, z):
    return np.abs(z) <= support_radius(params) * (1 + _SUPPORT_RTOL)


def density_at(params: EnsembleParams, z):
    """Equilibrium density ``alpha**2 |z|**(alpha-2) / (4 pi)``, zero off the support.

    Accepts scalars or arrays; returns a float for scalar input.
    """
    a = params.alpha
    r = np.abs(as_complex_array(z))
    rho = np.where(in_support(params, r), a * a * r ** (a - 2) / (4 * np.pi), 0.0)
    return float(rho) if rho.ndim == 0 else rho


def radial_cdf(params: EnsembleParams, r):
    """Equilibrium mass inside the disk of radius ``r``: ``(alpha/2) r**alpha`` capped at 1."""
    r = np.asarray(r, dtype=float)
    out = np.minimum(0.5 * params.alpha * np.maximum(r, 0.0) ** params.alpha, 1.0)
    return float(out) if out.ndim == 0 else out


def angular_distance(z, w):
    """Wrapped ``|arg z - arg w|`` in ``[0, pi]``."""
    return np.abs(np.angle(np.asarray(z) * np.conj(w)))


@dataclass(frozen=True)
class AngularRegion:
    """Open sector ``|arg w - center_arg| < half_width`` (wrapped)."""

    center_arg: float
    half_width: float

    def __post_init__(self):
        if not (0 < self.half_width <= math.pi):
            raise DomainError(f"half_width must lie in (0, pi], got {self.half_width}")

    def contains(self, w):
        w = np.asarray(w, dtype=complex)
        d = np.abs(np.angle(w * np.exp(-1j * self.center_arg)))
        return (d < self.half_width) & (w != 0)


def sector(params: EnsembleParams, z) -> AngularRegion:
    """The sector around ``arg z`` of half-width ``2 pi / alpha``."""
    z = as_complex(z)
    if z == 0:
        raise DomainError("arg z is undefined at the origin")
    return AngularRegion(math.atan2(z.imag, z.real), 2 * math.pi / params.alpha)


def in_delta_region(params: EnsembleParams, z, w):
    """True where both points are in the support and their arguments differ by < 2 pi / alpha.

    Vectorised over ``z`` and ``w``; raises :class:`DomainError` if any point is 0.
    """
    z = as_complex_array(z, "z")
    w = as_complex_array(w, "w")
    if np.any(z == 0) or np.any(w == 0):
        raise DomainError("the angular condition is undefined at the origin")
    inside = (
        (angular_distance(z, w) < 2 * np.pi / params.alpha)
        & in_support(params, z)
        & in_support(params, w)
    )
    return bool(inside) if inside.ndim == 0 else inside
