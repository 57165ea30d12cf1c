"""Unit-spacing rescaling, conformal maps, universal kernels and identity checks.

All fractional powers use the principal logarithm. The identity checks draw
points from the principal sector, where the maps compose without branch jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ensemble import DomainError, EnsembleParams, as_complex_array, support_radius
from .kernel_asymptotic import kernel_asymptotic

IDENTITY_NAMES = ("phi_identity", "u_identity", "g_composition", "phi_roundtrip")
RELATIVE_TOLERANCE = 1e-10
_TINY = np.finfo(float).tiny


def _scalar_or_array(x):
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


def _principal_power(w, power, name):
    w = as_complex_array(w, name)
    zero = w == 0
    if np.any(zero) and not float(power).is_integer():
        raise DomainError(f"{name}^{power} needs a branch choice at the origin")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(power * (np.log(np.abs(w)) + 1j * np.angle(w)))
    if power == 0:
        return np.ones_like(w)
    return np.where(zero, 0j, out)


def scale_g(params: EnsembleParams, s):
    """Radius ``g(s) = (2 pi s^2 / (n alpha))^(1/alpha)`` whose disk holds ``pi s^2`` eigenvalues on average."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0) or not np.all(np.isfinite(s)):
        raise DomainError("s must be finite and nonnegative")
    out = (2 * np.pi * s**2 / (params.n * params.alpha)) ** (1 / params.alpha)
    return _scalar_or_array(out)


def map_phi(params: EnsembleParams, w):
    """``phi(w) = sqrt(n) w^(alpha/2)``."""
    return _scalar_or_array(math.sqrt(params.n) * _principal_power(w, params.alpha / 2, "w"))


def map_phi_derivative(params: EnsembleParams, w):
    a = params.alpha
    return _scalar_or_array(math.sqrt(params.n) * (a / 2) * _principal_power(w, a / 2 - 1, "w"))


def map_phi_inverse(params: EnsembleParams, w):
    """``(w / sqrt(n))^(2/alpha)``, the inverse of :func:`map_phi` on ``|arg w| < 2 pi / alpha``."""
    w = as_complex_array(w, "w") / math.sqrt(params.n)
    return _scalar_or_array(_principal_power(w, 2 / params.alpha, "w"))


def u_scale(params: EnsembleParams) -> float:
    return math.sqrt(params.alpha / (2 * math.pi))


def map_u(params: EnsembleParams, w):
    """``u(w) = sqrt(alpha / (2 pi)) w``."""
    return _scalar_or_array(u_scale(params) * np.asarray(w, dtype=complex))


def map_u_inverse(params: EnsembleParams, w):
    return _scalar_or_array(np.asarray(w, dtype=complex) / u_scale(params))


def universal_kernel(z, w):
    """``exp(z w* - |z|^2/2 - |w|^2/2) / pi``."""
    z = as_complex_array(z, "z")
    w = as_complex_array(w, "w")
    out = np.exp(z * np.conj(w) - 0.5 * np.abs(z) ** 2 - 0.5 * np.abs(w) ** 2) / np.pi
    return _scalar_or_array(out)


def rescaled_kernel(params: EnsembleParams, z, w):
    """``(2/alpha) exp((2 pi/alpha)(z w* - |z|^2/2 - |w|^2/2))``."""
    z = as_complex_array(z, "z")
    w = as_complex_array(w, "w")
    a = params.alpha
    expo = z * np.conj(w) - 0.5 * np.abs(z) ** 2 - 0.5 * np.abs(w) ** 2
    return _scalar_or_array((2 / a) * np.exp((2 * np.pi / a) * expo))


def sine_kernel(x, y):
    """``sin(pi (x - y)) / (pi (x - y))`` with value 1 on the diagonal."""
    return _scalar_or_array(np.sinc(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)))


@dataclass(frozen=True)
class IdentityResidual:
    identity_name: str
    max_abs_residual: float
    points_checked: int
    max_rel_residual: float

    def __post_init__(self):
        if self.identity_name not in IDENTITY_NAMES:
            raise ValueError(f"unknown identity {self.identity_name!r}")
        if not (self.max_abs_residual >= 0 and self.max_rel_residual >= 0):
            raise ValueError("residuals must be nonnegative")

    @property
    def passed(self) -> bool:
        return self.max_rel_residual <= RELATIVE_TOLERANCE

    def to_dict(self):
        return {
            "identity": self.identity_name,
            "max_abs_residual": self.max_abs_residual,
            "points_checked": self.points_checked,
            "max_rel_residual": self.max_rel_residual,
        }


def _residual(name, lhs, rhs):
    lhs, rhs = np.ravel(lhs), np.ravel(rhs)
    if lhs.size == 0:
        raise ValueError("empty point set")
    diff = np.abs(lhs - rhs)
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), _TINY)
    return IdentityResidual(name, float(diff.max()), int(lhs.size), float((diff / scale).max()))


def _all_pairs(points):
    points = np.ravel(as_complex_array(points))
    z, w = np.meshgrid(points, points, indexing="ij")
    return z.ravel(), w.ravel()


def default_sector_points(params: EnsembleParams, radii=5, angles=5):
    """Support points with ``|arg| <= 0.9 pi / alpha``; all pairs lie in the Delta region."""
    r = support_radius(params) * np.linspace(0.1, 1.0, radii)
    t = np.linspace(-0.9, 0.9, angles) * np.pi / params.alpha
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


def default_plane_points(count=10, seed=0):
    rng = np.random.default_rng(seed)
    return rng.uniform(-2, 2, count) + 1j * rng.uniform(-2, 2, count)


def default_radii_s():
    return np.array([0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0])


def verify_phi_identity(params: EnsembleParams, points=None) -> IdentityResidual:
    """``n Khat(z, w)/n`` against ``phi'(z) K(phi z, phi w) conj(phi'(w))`` over all point pairs."""
    if points is None:
        points = default_sector_points(params)
    z, w = _all_pairs(points)
    lhs = params.n * np.asarray(kernel_asymptotic(params, z, w))
    rhs = (
        np.asarray(map_phi_derivative(params, z))
        * np.asarray(universal_kernel(map_phi(params, z), map_phi(params, w)))
        * np.conj(map_phi_derivative(params, w))
    )
    return _residual("phi_identity", lhs, rhs)


def verify_u_identity(params: EnsembleParams, points=None, forward_u=False) -> IdentityResidual:
    """Rescaled kernel against the universal kernel pulled back by a linear map.

    The map that makes the identity exact is ``u^{-1}(z) = z / u_scale``, the
    same map that turns ``phi^{-1}`` into ``g``. ``forward_u=True`` uses ``u``
    itself, which only agrees when ``alpha = 2 pi``.
    """
    if points is None:
        points = default_plane_points()
    z, w = _all_pairs(points)
    scale = u_scale(params) if forward_u else 1 / u_scale(params)
    lhs = np.asarray(rescaled_kernel(params, z, w))
    rhs = scale * np.asarray(universal_kernel(scale * z, scale * w)) * scale
    return _residual("u_identity", lhs, rhs)


def verify_g_composition(params: EnsembleParams, radii=None) -> IdentityResidual:
    """``g(s)`` against ``phi^{-1}(u^{-1}(s))`` for real ``s > 0``."""
    s = default_radii_s() if radii is None else np.ravel(np.asarray(radii, dtype=float))
    if s.size and np.any(s <= 0):
        raise DomainError("g composition is checked on s > 0")
    lhs = np.asarray(scale_g(params, s), dtype=complex)
    rhs = np.asarray(map_phi_inverse(params, map_u_inverse(params, s)))
    return _residual("g_composition", lhs, rhs)


def verify_phi_roundtrip(params: EnsembleParams, points=None) -> IdentityResidual:
    """``phi^{-1}(phi(w)) = w`` on the principal sector ``|arg w| < 2 pi / alpha``."""
    if points is None:
        r = np.linspace(0.05, 1.5, 6)
        t = np.linspace(-0.95, 0.95, 9) * 2 * np.pi / params.alpha
        points = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    w = np.ravel(as_complex_array(points))
    return _residual("phi_roundtrip", map_phi_inverse(params, map_phi(params, w)), w)


VERIFIERS = {
    "phi": verify_phi_identity,
    "u": verify_u_identity,
    "g": verify_g_composition,
    "roundtrip": verify_phi_roundtrip,
}
