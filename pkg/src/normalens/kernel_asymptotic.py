"""Leading-order asymptotic kernel and its error against the exact kernel."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from ._parallel import map_chunks
from .ensemble import (
    DomainError,
    EnsembleParams,
    as_complex_array,
    in_delta_region,
    support_radius,
)
from .kernel_exact import kernel_exact


def _half_alpha_is_integer(alpha):
    return float(alpha / 2).is_integer()


def _principal_log(x):
    with np.errstate(divide="ignore"):
        return np.log(np.abs(x)) + 1j * np.angle(x)


def kernel_asymptotic(params: EnsembleParams, z, w):
    """``Khat_n(z, w) / n = alpha^2/(4 pi) (z w*)^(a/2-1) exp(n[(z w*)^(a/2) - |z|^a/2 - |w|^a/2])``.

    Principal branch for the fractional powers. At the origin the value is
    defined only when ``alpha / 2`` is an integer.
    """
    a, n = params.alpha, params.n
    z = as_complex_array(z, "z")
    w = as_complex_array(w, "w")
    zw = z * np.conj(w)
    at_origin = zw == 0
    if np.any(at_origin) and not _half_alpha_is_integer(a):
        raise DomainError("(z conj w)^(alpha/2) needs a branch choice at the origin")
    log_zw = _principal_log(zw)
    # exponent rewritten as -(hz - hw)^2/2 + hz hw (e^{i phi} - 1): no cancellation near z = w
    hz, hw = np.abs(z) ** (0.5 * a), np.abs(w) ** (0.5 * a)
    phi = 0.5 * a * log_zw.imag
    rotation = -2 * np.sin(0.5 * phi) ** 2 + 1j * np.sin(phi)
    with np.errstate(invalid="ignore", over="ignore"):
        prefactor_log = 0j if a == 2 else (0.5 * a - 1) * log_zw
        log_val = prefactor_log + n * (-0.5 * (hz - hw) ** 2 + hz * hw * rotation)
        out = a * a / (4 * np.pi) * np.exp(log_val)
    if a != 2:
        out = np.where(at_origin, 0j, out)
    return complex(out) if out.ndim == 0 else out


def kernel_piecewise(params: EnsembleParams, z, w):
    """The asymptotic kernel inside the Delta region, exactly zero elsewhere."""
    z = as_complex_array(z, "z")
    w = as_complex_array(w, "w")
    inside = np.asarray(in_delta_region(params, z, w))
    out = np.where(inside, kernel_asymptotic(params, z, w), 0j)
    return complex(out) if out.ndim == 0 else out


def cross_term_log_magnitude(params: EnsembleParams, z, w):
    """``ln |exp(n (z w*)^(a/2))| = n (rs)^(a/2) cos(a (theta - xi) / 2)``.

    ``theta - xi`` is the principal argument of ``z conj(w)``.
    """
    z = as_complex_array(z, "z")
    w = as_complex_array(w, "w")
    if np.any(z == 0) or np.any(w == 0):
        raise DomainError("argument undefined at the origin")
    a = params.alpha
    rs = np.abs(z) * np.abs(w)
    out = params.n * rs ** (a / 2) * np.cos(a * np.angle(z * np.conj(w)) / 2)
    return float(out) if out.ndim == 0 else out


def secondary_peak_angles(params: EnsembleParams) -> list[float]:
    """Nonzero multiples of ``4 pi / alpha`` lying in ``(-pi, pi]``, ascending."""
    step = 4 * math.pi / params.alpha
    angles = []
    k = 1
    while k * step <= math.pi * (1 + 1e-15):
        angles.extend([k * step, -k * step])
        k += 1
    return sorted(a for a in angles if -math.pi < a <= math.pi + 1e-15)


@dataclass(frozen=True)
class DeltaSample:
    """Polar sample of pairs ``(z, w)`` in the Delta region.

    ``z`` runs over ``n_radii`` radii on the positive real axis (the kernels
    depend on ``z`` and ``w`` only through ``|z|``, ``|w|`` and ``z conj w``, so
    one ray suffices). ``w`` takes every radius at each of ``n_angles`` relative
    angles spaced evenly on ``[-c, c)`` with ``c = angle_fraction * 2 pi / alpha``.
    Radii are ``radius_fraction * R * k / n_radii`` for ``k = 1..n_radii``; the
    angle grid contains 0, so the diagonal is included.
    """

    n_radii: int = 24
    n_angles: int = 48
    angle_fraction: float = 24 / 25
    radius_fraction: float = 1.0

    def __post_init__(self):
        if self.n_radii < 1 or self.n_angles < 1:
            raise ValueError("sample must contain at least one pair")
        if not (0 <= self.angle_fraction < 1):
            raise ValueError("angle_fraction must lie in [0, 1)")
        if not (0 < self.radius_fraction <= 1):
            raise ValueError("radius_fraction must lie in (0, 1]")

    def radii(self, params):
        k = np.arange(1, self.n_radii + 1)
        return self.radius_fraction * support_radius(params) * k / self.n_radii

    def angles(self, params):
        c = self.angle_fraction * 2 * np.pi / params.alpha
        k = np.arange(self.n_angles) - self.n_angles // 2
        return c * k / (self.n_angles // 2) if self.n_angles > 1 else np.zeros(1)

    def pairs(self, params):
        r = self.radii(params)
        zr, wr, psi = np.meshgrid(r, r, self.angles(params), indexing="ij")
        return (zr + 0j).ravel(), (wr * np.exp(1j * psi)).ravel()

    def describe(self):
        return {"kind": "polar_delta_sample", **asdict(self)}


@dataclass(frozen=True)
class ErrorTableRow:
    alpha: float
    n: int
    r_sup: float
    grid_spec: dict
    argmax_z: complex = 0j
    argmax_w: complex = 0j

    def __post_init__(self):
        if not self.r_sup >= 0:
            raise ValueError("r_sup must be nonnegative")


def error_sup(params: EnsembleParams, sample: DeltaSample | None = None, pairs=None) -> ErrorTableRow:
    """Largest ``|exact - asymptotic|`` (both divided by n) over a Delta-region sample.

    ``pairs`` may be an explicit ``(z, w)`` array pair; otherwise ``sample`` (or the
    default :class:`DeltaSample`) generates it. Ties go to the first pair.
    """
    if pairs is not None:
        z, w = (np.ravel(as_complex_array(p)) for p in pairs)
        spec = {"kind": "explicit_pairs", "pairs": int(z.size)}
    else:
        sample = sample or DeltaSample()
        z, w = sample.pairs(params)
        spec = sample.describe()
    if z.size == 0:
        raise ValueError("empty sample")
    diff = map_chunks(
        lambda a, b: np.abs(kernel_exact(params, a, b) - kernel_asymptotic(params, a, b)),
        z, w, out_dtype=float,
    )
    i = int(np.argmax(diff))
    return ErrorTableRow(params.alpha, params.n, float(diff[i]), spec, complex(z[i]), complex(w[i]))


def error_table(alphas, ns, sample: DeltaSample | None = None) -> list[ErrorTableRow]:
    if not alphas or not ns:
        raise ValueError("need at least one alpha and one n")
    return [error_sup(EnsembleParams(a, n), sample) for a in alphas for n in ns]
