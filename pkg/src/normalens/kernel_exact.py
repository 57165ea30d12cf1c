"""Exact finite-n correlation kernel of the radial ensemble.

``kernel_exact`` returns ``K_n(z, w) / n``, where

    K_n(z, w) / n = alpha / (2 pi) * exp(-n (|z|^a + |w|^a) / 2)
                    * sum_{j=1}^{n} n^(2j/a - 1) (z conj(w))^(j-1) / Gamma(2j/a)

(one factor of ``z conj(w)`` already cancelled against the prefactor, so the
origin is regular). Terms are built as log-magnitude/phase pairs, rescaled by
the largest term, and summed with compensation.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from ._parallel import map_chunks
from .ensemble import EnsembleParams, as_complex, as_complex_array, support_radius
from .logdomain import compensated_sum, log_gamma


def _exact_batch(alpha, n, z, w):
    j = np.arange(1, n + 1, dtype=float)[:, None]
    zw = z * np.conj(w)
    with np.errstate(divide="ignore"):
        log_zw = np.log(np.abs(zw))
    theta = np.angle(zw)
    jm1 = j - 1
    with np.errstate(invalid="ignore"):
        power = np.where(jm1 == 0, 0.0, jm1 * log_zw)
    log_mag = (
        (2 * j / alpha - 1) * np.log(n)
        - log_gamma(2 * j / alpha)
        + power
        - 0.5 * n * (np.abs(z) ** alpha + np.abs(w) ** alpha)
    )
    top = log_mag.max(axis=0)
    terms = np.exp(log_mag - top) * np.exp(1j * (jm1 * theta))
    return alpha / (2 * np.pi) * np.exp(top) * compensated_sum(terms)


def kernel_exact(params: EnsembleParams, z, w):
    """``K_n(z, w) / n`` for scalars or broadcastable arrays ``z``, ``w``."""
    z = as_complex_array(z, "z")
    w = as_complex_array(w, "w")
    out = map_chunks(lambda a, b: _exact_batch(params.alpha, params.n, a, b), z, w)
    return complex(out) if out.ndim == 0 else out


def ginibre_closed_form(n: int, z, w, dps: int = 30) -> complex:
    """Normalised alpha = 2 kernel through the incomplete gamma function.

    ``sum_{k<n} x^k / k! = e^x Q(n, x)`` with ``x = n z conj(w)``, so the kernel is
    ``exp(-n(|z|^2 + |w|^2)/2 + x + ln Q(n, x)) / pi``. Evaluated with mpmath
    at ``dps`` digits; independent of the summation path in :func:`kernel_exact`.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    z = as_complex(z, "z")
    w = as_complex(w, "w")
    with mpmath.workdps(dps):
        zm, wm = mpmath.mpc(z), mpmath.mpc(w)
        x = n * zm * mpmath.conj(wm)
        q = mpmath.gammainc(n, x, mpmath.inf, regularized=True)
        if q == 0:
            return 0j
        log_k = -n * (abs(zm) ** 2 + abs(wm) ** 2) / 2 + x + mpmath.log(q) - mpmath.log(mpmath.pi)
        return complex(mpmath.exp(log_k))


@dataclass
class KernelGrid:
    """``K_n(fixed_z, w) / n`` sampled on a rectangular grid of ``w``.

    ``values[i, k]`` is taken at ``w = re_axis[i] + 1j * im_axis[k]``.
    """

    fixed_z: complex
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    steps_re: int
    steps_im: int
    values: np.ndarray

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("grid bounds must satisfy min < max")
        if self.values.shape != (self.steps_re, self.steps_im):
            raise ValueError("values shape does not match (steps_re, steps_im)")

    @property
    def re_axis(self):
        return np.linspace(self.re_min, self.re_max, self.steps_re)

    @property
    def im_axis(self):
        return np.linspace(self.im_min, self.im_max, self.steps_im)

    @property
    def nodes(self):
        re, im = np.meshgrid(self.re_axis, self.im_axis, indexing="ij")
        return re + 1j * im

    def peak(self):
        """Index, location and value of the largest ``|value|`` (first in row-major order)."""
        flat = int(np.argmax(np.abs(self.values)))
        idx = np.unravel_index(flat, self.values.shape)
        return (int(idx[0]), int(idx[1])), complex(self.nodes[idx]), complex(self.values[idx])

    def nearest_index(self, w):
        w = as_complex(w, "w")
        i = int(np.argmin(np.abs(self.re_axis - w.real)))
        k = int(np.argmin(np.abs(self.im_axis - w.imag)))
        return i, k

    def half_max_width(self) -> float:
        """Diameter of the disk whose area equals the region where ``|value|`` >= half the peak."""
        mag = np.abs(self.values)
        cell = ((self.re_max - self.re_min) / (self.steps_re - 1)) * (
            (self.im_max - self.im_min) / (self.steps_im - 1)
        )
        area = np.count_nonzero(mag >= 0.5 * mag.max()) * cell
        return float(2 * np.sqrt(area / np.pi))


def kernel_grid(
    params: EnsembleParams,
    z,
    re_bounds=None,
    im_bounds=None,
    steps=181,
) -> KernelGrid:
    """Evaluate ``w -> K_n(z, w) / n`` on a grid.

    Bounds default to the support square ``[-R, R]``. ``steps`` is an int (both
    axes) or a ``(steps_re, steps_im)`` pair.
    """
    z = as_complex(z, "z")
    radius = support_radius(params)
    re_min, re_max = re_bounds if re_bounds is not None else (-radius, radius)
    im_min, im_max = im_bounds if im_bounds is not None else (re_min, re_max)
    steps_re, steps_im = (steps, steps) if np.isscalar(steps) else steps
    if steps_re < 2 or steps_im < 2:
        raise ValueError("need at least 2 steps per axis")
    re = np.linspace(re_min, re_max, steps_re)
    im = np.linspace(im_min, im_max, steps_im)
    w = re[:, None] + 1j * im[None, :]
    values = np.asarray(kernel_exact(params, z, w))
    return KernelGrid(z, float(re_min), float(re_max), float(im_min), float(im_max),
                      int(steps_re), int(steps_im), values)


def kernel_envelope(params: EnsembleParams, z, w):
    """``sqrt(K(z,z) K(w,w)) / n``, the Cauchy-Schwarz bound on ``|K(z,w)| / n``.

    Off the diagonal the kernel can be exponentially smaller than the terms it
    is summed from, so errors are measured relative to this scale.
    """
    kzz = np.real(kernel_exact(params, z, z))
    kww = np.real(kernel_exact(params, w, w))
    return np.sqrt(np.maximum(kzz, 0) * np.maximum(kww, 0))
