"""Log-magnitude/phase arithmetic and compensated summation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


def log_gamma(x):
    """``ln Gamma(x)`` for positive real ``x`` (double precision, ~1e-15 relative)."""
    return gammaln(x)


@dataclass(frozen=True)
class LogComplex:
    """Complex number stored as ``exp(log_mag + 1j * phase)``; ``log_mag = -inf`` is zero."""

    log_mag: float
    phase: float = 0.0

    def __post_init__(self):
        if self.log_mag > -math.inf and not math.isfinite(self.phase):
            raise ValueError("phase must be finite for a nonzero value")
        if math.isnan(self.log_mag) or self.log_mag == math.inf:
            raise ValueError(f"log_mag must be finite or -inf, got {self.log_mag}")

    @classmethod
    def from_complex(cls, z) -> "LogComplex":
        z = complex(z)
        if z == 0:
            return cls(-math.inf, 0.0)
        return cls(math.log(abs(z)), math.atan2(z.imag, z.real))

    def to_complex(self) -> complex:
        if self.log_mag == -math.inf:
            return 0j
        r = math.exp(self.log_mag)
        return complex(r * math.cos(self.phase), r * math.sin(self.phase))

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.log_mag == -math.inf or other.log_mag == -math.inf:
            return LogComplex(-math.inf, 0.0)
        return LogComplex(self.log_mag + other.log_mag, self.phase + other.phase)

    def conjugate(self) -> "LogComplex":
        return LogComplex(self.log_mag, -self.phase)


def compensated_sum(terms):
    """Neumaier-compensated sum along axis 0, in index order.

    Works on real or complex arrays (real and imaginary parts compensated
    separately). Each column is summed independently, so results do not depend
    on how columns are batched.
    """
    terms = np.asarray(terms)
    if np.iscomplexobj(terms):
        return compensated_sum(terms.real) + 1j * compensated_sum(terms.imag)
    if terms.shape[0] == 0:
        return np.zeros(terms.shape[1:])
    total = terms[0].astype(float, copy=True)
    comp = np.zeros_like(total)
    for row in terms[1:]:
        t = total + row
        big = np.abs(total) >= np.abs(row)
        comp += np.where(big, (total - t) + row, (row - t) + total)
        total = t
    return total + comp
