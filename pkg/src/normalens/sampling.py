"""Exact sampling of eigenvalue moduli and the unit-spacing check.

For a rotation-invariant determinantal ensemble with weight ``exp(-n|z|^a)``
the orthogonal polynomials are monomials, and the set of moduli has the law of
independent ``M_j = (G_j / n)^(1/a)``, ``j = 1..n``, with ``G_j`` a unit-scale
gamma variable of shape ``2j/a``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammainc

from .conformal import scale_g
from .ensemble import DomainError, EnsembleParams, radial_cdf, support_radius

_SEED_MASK = (1 << 64) - 1
_ANGLE_STREAM = 0x616E676C  # separates the angle stream from the moduli stream


def _rng(*keys):
    return np.random.default_rng(np.random.SeedSequence([k & _SEED_MASK for k in keys]))


@dataclass(frozen=True)
class RadialSample:
    params: EnsembleParams
    moduli: np.ndarray
    seed: int
    angles: np.ndarray | None = None

    def __post_init__(self):
        m = np.asarray(self.moduli, dtype=float)
        if m.shape != (self.params.n,):
            raise ValueError(f"expected {self.params.n} moduli, got shape {m.shape}")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValueError("moduli must be finite and nonnegative")
        if self.angles is not None and np.shape(self.angles) != (self.params.n,):
            raise ValueError("angles must have one entry per modulus")

    @property
    def points(self):
        if self.angles is None:
            raise ValueError("sample has no angles")
        return self.moduli * np.exp(1j * self.angles)


def gamma_shapes(params: EnsembleParams):
    return 2 * np.arange(1, params.n + 1) / params.alpha


def draw_moduli(params: EnsembleParams, rng: np.random.Generator):
    g = rng.gamma(gamma_shapes(params))
    return (g / params.n) ** (1 / params.alpha)


def sample_moduli(params: EnsembleParams, seed: int) -> RadialSample:
    """One draw of the ``n`` moduli; ``moduli[j-1]`` comes from the shape ``2j/alpha`` gamma."""
    return RadialSample(params, draw_moduli(params, _rng(seed)), int(seed))


def attach_uniform_angles(sample: RadialSample, seed: int) -> RadialSample:
    """Attach iid uniform angles in ``(-pi, pi]``. For scatter export only."""
    if sample.angles is not None:
        raise ValueError("sample already has angles")
    u = _rng(seed, _ANGLE_STREAM).random(sample.params.n)
    return replace(sample, angles=np.pi - 2 * np.pi * u)


def fraction_in_disk(sample: RadialSample, radius: float) -> float:
    if radius < 0:
        raise DomainError("radius must be nonnegative")
    return np.count_nonzero(sample.moduli <= radius) / sample.params.n


def expected_count(params: EnsembleParams, radius: float) -> float:
    """Exact ``E[#{moduli <= radius}] = sum_j P(G_j <= n radius^alpha)``."""
    x = params.n * radius**params.alpha
    return float(np.sum(gammainc(gamma_shapes(params), x)))


def pooled_moduli(params: EnsembleParams, trials: int, seed: int):
    """Moduli of ``trials`` independent draws, trial ``t`` seeded by ``(seed, t)``."""
    return np.concatenate([draw_moduli(params, _rng(seed, t)) for t in range(trials)])


def radial_histogram(params: EnsembleParams, trials: int, seed: int, bins=8, r_max_fraction=0.8):
    """Empirical vs equilibrium bin probabilities on ``[0, r_max_fraction * R]``.

    Bin edges have equal equilibrium mass, so each bin gets comparable counts.
    Returns ``(edges, empirical, expected)`` with probabilities relative to all
    pooled moduli.
    """
    m = pooled_moduli(params, trials, seed)
    top = radial_cdf(params, r_max_fraction * support_radius(params))
    edges = (np.linspace(0, top, bins + 1) * 2 / params.alpha) ** (1 / params.alpha)
    counts, _ = np.histogram(m, edges)
    return edges, counts / m.size, np.diff(radial_cdf(params, edges))


@dataclass(frozen=True)
class SpacingCheckResult:
    s: float
    mean_count: float
    std_error: float
    trials: int
    target: float
    analytic_mean: float

    def __post_init__(self):
        if self.trials < 1 or self.std_error < 0:
            raise ValueError("trials must be >= 1 and std_error >= 0")

    def within_target(self, k=3.0):
        return abs(self.mean_count - self.target) <= k * self.std_error

    def within_analytic(self, k=3.0):
        return abs(self.mean_count - self.analytic_mean) <= k * self.std_error


class BulkExitError(DomainError):
    """The rescaled disk reaches the edge of the support."""


def spacing_check(params: EnsembleParams, s: float, trials: int, seed: int) -> SpacingCheckResult:
    """Monte Carlo mean of ``n f_n(D_g(s))`` over ``trials`` draws, with target ``pi s^2``."""
    if trials < 2:
        raise ValueError("need at least 2 trials for a standard error")
    radius = scale_g(params, s)
    if radius >= support_radius(params):
        raise BulkExitError(
            f"g({s}) = {radius:.6g} reaches the support radius {support_radius(params):.6g}"
        )
    counts = np.array([
        np.count_nonzero(draw_moduli(params, _rng(seed, t)) <= radius) for t in range(trials)
    ], dtype=float)
    return SpacingCheckResult(
        s=float(s),
        mean_count=float(counts.mean()),
        std_error=float(counts.std(ddof=1) / np.sqrt(trials)),
        trials=int(trials),
        target=float(np.pi * s * s),
        analytic_mean=expected_count(params, radius),
    )
