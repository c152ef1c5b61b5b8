"""Empirical shift-estimation contrast and its analytic derivatives.

For a coefficient table d_{jl} and weights delta_l, the contrast evaluated at
candidate phases alpha (alpha_1 pinned to 0) is

    M(alpha) = (1/J) sum_j sum_l |delta_l|^2 |ct_{jl}(alpha) - cb_l(alpha)|^2,

where ct_{jl}(alpha) = exp(i l alpha_j) d_{jl} are the rephased coefficients
and cb_l(alpha) is their cross-curve mean.  M is nonnegative, exactly
2pi-periodic in each coordinate, and invariant under adding a common constant
to all J phases; pinning alpha_1 = 0 removes that degeneracy.

Closed forms for the derivatives, used by the optimizer and for inference:

    dM/dalpha_k      = (2/J)   sum_l |delta_l|^2 l   Im( ct_{kl} conj(cb_l) )
    d2M/dalpha_k^2   = (2/J^2) sum_l |delta_l|^2 l^2 Re( ct_{kl} sum_{j != k} conj(ct_{jl}) )
    d2M/dal_k dal_m  = -(2/J^2) sum_l |delta_l|^2 l^2 Re( ct_{kl} conj(ct_{ml}) )

for k, m in 2..J.  Frequency sums run from the largest |l| down to the
smallest so that, for decaying weight families, the smallest terms accumulate
first; tolerances quoted in the tests assume 64-bit floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fourier import SpectralTable, WeightScheme

__all__ = [
    "ConstrainedShift",
    "CriterionContext",
    "IdentifiabilityCheck",
    "wrap_phase",
    "evaluate",
    "evaluate_unconstrained",
    "gradient",
    "hessian",
    "grid_profile",
    "check_identifiability",
]


def wrap_phase(x):
    """Wrap angles to the principal interval [-pi, pi)."""
    return np.mod(np.asarray(x, dtype=float) + np.pi, 2.0 * np.pi) - np.pi


@dataclass(frozen=True)
class ConstrainedShift:
    """Phases (alpha_2, ..., alpha_J) with alpha_1 = 0 implied.

    Each coordinate lies in [-pi, pi]; use `wrap_phase` before construction
    for values produced by unconstrained arithmetic.
    """

    free: np.ndarray  # (J-1,) float

    def __post_init__(self):
        free = np.atleast_1d(np.asarray(self.free, dtype=float))
        object.__setattr__(self, "free", free)
        if free.ndim != 1 or free.size < 1:
            raise ValueError("free phases must be a vector of length J-1 >= 1")
        if not np.all(np.isfinite(free)):
            raise ValueError("phases must be finite")
        if np.any(np.abs(free) > np.pi):
            raise ValueError("phases must lie in [-pi, pi]")

    @property
    def n_curves(self) -> int:
        return self.free.size + 1

    def full(self) -> np.ndarray:
        """All J phases, with the pinned leading zero."""
        return np.concatenate(([0.0], self.free))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.free, dtype=dtype)


def _free_phases(alpha, n_curves: int) -> np.ndarray:
    if isinstance(alpha, ConstrainedShift):
        free = alpha.free
    else:
        free = np.atleast_1d(np.asarray(alpha, dtype=float))
    if free.shape != (n_curves - 1,):
        raise ValueError(
            f"expected {n_curves - 1} free phases for {n_curves} curves, "
            f"got shape {free.shape}"
        )
    return free


@dataclass(frozen=True)
class CriterionContext:
    """Immutable pairing of a coefficient table with a weight scheme."""

    table: SpectralTable
    weights: WeightScheme
    # Internal layout: frequencies sorted by decreasing |l| (summation order).
    _order: np.ndarray = field(init=False, repr=False, compare=False)
    _ls: np.ndarray = field(init=False, repr=False, compare=False)
    _w2: np.ndarray = field(init=False, repr=False, compare=False)
    _coeffs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.weights.values.size != self.table.n_samples:
            raise ValueError(
                "weight vector length does not match the table frequency range"
            )
        ls = self.table.frequencies
        order = np.argsort(-np.abs(ls), kind="stable")
        object.__setattr__(self, "_order", order)
        object.__setattr__(self, "_ls", ls[order].astype(float))
        object.__setattr__(self, "_w2", self.weights.values[order] ** 2)
        object.__setattr__(self, "_coeffs", self.table.coeffs[:, order])

    @property
    def n_curves(self) -> int:
        return self.table.n_curves

    def _rephased(self, phases: np.ndarray) -> np.ndarray:
        return self._coeffs * np.exp(1j * np.outer(phases, self._ls))


def evaluate_unconstrained(ctx: CriterionContext, phases) -> float:
    """Contrast for all J phases free (used to test common-phase invariance)."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (ctx.n_curves,):
        raise ValueError("expected one phase per curve")
    ct = ctx._rephased(phases)
    resid = ct - ct.mean(axis=0)
    terms = ctx._w2 * np.mean(np.abs(resid) ** 2, axis=0)
    return float(np.sum(terms))


def evaluate(ctx: CriterionContext, alpha) -> float:
    """Contrast value at constrained phases (alpha_1 = 0).  Nonnegative."""
    free = _free_phases(alpha, ctx.n_curves)
    return evaluate_unconstrained(ctx, np.concatenate(([0.0], free)))


def gradient(ctx: CriterionContext, alpha) -> np.ndarray:
    """Derivative of the contrast in alpha_2..alpha_J."""
    free = _free_phases(alpha, ctx.n_curves)
    J = ctx.n_curves
    ct = ctx._rephased(np.concatenate(([0.0], free)))
    cbar = ct.mean(axis=0)
    terms = ctx._w2 * ctx._ls * np.imag(ct * np.conj(cbar))
    return (2.0 / J) * np.sum(terms[1:], axis=1)


def hessian(ctx: CriterionContext, alpha) -> np.ndarray:
    """Second derivatives in alpha_2..alpha_J; symmetric (J-1) x (J-1)."""
    free = _free_phases(alpha, ctx.n_curves)
    J = ctx.n_curves
    ct = ctx._rephased(np.concatenate(([0.0], free)))
    w2l2 = ctx._w2 * ctx._ls**2
    # C[k, m] = sum_l w2 l^2 Re(ct_kl conj(ct_ml)) over all J curves.
    C = np.real((ct * w2l2) @ ct.conj().T)
    H = -C[1:, 1:].copy()
    diag = C.sum(axis=1) - np.diag(C)  # sum over j != k
    H[np.diag_indices_from(H)] = diag[1:]
    return (2.0 / J**2) * H


def grid_profile(ctx: CriterionContext, grid, coordinate: int = 0, base=None) -> np.ndarray:
    """Contrast along one free coordinate, vectorized over `grid`.

    Coordinate c varies alpha_{c+2}; the remaining free phases are held at
    `base` (zeros by default).  Uses the decomposition

        M(alpha) = sum_l |delta_l|^2 [ (1/J) sum_j |ct_{jl}|^2 - |cb_l|^2 ],

    whose first part does not depend on alpha at all.
    """
    J = ctx.n_curves
    if not 0 <= coordinate < J - 1:
        raise ValueError("coordinate out of range")
    grid = np.asarray(grid, dtype=float)
    free = np.zeros(J - 1) if base is None else _free_phases(base, J).copy()
    ct = ctx._rephased(np.concatenate(([0.0], free)))
    row = coordinate + 1
    others = ct.sum(axis=0) - ct[row]
    moving = np.exp(1j * np.outer(grid, ctx._ls)) * ctx._coeffs[row]
    cbar = (others[None, :] + moving) / J
    const_terms = ctx._w2 * np.mean(np.abs(ctx._coeffs) ** 2, axis=0)
    var_terms = ctx._w2 * np.abs(cbar) ** 2
    return np.sum(const_terms) - np.sum(var_terms, axis=1)


@dataclass(frozen=True)
class IdentifiabilityCheck:
    """Outcome of the coprime-frequency plausibility check."""

    ok: bool
    active_frequencies: np.ndarray
    threshold: float
    message: str


def _has_coprime_pair(ls) -> bool:
    ls = sorted(ls, key=abs)
    for i in range(len(ls)):
        for k in range(i + 1, len(ls)):
            if math.gcd(abs(int(ls[i])), abs(int(ls[k]))) == 1:
                return True
    return False


def check_identifiability(ctx: CriterionContext, threshold: float | None = None) -> IdentifiabilityCheck:
    """Check that the weighted active spectrum contains two coprime frequencies.

    Uniqueness of the population contrast minimum needs the active frequency
    set {l : delta_l |c_l| != 0} to contain a coprime pair; otherwise the
    candidate shifts are only identified on a sublattice of the circle.  The
    true |c_l| are unknown, so activity is judged from the noisy magnitudes
    mean_j |d_{jl}| against `threshold` (default 3 sigma_rough / sqrt(n),
    with sigma_rough read off the top-|l| quarter of the spectrum).  This is
    a plausibility check: failure warrants a warning, not an error.
    """
    table = ctx.table
    n = table.n_samples
    ls = table.frequencies
    mags = np.abs(table.coeffs).mean(axis=0)
    if threshold is None:
        band = np.abs(ls) >= max(1, int(np.ceil(0.75 * table.max_frequency)))
        power = np.mean(np.abs(table.coeffs) ** 2, axis=0)
        sigma2_rough = n * float(np.median(power[band])) if band.any() else 0.0
        threshold = 3.0 * np.sqrt(sigma2_rough / n)
    active_mask = (ls != 0) & (ctx.weights.values > 0) & (mags > threshold)
    active = ls[active_mask]
    if active.size >= 2 and _has_coprime_pair(active):
        msg = "active frequencies contain a coprime pair"
        return IdentifiabilityCheck(True, active, float(threshold), msg)
    if active.size < 2:
        msg = (
            f"only {active.size} active weighted frequencies above the "
            f"magnitude threshold {threshold:.3g}; shifts may not be identifiable"
        )
    else:
        msg = (
            "no coprime pair among active frequencies "
            f"{sorted(set(np.abs(active).tolist()))}; shifts are only "
            "identified up to a sublattice"
        )
    return IdentifiabilityCheck(False, active, float(threshold), msg)
