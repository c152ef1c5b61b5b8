"""Minimization of the shift contrast over the pinned phase space.

The contrast is smooth but non-convex (multi-modal for weakly damped
weights), so the minimizer is run from several starting points and the best
run wins.  Starts come from a coarse phase-correlation scan of each curve
against the first one, which lands inside the basin of the true shifts for
any reasonable signal-to-noise ratio, plus the zero vector.

Each run is Polak-Ribiere conjugate gradient with an automatic restart to
steepest descent whenever the conjugate direction fails to point downhill,
and a backtracking line search enforcing sufficient decrease.  Coordinates
are wrapped, not clamped: the contrast is exactly 2pi-periodic in every
coordinate, so wrapping preserves values while keeping iterates in the
principal box.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criterion import ConstrainedShift, CriterionContext, evaluate, gradient, wrap_phase

__all__ = ["OptimizerConfig", "EstimationResult", "initialize", "minimize"]


@dataclass(frozen=True)
class OptimizerConfig:
    max_iterations: int = 500
    gradient_tolerance: float = 1e-8  # max-norm
    restarts: int | None = None  # extra lattice starts; None = initializer only
    contraction: float = 0.5
    sufficient_decrease: float = 1e-4

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if not self.gradient_tolerance > 0:
            raise ValueError("gradient_tolerance must be positive")
        if not 0 < self.contraction < 1:
            raise ValueError("contraction must be in (0, 1)")
        if not 0 < self.sufficient_decrease < 1:
            raise ValueError("sufficient_decrease must be in (0, 1)")
        if self.restarts is not None and self.restarts < 0:
            raise ValueError("restarts must be nonnegative")


@dataclass(frozen=True)
class EstimationResult:
    alpha_hat: ConstrainedShift
    theta_hat: np.ndarray  # (J,) time units, first entry 0
    criterion_value: float
    iterations: int
    converged: bool
    gradient_max: float
    trace: tuple | None = None  # accepted criterion values, when requested


def initialize(ctx: CriterionContext) -> list[np.ndarray]:
    """Starting points: a phase-correlation candidate plus the zero vector.

    For each curve j >= 2 the candidate phase is 2 pi k/n at the circular lag
    k maximizing the cross-correlation with curve 1, computed directly from
    the coefficient table.  Curves whose cross spectrum carries no energy
    outside l = 0 give no information and fall back to 0; if that happens for
    every curve only the zero vector is returned.
    """
    table = ctx.table
    J, n = table.n_curves, table.n_samples
    L = table.max_frequency
    zero = np.zeros(J - 1)
    candidate = np.zeros(J - 1)
    informative = False
    d1 = table.coeffs[0]
    for j in range(1, J):
        p = table.coeffs[j] * np.conj(d1)
        off_zero = np.abs(np.delete(p, L))
        if not np.any(off_zero > 0):
            continue
        informative = True
        corr = np.fft.ifft(np.fft.ifftshift(p)).real * n
        k = int(np.argmax(corr))
        if k > n // 2:
            k -= n
        candidate[j - 1] = wrap_phase(2.0 * np.pi * k / n)
    if not informative or np.array_equal(candidate, zero):
        return [zero]
    return [candidate, zero]


def _lattice_starts(dim: int, count: int) -> list[np.ndarray]:
    # Deterministic low-discrepancy fill-in: Kronecker sequence on sqrt(primes).
    primes: list[int] = []
    m = 2
    while len(primes) < dim:
        if all(m % p for p in primes):
            primes.append(m)
        m += 1
    roots = np.sqrt(np.array(primes, dtype=float))
    starts = []
    for i in range(1, count + 1):
        frac = np.mod(i * roots, 1.0)
        starts.append(wrap_phase(frac * 2.0 * np.pi - np.pi))
    return starts


def _descend(ctx: CriterionContext, x0: np.ndarray, config: OptimizerConfig, keep_trace: bool):
    """One conjugate-gradient run from x0; returns (x, f, iters, converged, gmax, trace)."""
    x = wrap_phase(x0)
    f = evaluate(ctx, x)
    g = gradient(ctx, x)
    d = -g
    trace = [f] if keep_trace else None
    iters = 0
    gmax = float(np.max(np.abs(g)))
    while iters < config.max_iterations and gmax > config.gradient_tolerance:
        gd = float(np.dot(g, d))
        if gd >= 0.0:  # conjugacy lost; fall back to steepest descent
            d = -g
            gd = -float(np.dot(g, g))
            if gd == 0.0:
                break
        # Keep a single step inside one period of the landscape.
        step = min(1.0, np.pi / max(float(np.max(np.abs(d))), 1e-300))
        accepted = False
        for _ in range(80):
            x_try = wrap_phase(x + step * d)
            f_try = evaluate(ctx, x_try)
            if np.isfinite(f_try) and f_try <= f + config.sufficient_decrease * step * gd:
                accepted = True
                break
            step *= config.contraction
        if not accepted:  # no further decrease representable
            break
        g_new = gradient(ctx, x_try)
        beta = max(0.0, float(np.dot(g_new, g_new - g)) / max(float(np.dot(g, g)), 1e-300))
        d = -g_new + beta * d
        x, f, g = x_try, f_try, g_new
        gmax = float(np.max(np.abs(g)))
        iters += 1
        if keep_trace:
            trace.append(f)
    converged = gmax <= config.gradient_tolerance
    return x, f, iters, converged, gmax, trace


def minimize(
    ctx: CriterionContext,
    config: OptimizerConfig | None = None,
    keep_trace: bool = False,
) -> EstimationResult:
    """Estimate the shifts by minimizing the contrast from multiple starts.

    Returns the run with the lowest criterion value; exact ties go to the
    lexicographically smallest wrapped phase vector.  Non-convergence within
    the iteration budget is reported through the `converged` flag, not an
    exception; only a context whose weights vanish identically (criterion
    identically zero) or whose every run produced a non-finite value is an
    error.
    """
    config = config or OptimizerConfig()
    if not np.any(ctx.weights.values > 0):
        raise ValueError("criterion identically zero: every frequency weight vanishes")
    starts = initialize(ctx)
    if config.restarts:
        starts = starts + _lattice_starts(ctx.n_curves - 1, config.restarts)
    best = None
    for x0 in starts:
        x, f, iters, converged, gmax, trace = _descend(ctx, x0, config, keep_trace)
        if not np.isfinite(f):
            continue
        key = (f, tuple(x))
        if best is None or key < best[0]:
            best = (key, x, f, iters, converged, gmax, trace)
    if best is None:
        raise ValueError("estimation failed: no starting point produced a finite criterion value")
    _, x, f, iters, converged, gmax, trace = best
    alpha = ConstrainedShift(free=x)
    theta = alpha.full() * (ctx.table.period / (2.0 * np.pi))
    return EstimationResult(
        alpha_hat=alpha,
        theta_hat=theta,
        criterion_value=f,
        iterations=iters,
        converged=converged,
        gradient_max=gmax,
        trace=tuple(trace) if keep_trace else None,
    )
