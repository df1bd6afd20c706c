"""Quadrature oracle for the output covariance matrix.

Rebuilds the output second moments directly from the time-domain solution of
the reduced Langevin equations, without touching the analytic transfer matrix.
Time is measured in units of 1/G, so the pulse lasts tau = r and Ga = lambda.

Every output operator is kept as

    O = d . (B, B^dag, C, C^dag) + int f(t) a_in(t) dt + int h(t) a_in^dag(t) dt

with kernels sampled on a uniform grid. Because the input noise is
delta-correlated, <O1 O2> collapses to d1^T M d2 + int f1(t) h2(t) dt, and the
remaining single integrals (plus the cumulative ones that build the kernels)
are done with composite Simpson rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from cvoml import gaussian as gs
from cvoml.errors import AccuracyError, DegenerateCouplingError, ParameterError
from cvoml.model import SystemParams

MIN_STEPS = 256
DEFAULT_STEPS = 4096
DRIFT_TOL = 1e-8


@dataclass(frozen=True)
class QuadratureGrid:
    steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps <= 0 or self.steps % 2:
            raise ParameterError(f"quadrature steps must be a positive even integer, got {self.steps}")
        if self.steps < MIN_STEPS:
            raise AccuracyError(f"grid of {self.steps} steps is too coarse (minimum {MIN_STEPS})")

    def refined(self) -> "QuadratureGrid":
        return QuadratureGrid(2 * self.steps)


@dataclass
class _Op:
    d: np.ndarray  # coefficients on (B, B^dag, C, C^dag)
    f: np.ndarray  # kernel on a_in(t)
    h: np.ndarray  # kernel on a_in^dag(t)

    def __add__(self, other):
        return _Op(self.d + other.d, self.f + other.f, self.h + other.h)

    def __sub__(self, other):
        return _Op(self.d - other.d, self.f - other.f, self.h - other.h)

    def __rmul__(self, c):
        return _Op(c * self.d, c * self.f, c * self.h)

    def dag(self) -> "_Op":
        return _Op(np.conj(self.d[[1, 0, 3, 2]]), np.conj(self.h), np.conj(self.f))


def _second_moments(n0: float) -> np.ndarray:
    """<b_i b_j> for the discrete basis (B, B^dag, C, C^dag)."""
    m = np.zeros((4, 4))
    m[0, 1] = n0 + 1.0  # <B B^dag>
    m[1, 0] = n0        # <B^dag B>
    m[2, 3] = 1.0       # <C C^dag>
    return m


def _output_operators(params: SystemParams, steps: int) -> tuple[list[_Op], np.ndarray]:
    lam = params.Ga / params.G
    tau = float(params.r) * 1.0  # G = 1
    sign = 1.0 if lam < 1.0 else -1.0  # growth (amplifier) or decay (attenuator) of w
    k = abs(1.0 - lam)
    p, q = math.sqrt(1.0 / k), math.sqrt(lam / k)

    t = np.linspace(0.0, tau, steps + 1)
    zero = np.zeros_like(t, dtype=complex)

    def discrete(*coeffs):
        return _Op(np.array(coeffs, dtype=complex), zero.copy(), zero.copy())

    u0 = discrete(q, 0, 0, p)  # u(0) = q a_m(0) + p c_a^dag(0)
    w0 = discrete(p, 0, 0, q)  # w(0) = p a_m(0) + q c_a^dag(0)

    # w(tau) = e^{s k tau} w(0) + i s sqrt(2k) int_0^tau e^{s k (tau - t)} a_in^dag(t) dt
    w_tau = math.exp(sign * k * tau) * w0
    w_tau.h = 1j * sign * math.sqrt(2 * k) * np.exp(sign * k * (tau - t))

    # invert (u, w) -> (a_m, c_a^dag); the determinant q^2 - p^2 is -sign
    b_out = sign * (p * w_tau - q * u0)
    c_out = (sign * (p * u0 - q * w_tau)).dag()

    # a_out(t) = -a_in(t) - i sqrt(2k) w^dag(t), with
    # w^dag(t) = e^{s k t} w^dag(0) - i s sqrt(2k) int_0^t e^{s k (t - t')} a_in(t') dt'.
    # Project on the normalized temporal mode with weight e^{s k t}.
    weight_sq = np.exp(2 * sign * k * t)
    norm_int = simpson(weight_sq, x=t)
    n_out = 1.0 / math.sqrt(norm_int)
    # swapping the order of the double integral leaves int_{t'}^tau e^{2 s k t} dt;
    # accumulate it from tau backwards, since norm_int minus a forward cumulative
    # integral cancels catastrophically once it is multiplied by e^{k t} (attenuator)
    tail = cumulative_simpson(weight_sq[::-1], dx=t[1] - t[0], initial=0.0)[::-1]
    f_a = -n_out * np.exp(sign * k * t) - 2 * k * sign * n_out * np.exp(-sign * k * t) * tail
    a_out = (-1j * math.sqrt(2 * k) * n_out * norm_int) * w0.dag()
    a_out.f = f_a.astype(complex)
    return [a_out, b_out, c_out], t


def _covariance_from_ops(ops: list[_Op], t: np.ndarray, n0: float) -> np.ndarray:
    quads = []
    for op in ops:
        adj = op.dag()
        quads.append((1 / math.sqrt(2)) * (op + adj))
        quads.append((-1j / math.sqrt(2)) * (op - adj))
    moments = _second_moments(n0)
    sigma = np.empty((gs.DIM, gs.DIM))
    for i, qi in enumerate(quads):
        for j, qj in enumerate(quads):
            val = qi.d @ moments @ qj.d + simpson(qi.f * qj.h, x=t)
            sigma[i, j] = val.real
    return gs.symmetrize(sigma)


def numeric_output_covariance(params: SystemParams, grid: QuadratureGrid | None = None,
                              check_convergence: bool = False) -> np.ndarray:
    """Output covariance of (A_out, B_out, C_out) by direct quadrature.

    With ``check_convergence`` the result is recomputed on a grid twice as fine
    and an ``AccuracyError`` is raised if any entry moves by more than 1e-8
    (relative to max(1, |entry|)).
    """
    if not isinstance(params, SystemParams):
        raise TypeError("numeric_output_covariance expects SystemParams")
    grid = grid or QuadratureGrid()
    if abs(params.G - params.Ga) / max(params.G, params.Ga) <= 1e-9:
        raise DegenerateCouplingError("degenerate coupling G = Ga")
    if params.r == 0:
        return gs.make_input_covariance(params.n0)
    sigma = _covariance_from_ops(*_output_operators(params, grid.steps), params.n0)
    if check_convergence:
        fine = _covariance_from_ops(*_output_operators(params, grid.refined().steps), params.n0)
        drift = refinement_drift(sigma, fine)
        if drift > DRIFT_TOL:
            raise AccuracyError(f"grid refinement changed the covariance by {drift:.3e} (> {DRIFT_TOL:g})")
    return sigma


def refinement_drift(coarse: np.ndarray, fine: np.ndarray) -> float:
    return float(np.max(np.abs(fine - coarse) / np.maximum(1.0, np.abs(fine))))


@dataclass(frozen=True)
class Comparison:
    max_abs: float
    max_rel: float
    worst_entry: tuple[int, int]
    passed: bool


def compare_covariances(s1: np.ndarray, s2: np.ndarray, rel_tol: float = 1e-6,
                        abs_tol: float = 1e-12) -> Comparison:
    """Entrywise comparison; relative error uses max(|entry|, abs_tol) as denominator."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    if s1.shape != s2.shape:
        raise ValueError(f"shape mismatch {s1.shape} vs {s2.shape}")
    diff = np.abs(s1 - s2)
    rel = diff / np.maximum(np.maximum(np.abs(s1), np.abs(s2)), abs_tol)
    worst = np.unravel_index(int(np.argmax(rel)), rel.shape)
    max_rel = float(rel.max())
    return Comparison(float(diff.max()), max_rel, (int(worst[0]), int(worst[1])), max_rel <= rel_tol)
