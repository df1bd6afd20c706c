"""Covariance-matrix algebra for three-mode Gaussian states.

Quadratures are ordered (X_a, P_a, X_m, P_m, X_c, P_c) with X = (a + a^dag)/sqrt(2),
so the vacuum has variance 1/2 per quadrature. Covariance matrices hold the
symmetrized second moments <{Q_i, Q_j}>/2 of a zero-mean state.
"""

from __future__ import annotations

import numpy as np

from cvoml.errors import ParameterError

MODES = ("a", "m", "c")
QUADRATURES = ("X", "P")
DIM = 2 * len(MODES)

# aliases accepted for the three physical modes
_MODE_ALIASES = {"a": "a", "A": "a", "m": "m", "B": "m", "c": "c", "C": "c"}

OMEGA = np.kron(np.eye(len(MODES)), np.array([[0.0, 1.0], [-1.0, 0.0]]))
OMEGA.flags.writeable = False

SYMMETRY_TOL = 1e-12
DEGENERATE_VAR = 1e-14


def mode_name(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise ParameterError(f"unknown mode {mode!r}; expected one of a, m, c") from None


def quad_index(mode: str, quadrature: str) -> int:
    """Position of ``quadrature`` of ``mode`` in the canonical 6-vector."""
    if quadrature not in QUADRATURES:
        raise ParameterError(f"unknown quadrature {quadrature!r}")
    return 2 * MODES.index(mode_name(mode)) + QUADRATURES.index(quadrature)


def quad_label(index: int) -> tuple[str, str]:
    if not 0 <= index < DIM:
        raise ParameterError(f"quadrature index {index} out of range")
    return MODES[index // 2], QUADRATURES[index % 2]


def unit_form(mode: str, quadrature: str) -> np.ndarray:
    """Linear form selecting a single quadrature."""
    f = np.zeros(DIM)
    f[quad_index(mode, quadrature)] = 1.0
    return f


def X(mode: str) -> np.ndarray:
    return unit_form(mode, "X")


def P(mode: str) -> np.ndarray:
    return unit_form(mode, "P")


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=float)
    m.flags.writeable = False
    return m


def symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


class FactoredCovariance:
    """Covariance matrix kept as Sigma = L L^T.

    Variances of linear forms are then sums of squares ||L^T f||^2, which stay
    accurate when the entries of Sigma grow like e^{2r} and the variance of
    interest is of order e^{-2r}. Behaves as the dense matrix under
    ``np.asarray``.
    """

    __slots__ = ("factor", "_dense")

    def __init__(self, factor: np.ndarray):
        factor = _frozen(factor)
        dense = _frozen(symmetrize(factor @ factor.T))
        object.__setattr__(self, "factor", factor)
        object.__setattr__(self, "_dense", dense)

    def __setattr__(self, name, value):
        raise AttributeError("FactoredCovariance is immutable")

    def __array__(self, dtype=None, copy=None):
        return self._dense if dtype is None else self._dense.astype(dtype)

    @property
    def shape(self):
        return self._dense.shape

    def __getitem__(self, item):
        return self._dense[item]

    def __repr__(self):
        return f"FactoredCovariance({self._dense!r})"

    @classmethod
    def from_dense(cls, sigma: np.ndarray) -> "FactoredCovariance":
        sigma = np.asarray(sigma, dtype=float)
        if np.count_nonzero(sigma - np.diag(np.diag(sigma))) == 0:
            return cls(np.diag(np.sqrt(np.diag(sigma))))
        return cls(np.linalg.cholesky(sigma))


def make_input_covariance(n0: float) -> np.ndarray:
    """Input state: cavity temporal mode and atoms in vacuum, mirror thermal with ``n0``."""
    n0 = float(n0)
    if not np.isfinite(n0) or n0 < 0:
        raise ParameterError(f"thermal occupation n0 must be finite and >= 0, got {n0}")
    return _frozen(np.diag([0.5, 0.5, n0 + 0.5, n0 + 0.5, 0.5, 0.5]))


def transform(T: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """T Sigma T^T; a factored input stays factored."""
    T = np.asarray(T, dtype=float)
    shape = np.shape(sigma)
    if T.ndim != 2 or len(shape) != 2 or T.shape[1] != shape[0] or shape[0] != shape[1]:
        raise ValueError(f"shape mismatch: T {T.shape}, covariance {shape}")
    if isinstance(sigma, FactoredCovariance):
        return FactoredCovariance(T @ sigma.factor)
    sigma = np.asarray(sigma, dtype=float)
    return _frozen(symmetrize(T @ sigma @ T.T))


def _check_form(sigma, f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (np.shape(sigma)[0],):
        raise ValueError(f"linear form of shape {f.shape} does not match covariance {sigma.shape}")
    if not np.all(np.isfinite(f)):
        raise ParameterError("linear form has non-finite coefficients")
    return f


def covariance(sigma: np.ndarray, f: np.ndarray, g: np.ndarray) -> float:
    """Symmetrized covariance of two linear forms, f^T Sigma g."""
    f, g = _check_form(sigma, f), _check_form(sigma, g)
    if isinstance(sigma, FactoredCovariance):
        return float((sigma.factor.T @ f) @ (sigma.factor.T @ g))
    return float(f @ np.asarray(sigma, dtype=float) @ g)


def linear_form_variance(sigma: np.ndarray, f: np.ndarray) -> float:
    return covariance(sigma, f, f)


def conditional_sd(sigma: np.ndarray, target: np.ndarray, observable: np.ndarray) -> tuple[float, float]:
    """Smallest standard deviation of ``target + g * observable`` over real g.

    Returns ``(sd, g)`` with g = -Cov(t, o)/Var(o). A zero-variance observable
    carries no information, so the unconditioned deviation and g = 0 are returned.
    """
    var_t = linear_form_variance(sigma, target)
    var_o = linear_form_variance(sigma, observable)
    if var_o < DEGENERATE_VAR:
        return float(np.sqrt(max(var_t, 0.0))), 0.0
    cov = covariance(sigma, target, observable)
    gain = -cov / var_o
    # Var(t + g o) at the optimum; this form cancels less than var_t - cov**2/var_o
    var = linear_form_variance(sigma, target + gain * observable)
    return float(np.sqrt(max(var, 0.0))), float(gain)


def commutator(x_form: np.ndarray, p_form: np.ndarray) -> float:
    """c in [x.Q, p.Q] = i c for the canonical commutators [Q_i, Q_j] = i Omega_ij."""
    return float(np.asarray(x_form) @ OMEGA @ np.asarray(p_form))


def form_photon_number(sigma: np.ndarray, x_form: np.ndarray, p_form: np.ndarray) -> float:
    """Mean excitation <W^dag W> of the mode W = (x + i p)/sqrt(2) built from two forms.

    When the forms describe a time-reversed mode ([W, W^dag] = -1) the vacuum
    offset flips sign, which is the case for the attenuator superposition mode.
    """
    c = commutator(x_form, p_form)
    return 0.5 * (linear_form_variance(sigma, x_form) + linear_form_variance(sigma, p_form) - c)


def photon_number(sigma: np.ndarray, mode: str) -> float:
    return form_photon_number(sigma, X(mode), P(mode))


def form_anomalous_correlator(
    sigma: np.ndarray,
    x_i: np.ndarray,
    p_i: np.ndarray,
    x_j: np.ndarray,
    p_j: np.ndarray,
) -> complex:
    """<W_i W_j> for W = (x + i p)/sqrt(2), assuming the two modes commute."""
    re = covariance(sigma, x_i, x_j) - covariance(sigma, p_i, p_j)
    im = covariance(sigma, x_i, p_j) + covariance(sigma, p_i, x_j)
    return complex(0.5 * re, 0.5 * im)


def anomalous_correlator(sigma: np.ndarray, mode_i: str, mode_j: str) -> complex:
    return form_anomalous_correlator(sigma, X(mode_i), P(mode_i), X(mode_j), P(mode_j))


def is_symplectic(T: np.ndarray, tol: float = 1e-10) -> bool:
    T = np.asarray(T, dtype=float)
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    omega = np.kron(np.eye(T.shape[0] // 2), OMEGA[:2, :2])
    return bool(np.max(np.abs(T @ omega @ T.T - omega)) < tol)


def uncertainty_min_eigenvalue(sigma: np.ndarray) -> float:
    """Smallest eigenvalue of Sigma + (i/2) Omega; non-negative for a physical state."""
    sigma = np.asarray(sigma, dtype=float)
    omega = np.kron(np.eye(sigma.shape[0] // 2), OMEGA[:2, :2])
    return float(np.linalg.eigvalsh(sigma + 0.5j * omega).min())


def is_physical(sigma: np.ndarray, tol: float = 1e-10) -> bool:
    sigma = np.asarray(sigma, dtype=float)
    if np.max(np.abs(sigma - sigma.T)) > SYMMETRY_TOL * max(1.0, np.max(np.abs(sigma))):
        return False
    if np.any(np.diag(sigma) < 0):
        return False
    return uncertainty_min_eigenvalue(sigma) >= -tol
