"""Pulsed cavity-mirror-atom system in the bad-cavity limit.

After adiabatic elimination of the intracavity field the mirror (m) and atomic
ensemble (c) couple to the cavity output pulse (a) with effective rates
G = g^2/kappa (parametric) and Ga = ga^2/kappa (beam splitter). Everything is
expressed through the ratio lambda = Ga/G, the pulse area r = G*tau and the
mirror occupation n0.

For G > Ga the system amplifies (``Regime.AMPLIFIER``) with

    alpha = sqrt(G/(G - Ga)),  beta = sqrt(Ga/(G - Ga)),  r_eff = r/alpha^2,

and for Ga > G it attenuates (``Regime.ATTENUATOR``) with

    alpha' = sqrt(Ga/(Ga - G)),  beta' = sqrt(G/(Ga - G)),  r_eff = r/beta'^2.

``DerivedParams.alpha``/``beta`` hold the primed pair in the attenuator regime.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from cvoml import gaussian as gs
from cvoml.errors import DegenerateCouplingError, ParameterError, RegimeError

DEGENERACY_TOL = 1e-9
MAX_R_EFF = 350.0


class Regime(str, enum.Enum):
    AMPLIFIER = "amplifier"
    ATTENUATOR = "attenuator"


def _finite_nonneg(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ParameterError(f"{name} must be finite and >= 0, got {value}")
    return value


@dataclass(frozen=True)
class SystemParams:
    """Physical couplings. Only the ratio Ga/G enters the results."""

    G: float
    Ga: float
    n0: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        G = float(self.G)
        if not math.isfinite(G) or G <= 0:
            raise ParameterError(f"G must be finite and > 0, got {self.G}")
        Ga = _finite_nonneg("Ga", self.Ga)
        _finite_nonneg("n0", self.n0)
        _finite_nonneg("r", self.r)
        if abs(G - Ga) / max(G, Ga) <= DEGENERACY_TOL:
            raise DegenerateCouplingError("degenerate coupling G = Ga: closed-form solutions diverge")

    @property
    def lam(self) -> float:
        return self.Ga / self.G

    @classmethod
    def from_alpha(cls, alpha: float, regime: Regime | str = Regime.AMPLIFIER,
                   n0: float = 0.0, r: float = 0.0, G: float = 1.0) -> "SystemParams":
        """Couplings giving mixing coefficient ``alpha`` (alpha' for the attenuator)."""
        regime = Regime(regime)
        alpha = float(alpha)
        if regime is Regime.AMPLIFIER:
            if not alpha >= 1.0:
                raise ParameterError(f"amplifier alpha must be >= 1, got {alpha}")
            return cls(G=G, Ga=G * (alpha**2 - 1.0) / alpha**2, n0=n0, r=r)
        if not alpha > 1.0:
            raise ParameterError(f"attenuator alpha' must be > 1 for G > 0, got {alpha}")
        return cls(G=G, Ga=G * alpha**2 / (alpha**2 - 1.0), n0=n0, r=r)


@dataclass(frozen=True)
class DerivedParams:
    regime: Regime
    lam: float
    alpha: float
    beta: float
    r_eff: float
    n0: float
    r: float
    s: float = math.nan

    @property
    def amplifier(self) -> bool:
        return self.regime is Regime.AMPLIFIER

    @classmethod
    def from_alpha(cls, alpha: float, regime: Regime | str = Regime.AMPLIFIER,
                   n0: float = 0.0, r: float = 0.0) -> "DerivedParams":
        """Build directly from alpha (or alpha'), bypassing the couplings.

        Unlike ``SystemParams.from_alpha`` this admits the attenuator limit
        alpha' = 1 (G -> 0 at fixed r), where beta' = 0 and r_eff is infinite.
        """
        regime = Regime(regime)
        alpha = float(alpha)
        n0 = _finite_nonneg("n0", n0)
        r = _finite_nonneg("r", r)
        if not (math.isfinite(alpha) and alpha >= 1.0):
            raise ParameterError(f"alpha must be finite and >= 1, got {alpha}")
        beta = math.sqrt((alpha - 1.0) * (alpha + 1.0))
        if regime is Regime.AMPLIFIER:
            r_eff = r / alpha**2
            _check_range(r_eff)
            return cls(regime, beta**2 / alpha**2, alpha, beta, r_eff, n0, r, math.atanh(beta / alpha))
        lam = math.inf if beta == 0 else alpha**2 / beta**2
        r_eff = (math.inf if r > 0 else 0.0) if beta == 0 else r / beta**2
        return cls(regime, lam, alpha, beta, r_eff, n0, r)

    def with_r(self, r: float) -> "DerivedParams":
        return DerivedParams.from_alpha(self.alpha, self.regime, self.n0, r)

    def with_n0(self, n0: float) -> "DerivedParams":
        return DerivedParams.from_alpha(self.alpha, self.regime, n0, self.r)


def _check_range(r_eff: float) -> None:
    if r_eff > MAX_R_EFF:
        raise ParameterError(f"effective interaction time {r_eff:g} exceeds {MAX_R_EFF:g} (exp overflow)")


def derive(params: SystemParams) -> DerivedParams:
    G, Ga, r = float(params.G), float(params.Ga), float(params.r)
    lam = Ga / G
    if G > Ga:
        alpha = math.sqrt(G / (G - Ga))
        beta = math.sqrt(Ga / (G - Ga))
        r_eff = r / alpha**2
        _check_range(r_eff)
        return DerivedParams(Regime.AMPLIFIER, lam, alpha, beta, r_eff, float(params.n0), r,
                             math.atanh(math.sqrt(lam)))
    alpha = math.sqrt(Ga / (Ga - G))
    beta = math.sqrt(G / (Ga - G))
    return DerivedParams(Regime.ATTENUATOR, lam, alpha, beta, r / beta**2, float(params.n0), r)


def transfer_matrix(d: DerivedParams) -> np.ndarray:
    """6x6 map from (A_in, B_in, C_in) quadratures to the output quadratures."""
    a, b = d.alpha, d.beta
    T = np.zeros((gs.DIM, gs.DIM))
    if d.amplifier:
        gain = math.exp(d.r_eff)
        em1 = math.expm1(d.r_eff)
        sq = math.sqrt(math.expm1(2.0 * d.r_eff))
        a_diag = -gain
        m_diag = 1.0 + a * a * em1  # alpha^2 e^r - beta^2
        c_diag = 1.0 - b * b * em1  # alpha^2 - beta^2 e^r
        mc = a * b * em1
        am, ac = a * sq, b * sq
    else:
        dec = math.exp(-d.r_eff)
        om = -math.expm1(-d.r_eff)
        sq = math.sqrt(-math.expm1(-2.0 * d.r_eff))
        a_diag = -dec
        m_diag = 1.0 + b * b * om  # alpha'^2 - beta'^2 e^-r
        c_diag = 1.0 - a * a * om  # alpha'^2 e^-r - beta'^2
        mc = a * b * om
        am, ac = b * sq, a * sq

    xa, pa, xm, pm, xc, pc = range(gs.DIM)
    T[xa, [xa, pm, pc]] = a_diag, -am, ac
    T[pa, [pa, xm, xc]] = a_diag, -am, -ac
    T[xm, [xm, xc, pa]] = m_diag, mc, am
    T[pm, [pm, pc, xa]] = m_diag, -mc, am
    T[xc, [xc, xm, pa]] = c_diag, -mc, -ac
    T[pc, [pc, pm, xa]] = c_diag, mc, ac
    return T


def input_covariance(d: DerivedParams) -> np.ndarray:
    return gs.make_input_covariance(d.n0)


def output_covariance(d: DerivedParams) -> gs.FactoredCovariance:
    """Output state, kept factored so large-r variances do not cancel."""
    return gs.transform(transfer_matrix(d), gs.FactoredCovariance.from_dense(input_covariance(d)))


class Which(str, enum.Enum):
    W = "w"
    U = "u"


@dataclass(frozen=True)
class SuperpositionMode:
    which: Which
    x_form: np.ndarray
    p_form: np.ndarray


def superposition_mode(d: DerivedParams, which: Which | str) -> SuperpositionMode:
    """Quadrature forms of the mirror-atom superposition modes w and u.

    X = k_m X_m + k_c X_c and P = k_m P_m - k_c P_c, the sign flip coming from
    the atomic creation operator in w = k_m a_m + k_c c_a^dag.
    """
    which = Which(which)
    # (coefficient of a_m in w, coefficient of c_a^dag in w)
    k_w = (d.alpha, d.beta) if d.amplifier else (d.beta, d.alpha)
    k_m, k_c = k_w if which is Which.W else k_w[::-1]
    x = k_m * gs.X("m") + k_c * gs.X("c")
    p = k_m * gs.P("m") - k_c * gs.P("c")
    return SuperpositionMode(which, x, p)


def closed_form_photon_numbers(d: DerivedParams) -> tuple[float, float]:
    """(n_c, n_w): mean excitations of the output cavity pulse and of w."""
    if d.amplifier:
        scale = d.alpha**2 * (d.n0 + 1.0)
        return scale * math.expm1(2 * d.r_eff), scale * math.exp(2 * d.r_eff) - 1.0
    scale = d.beta**2 * (d.n0 + 1.0)
    return -scale * math.expm1(-2 * d.r_eff), scale * math.exp(-2 * d.r_eff) + 1.0


def cauchy_schwarz_eta(d: DerivedParams) -> float:
    """Closed-form |<A W>|^2 / (n_c n_w); exceeds one only in the amplifier regime."""
    if d.amplifier:
        x = (d.n0 + 1.0) * math.exp(2 * d.r_eff) * d.alpha**2
        return math.inf if x == 1.0 else x / (x - 1.0)
    x = d.beta**2 * (d.n0 + 1.0) * math.exp(-2 * d.r_eff)
    return x / (x + 1.0)


def eta_from_cov(sigma: np.ndarray, d: DerivedParams) -> float:
    """Same ratio evaluated from a covariance matrix; NaN when a mode is empty."""
    w = superposition_mode(d, Which.W)
    corr = gs.form_anomalous_correlator(sigma, gs.X("a"), gs.P("a"), w.x_form, w.p_form)
    n_c = gs.photon_number(sigma, "a")
    n_w = gs.form_photon_number(sigma, w.x_form, w.p_form)
    denom = n_c * n_w
    if denom <= 0:
        return math.nan
    return abs(corr) ** 2 / denom


def entanglement_onset_r0(d: DerivedParams) -> float:
    """Pulse area beyond which the cavity-w DGCZ parameter drops below 2."""
    if not d.amplifier:
        raise RegimeError("the onset threshold r0 is defined for the amplifier regime only")
    a, n = d.alpha, d.n0 + 1.0
    return a * a * math.log((a * a * n + 1.0) / (2.0 * a * math.sqrt(n)))
