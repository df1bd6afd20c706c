"""Entanglement and steering witnesses evaluated on an output covariance matrix.

Mode selectors are ``a`` (cavity output pulse), ``m`` (mirror), ``c`` (atoms)
and the superposition modes ``w``/``u``, which need the ``DerivedParams`` of
the run to be resolved. Variances follow the vacuum-1/2 convention, so every
bound below is the vacuum value of its witness.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from cvoml import gaussian as gs
from cvoml.errors import ParameterError, RegimeError
from cvoml.model import DerivedParams, superposition_mode

SELECTORS = ("a", "m", "c", "w", "u")
GAIN_MODES = ("symmetric", "optimal")


@dataclass(frozen=True)
class CriterionResult:
    name: str
    value: float
    bound: float
    gains: tuple[tuple[str, float], ...] = ()

    @property
    def violated(self) -> bool:
        return self.value < self.bound


@dataclass(frozen=True)
class PairSpec:
    first: str
    second: str
    kind: str = "XP"

    def __post_init__(self):
        for sel in (self.first, self.second):
            if sel not in SELECTORS:
                raise ParameterError(f"unknown mode selector {sel!r}")
        if self.first == self.second:
            raise ParameterError("a pair needs two distinct modes")
        if self.kind not in ("XP", "XX"):
            raise ParameterError(f"pair kind must be XP or XX, got {self.kind!r}")


def forms(selector: str, d: DerivedParams | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(X, P) linear forms of a mode selector."""
    if selector in ("w", "u"):
        if d is None:
            raise RegimeError(f"selector {selector!r} needs the regime parameters to resolve")
        mode = superposition_mode(d, selector)
        return mode.x_form, mode.p_form
    return gs.X(selector), gs.P(selector)


def _var(sigma, f) -> float:
    return gs.linear_form_variance(sigma, f)


def dgcz_symmetric(sigma: np.ndarray, pair: PairSpec, d: DerivedParams | None = None,
                   sign: int | None = None) -> CriterionResult:
    """Var(X_i +- P_j) + Var(P_i +- X_j), minimized over the common sign unless ``sign`` is given."""
    if pair.kind != "XP":
        raise ParameterError("the symmetric DGCZ parameter pairs X with P")
    xi, pi = forms(pair.first, d)
    xj, pj = forms(pair.second, d)
    signs = (1, -1) if sign is None else (sign,)
    value = min(_var(sigma, xi + s * pj) + _var(sigma, pi + s * xj) for s in signs)
    return CriterionResult(f"dgcz_{pair.first}_{pair.second}", value, 2.0)


def upsilon_symmetric(sigma: np.ndarray, pair: PairSpec = PairSpec("m", "c", "XX"),
                      d: DerivedParams | None = None) -> CriterionResult:
    """Var(X_i + X_j) + Var(P_i - P_j)."""
    xi, pi = forms(pair.first, d)
    xj, pj = forms(pair.second, d)
    value = _var(sigma, xi + xj) + _var(sigma, pi - pj)
    return CriterionResult(f"upsilon_{pair.first}_{pair.second}", value, 2.0)


def _pair_terms(pair: PairSpec, d) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    xi, pi = forms(pair.first, d)
    xj, pj = forms(pair.second, d)
    if pair.kind == "XP":
        return xi, pj, pi, xj
    return xi, xj, pi, -pj


def rayleigh_min(A: float, B: float, C: float, tol: float = 1e-14) -> tuple[float, float]:
    """Minimize (A + 2 C g + B g^2)/(1 + g^2) over g; returns (value, g).

    Stationary points solve C g^2 + (A - B) g - C = 0. For C = 0 the quotient
    is minimized at g = 0 (A <= B) or approached as |g| -> inf (B < A).
    """
    scale = max(abs(A), abs(B), 1.0)
    if abs(C) <= tol * scale:
        return (A, 0.0) if A <= B else (B, math.inf)
    D = A - B
    q = -0.5 * (D + math.copysign(math.hypot(D, 2 * C), D))
    roots = (q / C, -C / q)

    def objective(g):
        return (A + 2 * C * g + B * g * g) / (1 + g * g)

    g = min(roots, key=objective)
    return objective(g), g


def _factored_rayleigh_min(L, q1, q2, q3, q4) -> tuple[float, float]:
    """Same minimum from the smallest singular value of the stacked projections.

    With Sigma = L L^T the objective is ||M (1, g)||^2 / (1 + g^2) for the
    12x2 matrix M below, so no e^{2r}-sized Gram entries are ever formed.
    """
    M = np.block([[(L.T @ q1)[:, None], (L.T @ q2)[:, None]],
                  [(L.T @ q3)[:, None], (L.T @ q4)[:, None]]])
    _, sv, vt = np.linalg.svd(M, full_matrices=False)
    v = vt[-1]
    g = math.inf if v[0] == 0 else float(v[1] / v[0])
    return float(sv[-1] ** 2), g


def asymmetric_pair(sigma: np.ndarray, pair: PairSpec, d: DerivedParams | None = None) -> CriterionResult:
    """Gain-weighted pair witness, normalized by 1 + g^2 so the bound is 1.

    XP: [Var(X_i + g P_j) + Var(P_i + g X_j)]/(1 + g^2)
    XX: [Var(X_i + g X_j) + Var(P_i - g P_j)]/(1 + g^2)
    """
    q1, q2, q3, q4 = _pair_terms(pair, d)
    if isinstance(sigma, gs.FactoredCovariance):
        value, g = _factored_rayleigh_min(sigma.factor, q1, q2, q3, q4)
    else:
        A = _var(sigma, q1) + _var(sigma, q3)
        B = _var(sigma, q2) + _var(sigma, q4)
        C = gs.covariance(sigma, q1, q2) + gs.covariance(sigma, q3, q4)
        value, g = rayleigh_min(A, B, C)
    prefix = "dgcz_g" if pair.kind == "XP" else "upsilon_g"
    return CriterionResult(f"{prefix}_{pair.first}_{pair.second}", value, 1.0, (("g", g),))


def asymmetric_objective(sigma: np.ndarray, pair: PairSpec, g, d: DerivedParams | None = None):
    """The gain-weighted witness at fixed gain(s) ``g`` (scalar or array)."""
    q1, q2, q3, q4 = _pair_terms(pair, d)
    A = _var(sigma, q1) + _var(sigma, q3)
    B = _var(sigma, q2) + _var(sigma, q4)
    C = gs.covariance(sigma, q1, q2) + gs.covariance(sigma, q3, q4)
    g = np.asarray(g, dtype=float)
    return (A + 2 * C * g + B * g * g) / (1 + g * g)


@dataclass(frozen=True)
class IdentityReport:
    residuals: dict
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.residuals.values()) < self.tol


def cross_correlation_identities(sigma: np.ndarray, tol: float = 1e-10) -> IdentityReport:
    """Residuals of <X_a P_c> = -<P_a X_c> and <X_m P_c> = <P_m X_c> = 0.

    Residuals are relative to max(1, max |Sigma|).
    """
    sigma = np.asarray(sigma, dtype=float)
    scale = max(1.0, float(np.max(np.abs(sigma))))
    cov = gs.covariance
    X, P = gs.X, gs.P
    res = {
        "XaPc+PaXc": abs(cov(sigma, X("a"), P("c")) + cov(sigma, P("a"), X("c"))) / scale,
        "XmPc": abs(cov(sigma, X("m"), P("c"))) / scale,
        "PmXc": abs(cov(sigma, P("m"), X("c"))) / scale,
    }
    return IdentityReport(res, tol)


# (name, first combination, second combination without gain, gained mode)
_TRIPARTITE = (
    ("am", (("X", "a"), ("P", "m")), (("P", "a"), ("X", "m")), "c"),
    ("ac", (("X", "a"), ("P", "c")), (("P", "a"), ("X", "c")), "m"),
    ("mc", (("X", "m"), ("X", "c")), (("P", "m"), ("-P", "c")), "a"),
)


def _combo(terms) -> np.ndarray:
    f = np.zeros(gs.DIM)
    for quad, mode in terms:
        s = -1.0 if quad.startswith("-") else 1.0
        f += s * gs.unit_form(mode, quad.lstrip("-"))
    return f


def _tripartite_terms(sigma, gains) -> list[tuple[str, float, float, float]]:
    """(label, Var(first), Var(second), gain) per inequality."""
    if isinstance(gains, str) and gains not in GAIN_MODES:
        raise ParameterError(f"gains must be one of {GAIN_MODES} or a mapping, got {gains!r}")
    out = []
    for label, first, second, gained in _TRIPARTITE:
        f1, rest, xk = _combo(first), _combo(second), gs.X(gained)
        if gains == "symmetric":
            g = 1.0
        elif gains == "optimal":
            g = gs.conditional_sd(sigma, rest, xk)[1]
        else:
            g = float(gains[f"g_{gained}"])
        out.append((label, _var(sigma, f1), _var(sigma, rest + g * xk), g))
    return out


def tripartite_sums(sigma: np.ndarray, gains="symmetric") -> tuple[CriterionResult, ...]:
    """Three variance-sum inequalities; two violations certify full inseparability."""
    return tuple(
        CriterionResult(f"tri_sum_{label}", v1 + v2, 2.0, (() if gains == "symmetric" else ((f"g_{label_gain(label)}", g),)))
        for label, v1, v2, g in _tripartite_terms(sigma, gains)
    )


def tripartite_products(sigma: np.ndarray, gains="symmetric") -> tuple[CriterionResult, ...]:
    """Products of standard deviations, bound 1 each."""
    return tuple(
        CriterionResult(f"tri_prod_{label}", math.sqrt(max(v1, 0.0) * max(v2, 0.0)), 1.0,
                        (() if gains == "symmetric" else ((f"g_{label_gain(label)}", g),)))
        for label, v1, v2, g in _tripartite_terms(sigma, gains)
    )


def label_gain(label: str) -> str:
    return {"am": "c", "ac": "m", "mc": "a"}[label]


def fully_inseparable(results: Sequence[CriterionResult]) -> bool:
    return sum(r.violated for r in results) >= 2


def genuine_sum(sigma: np.ndarray, gains="symmetric") -> CriterionResult:
    products = tripartite_products(sigma, gains)
    gains_used = tuple(g for r in products for g in r.gains)
    return CriterionResult("delta_sum", sum(r.value for r in products), 2.0, gains_used)


def _inference_sd(sigma, target, steerer_forms, names, full_conditioning):
    if full_conditioning:
        V = np.array([[gs.covariance(sigma, a, b) for b in steerer_forms] for a in steerer_forms])
        c = np.array([gs.covariance(sigma, target, a) for a in steerer_forms])
        gains = -np.linalg.solve(V, c)
        combo = target + gains[0] * steerer_forms[0] + gains[1] * steerer_forms[1]
        return math.sqrt(max(_var(sigma, combo), 0.0)), tuple(zip(names, map(float, gains)))
    best = min(
        (gs.conditional_sd(sigma, target, o) + (name,) for o, name in zip(steerer_forms, names)),
        key=lambda t: t[0],
    )
    return best[0], ((best[2], best[1]),)


def steering(sigma: np.ndarray, steered: str, steerer: str, d: DerivedParams | None = None,
             full_conditioning: bool = False) -> CriterionResult:
    """Reid product E_{B|A} of inferred deviations of B's quadratures from A's.

    Each quadrature of B is inferred from whichever single quadrature of A
    (with its own optimal gain) gives the smaller deviation. With
    ``full_conditioning`` both of A's quadratures are used jointly.
    """
    if steered == steerer:
        raise ParameterError("steering needs two distinct modes")
    xb, pb = forms(steered, d)
    xa, pa = forms(steerer, d)
    names = (f"X_{steerer}", f"P_{steerer}")
    sd_x, gx = _inference_sd(sigma, xb, (xa, pa), names, full_conditioning)
    sd_p, gp = _inference_sd(sigma, pb, (xa, pa), names, full_conditioning)
    gains = tuple((f"X_{steered}|{n}", g) for n, g in gx) + tuple((f"P_{steered}|{n}", g) for n, g in gp)
    return CriterionResult(f"steering_{steered}_given_{steerer}", sd_x * sd_p, 0.5, gains)


@dataclass(frozen=True)
class MonogamyReport:
    e_a_m: float
    e_a_c: float
    e_a_w: float
    e_m_a: float
    e_m_c: float
    product_ok: bool = field(init=False)
    sum_ok: bool = field(init=False)
    no_collusion: bool = field(init=False)
    single_pair_ok: bool = field(init=False)

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "product_ok", self.e_a_m * self.e_a_c >= self.e_a_w**2)
        set_(self, "sum_ok", self.e_a_m + self.e_a_c >= 2 * self.e_a_w)
        set_(self, "no_collusion", not (self.e_m_a < 0.5 and self.e_m_c < 0.5))
        set_(self, "single_pair_ok", self.e_a_m >= self.e_a_w)

    @property
    def holds(self) -> bool:
        """The asserted relations; ``single_pair_ok`` is informational only."""
        return self.product_ok and self.sum_ok and self.no_collusion


def monogamy_report(sigma: np.ndarray, d: DerivedParams) -> MonogamyReport:
    e = lambda b, a: steering(sigma, b, a, d).value  # noqa: E731
    return MonogamyReport(e("a", "m"), e("a", "c"), e("a", "w"), e("m", "a"), e("m", "c"))


# ---- closed forms used as cross-checks -------------------------------------

def closed_form_dgcz(d: DerivedParams, first: str, second: str) -> float:
    """Analytic symmetric DGCZ value for (a,c), (m,c), (a,m), (a,w).

    For the attenuator (a,w) pair this is the X_a - P_w branch; the other sign
    branch is smaller but also never below 2.
    """
    a, b, n = d.alpha, d.beta, d.n0 + 1.0
    key = (first, second)
    if d.amplifier:
        E = math.exp(d.r_eff)
        em1 = math.expm1(d.r_eff)
        sq = math.sqrt(math.expm1(2 * d.r_eff))
        if key == ("a", "c"):
            return 2 + 2 * a * a * n * (E * E - 1 + b * b * em1**2)
        if key == ("m", "c"):
            return 2 * n * ((a * a * E - b * b) ** 2 + a * a * b * b * em1**2)
        if key == ("a", "m"):
            return 2 * n * (a * (a * E - sq) - b * b) ** 2
        if key == ("a", "w"):
            return 2 * a * a * n * (E - sq) ** 2
    else:
        e = math.exp(-d.r_eff)
        om = -math.expm1(-d.r_eff)
        sq = math.sqrt(-math.expm1(-2 * d.r_eff))
        if key == ("a", "c"):
            return 2 + 2 * b * b * n * (1 - e * e + a * a * om**2)
        if key == ("m", "c"):
            return 2 * n * ((a * a - b * b * e) ** 2 + a * a * b * b * om**2)
        if key == ("a", "m"):
            return 2 * n * (a * a - b * (b * e + sq)) ** 2
        if key == ("a", "w"):
            return 2 + 2 * b * b * n * (e + sq) ** 2
    raise ParameterError(f"no closed form for pair {key}")


def closed_form_upsilon(d: DerivedParams) -> float:
    if d.amplifier:
        raise RegimeError("the closed-form mirror-atom parameter is given for the attenuator only")
    a, b = d.alpha, d.beta
    return 2 * (d.n0 + 1) * (1 - b * -math.expm1(-d.r_eff) / (a + b)) ** 2


# ---- named witnesses --------------------------------------------------------

_NAME = re.compile(
    r"^(?:(?P<kind>dgcz|dgcz_g|upsilon|upsilon_g)_(?P<i>[amcwu])_(?P<j>[amcwu])"
    r"|steering_(?P<b>[amcwu])_given_(?P<a>[amcwu])"
    r"|tri_(?P<tk>sum|prod)_(?P<tl>am|ac|mc)"
    r"|(?P<ds>delta_sum))$"
)

DEFAULT_WITNESSES = (
    "dgcz_a_m", "dgcz_a_c", "dgcz_m_c", "dgcz_a_w", "upsilon_m_c",
    "dgcz_g_a_m", "upsilon_g_m_c",
    "tri_sum_am", "tri_sum_ac", "tri_sum_mc",
    "tri_prod_am", "tri_prod_ac", "tri_prod_mc", "delta_sum",
    "steering_a_given_m", "steering_m_given_a", "steering_a_given_c", "steering_c_given_a",
    "steering_m_given_c", "steering_c_given_m", "steering_a_given_w", "steering_w_given_a",
)


def validate_witness_name(name: str) -> None:
    match = _NAME.match(name)
    if not match:
        raise ParameterError(f"unknown witness {name!r}")
    i, j = match.group("i"), match.group("j")
    if i is not None and i == j:
        raise ParameterError(f"witness {name!r} pairs a mode with itself")
    if match.group("b") is not None and match.group("b") == match.group("a"):
        raise ParameterError(f"witness {name!r} pairs a mode with itself")


def evaluate(name: str, sigma: np.ndarray, d: DerivedParams, gains="symmetric") -> CriterionResult:
    """Evaluate a witness by identifier, e.g. ``dgcz_a_w`` or ``steering_w_given_a``."""
    validate_witness_name(name)
    match = _NAME.match(name)
    kind = match.group("kind")
    if kind is not None:
        i, j = match.group("i"), match.group("j")
        if kind == "dgcz":
            return dgcz_symmetric(sigma, PairSpec(i, j), d)
        if kind == "upsilon":
            return upsilon_symmetric(sigma, PairSpec(i, j, "XX"), d)
        return asymmetric_pair(sigma, PairSpec(i, j, "XP" if kind == "dgcz_g" else "XX"), d)
    if match.group("b") is not None:
        return steering(sigma, match.group("b"), match.group("a"), d)
    if match.group("ds"):
        return genuine_sum(sigma, gains)
    fn = tripartite_sums if match.group("tk") == "sum" else tripartite_products
    label = match.group("tl")
    return next(r for r in fn(sigma, gains) if r.name.endswith(label))
