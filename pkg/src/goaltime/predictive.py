"""Bayesian predictive densities for gamma waiting times.

Two estimators of the density of a future waiting time ``Y ~ Gam(r', lam1)``
given an observed statistic ``x1 ~ Gam(r1, lam1)``, under the scale prior
``1/lam``:

* the unrestricted estimator, a three-parameter beta prime
  ``B'(r', r1, x1)``;
* the restricted estimator, which additionally conditions on an observation
  ``x2 ~ Gam(r2, lam2)`` from a second population together with the ordering
  ``lam1 >= lam2``, and multiplies the unrestricted density by a weight
  built from ratios of an ordering constant.

The ordering constant is defined by the integral

    C(k1, k2, s1, s2) = int_0^inf (1/v) m(s1, s2; v) IG(k1, k2)(v) dv,

with ``m(s1, s2; v)`` the bounded-scale marginal and ``IG`` the
inverse-gamma density, and evaluates in closed form to

    C = k1 k2^k1 s2^(-k1-2) Gamma(k1+s1+2)
        * 2F1~(k1+1, k1+s1+2; k1+2; -k2/s2) / Gamma(s1).

After the weight is folded in, the restricted density itself has the
closed weighted-beta-prime form

    q1(y) = r1 Gamma(r'+r1+r2) x2^(-r') y^(r'-1)
            * 2F1(r'+r1, r'+r1+r2; r'+r1+1; -(x1+y)/x2)
            / ((r'+r1) Gamma(r') Gamma(r1+r2)
               * 2F1(r1, r1+r2; r1+1; -x1/x2)),

with exponents fixed so that the density integrates to one and agrees with
brute-force integration of the posterior (see tests).  All densities are
renormalized to the prediction window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from . import distributions as dist
from .errors import DomainError, InvalidShapeError
from .specfun import log_reg_gauss_2f1_pos

_SHAPE_MARGIN = 1e-9

DEFAULT_WINDOW = (0.0, 60.0)


@dataclass(frozen=True)
class SufficientStat:
    """Observed waiting-time statistic x (minutes) under a known shape r."""

    x: float
    r: float

    def __post_init__(self):
        if not self.x > 0:
            raise DomainError(f"statistic must be positive, got {self.x}")
        if self.r <= 1.0 + _SHAPE_MARGIN:
            raise InvalidShapeError(
                f"shape r = {self.r} too small: the posterior needs r > 1"
            )


@dataclass(frozen=True)
class PredictionProblem:
    """Inputs of one prediction: own statistic, optional rival statistic.

    When ``obs_b`` is present the scale of population a is asserted to
    dominate the scale of population b; callers wanting the reverse
    ordering swap the roles.  ``window = (lo, inf)`` disables truncation.
    """

    obs_a: SufficientStat
    obs_b: SufficientStat | None = None
    r_prime: float = 3.0
    window: tuple[float, float] = DEFAULT_WINDOW

    def __post_init__(self):
        if not self.r_prime > 0:
            raise InvalidShapeError(f"future shape must be positive, got {self.r_prime}")
        lo, hi = self.window
        if not (0 <= lo < hi):
            raise DomainError(f"bad window {self.window}")


def marginal_flat(s1, s2):
    """Marginal of an inverse-gamma statistic under the scale prior 1/v: s1/s2."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    if np.any(s1 <= 0) or np.any(s2 <= 0):
        raise DomainError("marginal_flat requires positive arguments")
    out = s1 / s2
    return out if out.ndim else float(out)


def marginal_restricted(s1, s2, upper):
    """Marginal when the scale prior 1/v is cut off at ``upper``.

    Equals Gamma(s1+1, s2/upper) / (s2 Gamma(s1)); evaluated through the
    regularized upper gamma so no unnormalized gamma can overflow.
    Recovers ``marginal_flat`` as upper -> inf.
    """
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if np.any(s1 <= 0) or np.any(s2 <= 0) or np.any(upper <= 0):
        raise DomainError("marginal_restricted requires positive arguments")
    out = s1 * special.gammaincc(s1 + 1.0, s2 / upper) / s2
    return out if out.ndim else float(out)


def log_ordering_constant(k1, k2, s1, s2):
    """log C(k1, k2, s1, s2) via the hypergeometric closed form.

    Vectorized over ``k2`` and ``s2`` (numpy broadcasting); ``k1`` and
    ``s1`` are scalars.
    """
    k1 = float(k1)
    s1 = float(s1)
    k2 = np.asarray(k2, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    if k1 <= 0 or s1 <= 0 or np.any(k2 <= 0) or np.any(s2 <= 0):
        raise DomainError("ordering constant requires positive arguments")
    z = -k2 / s2
    log_f = log_reg_gauss_2f1_pos(k1 + 1.0, k1 + s1 + 2.0, k1 + 2.0, z)
    out = (
        np.log(k1)
        + k1 * np.log(k2)
        - (k1 + 2.0) * np.log(s2)
        + special.gammaln(k1 + s1 + 2.0)
        - special.gammaln(s1)
        + log_f
    )
    return out if out.ndim else float(out)


def ordering_constant(k1: float, k2: float, s1: float, s2: float) -> float:
    """The ordering constant C(k1, k2, s1, s2) itself."""
    return float(np.exp(log_ordering_constant(k1, k2, s1, s2)))


def ordering_constant_quadrature(k1: float, k2: float, s1: float, s2: float) -> float:
    """C(k1, k2, s1, s2) by adaptive quadrature of the defining integral.

    Independent of the closed form; serves as its correctness oracle and as
    the alternative backend of ``restricted_predictive``.
    """
    if min(k1, k2, s1, s2) <= 0:
        raise DomainError("ordering constant requires positive arguments")
    ig = dist.InverseGammaModel(k1, k2)

    def integrand(v):
        return marginal_restricted(s1, s2, v) / v * dist.inverse_gamma_pdf(ig, v)

    val, _ = integrate.quad(integrand, 0, np.inf, epsabs=0, epsrel=1e-10, limit=300)
    return float(val)


def predictive_pdf_from_marginal(y, x1: float, r1: float, r_prime: float, marginal=marginal_flat):
    """Unrestricted predictive density in its general marginal-ratio form.

    ``marginal(s1, s2)`` is the prior marginal of an inverse-gamma
    statistic; with ``marginal_flat`` this reduces algebraically to the
    beta prime ``B'(r_prime, r1, x1)``.
    """
    if r1 <= 1.0 + _SHAPE_MARGIN:
        raise InvalidShapeError(f"r1 = {r1} needs to exceed 1")
    y = np.asarray(y, dtype=float)
    out = np.zeros(y.shape)
    pos = y > 0
    yv = y[pos]
    ratio = marginal(r1 + r_prime - 1.0, x1 + yv) / marginal(r1 - 1.0, x1)
    out[pos] = (
        ratio
        * np.exp(
            -special.betaln(r1 - 1.0, r_prime)
            + (r1 - 1.0) * np.log(x1)
            + (r_prime - 1.0) * np.log(yv)
            - (r1 + r_prime - 1.0) * np.log(x1 + yv)
        )
    )
    return out if y.ndim else float(out)


def log_restricted_base(y, x1, x2, r1: float, r2: float, r_prime: float):
    """Log of the untruncated restricted predictive density.

    Broadcasts over ``y``, ``x1`` and ``x2``; the vectorization carries the
    Monte Carlo risk evaluation.  Returns -inf for y <= 0.
    """
    if r1 <= 1.0 + _SHAPE_MARGIN or r2 <= 1.0 + _SHAPE_MARGIN:
        raise InvalidShapeError("restricted estimator needs r1 > 1 and r2 > 1")
    if r_prime <= 0:
        raise InvalidShapeError("future shape must be positive")
    y = np.asarray(y, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    log_c_num = log_ordering_constant(r1 + r_prime - 1.0, x1 + y, r2 - 1.0, x2)
    log_c_den = log_ordering_constant(r1 - 1.0, x1, r2 - 1.0, x2)
    with np.errstate(divide="ignore", invalid="ignore"):
        core = np.where(
            y > 0,
            (r_prime - 1.0) * np.log(np.where(y > 0, y, 1.0))
            - (r1 + r_prime - 1.0) * np.log(x1 + np.maximum(y, 0.0)),
            -np.inf,
        )
    return (
        -special.betaln(r1 - 1.0, r_prime)
        + (r1 - 1.0) * np.log(x1)
        + core
        + log_c_num
        - log_c_den
    )


def weighted_beta_prime_logpdf(y, x1: float, x2: float, r1: float, r2: float, r_prime: float):
    """Log of the restricted density in its single weighted-beta-prime form.

    Algebraically equal to ``log_restricted_base``; kept as an independent
    expression (one hypergeometric ratio instead of an ordering-constant
    ratio) for cross-validation.
    """
    if r1 <= 1.0 + _SHAPE_MARGIN or r2 <= 1.0 + _SHAPE_MARGIN:
        raise InvalidShapeError("restricted estimator needs r1 > 1 and r2 > 1")
    y = np.asarray(y, dtype=float)
    num = log_reg_gauss_2f1_pos(
        r_prime + r1, r_prime + r1 + r2, r_prime + r1 + 1.0, -(x1 + y) / x2
    ) + special.gammaln(r_prime + r1 + 1.0)
    den = log_reg_gauss_2f1_pos(r1, r1 + r2, r1 + 1.0, -x1 / x2) + special.gammaln(r1 + 1.0)
    out = (
        np.log(r1)
        + special.gammaln(r_prime + r1 + r2)
        - r_prime * np.log(x2)
        + (r_prime - 1.0) * np.log(y)
        + num
        - np.log(r_prime + r1)
        - special.gammaln(r_prime)
        - special.gammaln(r1 + r2)
        - den
    )
    return out if out.ndim else float(out)


def unrestricted_predictive(problem: PredictionProblem) -> dist.TruncatedDensity:
    """Predictive density from the own-team statistic alone.

    The flat scale prior gives the beta prime ``B'(r', r1, x1)``; the
    result is renormalized to the problem window.
    """
    stat = problem.obs_a
    model = dist.GeneralizedBetaPrime(a=problem.r_prime, b=stat.r, sigma=stat.x)
    lo, hi = problem.window
    return dist.truncate(lambda y: dist.gb_prime_pdf(model, y), lo, hi, label="unrestricted")


def restricted_predictive(problem: PredictionProblem, c_method: str = "closed") -> dist.TruncatedDensity:
    """Predictive density using the rival statistic and the scale ordering.

    Args:
        problem: must carry ``obs_b``; its ``x`` is taken as already
            preprocessed (see the ingest module for the scaling options).
        c_method: "closed" evaluates the ordering constants through the
            hypergeometric closed form; "quadrature" integrates their
            defining integral instead (slow, used for validation).

    Returns:
        The weighted density renormalized to the problem window.
    """
    if problem.obs_b is None:
        raise DomainError("restricted_predictive needs the rival statistic obs_b")
    a, b = problem.obs_a, problem.obs_b
    if c_method == "closed":
        def base(y):
            return np.exp(log_restricted_base(y, a.x, b.x, a.r, b.r, problem.r_prime))
    elif c_method == "quadrature":
        log_c_den = np.log(ordering_constant_quadrature(a.r - 1.0, a.x, b.r - 1.0, b.x))
        log_pref = (
            -special.betaln(a.r - 1.0, problem.r_prime)
            + (a.r - 1.0) * np.log(a.x)
            - log_c_den
        )

        def base(y):
            y = np.asarray(y, dtype=float)
            c_num = np.array(
                [
                    ordering_constant_quadrature(
                        a.r + problem.r_prime - 1.0, a.x + yi, b.r - 1.0, b.x
                    )
                    for yi in np.atleast_1d(y)
                ]
            ).reshape(y.shape)
            val = np.exp(
                log_pref
                + (problem.r_prime - 1.0) * np.log(y)
                - (a.r + problem.r_prime - 1.0) * np.log(a.x + y)
            )
            return val * c_num
    else:
        raise DomainError(f"unknown c_method {c_method!r}")
    lo, hi = problem.window
    return dist.truncate(base, lo, hi, label="restricted")


@dataclass(frozen=True)
class SummaryRow:
    """Mode, mean and the 20th/50th/90th percentiles of a predictive density."""

    mode: float
    mean: float
    p20: float
    p50: float
    p90: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.mode, self.mean, self.p20, self.p50, self.p90)


def predictive_summaries(density: dist.TruncatedDensity) -> SummaryRow:
    """Summary row of a predictive density over its window."""
    s = dist.summarize(density, probs=(0.2, 0.5, 0.9))
    return SummaryRow(
        mode=s.mode,
        mean=s.mean,
        p20=s.quantiles[0.2],
        p50=s.quantiles[0.5],
        p90=s.quantiles[0.9],
    )
