"""Maximum-likelihood fitting of candidate lifetime laws to failure data.

Four candidate models are fitted to a sample of exact failure times and
ranked by negative log-likelihood (NLC) and the one-sample
Kolmogorov-Smirnov distance between the empirical and fitted
distribution functions:

* inverse Weibull, distribution function exp(-lam * t**-gamma);
* Weibull, distribution function 1 - exp(-lam * t**gamma);
* lognormal, normal law on log-times;
* log-logistic, logistic law on log-times.

For the two power-law models the scale parameter has a closed-form
profile given the shape, so the fit is a one-dimensional maximisation:
a coarse log-spaced scan locates the mode, golden-section refines it.
The log-location-scale models report location and scale of log-time in
the (param1, param2) slots.  All NLC values are on the original time
scale and therefore comparable across models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from scipy.special import expit

from .distributions import LifetimeModel, iw_cdf
from .errors import DataError, DomainError, FitError

MODEL_ORDER = ("inverse-weibull", "weibull", "lognormal", "log-logistic")

_SHAPE_LO, _SHAPE_HI = 1e-2, 1e2
_SCAN_POINTS = 161


@dataclass(frozen=True)
class LifetimeSample:
    """Sorted positive failure times."""

    times: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.times:
            raise DomainError("sample must be non-empty")
        for t in self.times:
            if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0):
                raise DomainError(f"failure times must be positive reals, got {t!r}")
        object.__setattr__(self, "times", tuple(sorted(float(t) for t in self.times)))

    @classmethod
    def from_iterable(cls, values: Iterable[float]) -> "LifetimeSample":
        return cls(tuple(values))

    @classmethod
    def from_text(cls, path: str | Path) -> "LifetimeSample":
        """Parse whitespace/comma/newline delimited positive decimals."""
        try:
            raw = Path(path).read_text()
        except OSError as exc:
            raise DataError(f"cannot read data file {path}: {exc}") from exc
        tokens = raw.replace(",", " ").split()
        if not tokens:
            raise DataError(f"data file {path} contains no values")
        values = []
        for tok in tokens:
            try:
                values.append(float(tok))
            except ValueError as exc:
                raise DataError(f"invalid value {tok!r} in {path}") from exc
        try:
            return cls(tuple(values))
        except DomainError as exc:
            raise DataError(str(exc)) from exc

    @property
    def n(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class FitResult:
    """One fitted model: parameters, negative log-likelihood and K-S distance."""

    model_name: str
    param1: float
    param2: float
    nlc: float
    ks: float

    def __post_init__(self) -> None:
        if self.model_name not in MODEL_ORDER:
            raise DomainError(f"unknown model {self.model_name!r}")
        if not math.isfinite(self.nlc):
            raise DomainError(f"nlc must be finite, got {self.nlc!r}")
        if not 0.0 <= self.ks <= 1.0:
            raise DomainError(f"ks must lie in [0, 1], got {self.ks!r}")


def ks_statistic(sample: LifetimeSample, cdf: Callable[[float], float]) -> float:
    """Sup distance between the empirical and a fitted distribution function."""
    n = sample.n
    d = 0.0
    for i, t in enumerate(sample.times, start=1):
        f = cdf(t)
        d = max(d, i / n - f, f - (i - 1) / n)
    return d


def _check_fittable(sample: LifetimeSample) -> None:
    if sample.n < 2:
        raise FitError("need at least two observations to fit")
    if sample.times[0] == sample.times[-1]:
        raise FitError("non-convergent: all failure times identical")


def _profile_shape(negloglik: Callable[[float], float]) -> float:
    """Maximise a profiled likelihood over the shape parameter.

    Coarse log-spaced scan over [1e-2, 1e2] to bracket the mode, then
    golden-section refinement.  A mode on the scan boundary means the
    likelihood is drifting to a degenerate edge.
    """
    grid = np.logspace(math.log10(_SHAPE_LO), math.log10(_SHAPE_HI), _SCAN_POINTS)
    values = [negloglik(g) for g in grid]
    i = int(np.argmin(values))
    if i == 0 or i == len(grid) - 1:
        raise FitError("non-convergent: no interior likelihood mode")
    res = minimize_scalar(
        negloglik,
        bracket=(grid[i - 1], grid[i], grid[i + 1]),
        method="golden",
        options={"xtol": 1e-8},
    )
    return float(res.x)


def fit_inverse_weibull(sample: LifetimeSample) -> FitResult:
    """MLE of the inverse Weibull law with the scale profiled in closed form."""
    _check_fittable(sample)
    t = np.asarray(sample.times)
    n = sample.n
    sum_log = float(np.log(t).sum())

    def nll(gamma: float) -> float:
        lam = n / float(np.sum(t**-gamma))
        ll = n * math.log(gamma) + n * math.log(lam) - (gamma + 1.0) * sum_log - n
        return -ll

    gamma_hat = _profile_shape(nll)
    lam_hat = n / float(np.sum(t**-gamma_hat))
    model = LifetimeModel(gamma_hat, lam_hat)
    ks = ks_statistic(sample, lambda x: iw_cdf(x, model))
    return FitResult("inverse-weibull", gamma_hat, lam_hat, nll(gamma_hat), ks)


def fit_weibull(sample: LifetimeSample) -> FitResult:
    """MLE of the Weibull law 1 - exp(-(lam * t)**gamma), scale profiled.

    The failure rate u = lam**gamma has the closed-form profile
    u_hat = n / sum(t**gamma); the reported scale is its gamma-th root.
    """
    _check_fittable(sample)
    t = np.asarray(sample.times)
    n = sample.n
    sum_log = float(np.log(t).sum())

    def nll(gamma: float) -> float:
        rate = n / float(np.sum(t**gamma))
        ll = n * math.log(gamma) + n * math.log(rate) + (gamma - 1.0) * sum_log - n
        return -ll

    gamma_hat = _profile_shape(nll)
    rate_hat = n / float(np.sum(t**gamma_hat))
    lam_hat = rate_hat ** (1.0 / gamma_hat)

    def cdf(x: float) -> float:
        return -math.expm1(-((lam_hat * x) ** gamma_hat))

    return FitResult("weibull", gamma_hat, lam_hat, nll(gamma_hat), ks_statistic(sample, cdf))


def fit_lognormal(sample: LifetimeSample) -> FitResult:
    """Closed-form normal MLE on log-times; NLC includes the 1/t Jacobian."""
    _check_fittable(sample)
    logs = np.log(np.asarray(sample.times))
    n = sample.n
    mu = float(logs.mean())
    sigma = float(np.sqrt(np.mean((logs - mu) ** 2)))
    nlc = float(logs.sum()) + n * math.log(sigma) + 0.5 * n * (math.log(2 * math.pi) + 1.0)

    def cdf(x: float) -> float:
        return 0.5 * (1.0 + math.erf((math.log(x) - mu) / (sigma * math.sqrt(2.0))))

    return FitResult("lognormal", mu, sigma, nlc, ks_statistic(sample, cdf))


def fit_loglogistic(sample: LifetimeSample) -> FitResult:
    """Logistic MLE on log-times via gradient-based minimisation."""
    _check_fittable(sample)
    logs = np.log(np.asarray(sample.times))
    n = sample.n

    def nll_grad(theta: np.ndarray) -> tuple[float, np.ndarray]:
        # -log f(z) = z + 2*log(1 + exp(-z)) per point, plus log s;
        # scale optimised on the log axis to stay positive
        mu, log_s = theta
        s = math.exp(log_s)
        z = (logs - mu) / s
        nll = float(np.sum(z + 2.0 * np.logaddexp(0.0, -z))) + n * math.log(s)
        sig = expit(z)
        g_mu = -float(np.sum(2.0 * sig - 1.0)) / s
        g_logs = -(float(np.sum(z * (2.0 * sig - 1.0))) - n)
        return nll, np.array([g_mu, g_logs])

    start = np.array([float(np.median(logs)), math.log(max(float(logs.std()), 1e-6))])
    res = minimize(nll_grad, start, jac=True, method="L-BFGS-B",
                   options={"ftol": 1e-14, "gtol": 1e-10})
    if not res.success and np.linalg.norm(res.jac) > 1e-6:
        raise FitError(f"non-convergent logistic fit: {res.message}")
    mu, log_s = res.x
    s = math.exp(log_s)
    nlc = float(res.fun) + float(np.log(np.asarray(sample.times)).sum())

    def cdf(x: float) -> float:
        return float(expit((math.log(x) - mu) / s))

    return FitResult("log-logistic", float(mu), s, nlc, ks_statistic(sample, cdf))


_FITTERS = {
    "inverse-weibull": fit_inverse_weibull,
    "weibull": fit_weibull,
    "lognormal": fit_lognormal,
    "log-logistic": fit_loglogistic,
}


def goodness_table(
    sample: LifetimeSample, models: Sequence[str] = MODEL_ORDER
) -> list[FitResult]:
    """Fit the requested models in order; a model that fails to fit is skipped.

    Per-model errors are collected as warnings rather than aborting the
    remaining fits.
    """
    import warnings

    results = []
    for name in models:
        if name not in _FITTERS:
            raise DomainError(f"unknown model {name!r}; choose from {MODEL_ORDER}")
        try:
            results.append(_FITTERS[name](sample))
        except FitError as exc:
            warnings.warn(f"{name}: {exc}", stacklevel=2)
    return results


def best_by_ks(results: Sequence[FitResult]) -> FitResult:
    """The fitted model with the smallest K-S distance."""
    if not results:
        raise DomainError("no fit results to rank")
    return min(results, key=lambda r: r.ks)
