"""Order statistics, the Hill statistic, and the sample-adaptive count of
top order statistics, with normal-limit confidence intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .normal import normal_quantile

__all__ = [
    "DegenerateSampleError",
    "InsufficientTailDataError",
    "SampleData",
    "AdaptiveParams",
    "HillEstimate",
    "hill_statistic",
    "v_count",
    "adaptive_k",
    "u_count",
    "tilde_k",
    "estimate",
    "hill_curve",
]


class DegenerateSampleError(ValueError):
    """The sample carries no usable tail information (zero maximum, zero
    order statistic where a log is needed, or an all-equal top)."""


class InsufficientTailDataError(ValueError):
    """The adaptive count came out below 2, so there is no log-spacing set."""


class SampleData:
    """Nonnegative sample with cached descending order statistics.

    ``values`` keeps insertion order; ``ordered[i]`` is the (i+1)-th largest
    value. Sorting happens once, here; every estimator reuses the cache.
    """

    __slots__ = ("values", "ordered")

    def __init__(self, values):
        arr = np.array(values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("sample must be a nonempty one-dimensional array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sample values must be finite")
        if arr.min() < 0:
            raise ValueError("sample values must be nonnegative")
        self.values = arr
        self.ordered = np.sort(arr, kind="stable")[::-1]

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"SampleData(n={self.n}, max={self.ordered[0]!r})"


@dataclass(frozen=True)
class AdaptiveParams:
    """Count exponent beta and threshold fraction gamma, both strictly in (0, 1).

    The defaults are a reasonable starting point for tail indices >= 1 with a
    strongly negative second-order exponent; run the diagnostics before
    trusting them on real data.
    """

    beta: float = 0.7
    gamma: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must be in (0, 1), got {self.beta}")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must be in (0, 1), got {self.gamma}")


@dataclass(frozen=True)
class HillEstimate:
    """Point estimate of 1/alpha with a symmetric normal-limit CI on that scale."""

    n: int
    k_hat: int
    h: float
    alpha_hat: float
    se: float
    ci_lo: float
    ci_hi: float
    level: float
    v_count: int

    @property
    def alpha_ci(self) -> tuple[float, float]:
        """Interval for alpha itself: [1/ci_hi, 1/ci_lo]."""
        return 1.0 / self.ci_hi, 1.0 / self.ci_lo

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k_hat": self.k_hat,
            "h": self.h,
            "alpha_hat": self.alpha_hat,
            "se": self.se,
            "ci_lo": self.ci_lo,
            "ci_hi": self.ci_hi,
            "level": self.level,
            "v_count": self.v_count,
        }


def hill_statistic(sample: SampleData, k: int) -> float:
    """h(k, n): mean of log(X_(i)/X_(k)) over the top k order statistics.

    The i = k term contributes exactly zero; the result is nonnegative.
    """
    n = sample.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    xk = sample.ordered[k - 1]
    if xk <= 0.0:
        raise DegenerateSampleError(f"X_({k}) = 0; log ratios are undefined")
    return float(np.log(sample.ordered[:k] / xk).mean())


def v_count(sample: SampleData, gamma: float) -> int:
    """Strict count of values above gamma * X_(1); at least 1 since gamma < 1."""
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must be in (0, 1), got {gamma}")
    x1 = sample.ordered[0]
    if x1 <= 0.0:
        raise DegenerateSampleError("sample maximum is 0")
    return int(np.count_nonzero(sample.values > gamma * x1))


def adaptive_k(sample: SampleData, params: AdaptiveParams) -> int:
    """Integer part of n * (V_n/n)**beta with V_n the count above gamma * X_(1)."""
    n = sample.n
    v = v_count(sample, params.gamma)
    return int(math.floor(n * (v / n) ** params.beta))


def u_count(sample: SampleData, gamma: float, m: float) -> int:
    """Strict count of values above gamma * m, for a known truncation level m.

    Simulation-side diagnostic; real data never knows m.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must be in (0, 1), got {gamma}")
    if not m > 0.0:
        raise ValueError(f"m must be positive, got {m}")
    return int(np.count_nonzero(sample.values > gamma * m))


def tilde_k(n: int, u: int, beta: float) -> int:
    """Integer part of n**(1-beta) * u**beta."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= u <= n:
        raise ValueError(f"u must be in [0, {n}], got {u}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must be in (0, 1), got {beta}")
    # computed as n * (u/n)**beta so u == n lands exactly on n
    return int(math.floor(n * (u / n) ** beta))


def estimate(
    sample: SampleData,
    params: AdaptiveParams | None = None,
    level: float = 0.95,
    k: int | None = None,
) -> HillEstimate:
    """Hill estimate at the adaptive count (or a forced k), with CI
    h +/- z * h/sqrt(k) from the sqrt(k)-rate normal limit.

    The interval is symmetric on the h = 1/alpha scale; ``alpha_ci`` maps it
    to the alpha scale. A forced k skips the adaptive choice entirely.
    """
    if params is None:
        params = AdaptiveParams()
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")
    v = v_count(sample, params.gamma)
    if k is None:
        k = int(math.floor(sample.n * (v / sample.n) ** params.beta))
        if k < 2:
            raise InsufficientTailDataError(
                f"adaptive count k = {k} (V = {v}, n = {sample.n}); need k >= 2 -- "
                "the observed tail is too thin for these (beta, gamma)"
            )
    elif not 2 <= k <= sample.n:
        raise ValueError(f"forced k must be in [2, {sample.n}], got {k}")
    h = hill_statistic(sample, k)
    if h <= 0.0:
        raise DegenerateSampleError(
            "top order statistics are all equal; h = 0 gives a degenerate CI"
        )
    se = h / math.sqrt(k)
    z = normal_quantile(0.5 * (1.0 + level))
    return HillEstimate(
        n=sample.n,
        k_hat=k,
        h=h,
        alpha_hat=1.0 / h,
        se=se,
        ci_lo=h - z * se,
        ci_hi=h + z * se,
        level=level,
        v_count=v,
    )


def hill_curve(sample: SampleData, k_min: int, k_max: int) -> list[tuple[int, float]]:
    """h(k, n) for every k in [k_min, k_max] in one prefix-sum pass, O(k_max)."""
    n = sample.n
    if not 1 <= k_min <= k_max <= n:
        raise ValueError(f"need 1 <= k_min <= k_max <= {n}, got [{k_min}, {k_max}]")
    if sample.ordered[k_max - 1] <= 0.0:
        raise DegenerateSampleError(f"X_({k_max}) = 0; log ratios are undefined")
    logs = np.log(sample.ordered[:k_max])
    prefix = np.cumsum(logs)
    ks = np.arange(k_min, k_max + 1)
    hs = prefix[ks - 1] / ks - logs[ks - 1]
    return list(zip(ks.tolist(), hs.tolist()))
