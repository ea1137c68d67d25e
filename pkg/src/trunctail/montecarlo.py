"""Replication harness: simulate truncated samples, re-estimate, standardize
by the true tail index, and summarize normality and CI coverage."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import LightTailModel, TailModel, TruncatedSampleSpec, TruncationScheme, sample_truncated
from .estimator import (
    AdaptiveParams,
    DegenerateSampleError,
    InsufficientTailDataError,
    estimate,
    tilde_k,
    u_count,
)
from .normal import ks_distance, normal_cdf, normal_quantile

__all__ = [
    "ExperimentError",
    "ExperimentSpec",
    "ReplicationResult",
    "NormalityReport",
    "ExperimentResult",
    "replication_seed",
    "run_replication",
    "run_experiment",
    "qq_points",
    "replications_csv",
    "aggregate_json",
    "qq_csv",
    "normal_cdf",
    "normal_quantile",
    "ks_distance",
]


class ExperimentError(RuntimeError):
    """Every replication failed; no aggregate can be formed."""


def replication_seed(base_seed: int, n: int, index: int) -> int:
    """64-bit stream seed derived from (base_seed, n, index) and nothing else,
    so scheduling and thread counts cannot change any replication."""
    ss = np.random.SeedSequence(base_seed, spawn_key=(n, index))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ExperimentSpec:
    """Template for a replication study; n and the per-replication seed vary."""

    tail: TailModel
    light: LightTailModel
    truncation: TruncationScheme
    params: AdaptiveParams
    n_list: tuple[int, ...]
    replications: int
    base_seed: int
    level: float = 0.95

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        if not self.n_list:
            raise ValueError("n_list must be nonempty")
        if any(n < 1 for n in self.n_list):
            raise ValueError(f"every n must be >= 1, got {self.n_list}")
        if len(set(self.n_list)) != len(self.n_list):
            raise ValueError(f"n_list must not repeat sizes, got {self.n_list}")
        if not (isinstance(self.replications, (int, np.integer)) and self.replications >= 1):
            raise ValueError(f"replications must be an integer >= 1, got {self.replications!r}")
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must be in (0, 1), got {self.level}")


@dataclass(frozen=True)
class ReplicationResult:
    """One simulate-estimate pass. z standardizes h by the TRUE tail index:
    z = alpha * sqrt(k_hat) * (h - 1/alpha); z_plugin studentizes by h instead."""

    n: int
    index: int
    failed: bool
    k_hat: int | None
    h: float | None
    z: float | None
    z_plugin: float | None
    ci_covers: bool | None
    u_count: int
    tilde_k: int
    error: str | None = None


@dataclass(frozen=True)
class NormalityReport:
    """Aggregate over the successful replications at one sample size."""

    n: int
    count: int
    mean_z: float
    var_z: float
    ks_distance: float
    coverage: float
    failures: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "mean_z": self.mean_z,
            "var_z": self.var_z,
            "ks": self.ks_distance,
            "coverage": self.coverage,
            "failures": self.failures,
        }


@dataclass(frozen=True)
class ExperimentResult:
    replications: tuple[ReplicationResult, ...]
    reports: dict[int, NormalityReport]


def run_replication(spec: ExperimentSpec, n: int, index: int) -> ReplicationResult:
    """One replication; estimator failures are recorded, not raised."""
    seed = replication_seed(spec.base_seed, n, index)
    sample = sample_truncated(
        TruncatedSampleSpec(spec.tail, spec.light, spec.truncation, n, seed)
    )
    m = spec.truncation.threshold(n)
    u = u_count(sample, spec.params.gamma, m)
    tk = tilde_k(n, u, spec.params.beta)
    try:
        est = estimate(sample, spec.params, spec.level)
    except (InsufficientTailDataError, DegenerateSampleError) as exc:
        return ReplicationResult(
            n=n, index=index, failed=True, k_hat=None, h=None, z=None,
            z_plugin=None, ci_covers=None, u_count=u, tilde_k=tk, error=str(exc),
        )
    alpha = spec.tail.alpha
    target = 1.0 / alpha
    root_k = math.sqrt(est.k_hat)
    return ReplicationResult(
        n=n,
        index=index,
        failed=False,
        k_hat=est.k_hat,
        h=est.h,
        z=alpha * root_k * (est.h - target),
        z_plugin=root_k * (est.h - target) / est.h,
        ci_covers=bool(est.ci_lo <= target <= est.ci_hi),
        u_count=u,
        tilde_k=tk,
    )


def _aggregate(n: int, results: list[ReplicationResult]) -> NormalityReport:
    ok = [r for r in results if not r.failed]
    if not ok:
        raise ExperimentError(f"all {len(results)} replications failed for n = {n}")
    # moments come from the sorted z list, so completion order is irrelevant
    zs = np.sort(np.array([r.z for r in ok]))
    mean = float(zs.mean())
    var = float(zs.var(ddof=1)) if zs.size > 1 else 0.0
    coverage = sum(1 for r in ok if r.ci_covers) / len(ok)
    return NormalityReport(
        n=n,
        count=len(ok),
        mean_z=mean,
        var_z=var,
        ks_distance=ks_distance(zs),
        coverage=coverage,
        failures=len(results) - len(ok),
    )


def run_experiment(spec: ExperimentSpec, max_workers: int = 1) -> ExperimentResult:
    """All replications for every n. Replications are independent tasks, so
    any degree of parallelism produces the identical result."""
    tasks = [(n, i) for n in spec.n_list for i in range(spec.replications)]
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(lambda t: run_replication(spec, *t), tasks))
    else:
        results = [run_replication(spec, n, i) for n, i in tasks]
    reports = {
        n: _aggregate(n, [r for r in results if r.n == n]) for n in spec.n_list
    }
    return ExperimentResult(replications=tuple(results), reports=reports)


def qq_points(zs) -> list[tuple[float, float]]:
    """(theoretical, empirical) normal quantile pairs at positions (i - 1/2)/m."""
    z = np.sort(np.asarray(zs, dtype=float).ravel())
    m = z.size
    if m == 0:
        raise ValueError("need at least one value")
    return [(normal_quantile((i - 0.5) / m), float(z[i - 1])) for i in range(1, m + 1)]


def replications_csv(results) -> str:
    """One record per replication; floats as shortest round-trip decimals."""
    lines = ["n,index,k_hat,h,z,z_plugin,covers,failed"]
    for r in results:
        if r.failed:
            lines.append(f"{r.n},{r.index},,,,,,true")
        else:
            covers = "true" if r.ci_covers else "false"
            lines.append(
                f"{r.n},{r.index},{r.k_hat},{r.h!r},{r.z!r},{r.z_plugin!r},{covers},false"
            )
    return "\n".join(lines) + "\n"


def aggregate_json(reports: dict[int, NormalityReport]) -> str:
    return json.dumps([rep.to_dict() for rep in reports.values()], indent=2) + "\n"


def qq_csv(result: ExperimentResult) -> str:
    lines = ["n,theoretical_quantile,empirical_quantile"]
    for n in result.reports:
        zs = [r.z for r in result.replications if r.n == n and not r.failed]
        for theo, emp in qq_points(zs):
            lines.append(f"{n},{theo!r},{emp!r}")
    return "\n".join(lines) + "\n"
