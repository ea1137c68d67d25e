"""Parametric heavy- and light-tailed laws and a truncated-sample generator.

Heavy tails are exact Pareto or Burr; both expose closed-form survival
functions and inverses, so sampling is one uniform per draw with no
rejection. Truncated samples replace every heavy draw above the threshold
M_n = A * n**delta with M_n plus an independent light-tailed excess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .estimator import SampleData

__all__ = [
    "Pareto",
    "Burr",
    "Zero",
    "Exponential",
    "Uniform",
    "TailModel",
    "LightTailModel",
    "TruncationScheme",
    "TruncatedSampleSpec",
    "sample_tail",
    "sample_truncated",
    "parse_tail_model",
    "parse_light_model",
    "parse_truncation",
]

_MAX_SEED = 2**64

# Fixed stream ids: heavy draws and light excesses never share a stream.
_H_STREAM = 0
_L_STREAM = 1


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


def _check_seed(seed: int) -> None:
    if not (isinstance(seed, (int, np.integer)) and 0 <= seed < _MAX_SEED):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")


def _stream(seed: int, stream: int) -> np.random.Generator:
    # Philox is counter-based, so a (seed, stream) pair pins the whole
    # stream independently of scheduling or how other streams are consumed.
    key = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(key))


@dataclass(frozen=True)
class Pareto:
    """P(H > x) = (x/xmin)**(-alpha) for x >= xmin, 1 below."""

    alpha: float
    xmin: float = 1.0

    def __post_init__(self):
        _require_positive("alpha", self.alpha)
        _require_positive("xmin", self.xmin)

    @property
    def rho(self) -> float | None:
        """Second-order exponent; None because the Pareto tail is first-order exact."""
        return None

    @property
    def support_left(self) -> float:
        return self.xmin

    def survival(self, x: float) -> float:
        if x < self.xmin:
            return 1.0
        return (x / self.xmin) ** -self.alpha

    def quantile_b(self, y: float) -> float:
        """Smallest x with survival(x) <= 1/y, for y >= 1."""
        if y < 1.0:
            raise ValueError(f"quantile_b requires y >= 1, got {y}")
        return self.xmin * y ** (1.0 / self.alpha)

    def slowly_varying(self, x: float) -> float:
        """x**alpha * survival(x); constant xmin**alpha on the support."""
        if x < self.xmin:
            raise ValueError(f"x = {x} is below the support [{self.xmin}, inf)")
        return x**self.alpha * self.survival(x)

    def second_order_auxiliary(self, t: float) -> float:
        raise ValueError(
            "Pareto tail is first-order exact; no second-order auxiliary rate"
        )

    def _inverse_survival(self, u: np.ndarray) -> np.ndarray:
        return self.xmin * u ** (-1.0 / self.alpha)


@dataclass(frozen=True)
class Burr:
    """P(H > x) = (1 + x**tau)**(-lam) for x >= 0; tail index tau * lam."""

    tau: float
    lam: float

    def __post_init__(self):
        _require_positive("tau", self.tau)
        _require_positive("lambda", self.lam)

    @property
    def alpha(self) -> float:
        return self.tau * self.lam

    @property
    def rho(self) -> float:
        return -1.0 / self.lam

    @property
    def support_left(self) -> float:
        return 0.0

    def survival(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        t = self.tau * math.log(x)
        if t > 690.0:  # x**tau would overflow; 1 + x**tau == x**tau here anyway
            return math.exp(-self.lam * t)
        return (1.0 + math.exp(t)) ** -self.lam

    def quantile_b(self, y: float) -> float:
        """Smallest x with survival(x) <= 1/y, for y >= 1: (y**(1/lam) - 1)**(1/tau)."""
        if y < 1.0:
            raise ValueError(f"quantile_b requires y >= 1, got {y}")
        return math.expm1(math.log(y) / self.lam) ** (1.0 / self.tau)

    def slowly_varying(self, x: float) -> float:
        """x**alpha * survival(x) = (x**tau / (1 + x**tau))**lam; tends to 1."""
        if x < 0.0:
            raise ValueError(f"x = {x} is below the support [0, inf)")
        if x == 0.0:
            return 0.0
        t = -self.tau * math.log(x)
        if t > 690.0:  # x**-tau would overflow; here l(x) ~ x**alpha
            return math.exp(-self.lam * t)
        return math.exp(-self.lam * math.log1p(math.exp(t)))

    def second_order_auxiliary(self, t: float) -> float:
        """Rate A(t) = t**(-tau) / (tau * lam) in the survival-ratio expansion

            [survival(t x)/survival(t) - x**(-alpha)] / A(t)
                -> x**(-alpha) * (x**(rho*alpha) - 1) / (rho/alpha),

        obtained by matching (1 + x**tau)**(-lam) = x**(-tau*lam) *
        (1 - lam*x**(-tau) + O(x**(-2 tau))) against the limit form.
        """
        if not t > 0.0:
            raise ValueError(f"t must be positive, got {t}")
        return t**-self.tau / (self.tau * self.lam)

    def _inverse_survival(self, u: np.ndarray) -> np.ndarray:
        return np.expm1(np.log(u) / -self.lam) ** (1.0 / self.tau)


TailModel = Pareto | Burr


@dataclass(frozen=True)
class Zero:
    """Degenerate excess: L = 0 always."""

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.zeros(n)


@dataclass(frozen=True)
class Exponential:
    """Exponential excess with the given rate; every moment is finite."""

    rate: float = 1.0

    def __post_init__(self):
        _require_positive("rate", self.rate)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        # inversion of one uniform per draw: -log(1 - U)/rate
        return -np.log1p(-rng.random(n)) / self.rate


@dataclass(frozen=True)
class Uniform:
    """Uniform excess on [0, b)."""

    b: float = 1.0

    def __post_init__(self):
        _require_positive("b", self.b)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.b * rng.random(n)


LightTailModel = Zero | Exponential | Uniform


@dataclass(frozen=True)
class TruncationScheme:
    """Threshold sequence M_n = A * n**delta; strictly increasing and unbounded."""

    A: float = 1.0
    delta: float = 0.5

    def __post_init__(self):
        _require_positive("A", self.A)
        _require_positive("delta", self.delta)

    def threshold(self, n: int) -> float:
        """M_n in floating point; a level, never rounded to a count."""
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        return self.A * float(n) ** self.delta


@dataclass(frozen=True)
class TruncatedSampleSpec:
    """Full generative model: heavy tail, light excess, threshold rule, n, seed."""

    tail: TailModel
    light: LightTailModel
    truncation: TruncationScheme
    n: int
    seed: int

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        _check_seed(self.seed)


def sample_tail(model: TailModel, n: int, seed: int) -> np.ndarray:
    """n i.i.d. heavy-tail draws by inverse-survival sampling, one uniform each."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    _check_seed(seed)
    u = 1.0 - _stream(seed, _H_STREAM).random(n)  # in (0, 1], so no infinities
    return model._inverse_survival(u)


def sample_truncated(spec: TruncatedSampleSpec) -> SampleData:
    """Apply the threshold rule to raw heavy draws, before any sorting:
    X = H if H <= M_n else M_n + L, with H and L on independent streams."""
    m = spec.truncation.threshold(spec.n)
    heavy = sample_tail(spec.tail, spec.n, spec.seed)
    light = spec.light.sample(_stream(spec.seed, _L_STREAM), spec.n)
    return SampleData(np.where(heavy <= m, heavy, m + light))


def _parse_fields(body: str, what: str, keys: dict[str, float | None]) -> dict[str, float]:
    """Parse 'k=v,k=v' with case-insensitive keys; unknown keys are errors.

    ``keys`` maps each accepted lowercase key to its default, None meaning
    the key is required.
    """
    out: dict[str, float] = {}
    body = body.strip()
    if body:
        for part in body.split(","):
            if "=" not in part:
                raise ValueError(f"{what}: expected key=value, got {part.strip()!r}")
            key, _, raw = part.partition("=")
            key = key.strip().lower()
            if key not in keys:
                raise ValueError(f"{what}: unknown key {key!r}")
            if key in out:
                raise ValueError(f"{what}: duplicate key {key!r}")
            try:
                out[key] = float(raw)
            except ValueError:
                raise ValueError(
                    f"{what}: value for {key!r} is not a number: {raw.strip()!r}"
                ) from None
    for key, default in keys.items():
        if key not in out:
            if default is None:
                raise ValueError(f"{what}: missing required key {key!r}")
            out[key] = default
    return out


def parse_tail_model(text: str) -> TailModel:
    """Parse 'pareto:alpha=2,xmin=1' or 'burr:tau=1,lambda=2' (case-insensitive)."""
    name, _, body = text.strip().partition(":")
    name = name.strip().lower()
    if name == "pareto":
        kv = _parse_fields(body, "pareto", {"alpha": None, "xmin": 1.0})
        return Pareto(alpha=kv["alpha"], xmin=kv["xmin"])
    if name == "burr":
        kv = _parse_fields(body, "burr", {"tau": None, "lambda": None})
        return Burr(tau=kv["tau"], lam=kv["lambda"])
    raise ValueError(f"unknown tail model {name!r}: expected 'pareto' or 'burr'")


def parse_light_model(text: str) -> LightTailModel:
    """Parse 'zero', 'exp:rate=1' or 'uniform:b=1', with optional 'light:' prefix."""
    body = text.strip()
    if body.lower().startswith("light:"):
        body = body[len("light:"):]
    name, _, rest = body.partition(":")
    name = name.strip().lower()
    if name == "zero":
        if rest.strip():
            raise ValueError("zero light tail takes no parameters")
        return Zero()
    if name in ("exp", "exponential"):
        kv = _parse_fields(rest, "exp", {"rate": 1.0})
        return Exponential(rate=kv["rate"])
    if name == "uniform":
        kv = _parse_fields(rest, "uniform", {"b": None})
        return Uniform(b=kv["b"])
    raise ValueError(
        f"unknown light tail {name!r}: expected 'zero', 'exp' or 'uniform'"
    )


def parse_truncation(text: str) -> TruncationScheme:
    """Parse 'A=1,delta=0.8', with optional 'trunc:' prefix (case-insensitive)."""
    body = text.strip()
    if body.lower().startswith("trunc:"):
        body = body[len("trunc:"):]
    kv = _parse_fields(body, "trunc", {"a": None, "delta": None})
    return TruncationScheme(A=kv["a"], delta=kv["delta"])
