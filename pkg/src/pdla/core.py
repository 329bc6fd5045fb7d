"""Shared primitives for the online primal-dual algorithm modules.

Monotone variable stores, the primal/dual cost ledger with its
prediction-charged split, reproducible counter-based RNG streams, the
floating-point tolerance policy, and the numeric checkers for the
exponential-rate inequalities and the two-rate sequence bound that the
per-update analyses rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MonotonicityError",
    "MonotoneVarStore",
    "CostLedger",
    "EpsilonPolicy",
    "DEFAULT_EPS",
    "SeededRng",
    "Lemma12Result",
    "check_lemma12",
    "check_lemma13",
    "snap_ceil",
    "discounted_exp",
]


class MonotonicityError(ValueError):
    """An update tried to decrease (or not strictly increase) a variable."""


class MonotoneVarStore:
    """Map of nonnegative variables that may only increase.

    Every fractional solution built by the runners is monotone; the
    threshold rounding schemes depend on it, so violations raise instead
    of being silently accepted.  ``record_history`` keeps an append-only
    (key, old, new) log; it is off by default to keep sweeps lean.
    """

    __slots__ = ("_values", "history")

    def __init__(self, record_history: bool = False):
        self._values: dict = {}
        self.history: list[tuple] | None = [] if record_history else None

    def get(self, key) -> float:
        return self._values.get(key, 0.0)

    __getitem__ = get

    def increase(self, key, new_value: float) -> float:
        """Raise ``key`` to ``new_value``; returns the increment."""
        old = self._values.get(key, 0.0)
        if not math.isfinite(new_value):
            raise MonotonicityError(f"non-finite value {new_value!r} for {key!r}")
        if new_value <= old:
            raise MonotoneVarStore._reject(key, old, new_value)
        self._values[key] = new_value
        if self.history is not None:
            self.history.append((key, old, new_value))
        return new_value - old

    def add(self, key, delta: float) -> float:
        """Increment ``key`` by a strictly positive ``delta``."""
        return self.increase(key, self._values.get(key, 0.0) + delta)

    @staticmethod
    def _reject(key, old, new):
        return MonotonicityError(
            f"update of {key!r} from {old!r} to {new!r} is not an increase"
        )

    def items(self):
        return self._values.items()

    def as_dict(self) -> dict:
        return dict(self._values)

    def total(self) -> float:
        return sum(self._values.values())

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, key) -> bool:
        return key in self._values


@dataclass
class CostLedger:
    """Running primal/dual totals with the primal split into the part
    charged to the prediction and the rest.

    The split backs the consistency checks; ``primal_total`` must always
    equal ``prediction_charged + other`` up to float summation noise.
    """

    primal_total: float = 0.0
    dual_total: float = 0.0
    prediction_charged: float = 0.0
    other: float = 0.0

    def add_primal(self, amount: float, *, charged: bool) -> None:
        if not (amount >= 0.0 and math.isfinite(amount)):
            raise ValueError(f"primal increment must be finite and >= 0, got {amount!r}")
        self.primal_total += amount
        if charged:
            self.prediction_charged += amount
        else:
            self.other += amount

    def add_dual(self, amount: float) -> None:
        if not (amount >= 0.0 and math.isfinite(amount)):
            raise ValueError(f"dual increment must be finite and >= 0, got {amount!r}")
        self.dual_total += amount

    def decomposition_gap(self) -> float:
        return abs(self.primal_total - (self.prediction_charged + self.other))

    def decomposition_ok(self, eps: float | None = None) -> bool:
        if eps is None:
            eps = DEFAULT_EPS.ledger_eps
        return self.decomposition_gap() <= eps * max(1.0, self.primal_total)


@dataclass(frozen=True)
class EpsilonPolicy:
    """Float tolerances shared across the modules.

    ``coverage_eps`` turns the exact ``< 1`` of the covering loops into
    ``< 1 - coverage_eps`` so that exact-by-construction coverage (sums
    that equal 1 analytically) never triggers a spurious extra update.
    """

    coverage_eps: float = 1e-9
    ledger_eps: float = 1e-7
    lemma_grid_eps: float = 1e-9

    def __post_init__(self):
        for name in ("coverage_eps", "ledger_eps", "lemma_grid_eps"):
            v = getattr(self, name)
            if not (0.0 < v < 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3), got {v!r}")


DEFAULT_EPS = EpsilonPolicy()


@dataclass(frozen=True)
class SeededRng:
    """Reproducible RNG stream addressed by (seed, stream).

    Backed by numpy's counter-based Philox generator with the 128-bit key
    set to (seed, stream): identical pairs replay the exact same draw
    sequence on any platform, distinct streams are statistically
    independent, and any sweep cell can be reconstructed in isolation.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < 2**64 and 0 <= self.stream < 2**64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, stream: int) -> "SeededRng":
        return SeededRng(self.seed, stream)


def snap_ceil(x: float, rel: float = 1e-9) -> int:
    """Ceiling that forgives float noise just above an integer.

    Products like 0.1 * 100 land at 10.000000000000002; a plain ceil
    would silently change the update-count combinatorics, so values
    within ``rel`` of an integer snap to it.
    """
    if not math.isfinite(x):
        raise ValueError(f"cannot take ceiling of {x!r}")
    nearest = round(x)
    if abs(x - nearest) <= rel * max(1.0, abs(x)):
        return int(nearest)
    return math.ceil(x)


def discounted_exp(unit: float, exponent: float) -> float:
    """(1 + unit)^exponent evaluated as exp(exponent * log1p(unit))."""
    return math.exp(exponent * math.log1p(unit))


@dataclass(frozen=True)
class Lemma12Result:
    """Outcome of the six exponential-rate inequalities at one parameter point.

    ``holds[i]`` is True iff LHS >= RHS - eps for inequality i+1;
    ``margins[i]`` is LHS - RHS.
    """

    holds: tuple[bool, bool, bool, bool, bool, bool]
    margins: tuple[float, float, float, float, float, float]

    def all_hold(self) -> bool:
        return all(self.holds)


def check_lemma12(lam: float, d: float, beta: float, eps: float | None = None) -> Lemma12Result:
    """Evaluate the six rate inequalities at (lambda, d, beta).

    (1) lam/(1-e^-lam) >= 1/(1-e^-(1/lam))
    (2) the same with e^z replaced by (1+1/d)^(z d)
    (3) 1/(e^lam - 1)  >= ((1-lam)/lam * e^(1/lam) + 1)/(e^(1/lam) - 1)
    (4) the same with e^z replaced by (1+1/d)^(z d)
    (5) lam/(1-beta+beta*lam) * (e^lam-beta)/(e^lam-1) >= (e^(1/lam)-beta)/(e^(1/lam)-1)
    (6) (lam+beta-beta*lam)   * (e^lam-beta)/(e^lam-1) >= (e^(1/lam)-beta)/(e^(1/lam)-1)
    """
    if eps is None:
        eps = DEFAULT_EPS.lemma_grid_eps
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")
    if not (d > 0.0):
        raise ValueError(f"d must be positive, got {d!r}")
    if not (0.0 <= beta <= 1.0):
        raise ValueError(f"beta must lie in [0, 1], got {beta!r}")

    inv = 1.0 / lam

    # (1): continuous rates.
    lhs1 = lam / -math.expm1(-lam)
    rhs1 = 1.0 / -math.expm1(-inv)
    # (2): discrete rates; a = d * ln(1+1/d) so (1+1/d)^(z d) = e^(z a).
    a = d * math.log1p(1.0 / d)
    lhs2 = lam / -math.expm1(-lam * a)
    rhs2 = 1.0 / -math.expm1(-inv * a)
    # (3)/(4): overflow-safe via the large-exponent limit (ratio -> (1-lam)/lam).
    lhs3 = 1.0 / math.expm1(lam)
    rhs3 = _ratio34(lam, inv)
    lhs4 = 1.0 / math.expm1(lam * a)
    rhs4 = _ratio34(lam, inv * a)
    # (5)/(6): discount-factor variants.
    big = math.expm1(lam)  # e^lam - 1
    ratio_big = (big + 1.0 - beta) / big
    ratio_small = _beta_ratio(inv, beta)
    lhs5 = lam / (1.0 - beta + beta * lam) * ratio_big
    rhs5 = ratio_small
    lhs6 = (lam + beta - beta * lam) * ratio_big
    rhs6 = ratio_small

    margins = (lhs1 - rhs1, lhs2 - rhs2, lhs3 - rhs3, lhs4 - rhs4, lhs5 - rhs5, lhs6 - rhs6)
    holds = tuple(m >= -eps for m in margins)
    return Lemma12Result(holds, margins)  # type: ignore[arg-type]


def _ratio34(lam: float, exponent: float) -> float:
    # ((1-lam)/lam * E + 1) / (E - 1) with E = e^exponent; limit (1-lam)/lam as E -> inf.
    if exponent > 700.0:
        return (1.0 - lam) / lam
    e_val = math.exp(exponent)
    return ((1.0 - lam) / lam * e_val + 1.0) / (e_val - 1.0)


def _beta_ratio(exponent: float, beta: float) -> float:
    # (E - beta)/(E - 1) with E = e^exponent; -> 1 as E -> inf.
    if exponent > 700.0:
        return 1.0
    e_minus_1 = math.expm1(exponent)
    return (e_minus_1 + 1.0 - beta) / e_minus_1


def check_lemma13(
    s0: float,
    word: str,
    lam: float,
    d: float,
    eps: float | None = None,
) -> tuple[float, bool]:
    """Iterate the two-rate affine maps over ``word`` and test the unit bound.

    Letter 'a' applies f(x) = (1+1/d) x + 1/(d ((1+1/d)^(lam d) - 1)),
    letter 'b' applies g(x) with exponent d/lam instead.  Whenever
    #a + lam * #b >= d the final value must reach 1; words below that
    weight are unconstrained.
    """
    if eps is None:
        eps = DEFAULT_EPS.lemma_grid_eps
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")
    if not (d > 0.0):
        raise ValueError(f"d must be positive, got {d!r}")
    if s0 < 0.0:
        raise ValueError(f"initial value must be >= 0, got {s0!r}")

    a_log = d * math.log1p(1.0 / d)
    inc_a = 1.0 / (d * math.expm1(lam * a_log))
    inc_b = 1.0 / (d * math.expm1(a_log / lam))
    growth = 1.0 + 1.0 / d

    value = s0
    na = nb = 0
    for ch in word:
        if ch == "a":
            value = growth * value + inc_a
            na += 1
        elif ch == "b":
            value = growth * value + inc_b
            nb += 1
        else:
            raise ValueError(f"word must be over {{'a','b'}}, got {ch!r}")

    weight = na + lam * nb
    satisfied = (weight < d - 1e-12) or (value >= 1.0 - eps)
    return value, satisfied
