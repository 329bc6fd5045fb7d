"""Random arrival-sequence generators and the replacement-noise pipeline.

Three per-step count distributions (all with mean ~1 at the defaults):
Poisson, rounded Lomax (heavy tail), and an iterated Poisson chain that
keeps the mean but produces much spikier sequences.  Predictions come
from solving the perturbed instance offline and appending a final
horizon ack so every real packet is eventually acknowledged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tcpack import TcpInstance, TcpPrediction, offline_opt_tcp

__all__ = [
    "DistributionSpec",
    "NoiseSpec",
    "generate",
    "perturb",
    "make_prediction",
    "DISTRIBUTIONS",
]


@dataclass(frozen=True)
class DistributionSpec:
    """Per-entry count distribution: poisson | lomax | iterated_poisson."""

    kind: str
    mean: float = 1.0  # poisson mean / iterated-poisson mu
    shape: float = 2.0  # lomax shape
    scale: float = 1.0  # lomax scale
    chain: int = 10  # iterated-poisson chain length

    def __post_init__(self):
        if self.kind not in ("poisson", "lomax", "iterated_poisson"):
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.kind == "lomax" and self.shape <= 1.0:
            raise ValueError("lomax shape must exceed 1 so the mean exists")
        if self.kind == "iterated_poisson" and self.chain < 1:
            raise ValueError("iterated poisson needs a chain length >= 1")

    @staticmethod
    def poisson(mean: float = 1.0) -> "DistributionSpec":
        return DistributionSpec("poisson", mean=mean)

    @staticmethod
    def lomax(shape: float = 2.0, scale: float = 1.0) -> "DistributionSpec":
        return DistributionSpec("lomax", shape=shape, scale=scale)

    @staticmethod
    def iterated_poisson(mu: float = 1.0, n: int = 10) -> "DistributionSpec":
        return DistributionSpec("iterated_poisson", mean=mu, chain=n)

    def sample(self, length: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "poisson":
            return rng.poisson(self.mean, length).astype(np.int64)
        if self.kind == "lomax":
            # numpy's pareto(a) is the Lomax(a, 1) distribution; counts are
            # rounded to nearest to keep the mean near scale/(shape-1).
            draws = self.scale * rng.pareto(self.shape, length)
            return np.rint(draws).astype(np.int64)
        vals = rng.poisson(self.mean, length).astype(np.int64)
        for _ in range(self.chain - 1):
            vals = rng.poisson(vals)
        return vals.astype(np.int64)


DISTRIBUTIONS: dict[str, DistributionSpec] = {
    "poisson": DistributionSpec.poisson(),
    "pareto": DistributionSpec.lomax(),
    "iterated-poisson": DistributionSpec.iterated_poisson(),
}


@dataclass(frozen=True)
class NoiseSpec:
    """Replacement rate: each entry is independently deleted with
    probability p and augmented with a fresh draw with probability p."""

    replacement_rate: float

    def __post_init__(self):
        if not (0.0 <= self.replacement_rate <= 1.0):
            raise ValueError(f"replacement rate must lie in [0, 1], got {self.replacement_rate!r}")


def generate(spec: DistributionSpec, length: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an i.i.d. count array of the given length."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    return spec.sample(length, rng)


def perturb(
    counts: np.ndarray,
    noise: NoiseSpec,
    spec: DistributionSpec,
    rng: np.random.Generator,
) -> np.ndarray:
    """Apply the delete/add replacement noise entrywise.

    Draw order is fixed (delete coins, add coins, add values) so a given
    stream always produces the same perturbation.  p=0 is the identity;
    p=1 yields a fresh instance uncorrelated with the input.
    """
    counts = np.asarray(counts, dtype=np.int64)
    p = noise.replacement_rate
    delete = rng.random(len(counts)) < p
    add = rng.random(len(counts)) < p
    additions = spec.sample(len(counts), rng)
    return np.where(delete, 0, counts) + np.where(add, additions, 0)


def make_prediction(perturbed: TcpInstance) -> TcpPrediction:
    """Optimal ack schedule of the perturbed instance, plus a final ack at
    the horizon's last step so every real packet gets acknowledged."""
    _, acks = offline_opt_tcp(perturbed)
    final = perturbed.horizon - 1
    if not acks or acks[-1] < final:
        acks = acks + (final,)
    return TcpPrediction(acks)
