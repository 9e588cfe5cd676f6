"""Monte Carlo estimate of the family-wise Type I error under equal means.

Replication ``r`` draws its G x n standard normals from an independent
counter-based stream keyed by ``(seed, r)``, so results do not depend on how
replications are chunked or distributed over workers.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from . import special
from .adjust import METHODS, adjust_rows
from .anova import k_statistics_batch
from .distributions import f_sf_array
from .errors import DomainError

SIM_METHODS = METHODS + ("anova",)
DEFAULT_METHODS = ("bonferroni", "hommel", "bh", "anova")
_MAX_SEED = 2**64


def standard_normal_stream(seed, stream_id, size):
    """Draw ``size`` standard normals from stream ``stream_id`` of ``seed``.

    Streams are disjoint blocks of a Philox counter space: the key is the
    seed and the top counter word is the stream id.
    """
    if not 0 <= seed < _MAX_SEED:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    if not 0 <= stream_id < _MAX_SEED:
        raise DomainError(f"stream_id must be an unsigned 64-bit integer, got {stream_id!r}")
    bitgen = np.random.Philox(key=int(seed), counter=np.array([0, 0, 0, stream_id], dtype=np.uint64))
    return np.random.Generator(bitgen).standard_normal(size)


@dataclass(frozen=True)
class SimConfig:
    n_groups: int
    n: int
    alpha: float = 0.05
    methods: tuple = DEFAULT_METHODS
    reps: int = 10_000
    seed: int = 20_240_601

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(str(m).lower() for m in self.methods))
        if self.n_groups < 2:
            raise DomainError("need at least 2 groups")
        if self.n < 2:
            raise DomainError("need at least 2 observations per group")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.reps < 1:
            raise DomainError("reps must be >= 1")
        if not 0 <= self.seed < _MAX_SEED:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if not self.methods:
            raise DomainError("at least one method is required")
        for m in self.methods:
            if m not in SIM_METHODS:
                raise DomainError(f"unknown method {m!r}; choose from {', '.join(SIM_METHODS)}")


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    rejections: dict = field(repr=False)

    @property
    def reps(self):
        return self.config.reps

    @property
    def seed(self):
        return self.config.seed

    @property
    def estimates(self):
        return {m: c / self.reps for m, c in self.rejections.items()}

    @property
    def monte_carlo_se(self):
        return {m: math.sqrt(e * (1.0 - e) / self.reps) for m, e in self.estimates.items()}

    def as_dict(self):
        cfg = self.config
        return {
            "n_groups": cfg.n_groups,
            "n": cfg.n,
            "alpha": cfg.alpha,
            "reps": cfg.reps,
            "seed": cfg.seed,
            "estimates": self.estimates,
            "monte_carlo_se": self.monte_carlo_se,
            "rejections": dict(self.rejections),
        }


def _draw(cfg, start, stop):
    shape = (cfg.n_groups, cfg.n)
    return np.stack([standard_normal_stream(cfg.seed, r, shape) for r in range(start, stop)])


def simulate_k_null(n_groups, n, reps, seed, start=0):
    """K statistics of ``reps`` balanced null samples, shape (reps, n_groups)."""
    cfg = SimConfig(n_groups, n, reps=reps, seed=seed, methods=("anova",))
    k, _ = k_statistics_batch(_draw(cfg, start, start + reps))
    return k


def _chunk_counts(cfg, start, stop):
    G, n = cfg.n_groups, cfg.n
    k, f = k_statistics_batch(_draw(cfg, start, stop))
    counts = {}
    # balanced design: every group shares scale n - 1 and q = (n_T - G)/2
    q = G * (n - 1) / 2.0
    p_raw = None
    for m in cfg.methods:
        if m == "anova":
            p = f_sf_array(f, G - 1, G * n - G)
            counts[m] = int(np.count_nonzero(p < cfg.alpha))
            continue
        if p_raw is None:
            w = k / ((n - 1) + k)
            p_raw = special.reg_inc_beta_array(w, 0.5, q, upper=True)
        p_adj = adjust_rows(p_raw, m)
        counts[m] = int(np.count_nonzero((p_adj < cfg.alpha).any(axis=1)))
    return counts


def simulate_type1(cfg, workers=1, chunk_size=2000):
    """Fraction of null replications in which each method rejects H0."""
    bounds = [(s, min(s + chunk_size, cfg.reps)) for s in range(0, cfg.reps, chunk_size)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _chunk_counts(cfg, *b), bounds))
    else:
        parts = [_chunk_counts(cfg, *b) for b in bounds]
    totals = {m: sum(part[m] for part in parts) for m in cfg.methods}
    return SimResult(cfg, totals)
