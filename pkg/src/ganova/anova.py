"""Sums-of-squares decomposition, ANOVA table and per-group K statistics."""

from dataclasses import dataclass

import numpy as np

from .distributions import DesignDims, f_sf
from .errors import DegenerateDataError


@dataclass(frozen=True)
class SquaresDecomposition:
    sst: float
    sstr: float
    sse: float
    between: np.ndarray  # n_g (mean_g - grand mean)^2 per group
    dims: DesignDims


@dataclass(frozen=True)
class AnovaTable:
    df_treat: int
    df_err: int
    sstr: float
    sse: float
    mstr: float
    mse: float
    f: float
    p: float

    def as_dict(self):
        return {
            "df_treat": self.df_treat,
            "df_err": self.df_err,
            "sstr": self.sstr,
            "sse": self.sse,
            "mstr": self.mstr,
            "mse": self.mse,
            "f": self.f,
            "p": self.p,
        }


@dataclass(frozen=True)
class KStatistics:
    k: np.ndarray
    dims: DesignDims


def decompose(data):
    """Partition total variability into between- and within-group parts.

    Uses deviations from the means (two passes) rather than raw sums of squares.
    """
    dims = DesignDims(data.sizes)
    allv = np.concatenate(data.values)
    grand = allv.mean()
    means = np.array([v.mean() for v in data.values])
    sizes = np.array(dims.group_sizes, dtype=float)
    between = sizes * (means - grand) ** 2
    sse = float(sum(np.sum((v - m) ** 2) for v, m in zip(data.values, means)))
    sst = float(np.sum((allv - grand) ** 2))
    between.setflags(write=False)
    return SquaresDecomposition(sst, float(between.sum()), sse, between, dims)


def _require_sse(dec):
    if not dec.sse > 0:
        raise DegenerateDataError("within-group sum of squares is zero; F and K are undefined")


def anova_table(dec):
    """Classical one-way ANOVA table with the F test p-value."""
    _require_sse(dec)
    d1, d2 = dec.dims.df_treat, dec.dims.df_err
    mstr = dec.sstr / d1
    mse = dec.sse / d2
    f = mstr / mse
    return AnovaTable(d1, d2, dec.sstr, dec.sse, mstr, mse, f, f_sf(f, d1, d2))


def k_statistics(dec):
    """Per-group share of F: ``K_g = (between_g / (G-1)) / MSE``; the K_g sum to F."""
    _require_sse(dec)
    mse = dec.sse / dec.dims.df_err
    k = dec.between / dec.dims.df_treat / mse
    k.setflags(write=False)
    return KStatistics(k, dec.dims)


def k_statistics_batch(y):
    """K statistics for a stack of balanced samples ``y[rep, group, obs]``.

    Returns ``(k, f)`` with ``k`` of shape (reps, G) and ``f`` the row sums.
    """
    reps, G, n = y.shape
    means = y.mean(axis=2)
    grand = means.mean(axis=1, keepdims=True)
    sse = ((y - means[:, :, None]) ** 2).sum(axis=(1, 2))
    mse = sse / (G * n - G)
    k = n * (means - grand) ** 2 / (G - 1) / mse[:, None]
    return k, k.sum(axis=1)
