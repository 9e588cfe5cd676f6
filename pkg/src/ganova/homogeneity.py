"""Bartlett's test for equal group variances."""

from dataclasses import dataclass
import math

import numpy as np

from .distributions import chi2_sf
from .errors import DegenerateDataError, DesignError


@dataclass(frozen=True)
class BartlettResult:
    statistic: float
    df: int
    p: float


def bartlett(data):
    """Bartlett's chi-square statistic with G - 1 degrees of freedom.

    Every group needs at least two observations and a non-zero variance.
    """
    sizes = np.array(data.sizes)
    if sizes.min() < 2:
        raise DesignError("Bartlett's test needs at least 2 observations per group")
    G = len(sizes)
    dof = sizes - 1
    variances = np.array([np.var(v, ddof=1) for v in data.values])
    if np.any(variances <= 0):
        raise DegenerateDataError("a group has zero variance; Bartlett's statistic is undefined")
    n_err = dof.sum()
    pooled = np.sum(dof * variances) / n_err
    numer = n_err * math.log(pooled) - np.sum(dof * np.log(variances))
    corr = 1.0 + (np.sum(1.0 / dof) - 1.0 / n_err) / (3.0 * (G - 1))
    # pooled log-variance dominates the weighted mean of logs (Jensen); clip rounding
    stat = max(float(numer / corr), 0.0)
    return BartlettResult(stat, G - 1, chi2_sf(stat, G - 1))
