"""The simultaneous gANOVA test.

Each group's K statistic gets a raw p-value from its exact GB2 null law;
the p-values are adjusted for multiplicity and H0 (all means equal) is
rejected when any adjusted p-value is below the family-wise alpha. The same
decision is drawn on two graphical scales: ``1 - p_adj`` against
``1 - alpha``, and ``K_adjusted`` (the GB2 quantile at ``1 - p_adj``)
against the per-group decision limit (the quantile at ``1 - alpha``).
"""

from dataclasses import dataclass

import numpy as np

from . import special
from .adjust import adjust_p, normalize_method
from .anova import anova_table, decompose, k_statistics
from .distributions import gb2_isf, k_dist_params
from .errors import DomainError

# adjusted p-values below this floor are plotted at the floor's quantile
P_FLOOR = 1e-15


@dataclass(frozen=True)
class GanovaResult:
    labels: tuple
    k: np.ndarray
    p_raw: np.ndarray
    p_adj: np.ndarray
    k_adj: np.ndarray
    k_adj_capped: np.ndarray
    dl_k: np.ndarray
    dl_p: float
    alpha: float
    method: str
    flags: np.ndarray
    reject: bool
    anova: object

    @property
    def flags_p_scale(self):
        return (1.0 - self.p_adj) > self.dl_p

    @property
    def flags_k_scale(self):
        return self.k_adj > self.dl_k

    @property
    def flagged_labels(self):
        return [lab for lab, f in zip(self.labels, self.flags) if f]

    def as_dict(self):
        return {
            "labels": list(self.labels),
            "k": self.k.tolist(),
            "p_raw": self.p_raw.tolist(),
            "p_adj": self.p_adj.tolist(),
            "k_adj": self.k_adj.tolist(),
            "k_adj_capped": self.k_adj_capped.tolist(),
            "dl_k": self.dl_k.tolist(),
            "dl_p": self.dl_p,
            "alpha": self.alpha,
            "method": self.method,
            "flags": self.flags.tolist(),
            "reject": self.reject,
            "anova": self.anova.as_dict(),
        }


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")


def _scales(dims):
    return np.array([k_dist_params(dims, g).b for g in range(dims.n_groups)])


def raw_p_values(ks):
    """Upper-tail GB2 probability of each K_g under its own null parameters."""
    b = _scales(ks.dims)
    k = np.asarray(ks.k, dtype=float)
    w = k / (b + k)
    q = ks.dims.df_err / 2.0
    return special.reg_inc_beta_array(w, 0.5, q, upper=True)


def decision_limits(dims, alpha):
    """Per-group K-scale limits: the GB2 null quantile at ``1 - alpha``."""
    _check_alpha(alpha)
    return np.array([gb2_isf(alpha, k_dist_params(dims, g)) for g in range(dims.n_groups)])


def k_adjusted(p_adj, dims):
    """Map adjusted p-values back to the K scale.

    Returns ``(k_adj, capped)``; entries with ``p_adj < P_FLOOR`` are
    evaluated at ``P_FLOOR`` and marked in ``capped``.
    """
    p_adj = np.asarray(p_adj, dtype=float)
    if np.any(~((p_adj >= 0) & (p_adj <= 1))):
        raise DomainError("adjusted p-values must lie in [0, 1]")
    capped = p_adj < P_FLOOR
    s = np.maximum(p_adj, P_FLOOR)
    k_adj = np.array([gb2_isf(s[g], k_dist_params(dims, g)) for g in range(dims.n_groups)])
    return k_adj, capped


def run_ganova(data, alpha=0.05, method="bh"):
    """Run the full procedure on grouped data."""
    _check_alpha(alpha)
    method = normalize_method(method)
    dec = decompose(data)
    table = anova_table(dec)
    ks = k_statistics(dec)
    p_raw = raw_p_values(ks)
    p_adj = adjust_p(p_raw, method)
    k_adj, capped = k_adjusted(p_adj, dec.dims)
    dl_k = decision_limits(dec.dims, alpha)
    flags = p_adj < alpha
    return GanovaResult(
        labels=data.labels,
        k=np.asarray(ks.k),
        p_raw=p_raw,
        p_adj=p_adj,
        k_adj=k_adj,
        k_adj_capped=capped,
        dl_k=dl_k,
        dl_p=1.0 - alpha,
        alpha=alpha,
        method=method,
        flags=flags,
        reject=bool(flags.any()),
        anova=table,
    )
