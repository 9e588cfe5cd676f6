"""GB2 (beta of the second kind) law of the K statistic, plus F and chi-square.

Under equal group means each ``K_g`` follows a GB2 distribution with outer
shape ``a = 1``, inner shapes ``p = 1/2`` and ``q = (n_T - G)/2`` and scale

    b = (n_T - G)(n_T - n_g) / (n_T (G - 1)),

which is the same as ``K_g ~ (b / 2q) * F(1, n_T - G)``.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import special
from .errors import DesignError, DomainError


@dataclass(frozen=True)
class Gb2Params:
    """Four-parameter GB2: density ``a x^(ap-1) / (b^(ap) B(p,q) (1+(x/b)^a)^(p+q))``."""

    a: float
    b: float
    p: float
    q: float

    def __post_init__(self):
        for name in ("a", "b", "p", "q"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"GB2 parameter {name} must be positive, got {v!r}")


@dataclass(frozen=True)
class DesignDims:
    """Group count and sizes of a one-way layout."""

    group_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.group_sizes)
        object.__setattr__(self, "group_sizes", sizes)
        if len(sizes) < 2:
            raise DesignError(f"need at least 2 groups, got {len(sizes)}")
        if min(sizes) < 1:
            raise DesignError("every group needs at least one observation")
        if self.n_total - self.n_groups < 1:
            raise DesignError("n_T - G must be >= 1 (no degrees of freedom for error)")

    @property
    def n_groups(self):
        return len(self.group_sizes)

    @property
    def n_total(self):
        return sum(self.group_sizes)

    @property
    def df_treat(self):
        return self.n_groups - 1

    @property
    def df_err(self):
        return self.n_total - self.n_groups

    @classmethod
    def balanced(cls, n_groups, n):
        return cls((n,) * n_groups)


def k_dist_params(dims, g):
    """GB2 parameters of ``K_g`` under the null; ``g`` is a 0-based group index."""
    if not 0 <= g < dims.n_groups:
        raise DomainError(f"group index {g} out of range for {dims.n_groups} groups")
    n_t, n_g, G = dims.n_total, dims.group_sizes[g], dims.n_groups
    scale = (n_t - G) * (n_t - n_g) / (n_t * (G - 1))
    return Gb2Params(a=1.0, b=scale, p=0.5, q=(n_t - G) / 2.0)


def k_dist_params_all(dims):
    return [k_dist_params(dims, g) for g in range(dims.n_groups)]


def _w(k, params):
    r = (k / params.b) ** params.a
    return r / (1.0 + r)


def gb2_pdf(k, params):
    """GB2 density at ``k > 0``; accepts scalars or arrays."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(~(k_arr > 0)):
        raise DomainError("gb2_pdf requires k > 0")
    a, b, p, q = params.a, params.b, params.p, params.q
    log_r = a * (np.log(k_arr) - math.log(b))
    log_pdf = (
        math.log(a)
        + (a * p - 1.0) * np.log(k_arr)
        - a * p * math.log(b)
        - special.ln_beta(p, q)
        - (p + q) * np.logaddexp(0.0, log_r)
    )
    out = np.exp(log_pdf)
    return float(out) if out.ndim == 0 else out


def gb2_cdf(k, params):
    """GB2 cumulative distribution function; accepts scalars or arrays."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(~(k_arr >= 0)):
        raise DomainError("gb2_cdf requires k >= 0")
    if k_arr.ndim == 0:
        if np.isinf(k_arr):
            return 1.0
        w = _w(float(k_arr), params)
        return special.reg_inc_beta(w, params.p, params.q)
    w = _w(k_arr, params)
    return special.reg_inc_beta_array(w, params.p, params.q)


def gb2_sf(k, params):
    """Upper tail ``1 - gb2_cdf(k)`` evaluated directly (keeps small p-values exact)."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(~(k_arr >= 0)):
        raise DomainError("gb2_sf requires k >= 0")
    if k_arr.ndim == 0:
        if np.isinf(k_arr):
            return 0.0
        w = _w(float(k_arr), params)
        return special.reg_inc_beta_upper(w, params.p, params.q)
    w = _w(k_arr, params)
    return special.reg_inc_beta_array(w, params.p, params.q, upper=True)


def _from_w(w, params):
    if w >= 1.0:
        return math.inf
    return params.b * (w / (1.0 - w)) ** (1.0 / params.a)


def gb2_quantile(u, params):
    """Inverse of :func:`gb2_cdf` for ``0 <= u < 1``."""
    u = float(u)
    if not 0.0 <= u < 1.0:
        raise DomainError(f"quantile level must lie in [0, 1), got {u!r}")
    return _from_w(special.inv_reg_inc_beta(u, params.p, params.q), params)


def gb2_isf(s, params):
    """Inverse survival function: the ``k`` with ``gb2_sf(k) = s``, for ``0 < s <= 1``.

    Equal to ``gb2_quantile(1 - s)`` but without rounding ``1 - s`` when s is tiny.
    """
    s = float(s)
    if not 0.0 < s <= 1.0:
        raise DomainError(f"upper-tail probability must lie in (0, 1], got {s!r}")
    w = special.inv_reg_inc_beta_upper(s, params.p, params.q)
    return _from_w(w, params)


def k_moment(j, n, G):
    """j-th raw moment of K for a balanced design with G groups of n.

    >>> round(k_moment(1, 20, 4), 6)
    0.256757
    """
    if int(j) != j or j < 1:
        raise DomainError(f"moment order must be a positive integer, got {j!r}")
    if n < 2 or G < 2:
        raise DomainError("balanced design needs n >= 2 and G >= 2")
    half_df = G * (n - 1) / 2.0
    if not half_df > j:
        raise DomainError(f"moment {j} does not exist: G(n-1)/2 = {half_df} <= {j}")
    # integer j: Gamma(1/2 + j)/Gamma(1/2) and Gamma(h - j)/Gamma(h) are finite products
    moment = 1.0
    for i in range(int(j)):
        moment *= (n - 1) * (0.5 + i) / (half_df - 1 - i)
    return moment


def k_mean(n, G):
    return k_moment(1, n, G)


def k_variance(n, G):
    return k_moment(2, n, G) - k_moment(1, n, G) ** 2


def _check_df(*dfs):
    for d in dfs:
        if not d > 0:
            raise DomainError(f"degrees of freedom must be positive, got {d!r}")


def _f_w(x, d1, d2):
    return d1 * x / (d1 * x + d2)


def f_cdf(x, d1, d2):
    """CDF of Snedecor's F(d1, d2)."""
    _check_df(d1, d2)
    x = float(x)
    if not x >= 0:
        raise DomainError(f"F cdf requires x >= 0, got {x!r}")
    if math.isinf(x):
        return 1.0
    w = _f_w(x, d1, d2)
    return special.reg_inc_beta(w, d1 / 2.0, d2 / 2.0)


def f_sf(x, d1, d2):
    """Upper tail of F(d1, d2), computed as ``I_{1-w}(d2/2, d1/2)``."""
    _check_df(d1, d2)
    x = float(x)
    if not x >= 0:
        raise DomainError(f"F sf requires x >= 0, got {x!r}")
    if math.isinf(x):
        return 0.0
    w = _f_w(x, d1, d2)
    return special.reg_inc_beta_upper(w, d1 / 2.0, d2 / 2.0)


def f_sf_array(x, d1, d2):
    _check_df(d1, d2)
    x = np.asarray(x, dtype=float)
    w = d1 * x / (d1 * x + d2)
    return special.reg_inc_beta_array(w, d1 / 2.0, d2 / 2.0, upper=True)


def f_quantile(u, d1, d2):
    _check_df(d1, d2)
    if not 0.0 <= u < 1.0:
        raise DomainError(f"quantile level must lie in [0, 1), got {u!r}")
    w = special.inv_reg_inc_beta(u, d1 / 2.0, d2 / 2.0)
    return d2 * w / (d1 * (1.0 - w))


def chi2_cdf(x, df):
    """CDF of the chi-square law with ``df`` degrees of freedom."""
    _check_df(df)
    x = float(x)
    if not x >= 0:
        raise DomainError(f"chi-square cdf requires x >= 0, got {x!r}")
    return special.reg_lower_inc_gamma(df / 2.0, x / 2.0)


def chi2_sf(x, df):
    return 1.0 - chi2_cdf(x, df)
