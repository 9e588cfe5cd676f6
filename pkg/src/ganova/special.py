"""Special functions: log-gamma, incomplete beta (and inverse), incomplete gamma.

Scalar kernels are written in a numba-compatible subset of Python and run
compiled or interpreted depending on :mod:`ganova._accel`. The array form of
the incomplete beta function has two implementations, a compiled loop over
the scalar kernel and a vectorized continued fraction in plain numpy; the
active one is chosen by the same switch.
"""

from dataclasses import dataclass
import math

import numpy as np

from ._accel import USE_NUMBA, jit
from .errors import DomainError, NumericError

_FPMIN = 1e-300
# relative step at which the inverse stops: about two ulps
_XTOL = 4.5e-16


@dataclass(frozen=True)
class Accuracy:
    """Convergence controls for the iterative kernels."""

    rel_tol: float = 1e-15
    abs_tol: float = 0.0
    max_iter: int = 10_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if not self.abs_tol >= 0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_ACCURACY = Accuracy()


# ---------------------------------------------------------------------------
# scalar kernels
# ---------------------------------------------------------------------------


@jit
def _lbeta(a, b):
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


@jit
def _betacf(x, a, b, eps, max_iter):
    """Modified Lentz evaluation of the incomplete beta continued fraction.

    Returns NaN when ``max_iter`` is exhausted.
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    return math.nan


@jit
def _betainc_tails(x, a, b, eps, max_iter):
    """Return ``(I_x(a, b), 1 - I_x(a, b))``, each evaluated without cancellation
    on the side the continued fraction is computed for."""
    if x <= 0.0:
        return 0.0, 1.0
    if x >= 1.0:
        return 1.0, 0.0
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - _lbeta(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        lower = front * _betacf(x, a, b, eps, max_iter) / a
        return lower, 1.0 - lower
    upper = front * _betacf(1.0 - x, b, a, eps, max_iter) / b
    return 1.0 - upper, upper


@jit
def _betainc(x, a, b, eps, max_iter):
    return _betainc_tails(x, a, b, eps, max_iter)[0]


@jit
def _betainc_upper(x, a, b, eps, max_iter):
    return _betainc_tails(x, a, b, eps, max_iter)[1]


@jit
def _inv_betainc_guess(u, a, b):
    # Initial point from the standard power/normal approximations to the beta law.
    if a >= 1.0 and b >= 1.0:
        pp = max(u if u < 0.5 else 1.0 - u, _FPMIN)
        t = math.sqrt(-2.0 * math.log(pp))
        z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t
        if u < 0.5:
            z = -z
        al = (z * z - 3.0) / 6.0
        h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0))
        w = z * math.sqrt(al + h) / h - (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (
            al + 5.0 / 6.0 - 2.0 / (3.0 * h)
        )
        # clamp keeps exp finite; the bracketed solver fixes a crude start
        x = a / (a + b * math.exp(min(2.0 * w, 700.0)))
    else:
        lna = math.log(a / (a + b))
        lnb = math.log(b / (a + b))
        t = math.exp(a * lna) / a
        v = math.exp(b * lnb) / b
        w = t + v
        if u < t / w:
            x = math.pow(a * w * u, 1.0 / a)
        else:
            x = 1.0 - math.pow(b * w * (1.0 - u), 1.0 / b)
    if not (x > 0.0 and x < 1.0):
        x = 0.5
    return x


@jit
def _inv_betainc(u, a, b, upper, eps, atol, max_iter):
    """Solve ``I_x(a, b) = u`` (or ``1 - I_x(a, b) = u`` when ``upper``).

    Newton steps confined to a shrinking bracket; a step that leaves the
    bracket is replaced by bisection (geometric when the bracket spans
    several decades). Returns NaN on non-convergence.
    """
    if upper:
        if u <= 0.0:
            return 1.0
        if u >= 1.0:
            return 0.0
        x = _inv_betainc_guess(1.0 - u, a, b)
    else:
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        x = _inv_betainc_guess(u, a, b)
    lnb = _lbeta(a, b)
    lo = 0.0
    hi = 1.0
    for _ in range(max_iter):
        lower, upp = _betainc_tails(x, a, b, eps, max_iter)
        if upper:
            f = u - upp
        else:
            f = lower - u
        if f == 0.0:
            return x
        if f < 0.0:
            lo = x
        else:
            hi = x
        xn = math.nan
        if x > 0.0 and x < 1.0:
            log_dens = (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - lnb
            if -700.0 < log_dens < 700.0:
                xn = x - f / math.exp(log_dens)
        if not (xn > lo and xn < hi):
            if lo > 0.0 and hi > 4.0 * lo:
                xn = math.sqrt(lo * hi)
            elif lo == 0.0:
                xn = 0.0625 * hi
            else:
                xn = 0.5 * (lo + hi)
        if xn <= lo or xn >= hi:
            # bracket is down to adjacent floats (or underflowed)
            return _polish(x, u, a, b, upper, eps, max_iter)
        if abs(xn - x) <= max(_XTOL * xn, atol) or hi - lo <= max(_XTOL * hi, atol):
            return _polish(xn, u, a, b, upper, eps, max_iter)
        x = xn
    return math.nan


@jit
def _residual(x, u, a, b, upper, eps, max_iter):
    lower, upp = _betainc_tails(x, a, b, eps, max_iter)
    return u - upp if upper else lower - u


@jit
def _polish(x, u, a, b, upper, eps, max_iter):
    # Newton stalls a few ulps short where the cdf is steep; walk to the best float.
    f = _residual(x, u, a, b, upper, eps, max_iter)
    for _ in range(16):
        if f == 0.0:
            break
        target = 0.0 if f > 0.0 else 1.0
        xn = np.nextafter(x, target)
        if xn <= 0.0 or xn >= 1.0:
            break
        fn = _residual(xn, u, a, b, upper, eps, max_iter)
        if abs(fn) >= abs(f):
            break
        x, f = xn, fn
    return x


@jit
def _gammainc(s, x, eps, max_iter):
    """Regularized lower incomplete gamma P(s, x); NaN on non-convergence."""
    if x <= 0.0:
        return 0.0
    gln = math.lgamma(s)
    if x < s + 1.0:
        ap = s
        term = 1.0 / s
        total = term
        for _ in range(max_iter):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * eps:
                return total * math.exp(-x + s * math.log(x) - gln)
        return math.nan
    b = x + 1.0 - s
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return 1.0 - math.exp(-x + s * math.log(x) - gln) * h
    return math.nan


# ---------------------------------------------------------------------------
# array kernels: compiled loop and vectorized numpy
# ---------------------------------------------------------------------------


@jit
def _betainc_array_nb(x, a, b, upper, eps, max_iter):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        lo, up = _betainc_tails(x[i], a[i], b[i], eps, max_iter)
        out[i] = up if upper else lo
    return out


def _betacf_np(x, a, b, eps, max_iter):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
    d = 1.0 / d
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for m in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        xa, aa_, ba, qa, qp, qm = x[idx], a[idx], b[idx], qab[idx], qap[idx], qam[idx]
        ci, di, hi = c[idx], d[idx], h[idx]
        m2 = 2 * m
        num = m * (ba - m) * xa / ((qm + m2) * (aa_ + m2))
        di = 1.0 + num * di
        di = np.where(np.abs(di) < _FPMIN, _FPMIN, di)
        ci = 1.0 + num / ci
        ci = np.where(np.abs(ci) < _FPMIN, _FPMIN, ci)
        di = 1.0 / di
        hi = hi * di * ci
        num = -(aa_ + m) * (qa + m) * xa / ((aa_ + m2) * (qp + m2))
        di = 1.0 + num * di
        di = np.where(np.abs(di) < _FPMIN, _FPMIN, di)
        ci = 1.0 + num / ci
        ci = np.where(np.abs(ci) < _FPMIN, _FPMIN, ci)
        di = 1.0 / di
        delta = di * ci
        hi = hi * delta
        c[idx], d[idx], h[idx] = ci, di, hi
        active[idx[np.abs(delta - 1.0) < eps]] = False
    h[active] = np.nan
    return h


_lgamma_ufunc = np.frompyfunc(math.lgamma, 1, 1)


def _lbeta_np(a, b):
    # shapes repeat heavily (one pair per design), so evaluate on unique pairs
    pairs, inverse = np.unique(np.stack([a, b]), axis=1, return_inverse=True)
    ua, ub = pairs
    vals = (_lgamma_ufunc(ua) + _lgamma_ufunc(ub) - _lgamma_ufunc(ua + ub)).astype(float)
    return vals[inverse.ravel()]


def _betainc_array_np(x, a, b, upper, eps, max_iter):
    out = np.where(x >= 1.0, 1.0, 0.0)
    if upper:
        out = 1.0 - out
    inner = np.flatnonzero((x > 0.0) & (x < 1.0))
    if inner.size == 0:
        return out
    xi, ai, bi = x[inner], a[inner], b[inner]
    front = np.exp(ai * np.log(xi) + bi * np.log1p(-xi) - _lbeta_np(ai, bi))
    direct = xi < (ai + 1.0) / (ai + bi + 2.0)
    val = np.empty_like(xi)
    d, f = direct, ~direct
    val[d] = front[d] * _betacf_np(xi[d], ai[d], bi[d], eps, max_iter) / ai[d]
    val[f] = front[f] * _betacf_np(1.0 - xi[f], bi[f], ai[f], eps, max_iter) / bi[f]
    # val holds the lower tail where direct, the upper tail elsewhere
    want_direct = d if not upper else f
    out[inner] = np.where(want_direct, val, 1.0 - val)
    return out


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def _check_positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")


def ln_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    x = float(x)
    _check_positive("x", x)
    return math.lgamma(x)


def ln_beta(p, q):
    """Natural log of the beta function B(p, q)."""
    _check_positive("p", float(p))
    _check_positive("q", float(q))
    return _lbeta(float(p), float(q))


def _converged(value, what):
    if math.isnan(value):
        raise NumericError(f"{what} did not converge")
    return value


def reg_inc_beta(x, p, q, accuracy=DEFAULT_ACCURACY):
    """Regularized incomplete beta function I_x(p, q).

    Examples
    --------
    >>> reg_inc_beta(0.5, 2.0, 2.0)
    0.5
    """
    x, p, q = float(x), float(p), float(q)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    _check_positive("p", p)
    _check_positive("q", q)
    val = _betainc(x, p, q, accuracy.rel_tol, accuracy.max_iter)
    return _converged(val, "incomplete beta continued fraction")


def reg_inc_beta_upper(x, p, q, accuracy=DEFAULT_ACCURACY):
    """Complement ``1 - I_x(p, q)`` computed without cancellation in the tail."""
    x, p, q = float(x), float(p), float(q)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    _check_positive("p", p)
    _check_positive("q", q)
    val = _betainc_upper(x, p, q, accuracy.rel_tol, accuracy.max_iter)
    return _converged(val, "incomplete beta continued fraction")


def reg_inc_beta_array(x, p, q, upper=False, accuracy=DEFAULT_ACCURACY):
    """Vectorized I_x(p, q) (or its complement) with broadcasting.

    Inputs are not validated beyond shape; callers own the domain checks.
    """
    x, p, q = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    )
    shape = x.shape
    xf, pf, qf = (np.ascontiguousarray(v).ravel() for v in (x, p, q))
    if USE_NUMBA:
        out = _betainc_array_nb(xf, pf, qf, bool(upper), accuracy.rel_tol, accuracy.max_iter)
    else:
        out = _betainc_array_np(xf, pf, qf, bool(upper), accuracy.rel_tol, accuracy.max_iter)
    if np.isnan(out).any():
        raise NumericError("incomplete beta continued fraction did not converge")
    return out.reshape(shape)


def inv_reg_inc_beta(u, p, q, accuracy=DEFAULT_ACCURACY):
    """Inverse of :func:`reg_inc_beta` in its first argument."""
    u, p, q = float(u), float(p), float(q)
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"u must lie in [0, 1], got {u!r}")
    _check_positive("p", p)
    _check_positive("q", q)
    val = _inv_betainc(u, p, q, False, accuracy.rel_tol, accuracy.abs_tol, accuracy.max_iter)
    return _converged(val, "incomplete beta inversion")


def inv_reg_inc_beta_upper(s, p, q, accuracy=DEFAULT_ACCURACY):
    """Solve ``1 - I_x(p, q) = s`` for x; accurate when s is tiny."""
    s, p, q = float(s), float(p), float(q)
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s!r}")
    _check_positive("p", p)
    _check_positive("q", q)
    val = _inv_betainc(s, p, q, True, accuracy.rel_tol, accuracy.abs_tol, accuracy.max_iter)
    return _converged(val, "incomplete beta inversion")


def reg_lower_inc_gamma(s, x, accuracy=DEFAULT_ACCURACY):
    """Regularized lower incomplete gamma function P(s, x)."""
    s, x = float(s), float(x)
    _check_positive("s", s)
    if not (x >= 0.0):
        raise DomainError(f"x must be >= 0, got {x!r}")
    if math.isinf(x):
        return 1.0
    val = _gammainc(s, x, accuracy.rel_tol, accuracy.max_iter)
    return _converged(val, "incomplete gamma")
