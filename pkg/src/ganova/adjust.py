"""Per-test alpha schemes and p-value adjustment procedures.

Adjustments are available in two equivalent forms: loop kernels (compiled
with numba when enabled) and row-wise vectorized numpy. :func:`adjust_rows`
dispatches on the active backend; :func:`adjust_p` is the 1-D convenience.
"""

import numpy as np

from ._accel import USE_NUMBA, jit
from .errors import DomainError

METHODS = ("bonferroni", "sidak", "holm", "hochberg", "hommel", "bh", "by")
_CODES = {name: i for i, name in enumerate(METHODS)}
BONFERRONI, SIDAK, HOLM, HOCHBERG, HOMMEL, BH, BY = range(7)


def normalize_method(method):
    """Canonical lower-case method tag; raises :class:`DomainError` if unknown."""
    tag = str(method).strip().lower()
    if tag not in _CODES:
        raise DomainError(f"unknown adjustment method {method!r}; choose from {', '.join(METHODS)}")
    return tag


def per_test_alpha(alpha_pf, n_tests, scheme="sidak"):
    """Per-test level that keeps the family-wise level at ``alpha_pf``.

    ``sidak`` is exact for independent tests, ``bonferroni`` is its
    first-order approximation ``alpha_pf / n_tests``.
    """
    if not 0.0 < alpha_pf < 1.0:
        raise DomainError(f"alpha_pf must lie in (0, 1), got {alpha_pf!r}")
    if int(n_tests) != n_tests or n_tests < 1:
        raise DomainError(f"n_tests must be a positive integer, got {n_tests!r}")
    if scheme == "sidak":
        return float(-np.expm1(np.log1p(-alpha_pf) / n_tests))
    if scheme == "bonferroni":
        return alpha_pf / n_tests
    raise DomainError(f"unknown per-test scheme {scheme!r}")


# ---------------------------------------------------------------------------
# loop kernels (operate on one ascending-sorted vector)
# ---------------------------------------------------------------------------


@jit
def _hommel_sorted(p):
    m = p.shape[0]
    q = np.empty(m)
    start = np.inf
    for i in range(m):
        v = m * p[i] / (i + 1)
        if v < start:
            start = v
    for i in range(m):
        q[i] = start
    pa = q.copy()
    for mm in range(m - 1, 1, -1):
        q1 = np.inf
        for k in range(2, mm + 1):
            v = mm * p[m - mm + k - 1] / k
            if v < q1:
                q1 = v
        for i in range(m - mm + 1):
            q[i] = min(mm * p[i], q1)
        for i in range(m - mm + 1, m):
            q[i] = q[m - mm]
        for i in range(m):
            if q[i] > pa[i]:
                pa[i] = q[i]
    for i in range(m):
        if p[i] > pa[i]:
            pa[i] = p[i]
    return pa


@jit
def _adjust_sorted_nb(p, code):
    m = p.shape[0]
    out = np.empty(m)
    if code == BONFERRONI:
        for i in range(m):
            out[i] = m * p[i]
    elif code == SIDAK:
        for i in range(m):
            out[i] = -np.expm1(m * np.log1p(-p[i])) if m > 1 else p[i]
    elif code == HOLM:
        run = 0.0
        for i in range(m):
            v = (m - i) * p[i]
            if v > run:
                run = v
            out[i] = run
    elif code == HOCHBERG:
        run = np.inf
        for i in range(m - 1, -1, -1):
            v = (m - i) * p[i]
            if v < run:
                run = v
            out[i] = run
    elif code == HOMMEL:
        out = _hommel_sorted(p)
    else:
        factor = 1.0
        if code == BY:
            factor = 0.0
            for j in range(1, m + 1):
                factor += 1.0 / j
        run = np.inf
        for i in range(m - 1, -1, -1):
            v = factor * m * p[i] / (i + 1)
            if v < run:
                run = v
            out[i] = run
    for i in range(m):
        if out[i] > 1.0:
            out[i] = 1.0
    return out


@jit
def _adjust_rows_nb(P, code):
    R, m = P.shape
    out = np.empty((R, m))
    for r in range(R):
        order = np.argsort(P[r], kind="mergesort")
        adj = _adjust_sorted_nb(P[r][order], code)
        for i in range(m):
            out[r, order[i]] = adj[i]
    return out


# ---------------------------------------------------------------------------
# vectorized numpy (each row is an independent family)
# ---------------------------------------------------------------------------


def _hommel_rows_np(ps):
    R, m = ps.shape
    i = np.arange(1, m + 1)
    start = np.min(m * ps / i, axis=1, keepdims=True)
    q = np.repeat(start, m, axis=1)
    pa = q.copy()
    for mm in range(m - 1, 1, -1):
        q1 = np.min(mm * ps[:, m - mm + 1 :] / np.arange(2, mm + 1), axis=1, keepdims=True)
        q[:, : m - mm + 1] = np.minimum(mm * ps[:, : m - mm + 1], q1)
        q[:, m - mm + 1 :] = q[:, m - mm : m - mm + 1]
        np.maximum(pa, q, out=pa)
    return np.maximum(pa, ps)


def _adjust_rows_np(P, code):
    R, m = P.shape
    order = np.argsort(P, axis=1, kind="stable")
    ps = np.take_along_axis(P, order, axis=1)
    i = np.arange(1, m + 1)
    if code == BONFERRONI:
        adj = m * ps
    elif code == SIDAK:
        adj = -np.expm1(m * np.log1p(-ps)) if m > 1 else ps.copy()
    elif code == HOLM:
        adj = np.maximum.accumulate((m - i + 1) * ps, axis=1)
    elif code == HOCHBERG:
        adj = np.minimum.accumulate(((m - i + 1) * ps)[:, ::-1], axis=1)[:, ::-1]
    elif code == HOMMEL:
        adj = _hommel_rows_np(ps)
    else:
        factor = np.sum(1.0 / i) if code == BY else 1.0
        adj = np.minimum.accumulate((factor * m * ps / i)[:, ::-1], axis=1)[:, ::-1]
    adj = np.minimum(adj, 1.0)
    out = np.empty_like(adj)
    np.put_along_axis(out, order, adj, axis=1)
    return out


def _validated(p):
    arr = np.asarray(p, dtype=float)
    if arr.size == 0:
        raise DomainError("need at least one p-value")
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError("p-values must lie in [0, 1]")
    return arr


def adjust_rows(P, method="bh"):
    """Adjust every row of a 2-D array as its own family of tests."""
    code = _CODES[normalize_method(method)]
    P = _validated(P)
    if P.ndim != 2:
        raise DomainError("adjust_rows expects a 2-D array")
    if USE_NUMBA:
        return _adjust_rows_nb(np.ascontiguousarray(P), code)
    return _adjust_rows_np(P, code)


def adjust_p(p, method="bh"):
    """Adjusted p-values in the input order, clamped to 1.

    >>> adjust_p([0.01, 0.02, 0.03, 0.04], "bh").tolist()
    [0.04, 0.04, 0.04, 0.04]
    """
    p = _validated(p)
    if p.ndim != 1:
        raise DomainError("adjust_p expects a 1-D vector")
    return adjust_rows(p[None, :], method)[0]
