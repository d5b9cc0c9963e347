"""Hot numeric kernels: the 1-D scaling-ratio search and the 2-D power search.

Every function here works on float64 arrays and compiles under numba; see
:mod:`scfsec._accel` for the backend switch.  Callers should go through
:mod:`scfsec.optimizer` and :mod:`scfsec.baseline_rates`, which own the
validation and result types.

Scaling is parametrised by ``x = log2(beta_a / beta_b)`` with ``beta_b = 1``.
"""

import math

import numpy as np

from ._accel import maybe_njit

# objective kinds for the ratio search
PLAIN = 0  # params: p_a, p_b
RB_SCALED = 1  # params: p_a, p_b, C(p_r)
CAPPED = 2  # params: p_a, p_b, cap on R_CF^B
EVE = 3  # params: p_a, p_b, h1, h2, h1p, h2p, relay cap (negative = unlimited)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

GRID_LO = -20.0
GRID_HI = 20.0
GRID_POINTS = 512
KEEP_BRACKETS = 5
RATIO_TOL = 1e-10


@maybe_njit
def cap_arr(x):
    return 0.5 * np.log2(1.0 + x)


@maybe_njit
def computation_rates(a1, a2, t, p_a, p_b):
    """Computation rates of A and B for beta = (t, 1), elementwise in ``t``."""
    s = p_a + p_b + 1.0
    at = a1 * t
    n = (p_a * p_b * (at - a2) ** 2 + at * at * p_a + a2 * a2 * p_b) / s
    r_a = 0.5 * np.log2(t * t * p_a / n)
    r_b = 0.5 * np.log2(p_b / n)
    return r_a, r_b


@maybe_njit
def _time_share(rate, cap):
    # fraction of phase-1 uses the relay can forward; 1 when the relay keeps up
    return np.where(rate > cap, cap / np.maximum(rate, cap), 1.0)


@maybe_njit
def ratio_objective(kind, a1, a2, x, params):
    """Objective at ``x = log2(beta_a/beta_b)``; ``-inf`` where infeasible."""
    t = 2.0 ** x
    p_a = params[0]
    p_b = params[1]
    if kind == EVE:
        h1, h2, h1p, h2p, relay = params[2], params[3], params[4], params[5], params[6]
        ra_h, rb_h = computation_rates(a1, a2, t, h1 * h1 * p_a, h2 * h2 * p_b)
        ra_e, rb_e = computation_rates(a1, a2, t, h1p * h1p * p_a, h2p * h2p * p_b)
        m_a = np.minimum(ra_h, ra_e)
        m_b = np.minimum(rb_h, rb_e)
        value = m_a + m_b - 0.5 * np.log2(1.0 + h1p * h1p * p_a + h2p * h2p * p_b)
        if relay >= 0.0:
            value = value * _time_share(m_a, relay)
        return value
    r_a, r_b = computation_rates(a1, a2, t, p_a, p_b)
    r_s = r_a + r_b - 0.5 * np.log2(1.0 + p_a + p_b)
    if kind == RB_SCALED:
        return r_s * _time_share(r_a, params[2])
    if kind == CAPPED:
        return np.where(r_b <= params[2], r_s, -np.inf)
    return r_s


@maybe_njit
def search_log_ratio(kind, a1, a2, params, lo, hi, n_grid, keep, tol):
    """Maximise ``ratio_objective`` over ``x`` in ``[lo, hi]``.

    Grid scan, then golden-section refinement of the ``keep`` best local
    maxima of the grid, each bracketed by its grid neighbours.

    Returns ``(x_best, value_best, evaluations)``.
    """
    xs = np.linspace(lo, hi, n_grid)
    vals = ratio_objective(kind, a1, a2, xs, params)
    evals = n_grid

    peak = np.zeros(n_grid, dtype=np.bool_)
    for i in range(n_grid):
        if vals[i] == -np.inf:
            continue
        left = vals[i - 1] if i > 0 else -np.inf
        right = vals[i + 1] if i < n_grid - 1 else -np.inf
        if vals[i] >= left and vals[i] >= right:
            peak[i] = True
    peaks = np.nonzero(peak)[0]
    if peaks.size == 0:
        i = int(np.argmax(vals))
        return xs[i], vals[i], evals

    order = np.argsort(-vals[peaks], kind="mergesort")
    k = min(keep, peaks.size)
    chosen = peaks[order[:k]]
    a = np.empty(k)
    b = np.empty(k)
    for j in range(k):
        i = chosen[j]
        a[j] = xs[max(i - 1, 0)]
        b[j] = xs[min(i + 1, n_grid - 1)]

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = ratio_objective(kind, a1, a2, c, params)
    fd = ratio_objective(kind, a1, a2, d, params)
    evals += 2 * k
    while np.max(b - a) > tol:
        left = fc > fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new = np.where(left, b - INV_PHI * (b - a), a + INV_PHI * (b - a))
        fnew = ratio_objective(kind, a1, a2, new, params)
        evals += k
        d_next = np.where(left, c, new)
        fd_next = np.where(left, fc, fnew)
        c = np.where(left, new, d)
        fc = np.where(left, fnew, fd)
        d = d_next
        fd = fd_next

    best_x = xs[chosen[0]]
    best_v = vals[chosen[0]]
    for j in range(k):
        if fc[j] > best_v:
            best_v = fc[j]
            best_x = c[j]
        if fd[j] > best_v:
            best_v = fd[j]
            best_x = d[j]
    return best_x, best_v, evals


@maybe_njit
def search_pairs(kind, a1s, a2s, params, lo, hi, n_grid, keep, tol):
    """Run :func:`search_log_ratio` for every coefficient pair."""
    m = a1s.size
    xs = np.empty(m)
    vs = np.empty(m)
    evals = np.empty(m, dtype=np.int64)
    for j in range(m):
        x, v, e = search_log_ratio(kind, a1s[j], a2s[j], params, lo, hi, n_grid, keep, tol)
        xs[j] = x
        vs[j] = v
        evals[j] = e
    return xs, vs, evals


@maybe_njit
def he_objective(p_a, p_b, p_r, s2):
    """Compress-and-forward secrecy objective at transmit powers (p_a, p_b)."""
    sc2 = (p_a + 1.0 + p_b * s2 / (p_b + s2)) / p_r
    denom = 1.0 + s2 + sc2 - s2 * s2 / (p_b + s2)
    return cap_arr(p_a / denom) - cap_arr(p_a / (1.0 + p_b))


@maybe_njit
def _he_line(lx, ly, axis, fixed, p_max, p_r, s2):
    # evaluate along one coordinate (log2 domain), the other held at ``fixed``
    if axis == 0:
        pa = np.minimum(2.0 ** lx, p_max)
        pb = np.full(lx.size, fixed)
    else:
        pa = np.full(ly.size, fixed)
        pb = np.minimum(2.0 ** ly, p_max)
    return he_objective(pa, pb, p_r, s2)


@maybe_njit
def _he_golden(lo, hi, axis, fixed, p_max, p_r, s2, tol):
    a = np.array([lo])
    b = np.array([hi])
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = _he_line(c, c, axis, fixed, p_max, p_r, s2)
    fd = _he_line(d, d, axis, fixed, p_max, p_r, s2)
    evals = 2
    while b[0] - a[0] > tol:
        if fc[0] > fd[0]:
            b = d
            d = c
            fd = fc
            c = b - INV_PHI * (b - a)
            fc = _he_line(c, c, axis, fixed, p_max, p_r, s2)
        else:
            a = c
            c = d
            fc = fd
            d = a + INV_PHI * (b - a)
            fd = _he_line(d, d, axis, fixed, p_max, p_r, s2)
        evals += 1
    if fc[0] > fd[0]:
        return c[0], fc[0], evals
    return d[0], fd[0], evals


@maybe_njit
def he_search(pa_max, pb_max, p_r, s2, n_grid, span, tol, max_rounds):
    """Maximise :func:`he_objective` over ``(0, pa_max] x (0, pb_max]``.

    Log-spaced ``n_grid``-square grid covering ``span`` octaves below each
    maximum, then alternating golden-section refinement of each coordinate
    within the grid cell around the best point.

    Returns ``(p_a, p_b, value, evaluations)``.
    """
    lxa = np.linspace(math.log2(pa_max) - span, math.log2(pa_max), n_grid)
    lxb = np.linspace(math.log2(pb_max) - span, math.log2(pb_max), n_grid)
    pas = np.minimum(2.0 ** lxa, pa_max)
    pbs = np.minimum(2.0 ** lxb, pb_max)
    best = -np.inf
    bi = 0
    bj = 0
    for i in range(n_grid):
        row = he_objective(np.full(n_grid, pas[i]), pbs, p_r, s2)
        j = int(np.argmax(row))
        if row[j] > best:
            best = row[j]
            bi = i
            bj = j
    evals = n_grid * n_grid

    xa_lo = lxa[max(bi - 1, 0)]
    xa_hi = lxa[min(bi + 1, n_grid - 1)]
    xb_lo = lxb[max(bj - 1, 0)]
    xb_hi = lxb[min(bj + 1, n_grid - 1)]
    pa_best = pas[bi]
    pb_best = pbs[bj]
    for _ in range(max_rounds):
        prev = best
        xa, va, e1 = _he_golden(xa_lo, xa_hi, 0, pb_best, pa_max, p_r, s2, tol)
        evals += e1
        if va > best:
            best = va
            pa_best = min(2.0 ** xa, pa_max)
        xb, vb, e2 = _he_golden(xb_lo, xb_hi, 1, pa_best, pb_max, p_r, s2, tol)
        evals += e2
        if vb > best:
            best = vb
            pb_best = min(2.0 ** xb, pb_max)
        if best - prev <= 1e-15:
            break
    # the interval ends are candidates too: golden never lands exactly on them
    for pa_c in (pa_best, pa_max):
        for pb_c in (pb_best, pb_max):
            v = he_objective(np.array([pa_c]), np.array([pb_c]), p_r, s2)[0]
            evals += 1
            if v > best:
                best = v
                pa_best = pa_c
                pb_best = pb_c
    return pa_best, pb_best, best, evals
