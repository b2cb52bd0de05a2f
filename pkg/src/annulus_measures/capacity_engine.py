"""n-diameter optimization and logarithmic-capacity estimation.

Two independent routes to the n-diameter of an image curve:

* ``n_diameter_brute`` — exact discrete optimum over the sampled points,
  by branch-and-bound over index subsets (the oracle).
* ``n_diameter_refined`` — continuous-angle optimum: greedy Leja seeding on
  a fixed angle grid followed by cyclic coordinate ascent with per-angle
  golden-section line searches.

``capacity`` extrapolates the refined n-diameters d_n to n = infinity.
All pairwise products are accumulated as sums of logs; products of hundreds
of chord lengths overflow double precision well before n reaches 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np
from numba import njit

from .curves import CurveSample
from .errors import DomainError, SearchBudgetError, ValidationError
from .laurent import LaurentMap, evaluate

DEFAULT_N_SEQUENCE = (8, 12, 16, 24, 32)
LEJA_GRID = 1024
MAX_SWEEPS = 200
REL_IMPROVEMENT_TOL = 1e-12
BRUTE_MAX_M = 256
BRUTE_MAX_N = 6
DEFAULT_BUDGET = 4.0e11

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_NEG = -1.0e300


@dataclass(frozen=True, eq=False)
class FeketeResult:
    """Selected boundary angles/points, the n-diameter they realize, and
    optimizer diagnostics."""

    n: int
    angles: np.ndarray
    points: np.ndarray
    n_diameter: float
    method: str
    iterations: int
    converged: bool = True

    def __post_init__(self):
        ang = np.asarray(self.angles, dtype=float)
        if np.any(np.diff(ang) <= 0):
            raise ValidationError("angles must be strictly increasing")
        object.__setattr__(self, "angles", ang)
        object.__setattr__(self, "points", np.asarray(self.points, dtype=complex))


@dataclass(frozen=True)
class CapacityEstimate:
    """Extrapolated capacity with the d_n sequence it came from."""

    value: float
    n_sequence: tuple[tuple[int, float], ...]
    extrapolation_residual: float
    warnings: tuple[str, ...] = ()


def pair_log_sum(points) -> float:
    """Sum of log distances over unordered pairs."""
    pts = np.asarray(points, dtype=complex)
    n = len(pts)
    iu = np.triu_indices(n, 1)
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(np.abs(pts[:, None] - pts[None, :])[iu])))


def diameter_from_log_sum(log_sum: float, n: int) -> float:
    return math.exp(2.0 * log_sum / (n * (n - 1)))


def recompute_n_diameter(points) -> float:
    pts = np.asarray(points, dtype=complex)
    return diameter_from_log_sum(pair_log_sum(pts), len(pts))


def map_curve_fn(map_: LaurentMap, r: float):
    """Parametrization t -> f(r e^{i t}) as a vectorized callable."""
    lo, hi = map_.radial_domain()
    if not lo < r < hi:
        raise DomainError(f"radius {r} outside analyticity interval ({lo}, {hi})")
    rr = float(r)

    def fn(theta):
        return evaluate(map_, rr * np.exp(1j * np.asarray(theta, dtype=float)))

    return fn


def inverse_curve_fn(map_: LaurentMap, r: float):
    """Parametrization of the reciprocal curve t -> 1 / f(r e^{i t})."""
    base = map_curve_fn(map_, r)

    def fn(theta):
        return 1.0 / base(theta)

    return fn


# ---------------------------------------------------------------------------
# exact discrete search (the oracle)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _topm_into(arr, lo, hi, buf):
    # buf (ascending) receives the m largest entries of arr[lo:hi]
    m = buf.shape[0]
    for k in range(m):
        buf[k] = _NEG
    for i in range(lo, hi):
        v = arr[i]
        if v > buf[0]:
            buf[0] = v
            for k in range(m - 1):
                if buf[k] > buf[k + 1]:
                    tmp = buf[k]
                    buf[k] = buf[k + 1]
                    buf[k + 1] = tmp
                else:
                    break
    s = 0.0
    for k in range(m):
        s += buf[k]
    return s


@njit(cache=True)
def _bb_kernel(L, Rmax, Pmax, log_rho_suf, n, starts, inc0, best0, slack):  # noqa: C901
    """Depth-first branch and bound over ascending index subsets.

    State per depth: partial log-product ``cur`` and the vector ``g`` of log
    distances from every point to the chosen set.  Bounds combine the best
    m remaining cross terms with a cap on the mutual pair product (points in
    a disk of radius rho contribute at most m^{m/2} rho^{m(m-1)/2}).  The
    last two slots are completed exactly by a pair scan.
    """
    M = L.shape[0]
    inc = inc0
    best = best0.copy()
    g = np.zeros((n + 2, M))
    order = np.zeros((n + 2, M), np.int64)
    pos = np.zeros(n + 2, np.int64)
    cnt = np.zeros(n + 2, np.int64)
    cur = np.zeros(n + 2)
    last = np.zeros(n + 2, np.int64)
    sel = np.zeros(n + 2, np.int64)
    buf = np.zeros(n, np.float64)
    nodes = 0

    for si in range(starts.shape[0]):
        i1 = starts[si]
        depth = 1
        sel[1] = i1
        last[1] = i1
        cur[1] = 0.0
        for v in range(M):
            g[1, v] = L[i1, v]
        entered = True
        while depth >= 1:
            if entered:
                entered = False
                nodes += 1
                m = n - depth
                s = last[depth] + 1
                if M - s < m:
                    depth -= 1
                    continue
                base = cur[depth]
                if m == 2:
                    gmax = _NEG
                    for u in range(s, M):
                        if g[depth, u] > gmax:
                            gmax = g[depth, u]
                    if base + _topm_into(g[depth], s, M, buf[:2]) + Pmax[s] <= inc + slack:
                        depth -= 1
                        continue
                    for u in range(s, M - 1):
                        gu = g[depth, u]
                        if base + gu + gmax + Pmax[s] <= inc + slack:
                            continue
                        for v in range(u + 1, M):
                            val = base + gu + g[depth, v] + L[u, v]
                            if val > inc:
                                inc = val
                                for k in range(1, depth + 1):
                                    best[k - 1] = sel[k]
                                best[n - 2] = u
                                best[n - 1] = v
                    depth -= 1
                    continue
                # bound 1: per-candidate score with its best in-suffix partner
                for k in range(m):
                    buf[k] = _NEG
                for u in range(s, M):
                    v = g[depth, u] + 0.5 * (m - 1) * Rmax[u, s]
                    if v > buf[0]:
                        buf[0] = v
                        for k in range(m - 1):
                            if buf[k] > buf[k + 1]:
                                tmp = buf[k]
                                buf[k] = buf[k + 1]
                                buf[k + 1] = tmp
                            else:
                                break
                ub1 = base
                for k in range(m):
                    ub1 += buf[k]
                if ub1 <= inc + slack:
                    depth -= 1
                    continue
                # bound 2: best cross terms plus disk cap on mutual pairs
                pair_cap = 0.5 * m * math.log(m) + 0.5 * m * (m - 1) * log_rho_suf[s]
                pc2 = 0.5 * m * (m - 1) * Pmax[s]
                if pc2 < pair_cap:
                    pair_cap = pc2
                ub2 = base + _topm_into(g[depth], s, M, buf[:m]) + pair_cap
                if ub2 <= inc + slack:
                    depth -= 1
                    continue
                hi = M - m + 1
                k = 0
                for u in range(s, hi):
                    order[depth, k] = u
                    k += 1
                # children in decreasing-g order: good incumbents come early
                arr = order[depth]
                for a in range(1, k):
                    key = arr[a]
                    gkey = g[depth, key]
                    b = a - 1
                    while b >= 0 and g[depth, arr[b]] < gkey:
                        arr[b + 1] = arr[b]
                        b -= 1
                    arr[b + 1] = key
                cnt[depth] = k
                pos[depth] = 0
            else:
                if pos[depth] < cnt[depth]:
                    i = order[depth, pos[depth]]
                    pos[depth] += 1
                    d2 = depth + 1
                    sel[d2] = i
                    last[d2] = i
                    cur[d2] = cur[depth] + g[depth, i]
                    for v in range(M):
                        g[d2, v] = g[depth, v] + L[i, v]
                    depth = d2
                    entered = True
                else:
                    depth -= 1
    return inc, best, nodes


def _greedy_subset(L, n):
    i, j = np.unravel_index(int(np.argmax(L)), L.shape)
    sel = [int(i), int(j)]
    g = L[i] + L[j]
    while len(sel) < n:
        k = int(np.argmax(g))
        sel.append(k)
        g = g + L[k]
    sel = np.array(sorted(sel))
    val = float(np.sum(np.triu(L[np.ix_(sel, sel)], 1)))
    return val, sel


def n_diameter_brute(curve: CurveSample, n: int, budget_cap: float = DEFAULT_BUDGET,
                     prune_slack: float = 1e-12) -> FeketeResult:
    """Exact discrete maximizer of the pairwise-distance product over all
    n-subsets of the sampled points.  Oracle for the refined optimizer."""
    pts = curve.points
    M = len(pts)
    if not 2 <= n <= BRUTE_MAX_N:
        raise ValidationError(f"brute-force search supports 2 <= n <= {BRUTE_MAX_N}")
    if M > BRUTE_MAX_M:
        raise ValidationError(f"brute-force search supports at most {BRUTE_MAX_M} samples")
    if n > M:
        raise ValidationError("more points requested than samples available")
    if comb(M, n) > budget_cap:
        raise SearchBudgetError(f"binomial({M}, {n}) exceeds the search budget {budget_cap:g}")

    with np.errstate(divide="ignore"):
        L = np.log(np.abs(pts[:, None] - pts[None, :]))
    np.fill_diagonal(L, -np.inf)

    if n == 2:
        i, j = np.unravel_index(int(np.argmax(L)), L.shape)
        idx = np.array(sorted((int(i), int(j))))
        val = float(L[i, j])
        nodes = 1
    else:
        Rmax = np.maximum.accumulate(L[:, ::-1], axis=1)[:, ::-1]
        Pmax = np.array([float(Rmax[s:, s].max()) for s in range(M)])
        rho_suf = np.empty(M)
        for s in range(M):
            tail = pts[s:]
            rho_suf[s] = float(np.abs(tail - tail.mean()).max()) if len(tail) > 1 else 1e-300
        log_rho_suf = np.log(np.maximum(rho_suf, 1e-300))

        inc0, best0 = _greedy_subset(L, n)

        # a sample grid invariant under index rotation lets the search pin
        # the smallest chosen index at 0 (every subset has a rotated twin
        # through index 0 with the same product)
        Lc = L.copy()
        np.fill_diagonal(Lc, 0.0)
        symmetric = np.allclose(np.roll(np.roll(Lc, 1, 0), 1, 1), Lc, atol=1e-12, rtol=0.0)
        starts = (np.array([0], dtype=np.int64) if symmetric
                  else np.arange(0, M - n + 1, dtype=np.int64))

        Lk = L.copy()
        Lk[~np.isfinite(Lk)] = _NEG
        Rk = Rmax.copy()
        Rk[~np.isfinite(Rk)] = _NEG
        Pk = Pmax.copy()
        Pk[~np.isfinite(Pk)] = _NEG
        val, idx, nodes = _bb_kernel(Lk, Rk, Pk, log_rho_suf, n, starts,
                                     inc0, best0.astype(np.int64), prune_slack)
        idx = np.sort(idx)

    angles = curve.angles[idx]
    return FeketeResult(n=n, angles=angles, points=pts[idx],
                        n_diameter=diameter_from_log_sum(val, n),
                        method="brute_force", iterations=int(nodes))


# ---------------------------------------------------------------------------
# continuous refinement
# ---------------------------------------------------------------------------

def _leja_indices(values: np.ndarray, n: int) -> list[int]:
    # greedy product maximization; argmax resolves ties at the lowest index
    chosen = [int(np.argmax(np.abs(values)))]
    with np.errstate(divide="ignore"):
        score = np.log(np.abs(values - values[chosen[0]]))
        for _ in range(n - 1):
            k = int(np.argmax(score))
            chosen.append(k)
            score = score + np.log(np.abs(values - values[k]))
    return chosen

def _refine_on_curve(curve_fn, n: int, grid: int = LEJA_GRID,
                     max_sweeps: int = MAX_SWEEPS, rel_tol: float = REL_IMPROVEMENT_TOL,
                     coarse: int = 12, init_angles=None):
    """Cyclic coordinate ascent over angles; returns (angles, points, log
    product, sweeps, converged).  Each angle moves inside the open interval
    between its circular neighbors, so the ordering never degenerates."""
    if init_angles is None:
        tg = 2.0 * np.pi * np.arange(grid) / grid
        vals = curve_fn(tg)
        angles = np.sort(tg[np.array(_leja_indices(vals, n))])
    else:
        angles = np.sort(np.asarray(init_angles, dtype=float))
    pts = curve_fn(angles)

    def score_batch(cand, j):
        w = curve_fn(cand)
        d = np.abs(w[:, None] - pts[None, :])
        d[:, j] = 1.0
        with np.errstate(divide="ignore"):
            return np.log(d).sum(axis=1)

    def score_one(theta, j):
        wz = curve_fn(np.array([theta]))[0]
        d = np.abs(wz - pts)
        d[j] = 1.0
        with np.errstate(divide="ignore"):
            return float(np.log(d).sum())

    iu = np.triu_indices(n, 1)

    def joint_value(shift):
        w = curve_fn(angles + shift)
        with np.errstate(divide="ignore"):
            return float(np.log(np.abs(w[iu[0]] - w[iu[1]])).sum())

    def joint_rotation_move():
        # per-angle ascent crawls along the near-rotational soft mode of
        # circle-like curves; one line search in that direction removes it
        nonlocal angles, pts
        span = 0.35
        shifts = np.linspace(-span, span, 9)
        vals = [joint_value(s) for s in shifts]
        b = int(np.argmax(vals))
        a2, b2 = shifts[max(b - 1, 0)], shifts[min(b + 1, len(shifts) - 1)]
        c = b2 - _INV_PHI * (b2 - a2)
        d = a2 + _INV_PHI * (b2 - a2)
        fc, fd = joint_value(c), joint_value(d)
        for _ in range(60):
            if fc >= fd:
                b2, d, fd = d, c, fc
                c = b2 - _INV_PHI * (b2 - a2)
                fc = joint_value(c)
            else:
                a2, c, fc = c, d, fd
                d = a2 + _INV_PHI * (b2 - a2)
                fd = joint_value(d)
        sb, vb = (c, fc) if fc >= fd else (d, fd)
        if vb > vals[len(shifts) // 2]:  # center of the scan is shift 0
            angles = angles + sb
            pts = curve_fn(angles)

    log_f = pair_log_sum(pts)
    sweeps = 0
    converged = False
    for _ in range(max_sweeps):
        sweeps += 1
        joint_rotation_move()
        for j in range(n):
            prev = angles[j - 1] if j > 0 else angles[-1] - 2.0 * np.pi
            nxt = angles[j + 1] if j < n - 1 else angles[0] + 2.0 * np.pi
            gap = nxt - prev
            lo = prev + 1e-7 * gap
            hi = nxt - 1e-7 * gap
            cand = np.append(np.linspace(lo, hi, coarse), angles[j])
            sc = score_batch(cand, j)
            b = int(np.argmax(sc))
            best_t, best_v = float(cand[b]), float(sc[b])
            step = (hi - lo) / (coarse - 1)
            a2 = max(lo, best_t - step)
            b2 = min(hi, best_t + step)
            c = b2 - _INV_PHI * (b2 - a2)
            d = a2 + _INV_PHI * (b2 - a2)
            fc, fd = score_one(c, j), score_one(d, j)
            iters = max(1, min(80, int(math.log(max((b2 - a2) / 1e-12, 1.000001)) / 0.4812) + 1))
            for _ in range(iters):
                if fc >= fd:
                    b2, d, fd = d, c, fc
                    c = b2 - _INV_PHI * (b2 - a2)
                    fc = score_one(c, j)
                else:
                    a2, c, fc = c, d, fd
                    d = a2 + _INV_PHI * (b2 - a2)
                    fd = score_one(d, j)
            tb, vb = (c, fc) if fc >= fd else (d, fd)
            if vb > best_v:
                best_t = tb
            angles[j] = best_t
            pts[j] = curve_fn(np.array([best_t]))[0]
        new_f = pair_log_sum(pts)
        if new_f - log_f <= rel_tol * max(1.0, abs(new_f)):
            converged = True
            break
        log_f = new_f
    # canonical representation: angles in [0, 2 pi), ascending
    angles = np.mod(angles, 2.0 * np.pi)
    order = np.argsort(angles)
    angles = angles[order]
    pts = pts[order]
    return angles, pts, pair_log_sum(pts), sweeps, converged


def n_diameter_refined(map_: LaurentMap, r: float, n: int, grid: int = LEJA_GRID,
                       max_sweeps: int = MAX_SWEEPS, rel_tol: float = REL_IMPROVEMENT_TOL,
                       coarse: int = 12) -> FeketeResult:
    """Continuous-angle n-diameter of the image curve f(r e^{i t})."""
    if not 2 <= n <= 64:
        raise ValidationError("refined search supports 2 <= n <= 64")
    fn = map_curve_fn(map_, r)
    angles, pts, log_f, sweeps, converged = _refine_on_curve(
        fn, n, grid=grid, max_sweeps=max_sweeps, rel_tol=rel_tol, coarse=coarse)
    return FeketeResult(n=n, angles=angles, points=pts,
                        n_diameter=diameter_from_log_sum(log_f, n),
                        method="exchange_refined", iterations=sweeps, converged=converged)


def zoom_polish(map_: LaurentMap, r: float, angles, initial_step: float,
                max_rounds: int = 200):
    """Derivative-free joint refinement of a discrete optimum toward the
    continuous one: exhaustive {-s, 0, +s}^n neighborhood moves with step
    halving.  Independent of the Leja/golden-section machinery, so it can
    bridge the brute-force oracle to continuous-angle results.

    Returns (angles, log product, rounds).
    """
    import itertools

    fn = map_curve_fn(map_, r)
    th = np.sort(np.asarray(angles, dtype=float))
    n = len(th)
    if n > 8:
        raise ValidationError("zoom polish is exponential in n; use n <= 8")
    offsets = np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=n)))
    iu = np.triu_indices(n, 1)
    step = float(initial_step)
    pts = fn(th)
    with np.errstate(divide="ignore"):
        cur = float(np.log(np.abs(pts[:, None] - pts[None, :])[iu]).sum())
    rounds = 0
    while step > 1e-13 and rounds < max_rounds:
        rounds += 1
        for _ in range(64):
            cand = th[None, :] + step * offsets
            w = fn(cand)
            with np.errstate(divide="ignore"):
                vals = np.log(np.abs(w[:, iu[0]] - w[:, iu[1]])).sum(axis=1)
            b = int(np.argmax(vals))
            if vals[b] > cur + 1e-15:
                cur = float(vals[b])
                th = cand[b]
            else:
                break
        step *= 0.5
    return np.sort(np.mod(th, 2.0 * np.pi)), cur, rounds


# ---------------------------------------------------------------------------
# capacity extrapolation
# ---------------------------------------------------------------------------

def capacity_from_curve(curve_fn, n_sequence=DEFAULT_N_SEQUENCE, **refine_kwargs) -> CapacityEstimate:
    """Extrapolate d_n along ``n_sequence`` to the transfinite limit.

    Model: log d_n = log Cap + c * log(n)/(n-1).  On circles the correction
    term is exact with c = 1 (d_n = Cap * n^{1/(n-1)}), and near-circular
    analytic images inherit the same leading behavior, so the intercept is
    stable.  The residual of the least-squares fit is reported so callers
    can gate on fit quality.
    """
    warnings = []
    dn = []
    for n in n_sequence:
        _, _, log_f, sweeps, converged = _refine_on_curve(curve_fn, n, **refine_kwargs)
        if not converged:
            warnings.append(f"n={n}: ascent hit the sweep cap ({sweeps})")
        dn.append(diameter_from_log_sum(log_f, n))
    ns = np.asarray(n_sequence, dtype=float)
    y = np.log(np.asarray(dn))
    design = np.column_stack([np.ones_like(ns), np.log(ns) / (ns - 1.0)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    return CapacityEstimate(value=float(math.exp(coef[0])),
                            n_sequence=tuple(zip(n_sequence, dn)),
                            extrapolation_residual=resid,
                            warnings=tuple(warnings))


def capacity(map_: LaurentMap, r: float, n_sequence=DEFAULT_N_SEQUENCE,
             **refine_kwargs) -> CapacityEstimate:
    """Logarithmic capacity of the image curve f(r e^{i t})."""
    return capacity_from_curve(map_curve_fn(map_, r), n_sequence, **refine_kwargs)


# ---------------------------------------------------------------------------
# union search (outer curve plus unit circle candidates)
# ---------------------------------------------------------------------------

def n_diameter_union(curve_fns, n: int, grid: int = LEJA_GRID,
                     max_sweeps: int = MAX_SWEEPS, rel_tol: float = REL_IMPROVEMENT_TOL):
    """n-diameter when candidate points may sit on several closed curves.

    Each selected point is pinned to the curve it was seeded on and moves
    continuously along it.  Returns (value, points, converged).
    """
    k = len(curve_fns)
    tg = 2.0 * np.pi * np.arange(grid) / grid
    all_vals = np.concatenate([fn(tg) for fn in curve_fns])
    idx = _leja_indices(all_vals, n)
    cids = [i // grid for i in idx]
    angles = np.array([tg[i % grid] for i in idx])
    pts = all_vals[np.array(idx)].copy()

    def score_one(theta, cid, j):
        wz = curve_fns[cid](np.array([theta]))[0]
        d = np.abs(wz - pts)
        d[j] = 1.0
        with np.errstate(divide="ignore"):
            return float(np.log(d).sum())

    log_f = pair_log_sum(pts)
    converged = False
    scan = np.linspace(0.0, 2.0 * np.pi, 48, endpoint=False)
    for _ in range(max_sweeps):
        for j in range(n):
            cid = cids[j]
            cand = np.append(scan, angles[j])
            w = curve_fns[cid](cand)
            d = np.abs(w[:, None] - pts[None, :])
            d[:, j] = 1.0
            with np.errstate(divide="ignore"):
                sc = np.log(d).sum(axis=1)
            b = int(np.argmax(sc))
            best_t, best_v = float(cand[b]), float(sc[b])
            span = 2.0 * np.pi / len(scan)
            a2, b2 = best_t - span, best_t + span
            c = b2 - _INV_PHI * (b2 - a2)
            dd = a2 + _INV_PHI * (b2 - a2)
            fc, fd = score_one(c, cid, j), score_one(dd, cid, j)
            for _ in range(70):
                if fc >= fd:
                    b2, dd, fd = dd, c, fc
                    c = b2 - _INV_PHI * (b2 - a2)
                    fc = score_one(c, cid, j)
                else:
                    a2, c, fc = c, dd, fd
                    dd = a2 + _INV_PHI * (b2 - a2)
                    fd = score_one(dd, cid, j)
            tb, vb = (c, fc) if fc >= fd else (dd, fd)
            if vb > best_v:
                best_t = tb
            angles[j] = best_t
            pts[j] = curve_fns[cid](np.array([best_t]))[0]
        new_f = pair_log_sum(pts)
        if new_f - log_f <= rel_tol * max(1.0, abs(new_f)):
            converged = True
            break
        log_f = new_f
    return diameter_from_log_sum(pair_log_sum(pts), n), pts, converged


# ---------------------------------------------------------------------------
# analytic pair-product sampling (three-circles data)
# ---------------------------------------------------------------------------

def hadamard_log_max(map_: LaurentMap, angles, r: float, samples: int = 1024) -> float:
    """log of max_{|z| = r} |prod_{j<k} (f(w_j z) - f(w_k z))| over a sample
    grid, where w_j = e^{i angle_j}.  Log-domain throughout."""
    ang = np.sort(np.mod(np.asarray(angles, dtype=float), 2.0 * np.pi))
    n = len(ang)
    if n < 2:
        raise ValidationError("need at least two directions")
    gaps = np.diff(np.append(ang, ang[0] + 2.0 * np.pi))
    if np.min(gaps) < 1e-12:
        raise ValidationError("coincident directions make the product vanish identically")
    lo, hi = map_.radial_domain()
    if not lo < r < hi:
        raise DomainError(f"radius {r} outside analyticity interval ({lo}, {hi})")
    t = 2.0 * np.pi * np.arange(samples) / samples
    zs = r * np.exp(1j * t)
    f_rows = np.vstack([evaluate(map_, np.exp(1j * a) * zs) for a in ang])
    iu, ik = np.triu_indices(n, 1)
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(f_rows[iu] - f_rows[ik])).sum(axis=0)
    return float(np.max(logs))


def hadamard_product_max(map_: LaurentMap, angles, r: float, samples: int = 1024) -> float:
    """max |H(z)| on |z| = r for the pairwise difference product H; may
    overflow to inf for large n, use ``hadamard_log_max`` for comparisons."""
    return math.exp(hadamard_log_max(map_, angles, r, samples))
