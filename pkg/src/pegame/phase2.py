"""Post-saturation capture: P reaches its speed cap before catching E.

For a fixed acceleration heading theta, P accelerates for t_theta(theta) and
then coasts at v_P_max.  With

    p = v0 + a u t_theta,   q = (p0 - e0) - a u t_theta^2 / 2,

the coasting position is ``p0 + ... = e0 + q + p t`` and capture by an evader
running at full speed needs ``|q + p t| = v_E t``.  Its root is

    t(theta) = (g - h) / (v_P^2 - v_E^2),  h = p.q,  g = sqrt(w),
    w = h^2 - (v_P^2 - v_E^2) |q|^2.

E picks the heading that maximises t(theta) over the arc where w >= 0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .core import CaptureSolution, GameParams, GameState, Phase, TWO_PI, wrap_angle
from .errors import InfeasibleHeadingError, UniformSignError, WrongPhaseError
from .phase1 import saturation_time
from .roots import bisect

log = logging.getLogger(__name__)

SCAN_STEP = math.pi / 500
STEP_REDUCTIONS = 4
ANCHOR_SHIFT = math.pi / 1000
TERNARY_TOL = 1e-10
TERNARY_MAX_ITER = 200
FALLBACK_GRID = 2000
EDGE_TOL = 1e-7


@dataclass(frozen=True)
class PQTerms:
    p_x: float
    p_y: float
    q_x: float
    q_y: float
    t_theta: float


@dataclass(frozen=True)
class FeasibleDomain:
    """Heading arc [theta_lo, theta_hi] of admissible headings.

    Endpoints are zeros of w, or headings where the capture time meets the
    saturation time.  ``theta_hi`` may exceed 2*pi; the arc is stored unrolled so that
    ``theta_lo < theta_hi`` always holds.
    """

    theta_lo: float
    theta_hi: float
    wraps: bool

    @property
    def width(self) -> float:
        return self.theta_hi - self.theta_lo

    def contains(self, theta: float) -> bool:
        off = (theta - self.theta_lo) % TWO_PI
        return off <= self.width


def _pq_arrays(state: GameState, theta, params: GameParams):
    tt = saturation_time(state, theta, params)
    a = params.a_P_max
    c, s = np.cos(theta), np.sin(theta)
    px = state.v_Px + a * c * tt
    py = state.v_Py + a * s * tt
    half = 0.5 * a * tt * tt
    qx = state.x_P - state.x_E - half * c
    qy = state.y_P - state.y_E - half * s
    return px, py, qx, qy, tt


def pq_terms(state: GameState, theta_P: float, params: GameParams) -> PQTerms:
    px, py, qx, qy, tt = _pq_arrays(state, float(theta_P), params)
    return PQTerms(float(px), float(py), float(qx), float(qy), float(tt))


def _hw(state, theta, params):
    px, py, qx, qy, _ = _pq_arrays(state, theta, params)
    h = px * qx + py * qy
    w = h * h - params.speed_gap * (qx * qx + qy * qy)
    return h, w


def w_feasibility(state: GameState, theta_P, params: GameParams):
    """Discriminant w(theta); non-negative iff a real capture time exists."""
    _, w = _hw(state, theta_P, params)
    return float(w) if np.ndim(w) == 0 else w


def heading_feasibility(state: GameState, theta_P, params: GameParams):
    """Signed feasibility used to bracket the admissible heading arc.

    Equals w on headings whose printed root is a valid post-saturation
    capture time: h < 0 (otherwise both roots of the quadratic are
    non-positive) and t(theta) >= t_theta(theta) (otherwise P would not have
    saturated yet and the coasting model does not apply).  Elsewhere it is
    -|w|, so the function is positive exactly on the admissible headings.
    """
    theta_P = np.asarray(theta_P, dtype=float)
    px, py, qx, qy, tt = _pq_arrays(state, theta_P, params)
    h = px * qx + py * qy
    w = h * h - params.speed_gap * (qx * qx + qy * qy)
    t = (np.sqrt(np.maximum(w, 0.0)) - h) / params.speed_gap
    ok = (h < 0.0) & (w >= 0.0) & (t >= tt)
    out = np.where(ok, w, -np.abs(w))
    return float(out) if np.ndim(out) == 0 else out


def _scalar_terms(state: GameState, theta: float, params: GameParams):
    """Scalar (h, w, t, t_theta) with plain floats; the hot path of the searches."""
    a, vmax = params.a_P_max, params.v_P_max
    c, s = math.cos(theta), math.sin(theta)
    vx, vy = state.v_Px, state.v_Py
    cross = vx * s - vy * c
    tt = max((math.sqrt(max(vmax * vmax - cross * cross, 0.0)) - (vx * c + vy * s)) / a, 0.0)
    px, py = vx + a * c * tt, vy + a * s * tt
    half = 0.5 * a * tt * tt
    qx = state.x_P - state.x_E - half * c
    qy = state.y_P - state.y_E - half * s
    h = px * qx + py * qy
    gap = params.speed_gap
    w = h * h - gap * (qx * qx + qy * qy)
    t = (math.sqrt(max(w, 0.0)) - h) / gap
    return h, w, t, tt


def _heading_feasibility_scalar(state, theta, params):
    h, w, t, tt = _scalar_terms(state, theta, params)
    return w if (h < 0.0 and w >= 0.0 and t >= tt) else -abs(w)


def _w_scale(state: GameState, params: GameParams) -> float:
    d2 = state.psi()
    # h^2 is of order v_P^2 |q|^2 so this is the natural magnitude of w
    reach = params.v_P_max ** 2 / params.a_P_max
    return max(1.0, params.v_P_max ** 2 * (d2 + reach * reach))


def capture_time_curve(state: GameState, theta, params: GameParams):
    """Vectorised t(theta); NaN where w < 0 or the printed root is negative."""
    h, w = _hw(state, np.asarray(theta, dtype=float), params)
    tol = 1e-12 * _w_scale(state, params)
    g = np.sqrt(np.where(w >= -tol, np.maximum(w, 0.0), np.nan))
    t = (g - h) / params.speed_gap
    return np.where(t >= 0.0, t, np.nan)


def admissible_capture_time_curve(state: GameState, theta, params: GameParams):
    """Like ``capture_time_curve`` but NaN off the admissible headings."""
    theta = np.asarray(theta, dtype=float)
    t = capture_time_curve(state, theta, params)
    return np.where(heading_feasibility(state, theta, params) >= 0.0, t, np.nan)


def capture_time_given_heading(state: GameState, theta_P: float, params: GameParams) -> float:
    """Capture time after saturation for the heading ``theta_P``."""
    h, w = _hw(state, float(theta_P), params)
    h, w = float(h), float(w)
    if w < -1e-12 * _w_scale(state, params):
        raise InfeasibleHeadingError(f"w = {w!r} < 0 at heading {theta_P!r}")
    t = (math.sqrt(max(w, 0.0)) - h) / params.speed_gap
    if t < 0.0:
        if t > -1e-12 * max(1.0, abs(h) / params.speed_gap):
            return 0.0
        raise InfeasibleHeadingError(f"printed root is negative ({t!r}) at heading {theta_P!r}")
    return t


def reachable_point_post_saturation(state: GameState, theta_P: float, t: float,
                                    params: GameParams) -> tuple:
    """Where P is at time ``t >= t_theta`` after accelerating along ``theta_P``."""
    tt = saturation_time(state, theta_P, params)
    if t < tt - 1e-12 * max(1.0, tt):
        raise WrongPhaseError(f"t = {t!r} precedes saturation at {tt!r}")
    k = 0.5 * params.a_P_max * (2.0 * t * tt - tt * tt)
    return (state.x_P + state.v_Px * t + k * math.cos(theta_P),
            state.y_P + state.v_Py * t + k * math.sin(theta_P))


def min_semi_axis(state: GameState, t: float, params: GameParams) -> float:
    """Smallest distance from the oval's centre ``p0 + v_P v0 / a ...`` to the locus.

    Closed form v_P t - (|v0|^2 + v_P^2) / (2 a).
    """
    v2 = state.v_Px ** 2 + state.v_Py ** 2
    return params.v_P_max * t - (v2 + params.v_P_max ** 2) / (2.0 * params.a_P_max)


def _scan_for_opposite(wfun, anchor: float, w0: float, step: float):
    n = int(math.ceil(TWO_PI / step))
    thetas = anchor + step * np.arange(1, n)
    vals = wfun(thetas)
    hit = np.flatnonzero(np.sign(vals) == -np.sign(w0))
    if hit.size == 0:
        return None
    return float(thetas[hit[0]])


def bracket_feasible_domain(state: GameState, params: GameParams) -> FeasibleDomain:
    """Locate the arc of admissible headings (see ``heading_feasibility``).

    Scans from theta = 0 at step pi/500 for a heading where the feasibility
    function has the opposite sign to its value at 0, shrinking the step
    tenfold up to four times.  With one heading of each sign, bisection on
    the two sub-arcs between them gives the endpoints.
    """
    params.check_state(state)
    scale = _w_scale(state, params)

    def wfun(theta):
        if np.ndim(theta) == 0:
            return _heading_feasibility_scalar(state, float(theta), params)
        return heading_feasibility(state, theta, params)

    anchor = 0.0
    w0 = wfun(anchor)
    if abs(w0) <= 1e-14 * scale:
        # anchored on a zero; the scan needs a definite sign to compare against
        anchor = ANCHOR_SHIFT
        w0 = wfun(anchor)
        log.debug("w(0) ~ 0, scan anchor moved to %g", anchor)

    step = SCAN_STEP
    other = None
    for _ in range(STEP_REDUCTIONS + 1):
        other = _scan_for_opposite(wfun, anchor, w0, step)
        if other is not None:
            break
        step /= 10.0
    if other is None:
        positive = w0 > 0.0
        kind = "positive" if positive else "negative"
        raise UniformSignError(f"w is everywhere {kind} on the heading circle",
                               everywhere_positive=positive)

    if w0 > 0.0:
        th_pos, th_neg = anchor, other
    else:
        th_pos, th_neg = other, anchor

    tol = 1e-13
    # w rises through zero between th_neg and th_pos, falls between th_pos and th_neg
    if th_neg < th_pos:
        lo = bisect(wfun, th_neg, th_pos, tol)
        hi = bisect(wfun, th_pos, th_neg + TWO_PI, tol)
    else:
        lo = bisect(wfun, th_neg - TWO_PI, th_pos, tol)
        hi = bisect(wfun, th_pos, th_neg, tol)
    lo_w = wrap_angle(lo)
    hi_unrolled = lo_w + (hi - lo)
    return FeasibleDomain(theta_lo=lo_w, theta_hi=hi_unrolled, wraps=hi_unrolled > TWO_PI)


def feasible_arcs(state: GameState, params: GameParams) -> list:
    """Every arc of admissible headings, in increasing ``theta_lo`` order.

    The admissible set is usually one arc, but it can split in two (for
    example when P starts fast and nearly abreast of E).  A full-circle scan
    at the bracketing step finds each sign change of the feasibility
    function and bisection refines it.  Arcs narrower than the scan step can
    be missed.  Falls back to ``bracket_feasible_domain`` when the scan sees
    one sign only.
    """
    params.check_state(state)
    n = int(math.ceil(TWO_PI / SCAN_STEP))
    thetas = TWO_PI * np.arange(n) / n
    pos = heading_feasibility(state, thetas, params) > 0.0
    if pos.all() or not pos.any():
        return [bracket_feasible_domain(state, params)]

    def wfun(theta):
        return _heading_feasibility_scalar(state, float(theta), params)

    def edge(i):
        # zero of w between sample i and the next one, unrolled past 2*pi if needed
        a = thetas[i]
        b = a + TWO_PI / n
        fa, fb = wfun(a), wfun(b)
        # a sample sitting exactly on a zero counts as infeasible
        if fa == 0.0 or fb == 0.0:
            return b if fa == 0.0 else a
        return bisect(wfun, a, b, 1e-13)

    change = np.flatnonzero(pos != np.roll(pos, -1))
    rises = [edge(i) for i in change if not pos[i]]
    falls = [edge(i) for i in change if pos[i]]
    arcs = []
    for lo in rises:
        # the arc ends at the first fall after lo, going round once at most
        hi = min((f if f > lo else f + TWO_PI) for f in falls)
        lo_w = wrap_angle(lo)
        hi_unrolled = lo_w + (hi - lo)
        arcs.append(FeasibleDomain(lo_w, hi_unrolled, hi_unrolled > TWO_PI))
    return sorted(arcs, key=lambda d: d.theta_lo)


def ternary_search_max(f, lo: float, hi: float, tol: float = TERNARY_TOL,
                       max_iter: int = TERNARY_MAX_ITER):
    """Maximise a unimodal ``f`` on [lo, hi] by trisection."""
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) < f(m2):
            lo = m1
        else:
            hi = m2
    x = 0.5 * (lo + hi)
    return x, f(x)


def golden_section_max(f, lo: float, hi: float, tol: float = TERNARY_TOL, max_iter: int = 200):
    """Maximise a unimodal ``f`` on [lo, hi] by golden-section search."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


def _objective(state, params):
    """Scalar admissible capture time, -inf off the admissible arc."""
    params.check_state(state)

    def f(theta):
        h, w, t, tt = _scalar_terms(state, theta, params)
        ok = h < 0.0 and w >= 0.0 and t >= tt
        if not ok and w != 0.0:
            return -math.inf
        return t if t >= 0.0 else -math.inf
    return f


def _argmax_over_domain(state: GameState, params: GameParams):
    f = _objective(state, params)
    try:
        arcs = feasible_arcs(state, params)
    except UniformSignError as err:
        if not err.everywhere_positive:
            raise
        grid = np.linspace(0.0, TWO_PI, FALLBACK_GRID, endpoint=False)
        vals = admissible_capture_time_curve(state, grid, params)
        i = int(np.nanargmax(vals))
        h = TWO_PI / FALLBACK_GRID
        theta, t = golden_section_max(f, grid[i] - h, grid[i] + h)
        return theta, t, None
    # best interior maximum over the arcs; each arc is searched on its own
    best = None
    for dom in arcs:
        theta, t = ternary_search_max(f, dom.theta_lo, dom.theta_hi)
        if best is None or t > best[1]:
            best = (theta, t, dom)
    return best


def solve_phase2(state: GameState, params: GameParams) -> CaptureSolution:
    """Capture time, point and headings when P saturates before capture."""
    params.check_state(state)
    theta, t_f, dom = _argmax_over_domain(state, params)
    theta = wrap_angle(theta)
    t_f = capture_time_given_heading(state, theta, params)
    tt = saturation_time(state, theta, params)
    xf, yf = reachable_point_post_saturation(state, theta, max(t_f, tt), params)
    ex, ey = xf - state.x_E, yf - state.y_E
    if math.hypot(ex, ey) > 1e-14 * max(1.0, math.hypot(xf, yf)):
        theta_E = math.atan2(ey, ex)
    else:
        # E already sits on the capture point; any heading is optimal
        theta_E = theta
    on_edge = False
    if dom is not None:
        off = (theta - dom.theta_lo) % TWO_PI
        on_edge = min(off, dom.width - off) <= EDGE_TOL
    # a maximiser on the arc edge is a constrained maximum: dt/dtheta != 0 there
    info = {"domain": dom, "on_edge": on_edge}
    return CaptureSolution(t_f=t_f, capture_point=(xf, yf), theta_P_star=theta,
                           theta_E_star=theta_E, phase=Phase.POST_SATURATION,
                           t_theta_star=tt, info=info)
