"""Real roots of low-degree polynomials and scalar bisection."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import BracketError, DegeneratePolynomialError

TOL_ROOT = 1e-10
MERGE_TOL = 1e-8
# imaginary parts below this (relative) are treated as numerical noise;
# near-double roots come out of the eigenvalue solver as a close complex pair
_IMAG_TOL = 1e-5


def normalize_coeffs(coeffs: Sequence[float]) -> np.ndarray:
    """Strip leading zeros and validate a coefficient list (highest degree first)."""
    c = np.asarray(coeffs, dtype=float).ravel()
    if c.size == 0 or not np.all(np.isfinite(c)):
        raise DegeneratePolynomialError("coefficients must be a non-empty finite list")
    scale = np.max(np.abs(c))
    if scale == 0.0:
        raise DegeneratePolynomialError("all-zero polynomial")
    nz = np.flatnonzero(np.abs(c) > 0.0)
    c = c[nz[0]:]
    if c.size == 1:
        raise DegeneratePolynomialError("degree-0 polynomial has no roots")
    if c.size > 5:
        raise DegeneratePolynomialError(f"degree {c.size - 1} exceeds 4")
    return c


def poly_scale(coeffs: np.ndarray, x: float = 0.0) -> float:
    """Magnitude against which a residual p(x) is judged."""
    deg = len(coeffs) - 1
    powers = np.abs(x) ** np.arange(deg, -1, -1)
    return float(max(np.max(np.abs(coeffs)), np.sum(np.abs(coeffs) * powers)))


def _newton_polish(c: np.ndarray, dc: np.ndarray, x: float, iters: int = 8) -> float:
    best, best_res = x, abs(np.polyval(c, x))
    for _ in range(iters):
        d = np.polyval(dc, x)
        if d == 0.0:
            break
        step = np.polyval(c, x) / d
        x = x - step
        res = abs(np.polyval(c, x))
        if res < best_res:
            best, best_res = x, res
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return float(best)


def real_roots(coeffs: Sequence[float], tol_root: float = TOL_ROOT) -> list[float]:
    """All real roots of a polynomial of degree 1 to 4, ascending.

    Candidates come from the companion-matrix eigenvalues (``numpy.roots``),
    each is Newton-polished, and only those whose residual passes
    ``|p(r)| <= tol_root * scale`` are kept.  Roots closer than ``1e-8``
    (relative) are merged, so a double root is reported once.
    """
    c = normalize_coeffs(coeffs)
    dc = np.polyder(c)
    cand = np.roots(c)
    out = []
    for z in cand:
        if abs(z.imag) > _IMAG_TOL * max(1.0, abs(z)):
            continue
        r = _newton_polish(c, dc, z.real)
        if abs(np.polyval(c, r)) <= tol_root * poly_scale(c, r):
            out.append(r)
    out.sort()
    merged: list[float] = []
    for r in out:
        if merged and abs(r - merged[-1]) <= MERGE_TOL * max(1.0, abs(r)):
            continue
        merged.append(r)
    return merged


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12,
           max_iter: int = 200) -> float:
    """Find a sign change of ``f`` in [lo, hi] by interval halving.

    Returns the midpoint of the final bracket, whose width is at most ``tol``
    unless ``max_iter`` runs out first (floating-point resolution).
    """
    if not lo < hi:
        raise BracketError(f"need lo < hi, got [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (flo < 0.0) != (fhi < 0.0) or math.isnan(flo) or math.isnan(fhi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = {flo}, {fhi}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)
