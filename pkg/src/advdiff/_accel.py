"""Hot numerical kernels: numba-compiled fast path with a NumPy fallback.

The IMEX stepper and the direct convolution dominate runtime, so both carry
an ``@njit`` implementation and a vectorized NumPy/SciPy one.  Selection is
made once at import time: set ``ADVDIFF_NUMBA=0`` in the environment to force
the NumPy path (``bench/bench_accel.py`` times the two against each other).

Both paths use fixed left-to-right summation orders, so results are
deterministic for a given backend.
"""

import os

import numpy as np
from scipy.linalg import solve_banded

_flag = os.environ.get("ADVDIFF_NUMBA", "1").strip().lower()
_want_numba = _flag not in {"0", "false", "off", "no"}

if _want_numba:
    try:
        from numba import njit
    except ImportError:
        njit = None
else:
    njit = None

NUMBA_ENABLED = njit is not None
BACKEND = "numba" if NUMBA_ENABLED else "numpy"


# ---------------------------------------------------------------------------
# NumPy reference implementations
# ---------------------------------------------------------------------------

def thomas_solve_numpy(lower, diag, upper, rhs):
    """Solve the tridiagonal system with the given bands (LAPACK banded solve)."""
    m = diag.size
    ab = np.zeros((3, m))
    ab[0, 1:] = upper[:-1]
    ab[1, :] = diag
    ab[2, :-1] = lower[1:]
    return solve_banded((1, 1), ab, rhs)


def upwind_fluxes_numpy(u, bface):
    """Donor-cell fluxes bface * u_upwind at the n-1 interior faces."""
    return bface * np.where(bface >= 0.0, u[:-1], u[1:])


def convolve_direct_numpy(kernel, u, h):
    """Direct discrete convolution sum h * sum_j kernel[i-j+n-1] u[j].

    ``kernel`` has length 2n-1 and is indexed by node offset; this is the
    O(n^2) quadrature sum, evaluated by numpy's direct convolution.
    """
    return np.convolve(u, kernel, mode="valid") * h


def imex_step_line_numpy(u, bface, dt, h):
    """One IMEX step on a line grid: explicit upwind advection, CN diffusion.

    Homogeneous Dirichlet values at both ends.  Returns the new state and the
    signed boundary outflow of mass during the step (trapezoid-mass defect).
    """
    n = u.size
    flux = upwind_fluxes_numpy(u, bface)
    lam = dt / (h * h)
    rhs = u[1:-1] - (dt / h) * (flux[1:] - flux[:-1]) \
        + 0.5 * lam * (u[2:] - 2.0 * u[1:-1] + u[:-2])
    diag = np.full(n - 2, 1.0 + lam)
    off = np.full(n - 2, -0.5 * lam)
    x = thomas_solve_numpy(off, diag, off, rhs)
    unew = np.zeros_like(u)
    unew[1:-1] = x
    outflow = dt * (flux[-1] - flux[0]) \
        + (dt / (2.0 * h)) * (u[1] + u[n - 2] + unew[1] + unew[n - 2])
    return unew, outflow


def imex_step_radial_numpy(u, bface, wface, wnode, w0, dt, h):
    """One IMEX step on a radial grid (area-weighted conservative form).

    ``wface``/``wnode`` are r^{d-1} at faces/nodes, ``w0`` the origin cell
    volume (h/2)^d / d.  Symmetry at r=0 (zero flux), Dirichlet 0 at r=R.
    """
    n = u.size
    flux = wface * upwind_fluxes_numpy(u, bface)
    lam = dt / (h * h)
    # unknowns: nodes 0..n-2
    m = n - 1
    diag = np.empty(m)
    lower = np.zeros(m)
    upper = np.zeros(m)
    rhs = np.empty(m)
    c0 = wface[0] / (h * w0)        # = 2d/h^2 once weights cancel
    diag[0] = 1.0 + 0.5 * dt * c0
    upper[0] = -0.5 * dt * c0
    rhs[0] = u[0] - (dt / w0) * flux[0] + 0.5 * dt * c0 * (u[1] - u[0])
    cw = 1.0 / (h * h * wnode[1:n - 1])
    a = wface[:-1] * cw             # coupling to node i-1
    b = wface[1:] * cw              # coupling to node i+1
    lower[1:] = -0.5 * dt * a
    upper[1:] = -0.5 * dt * b
    diag[1:] = 1.0 + 0.5 * dt * (a + b)
    adv = (flux[1:] - flux[:-1]) / (h * wnode[1:n - 1])
    lap = b * (u[2:] - u[1:n - 1]) - a * (u[1:n - 1] - u[:n - 2])
    rhs[1:] = u[1:n - 1] - dt * adv + 0.5 * dt * lap
    x = thomas_solve_numpy(lower, diag, upper, rhs)
    unew = np.zeros_like(u)
    unew[:n - 1] = x
    outflow = dt * flux[-1] \
        + (dt / (2.0 * h)) * wface[-1] * (u[n - 2] + unew[n - 2])
    return unew, outflow


# ---------------------------------------------------------------------------
# numba fast path
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True)
    def _thomas_numba(lower, diag, upper, rhs):
        m = diag.size
        cp = np.empty(m)
        dp = np.empty(m)
        cp[0] = upper[0] / diag[0]
        dp[0] = rhs[0] / diag[0]
        for i in range(1, m):
            den = diag[i] - lower[i] * cp[i - 1]
            cp[i] = upper[i] / den
            dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / den
        x = np.empty(m)
        x[m - 1] = dp[m - 1]
        for i in range(m - 2, -1, -1):
            x[i] = dp[i] - cp[i] * x[i + 1]
        return x

    @njit(cache=True)
    def _upwind_fluxes_numba(u, bface):
        flux = np.empty(bface.size)
        for i in range(bface.size):
            if bface[i] >= 0.0:
                flux[i] = bface[i] * u[i]
            else:
                flux[i] = bface[i] * u[i + 1]
        return flux

    @njit(cache=True)
    def _convolve_direct_numba(kernel, u, h):
        n = u.size
        out = np.empty(n)
        for i in range(n):
            s = 0.0
            base = i + n - 1
            for j in range(n):
                s += kernel[base - j] * u[j]
            out[i] = s * h
        return out

    @njit(cache=True)
    def _imex_step_line_numba(u, bface, dt, h):
        n = u.size
        flux = _upwind_fluxes_numba(u, bface)
        lam = dt / (h * h)
        m = n - 2
        rhs = np.empty(m)
        for i in range(m):
            j = i + 1
            rhs[i] = u[j] - (dt / h) * (flux[j] - flux[j - 1]) \
                + 0.5 * lam * (u[j + 1] - 2.0 * u[j] + u[j - 1])
        diag = np.full(m, 1.0 + lam)
        off = np.full(m, -0.5 * lam)
        x = _thomas_numba(off, diag, off, rhs)
        unew = np.zeros(n)
        for i in range(m):
            unew[i + 1] = x[i]
        outflow = dt * (flux[n - 2] - flux[0]) \
            + (dt / (2.0 * h)) * (u[1] + u[n - 2] + unew[1] + unew[n - 2])
        return unew, outflow

    @njit(cache=True)
    def _imex_step_radial_numba(u, bface, wface, wnode, w0, dt, h):
        n = u.size
        raw = _upwind_fluxes_numba(u, bface)
        flux = np.empty(n - 1)
        for i in range(n - 1):
            flux[i] = wface[i] * raw[i]
        m = n - 1
        diag = np.empty(m)
        lower = np.zeros(m)
        upper = np.zeros(m)
        rhs = np.empty(m)
        c0 = wface[0] / (h * w0)
        diag[0] = 1.0 + 0.5 * dt * c0
        upper[0] = -0.5 * dt * c0
        rhs[0] = u[0] - (dt / w0) * flux[0] + 0.5 * dt * c0 * (u[1] - u[0])
        for i in range(1, m):
            cw = 1.0 / (h * h * wnode[i])
            a = wface[i - 1] * cw
            b = wface[i] * cw
            lower[i] = -0.5 * dt * a
            upper[i] = -0.5 * dt * b
            diag[i] = 1.0 + 0.5 * dt * (a + b)
            adv = (flux[i] - flux[i - 1]) / (h * wnode[i])
            lap = b * (u[i + 1] - u[i]) - a * (u[i] - u[i - 1])
            rhs[i] = u[i] - dt * adv + 0.5 * dt * lap
        x = _thomas_numba(lower, diag, upper, rhs)
        unew = np.zeros(n)
        for i in range(m):
            unew[i] = x[i]
        outflow = dt * flux[n - 2] \
            + (dt / (2.0 * h)) * wface[n - 2] * (u[n - 2] + unew[n - 2])
        return unew, outflow

    thomas_solve = _thomas_numba
    upwind_fluxes = _upwind_fluxes_numba
    convolve_direct = _convolve_direct_numba
    imex_step_line = _imex_step_line_numba
    imex_step_radial = _imex_step_radial_numba
else:
    thomas_solve = thomas_solve_numpy
    upwind_fluxes = upwind_fluxes_numpy
    convolve_direct = convolve_direct_numpy
    imex_step_line = imex_step_line_numpy
    imex_step_radial = imex_step_radial_numpy
