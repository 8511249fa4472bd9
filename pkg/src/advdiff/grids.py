"""Grids, sampled fields and quadrature for Lp and mixed space-time norms.

Two geometries are supported: a uniform line grid on [-L, L] (dimension 1)
and a uniform radial grid on [0, R] standing for a spherically symmetric
function on R^d.  All integrals are composite trapezoid sums; radial
integrands carry the surface measure sigma_{d-1} r^{d-1}.
"""

import math
from dataclasses import dataclass, field

import numpy as np

LINE = "line"
RADIAL = "radial"

INF = math.inf


def sphere_area(d):
    """Surface measure of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


@dataclass
class SpatialGrid:
    """Uniform 1D grid: line on [-extent, extent] or radial on [0, extent]."""

    kind: str
    d: int
    extent: float
    n: int
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.kind not in (LINE, RADIAL):
            raise ValueError(f"unknown grid kind {self.kind!r}")
        if self.kind == LINE and self.d != 1:
            raise ValueError("line grids are one-dimensional")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if self.extent <= 0:
            raise ValueError("extent must be positive")
        if self.n < 3:
            raise ValueError("need at least 3 nodes")
        lo = -self.extent if self.kind == LINE else 0.0
        self.nodes = np.linspace(lo, self.extent, self.n)

    @property
    def h(self):
        span = 2.0 * self.extent if self.kind == LINE else self.extent
        return span / (self.n - 1)

    def quad_weights(self):
        """Trapezoid weights including the radial surface measure."""
        w = np.full(self.n, self.h)
        w[0] *= 0.5
        w[-1] *= 0.5
        if self.kind == RADIAL:
            w *= sphere_area(self.d) * self.nodes ** (self.d - 1)
        return w


def make_grid(kind, d, extent, n):
    return SpatialGrid(kind, d, float(extent), int(n))


@dataclass
class ScalarField:
    """Scalar function sampled on a grid (a solution snapshot or a profile)."""

    grid: SpatialGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n,):
            raise ValueError("values length does not match the grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")


@dataclass
class ExponentTriple:
    """Integrability exponents (r, q) of a drift in dimension d.

    The scale-invariance index 2/r + d/q (with 1/inf = 0) decides the
    estimate regime.
    """

    r: float
    q: float
    d: int

    def __post_init__(self):
        if self.r < 1 or self.q < 1:
            raise ValueError("exponents must lie in [1, inf]")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def scaling_sum(self):
        return 2.0 / self.r + self.d / self.q


@dataclass
class NormSeries:
    """Time-stamped trajectory of a single Lp norm."""

    p: float
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.shape != self.values.shape:
            raise ValueError("times and values must have equal length")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if np.any(self.values < 0):
            raise ValueError("norm values must be nonnegative")


def lp_norm(fld, p):
    """Lp norm of a sampled field by trapezoid quadrature (node max for p=inf)."""
    if p < 1:
        raise ValueError("p must lie in [1, inf]")
    a = np.abs(fld.values)
    if p == INF:
        return float(a.max())
    w = fld.grid.quad_weights()
    return float(np.dot(w, a ** p) ** (1.0 / p))


def time_nodes(t0, t1, nt, cluster_towards_one=False):
    """Quadrature nodes on [t0, t1]; geometric clustering toward t=1 when asked.

    Clustered nodes follow t_k = 1 - (1-t0) rho^k with rho fixed by t_{nt-1}=t1.
    """
    if nt < 2:
        raise ValueError("need at least two time nodes")
    if not cluster_towards_one:
        return np.linspace(t0, t1, nt)
    if t1 >= 1.0:
        raise ValueError("clustered nodes require t1 < 1")
    rho = ((1.0 - t1) / (1.0 - t0)) ** (1.0 / (nt - 1))
    k = np.arange(nt)
    ts = 1.0 - (1.0 - t0) * rho ** k
    ts[0] = t0
    ts[-1] = t1
    return ts


def mixed_norm(b, r, q, t0, t1, grid, nt):
    """Mixed space-time norm (int_t0^t1 ||b(t,.)||_q^r dt)^{1/r}.

    The spatial norm is the Lp quadrature of |b(t,.)| sampled on ``grid``;
    the time integral is a trapezoid over ``nt`` nodes, geometrically
    clustered toward t=1 for drift families that are singular there.
    For r=inf the supremum over the time nodes is returned.
    """
    if not (0.0 <= t0 < t1 <= 1.0):
        raise ValueError("need 0 <= t0 < t1 <= 1")
    if r < 1 or q < 1:
        raise ValueError("exponents must lie in [1, inf]")
    singular = getattr(b, "singular_at_one", False)
    if singular and t1 >= 1.0:
        raise ValueError("drift is singular at t=1; evaluation there is forbidden")
    ts = time_nodes(t0, t1, nt, cluster_towards_one=singular)
    vals = np.empty(nt)
    for i, t in enumerate(ts):
        speeds = np.abs(b.sample(t, grid.nodes))
        vals[i] = lp_norm(ScalarField(grid, speeds), q)
    if r == INF:
        return float(vals.max())
    return float(np.trapezoid(vals ** r, ts) ** (1.0 / r))
