"""Self-similar blow-up profiles.

The 1D profile has potential U(y) = y^{1/4} + (3/16) y^{-7/4} for y > 2,
odd-reflected for y < -2, and an odd polynomial extension across [-2, 2]
matching the outer closed form with C^4 contact.  The drift shape follows
from the integrated profile ODE,

    b = (u' - (alpha - 1/2) U - y u / 2) / u,     alpha = 3/8,

so the self-similar pair solves the advection-diffusion equation exactly.

The radial profile in dimension d >= 2 follows the same pattern with
U(r) = r^{-d+5/4} + (1/4)(d - 1/4) r^{-d-3/4} outside M = sqrt(2d) + 1,
blended into the linear core L r by a decreasing C^4 cutoff on [M-1, M];
alpha = d/2 - 1/8.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cutoffs import smoothstep_c4

SCHEMA_VERSION = 1

# fourth-order central difference stencils (5 points, offsets -2..2)
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFSETS = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])


def _falling(a, k):
    out = 1.0
    for i in range(k):
        out *= a - i
    return out


def _powers_deriv(x, terms, k):
    """k-th derivative of sum c * x^e over (c, e) pairs, for x > 0."""
    out = np.zeros_like(x)
    for c, e in terms:
        out += c * _falling(e, k) * x ** (e - k)
    return out


def _odd_poly_matching(terms, x0, order):
    """Coefficients of the odd polynomial whose derivatives 0..order match
    the power-sum ``terms`` at ``x0``.  Returns ascending odd-degree coeffs."""
    degs = np.arange(1, 2 * order + 2, 2, dtype=float)
    rows = []
    rhs = []
    for k in range(order + 1):
        rows.append([_falling(m, k) * x0 ** (m - k) for m in degs])
        rhs.append(_powers_deriv(np.array(x0), terms, k))
    return np.linalg.solve(np.array(rows), np.array(rhs, dtype=float))


def _odd_poly_eval(coeffs, x, k=0):
    degs = np.arange(1, 2 * len(coeffs), 2)
    out = np.zeros_like(x)
    for a, m in zip(coeffs, degs):
        if m - k >= 0:
            out += a * _falling(float(m), k) * x ** (m - k)
    return out


@dataclass
class Profile1D:
    """Immutable 1D self-similar profile (potential U, density u, drift b)."""

    alpha: float = 0.375
    tail_exponent: float = 0.25           # U ~ y^{1/4} at infinity
    tail_coefficient: float = 0.1875      # coefficient of y^{-7/4}
    junction: float = 2.0
    match_order: int = 4
    ext_coeffs: np.ndarray = field(default=None, repr=False)
    kind: str = "line"
    d: int = 1

    def __post_init__(self):
        g = self.tail_exponent
        self._U_terms = ((1.0, g), (self.tail_coefficient, g - 2.0))
        if self.ext_coeffs is None:
            self.ext_coeffs = _odd_poly_matching(
                self._U_terms, self.junction, self.match_order)
        self.ext_coeffs = np.asarray(self.ext_coeffs, dtype=float)
        ys = np.linspace(0.0, self.junction, 4001)
        if np.any(_odd_poly_eval(self.ext_coeffs, ys, 1) <= 0.0):
            raise ValueError("polynomial extension is not strictly increasing")

    def _split(self, y, outer, inner, parity):
        arr = np.asarray(y, dtype=float)
        a = np.abs(arr).ravel()
        out = np.empty_like(a)
        m = a >= self.junction
        if m.any():
            out[m] = outer(a[m])
        if (~m).any():
            out[~m] = inner(a[~m])
        out = out.reshape(arr.shape)
        if parity == "odd":
            out = out * np.sign(arr)
        return out if out.ndim else float(out)

    def U(self, y):
        return self._split(
            y,
            lambda a: _powers_deriv(a, self._U_terms, 0),
            lambda a: _odd_poly_eval(self.ext_coeffs, a),
            "odd")

    def u(self, y):
        return self._split(
            y,
            lambda a: _powers_deriv(a, self._U_terms, 1),
            lambda a: _odd_poly_eval(self.ext_coeffs, a, 1),
            "even")

    def _b_outer(self, a):
        return 231.0 * a ** -3.0 / (4.0 * (16.0 - 21.0 * a ** -2.0))

    def _b_inner(self, a):
        P = _odd_poly_eval(self.ext_coeffs, a)
        dP = _odd_poly_eval(self.ext_coeffs, a, 1)
        d2P = _odd_poly_eval(self.ext_coeffs, a, 2)
        return (d2P - (self.alpha - 0.5) * P - 0.5 * a * dP) / dP

    def b(self, y):
        return self._split(y, self._b_outer, self._b_inner, "odd")

    def to_json(self):
        return json.dumps({
            "schema_version": SCHEMA_VERSION,
            "family": "selfsim1d",
            "alpha": self.alpha,
            "tail_exponent": self.tail_exponent,
            "tail_coefficient": self.tail_coefficient,
            "junction": self.junction,
            "match_order": self.match_order,
            "extension_coefficients": [float(c) for c in self.ext_coeffs],
        }, sort_keys=True)


@dataclass
class ProfileRadial:
    """Radial self-similar profile in dimension d >= 2."""

    d: int
    match_order: int = 4  # recorded for provenance; cutoff is C^4
    L: float = field(default=None)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("radial profiles need d >= 2")
        d = self.d
        self.alpha = d / 2.0 - 0.125
        self.gamma = d - 1.25
        self.C = 0.25 * (d - 0.25)
        self.M = math.sqrt(2.0 * d) + 1.0
        self._U_terms = ((1.0, -self.gamma), (self.C, -self.gamma - 2.0))
        if self.L is None:
            # U(r)/r is strictly decreasing, so the largest admissible
            # linear-core slope is attained at the outer junction M
            self.L = float(_powers_deriv(np.array(self.M), self._U_terms, 0)
                           / self.M)
        rs = np.linspace(0.0, max(100.0, 3.0 * self.M), 20001)
        if np.any(self.u(rs) <= 0.0):
            raise ValueError("radial profile density is not positive")
        self.kind = "radial"

    # cutoff psi: 1 on [0, M-1], 0 on [M, inf), decreasing C^4 in between
    def _psi(self, r, deriv=0):
        s = smoothstep_c4(r - (self.M - 1.0), deriv)
        return (1.0 - s) if deriv == 0 else -s

    def _Uc(self, r, k=0):
        return _powers_deriv(r, self._U_terms, k)

    def _uc(self, r, k=0):
        d = self.d
        terms = ((0.25, -d + 0.25), (-(7.0 / 16.0) * (d - 0.25), -d - 1.75))
        return _powers_deriv(r, terms, k)

    def _split3(self, r, core, mid, outer, parity):
        arr = np.asarray(r, dtype=float)
        a = np.abs(arr).ravel()
        out = np.empty_like(a)
        m_core = a <= self.M - 1.0
        m_out = a >= self.M
        m_mid = ~(m_core | m_out)
        if m_core.any():
            out[m_core] = core(a[m_core])
        if m_mid.any():
            out[m_mid] = mid(a[m_mid])
        if m_out.any():
            out[m_out] = outer(a[m_out])
        out = out.reshape(arr.shape)
        if parity == "odd":
            out = out * np.sign(arr)
        return out if out.ndim else float(out)

    def U(self, r):
        return self._split3(
            r,
            lambda a: self.L * a,
            lambda a: self._psi(a) * self.L * a
            + (1.0 - self._psi(a)) * self._Uc(a),
            lambda a: self._Uc(a),
            "odd")

    def _u_mid(self, a):
        psi, dpsi = self._psi(a), self._psi(a, 1)
        return (psi * self.L * self.d + (1.0 - psi) * self._uc(a)
                - dpsi * (self._Uc(a) - self.L * a))

    def u(self, r):
        return self._split3(
            r,
            lambda a: np.full_like(a, self.L * self.d),
            self._u_mid,
            lambda a: self._uc(a),
            "even")

    def _du_mid(self, a):
        psi, dpsi, d2psi = self._psi(a), self._psi(a, 1), self._psi(a, 2)
        return (dpsi * (self.L * self.d + self.L - self._uc(a) - self._Uc(a, 1))
                + (1.0 - psi) * self._uc(a, 1)
                - d2psi * (self._Uc(a) - self.L * a))

    def _b_from_parts(self, a, u, du, U):
        # integrated relation with alpha - d/2 = -1/8
        return (du + 0.125 * U - 0.5 * a * u) / u

    def b(self, r):
        d = self.d

        def core(a):
            return a * (1.0 / (8.0 * d) - 0.5)

        def mid(a):
            return self._b_from_parts(a, self._u_mid(a), self._du_mid(a),
                                      self._psi(a) * self.L * a
                                      + (1.0 - self._psi(a)) * self._Uc(a))

        def outer(a):
            c = 7.0 * (4.0 * d - 1.0)
            return (c * (4.0 * d + 7.0) * a ** -3.0
                    / (4.0 * (16.0 - c * a ** -2.0)))

        return self._split3(r, core, mid, outer, "odd")

    def to_json(self):
        return json.dumps({
            "schema_version": SCHEMA_VERSION,
            "family": "selfsimradial",
            "d": self.d,
            "alpha": self.alpha,
            "M": self.M,
            "L": self.L,
            "match_order": self.match_order,
            "cutoff": "smoothstep_c4",
        }, sort_keys=True)


_DEFAULT_1D = None
_RADIAL_CACHE = {}


def build_profile_1d(match_order=4):
    return Profile1D(match_order=match_order)


def build_profile_radial(d):
    prof = _RADIAL_CACHE.get(d)
    if prof is None:
        prof = ProfileRadial(d)
        _RADIAL_CACHE[d] = prof
    return prof


def default_profile_1d():
    global _DEFAULT_1D
    if _DEFAULT_1D is None:
        _DEFAULT_1D = build_profile_1d()
    return _DEFAULT_1D


def profile_1d(y):
    """Evaluate (U, u, b) of the default 1D profile."""
    p = default_profile_1d()
    return p.U(y), p.u(y), p.b(y)


def profile_radial(r, spec):
    """Evaluate (U, u, b) of a radial profile."""
    return spec.U(r), spec.u(r), spec.b(r)


def profile_ode_residual(profile, y, h):
    """Signed residual of the self-similar profile ODE at y, by fourth-order
    central differences of the piecewise profile with stencil width h.

    For radial profiles the point must satisfy |y| > 2h so the stencil stays
    off the origin.
    """
    y = np.asarray(y, dtype=float)
    pts = y[..., None] + _OFFSETS * h
    u = profile.u(pts)
    bu = profile.b(pts) * u
    du = u @ _D1 / h
    d2u = u @ _D2 / (h * h)
    dbu = bu @ _D1 / h
    u0 = u[..., 2]
    if profile.kind == "line":
        res = profile.alpha * u0 + 0.5 * y * du + dbu - d2u
    else:
        d = profile.d
        div_yu = y * du + d * u0
        div_bu = dbu + (d - 1.0) * bu[..., 2] / y
        lap = d2u + (d - 1.0) * du / y
        res = (profile.alpha - d / 2.0) * u0 + 0.5 * div_yu + div_bu - lap
    return res if res.ndim else float(res)


def selfsim_solution(profile, t, x):
    """Self-similar solution value (1-t)^(-alpha) u(x / sqrt(1-t))."""
    if t >= 1.0:
        raise ValueError("solution is defined for t < 1 only")
    tau = 1.0 - t
    return tau ** -profile.alpha * profile.u(np.asarray(x) / math.sqrt(tau))


def selfsim_velocity(profile, t, x):
    """Self-similar drift value (1-t)^(-1/2) b(x / sqrt(1-t))."""
    if t >= 1.0:
        raise ValueError("drift is defined for t < 1 only")
    tau = 1.0 - t
    return profile.b(np.asarray(x) / math.sqrt(tau)) / math.sqrt(tau)
