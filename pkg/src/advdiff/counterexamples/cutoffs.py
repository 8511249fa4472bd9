"""Polynomial cutoff primitives.

``cutoff_phi`` is the radial truncation profile used by the Gaussian
construction: identically 1 up to 1, identically 0 from 2 on, quintic
smoothstep descent in between.  Its Lipschitz constant is 15/8 <= 2.

``smoothstep_c4`` (degree 9, C^4) is used where the finite-difference
residual checks need more junction smoothness than the quintic provides.
"""

import numpy as np

# descending-power coefficients of s(x) = 6x^5 - 15x^4 + 10x^3 and of the
# degree-9 step S(x) = 70x^9 - 315x^8 + 540x^7 - 420x^6 + 126x^5
_S5 = np.poly1d([6.0, -15.0, 10.0, 0.0, 0.0, 0.0])
_S9 = np.poly1d([70.0, -315.0, 540.0, -420.0, 126.0, 0.0, 0.0, 0.0, 0.0, 0.0])
_DERIVS = {}


def _poly_step(base, x, deriv):
    key = (id(base), deriv)
    c = _DERIVS.get(key)
    if c is None:
        c = np.polyder(base, deriv) if deriv else base
        _DERIVS[key] = c
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x < 1.0)
    out = np.where(x >= 1.0, 1.0 if deriv == 0 else 0.0, 0.0)
    out = np.where(inside, c(np.clip(x, 0.0, 1.0)), out)
    return out


def smoothstep(x, deriv=0):
    """C^2 quintic step: 0 for x<=0, 1 for x>=1 (or its deriv-th derivative)."""
    return _poly_step(_S5, x, deriv)


def smoothstep_c4(x, deriv=0):
    """C^4 degree-9 step: 0 for x<=0, 1 for x>=1 (or its derivative)."""
    return _poly_step(_S9, x, deriv)


def cutoff_phi(y):
    """Decreasing cutoff: 1 on [0,1], 0 on [2,inf), quintic descent between."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ValueError("cutoff argument must be nonnegative")
    out = 1.0 - smoothstep(y - 1.0)
    if out.ndim == 0:
        return float(out)
    return out
