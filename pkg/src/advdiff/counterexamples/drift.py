"""Velocity-field descriptors: a family tag plus parameters, evaluable at
any (t, x) and serializable to JSON for reproducible runs."""

import json
from dataclasses import dataclass, field

import numpy as np

from .gaussian import GaussianPerturbationSpec, gaussian_velocity
from .profiles import (Profile1D, ProfileRadial, build_profile_radial,
                       default_profile_1d, selfsim_velocity)

SCHEMA_VERSION = 1

ZERO = "zero"
GAUSSIAN = "gaussian"
SELFSIM_1D = "selfsim1d"
SELFSIM_RADIAL = "selfsimradial"
CUSTOM = "custom"


@dataclass
class VelocityFieldSpec:
    """Closed-form drift descriptor.

    ``sample(t, x)`` returns the signed drift component at the points ``x``
    (coordinates on a line grid, radii on a radial grid).  All three blow-up
    families are singular at t=1, where evaluation is forbidden.
    """

    family: str
    params: object = None
    singular_at_one: bool = False
    label: str = ""

    @classmethod
    def zero(cls):
        return cls(ZERO)

    @classmethod
    def gaussian(cls, spec):
        return cls(GAUSSIAN, spec, singular_at_one=True)

    @classmethod
    def selfsim1d(cls, profile=None):
        return cls(SELFSIM_1D, profile or default_profile_1d(),
                   singular_at_one=True)

    @classmethod
    def selfsim_radial(cls, d_or_profile):
        prof = (d_or_profile if isinstance(d_or_profile, ProfileRadial)
                else build_profile_radial(d_or_profile))
        return cls(SELFSIM_RADIAL, prof, singular_at_one=True)

    @classmethod
    def custom(cls, fn, singular_at_one=False, label="custom"):
        return cls(CUSTOM, fn, singular_at_one=singular_at_one, label=label)

    def sample(self, t, x):
        if self.singular_at_one and t >= 1.0:
            raise ValueError("drift is singular at t=1")
        x = np.asarray(x, dtype=float)
        if self.family == ZERO:
            return np.zeros_like(x)
        if self.family == GAUSSIAN:
            return gaussian_velocity(self.params, t, x)
        if self.family in (SELFSIM_1D, SELFSIM_RADIAL):
            return selfsim_velocity(self.params, t, x)
        if self.family == CUSTOM:
            return np.asarray(self.params(t, x), dtype=float)
        raise ValueError(f"unknown drift family {self.family!r}")

    def sup_speed(self, t, x):
        v = self.sample(t, x)
        return float(np.abs(v).max()) if v.size else 0.0

    def to_json(self):
        doc = {"schema_version": SCHEMA_VERSION, "family": self.family,
               "singular_at_one": self.singular_at_one}
        if self.family == GAUSSIAN:
            s = self.params
            doc["params"] = {"d": s.d, "gamma": s.gamma, "beta": s.beta,
                             "datum_cutoff_radius": s.datum_cutoff_radius,
                             "datum_budget": s.datum_budget,
                             "untruncated": s.untruncated}
        elif self.family in (SELFSIM_1D, SELFSIM_RADIAL):
            doc["params"] = json.loads(self.params.to_json())
        elif self.family == CUSTOM:
            raise ValueError("custom drifts are not serializable")
        return json.dumps(doc, sort_keys=True)


def drift_from_json(text):
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("unsupported drift schema version")
    family = doc["family"]
    if family == ZERO:
        return VelocityFieldSpec.zero()
    if family == GAUSSIAN:
        p = doc["params"]
        return VelocityFieldSpec.gaussian(GaussianPerturbationSpec(
            d=p["d"], gamma=p["gamma"], beta=p["beta"],
            datum_cutoff_radius=p["datum_cutoff_radius"],
            datum_budget=p["datum_budget"],
            untruncated=p.get("untruncated", False)))
    if family == SELFSIM_1D:
        p = doc["params"]
        prof = Profile1D(alpha=p["alpha"], tail_exponent=p["tail_exponent"],
                         tail_coefficient=p["tail_coefficient"],
                         junction=p["junction"],
                         match_order=p["match_order"],
                         ext_coeffs=np.array(p["extension_coefficients"]))
        return VelocityFieldSpec.selfsim1d(prof)
    if family == SELFSIM_RADIAL:
        p = doc["params"]
        prof = ProfileRadial(d=p["d"], match_order=p["match_order"],
                             L=p["L"])
        return VelocityFieldSpec.selfsim_radial(prof)
    raise ValueError(f"unknown drift family {family!r}")
