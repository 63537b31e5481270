"""Scenario documents: one JSON object describing a single ray experiment.

Keys (``schema_version`` 1; see ``scenario.schema.json``)::

    medium      {type: homogeneous | linear_gradient | parabolic_grin, n0, g, beta, axis}
    ray         {x0, direction, helicities}
    physics     {hbar_eff, kappa, lambda_enabled, adiabatic_threshold}
    integrator  {rtol, atol, t_max, max_step, sample_interval}
    output      {prefix}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import jsonschema
import numpy as np

from .core import Helicity, RayState
from .dynamics import IntegratorConfig, PhysicsParams, initial_state
from .errors import (MediumDomainError, ScenarioParseError, ScenarioSchemaError,
                     ScenarioValidationError)
from .medium import Homogeneous, LinearGradient, MediumProfile, ParabolicGrin

UNIT_TOL = 1e-6


def schema() -> dict:
    text = resources.files(__package__).joinpath("scenario.schema.json").read_text()
    return json.loads(text)


_VALIDATOR = jsonschema.Draft202012Validator(schema())


@dataclass(frozen=True)
class Scenario:
    medium: MediumProfile
    x0: np.ndarray
    direction: np.ndarray
    helicities: tuple[Helicity, ...]
    physics: PhysicsParams
    integrator: IntegratorConfig
    prefix: str = "trajectory"

    def initial_state(self, lam=Helicity.PLUS) -> RayState:
        return initial_state(self.medium, self.x0, self.direction, lam)


def _key_path(err) -> str:
    path = [str(p) for p in err.absolute_path]
    if err.validator == "additionalProperties" and isinstance(err.instance, dict):
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(set(err.instance) - allowed)
        if extra:
            path.append(extra[0])
    elif err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance]
        if missing:
            path.append(missing[0])
    return ".".join(path) or "<root>"


def _medium(doc: dict) -> MediumProfile:
    kind = doc["type"]
    if kind == "homogeneous":
        return Homogeneous(doc["n0"])
    if kind == "linear_gradient":
        return LinearGradient(doc["n0"], tuple(doc["g"]))
    axis = doc.get("axis", [0.0, 0.0, 1.0])
    if np.linalg.norm(axis) == 0:
        raise ScenarioValidationError("axis must be nonzero", "medium.axis")
    return ParabolicGrin(doc["n0"], doc["beta"], tuple(axis))


def load_scenario(text: str, default_prefix: str = "trajectory") -> Scenario:
    """Parse and validate a scenario; raises a :class:`ScenarioError` subclass."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ScenarioSchemaError("scenario must be a JSON object", "<root>")
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ScenarioSchemaError(err.message, _key_path(err))

    medium = _medium(doc["medium"])
    ray = doc["ray"]
    x0 = np.array(ray.get("x0", [0.0, 0.0, 0.0]), dtype=float)
    direction = np.array(ray["direction"], dtype=float)
    norm = np.linalg.norm(direction)
    if abs(norm - 1.0) > UNIT_TOL:
        raise ScenarioValidationError(f"not a unit vector (norm {norm:.6g})", "ray.direction")
    direction = direction / norm
    try:
        medium.index_and_gradient(*x0)
    except MediumDomainError:
        raise ScenarioValidationError("refractive index is not positive at x0", "ray.x0") from None
    helicities = tuple(Helicity(h) for h in sorted(ray.get("helicities", [1, -1]), reverse=True))

    phys = doc.get("physics", {})
    if phys.get("hbar_eff", 0.0) < 0:
        raise ScenarioValidationError("must be non-negative", "physics.hbar_eff")
    physics = PhysicsParams(**phys)

    integ = doc.get("integrator", {})
    for key, value in integ.items():
        if not value > 0:
            raise ScenarioValidationError("must be positive", f"integrator.{key}")
    integrator = IntegratorConfig(**integ)

    prefix = doc.get("output", {}).get("prefix", default_prefix)
    return Scenario(medium, x0, direction, helicities, physics, integrator, prefix)


def bundled(name: str) -> str:
    """Text of a scenario or fixture shipped in ``spinhall/data``."""
    return resources.files(__package__).joinpath("data", name).read_text()
