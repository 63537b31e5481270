"""Semiclassical transport of photon polarization in slowly varying media."""

from .core import (Helicity, RayState, SphericalMomentum, from_spherical, pauli_dot,
                   to_spherical)
from .dynamics import (IntegratorConfig, PhysicsParams, Status, Trajectory, eom_rhs,
                       hamiltonian, initial_state, integrate, trace_pair)
from .functionals import (ConstantColatitudeCircle, GreatCircle, Loxodrome, MomentumPath,
                          berry_phase, hall_shift, kinematic_path, solid_angle)
from .gauge import (berry_curvature, connection_abelian, connection_nonabelian,
                    diagonalize, field_strength, unitary)
from .medium import Homogeneous, LinearGradient, ParabolicGrin, grad_n, refractive_index
from .scenario import Scenario, load_scenario
from .trajio import read_momentum_path, read_trajectory, write_trajectory

__version__ = "0.1.0"
