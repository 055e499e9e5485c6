"""Explicit steady Couette-Taylor flows in a cylindrical annulus."""
from .errors import (ConfigurationError, ConsistencyError, ConvergenceError, DomainError,
                     SolverError)
from .flows import (FlowFamily, FlowSpec, couette_profile, evaluate, poiseuille_profile,
                    pressure, velocity, vorticity)
from .functional_bounds import (BoundSet, bound_set, discrete_rayleigh, phi_asymptotics,
                                v_epsilon_rayleigh)
from .geometry import Annulus, CylPoint, CylVector, cart_to_cyl, cyl_to_cart, peak_radius
from .spectral import Grid1D, sl_scan, solve_uz_dirichlet, solve_uz_robin
from .stability import (StabilityReport, certify, h_function, m_constant,
                        perturbation_matrix, upsilon)
from .verify import (BoundaryReport, ResidualReport, boundary_check, counterexample_field,
                     navier_slip_identity, ns_residual_closed, ns_residual_fd)

__version__ = "0.1.0"
