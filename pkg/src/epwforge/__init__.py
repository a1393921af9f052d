"""epwforge: exact Lagrangian degeneracy sextics and trivector orbit geometry.

The package works over exact scalars only (rationals or odd prime fields).
Entry points:

* :mod:`epwforge.exterior` -- the exterior algebra of a 6-space and the
  wedge pairing on degree-3 forms;
* :mod:`epwforge.orbits` -- divisor kernels, the three trivector strata,
  the two fibrations of the divisible orbit and its tangent geometry;
* :mod:`epwforge.lagrangian` -- isotropic 10-space constructors;
* :mod:`epwforge.epw` -- the degree-6 degeneracy equation, rank censuses,
  decomposable loci and the projective-dual transport;
* :mod:`epwforge.numerology` -- the exact lattice arithmetic checks;
* :mod:`epwforge.verify` -- the self-certification suite (also available
  as ``epwforge verify``).
"""

from .fields import GF, QQ, field_from_json, field_from_spec
from .exterior import DualVector, KVector, contract, symplectic_form, volume_dual, wedge
from .linalg import Subspace
from .orbits import OrbitLabel, classify, divisor_kernel, fiber_F, fiber_Fprime, pi1, pi2
from .lagrangian import (
    Lagrangian,
    complete_to_lagrangian,
    dual_transport,
    is_isotropic,
    lagrangian_with_planes,
    random_lagrangian,
)
from .multipoly import MultiPoly
from .epw import (
    DegenerateSexticError,
    EPWSextic,
    StratumReport,
    dual_sextic,
    epw_matrix,
    epw_rank_at,
    epw_sextic,
    gradient_point,
    sextic_vanishing_census,
    theta_contains,
    theta_enumerate,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateSexticError",
    "DualVector",
    "EPWSextic",
    "GF",
    "KVector",
    "Lagrangian",
    "MultiPoly",
    "OrbitLabel",
    "QQ",
    "StratumReport",
    "Subspace",
    "classify",
    "complete_to_lagrangian",
    "contract",
    "divisor_kernel",
    "dual_sextic",
    "dual_transport",
    "epw_matrix",
    "epw_rank_at",
    "epw_sextic",
    "field_from_json",
    "field_from_spec",
    "fiber_F",
    "fiber_Fprime",
    "gradient_point",
    "is_isotropic",
    "lagrangian_with_planes",
    "pi1",
    "pi2",
    "random_lagrangian",
    "sextic_vanishing_census",
    "symplectic_form",
    "theta_contains",
    "theta_enumerate",
    "volume_dual",
    "wedge",
]
