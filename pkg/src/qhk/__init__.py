"""Second homology of finite quandles: chain-level computation, closed forms
for Alexander quandles, and group-cohomological cross-checks."""

from .alexander import AlexanderSpec, exterior_model, phi_family, qx_model, takasaki
from .config import Limits, ResourceLimitError
from .homology import h1, h2_quandle, h2_quandle_cohomology_dim, h2_rack
from .linalg import FinGenAb, IntMatrix, smith_normal_form
from .quandle import FiniteQuandle, alexander, dihedral, transposition_quandle, validate

__version__ = "0.1.0"

__all__ = [
    "AlexanderSpec",
    "FinGenAb",
    "FiniteQuandle",
    "IntMatrix",
    "Limits",
    "ResourceLimitError",
    "alexander",
    "dihedral",
    "exterior_model",
    "h1",
    "h2_quandle",
    "h2_quandle_cohomology_dim",
    "h2_rack",
    "phi_family",
    "qx_model",
    "smith_normal_form",
    "takasaki",
    "transposition_quandle",
    "validate",
]
