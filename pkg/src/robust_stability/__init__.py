"""Stability certificates for robust linear programs with polytopal uncertainty.

Submodules:
  geometry  - polytope primitives (projection, Hausdorff, inradius)
  lp        - dense deterministic simplex solver and LP-derived checks
  model     - robust / LSIO problem data model and system metrics
  stability - explicit Lipschitz constants and value-stability checks
  transform - RO-LSIO transformation identity checks
  setdist   - eps-optimal sets and truncated set metrics
  harness   - CLI, file formats, experiment suites
"""

from .config import Tolerances, default_tolerances
from .geometry import HSet, Polytope
from .model import IndexedRow, LsioProblem, RobustProblem
from .report import CertificateReport

__all__ = [
    "CertificateReport",
    "HSet",
    "IndexedRow",
    "LsioProblem",
    "Polytope",
    "RobustProblem",
    "Tolerances",
    "default_tolerances",
]

__version__ = "0.1.0"
