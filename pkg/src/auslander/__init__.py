"""Quiver algebras over F_p, their modules, and the higher Auslander correspondence."""

__version__ = "0.1.0"

from .linalg import DEFAULT_PRIME, PrimeField
from .algebra import (AlgebraError, BasedAlgebra, Quiver, Relation, corner, linear_quiver, opposite, path_algebra,
                      quotient_algebra, trace_ideal)
from .modcat import (Module, ModuleError, ModuleMap, cogenerator, decompose, direct_sum, dualize, hom_basis, hom_dim,
                     injective, is_isomorphic, projective, regular, simple)
from .homology import (DEFAULT_CUTOFF, DimensionResult, dominant_dimension, ext_dim, global_dimension,
                       min_resolution, pk_membership, verify_apt_equivalence, verify_ext_iso)
from .functors import apply_F, endo_algebra
from .tilting import (c_resolution, correspondence_roundtrip, fingerprint, is_cluster_tilting, is_d_auslander,
                      left_approximation, recover_ct, right_approximation)
from .io import load_algebra, load_module
