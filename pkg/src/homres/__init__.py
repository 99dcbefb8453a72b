"""Homological resolutions of bounded complexes of free abelian groups.

The main entry points are :func:`homological_resolution`, the lifting
functions and :func:`hyper_derived_tensor`; everything is exact integer
arithmetic.
"""

from .complexes import (ChainComplex, ChainHomotopy, ChainMap, check_chain_map,
                        check_homotopy_witness, homology_at, induced_map_on_homology,
                        is_quasi_iso, validate_complex)
from .derived import (DerivedTensorResult, derived_tensor_complex, hyper_derived_tensor,
                      tensor_complexes, tor)
from .errors import DimensionError, InvariantBreach, LiftingError
from .groups import FgAbGroup, GroupMorphism, cokernel_group
from .lifting import (homotopy_between_lifts, homotopy_inverse, homotopy_through,
                      induced_resolution_map, lift_through, lift_through_quasi_iso)
from .linalg import (IntMatrix, SmithDecomposition, determinant, in_column_span, kernel_basis,
                     smith_normal_form, solve_linear)
from .multicomplex import (Multicomplex, MulticomplexHomotopy, MulticomplexMap,
                           check_mc_homotopy, check_mc_map, embed_complex, embed_map,
                           find_homotopy, is_homological, total_complex, total_homotopy,
                           total_map, validate_multicomplex)
from .resolution import (AugmentedRowResolution, HomologicalResolution, free_resolution,
                         homological_resolution, pad_resolution, validate_resolution)

__all__ = [
    "AugmentedRowResolution", "ChainComplex", "ChainHomotopy", "ChainMap", "DerivedTensorResult",
    "DimensionError", "FgAbGroup", "GroupMorphism", "HomologicalResolution", "IntMatrix",
    "InvariantBreach", "LiftingError", "Multicomplex", "MulticomplexHomotopy", "MulticomplexMap",
    "SmithDecomposition", "check_chain_map", "check_homotopy_witness", "check_mc_homotopy",
    "check_mc_map", "cokernel_group", "derived_tensor_complex", "determinant", "embed_complex",
    "embed_map", "find_homotopy", "free_resolution", "homological_resolution", "homology_at",
    "homotopy_between_lifts", "homotopy_inverse", "homotopy_through", "hyper_derived_tensor",
    "in_column_span", "induced_map_on_homology", "induced_resolution_map", "is_homological",
    "is_quasi_iso", "kernel_basis", "lift_through", "lift_through_quasi_iso", "pad_resolution",
    "smith_normal_form", "solve_linear", "tensor_complexes", "tor", "total_complex",
    "total_homotopy", "total_map", "validate_complex", "validate_multicomplex",
    "validate_resolution",
]
