"""Exact homological algebra and deformation rings for modules and complexes over bound quiver algebras."""

__version__ = "0.1.0"

from .linalg import GF, GF2, QQ, Field, Mat  # noqa: E402
from .algebra import (BoundQuiverAlgebra, TensorAlgebra, build_algebra, linear_quiver_algebra,  # noqa: E402
                      nakayama_from_admissible_sequence, truncated_polynomial)
from .modules import Morphism, Representation, direct_sum, hom_basis, indecomposable_projective  # noqa: E402
from .homological import (decompose, ext_dim, is_gorenstein_projective, projective_cover, stable_hom,  # noqa: E402
                          string_module, syzygy)
from .complexes import (BoundedComplex, ChainMap, cohomology, cone, hom_derived_dim,  # noqa: E402
                        hom_singularity_dim, is_perfect, proj_resolve_complex, shift)
from .artin import ArtinLocalAlgebra, SmallExtension, artin_quotient, dual_numbers, truncated_ring  # noqa: E402
from .deform import (ModuleLift, enumerate_deformations, extend_lift, lifts_isomorphic, tangent_dim,  # noqa: E402
                     versal_presentation)
from .morita import (Bimodule, bimodule_tensor, check_singular_equivalence, projdim, transport,  # noqa: E402
                     verify_p_tensor_projective, verify_transport_invariance)

__all__ = [
    "__version__", "GF", "GF2", "QQ", "Field", "Mat", "BoundQuiverAlgebra", "TensorAlgebra", "build_algebra",
    "linear_quiver_algebra", "nakayama_from_admissible_sequence", "truncated_polynomial", "Morphism",
    "Representation", "direct_sum", "hom_basis", "indecomposable_projective", "decompose", "ext_dim",
    "is_gorenstein_projective", "projective_cover", "stable_hom", "string_module", "syzygy", "BoundedComplex",
    "ChainMap", "cohomology", "cone", "hom_derived_dim", "hom_singularity_dim", "is_perfect",
    "proj_resolve_complex", "shift", "ArtinLocalAlgebra", "SmallExtension", "artin_quotient", "dual_numbers",
    "truncated_ring", "ModuleLift", "enumerate_deformations", "extend_lift", "lifts_isomorphic", "tangent_dim",
    "versal_presentation", "Bimodule", "bimodule_tensor", "check_singular_equivalence", "projdim", "transport",
    "verify_p_tensor_projective", "verify_transport_invariance",
]
