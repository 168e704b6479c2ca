"""hesslab: an exact tensor-algebra laboratory for Hessian-metric obstructions.

Everything computes over exact rationals by default: the quadratic map from
symmetric 3-tensors to algebraic curvature tensors, its image-dimension
census, curvature identities that cut out the image, a brute-force identity
miner, a constructive 3D Ricci inverse, jet-dimension counting, and the
planar involutivity test.
"""

__version__ = "0.1.0"

from .cartan import (CartanReport, SymbolParameters, TwoDSym3, cartan_test,
                     prolonged_symbol_matrix, scalar_relation_residual,
                     solve_a, symbol_matrix)
from .curvature import (CurvTensor, RicciTensor, curvature_basis,
                        curvature_space_dim, cyclic_sum, random_curvature,
                        ricci, scalar_curvature)
from .hessmap import (ImageRankReport, image_rank_census, rho, rho2,
                      rho_jacobian)
from .identities import (bianchi_residual, cubic_identity, pontryagin_form,
                         pontryagin_quadratic)
from .jets import (JetReport, crossover, jet_dim_hessian_data, jet_dim_metric)
from .miner import (ContractionPattern, MinedIdentityBasis, enumerate_patterns,
                    evaluate_pattern, mine)
from .ricci3d import (solve_from_eigenvalues, solve_from_ricci,
                      solve_isotropic)
from .serialize import tensor_from_json, tensor_to_json
from .tensor import Sym3Tensor, Tensor

__all__ = [
    "__version__",
    "CartanReport", "SymbolParameters", "TwoDSym3", "cartan_test",
    "prolonged_symbol_matrix", "scalar_relation_residual", "solve_a",
    "symbol_matrix",
    "CurvTensor", "RicciTensor", "curvature_basis", "curvature_space_dim",
    "cyclic_sum", "random_curvature", "ricci", "scalar_curvature",
    "ImageRankReport", "image_rank_census", "rho", "rho2", "rho_jacobian",
    "bianchi_residual", "cubic_identity", "pontryagin_form",
    "pontryagin_quadratic",
    "JetReport", "crossover", "jet_dim_hessian_data", "jet_dim_metric",
    "ContractionPattern", "MinedIdentityBasis", "enumerate_patterns",
    "evaluate_pattern", "mine",
    "solve_from_eigenvalues", "solve_from_ricci", "solve_isotropic",
    "tensor_from_json", "tensor_to_json",
    "Sym3Tensor", "Tensor",
]
