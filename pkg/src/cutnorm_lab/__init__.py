"""Cut norms, Schur-multiplier cuts and step graphons."""

__version__ = "0.1.0"

from .matrix import (K_G_HIGH, K_G_LOW, PI, Matrix, closed_form_tri_cut_norm, harmonic,
                     identity, kronecker, make_An, make_An_tensor, ones, schur,
                     triangular_cut, triangular_mask, zeros)
from .exact import (CutWitness, EnumerationCapExceeded, NormBracket, SignWitness,
                    cut_norm_bracket, cut_norm_exact, inf_one_bracket, inf_one_norm_exact,
                    operator_norm)
from .approx import (RelaxationConfig, RelaxationState, cut_norm_lower_heuristic,
                     relax_inf_one, round_to_signs)
from .graphon import (StepGraphon, banded_cut, corner_embed, graphon_cut_norm, l1_normalize,
                      refine, step_graphon_from_matrix, tensor_graphon, triangular_cut_graphon)

__all__ = [
    "K_G_HIGH", "K_G_LOW", "PI", "Matrix", "closed_form_tri_cut_norm", "harmonic", "identity",
    "kronecker", "make_An", "make_An_tensor", "ones", "schur", "triangular_cut",
    "triangular_mask", "zeros",
    "CutWitness", "EnumerationCapExceeded", "NormBracket", "SignWitness", "cut_norm_bracket",
    "cut_norm_exact", "inf_one_bracket", "inf_one_norm_exact", "operator_norm",
    "RelaxationConfig", "RelaxationState", "cut_norm_lower_heuristic", "relax_inf_one",
    "round_to_signs",
    "StepGraphon", "banded_cut", "corner_embed", "graphon_cut_norm", "l1_normalize", "refine",
    "step_graphon_from_matrix", "tensor_graphon", "triangular_cut_graphon",
]
