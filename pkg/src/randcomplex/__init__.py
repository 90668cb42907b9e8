"""Random simplicial complexes: uniform-layer and pure random models, with
homology, Euler characteristic, shellability, Cohen-Macaulayness and
evasiveness of the associated monotone Boolean functions."""

from .complex import (
    ResourceError,
    SimplicialComplex,
    alexander_dual,
    count_induced_copies,
    down_closure,
    euler_characteristic,
    f_vector,
    has_complete_skeleton,
    labels_of,
    link,
    mask_of,
)
from .generators import (
    AdmissiblePair,
    check_admissible,
    decompose_bundles,
    free_sets,
    sample_admissible_pair,
    sample_pure_random,
    sample_uniform_layer,
)
from .homology import (
    BettiProfile,
    betti_numbers,
    boundary_matrix,
    count_holes,
    euler_from_betti,
    hole_chain,
    verify_lower_bound,
)

__version__ = "0.1.0"
