"""Generalized quantum observables with a non-normalized Born rule."""

from .born import (
    OutcomeDistribution,
    event_probability,
    prob_coeff,
    prob_effects,
    prob_povm,
    sample_outcomes,
)
from .errors import *  # noqa: F401,F403
from .linalg import (
    HermitianEigensystem,
    adjoint,
    eig_hermitian,
    expand_in_frame,
    hs_inner,
    is_hermitian,
    is_psd,
    trace,
)
from .observables import (
    EffectFamily,
    ObliqueFrame,
    Povm,
    Pvm,
    coarse_grain,
    frame_effects,
    frame_projectors,
    is_povm,
    pvm_from_orthonormal,
)
from .representability import (
    AffinityWitness,
    RepresentabilityVerdict,
    Status,
    decide,
    find_affinity_witness,
    reconstruct_candidate,
    verify_candidate,
)
from .states import (
    DensityOperator,
    GeneralizedState,
    normalize,
    pure_state,
    random_density,
    tomographic_frame,
)
from .transition import TransitionMatrix, frame_transition, is_doubly_stochastic, transition_matrix

__version__ = "0.1.0"
