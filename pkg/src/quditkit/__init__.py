"""Qudit density matrices in the generalized Gell-Mann basis."""

from .basis import (
    DEFAULT_TOL,
    AdjointMatrix,
    GellMannBasis,
    StructureTensors,
    adjoint_of,
    cached_basis,
    cached_tensors,
    compute_tensors,
    generate_basis,
    verify_ff_dd_identity,
    verify_product_rule,
)
from .bipartite import (
    BipartiteState,
    WernerState,
    from_components,
    purity_residuals_qubit,
    purity_residuals_qudit,
    reduced_states,
    to_components,
    werner,
    werner_consistency,
    werner_positivity_scan,
    z_matrix,
)
from .qudit import (
    InvariantSet,
    QuditState,
    UnphysicalStateError,
    entropy,
    from_bloch,
    invariants,
    purity_residuals,
    to_bloch,
    transform,
)
from .qutrit import DiscriminantViolationError, admissible, region_scan, spectrum
from .sympoly import (
    SymPolyReport,
    elementary_from_power,
    positivity_check,
    power_sums,
    trace_powers_from_traceless,
)

__version__ = "0.1.0"
