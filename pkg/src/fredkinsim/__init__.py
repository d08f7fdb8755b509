"""fredkinsim: driven three-mode Fredkin-interaction system simulator.

Truncated-Fock-space linear algebra, closed-form cat-state dynamics,
logarithmic negativity, joint Wigner tomography, and Lindblad open-system
evolution in the displacement representation, with per-figure presets and
deterministic CSV output.
"""

__version__ = "0.1.0"

from .fock import (
    DensityMatrix,
    DimensionError,
    FockOperator,
    ModeDims,
    StateVector,
    TruncationError,
    annihilation,
    basis_state,
    coherent_state,
    creation,
    displacement,
    expectation,
    fock_state,
    identity,
    mode_operator,
    number,
    parity,
    product_state,
    tensor3,
    unitarity_defect,
)
from .model import (
    ApproxMargins,
    FrameParams,
    SingularFrameError,
    SystemParams,
    build_H1_app,
    build_H1_ext,
    build_H_app,
    build_H_ext,
    build_H_I,
    check_approx,
    derive_frame,
)
from .analytic import (
    ApproxSolution,
    CatState,
    DegenerateCatError,
    ExactSolution,
    approx_solution,
    cat_overlap,
    cat_to_state,
    detection_probs,
    exact_solution,
    fidelity_F,
    fidelity_Fpm,
    make_cat,
    materialize_state,
)
from .entanglement import (
    TwoModeDensity,
    TwoModeState,
    log_negativity,
    log_negativity_pure,
    partial_transpose_b,
    partial_transpose_c,
    trace_norm,
)
from .wigner import (
    PhasePoint,
    WignerSlice,
    displaced_parity,
    joint_wigner,
    line_cut,
    plane_slice,
)
from .lindblad import (
    DiagnosticError,
    DisplacementTrack,
    DissipatorSpec,
    StepSizeError,
    Trajectory,
    displacement_track,
    evolve,
    fidelity_to_pure,
    initial_plus_density,
    lindblad_rhs,
    open_fidelities,
    open_negativity,
    project_mode_a,
)
from .config import ConfigError, ExperimentConfig, load_config
from .presets import PRESETS, get_preset
from .runner import RunManifest, run
