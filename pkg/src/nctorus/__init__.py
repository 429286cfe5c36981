"""Computations in the irrational rotation algebra A_lam.

The algebra is generated by unitaries U, V with ``U V = exp(2 pi i lam) V U``.
"""

from .algebra import (
    NCTElement,
    RotationParameter,
    add,
    adjoint,
    generators,
    l1_norm,
    monomial,
    multiply,
    trace,
)
from .dynamics import (
    LeafTrace,
    Orbit,
    birkhoff_average,
    discrepancy,
    leaf_trace,
    orbit,
    three_gap_stats,
    transverse_measure_estimate,
)
from .errors import NCTorusError
from .ktheory import (
    CircleFunction,
    K0Class,
    MatrixProjection,
    build_rieffel_projection,
    canonical_parameter,
    grothendieck_difference,
    k0_from_trace,
    morita_equivalent,
    projection_defect,
    rank_classify,
    trace_range_sample,
)
from .representations import (
    TruncatedRep,
    WeylPair,
    commutator_trace_check,
    operator_norm_lower_bound,
    represent,
    truncated_rep,
    weyl_pair_rational,
)
from .spectral import (
    GapLabel,
    SpectrumSample,
    butterfly_dataset,
    gap_labels,
    harper_matrix,
    integrated_density_of_states,
    spectrum_sweep,
)

__version__ = "0.1.0"
