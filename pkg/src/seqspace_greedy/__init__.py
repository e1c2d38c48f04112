"""Norms, greedy approximation and identification criteria for Nakano,
Orlicz, Musielak flow, Marcinkiewicz, Lorentz and weak-Lorentz sequence
spaces."""

from .criteria import (
    BlockBasis,
    CriterionVerdict,
    MusielakWitness,
    NakanoClassification,
    build_block_basis,
    condition_c_check,
    musielak_density_witness_check,
    musielak_witness_check,
    nakano_space_verdict,
    verify_block_isometry,
)
from .errors import (
    ArityError,
    BracketError,
    BudgetError,
    ConvergenceError,
    DegenerateFlowError,
    DescriptorError,
    DomainError,
    HypothesisError,
    SeqSpaceError,
    ShapeError,
    WeightShapeError,
)
from .greedy import (
    DemocracyTable,
    GreedyReport,
    best_nterm_error,
    democracy_functions,
    dominance_ratio,
    embedding_constants,
    greedy_ratio,
    greedy_report,
    greedy_step,
    right_dominance_ratio,
    space_norm,
)
from .modular import (
    FlowSpace,
    NakanoSpace,
    OrliczSpace,
    bridge_check,
    conjugate_exponents,
    holder_ratio,
    luxemburg_norm,
    modular,
)
from .orlicz import (
    DualG,
    Flow,
    Fpa,
    Power,
    Table,
    delta2_estimate,
    evaluate,
    flow,
    fundamental_function,
    multiplicative_convexity_check,
)
from .rearrangement import (
    LorentzSpace,
    MarcinkiewiczSpace,
    WeakLorentzSpace,
    Weight,
    block_fundamental,
    decreasing_rearrangement,
    lorentz_d1_norm,
    marcinkiewicz_norm,
    recip_diff_weight,
    v_weight,
    weak_lorentz_norm,
    weight_properties,
)
from .sequences import (
    ConstantTail,
    ConvergentTail,
    CountTail,
    DivergentTail,
    EnumeratedCount,
    ExpDecayCount,
    ExponentSequence,
    InverseLogCount,
    OscillatingTail,
    ScaleSequence,
)
from .vectors import FiniteVector

__version__ = "0.1.0"

__all__ = [
    "BlockBasis",
    "CriterionVerdict",
    "MusielakWitness",
    "NakanoClassification",
    "build_block_basis",
    "condition_c_check",
    "musielak_density_witness_check",
    "musielak_witness_check",
    "nakano_space_verdict",
    "verify_block_isometry",
    "ArityError",
    "BracketError",
    "BudgetError",
    "ConvergenceError",
    "DegenerateFlowError",
    "DescriptorError",
    "DomainError",
    "HypothesisError",
    "SeqSpaceError",
    "ShapeError",
    "WeightShapeError",
    "DemocracyTable",
    "GreedyReport",
    "best_nterm_error",
    "democracy_functions",
    "dominance_ratio",
    "embedding_constants",
    "greedy_ratio",
    "greedy_report",
    "greedy_step",
    "right_dominance_ratio",
    "space_norm",
    "FlowSpace",
    "NakanoSpace",
    "OrliczSpace",
    "bridge_check",
    "conjugate_exponents",
    "holder_ratio",
    "luxemburg_norm",
    "modular",
    "DualG",
    "Flow",
    "Fpa",
    "Power",
    "Table",
    "delta2_estimate",
    "evaluate",
    "flow",
    "fundamental_function",
    "multiplicative_convexity_check",
    "LorentzSpace",
    "MarcinkiewiczSpace",
    "WeakLorentzSpace",
    "Weight",
    "block_fundamental",
    "decreasing_rearrangement",
    "lorentz_d1_norm",
    "marcinkiewicz_norm",
    "recip_diff_weight",
    "v_weight",
    "weak_lorentz_norm",
    "weight_properties",
    "ConstantTail",
    "ConvergentTail",
    "CountTail",
    "DivergentTail",
    "EnumeratedCount",
    "ExpDecayCount",
    "ExponentSequence",
    "InverseLogCount",
    "OscillatingTail",
    "ScaleSequence",
    "FiniteVector",
]
