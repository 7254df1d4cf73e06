"""Perfect periodic sequences and arrays with mutually orthogonal columns.

Exact arithmetic over roots of unity is the source of truth everywhere;
float evaluation rides along as an advisory cross-check.
"""

__version__ = "0.1.0"

from .aop import (
    AopVerdict,
    aop_implies_perfect,
    check_aop,
    check_condition_1,
    check_condition_2,
    is_perfect_array,
    is_perfect_projection,
    is_perfect_sequence,
    perfect_array_projection_check,
)
from .correlation import (
    CorrelationProfile,
    autocorrelate,
    autocorrelate_2d,
    crosscorrelate,
    decomposition_check,
    decomposition_check_all,
    projection_autocorrelate,
    projection_sum_check,
    projection_sum_check_all,
)
from .cyclotomic import ConcordanceAudit, CyclotomicInt, audit
from .indexfn import (
    FlooredIndex,
    PolyIndex,
    column_duplication_witness,
    frank_array,
    frank_index,
    frank_sequence,
    generate_floored_array,
    generate_poly_array,
    index_entry,
    index_periodicity_check,
    poly_eval,
)
from .quaternion import (
    QuaternionSequence,
    QuatUnit,
    quat_autocorrelate,
    quat_is_perfect,
    structure_check,
)
from .scatter import (
    BiQuadraticSpec,
    CollapseReport,
    ScatterTrace,
    collapse_check,
    decompose_term,
    fractional_dependence_survey,
    trace_crosscorrelation,
    write_trace_csv,
)
from .search import (
    BudgetExceeded,
    SearchReport,
    SearchSpec,
    enumerate_floored,
    enumerate_poly,
    enumerate_raw,
    run_search,
)
from .seqmodel import (
    PhaseArray,
    PhaseSequence,
    ProjectionSequence,
    column_sum,
    flatten,
    row_sum,
    unflatten,
)

__all__ = [
    "__version__",
    "AopVerdict",
    "BiQuadraticSpec",
    "BudgetExceeded",
    "CollapseReport",
    "ConcordanceAudit",
    "CorrelationProfile",
    "CyclotomicInt",
    "FlooredIndex",
    "PhaseArray",
    "PhaseSequence",
    "PolyIndex",
    "ProjectionSequence",
    "QuatUnit",
    "QuaternionSequence",
    "ScatterTrace",
    "SearchReport",
    "SearchSpec",
    "aop_implies_perfect",
    "audit",
    "autocorrelate",
    "autocorrelate_2d",
    "check_aop",
    "check_condition_1",
    "check_condition_2",
    "collapse_check",
    "column_duplication_witness",
    "column_sum",
    "crosscorrelate",
    "decompose_term",
    "decomposition_check",
    "decomposition_check_all",
    "enumerate_floored",
    "enumerate_poly",
    "enumerate_raw",
    "flatten",
    "fractional_dependence_survey",
    "frank_array",
    "frank_index",
    "frank_sequence",
    "generate_floored_array",
    "generate_poly_array",
    "index_entry",
    "is_perfect_array",
    "is_perfect_projection",
    "is_perfect_sequence",
    "index_periodicity_check",
    "perfect_array_projection_check",
    "poly_eval",
    "projection_autocorrelate",
    "projection_sum_check",
    "projection_sum_check_all",
    "quat_autocorrelate",
    "quat_is_perfect",
    "row_sum",
    "run_search",
    "structure_check",
    "trace_crosscorrelation",
    "unflatten",
    "write_trace_csv",
]
