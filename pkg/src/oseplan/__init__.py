"""oseplan: knowledge-based milling process planning.

Faces of a sampled part are classified into machinable geometry types,
matched against an OSE knowledge base (geometry family x extended cutting
conditions x cutting-set type), grouped into setups and sequences, and
resolved into a documented process plan with full check traces.
"""

from .automation_report import (
    InfeasibleConditionsError,
    ResolvedConditions,
    SynthesisTable,
    generate_documentation,
    optimize_conditions,
    parse_plan_document,
    report_statistics,
)
from .match_engine import (
    Bindings,
    Candidate,
    eval_check,
    face_in_family,
    geometric_compliance,
    manufacturing_compliance,
    match_face,
    select_candidate,
)
from .ose_db import (
    Check,
    CuttingSet,
    OSEDatabase,
    audit_database,
    classify_tool,
    validate_db,
    what_if_expand,
)
from .part_model import Box3, Part, Point3, SampledFace, bounding_box, validate_part
from .pipeline import PipelineResult, run_pipeline
from .setup_plan import ProcessPlan, Sequence, Setup, build_setups, group_sequences, plan_skeleton
from .transform import (
    FaceAttributes,
    GeometryType,
    Tolerances,
    classify_face,
    compute_openness,
    transform_part,
)

__version__ = "0.1.0"
