"""quiverlab: exact-arithmetic quiver/matrix mutation, universal constructions,
plabic graphs, and verifiable embedding certificates."""

from .analysis import (
    ClassReport,
    SignCoherenceReport,
    SignCoherenceViolation,
    c_vector_matrix,
    check_sign_coherence,
    find_full_subquiver,
    mutation_class_bfs,
    probe_two_universal,
)
from .canonical import canonical_form, canonical_key, is_isomorphic
from .constructions import (
    CORE_MARKED,
    DOUBLE_FOUR_CYCLE,
    EXTENDED_SOMOS4,
    GluingSpec,
    RecoveryPlan,
    RecoveryStep,
    apply_recovery,
    core_by_name,
    d_universal_matrix,
    d_universal_symmetrizer,
    degree3_reduce,
    glue_universal,
    named_quiver,
    pair_copy_indices,
)
from .drawing import (
    Crossing,
    Drawing,
    DrawnArrow,
    PlanarQuiver,
    Point,
    detect_crossings,
    matrix_of_drawing,
    planar_universal,
    resolve_crossings,
    resolve_crossings_drawing,
    universal_drawing,
)
from .errors import (
    AlreadyFramed,
    BadParameters,
    ConditionsViolated,
    EmptyIndexSet,
    FrozenVertex,
    HasSourceOrSink,
    IndexOutOfRange,
    InvalidSpec,
    NonGenericDrawing,
    NonZeroDiagonal,
    NotApplicable,
    NotSymmetrizable,
    QuiverLabError,
    SchemaError,
    SignIncoherentPair,
    SizeMismatch,
    SymmetrizerMismatch,
    TargetUnreachable,
    UnknownName,
    UnknownSession,
)
from .matrix import (
    ExchangeMatrix,
    MutationSequence,
    Symmetrizer,
    arrow_count,
    find_symmetrizer,
    framed,
    h_factor,
    mutate,
    mutate_seq,
    new_matrix,
    permuted,
    restrict,
)
from .plabic import (
    PlabicGraph,
    augment_to_conditions,
    conditions_report,
    flip_move,
    is_plabic_isomorphic,
    plabic_canonical_key,
    plabic_from_quiver,
    quiver_of,
    square_move,
    universal_plabic,
)
from .serialize import (
    certificate_from_obj,
    certificate_to_obj,
    detect_kind,
    dumps_canonical,
    loads,
    matrix_from_obj,
    matrix_to_dot,
    matrix_to_obj,
    plabic_from_obj,
    plabic_to_dot,
    plabic_to_obj,
    planar_from_obj,
    planar_to_obj,
)
from .solver import (
    EmbeddingCertificate,
    ScheduleTable,
    VerificationResult,
    build_schedule,
    embed_matrix,
    embed_quiver,
    verify_certificate,
)

__version__ = "0.1.0"
