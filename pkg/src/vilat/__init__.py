"""Generation, classification and counting of graded vi-lattices."""

from .core import (
    LeveledLattice,
    LevelWidthError,
    MatchOrder,
    NotALattice,
    PreconditionViolation,
    atoms,
    coatoms,
    dual,
    is_vertically_decomposable,
    lattice_from_cover_digraph,
    meet_join_tables,
    necks,
    vertical_2sum,
    vertical_sum,
)
from .canon import (
    are_isomorphic,
    automorphism_generators,
    canonical_form,
    canonical_relabel,
)
from .families import (
    Family,
    consecutive_levels_connected,
    is_distributive,
    is_modular,
    is_semimodular,
    meet_irreducible_count,
)
from .generate import (
    BudgetExceeded,
    GenConfig,
    GenMode,
    GenSummary,
    SearchState,
    dump_states,
    generate,
    length_bound,
    load_states,
    resume,
    split_checkpoints,
)
from .classify import (
    NoNeck,
    NotViLattice,
    PIECE_TYPES,
    SymmetryType,
    classify,
    decompose_at_highest_neck,
    straight_and_crossed,
    two_sum_outcomes,
)
from .counting import (
    BoundCert,
    BoundVerdict,
    CountTable,
    DomainError,
    InconsistentInput,
    WindowTooShort,
    aggregate,
    compose_counts,
    growth_ratios,
    steiner_admissible_k,
    steiner_bound,
    verify_lower_bound,
    vertical_sum_totals,
)
from .digraph6 import MalformedRecord, decode, encode, read_records, write_records
from .tables import (
    CSV_HEADER,
    golden_cert,
    golden_counts,
    load_cert,
    read_count_csv,
    validate_table,
    write_count_csv,
)
from .verify import (
    DualityLedger,
    Verdict,
    classified_counts,
    count_listing,
    cross_check,
    verify_duality,
)

__all__ = [
    "LeveledLattice",
    "LevelWidthError",
    "MatchOrder",
    "NotALattice",
    "PreconditionViolation",
    "atoms",
    "coatoms",
    "dual",
    "is_vertically_decomposable",
    "lattice_from_cover_digraph",
    "meet_join_tables",
    "necks",
    "vertical_2sum",
    "vertical_sum",
    "are_isomorphic",
    "automorphism_generators",
    "canonical_form",
    "canonical_relabel",
    "Family",
    "consecutive_levels_connected",
    "is_distributive",
    "is_modular",
    "is_semimodular",
    "meet_irreducible_count",
    "BudgetExceeded",
    "GenConfig",
    "GenMode",
    "GenSummary",
    "SearchState",
    "dump_states",
    "generate",
    "length_bound",
    "load_states",
    "resume",
    "split_checkpoints",
    "NoNeck",
    "NotViLattice",
    "PIECE_TYPES",
    "SymmetryType",
    "classify",
    "decompose_at_highest_neck",
    "straight_and_crossed",
    "two_sum_outcomes",
    "BoundCert",
    "BoundVerdict",
    "CountTable",
    "DomainError",
    "InconsistentInput",
    "WindowTooShort",
    "aggregate",
    "compose_counts",
    "growth_ratios",
    "steiner_admissible_k",
    "steiner_bound",
    "verify_lower_bound",
    "vertical_sum_totals",
    "MalformedRecord",
    "decode",
    "encode",
    "read_records",
    "write_records",
    "CSV_HEADER",
    "golden_cert",
    "golden_counts",
    "load_cert",
    "read_count_csv",
    "validate_table",
    "write_count_csv",
    "DualityLedger",
    "Verdict",
    "classified_counts",
    "count_listing",
    "cross_check",
    "verify_duality",
]
