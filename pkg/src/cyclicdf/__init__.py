"""Cyclic (v, k, 1) difference families: exhaustive search, multiplier
classification, brute-force certification, and development into Steiner
2-designs."""

from .canon import (
    CanonicalKey,
    DifferenceFamily,
    apply_multiplier,
    canonical_family,
    canonical_form,
    dedup,
    expansion_class_keys,
    is_normalized,
    mirror_block,
    mirror_expand,
    multiplier_automorphisms,
    normalize_block,
    orbit_class_keys,
    unit_generators,
    units,
)
from .catalog import (
    BUILTIN_MULTIPLIER_AUTOMORPHISMS,
    FamilyRecord,
    ParseError,
    builtin_families,
    builtin_keys,
    parse_text,
    read_jsonl,
    render_text,
    write_jsonl,
)
from .designer import (
    CheckResult,
    Design,
    DuplicateDifference,
    InvalidFamilyError,
    MissingDifference,
    PairMultiplyCovered,
    PairUncovered,
    WrongBlockCount,
    WrongBlockSize,
    develop,
    verify_blocks,
    verify_design,
    verify_family,
)
from .engine import (
    DedupMode,
    SearchConfig,
    SearchTask,
    SearchWorkerError,
    b2_range,
    enumerate_families,
    partition,
    run_parallel,
    run_task,
)
from .modring import (
    Admissibility,
    Block,
    CollisionError,
    DiffTracker,
    InvalidParametersError,
    Parameters,
    TrackerUnderflowError,
    classify,
    delta_set,
    required_differences,
    short_block,
    short_deltas,
)
from .oracle import (
    CapExceededError,
    DEFAULT_CAP,
    oracle_class_keys,
    oracle_classes,
    oracle_enumerate,
)

__version__ = "0.1.0"
