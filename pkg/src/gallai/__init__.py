"""Verification and search toolkit for rainbow-path Ramsey thresholds."""

from gallai.canonical import (
    MODE_VERTEX_AND_COLOR,
    MODE_VERTEX_ONLY,
    canonical_coloring,
    canonical_form,
    coloring_from_key,
)
from gallai.constructions import (
    BUILDERS,
    BlowupSpec,
    Part,
    blowup,
    build_named,
    construction_grid,
    doubling,
    lower_bound_witness,
    pentagon_blowup,
    r35_witness,
    sporadic,
    star_augmented,
)
from gallai.detectors import (
    Embedding,
    find_mono_copy,
    find_mono_copy_in_color,
    find_rainbow_path,
    iter_rainbow_paths,
    max_matching,
)
from gallai.formulas import (
    FormulaInconsistency,
    GrResult,
    RamseyEntry,
    evaluate,
    min_order_with_pair_count,
    pq_decompose,
    ramsey_known,
)
from gallai.graphs import (
    ColoredComplete,
    TargetGraph,
    TargetProperties,
    UnsupportedSizeError,
    edge_count,
    edge_index,
    pairs,
    parse_hspec,
    render_hspec,
    target_properties,
)
from gallai.search import (
    CheckOutcome,
    GrSearchResult,
    WitnessCertificate,
    WitnessFailure,
    brute_force_colorings,
    check_n,
    compute_gr,
    rainbow_p5free_classes,
    replay_certificate,
    verify_witness,
)
from gallai.structure import (
    GallaiPartition,
    P4Report,
    StructureReport,
    TheoremViolation,
    classify_p4free,
    classify_p5free,
    enumerate_p5free,
    find_gallai_partition,
    parallel_map,
    resolve_threads,
    verify_gallai_partition,
)

__version__ = "0.1.0"

__all__ = [
    "MODE_VERTEX_AND_COLOR",
    "MODE_VERTEX_ONLY",
    "canonical_coloring",
    "canonical_form",
    "coloring_from_key",
    "BUILDERS",
    "BlowupSpec",
    "Part",
    "blowup",
    "build_named",
    "construction_grid",
    "doubling",
    "lower_bound_witness",
    "pentagon_blowup",
    "r35_witness",
    "sporadic",
    "star_augmented",
    "Embedding",
    "find_mono_copy",
    "find_mono_copy_in_color",
    "find_rainbow_path",
    "iter_rainbow_paths",
    "max_matching",
    "FormulaInconsistency",
    "GrResult",
    "RamseyEntry",
    "evaluate",
    "min_order_with_pair_count",
    "pq_decompose",
    "ramsey_known",
    "ColoredComplete",
    "TargetGraph",
    "TargetProperties",
    "UnsupportedSizeError",
    "edge_count",
    "edge_index",
    "pairs",
    "parse_hspec",
    "render_hspec",
    "target_properties",
    "CheckOutcome",
    "GrSearchResult",
    "WitnessCertificate",
    "WitnessFailure",
    "brute_force_colorings",
    "check_n",
    "compute_gr",
    "rainbow_p5free_classes",
    "replay_certificate",
    "verify_witness",
    "GallaiPartition",
    "P4Report",
    "StructureReport",
    "TheoremViolation",
    "classify_p4free",
    "classify_p5free",
    "enumerate_p5free",
    "find_gallai_partition",
    "parallel_map",
    "resolve_threads",
    "verify_gallai_partition",
    "__version__",
]
