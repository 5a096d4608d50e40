"""Offline disclosure-risk analysis over exported profile corpora."""

from ._leakscope import (
    DiscScores,
    ParetoReport,
    QuerySpec,
    __version__,
    build_dork_query,
    estimate_disc,
    map_bigfive_to_disc,
    pareto_analysis,
    parse_dork_query,
    render_analysis,
    run_pipeline,
    synth_corpus,
    validate_data_file,
)

__all__ = [
    "DiscScores",
    "ParetoReport",
    "QuerySpec",
    "__version__",
    "build_dork_query",
    "estimate_disc",
    "map_bigfive_to_disc",
    "pareto_analysis",
    "parse_dork_query",
    "render_analysis",
    "run_pipeline",
    "synth_corpus",
    "validate_data_file",
]
