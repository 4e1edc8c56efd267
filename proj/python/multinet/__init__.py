"""Multiplex network embedding: random walks, skip-gram and layer reconstruction."""

from ._core import (
    EdgeOperator,
    Embedding,
    Error,
    EvalReport,
    InvalidStart,
    IoError,
    MultiplexGraph,
    NumericalError,
    OutOfRangeError,
    ParseError,
    ValidationError,
    WalkCorpus,
    WalkStrategy,
    auroc,
    collapse,
    edge_feature,
    generate_corpus,
    load_corpus,
    load_embeddings,
    load_multiplex,
    parse_multiplex,
    parse_operator,
    parse_strategy,
    planted_multiplex,
    run_reconstruction,
    save_multiplex,
    strengths,
    train,
    transition_row,
)

__version__ = "0.1.0"
