"""Biharmonic distance queries on undirected graphs.

Node arguments are dense ids 0..n-1; use ``Graph.find`` and
``Graph.original_id`` to move between them and the ids in an edge-list file.
"""

from ._bhd import (
    DataError,
    DenseOracle,
    Error,
    Estimate,
    Graph,
    NodalEstimate,
    NumericError,
    ParameterError,
    SpectralInfo,
    TimeoutError,
    bernoulli_subset,
    complete,
    cycle,
    erdos_renyi,
    estimate_gamma2,
    estimate_lambda,
    estimate_spectral,
    make_spectral,
    pairwise_length,
    path,
    push,
    push_plus,
    snb,
    snb_plus,
    star,
    stw,
    swf,
    truncated,
    universal_length,
)

__all__ = [name for name in dir() if not name.startswith("_")]
