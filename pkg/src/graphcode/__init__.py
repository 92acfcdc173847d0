"""Connectivity codes: families of spanning subgraphs with connected pairwise differences."""

from __future__ import annotations

__version__ = "0.1.0"

from .codes import (
    ConnectivityCode,
    EdgeAssignment,
    VerifyReport,
    code_from_assignment,
    codeword,
    verify_linear,
    verify_pairwise,
)
from .graph import EdgeSubset, Graph, edge_connectivity, min_cut

__all__ = [
    "ConnectivityCode",
    "EdgeAssignment",
    "EdgeSubset",
    "Graph",
    "VerifyReport",
    "__version__",
    "code_from_assignment",
    "codeword",
    "edge_connectivity",
    "min_cut",
    "verify_linear",
    "verify_pairwise",
]
