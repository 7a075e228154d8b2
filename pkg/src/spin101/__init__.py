"""Verification toolkit for the 33-ray Peres configuration and the spin axioms.

Core modules:

* exactgeom - exact quadratic-integer geometry: rays, orthogonality graphs,
  the built-in 33-ray set and its pair completions;
* coloring  - 101-coloring search, refutation traces, minimum-violation
  counts, DIMACS export;
* quantum   - spin-1 measurement probabilities, misalignment error bounds,
  the twinned singlet, seeded Monte Carlo;
* janus     - consistency-model simulators (twinned sessions and the
  hexagonal toy universe);
* service   - FastAPI app exposing all of the above;
* cli       - thin command-line client of the service.
"""

__version__ = "0.1.0"

from .exactgeom import (
    OrthGraph,
    Quad2,
    Ray,
    RaySet,
    build_peres33,
    canonicalize,
    complete_lone_pairs,
    complete_pair,
    dot,
    orthogonality_graph,
)
from .coloring import (
    Coloring101,
    SearchResult,
    ViolationCount,
    export_cnf,
    min_violations,
    propagate,
    search_101,
    verify_lemma_trace,
)
from .quantum import (
    NoiseModel,
    monte_carlo_spin,
    projector,
    seq_prob,
    singlet_joint,
    spin_noncanonical_prob,
    threshold_bound,
    twin_mismatch_prob,
)

__all__ = [
    "Coloring101",
    "NoiseModel",
    "OrthGraph",
    "Quad2",
    "Ray",
    "RaySet",
    "SearchResult",
    "ViolationCount",
    "__version__",
    "build_peres33",
    "canonicalize",
    "complete_lone_pairs",
    "complete_pair",
    "dot",
    "export_cnf",
    "min_violations",
    "monte_carlo_spin",
    "orthogonality_graph",
    "projector",
    "propagate",
    "search_101",
    "seq_prob",
    "singlet_joint",
    "spin_noncanonical_prob",
    "threshold_bound",
    "twin_mismatch_prob",
    "verify_lemma_trace",
]
