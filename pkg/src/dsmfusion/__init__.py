"""Evidence combination over hyper-power sets.

Library layout:

  lattice    canonical propositions (free distributive lattice) and u(X)
  exprparse  expression grammar shared by the CLI and scenario files
  bba        mass assignments, belief and plausibility
  model      integrity constraints, equivalence classes, compression
  rules      DSm classic/hybrid rules, DST baselines, Bayesian mixture
  dynamic    staged fusion sessions with frame growth and re-constraining
  cli        command-line interface
"""

from . import errors
from .bba import MassAssignment, bel, complement, pl, vacuous
from .dynamic import (
    FusionSession,
    RestoreReport,
    Stage,
    embed,
    embed_proposition,
    restore_check,
    run_session,
)
from .exprparse import parse, roundtrip
from .lattice import (
    Atom,
    ENUMERATION_LIMIT,
    Frame,
    Proposition,
    atom_universe,
    build_frame,
    conjoin,
    disjoin,
    empty,
    enumerate_hpset,
    from_generators,
    leq,
    minimal_parts,
    singleton,
    to_expression,
    total_ignorance,
    u_of,
)
from .model import (
    EquivClass,
    HybridModel,
    build_model,
    compress,
    encoding_matrix,
    free_model,
    phi,
    reduce,
    shafer_model,
    survivors,
)
from .rules import (
    HybridBreakdown,
    MixtureSpec,
    RULE_NAMES,
    bayesian_mixture,
    dempster,
    dsm_classic,
    dsm_hybrid,
    dubois_prade,
    lefevre_combine,
    smets,
    yager,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
