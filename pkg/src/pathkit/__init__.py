"""Executable computational paths over the untyped lambda calculus.

Layers: :mod:`pathkit.term` (terms and beta-eta reduction), :mod:`pathkit.path`
(paths as equality witnesses), :mod:`pathkit.rewrite` (rw-rules on paths),
:mod:`pathkit.twocell` (rw-sequences as 2-cells) and :mod:`pathkit.cli`.
"""

from .errors import (
    EndpointDrift,
    FuelExhausted,
    Incomposable,
    InvalidPath,
    JunctionMismatch,
    NoMatch,
    NotBetaEtaEqual,
    OracleBudgetExhausted,
    PathkitError,
    SequenceError,
    ShapeMismatch,
    StepMismatch,
    TermSyntaxError,
)
from .generate import GeneratorConfig, PathGenerator, gen_path, gen_term, sample_rng
from .path import (
    BetaStep,
    EtaStep,
    Mu,
    Nu,
    Path,
    Rho,
    Sigma,
    Tau,
    Xi,
    endpoints,
    parse_path,
    path_between,
    print_path,
    show_path,
    validate_path,
)
from .report import CheckReport
from .rewrite import (
    COMPLETED_RULES,
    GROUPOID_RULES,
    RULE_SETS,
    RwRule,
    RwStepRecord,
    check_groupoid_laws,
    normalize_rw,
    rw_apply,
    rw_eq,
    rw_redexes,
)
from .term import (
    App,
    Bound,
    Lam,
    Term,
    Var,
    alpha_eq,
    contractions,
    normalize_term,
    parse_term,
    show_term,
    substitute,
)
from .twocell import (
    RwSequence,
    cd2_canonicalize,
    check_interchange,
    check_pentagon,
    check_triangle,
    coherence_component,
    hcomp,
    identity,
    infer_sequence,
    mk_sequence,
    oracle_verdict,
    reverse2,
    rw2_eq,
    vcomp,
)

__version__ = "0.1.0"
