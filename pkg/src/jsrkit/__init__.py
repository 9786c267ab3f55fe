"""Joint spectral radius of finite matrix families by the invariant polytope algorithm.

The usual entry points are :func:`certify_jsr` (dominant product plus an
invariant body), :func:`build_barabanov` (an extremal norm from the body of
the transposed family) and :func:`classify_law` for switching laws.
"""

__version__ = "0.1.0"

from .errors import JsrError  # noqa: E402
from .family import MatrixFamily, family_from_json, load_family  # noqa: E402
from .multi import BalancingVector, find_balancing, run_algorithm2  # noqa: E402
from .norm import (  # noqa: E402
    BarabanovNorm,
    build_barabanov,
    certify,
    eval_norm,
    irreducibility_check,
)
from .pipeline import JsrResult, certify_jsr  # noqa: E402
from .polytope import (  # noqa: E402
    Budget,
    Halted,
    InvariantBody,
    NotDominantEvidence,
    body_from_json,
    prune_redundant,
    run_algorithm1,
)
from .positive import (  # noqa: E402
    monotone_barabanov,
    positive_irreducibility,
    run_monotone_algorithm1,
)
from .search import (  # noqa: E402
    CandidateProduct,
    cyclic_primitive_normalize,
    enumerate_candidates,
    make_candidate,
)
from .trajectory import (  # noqa: E402
    SwitchingLaw,
    classify_law,
    decay_certificate,
    max_growth_trajectory,
    simulate,
)

__all__ = [
    "BalancingVector", "BarabanovNorm", "Budget", "CandidateProduct", "Halted",
    "InvariantBody", "JsrError", "JsrResult", "MatrixFamily", "NotDominantEvidence",
    "SwitchingLaw", "body_from_json", "build_barabanov", "certify", "certify_jsr",
    "classify_law", "cyclic_primitive_normalize", "decay_certificate",
    "enumerate_candidates", "eval_norm", "family_from_json", "find_balancing",
    "irreducibility_check", "load_family", "make_candidate", "max_growth_trajectory",
    "monotone_barabanov", "positive_irreducibility", "prune_redundant", "run_algorithm1",
    "run_algorithm2", "run_monotone_algorithm1", "simulate",
]
