"""Certified computation with polynomial knots.

Polynomial knots are smooth polynomial embeddings of the line, identified
with their finite-support coefficient tables.  The package certifies the
embedding conditions exactly, computes the coefficientwise metric family,
constructs the explicit topology-comparison witnesses, and traces the
deformation retractions onto linear knots and the basepoint sequence.
"""

from .core import (
    CoefficientTable,
    Certified,
    Inconclusive,
    Index,
    PolynomialKnot,
    Refuted,
    SequencePoint,
    Uncertified,
    embed_linear,
    evaluate,
    extend_from_dim,
    is_certified,
    make_knot,
    project_linear,
    truncate_to_dim,
)
from .certifier import (
    BivariateSymmetricPoly,
    CertCertificate,
    certify_embedding,
    certify_knot,
    difference_quotients,
    sampling_oracle,
    sturm_real_roots,
    verify_refutation,
)
from .metrics import (
    BallSpec,
    Membership,
    MetricTag,
    Space,
    ball_contains,
    ball_contains_tri,
    distance,
    norm_monotonicity_check,
    seq_distance,
)
from .homotopy import (
    HomotopyTrace,
    TraceKind,
    TraceSample,
    cone_homotopy,
    contract_trace,
    linearize_homotopy,
    shift_homotopy,
)
from .witnesses import (
    BoxOpenSpec,
    HarmonicRule,
    OpenInterval,
    ProductOpenSpec,
    StrictnessInstance,
    StrictnessKind,
    SymmetricPowerRule,
    open_contains,
    strictness_instance,
    witness_inf_in_r,
    witness_product_in_inf,
    witness_r_in_s,
    witness_s_in_box,
)
from .scalars import Enclosure, Scalar, local_precision

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
