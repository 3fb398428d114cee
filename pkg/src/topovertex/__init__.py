"""Exact topological-vertex computations on strip geometries.

Laurent-polynomial arithmetic in v = q^(1/2), Schur functions at principal
specializations, the topological vertex and its gluing into generalized-
conifold partition functions, KP tau-function probes, wave functions with
their q-difference equations, and the classical mirror-curve limit.
"""

from .partitions import EMPTY, Partition
from .qalgebra import (
    LaurentPoly,
    MultiSeries,
    PoleError,
    QRational,
    SeriesContext,
    TruncationMismatch,
    bracket,
    substitute_numeric,
)
from .schur import Q_RHO, Spec, VerifyReport, schur_hook, skew_schur, verify_cauchy
from .vertex import topological_vertex, two_leg_forms, verify_cyclic
from .web import (
    BlowUpError,
    BoundaryData,
    C3,
    CONIFOLD,
    StripDiagram,
    calibrate_framing,
    closed_partition_function,
    conifold_alternative,
    glued_partition_function,
    macmahon_series,
    regularized_power_sum,
    verify_strip_oracle,
)
from .hierarchy import (
    c3_generating_function,
    conifold_two_variable,
    general_generating_function,
    hirota_check,
    quantum_dilog,
    tau_coefficients,
)
from .waves import (
    MirrorCurve,
    RouteDisagreement,
    WaveSeries,
    classical_mirror_check,
    mirror_curve,
    product_form_check,
    verify_qdifference,
    verify_recurrence,
    wave_coefficients,
)

__version__ = "0.1.0"
