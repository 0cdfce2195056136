"""Exact root-system computations for first-eigenvalue extremality on classical flag manifolds."""

from __future__ import annotations

from .extremality import (
    ExtremalityReport,
    Verdict,
    check_extremality,
    check_product,
    mu,
    pairing_residual,
    pairing_sum,
    survey_full_flags,
)
from .flag import (
    ConsistencyError,
    FlagManifold,
    TRootClass,
    TRootDecomposition,
    build_flag,
    project_to_center,
    su_3n_flag,
    t_root_decomposition,
)
from .roots import DomainError, RootSystem, build_root_system, inner
from .spectrum import (
    ChamberError,
    SpectrumReport,
    build_algebra,
    casimir_on_torus,
    ke_parameter,
    metric_gram,
    metric_parameter,
)
from .su3 import maximize_lambda1_on_curve, su3_lambda1_scan

__version__ = "0.1.0"

__all__ = [
    "ChamberError",
    "ConsistencyError",
    "DomainError",
    "ExtremalityReport",
    "FlagManifold",
    "RootSystem",
    "SpectrumReport",
    "TRootClass",
    "TRootDecomposition",
    "Verdict",
    "build_algebra",
    "build_flag",
    "build_root_system",
    "casimir_on_torus",
    "check_extremality",
    "check_product",
    "inner",
    "ke_parameter",
    "maximize_lambda1_on_curve",
    "metric_gram",
    "metric_parameter",
    "mu",
    "pairing_residual",
    "pairing_sum",
    "project_to_center",
    "su3_lambda1_scan",
    "su_3n_flag",
    "survey_full_flags",
    "t_root_decomposition",
]
