"""Exact set-function spaces on the Boolean lattice under matroid circuit constraints."""

from .constraints import (CIRCUIT_ONLY, MOEBIUS_SUPPORT, ConstraintMatrix, DimensionReport,
                          Verdict, alpha, build_constraint_matrix, kernel_dimension,
                          membership, rank_exact)
from .cpwl import (BraidCone, CompatiblePL, ContinuityCertificate, PerConeAffine, PLFunction,
                   ProbeReport, compatibility_probe, compose_pl, lovasz_eval, realize_braid)
from .errors import SchemaError, SizeCapError
from .lattice import (EXACT, FLOAT, MoebiusSpectrum, SetFunction, indicator_vector,
                      interaction_spectrum, max_interaction_order, moebius_transform,
                      pointwise, zeta_transform)
from .matroid import (CircuitMatroid, UniformMatroid, matroid_from_json,
                      validate_circuit_axioms)
from .netanalyze import (ExpressivityReport, Layer, MlpSpec, analyze_network, mlp_eval,
                         separation_witness)
from .structure import (BasisCoefficients, LowOrderTable, decompose, delta,
                        extend_from_low_order, phi, project, reconstruct,
                        triple_relation_check)

__version__ = "0.1.0"

__all__ = [
    "alpha", "analyze_network", "BasisCoefficients", "BraidCone",
    "build_constraint_matrix", "CIRCUIT_ONLY", "CircuitMatroid", "compatibility_probe",
    "CompatiblePL", "compose_pl", "ConstraintMatrix", "ContinuityCertificate", "decompose",
    "delta", "DimensionReport", "EXACT", "ExpressivityReport", "extend_from_low_order",
    "FLOAT", "indicator_vector", "interaction_spectrum", "kernel_dimension", "Layer",
    "lovasz_eval", "LowOrderTable", "matroid_from_json", "max_interaction_order",
    "membership", "mlp_eval", "MlpSpec", "MOEBIUS_SUPPORT", "moebius_transform",
    "MoebiusSpectrum", "PerConeAffine", "phi", "PLFunction", "pointwise", "ProbeReport",
    "project", "rank_exact", "realize_braid", "reconstruct", "SchemaError",
    "separation_witness", "SetFunction", "SizeCapError", "triple_relation_check",
    "UniformMatroid", "validate_circuit_axioms", "Verdict", "zeta_transform",
]
