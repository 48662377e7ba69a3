from .constraints import ConstraintSystem, build_constraints, center_by_stratum
from .discrepancy import (
    DISCREPANCIES,
    RHO_TABLE,
    Discrepancy,
    DiscrepancyKind,
    EmpiricalLikelihood,
    ExpTilting,
    Quadratic,
    get_discrepancy,
    rho_table_check,
)
from .solvers import CalibrationResult, calibrate, solve_dual, solve_quadratic


__all__ = [
    "DISCREPANCIES",
    "RHO_TABLE",
    "CalibrationResult",
    "ConstraintSystem",
    "Discrepancy",
    "DiscrepancyKind",
    "EmpiricalLikelihood",
    "ExpTilting",
    "Quadratic",
    "build_constraints",
    "calibrate",
    "center_by_stratum",
    "get_discrepancy",
    "rho_table_check",
    "solve_dual",
    "solve_quadratic",
]
