"""Fractional Jacobi spectral collocation for weakly singular Volterra
integral equations."""

from ._core import (
    ConvergenceRecord,
    ConvergenceReport,
    QuadratureRule,
    RateFit,
    Solution,
    bessel_series,
    beta_fn,
    catalog_ids,
    expr_eval,
    frac_jacobi_eval,
    gauss_jacobi_rule,
    lebesgue_constant,
    ln_gamma,
    solve_catalog,
    solve_expr,
    sweep_catalog,
    write_csv,
)

__all__ = [
    "ConvergenceRecord",
    "ConvergenceReport",
    "QuadratureRule",
    "RateFit",
    "Solution",
    "bessel_series",
    "beta_fn",
    "catalog_ids",
    "expr_eval",
    "frac_jacobi_eval",
    "gauss_jacobi_rule",
    "lebesgue_constant",
    "ln_gamma",
    "solve_catalog",
    "solve_expr",
    "sweep_catalog",
    "write_csv",
]
