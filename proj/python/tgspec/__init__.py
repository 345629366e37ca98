from ._tgspec import (
    DomainError,
    advise,
    benchmark_error,
    build_grid,
    eval_series,
    forward_map,
    forward_transform,
    gauss_rule,
    integrate_to_all_nodes,
    inverse_map,
    lambda_norm,
    solve,
)

__all__ = [
    "DomainError",
    "advise",
    "benchmark_error",
    "build_grid",
    "eval_series",
    "forward_map",
    "forward_transform",
    "gauss_rule",
    "integrate_to_all_nodes",
    "inverse_map",
    "lambda_norm",
    "solve",
]
