"""Half-plane invasion percolation: simulation kernel, box forest, stationary
constructions, exact laws, and Monte Carlo verification campaigns."""

from ._ipcsim import (
    Box,
    HarvestResult,
    Interval,
    IpcError,
    Pond,
    StabilizedWindow,
    WindowRun,
    backward_trace,
    borel_pmf,
    cayley_distance_pmf,
    dual_inverse,
    dual_m,
    forward_max_process,
    geometric_pmf,
    harvest_ponds,
    list_estimands,
    pgw_size_pmf,
    phi_pmf,
    pond_size_given_height,
    q_map,
    run_estimand,
    run_window,
    stabilize,
    theta,
    theta_prime,
)

__all__ = [
    "Box",
    "HarvestResult",
    "Interval",
    "IpcError",
    "Pond",
    "StabilizedWindow",
    "WindowRun",
    "backward_trace",
    "borel_pmf",
    "cayley_distance_pmf",
    "dual_inverse",
    "dual_m",
    "forward_max_process",
    "geometric_pmf",
    "harvest_ponds",
    "list_estimands",
    "pgw_size_pmf",
    "phi_pmf",
    "pond_size_given_height",
    "q_map",
    "run_estimand",
    "run_window",
    "stabilize",
    "theta",
    "theta_prime",
]
