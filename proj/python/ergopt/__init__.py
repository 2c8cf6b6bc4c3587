"""Numerical ergodic optimization on one-dimensional maps.

The heavy lifting lives in the C++ extension ``ergopt._core``; this package
re-exports its surface.
"""

from ._core import (  # noqa: F401
    Map,
    MapDomainError,
    NotFoundError,
    Observable,
    ObservableParseError,
    admissible_cover,
    beta_periodic,
    beta_report,
    birkhoff_sum,
    domination_constant,
    gamma_estimate,
    lip_constant,
    locking_experiment,
    parse_observable,
    periodic_orbits,
    subaction,
    subordination_check,
    support_candidate,
    tpo_sweep_csv,
    verify_markov,
    verify_subaction,
)

__all__ = [
    "Map",
    "Observable",
    "MapDomainError",
    "NotFoundError",
    "ObservableParseError",
    "admissible_cover",
    "beta_periodic",
    "beta_report",
    "birkhoff_sum",
    "domination_constant",
    "gamma_estimate",
    "lip_constant",
    "locking_experiment",
    "parse_observable",
    "periodic_orbits",
    "subaction",
    "subordination_check",
    "support_candidate",
    "tpo_sweep_csv",
    "verify_markov",
    "verify_subaction",
]
