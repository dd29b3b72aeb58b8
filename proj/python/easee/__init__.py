"""Exploration guided by action-sequence equivalences.

Typical use::

    import easee
    prior = easee.builtin_omega("cardinal", "2")
    policy = easee.solve_policy(easee.build_graph(prior, 6))
    counts = easee.explore("cardinal", policy, episodes=100, horizon=100, seed=0)
"""

from ._easee import (
    BudgetExceeded,
    EaseeError,
    EmptyReport,
    Environment,
    Graph,
    InfeasibleGraph,
    ParseError,
    Policy,
    Prior,
    UnknownEnv,
    UnknownVariant,
    ValidationError,
    build_graph,
    builtin_omega,
    builtin_variants,
    env_names,
    equivalent,
    explore,
    make_env,
    parse_prior,
    qlearn,
    run_experiment,
    solve_policy,
    summarize_csv,
)

__all__ = [
    "BudgetExceeded",
    "EaseeError",
    "EmptyReport",
    "Environment",
    "Graph",
    "InfeasibleGraph",
    "ParseError",
    "Policy",
    "Prior",
    "UnknownEnv",
    "UnknownVariant",
    "ValidationError",
    "build_graph",
    "builtin_omega",
    "builtin_variants",
    "env_names",
    "equivalent",
    "explore",
    "make_env",
    "parse_prior",
    "qlearn",
    "run_experiment",
    "solve_policy",
    "summarize_csv",
]
