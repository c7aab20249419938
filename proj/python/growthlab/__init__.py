"""Random graph growth model: samplers, exact moments, limit laws."""

from ._growthlab import (
    check_martingales,
    check_moments,
    check_sampler_equivalence,
    cov_kernel,
    early_poisson_cumulative,
    edge_probability,
    erlang_cdf,
    exact_distribution,
    first_edge_limit_cdf,
    first_edge_limit_moment,
    first_edge_survival,
    last_stage_mean,
    mean_edges,
    mean_table,
    neg_hypergeom_pmf,
    phi,
    psi,
    second_difference_mean,
    simulate_insertion,
    simulate_limit_diffusion,
    simulate_pool,
    simulate_urn,
    variance_table,
)

__all__ = [
    "check_martingales",
    "check_moments",
    "check_sampler_equivalence",
    "cov_kernel",
    "early_poisson_cumulative",
    "edge_probability",
    "erlang_cdf",
    "exact_distribution",
    "first_edge_limit_cdf",
    "first_edge_limit_moment",
    "first_edge_survival",
    "last_stage_mean",
    "mean_edges",
    "mean_table",
    "neg_hypergeom_pmf",
    "phi",
    "psi",
    "second_difference_mean",
    "simulate_insertion",
    "simulate_limit_diffusion",
    "simulate_pool",
    "simulate_urn",
    "variance_table",
]
