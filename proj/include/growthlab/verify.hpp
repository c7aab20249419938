#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "growthlab/stats.hpp"

namespace growthlab {

// Thresholds are configuration; defaults follow the documented checks.
struct VerifyOptions {
    std::uint64_t master_seed = 0;
    int threads = 0;  // 0 = hardware concurrency
    double z_threshold = 3.0;
    double tv_threshold = 0.01;
    double chi2_p_threshold = 0.001;
    double ks_p_threshold = 0.01;
    double fluid_gap_threshold = 0.05;
    double ks_first_edge_threshold = 0.02;
    double relative_tolerance_first_edge = 0.05;
    double poisson_bin_tolerance = 0.05;
    double poisson_corr_threshold = 0.05;
    double fluctuation_var_tolerance = 0.15;
    double fluctuation_cov_tolerance = 0.20;
    // Asymptotic thresholds for the terminal regime; the check adds a
    // finite-size allowance of order 1/log N (log-rate convergence).
    double last_stage_ks_threshold = 0.1;
    double last_stage_corr_threshold = 0.1;
    double last_stage_erlang_tolerance = 0.10;
    double gamma_dirichlet_ks_threshold = 0.01;
};

// Empirical moments of X_n at quarter points vs the exact tables.
std::vector<GofReport> check_moments(std::int64_t n_vertices, std::int64_t reps,
                                     const VerifyOptions& opts);

// Joint-law agreement of the three samplers with the DP oracle.
std::vector<GofReport> check_sampler_equivalence(std::int64_t n_vertices, std::int64_t reps,
                                                 const VerifyOptions& opts);

// Zero-mean checks of the Doob-Meyer martingale and the centered
// scaled martingale, plus the second-difference identity.
std::vector<GofReport> check_martingales(std::int64_t n_vertices, std::int64_t reps,
                                         const VerifyOptions& opts);

// Mean sup-distance of 2 X_{tN}/N^2 from phi, decreasing along n_list.
std::vector<GofReport> check_fluid_limit(std::span<const std::int64_t> n_list, std::int64_t reps,
                                         const VerifyOptions& opts);

// First-edge time: KS against the limit law, third moment, and the
// exact survival formula. Early-exit simulation, O(xi) per replicate.
std::vector<GofReport> check_first_edge(std::int64_t n_vertices, std::int64_t reps,
                                        const VerifyOptions& opts);

// Early Poisson regime on the N^{1/3} clock, bins (0,2) and (2,T).
std::vector<GofReport> check_early_poisson(std::int64_t n_vertices, double horizon,
                                           std::int64_t reps, const VerifyOptions& opts);

// Gaussian fluctuations: variance/covariance against the limit kernel
// and normality at t = 0.5.
std::vector<GofReport> check_gaussian_fluctuations(std::int64_t n_vertices, std::int64_t reps,
                                                   std::span<const double> t_grid,
                                                   const VerifyOptions& opts);

// Terminal regime: exact mean identity, Exp(1) marginals, pairwise
// correlations, Erlang partial sums, and the gamma-Dirichlet sampler.
std::vector<GofReport> check_last_stage(std::int64_t n_vertices, std::int64_t reps,
                                        std::int64_t tail, const VerifyOptions& opts);

// Runs fn(rep) for rep = 0..reps-1, across threads.
void for_each_replicate(std::int64_t reps, int threads,
                        const std::function<void(std::int64_t)>& fn);

}  // namespace growthlab
