#pragma once

#include <cstdint>
#include <vector>

#include "growthlab/model.hpp"
#include "growthlab/oracle.hpp"

namespace growthlab {

// Exact mean and variance of X_n for n = 1..N, indexed by n-1.
struct MomentTable {
    std::int64_t n_vertices = 0;
    std::vector<double> mu;
    std::vector<double> sigma2;
};

struct RationalMomentTable {
    std::int64_t n_vertices = 0;
    std::vector<Rational> mu;
    std::vector<Rational> sigma2;
};

// Closed-form mean: C(n,2) + (n-1)(N-n) - N(N-n+1) * sum_{j<n} 1/(N-j+1).
// The three terms are O(N^2 log N) and cancel to O(N^2); the sum and the
// combination are carried in double-double arithmetic.
double mean_edges(std::int64_t n_total, std::int64_t n);

// Mean via the recursion mu_{n+1} = mu_n + (C(n,2) - mu_n)/(N-n+1).
std::vector<double> mean_table(std::int64_t n_total);

// mu_{n+1} - mu_n in closed form.
double mean_diff(std::int64_t n_total, std::int64_t n);

// mu_{n+1} - 2 mu_n + mu_{n-1} = (n-1)/(N-n+1).
double second_difference_mean(std::int64_t n_total, std::int64_t n);

std::vector<double> variance_table_recursion(std::int64_t n_total);
std::vector<double> variance_table_closed(std::int64_t n_total);

// Recursion-based table; mean and variance.
MomentTable moment_table(std::int64_t n_total);

// Exact rational tables (recursion route and closed-form route).
RationalMomentTable moment_table_rational(std::int64_t n_total);
std::vector<Rational> mean_table_closed_rational(std::int64_t n_total);
std::vector<Rational> variance_table_closed_rational(std::int64_t n_total);

// E[C(n,2) - X_n]^2 via the three-term expression, O(n).
double second_moment_virtual(std::int64_t n_total, std::int64_t n);

// Compensator C_n = sum_{j<n} (C(j,2) - X_j)/(N-j+1) along a path;
// X_n - C_n is a martingale.
std::vector<double> compensator(const Trajectory& traj);

// P[xi_N > n]: survival of the first edge time, log-space product.
double first_edge_survival(std::int64_t n_total, std::int64_t n);

// E[Delta X_{N+1}] = N (h_N - 1).
double last_stage_mean(std::int64_t n_total);

double harmonic_number(std::int64_t n);

struct IncrementMoments {
    double mean = 0.0;
    double variance = 0.0;
};
IncrementMoments conditional_increment_moments(std::int64_t total, std::int64_t white);

}  // namespace growthlab
