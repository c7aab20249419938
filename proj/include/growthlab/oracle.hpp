#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "growthlab/model.hpp"

namespace growthlab {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::int64_t kOracleCap = 12;       // marginal DP
inline constexpr std::int64_t kJointOracleCap = 7;   // full path enumeration

Rational neg_hypergeom_pmf_rational(std::int64_t total, std::int64_t white, std::int64_t ell);

// Exact marginal pmf of X_n for the model with N vertices, as a vector
// indexed by edge count 0..C(n,2). Dynamic program over (hour, edge
// count) with the negative hypergeometric transition kernel.
std::vector<Rational> exact_distribution_rational(std::int64_t n_vertices, std::int64_t n,
                                                  std::int64_t cap = kOracleCap);
std::vector<double> exact_distribution(std::int64_t n_vertices, std::int64_t n,
                                       std::int64_t cap = kOracleCap);

// One transition step of the chain: given the pmf over X_n, returns the
// pmf over X_{n+1}. Exposed for joint-law checks.
std::vector<Rational> oracle_transition(std::int64_t n_vertices, std::int64_t n,
                                        const std::vector<Rational>& pmf_n);

// Exact joint law of the whole path (X_1..X_N); delta_last is implied
// by conservation. Feasible only for small N.
struct PathLaw {
    std::vector<std::vector<std::int64_t>> paths;
    std::vector<Rational> probabilities;
};
PathLaw exact_joint_paths(std::int64_t n_vertices, std::int64_t cap = kJointOracleCap);

Rational oracle_mean(const std::vector<Rational>& pmf);
Rational oracle_variance(const std::vector<Rational>& pmf);

}  // namespace growthlab
