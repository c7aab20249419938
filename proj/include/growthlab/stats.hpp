#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace growthlab {

struct McEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0;
    std::int64_t reps = 0;
};

McEstimate mc_estimate(std::span<const double> sample);

// Machine-readable verdict of one distributional or moment check.
struct GofReport {
    std::string test;  // KS | chi-square | TV-vs-oracle | moment-z | bound | identity
    std::string name;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::int64_t sample_size = 0;
    bool pass = false;

    nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json reports_to_json(const std::vector<GofReport>& reports);
bool all_pass(const std::vector<GofReport>& reports);

double normal_cdf(double x);
double chi_square_sf(double x, double dof);

// One-sample KS statistic against a continuous cdf (sample is copied
// and sorted internally).
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov p-value with the small-sample correction.
double ks_p_value(double statistic, std::int64_t n);

GofReport ks_test(const std::string& name, std::vector<double> sample,
                  const std::function<double(double)>& cdf, double p_threshold);

// Pearson chi-square of observed counts against expected probabilities;
// consecutive cells with expected count below 5 are pooled.
GofReport chi_square_test(const std::string& name, const std::vector<std::int64_t>& counts,
                          const std::vector<double>& probs, double p_threshold);

// Two-sample chi-square on homogeneous cells, same pooling rule.
GofReport two_sample_chi_square(const std::string& name, const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b, double p_threshold);

// Total variation distance between empirical counts and a pmf.
double tv_distance(const std::vector<std::int64_t>& counts, const std::vector<double>& probs);

// |mean - target| <= z * SE style verdict.
GofReport moment_z_check(const std::string& name, const McEstimate& est, double target,
                         double z_threshold);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace growthlab
