#include "growthlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace growthlab {

McEstimate mc_estimate(std::span<const double> sample) {
    if (sample.size() < 2) throw std::invalid_argument("mc_estimate: need at least 2 values");
    McEstimate est;
    est.reps = static_cast<std::int64_t>(sample.size());
    double sum = 0.0, comp = 0.0;
    for (double v : sample) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    est.mean = sum / static_cast<double>(est.reps);
    double ss = 0.0;
    for (double v : sample) ss += (v - est.mean) * (v - est.mean);
    est.variance = ss / static_cast<double>(est.reps - 1);
    est.std_error = std::sqrt(est.variance / static_cast<double>(est.reps));
    return est;
}

nlohmann::ordered_json GofReport::to_json() const {
    nlohmann::ordered_json j;
    j["test"] = test;
    j["name"] = name;
    j["statistic"] = statistic;
    if (p_value)
        j["p_value"] = *p_value;
    else
        j["p_value"] = nullptr;
    j["sample_size"] = sample_size;
    j["verdict"] = pass ? "pass" : "fail";
    return j;
}

nlohmann::ordered_json reports_to_json(const std::vector<GofReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    return arr;
}

bool all_pass(const std::vector<GofReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const GofReport& r) { return r.pass; });
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double chi_square_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_p_value(double statistic, std::int64_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double x = statistic * (sn + 0.12 + 0.11 / sn);
    if (x < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * x * x);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

GofReport ks_test(const std::string& name, std::vector<double> sample,
                  const std::function<double(double)>& cdf, double p_threshold) {
    GofReport r;
    r.test = "KS";
    r.name = name;
    r.sample_size = static_cast<std::int64_t>(sample.size());
    r.statistic = ks_statistic(std::move(sample), cdf);
    r.p_value = ks_p_value(r.statistic, r.sample_size);
    r.pass = *r.p_value > p_threshold;
    return r;
}

namespace {

// Pools consecutive cells until each pooled cell has expected count >= 5.
void pooled_chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                       double& stat, double& dof) {
    stat = 0.0;
    std::int64_t cells = 0;
    double obs_acc = 0.0, exp_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        obs_acc += observed[i];
        exp_acc += expected[i];
        const bool last = (i + 1 == observed.size());
        if (exp_acc >= 5.0 || last) {
            if (exp_acc > 0.0) {
                stat += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
                ++cells;
            }
            obs_acc = 0.0;
            exp_acc = 0.0;
        }
    }
    dof = static_cast<double>(std::max<std::int64_t>(cells - 1, 1));
}

}  // namespace

GofReport chi_square_test(const std::string& name, const std::vector<std::int64_t>& counts,
                          const std::vector<double>& probs, double p_threshold) {
    if (counts.size() != probs.size())
        throw std::invalid_argument("chi_square_test: size mismatch");
    std::int64_t n = 0;
    for (auto c : counts) n += c;
    std::vector<double> observed(counts.begin(), counts.end());
    std::vector<double> expected(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        expected[i] = probs[i] * static_cast<double>(n);
    GofReport r;
    r.test = "chi-square";
    r.name = name;
    r.sample_size = n;
    double dof = 1.0;
    pooled_chi_square(observed, expected, r.statistic, dof);
    r.p_value = chi_square_sf(r.statistic, dof);
    r.pass = *r.p_value > p_threshold;
    return r;
}

GofReport two_sample_chi_square(const std::string& name, const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b, double p_threshold) {
    if (a.size() != b.size()) throw std::invalid_argument("two_sample_chi_square: size mismatch");
    double na = 0.0, nb = 0.0;
    for (auto c : a) na += static_cast<double>(c);
    for (auto c : b) nb += static_cast<double>(c);
    // Homogeneity statistic: cells pooled by combined expected count.
    std::vector<double> observed, expected;
    observed.reserve(a.size());
    expected.reserve(a.size());
    double oa = 0.0, ob = 0.0;
    std::vector<std::pair<double, double>> cells;
    for (std::size_t i = 0; i < a.size(); ++i) {
        oa += static_cast<double>(a[i]);
        ob += static_cast<double>(b[i]);
        const double pooled = (oa + ob) * std::min(na, nb) / (na + nb);
        if (pooled >= 5.0 || i + 1 == a.size()) {
            cells.emplace_back(oa, ob);
            oa = ob = 0.0;
        }
    }
    double stat = 0.0;
    std::int64_t used = 0;
    for (const auto& [ca, cb] : cells) {
        const double tot = ca + cb;
        if (tot <= 0.0) continue;
        const double ea = tot * na / (na + nb);
        const double eb = tot * nb / (na + nb);
        stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
        ++used;
    }
    GofReport r;
    r.test = "chi-square";
    r.name = name;
    r.sample_size = static_cast<std::int64_t>(na + nb);
    r.statistic = stat;
    r.p_value = chi_square_sf(stat, static_cast<double>(std::max<std::int64_t>(used - 1, 1)));
    r.pass = *r.p_value > p_threshold;
    return r;
}

double tv_distance(const std::vector<std::int64_t>& counts, const std::vector<double>& probs) {
    if (counts.size() != probs.size()) throw std::invalid_argument("tv_distance: size mismatch");
    double n = 0.0;
    for (auto c : counts) n += static_cast<double>(c);
    double tv = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        tv += std::abs(static_cast<double>(counts[i]) / n - probs[i]);
    return 0.5 * tv;
}

GofReport moment_z_check(const std::string& name, const McEstimate& est, double target,
                         double z_threshold) {
    GofReport r;
    r.test = "moment-z";
    r.name = name;
    r.sample_size = est.reps;
    r.statistic = est.std_error > 0.0 ? std::abs(est.mean - target) / est.std_error
                                      : (est.mean == target ? 0.0 : 1e308);
    r.pass = r.statistic <= z_threshold;
    return r;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("pearson_correlation: bad input");
    const auto ea = mc_estimate(a);
    const auto eb = mc_estimate(b);
    double cov = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        cov += (a[i] - ea.mean) * (b[i] - eb.mean);
    cov /= static_cast<double>(a.size() - 1);
    return cov / std::sqrt(ea.variance * eb.variance);
}

}  // namespace growthlab
