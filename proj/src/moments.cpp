#include "growthlab/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace growthlab {

namespace {

// Minimal double-double arithmetic for the cancellation-heavy closed
// forms. hi + lo with |lo| <= ulp(hi)/2.
struct Dd {
    double hi = 0.0;
    double lo = 0.0;
};

Dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

Dd dd_add(Dd a, double b) {
    Dd s = two_sum(a.hi, b);
    s.lo += a.lo;
    const Dd t = two_sum(s.hi, s.lo);
    return t;
}

Dd dd_add(Dd a, Dd b) {
    Dd s = dd_add(a, b.hi);
    return dd_add(s, b.lo);
}

// a * b with b an exactly representable double.
Dd dd_mul(Dd a, double b) {
    const double p = a.hi * b;
    const double err = std::fma(a.hi, b, -p);
    Dd s = two_sum(p, a.lo * b + err);
    return s;
}

Dd harmonic_partial_dd(std::int64_t n_total, std::int64_t n) {
    // sum_{j=1}^{n-1} 1/(N-j+1), accumulated from the small end
    Dd h;
    for (std::int64_t j = 1; j < n; ++j)
        h = dd_add(h, 1.0 / static_cast<double>(n_total - j + 1));
    return h;
}

void check_n(std::int64_t n_total, std::int64_t n) {
    if (n_total < 2) throw std::invalid_argument("moments: N must be at least 2");
    if (n < 1 || n > n_total) throw std::invalid_argument("moments: need 1 <= n <= N");
}

}  // namespace

double mean_edges(std::int64_t n_total, std::int64_t n) {
    check_n(n_total, n);
    const Dd h = harmonic_partial_dd(n_total, n);
    const double coeff = static_cast<double>(n_total) * static_cast<double>(n_total - n + 1);
    Dd result = dd_mul(h, -coeff);
    result = dd_add(result, static_cast<double>(choose2(n)));
    result = dd_add(result, static_cast<double>((n - 1) * (n_total - n)));
    return result.hi + result.lo;
}

std::vector<double> mean_table(std::int64_t n_total) {
    check_n(n_total, 1);
    std::vector<double> mu(static_cast<std::size_t>(n_total), 0.0);
    for (std::int64_t n = 1; n < n_total; ++n)
        mu[static_cast<std::size_t>(n)] =
            mu[static_cast<std::size_t>(n - 1)] +
            (static_cast<double>(choose2(n)) - mu[static_cast<std::size_t>(n - 1)]) /
                static_cast<double>(n_total - n + 1);
    return mu;
}

double mean_diff(std::int64_t n_total, std::int64_t n) {
    check_n(n_total, n);
    if (n >= n_total) throw std::invalid_argument("mean_diff: need n < N");
    const Dd h = harmonic_partial_dd(n_total, n);
    Dd result = dd_mul(h, static_cast<double>(n_total));
    result = dd_add(result, -static_cast<double>((n - 1) * (n_total - n)) /
                                static_cast<double>(n_total - n + 1));
    return result.hi + result.lo;
}

double second_difference_mean(std::int64_t n_total, std::int64_t n) {
    if (n < 2 || n >= n_total)
        throw std::invalid_argument("second_difference_mean: need 2 <= n < N");
    return static_cast<double>(n - 1) / static_cast<double>(n_total - n + 1);
}

std::vector<double> variance_table_recursion(std::int64_t n_total) {
    const auto mu = mean_table(n_total);
    std::vector<double> s2(static_cast<std::size_t>(n_total), 0.0);
    for (std::int64_t n = 1; n < n_total; ++n) {
        const double d = mu[static_cast<std::size_t>(n)] - mu[static_cast<std::size_t>(n - 1)];
        const double prev = s2[static_cast<std::size_t>(n - 1)];
        s2[static_cast<std::size_t>(n)] =
            prev + (static_cast<double>(n_total - n) * d * (d + 1.0) - 2.0 * prev) /
                       static_cast<double>(n_total - n + 2);
    }
    return s2;
}

std::vector<double> variance_table_closed(std::int64_t n_total) {
    const auto mu = mean_table(n_total);
    std::vector<double> s2(static_cast<std::size_t>(n_total), 0.0);
    Dd sum;
    for (std::int64_t n = 1; n < n_total; ++n) {
        const double d = mu[static_cast<std::size_t>(n)] - mu[static_cast<std::size_t>(n - 1)];
        sum = dd_add(sum, d * (d + 1.0) /
                              (static_cast<double>(n_total - n + 1) *
                               static_cast<double>(n_total - n + 2)));
        s2[static_cast<std::size_t>(n)] =
            static_cast<double>(n_total - n) * static_cast<double>(n_total - n + 1) *
            (sum.hi + sum.lo);
    }
    return s2;
}

MomentTable moment_table(std::int64_t n_total) {
    MomentTable table;
    table.n_vertices = n_total;
    table.mu = mean_table(n_total);
    table.sigma2 = variance_table_recursion(n_total);
    return table;
}

RationalMomentTable moment_table_rational(std::int64_t n_total) {
    check_n(n_total, 1);
    RationalMomentTable table;
    table.n_vertices = n_total;
    table.mu.assign(static_cast<std::size_t>(n_total), Rational(0));
    table.sigma2.assign(static_cast<std::size_t>(n_total), Rational(0));
    for (std::int64_t n = 1; n < n_total; ++n) {
        const Rational& mu_n = table.mu[static_cast<std::size_t>(n - 1)];
        const Rational d = (Rational(choose2(n)) - mu_n) / Rational(n_total - n + 1);
        table.mu[static_cast<std::size_t>(n)] = mu_n + d;
        const Rational& prev = table.sigma2[static_cast<std::size_t>(n - 1)];
        table.sigma2[static_cast<std::size_t>(n)] =
            prev + (Rational(n_total - n) * d * (d + 1) - 2 * prev) / Rational(n_total - n + 2);
    }
    return table;
}

std::vector<Rational> mean_table_closed_rational(std::int64_t n_total) {
    check_n(n_total, 1);
    std::vector<Rational> mu(static_cast<std::size_t>(n_total), Rational(0));
    Rational h(0);
    for (std::int64_t n = 2; n <= n_total; ++n) {
        h += Rational(1, n_total - n + 2);  // adds the j = n-1 term
        mu[static_cast<std::size_t>(n - 1)] =
            Rational(choose2(n)) + Rational((n - 1) * (n_total - n)) -
            Rational(n_total) * Rational(n_total - n + 1) * h;
    }
    return mu;
}

std::vector<Rational> variance_table_closed_rational(std::int64_t n_total) {
    const auto mu = mean_table_closed_rational(n_total);
    std::vector<Rational> s2(static_cast<std::size_t>(n_total), Rational(0));
    Rational sum(0);
    for (std::int64_t n = 1; n < n_total; ++n) {
        const Rational d = mu[static_cast<std::size_t>(n)] - mu[static_cast<std::size_t>(n - 1)];
        sum += d * (d + 1) / (Rational(n_total - n + 1) * Rational(n_total - n + 2));
        s2[static_cast<std::size_t>(n)] =
            Rational(n_total - n) * Rational(n_total - n + 1) * sum;
    }
    return s2;
}

double second_moment_virtual(std::int64_t n_total, std::int64_t n) {
    check_n(n_total, n);
    const double scale =
        static_cast<double>(n_total - n + 1) * static_cast<double>(n_total - n + 2);
    Dd diag, cross, prefix;
    for (std::int64_t i = 1; i <= n; ++i) {
        const double ni1 = static_cast<double>(n_total - i + 1);
        const double ni2 = static_cast<double>(n_total - i + 2);
        // cross sum over i < j restructured via the running prefix of (i-1)/(N-i+1)
        cross = dd_add(cross, (static_cast<double>(i - 1) / ni2) * (prefix.hi + prefix.lo));
        prefix = dd_add(prefix, static_cast<double>(i - 1) / ni1);
        diag = dd_add(diag, static_cast<double>((i - 1) * (i - 2)) / (ni1 * ni2));
    }
    Dd result = dd_mul(diag, scale);
    result = dd_add(result, dd_mul(cross, 2.0 * scale));
    result = dd_add(result, static_cast<double>(choose2(n)) - mean_edges(n_total, n));
    return result.hi + result.lo;
}

std::vector<double> compensator(const Trajectory& traj) {
    const std::int64_t N = traj.n_vertices;
    std::vector<double> c(static_cast<std::size_t>(N), 0.0);
    Dd sum;
    for (std::int64_t n = 2; n <= N; ++n) {
        const std::int64_t j = n - 1;
        sum = dd_add(sum, static_cast<double>(choose2(j) - traj.x(j)) /
                              static_cast<double>(N - j + 1));
        c[static_cast<std::size_t>(n - 1)] = sum.hi + sum.lo;
    }
    return c;
}

double first_edge_survival(std::int64_t n_total, std::int64_t n) {
    check_n(n_total, n);
    if (n <= 2) return 1.0;
    double log_p = 0.0;
    for (std::int64_t j = 2; j < n; ++j)
        log_p += std::log(static_cast<double>(n_total - j)) -
                 std::log(static_cast<double>(choose2(j) + n_total - j));
    return std::exp(log_p);
}

double harmonic_number(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("harmonic_number: need n >= 1");
    Dd h;
    for (std::int64_t k = n; k >= 1; --k) h = dd_add(h, 1.0 / static_cast<double>(k));
    return h.hi + h.lo;
}

double last_stage_mean(std::int64_t n_total) {
    check_n(n_total, 1);
    return static_cast<double>(n_total) * (harmonic_number(n_total) - 1.0);
}

IncrementMoments conditional_increment_moments(std::int64_t total, std::int64_t white) {
    if (white < 1 || total < white)
        throw std::invalid_argument("conditional_increment_moments: need 1 <= K <= M");
    const double M = static_cast<double>(total);
    const double K = static_cast<double>(white);
    IncrementMoments m;
    m.mean = (M - K) / (K + 1.0);
    m.variance = (M + 1.0) * (M - K) * K / ((K + 1.0) * (K + 1.0) * (K + 2.0));
    return m;
}

}  // namespace growthlab
