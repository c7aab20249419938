#include "growthlab/oracle.hpp"

#include <stdexcept>
#include <string>

namespace growthlab {

namespace {

void check_cap(std::int64_t n_vertices, std::int64_t cap, const char* what) {
    if (n_vertices < 2) throw std::invalid_argument("oracle: N must be at least 2");
    if (n_vertices > cap)
        throw std::invalid_argument(std::string(what) + ": N exceeds the configured cap");
}

}  // namespace

Rational neg_hypergeom_pmf_rational(std::int64_t total, std::int64_t white, std::int64_t ell) {
    if (white < 0 || total < white)
        throw std::invalid_argument("negative hypergeometric: need 0 <= K <= M");
    if (white == 0 && total > 0)
        throw std::invalid_argument("no white balls: increment undefined");
    if (ell < 0 || ell > total - white)
        throw std::invalid_argument("negative hypergeometric: ell outside support");
    if (total == 0) return Rational(1);
    // p_0 = K/M, then the ratio recurrence
    Rational p(white, total);
    for (std::int64_t i = 0; i < ell; ++i)
        p *= Rational(total - white - i, total - i - 1);
    return p;
}

std::vector<Rational> oracle_transition(std::int64_t n_vertices, std::int64_t n,
                                        const std::vector<Rational>& pmf_n) {
    const std::int64_t N = n_vertices;
    if (n < 1 || n >= N) throw std::invalid_argument("oracle_transition: need 1 <= n < N");
    std::vector<Rational> next(static_cast<std::size_t>(choose2(n + 1)) + 1, Rational(0));
    const std::int64_t white = N - n;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(pmf_n.size()); ++k) {
        if (pmf_n[static_cast<std::size_t>(k)] == 0) continue;
        const std::int64_t black = choose2(n) - k;
        const std::int64_t total = white + black;
        Rational p(white, total);  // pmf at ell = 0
        for (std::int64_t ell = 0; ell <= black; ++ell) {
            next[static_cast<std::size_t>(k + ell)] += pmf_n[static_cast<std::size_t>(k)] * p;
            if (ell < black) p *= Rational(black - ell, total - ell - 1);
        }
    }
    return next;
}

std::vector<Rational> exact_distribution_rational(std::int64_t n_vertices, std::int64_t n,
                                                  std::int64_t cap) {
    check_cap(n_vertices, cap, "exact_distribution");
    if (n < 1 || n > n_vertices)
        throw std::invalid_argument("exact_distribution: need 1 <= n <= N");
    std::vector<Rational> pmf{Rational(1)};  // X_1 = 0
    for (std::int64_t m = 1; m < n; ++m) pmf = oracle_transition(n_vertices, m, pmf);
    return pmf;
}

std::vector<double> exact_distribution(std::int64_t n_vertices, std::int64_t n, std::int64_t cap) {
    const auto exact = exact_distribution_rational(n_vertices, n, cap);
    std::vector<double> out(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i)
        out[i] = static_cast<double>(exact[i]);
    return out;
}

PathLaw exact_joint_paths(std::int64_t n_vertices, std::int64_t cap) {
    check_cap(n_vertices, cap, "exact_joint_paths");
    const std::int64_t N = n_vertices;
    PathLaw law;
    law.paths.push_back(std::vector<std::int64_t>{0});  // X_1 = 0
    law.probabilities.push_back(Rational(1));
    for (std::int64_t n = 1; n < N; ++n) {
        PathLaw next;
        const std::int64_t white = N - n;
        for (std::size_t p = 0; p < law.paths.size(); ++p) {
            const std::int64_t k = law.paths[p].back();
            const std::int64_t black = choose2(n) - k;
            const std::int64_t total = white + black;
            Rational q(white, total);
            for (std::int64_t ell = 0; ell <= black; ++ell) {
                auto path = law.paths[p];
                path.push_back(k + ell);
                next.paths.push_back(std::move(path));
                next.probabilities.push_back(law.probabilities[p] * q);
                if (ell < black) q *= Rational(black - ell, total - ell - 1);
            }
        }
        law = std::move(next);
    }
    return law;
}

Rational oracle_mean(const std::vector<Rational>& pmf) {
    Rational mean(0);
    for (std::size_t k = 0; k < pmf.size(); ++k)
        mean += Rational(static_cast<std::int64_t>(k)) * pmf[k];
    return mean;
}

Rational oracle_variance(const std::vector<Rational>& pmf) {
    const Rational mean = oracle_mean(pmf);
    Rational second(0);
    for (std::size_t k = 0; k < pmf.size(); ++k)
        second += Rational(static_cast<std::int64_t>(k * k)) * pmf[k];
    return second - mean * mean;
}

}  // namespace growthlab
