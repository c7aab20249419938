#include "growthlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace growthlab {

namespace {

void check_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("limit curves are defined on [0, 1]");
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

// integrand of the single-integral representation of psi
double psi_integrand(double s) {
    const double l = std::log1p(-s);
    const double g = (s + l) / (1.0 - s);
    return g * g;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double phi(double t) {
    check_unit(t);
    if (t == 1.0) return 1.0;  // removable: (1-t)log(1-t) -> 0
    return 2.0 * (1.0 - t) * std::log1p(-t) + 2.0 * t - t * t;
}

double psi(double t) {
    check_unit(t);
    if (t == 1.0) return 0.0;
    const double l = std::log1p(-t);
    return (1.0 - t) * ((2.0 - t) * l * l + 2.0 * (3.0 - t) * l + t * (6.0 - t));
}

double cov_kernel(double s, double t) {
    if (s > t) throw std::invalid_argument("cov_kernel: need s <= t");
    check_unit(s);
    check_unit(t);
    if (s >= 1.0) throw std::invalid_argument("cov_kernel: need s < 1");
    return (1.0 - t) / (1.0 - s) * psi(s);
}

double phi_integral(double t) {
    check_unit(t);
    const double upper = std::min(t, 1.0 - 1e-12);
    return adaptive_simpson(
        [t](double s) { return 2.0 * s * (t - s) / (1.0 - s); }, 0.0, upper);
}

double psi_integral_single(double t) {
    check_unit(t);
    const double upper = std::min(t, 1.0 - 1e-12);
    const double integral = adaptive_simpson(psi_integrand, 0.0, upper);
    return (1.0 - t) * (1.0 - t) * integral;
}

double psi_integral_double(double t) {
    check_unit(t);
    const double upper = std::min(t, 1.0 - 1e-12);
    auto inner = [t](double y) {
        const double outer_factor = y * (t - y) / ((1.0 - y) * (1.0 - y));
        return outer_factor *
               adaptive_simpson([](double x) { return x / (1.0 - x); }, 0.0, y, 1e-11);
    };
    return 2.0 * (1.0 - t) * adaptive_simpson(inner, 0.0, upper, 1e-9);
}

double first_edge_limit_cdf(double x) {
    if (x < 0.0) throw std::invalid_argument("first_edge_limit_cdf: need x >= 0");
    return -std::expm1(-x * x * x / 6.0);
}

double first_edge_limit_moment(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("first_edge_limit_moment: need alpha >= 0");
    return std::pow(6.0, alpha / 3.0) * std::tgamma(1.0 + alpha / 3.0);
}

double early_poisson_cumulative(double t) {
    if (t < 0.0) throw std::invalid_argument("early_poisson_cumulative: need t >= 0");
    return t * t * t / 6.0;
}

DiffusionPath simulate_limit_diffusion(std::span<const double> grid, SeedSpec seed,
                                       DiffusionMethod method, double euler_cutoff,
                                       double euler_step) {
    if (grid.empty() || grid.front() < 0.0 || grid.back() > 1.0)
        throw std::invalid_argument("simulate_limit_diffusion: grid must lie in [0, 1]");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("simulate_limit_diffusion: grid must increase within [0, 1]");

    Rng rng(seed);
    DiffusionPath path;
    path.grid.assign(grid.begin(), grid.end());
    path.y.assign(grid.size(), 0.0);

    if (method == DiffusionMethod::kExact) {
        // Y(t) = (1-t) M(t), Var M(t) = psi(t)/(1-t)^2, independent increments.
        double m = 0.0;
        double var_prev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = grid[i];
            if (t == 1.0) {
                path.y[i] = 0.0;  // nonrandom right endpoint
                continue;
            }
            const double var_t = psi(t) / ((1.0 - t) * (1.0 - t));
            const double dv = std::max(0.0, var_t - var_prev);
            m += std::sqrt(dv) * rng.normal();
            var_prev = var_t;
            path.y[i] = (1.0 - t) * m;
        }
        return path;
    }

    // Euler-Maruyama on [0, 1-cutoff]; grid points past the cutoff hold
    // the last integrated value, the endpoint t = 1 is pinned to 0.
    const double t_end = 1.0 - euler_cutoff;
    double t = 0.0, y = 0.0;
    std::size_t next = grid.front() == 0.0 ? 1 : 0;
    const double sqrt_h = std::sqrt(euler_step);
    while (t < t_end && next < grid.size()) {
        const double h = std::min(euler_step, t_end - t);
        const double drift = -y / (1.0 - t);
        const double vol = std::log1p(-t) + t;
        y += drift * h + vol * (h == euler_step ? sqrt_h : std::sqrt(h)) * rng.normal();
        t += h;
        while (next < grid.size() && grid[next] <= t + 1e-15) {
            path.y[next] = y;
            ++next;
        }
    }
    for (; next < grid.size(); ++next) path.y[next] = (grid[next] == 1.0) ? 0.0 : y;
    return path;
}

double erlang_cdf(std::int64_t m, double x) {
    if (m < 0) throw std::invalid_argument("erlang_cdf: need m >= 0");
    if (x < 0.0) throw std::invalid_argument("erlang_cdf: need x >= 0");
    return boost::math::gamma_p(static_cast<double>(m + 1), x);
}

std::vector<double> gamma_dirichlet_sample(std::int64_t m, Rng& rng) {
    if (m < 0) throw std::invalid_argument("gamma_dirichlet_sample: need m >= 0");
    const double total = rng.gamma(static_cast<double>(m + 1));
    // spacings of m sorted uniforms give the uniform simplex point
    std::vector<double> cuts(static_cast<std::size_t>(m));
    for (auto& c : cuts) c = rng.uniform();
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> out(static_cast<std::size_t>(m + 1));
    double prev = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        out[i] = total * (cuts[i] - prev);
        prev = cuts[i];
    }
    out.back() = total * (1.0 - prev);
    return out;
}

}  // namespace growthlab
