#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "growthlab/rng.hpp"

namespace growthlab {

// Limit curve for 2 mu_n / N^2 with t = n/N:
// phi(t) = 2(1-t)log(1-t) + 2t - t^2, phi(1) = 1 by the limit.
double phi(double t);

// Limit curve for sigma_n^2 / N^3:
// psi(t) = (1-t){(2-t)L^2 + 2(3-t)L + t(6-t)}, L = log(1-t); psi(1) = 0.
double psi(double t);

// Covariance kernel of the limit diffusion: (1-t)/(1-s) psi(s), s <= t.
double cov_kernel(double s, double t);

// Quadrature cross-checks of the closed form.
double psi_integral_single(double t);  // (1-t)^2 int_0^t ((s+log(1-s))/(1-s))^2 ds
double psi_integral_double(double t);  // 2(1-t) iint_{0<x<y<t} xy(t-y)/((1-x)(1-y)^2)
double phi_integral(double t);         // 2 int_0^t s(t-s)/(1-s) ds

// Law of the scaled first edge time: cdf 1 - exp(-x^3/6) and moments
// E[xi^alpha] = 6^{alpha/3} Gamma(1 + alpha/3).
double first_edge_limit_cdf(double x);
double first_edge_limit_moment(double alpha);

// Cumulative rate of the early Poisson limit: Lambda(t) = t^3/6.
double early_poisson_cumulative(double t);

struct DiffusionPath {
    std::vector<double> grid;
    std::vector<double> y;
};

enum class DiffusionMethod { kExact, kEuler };

// Samples the limit diffusion Y on the given grid. The exact method
// uses Y(t) = (1-t) M(t) with M an independent-increment Gaussian
// process of variance psi(t)/(1-t)^2, exact in distribution on any
// grid including t = 1. The Euler method integrates the SDE
// dY = -Y/(1-t) dt + (log(1-t)+t) dB on [0, 1-cutoff].
DiffusionPath simulate_limit_diffusion(std::span<const double> grid, SeedSpec seed,
                                       DiffusionMethod method = DiffusionMethod::kExact,
                                       double euler_cutoff = 1e-3, double euler_step = 1e-4);

// Gamma(m+1, 1) cdf (Erlang with m+1 stages).
double erlang_cdf(std::int64_t m, double x);

// Draws gamma ~ Gamma(m+1,1) times a uniform point of the m-simplex;
// the m+1 products are i.i.d. Exp(1).
std::vector<double> gamma_dirichlet_sample(std::int64_t m, Rng& rng);

// Adaptive Simpson quadrature.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10);

}  // namespace growthlab
