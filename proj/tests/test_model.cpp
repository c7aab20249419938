#include <doctest.h>

#include <cmath>
#include <map>

#include "growthlab/model.hpp"
#include "growthlab/oracle.hpp"

using namespace growthlab;

TEST_CASE("N=2 is deterministic for every sampler") {
    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
        const auto pool = simulate_pool({2}, {seed, 0});
        CHECK(pool.edge_counts == std::vector<std::int64_t>{0, 0});
        CHECK(pool.delta_last == 1);
        const auto urn = simulate_urn({2}, {seed, 0});
        CHECK(urn.edge_counts == std::vector<std::int64_t>{0, 0});
        CHECK(urn.delta_last == 1);
        const auto comp = simulate_insertion({2}, {seed, 0});
        CHECK(comp.parts == std::vector<std::int64_t>{0, 0, 1});
    }
}

TEST_CASE("invalid params rejected") {
    CHECK_THROWS_AS(simulate_urn({1}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_pool({0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("negative hypergeometric pmf") {
    CHECK(neg_hypergeom_pmf(3, 1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(neg_hypergeom_pmf(3, 1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(neg_hypergeom_pmf(7, 7, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(neg_hypergeom_pmf(5, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(neg_hypergeom_pmf(5, 2, 4), std::invalid_argument);

    SUBCASE("normalization over a sampled grid") {
        const std::pair<std::int64_t, std::int64_t> grid[] = {
            {10, 3}, {100, 7}, {1000, 1}, {10000, 13}, {10000, 9999}, {37, 36}};
        for (const auto& [m, k] : grid) {
            double sum = 0.0, comp = 0.0;
            for (std::int64_t ell = 0; ell <= m - k; ++ell) {
                const double y = neg_hypergeom_pmf(m, k, ell) - comp;
                const double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            // large-M terms go through lgamma; error scales with lgamma(M)
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("negative hypergeometric sampler moments and fit") {
    Rng rng({7, 0});
    const std::int64_t reps = 100000;

    SUBCASE("M=3 K=1") {
        double sum = 0.0, sumsq = 0.0;
        for (std::int64_t i = 0; i < reps; ++i) {
            const double v = static_cast<double>(neg_hypergeom_sample(3, 1, rng));
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / reps;
        const double var = sumsq / reps - mean * mean;
        const double se_mean = std::sqrt(2.0 / 3.0 / reps);
        CHECK(std::abs(mean - 1.0) < 3.0 * se_mean);
        CHECK(std::abs(var - 2.0 / 3.0) < 0.02);
    }

    SUBCASE("all white never draws black") {
        for (int i = 0; i < 50; ++i) CHECK(neg_hypergeom_sample(5, 5, rng) == 0);
    }

    SUBCASE("M=10 K=3 chi-square vs pmf") {
        std::vector<std::int64_t> counts(8, 0);
        for (std::int64_t i = 0; i < reps; ++i)
            ++counts[static_cast<std::size_t>(neg_hypergeom_sample(10, 3, rng))];
        double stat = 0.0;
        for (std::int64_t ell = 0; ell <= 7; ++ell) {
            const double expected = neg_hypergeom_pmf(10, 3, ell) * reps;
            const double diff = counts[static_cast<std::size_t>(ell)] - expected;
            stat += diff * diff / expected;
        }
        CHECK(stat < 24.3);  // chi2(7) at p = 0.001
    }

    SUBCASE("large-M branch matches the exact moments") {
        const std::int64_t total = 1000000, white = 10;
        const double mean = static_cast<double>(total - white) / (white + 1);
        const double var = static_cast<double>(total + 1) * (total - white) * white /
                           (static_cast<double>(white + 1) * (white + 1) * (white + 2));
        double sum = 0.0;
        const std::int64_t n = 20000;
        for (std::int64_t i = 0; i < n; ++i)
            sum += static_cast<double>(neg_hypergeom_sample(total, white, rng));
        CHECK(std::abs(sum / n - mean) < 3.0 * std::sqrt(var / n));
    }
}

TEST_CASE("edge probability formula and bounds") {
    CHECK(edge_probability(10, 5, 1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(edge_probability(20, 12, 3, 12) == 0.0);  // edge 1 <- n at hour n
    CHECK_THROWS_AS(edge_probability(10, 5, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(edge_probability(10, 5, 1, 6), std::invalid_argument);
}

TEST_CASE("determinism and replicate independence") {
    const auto a = simulate_pool({12}, {99, 4}, true);
    const auto b = simulate_pool({12}, {99, 4}, true);
    CHECK(a.edge_counts == b.edge_counts);
    REQUIRE(a.edge_times.has_value());
    CHECK(a.edge_times->size() == b.edge_times->size());
    const auto c = simulate_pool({12}, {99, 5}, true);
    CHECK(a.edge_counts != c.edge_counts);  // overwhelmingly likely

    const auto u1 = simulate_urn({50}, {3, 17});
    const auto u2 = simulate_urn({50}, {3, 17});
    CHECK(u1.edge_counts == u2.edge_counts);
}

TEST_CASE("path invariants: conservation and monotonicity") {
    for (std::int64_t N : {2, 3, 7, 30}) {
        for (std::uint64_t rep = 0; rep < 50; ++rep) {
            const auto pool = simulate_pool({N}, {11, rep});
            const auto urn = simulate_urn({N}, {12, rep});
            const auto ins = composition_to_trajectory(N, simulate_insertion({N}, {13, rep}));
            for (const auto& traj : {pool, urn, ins}) {
                CHECK(traj.x(1) == 0);
                CHECK(traj.x(2) == 0);
                CHECK(traj.x(N) + traj.delta_last == choose2(N));
                for (std::int64_t n = 2; n <= N; ++n) {
                    CHECK(traj.x(n) >= traj.x(n - 1));
                    CHECK(traj.x(n) <= choose2(n));
                }
            }
        }
    }
}

TEST_CASE("pool sampler matches the DP oracle marginal at N=5") {
    const auto exact = exact_distribution(5, 5);
    std::vector<std::int64_t> counts(exact.size(), 0);
    const std::int64_t reps = 100000;
    for (std::int64_t rep = 0; rep < reps; ++rep) {
        const auto traj = simulate_pool({5}, {2024, static_cast<std::uint64_t>(rep)});
        ++counts[static_cast<std::size_t>(traj.x(5))];
    }
    double tv = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k)
        tv += std::abs(static_cast<double>(counts[k]) / reps - exact[k]);
    CHECK(0.5 * tv < 0.01);
}

TEST_CASE("pool mean at N=3 matches the single-edge probability") {
    double sum = 0.0;
    const std::int64_t reps = 20000;
    for (std::int64_t rep = 0; rep < reps; ++rep)
        sum += static_cast<double>(simulate_pool({3}, {5, static_cast<std::uint64_t>(rep)}).x(3));
    CHECK(std::abs(sum / reps - 0.5) < 3.0 * 0.5 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("insertion at N=3: trailing law uniform on {0,1}") {
    std::int64_t ones = 0;
    const std::int64_t reps = 20000;
    for (std::int64_t rep = 0; rep < reps; ++rep) {
        const auto comp = simulate_insertion({3}, {8, static_cast<std::uint64_t>(rep)});
        REQUIRE(comp.parts.size() == 4);
        CHECK(comp.parts[0] == 0);
        CHECK(comp.parts[1] == 0);
        CHECK(comp.parts[2] + comp.parts[3] == 3);
        ones += comp.parts[2];  // X_3, either 0 or 1
    }
    const double p = static_cast<double>(ones) / reps;
    CHECK(std::abs(p - 0.5) < 3.0 * 0.5 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("aged/recent split") {
    SUBCASE("errors") {
        const auto no_times = simulate_pool({8}, {0, 0}, false);
        CHECK_THROWS_AS(split_aged_recent(no_times, 2, 5), std::invalid_argument);
        const auto traj = simulate_pool({8}, {0, 0}, true);
        CHECK_THROWS_AS(split_aged_recent(traj, 5, 5), std::invalid_argument);
        CHECK_THROWS_AS(split_aged_recent(traj, 2, 9), std::invalid_argument);
    }

    SUBCASE("identity aged + recent = X_n - X_m on every replicate") {
        for (std::uint64_t rep = 0; rep < 200; ++rep) {
            const auto traj = simulate_pool({20}, {31, rep}, true);
            for (const auto& [m, n] : {std::pair<std::int64_t, std::int64_t>{5, 12},
                                       {10, 11}, {1, 20}, {14, 20}}) {
                const auto split = split_aged_recent(traj, m, n);
                CHECK(split.aged + split.recent == traj.x(n) - traj.x(m));
                CHECK(split.aged >= 0);
                CHECK(split.recent >= 0);
                CHECK(split.aged <= choose2(m) - traj.x(m));
            }
        }
    }

    SUBCASE("aged increments have equal means (exchangeability)") {
        const std::int64_t N = 30, m = 10, reps = 10000;
        double sums[3] = {0.0, 0.0, 0.0};
        for (std::uint64_t rep = 0; rep < reps; ++rep) {
            const auto traj = simulate_pool({N}, {77, rep}, true);
            std::int64_t prev = 0;
            for (int step = 0; step < 3; ++step) {
                const auto split = split_aged_recent(traj, m, m + 1 + step);
                sums[step] += static_cast<double>(split.aged - prev);
                prev = split.aged;
            }
        }
        // each increment has variance well under 1; 3 SE with sd bound 1
        const double se = 3.0 / std::sqrt(static_cast<double>(reps));
        CHECK(std::abs(sums[0] / reps - sums[1] / reps) < 2.0 * se);
        CHECK(std::abs(sums[1] / reps - sums[2] / reps) < 2.0 * se);
    }
}
