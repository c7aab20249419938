#include <doctest.h>

#include <cmath>

#include "growthlab/moments.hpp"
#include "growthlab/oracle.hpp"

using namespace growthlab;

TEST_CASE("mean closed form on small cases") {
    CHECK(mean_edges(3, 3) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mean_edges(4, 4) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(mean_edges(100, 1) == doctest::Approx(0.0));
    CHECK(mean_edges(100, 2) == doctest::Approx(0.0));
}

TEST_CASE("mean recursion agrees with the closed form at N=1000") {
    const std::int64_t N = 1000;
    const auto table = mean_table(N);
    for (std::int64_t n : {2LL, 3LL, 17LL, 250LL, 500LL, 999LL, 1000LL}) {
        const double closed = mean_edges(N, n);
        const double rec = table[static_cast<std::size_t>(n - 1)];
        if (closed == 0.0)
            CHECK(std::abs(rec) < 1e-9);
        else
            CHECK(rec == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("mean differences") {
    const std::int64_t N = 50;
    const auto table = mean_table(N);
    for (std::int64_t n = 1; n < N; ++n) {
        const double diff = table[static_cast<std::size_t>(n)] -
                            table[static_cast<std::size_t>(n - 1)];
        CHECK(mean_diff(N, n) == doctest::Approx(diff).epsilon(1e-10));
    }
    for (std::int64_t n = 2; n < N; ++n) {
        const double expected = static_cast<double>(n - 1) / static_cast<double>(N - n + 1);
        CHECK(second_difference_mean(N, n) == doctest::Approx(expected).epsilon(1e-14));
        const double fd = mean_diff(N, n) - mean_diff(N, n - 1);
        CHECK(fd == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("variance small cases and rational agreement with the DP oracle") {
    const auto rec = variance_table_recursion(3);
    CHECK(rec[2] == doctest::Approx(0.25).epsilon(1e-14));

    const std::int64_t N = 8;
    const auto rational = moment_table_rational(N);
    const auto closed_mu = mean_table_closed_rational(N);
    const auto closed_s2 = variance_table_closed_rational(N);
    for (std::int64_t n = 1; n <= N; ++n) {
        const auto pmf = exact_distribution_rational(N, n);
        const std::size_t idx = static_cast<std::size_t>(n - 1);
        CHECK(rational.mu[idx] == oracle_mean(pmf));
        CHECK(rational.sigma2[idx] == oracle_variance(pmf));
        CHECK(closed_mu[idx] == oracle_mean(pmf));
        CHECK(closed_s2[idx] == oracle_variance(pmf));
    }
}

TEST_CASE("variance recursion agrees with the closed form at N=1000") {
    const std::int64_t N = 1000;
    const auto rec = variance_table_recursion(N);
    const auto closed = variance_table_closed(N);
    for (std::int64_t n : {3LL, 100LL, 500LL, 900LL, 1000LL}) {
        const std::size_t idx = static_cast<std::size_t>(n - 1);
        CHECK(rec[idx] == doctest::Approx(closed[idx]).epsilon(1e-9));
    }
}

TEST_CASE("variance bound for the late regime") {
    for (std::int64_t N : {100LL, 1000LL}) {
        const auto s2 = variance_table_closed(N);
        for (std::int64_t n = N / 2 + 1; n <= N; ++n) {
            const double ratio = static_cast<double>(N) / static_cast<double>(N - n + 1);
            const double lg = std::log(ratio);
            const double bound = 5.0 * static_cast<double>(N - n + 2) *
                                 static_cast<double>(N) * static_cast<double>(N) * lg * lg;
            CHECK(s2[static_cast<std::size_t>(n - 1)] < bound);
        }
    }
}

TEST_CASE("second moment of virtual edges") {
    CHECK(second_moment_virtual(3, 3) == doctest::Approx(6.5).epsilon(1e-12));
    CHECK(second_moment_virtual(50, 1) == doctest::Approx(0.0));
    // consistency: E[(C(n,2)-X_n)^2] = Var + (C(n,2)-mu)^2
    const std::int64_t N = 8;
    const auto table = moment_table(N);
    for (std::int64_t n = 2; n <= N; ++n) {
        const std::size_t idx = static_cast<std::size_t>(n - 1);
        const double centered = static_cast<double>(choose2(n)) - table.mu[idx];
        const double expected = table.sigma2[idx] + centered * centered;
        CHECK(second_moment_virtual(N, n) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("compensator turns the path into a martingale pathwise identity") {
    const auto traj = simulate_urn({30}, {5, 0});
    const auto comp = compensator(traj);
    REQUIRE(comp.size() == 30);
    CHECK(comp[0] == doctest::Approx(0.0));
    // increment of the compensator matches the conditional mean increment
    for (std::int64_t n = 2; n < 30; ++n) {
        const std::size_t idx = static_cast<std::size_t>(n - 1);
        const double inc = comp[idx + 1] - comp[idx];
        const double expected =
            static_cast<double>(choose2(n) - traj.x(n)) / static_cast<double>(30 - n + 1);
        CHECK(inc == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("first edge survival") {
    CHECK(first_edge_survival(10, 1) == doctest::Approx(1.0));
    CHECK(first_edge_survival(10, 2) == doctest::Approx(1.0));
    CHECK(first_edge_survival(10, 3) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(first_edge_survival(10, 4) == doctest::Approx(28.0 / 45.0).epsilon(1e-12));
    CHECK(first_edge_survival(2, 2) == doctest::Approx(1.0));
    // monotone decreasing in n
    double prev = 1.0;
    for (std::int64_t n = 2; n <= 50; ++n) {
        const double s = first_edge_survival(50, n);
        CHECK(s <= prev + 1e-15);
        prev = s;
    }
}

TEST_CASE("terminal increment mean") {
    CHECK(last_stage_mean(2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(last_stage_mean(3) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-14));
    // identity against C(N,2) - mu_N
    for (std::int64_t N : {5LL, 40LL, 300LL}) {
        const double expected = static_cast<double>(choose2(N)) - mean_edges(N, N);
        CHECK(last_stage_mean(N) == doctest::Approx(expected).epsilon(1e-11));
    }
}

TEST_CASE("conditional increment moments") {
    const auto m = conditional_increment_moments(3, 1);
    CHECK(m.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.variance == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(conditional_increment_moments(3, 0), std::invalid_argument);
}
