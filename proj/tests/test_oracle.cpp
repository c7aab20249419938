#include <doctest.h>

#include <numeric>

#include "growthlab/moments.hpp"
#include "growthlab/oracle.hpp"

using namespace growthlab;

TEST_CASE("rational pmf matches the double pmf") {
    for (std::int64_t total : {3, 10, 40}) {
        for (std::int64_t white = 1; white < total; white += 3) {
            for (std::int64_t ell = 0; ell <= total - white; ++ell) {
                const double exact =
                    static_cast<double>(neg_hypergeom_pmf_rational(total, white, ell));
                CHECK(neg_hypergeom_pmf(total, white, ell) ==
                      doctest::Approx(exact).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("exact distribution small cases") {
    SUBCASE("N=2") {
        const auto pmf = exact_distribution_rational(2, 2);
        REQUIRE(pmf.size() == 2);
        CHECK(pmf[0] == Rational(1));
        CHECK(pmf[1] == Rational(0));
    }
    SUBCASE("N=3 hour 3: uniform on {0,1}") {
        const auto pmf = exact_distribution_rational(3, 3);
        REQUIRE(pmf.size() == 4);
        CHECK(pmf[0] == Rational(1, 2));
        CHECK(pmf[1] == Rational(1, 2));
        CHECK(pmf[2] == Rational(0));
        CHECK(pmf[3] == Rational(0));
    }
    SUBCASE("pmf sums to one") {
        for (std::int64_t N : {4, 6, 9}) {
            for (std::int64_t n = 1; n <= N; ++n) {
                const auto pmf = exact_distribution_rational(N, n);
                const Rational total = std::accumulate(pmf.begin(), pmf.end(), Rational(0));
                CHECK(total == Rational(1));
            }
        }
    }
    SUBCASE("cap enforced") {
        CHECK_THROWS_AS(exact_distribution_rational(kOracleCap + 1, 3), std::invalid_argument);
    }
}

TEST_CASE("oracle mean matches the closed-form rational mean") {
    for (std::int64_t N : {3, 5, 8}) {
        const auto closed = mean_table_closed_rational(N);
        for (std::int64_t n = 1; n <= N; ++n) {
            const auto pmf = exact_distribution_rational(N, n);
            CHECK(oracle_mean(pmf) == closed[static_cast<std::size_t>(n - 1)]);
        }
    }
}

TEST_CASE("joint path law") {
    SUBCASE("N=4 probabilities sum to one and marginalize to the DP") {
        const auto law = exact_joint_paths(4);
        const Rational total =
            std::accumulate(law.probabilities.begin(), law.probabilities.end(), Rational(0));
        CHECK(total == Rational(1));

        for (std::int64_t n = 1; n <= 4; ++n) {
            const auto pmf = exact_distribution_rational(4, n);
            std::vector<Rational> marginal(pmf.size(), Rational(0));
            for (std::size_t p = 0; p < law.paths.size(); ++p)
                marginal[static_cast<std::size_t>(law.paths[p][static_cast<std::size_t>(n - 1)])] +=
                    law.probabilities[p];
            for (std::size_t k = 0; k < pmf.size(); ++k) CHECK(marginal[k] == pmf[k]);
        }
    }
    SUBCASE("every path is monotone and starts at zero") {
        const auto law = exact_joint_paths(5);
        for (const auto& path : law.paths) {
            CHECK(path[0] == 0);
            CHECK(path[1] == 0);
            for (std::size_t n = 1; n < path.size(); ++n) CHECK(path[n] >= path[n - 1]);
        }
    }
    SUBCASE("cap enforced") {
        CHECK_THROWS_AS(exact_joint_paths(kJointOracleCap + 1), std::invalid_argument);
    }
}

TEST_CASE("oracle variance at N=3 hour 3 is 1/4") {
    const auto pmf = exact_distribution_rational(3, 3);
    CHECK(oracle_variance(pmf) == Rational(1, 4));
}
