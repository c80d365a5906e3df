#include "doctest.h"

#include <cmath>

#include "nrlab/binomial.hpp"

using namespace nrlab;

TEST_CASE("binomial coefficients match known values") {
    BinomialTable b(120);
    CHECK(b(0, 0) == 1.0);
    CHECK(b(5, 2) == 10.0);
    CHECK(b(10, 5) == 252.0);
    CHECK(b(120, 1) == 120.0);
    CHECK(b(120, 60) == doctest::Approx(9.661491e34).epsilon(1e-5));
    CHECK(b(7, 9) == 0.0);
    CHECK(b(7, -1) == 0.0);
}

// the direct product form is the one the density-evolution engine uses;
// the log-space route is the independent cross-check
TEST_CASE("direct binomial masses agree with log-space computation") {
    BinomialTable b(120);
    double worst = 0.0;
    for (int n : {30, 60, 119, 120}) {
        for (double p : {1e-9, 1e-4, 0.01, 0.2, 0.5, 0.83, 0.999}) {
            for (int k = 0; k <= n; ++k) {
                double direct = b.mass(n, k, p);
                double logged = binomial_mass_log(n, k, p);
                if (logged < 1e-280) {
                    CHECK(direct <= 1e-270);
                    continue;
                }
                worst = std::max(worst, std::abs(direct - logged) / logged);
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("binomial masses sum to one") {
    BinomialTable b(120);
    for (double p : {0.036, 0.2, 0.77}) {
        double sum = 0.0;
        for (int k = 0; k <= 120; ++k) sum += b.mass(120, k, p);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("one_minus_pow is stable for tiny arguments") {
    // 1-(1-x)^99 ~ 99x for tiny x; the naive form loses all precision at 1e-20
    double x = 1e-20;
    CHECK(one_minus_pow(x, 99) == doctest::Approx(99.0 * x).epsilon(1e-10));
    CHECK(one_minus_pow(0.0, 99) == 0.0);
    CHECK(one_minus_pow(1.0, 99) == 1.0);
    CHECK(one_minus_pow(0.2, 99) == doctest::Approx(1.0 - std::pow(0.8, 99)).epsilon(1e-12));
}
