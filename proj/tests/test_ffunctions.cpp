#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qig/ffunctions.hpp"

using namespace qig;

TEST_CASE("bures and wigner-yanase basics") {
    CHECK(f_bures()(1.0) == doctest::Approx(1.0));
    CHECK(f_bures()(0.5) == doctest::Approx(0.75));
    CHECK(f_wigner_yanase()(1.0) == doctest::Approx(1.0));
    CHECK(f_wigner_yanase()(0.25) == doctest::Approx(0.5625));
    CHECK(mc_weight(f_bures(), 0.3, 0.5) == doctest::Approx(2.0 / 0.8));
}

TEST_CASE("fisher-husimi value and t->1 limit") {
    // direct evaluation at t = 0.5
    const double want = (-0.125) / (0.25 - 2.0 * 0.5 * std::log(0.5) - 1.0);
    CHECK(f_fisher_husimi()(0.5) == doctest::Approx(want).epsilon(1e-12));
    // numeric limit: the series path must agree with the plain formula
    CHECK(f_fisher_husimi()(0.94) ==
          doctest::Approx(std::pow(0.94 - 1.0, 3) /
                          (0.94 * 0.94 - 2.0 * 0.94 * std::log(0.94) - 1.0))
              .epsilon(1e-10));
    CHECK(f_fisher_husimi()(1.0) == doctest::Approx(3.0));
    CHECK(f_fisher_husimi()(1.0 - 1e-7) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("fisher-husimi q-family: q->1 limit and t->1 value") {
    for (double t : {0.1, 0.3, 0.6, 0.9, 0.99}) {
        const double lo = f_fisher_husimi_q(1.0 - 1e-4)(t);
        const double hi = f_fisher_husimi_q(1.0 + 1e-4)(t);
        const double mid = f_fisher_husimi()(t);
        CHECK(std::abs(0.5 * (lo + hi) - mid) < 1e-6 * mid);
    }
    for (double q : {0.6, 2.0, 5.0})
        CHECK(f_fisher_husimi_q(q)(1.0) == doctest::Approx(3.0 / (q * q)));
    // the series path agrees with the plain formula where both are accurate
    for (double q : {0.7, 3.0}) {
        const double t = 0.83;  // series zone; direct bracket still ~5e-12 accurate
        const double B = (1.0 - q) + (1.0 + q) * t - (1.0 + q) * std::pow(t, q) +
                         (q - 1.0) * std::pow(t, 1.0 + q);
        const double direct = (q - 1.0) * (t - 1.0) * (t - 1.0) *
                              (std::pow(t, 1.0 + q) - 1.0) / (q * (1.0 + t) * B);
        CHECK(f_fisher_husimi_q(q)(t) == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("extended bures f: monotone in t, pole at t=1") {
    for (double q : {0.5, 1.5, 3.0}) {
        const auto f = f_bures_q(q);
        double prev = f(0.05);
        for (int i = 1; i <= 18; ++i) {
            const double t = 0.05 + 0.05 * i;
            const double cur = f(t);
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK_THROWS_AS(f(1.0), DomainError);
    }
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(f_bures()(0.0), DomainError);
    CHECK_THROWS_AS(f_bures()(1.5), DomainError);
    CHECK_THROWS_AS(f_fisher_husimi()(-0.2), DomainError);
}
